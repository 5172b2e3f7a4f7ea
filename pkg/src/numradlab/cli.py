"""Command-line interface: matrix file IO, bound evaluation, scans, sweeps.

Matrix files are JSON objects {"n": ..., "entries": [[[re, im], ...], ...]}
with 17-significant-digit decimal floats, which round-trip binary doubles
exactly. All stdout is machine-parsable (key=value lines or CSV); diagnostics
go to stderr. Exit codes: 0 success, 2 usage or parse error, 3 numerical
failure, 4 unknown bound tag.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import BOUND_INFO, BOUND_TAGS, BoundParams, evaluate
from .lab import (
    DEFAULT_BASE_SEED,
    ENSEMBLE_KINDS,
    EnsembleSpec,
    ExperimentConfig,
    Report,
    reproduce_reference_examples,
    sweep,
    theta_scan,
)
from .linop import as_matrix, numerical_radius

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_UNKNOWN_TAG = 4


class MatrixFileError(ValueError):
    """Raised when a matrix file cannot be parsed into a valid matrix."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _err(msg: str) -> None:
    print(f"numradlab: {msg}", file=sys.stderr)


def read_matrix_file(path: str) -> np.ndarray:
    """Parse a matrix file, naming the offending row on structural errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise MatrixFileError(f"{path}: expected an object with fields 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFileError(f"{path}: 'n' must be a positive integer, got {n!r}")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        found = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixFileError(f"{path}: expected {n} entry rows, found {found}")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            found = len(row) if isinstance(row, list) else type(row).__name__
            raise MatrixFileError(f"{path}: entries row {i} has {found} cells, expected {n}")
        for j, cell in enumerate(row):
            ok = (
                isinstance(cell, list)
                and len(cell) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in cell)
            )
            if not ok:
                raise MatrixFileError(
                    f"{path}: entries row {i}, column {j}: expected a [re, im] pair, got {cell!r}"
                )
            value = complex(float(cell[0]), float(cell[1]))
            if not (np.isfinite(value.real) and np.isfinite(value.imag)):
                raise MatrixFileError(f"{path}: entries row {i}, column {j}: non-finite value")
            out[i, j] = value
    return out


def write_matrix_file(path: str, a) -> None:
    """Write a matrix file with 17-significant-digit floats (exact round-trip)."""
    m = as_matrix(a)
    n = m.shape[0]
    rows = []
    for i in range(n):
        cells = ", ".join(f"[{m[i, j].real:.17g}, {m[i, j].imag:.17g}]" for j in range(n))
        rows.append(f"    [{cells}]")
    body = ",\n".join(rows)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write('{\n  "n": %d,\n  "entries": [\n%s\n  ]\n}\n' % (n, body))


def _csv_cell(s: str) -> str:
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def write_sweep_csv(path: str, report: Report) -> None:
    lines = ["bound,r,theta,dim,trial,lhs,rhs,margin,satisfied,matrix_seed"]
    for rec in report.records:
        lines.append(
            ",".join(
                (
                    rec.bound,
                    _fmt(rec.r),
                    _fmt(rec.theta),
                    str(rec.dim),
                    str(rec.trial_index),
                    _fmt(rec.lhs),
                    _fmt(rec.rhs),
                    _fmt(rec.margin),
                    "true" if rec.satisfied else "false",
                    str(rec.matrix_seed),
                )
            )
        )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_list(text: str, kind, flag: str):
    try:
        items = [kind(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"invalid {flag} value {text!r}: {exc}") from exc
    if not items:
        raise ValueError(f"{flag} must list at least one value")
    return items


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_radius(args) -> int:
    mat = read_matrix_file(args.file)
    res = numerical_radius(mat, rtol=args.rtol)
    print(f"value={_fmt(res.value)}")
    print(f"upper={_fmt(res.upper)}")
    print(f"argmax_angle={_fmt(res.argmax_angle)}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    if args.bound not in BOUND_TAGS:
        _err(f"unknown bound tag {args.bound!r}; known tags: {', '.join(BOUND_TAGS)}")
        return EXIT_UNKNOWN_TAG
    info = BOUND_INFO[args.bound]
    mat = read_matrix_file(args.file)
    mat_b = None
    if info.needs_b:
        if not args.file_b:
            _err(f"bound {args.bound!r} requires --file-b")
            return EXIT_USAGE
        mat_b = read_matrix_file(args.file_b)
    elif args.file_b:
        _err(f"bound {args.bound!r} takes a single matrix; drop --file-b")
        return EXIT_USAGE
    ev = evaluate(args.bound, mat, mat_b, BoundParams(args.r, args.theta))
    print(f"bound={ev.bound}")
    print(f"r={_fmt(ev.params.r)}")
    print(f"theta={_fmt(ev.params.theta)}")
    print(f"lhs={_fmt(ev.lhs)}")
    print(f"rhs={_fmt(ev.rhs)}")
    print(f"margin={_fmt(ev.margin)}")
    print(f"satisfied={'true' if ev.satisfied else 'false'}")
    print(f"inputs_digest={ev.inputs_digest}")
    return EXIT_OK


def _cmd_scan(args) -> int:
    if args.grid < 2:
        _err(f"--grid must be at least 2, got {args.grid}")
        return EXIT_USAGE
    mat = read_matrix_file(args.file)
    scan = theta_scan(mat, r=args.r, grid_size=args.grid)
    lhs = numerical_radius(mat).value ** (2.0 * args.r)
    lines = ["theta,rhs,lhs,margin"]
    for th, rhs in zip(scan.thetas, scan.rhs_values):
        lines.append(f"{_fmt(float(th))},{_fmt(float(rhs))},{_fmt(lhs)},{_fmt(float(rhs) - lhs)}")
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"argmin_theta={_fmt(scan.argmin_theta)}")
    print(f"min_rhs={_fmt(scan.min_value)}")
    print(f"rows={args.grid}")
    print(f"out={args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    bounds = _parse_list(args.bounds, str, "--bounds")
    for tag in bounds:
        if tag not in BOUND_TAGS:
            _err(f"unknown bound tag {tag!r}; known tags: {', '.join(BOUND_TAGS)}")
            return EXIT_UNKNOWN_TAG
    dims = _parse_list(args.dims, int, "--dims")
    rs = _parse_list(args.r, float, "--r")
    thetas = _parse_list(args.theta, float, "--theta")
    params = tuple(BoundParams(r, th) for r in rs for th in thetas)
    config = ExperimentConfig(
        bounds=tuple(bounds),
        params=params,
        ensemble=EnsembleSpec(args.ensemble, dims[0], 0),
        dims=tuple(dims),
        trials=args.trials,
        base_seed=args.seed,
        radius_rtol=args.rtol,
    )
    report = sweep(config)
    write_sweep_csv(args.out, report)
    for s in report.summary:
        print(
            f"bound={s.bound} rows={s.rows} violations={s.violations} "
            f"min_margin={_fmt(s.min_margin)} mean_margin={_fmt(s.mean_margin)}"
        )
    print(f"out={args.out}")
    return EXIT_OK


def _cmd_examples(args) -> int:
    report = reproduce_reference_examples()
    print("matrix\tcheck\tclaimed\tcomputed\tagree")
    agreements = 0
    for row in report.rows:
        flag = "yes" if row.agree else "no"
        agreements += row.agree
        print(f"{row.matrix}\t{row.check}\t{row.claimed}\t{row.computed}\t{flag}")
    print(f"rows={len(report.rows)} agreements={agreements} disagreements={len(report.rows) - agreements}")
    if args.out:
        lines = ["matrix,check,claimed,computed,agree"]
        for row in report.rows:
            lines.append(
                ",".join(
                    (
                        _csv_cell(row.matrix),
                        _csv_cell(row.check),
                        _csv_cell(row.claimed),
                        _csv_cell(row.computed),
                        "yes" if row.agree else "no",
                    )
                )
            )
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numradlab",
        description="Numerical-radius laboratory: radii, inequality margins, scans, sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="certified numerical radius of a matrix file")
    p.add_argument("file", help="matrix file (JSON)")
    p.add_argument("--rtol", type=float, default=1e-8, help="angle-sweep tolerance")
    p.set_defaults(func=_cmd_radius)

    p = sub.add_parser("eval", help="evaluate one inequality on a matrix file")
    p.add_argument("file", help="matrix file (JSON)")
    p.add_argument("--bound", required=True, help="bound tag")
    p.add_argument("--r", type=float, default=1.0, help="power parameter r >= 1")
    p.add_argument("--theta", type=float, default=0.5, help="weight parameter in [0, 1]")
    p.add_argument("--file-b", default=None, help="second matrix file for binary block tags")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("scan", help="theta scan of the weighted bound")
    p.add_argument("file", help="matrix file (JSON)")
    p.add_argument("--r", type=float, default=1.0, help="power parameter r >= 1")
    p.add_argument("--grid", type=int, default=257, help="grid size (>= 2)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("sweep", help="deterministic random-matrix sweep with CSV report")
    p.add_argument("--bounds", required=True, help="comma-separated bound tags")
    p.add_argument("--ensemble", choices=ENSEMBLE_KINDS, default="ginibre")
    p.add_argument("--dims", default="2,3,4", help="comma-separated dimensions")
    p.add_argument("--trials", type=int, default=278, help="trials per dimension")
    p.add_argument("--seed", type=int, default=DEFAULT_BASE_SEED, help="base seed")
    p.add_argument("--r", default="1", help="comma-separated r values")
    p.add_argument("--theta", default="0.5", help="comma-separated theta values")
    p.add_argument("--rtol", type=float, default=1e-3, help="radius tolerance inside the sweep")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("examples", help="recompute the worked examples against their claims")
    p.add_argument("--out", default=None, help="optional output CSV path")
    p.set_defaults(func=_cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixFileError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except np.linalg.LinAlgError as exc:
        _err(f"numerical failure: {exc}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
