"""Random-matrix ensembles, theta scans, counterexample search, and sweeps.

Every experiment is seed-addressable: the per-trial seed is a stated hash of
(base_seed, dim, trial_index), so results are identical whether trials run
serially or in parallel, and any reported counterexample can be regenerated
standalone from its seed. The module also reproduces a small catalogue of
worked 2x2 examples, comparing computed quantities against their claimed
values and flagging disagreements instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import fmean

import numpy as np

from .bounds import (
    BOUND_INFO,
    BoundParams,
    block_equality_certificate,
    evaluate,
    rhs_weighted_thm21,
)
from .linop import (
    _golden_max,
    as_matrix,
    moduli,
    numerical_radius,
    operator_norm,
    psd_power_from_eig,
    spectral_radius,
)

__all__ = [
    "ENSEMBLE_KINDS",
    "ClaimCheck",
    "EnsembleSpec",
    "ExamplesReport",
    "ExperimentConfig",
    "Report",
    "BoundSummary",
    "ThetaScan",
    "TrialRecord",
    "Violation",
    "default_config",
    "equality_theta_set",
    "falsify",
    "gen_matrix",
    "gen_matrix_pair",
    "reproduce_reference_examples",
    "sweep",
    "theta_minimize",
    "theta_scan",
    "trial_seed",
]

ENSEMBLE_KINDS = (
    "ginibre",
    "normal",
    "nilpotent_jordan",
    "shifted_jordan",
    "upper_triangular",
)

_MASK64 = (1 << 64) - 1
DEFAULT_BASE_SEED = 987654321


@dataclass(frozen=True)
class EnsembleSpec:
    """One deterministic matrix draw: ensemble kind, dimension, 64-bit seed."""

    kind: str
    n: int
    seed: int


def _check_spec(spec: EnsembleSpec) -> None:
    if spec.kind not in ENSEMBLE_KINDS:
        raise ValueError(f"unknown ensemble kind {spec.kind!r}")
    if spec.n < 1:
        raise ValueError(f"dimension must be >= 1, got {spec.n}")
    if not 0 <= spec.seed <= _MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {spec.seed}")


def _draw(kind: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if kind == "ginibre":
        # Real parts first, then imaginary parts, scaled by 1/sqrt(2n).
        re = rng.standard_normal((n, n))
        im = rng.standard_normal((n, n))
        return (re + 1j * im) / math.sqrt(2.0 * n)
    if kind == "normal":
        base = _draw("ginibre", n, rng)
        q, upper = np.linalg.qr(base)
        d = np.diag(upper).copy()
        d[d == 0] = 1.0
        u = q * (d / np.abs(d))
        spectrum = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return (u * spectrum) @ u.conj().T
    if kind == "nilpotent_jordan":
        return np.eye(n, k=1, dtype=np.complex128)
    if kind == "shifted_jordan":
        # alpha uniform on the unit disk via the sqrt trick (fixed draw count).
        u1, u2 = rng.random(2)
        alpha = math.sqrt(u1) * complex(math.cos(2.0 * math.pi * u2), math.sin(2.0 * math.pi * u2))
        return alpha * np.eye(n, dtype=np.complex128) + np.eye(n, k=1, dtype=np.complex128)
    if kind == "upper_triangular":
        return np.triu(_draw("ginibre", n, rng))
    raise ValueError(f"unknown ensemble kind {kind!r}")


def gen_matrix(spec: EnsembleSpec) -> np.ndarray:
    """Deterministic matrix for the given spec (same spec, same matrix)."""
    _check_spec(spec)
    return _draw(spec.kind, spec.n, np.random.default_rng(spec.seed))


def gen_matrix_pair(spec: EnsembleSpec) -> tuple[np.ndarray, np.ndarray]:
    """Two matrices from one trial stream, A drawn before B (for block bounds)."""
    _check_spec(spec)
    rng = np.random.default_rng(spec.seed)
    return _draw(spec.kind, spec.n, rng), _draw(spec.kind, spec.n, rng)


def trial_seed(base_seed: int, dim: int, trial_index: int) -> int:
    """Per-trial seed: a splitmix64-style mix of (base_seed, dim, trial_index).

    Stated explicitly so serial and parallel execution derive identical
    matrices and any trial can be regenerated from its CSV row alone.
    """
    h = base_seed & _MASK64
    for v in (dim, trial_index):
        h = (h + 0x9E3779B97F4A7C15) & _MASK64
        h ^= v & _MASK64
        h = ((h ^ (h >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        h = ((h ^ (h >> 27)) * 0x94D049BB133111EB) & _MASK64
        h ^= h >> 31
    return h


# ---------------------------------------------------------------------------
# Sweeps and falsification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """Full factorial sweep description: bounds x params x dims x trials."""

    bounds: tuple[str, ...]
    params: tuple[BoundParams, ...]
    ensemble: EnsembleSpec
    dims: tuple[int, ...]
    trials: int
    base_seed: int
    radius_rtol: float = 1e-3


def _check_config(config: ExperimentConfig) -> None:
    if not config.bounds:
        raise ValueError("config needs at least one bound tag")
    for tag in config.bounds:
        if tag not in BOUND_INFO:
            raise ValueError(f"unknown bound tag {tag!r}")
    if not config.params:
        raise ValueError("config needs at least one parameter point")
    if not config.dims or any(d < 1 for d in config.dims):
        raise ValueError("config needs dimensions >= 1")
    if config.trials < 1:
        raise ValueError(f"trials must be >= 1, got {config.trials}")
    if config.ensemble.kind not in ENSEMBLE_KINDS:
        raise ValueError(f"unknown ensemble kind {config.ensemble.kind!r}")
    if config.radius_rtol <= 0:
        raise ValueError("radius_rtol must be positive")


def default_config() -> ExperimentConfig:
    """Baseline falsification config: about 10^4 records over proven bounds.

    4 bounds x 3 parameter points x 3 dims x 278 trials = 10008 records.
    """
    return ExperimentConfig(
        bounds=(
            "kittaneh_eq2",
            "bhunia_paul_eq3",
            "classical_mix_cor34",
            "block_halfsum_cor45",
        ),
        params=(BoundParams(1.0, 0.5), BoundParams(1.5, 0.5), BoundParams(2.0, 0.5)),
        ensemble=EnsembleSpec("ginibre", 2, 0),
        dims=(2, 3, 4),
        trials=278,
        base_seed=DEFAULT_BASE_SEED,
    )


@dataclass(frozen=True)
class TrialRecord:
    """One sweep row; regenerable from (bound, params, dim, matrix_seed)."""

    trial_index: int
    dim: int
    bound: str
    r: float
    theta: float
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    matrix_seed: int


@dataclass(frozen=True)
class BoundSummary:
    bound: str
    rows: int
    violations: int
    min_margin: float
    mean_margin: float


@dataclass(frozen=True)
class Report:
    """Sweep result: canonically ordered records plus per-bound summary."""

    records: tuple[TrialRecord, ...]
    summary: tuple[BoundSummary, ...]


@dataclass(frozen=True)
class Violation:
    """A failed trial together with the matrices that produced it."""

    record: TrialRecord
    matrix_a: np.ndarray
    matrix_b: np.ndarray | None


def _summarize(records: list[TrialRecord]) -> tuple[BoundSummary, ...]:
    out = []
    for tag in sorted({rec.bound for rec in records}):
        rows = [rec for rec in records if rec.bound == tag]
        margins = [rec.margin for rec in rows]
        out.append(
            BoundSummary(
                bound=tag,
                rows=len(rows),
                violations=sum(1 for rec in rows if not rec.satisfied),
                min_margin=min(margins),
                mean_margin=fmean(margins),
            )
        )
    return tuple(out)


def sweep(config: ExperimentConfig) -> Report:
    """Full factorial sweep; records sorted by (bound, dim, r, theta, trial).

    Bounds that ignore r or theta are still emitted once per parameter point
    (the factorial contract) but are evaluated only once per trial matrix.
    """
    _check_config(config)
    records: list[TrialRecord] = []
    for dim in config.dims:
        for idx in range(config.trials):
            seed = trial_seed(config.base_seed, dim, idx)
            mat_a, mat_b = gen_matrix_pair(EnsembleSpec(config.ensemble.kind, dim, seed))
            memo: dict = {}
            cache: dict = {}
            for tag in config.bounds:
                info = BOUND_INFO[tag]
                for p in config.params:
                    key = (tag, p.r if info.uses_r else None, p.theta if info.uses_theta else None)
                    ev = cache.get(key)
                    if ev is None:
                        ev = evaluate(
                            tag,
                            mat_a,
                            mat_b if info.needs_b else None,
                            p,
                            rtol=config.radius_rtol,
                            memo=memo,
                        )
                        cache[key] = ev
                    records.append(
                        TrialRecord(
                            trial_index=idx,
                            dim=dim,
                            bound=tag,
                            r=p.r,
                            theta=p.theta,
                            lhs=ev.lhs,
                            rhs=ev.rhs,
                            margin=ev.margin,
                            satisfied=ev.satisfied,
                            matrix_seed=seed,
                        )
                    )
    records.sort(key=lambda rec: (rec.bound, rec.dim, rec.r, rec.theta, rec.trial_index))
    return Report(tuple(records), _summarize(records))


def falsify(bound: str, config: ExperimentConfig) -> Violation | None:
    """First violating trial of one bound in deterministic seed order, or None.

    The violating matrices ride along in the result so the counterexample is
    verifiable standalone; gen_matrix_pair(spec with the record's seed)
    regenerates them exactly.
    """
    if bound not in BOUND_INFO:
        raise ValueError(f"unknown bound tag {bound!r}")
    _check_config(config)
    info = BOUND_INFO[bound]
    for dim in config.dims:
        for idx in range(config.trials):
            seed = trial_seed(config.base_seed, dim, idx)
            mat_a, mat_b = gen_matrix_pair(EnsembleSpec(config.ensemble.kind, dim, seed))
            memo: dict = {}
            seen: set = set()
            for p in config.params:
                key = (p.r if info.uses_r else None, p.theta if info.uses_theta else None)
                if key in seen:
                    continue
                seen.add(key)
                ev = evaluate(
                    bound,
                    mat_a,
                    mat_b if info.needs_b else None,
                    p,
                    rtol=config.radius_rtol,
                    memo=memo,
                )
                if not ev.satisfied:
                    record = TrialRecord(
                        trial_index=idx,
                        dim=dim,
                        bound=bound,
                        r=p.r,
                        theta=p.theta,
                        lhs=ev.lhs,
                        rhs=ev.rhs,
                        margin=ev.margin,
                        satisfied=False,
                        matrix_seed=seed,
                    )
                    return Violation(record, mat_a, mat_b if info.needs_b else None)
    return None


# ---------------------------------------------------------------------------
# Theta scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaScan:
    """Weighted-bound RHS on an ascending theta grid over [0, 1]."""

    thetas: np.ndarray
    rhs_values: np.ndarray
    argmin_theta: float
    min_value: float


def theta_scan(a, r: float = 1.0, grid_size: int = 257, rtol: float = 1e-8) -> ThetaScan:
    """Evaluate the weighted bound RHS on a uniform grid including both endpoints.

    argmin is the smallest grid theta whose value is within 1e-12 of the
    minimum (deterministic tie-breaking toward smaller theta).
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    m = as_matrix(a)
    mp = moduli(m)
    thetas = np.linspace(0.0, 1.0, grid_size)
    vals = np.array(
        [rhs_weighted_thm21(m, r, float(th), rtol, moduli_pair=mp) for th in thetas]
    )
    mn = float(vals.min())
    tol = 1e-12 * max(1.0, abs(mn))
    idx = int(np.flatnonzero(vals <= mn + tol)[0])
    return ThetaScan(thetas, vals, float(thetas[idx]), mn)


def theta_minimize(a, r: float = 1.0, rtol: float = 1e-10) -> tuple[float, float]:
    """Minimize the weighted bound RHS over theta in [0, 1].

    A 257-point scan locates the best bracket, golden-section refinement (to
    bracket width rtol) polishes it; ties break toward smaller theta.
    """
    m = as_matrix(a)
    mp = moduli(m)
    scan = theta_scan(m, r, 257)
    idx = int(np.flatnonzero(scan.thetas == scan.argmin_theta)[0])
    lo = float(scan.thetas[max(idx - 1, 0)])
    hi = float(scan.thetas[min(idx + 1, scan.thetas.size - 1)])

    def neg_rhs(th: float) -> float:
        return -rhs_weighted_thm21(m, r, min(max(th, 0.0), 1.0), moduli_pair=mp)

    x, fx = _golden_max(neg_rhs, lo, hi, rtol)
    # Lexicographic (value, theta): prefer the smaller theta on exact ties.
    best = min((scan.min_value, scan.argmin_theta), (-fx, min(max(x, 0.0), 1.0)))
    return best[1], best[0]


def equality_theta_set(a, r: float = 1.0, grid_size: int = 257, tol: float = 1e-9) -> list[float]:
    """Grid thetas where the weighted bound holds with equality.

    Equality means |lhs - rhs| <= tol * max(1, lhs, rhs) with lhs = w(A)^{2r}.
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    m = as_matrix(a)
    mp = moduli(m)
    lhs = numerical_radius(m).value ** (2.0 * r)
    out = []
    for th in np.linspace(0.0, 1.0, grid_size):
        rhs = rhs_weighted_thm21(m, r, float(th), moduli_pair=mp)
        if abs(lhs - rhs) <= tol * max(1.0, lhs, rhs):
            out.append(float(th))
    return out


# ---------------------------------------------------------------------------
# Worked-example reproduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClaimCheck:
    """One claimed quantity or relation next to its computed counterpart."""

    matrix: str
    check: str
    claimed: str
    computed: str
    agree: bool


@dataclass(frozen=True)
class ExamplesReport:
    rows: tuple[ClaimCheck, ...]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def reproduce_reference_examples() -> ExamplesReport:
    """Recompute every claimed quantity for the worked 2x2 examples.

    Each row pairs a claimed value or relation with the computed one and an
    agreement flag. Disagreements are reported, never raised; the suite only
    asserts the computations' own internal consistency.
    """
    rows: list[ClaimCheck] = []

    # Scaled nilpotent [[0,2],[0,0]]: claimed w = 1, ||A|| = 2, and a weighted
    # bound value of 1/2 at (r, theta) = (1, 1/4).
    a1 = np.array([[0.0, 2.0], [0.0, 0.0]], dtype=np.complex128)
    w1 = numerical_radius(a1).value
    rows.append(ClaimCheck("[[0,2],[0,0]]", "numerical_radius", "1", _fmt(w1), abs(w1 - 1.0) <= 1e-8))
    n1 = operator_norm(a1)
    rows.append(ClaimCheck("[[0,2],[0,0]]", "operator_norm", "2", _fmt(n1), abs(n1 - 2.0) <= 1e-8))
    rhs1 = rhs_weighted_thm21(a1, 1.0, 0.25)
    rows.append(
        ClaimCheck(
            "[[0,2],[0,0]]",
            "weighted_bound_r1_theta0.25",
            "0.5",
            _fmt(rhs1),
            abs(rhs1 - 0.5) <= 1e-9,
        )
    )

    # Shear [[1,3],[0,1]]: claimed strict drop of the half-weighted cross term
    # below the symmetric one.
    a2 = np.array([[1.0, 3.0], [0.0, 1.0]], dtype=np.complex128)
    mp2 = moduli(a2)
    half2 = numerical_radius(
        psd_power_from_eig(mp2.eig_abs_a, 0.5) @ psd_power_from_eig(mp2.eig_abs_a_star, 0.5)
    ).value
    sym2 = numerical_radius(mp2.abs_a @ mp2.abs_a_star).value
    rows.append(
        ClaimCheck(
            "[[1,3],[0,1]]",
            "cross_radius_ordering",
            "w(|A|^1/2 |A*|^1/2) < w(|A| |A*|)",
            f"{_fmt(half2)} < {_fmt(sym2)}",
            half2 < sym2,
        )
    )

    # Normal diag(2,1): claimed equality in the weighted and spectral bounds.
    a3 = np.array([[2.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
    ev21 = evaluate("weighted_thm21", a3, params=BoundParams(1.0, 0.5))
    rows.append(
        ClaimCheck(
            "[[2,0],[0,1]]",
            "weighted_equality_r1_theta0.5",
            "margin 0",
            _fmt(ev21.margin),
            abs(ev21.margin) <= 1e-9 * max(1.0, ev21.lhs, ev21.rhs),
        )
    )
    ev31 = evaluate("spectral_thm31", a3, params=BoundParams(1.0, 0.5))
    rows.append(
        ClaimCheck(
            "[[2,0],[0,1]]",
            "spectral_equality_r1",
            "margin 0",
            _fmt(ev31.margin),
            abs(ev31.margin) <= 1e-9 * max(1.0, ev31.lhs, ev31.rhs),
        )
    )

    # Shear [[1,2],[0,1]]: claimed strict chain rho(X) < w(X) < w(|A||A*|)
    # for X = |A|^{1/2}|A*|^{1/2}.
    a4 = np.array([[1.0, 2.0], [0.0, 1.0]], dtype=np.complex128)
    mp4 = moduli(a4)
    x4 = psd_power_from_eig(mp4.eig_abs_a, 0.5) @ psd_power_from_eig(mp4.eig_abs_a_star, 0.5)
    rho4 = spectral_radius(x4)
    w4 = numerical_radius(x4).value
    sym4 = numerical_radius(mp4.abs_a @ mp4.abs_a_star).value
    rows.append(
        ClaimCheck(
            "[[1,2],[0,1]]",
            "radius_chain_strict",
            "rho(X) < w(X) < w(|A||A*|)",
            f"{_fmt(rho4)} < {_fmt(w4)} < {_fmt(sym4)}",
            rho4 < w4 < sym4,
        )
    )

    # Nilpotent Jordan cell [[0,1],[0,0]]: claimed w = 1/2 and weighted-bound
    # equality only at theta = 1/2.
    a5 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    w5 = numerical_radius(a5).value
    rows.append(ClaimCheck("[[0,1],[0,0]]", "numerical_radius", "0.5", _fmt(w5), abs(w5 - 0.5) <= 1e-8))
    eq_set = equality_theta_set(a5, 1.0, 257, 1e-9)
    interior = [th for th in eq_set if 0.0 < th < 1.0]
    only_half = len(interior) == 1 and abs(interior[0] - 0.5) <= 1e-12
    rows.append(
        ClaimCheck(
            "[[0,1],[0,0]]",
            "equality_only_at_theta_half",
            "equality only at theta = 1/2",
            f"equality at {len(interior)} of 255 interior grid thetas",
            only_half,
        )
    )

    # Unit shear in an off-diagonal block: claimed that the cross term is not
    # a scalar multiple of the identity (rigidity).
    a6 = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=np.complex128)
    cert = block_equality_certificate(a6, a6, 1.0)
    rows.append(
        ClaimCheck(
            "[[1,1],[0,1]] block",
            "block_scalar_certificate",
            "cross term != lambda*I",
            f"residual {_fmt(cert.residual)}, scalar verdict "
            f"{str(cert.is_scalar_multiple_of_identity).lower()}",
            not cert.is_scalar_multiple_of_identity,
        )
    )

    return ExamplesReport(tuple(rows))
