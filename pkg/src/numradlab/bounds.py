"""Registry of numerical-radius inequalities with a single evaluation path.

Every bound tag pins one LHS convention (w or w^{2r}, over A or over the
off-diagonal block matrix built from A and B) and one RHS formula. Evaluation
reports lhs, rhs, margin = rhs - lhs and a verdict; the bound is satisfied
when margin >= -tol_margin with tol_margin = 1e-8 * max(1, lhs, rhs).
Violations are first-class outputs, never errors.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .linop import (
    ModuliPair,
    as_matrix,
    block_offdiag,
    moduli,
    numerical_radius,
    operator_norm,
    psd_power_from_eig,
    spectral_radius,
)

__all__ = [
    "BOUND_INFO",
    "BOUND_TAGS",
    "BoundEvaluation",
    "BoundInfo",
    "BoundParams",
    "EqualityCertificate",
    "block_equality_certificate",
    "equality_certificate_thm51",
    "evaluate",
    "rhs_bhunia_paul_eq3",
    "rhs_block_halfsum_cor45",
    "rhs_block_spectral_thm43",
    "rhs_block_sym_cor42",
    "rhs_block_thm41",
    "rhs_classical_mix_cor34",
    "rhs_kittaneh_eq2",
    "rhs_spectral_thm31",
    "rhs_weighted_norm_cor23",
    "rhs_weighted_thm21",
]

BOUND_TAGS = (
    "classical_upper",
    "classical_lower",
    "kittaneh_eq2",
    "bhunia_paul_eq3",
    "weighted_thm21",
    "weighted_norm_cor23",
    "spectral_thm31",
    "classical_mix_cor34",
    "block_thm41",
    "block_sym_cor42",
    "block_spectral_thm43",
    "block_halfsum_cor45",
)


@dataclass(frozen=True)
class BoundInfo:
    """Registry row: input arity and which parameters the formulas read."""

    needs_b: bool
    uses_r: bool
    uses_theta: bool


# block_sym_cor42 is the B = A specialization and therefore unary; its LHS
# still uses the block matrix [[0, A], [A, 0]].
BOUND_INFO: dict[str, BoundInfo] = {
    "classical_upper": BoundInfo(False, False, False),
    "classical_lower": BoundInfo(False, False, False),
    "kittaneh_eq2": BoundInfo(False, False, False),
    "bhunia_paul_eq3": BoundInfo(False, True, False),
    "weighted_thm21": BoundInfo(False, True, True),
    "weighted_norm_cor23": BoundInfo(False, True, True),
    "spectral_thm31": BoundInfo(False, True, False),
    "classical_mix_cor34": BoundInfo(False, False, False),
    "block_thm41": BoundInfo(True, True, False),
    "block_sym_cor42": BoundInfo(False, True, False),
    "block_spectral_thm43": BoundInfo(True, True, False),
    "block_halfsum_cor45": BoundInfo(True, False, False),
}


@dataclass(frozen=True)
class BoundParams:
    """Power r >= 1 and weight theta in [0, 1]."""

    r: float = 1.0
    theta: float = 0.5


def _check_params(params: BoundParams) -> None:
    if params.r < 1.0:
        raise ValueError(f"power r must be >= 1, got {params.r}")
    if not 0.0 <= params.theta <= 1.0:
        raise ValueError(f"weight theta must lie in [0, 1], got {params.theta}")


@dataclass(frozen=True)
class BoundEvaluation:
    """One inequality instance: identifiers, parameters, both sides, verdict."""

    bound: str
    params: BoundParams
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    tol_margin: float
    inputs_digest: str


@dataclass(frozen=True)
class EqualityCertificate:
    """Scalar-identity test for a cross term X.

    scalar_lambda is the Frobenius-optimal scalar trace(X)/n, residual the
    operator norm of X - scalar_lambda*I, and normality_residual the operator
    norm of XX* - X*X (zero within tolerance iff X is normal).
    """

    scalar_lambda: float
    residual: float
    is_scalar_multiple_of_identity: bool
    normality_residual: float


# ---------------------------------------------------------------------------
# RHS formulas
# ---------------------------------------------------------------------------


def _power_sum_norm(pairs: list[ModuliPair], r: float) -> float:
    """|| sum over pairs of |X|^{2r} + |X*|^{2r} ||."""
    n = pairs[0].abs_a.shape[0]
    acc = np.zeros((n, n), dtype=np.complex128)
    for mp in pairs:
        acc += psd_power_from_eig(mp.eig_abs_a, 2.0 * r)
        acc += psd_power_from_eig(mp.eig_abs_a_star, 2.0 * r)
    return operator_norm(acc)


def _cross(left: ModuliPair, e_left: float, right: ModuliPair, e_right: float) -> np.ndarray:
    """|A|^{e_left} |B*|^{e_right} from cached eigensystems."""
    return psd_power_from_eig(left.eig_abs_a, e_left) @ psd_power_from_eig(
        right.eig_abs_a_star, e_right
    )


def rhs_weighted_thm21(
    a, r: float = 1.0, theta: float = 0.5, rtol: float = 1e-8, moduli_pair: ModuliPair | None = None
) -> float:
    """(1/4)|| |A|^{2r} + |A*|^{2r} || + (1/2) w(|A|^{r theta} |A*|^{r(1-theta)})."""
    _check_params(BoundParams(r, theta))
    mp = moduli(a) if moduli_pair is None else moduli_pair
    cross = _cross(mp, r * theta, mp, r * (1.0 - theta))
    return 0.25 * _power_sum_norm([mp], r) + 0.5 * numerical_radius(cross, rtol).value


def rhs_weighted_norm_cor23(a, r: float = 1.0, theta: float = 0.5) -> float:
    """Same as the weighted bound with the cross-term radius replaced by its norm."""
    _check_params(BoundParams(r, theta))
    mp = moduli(a)
    cross = _cross(mp, r * theta, mp, r * (1.0 - theta))
    return 0.25 * _power_sum_norm([mp], r) + 0.5 * operator_norm(cross)


def rhs_kittaneh_eq2(a) -> float:
    """(1/2)|| |A|^2 + |A*|^2 ||, compared against w(A)^2."""
    return 0.5 * _power_sum_norm([moduli(a)], 1.0)


def rhs_bhunia_paul_eq3(a, r: float = 1.0, rtol: float = 1e-8) -> float:
    """(1/4)|| |A|^{2r} + |A*|^{2r} || + (1/2) w(|A|^r |A*|^r)."""
    _check_params(BoundParams(r, 0.5))
    mp = moduli(a)
    return 0.25 * _power_sum_norm([mp], r) + 0.5 * numerical_radius(_cross(mp, r, mp, r), rtol).value


def rhs_spectral_thm31(a, r: float = 1.0) -> float:
    """(1/4)|| |A|^{2r} + |A*|^{2r} || + (1/2) rho(|A|^{r/2} |A*|^{r/2})."""
    _check_params(BoundParams(r, 0.5))
    mp = moduli(a)
    return 0.25 * _power_sum_norm([mp], r) + 0.5 * spectral_radius(_cross(mp, r / 2.0, mp, r / 2.0))


def rhs_classical_mix_cor34(a) -> float:
    """(1/2)(||A|| + ||A^2||^{1/2}), compared against w(A)."""
    m = as_matrix(a)
    return 0.5 * (operator_norm(m) + math.sqrt(operator_norm(m @ m)))


def rhs_block_thm41(a, b, r: float = 1.0, rtol: float = 1e-8) -> float:
    """(1/4)|| |A|^{2r} + |A*|^{2r} + |B|^{2r} + |B*|^{2r} || + (1/2) w(|A|^{r/2} |B*|^{r/2})."""
    _check_params(BoundParams(r, 0.5))
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    mpa, mpb = moduli(ma), moduli(mb)
    cross = _cross(mpa, r / 2.0, mpb, r / 2.0)
    return 0.25 * _power_sum_norm([mpa, mpb], r) + 0.5 * numerical_radius(cross, rtol).value


def rhs_block_sym_cor42(a, r: float = 1.0, rtol: float = 1e-8) -> float:
    """(1/2)|| |A|^{2r} + |A*|^{2r} || + (1/2) w(|A|^r), the B = A specialization."""
    _check_params(BoundParams(r, 0.5))
    mp = moduli(a)
    powered = psd_power_from_eig(mp.eig_abs_a, r)
    return 0.5 * _power_sum_norm([mp], r) + 0.5 * numerical_radius(powered, rtol).value


def rhs_block_spectral_thm43(a, b, r: float = 1.0) -> float:
    """Block bound with the cross-term radius replaced by the spectral radius."""
    _check_params(BoundParams(r, 0.5))
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    mpa, mpb = moduli(ma), moduli(mb)
    cross = _cross(mpa, r / 2.0, mpb, r / 2.0)
    return 0.25 * _power_sum_norm([mpa, mpb], r) + 0.5 * spectral_radius(cross)


def rhs_block_halfsum_cor45(a, b) -> float:
    """(1/2)(||A|| + ||B||), compared against w([[0, A], [B, 0]])."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return 0.5 * (operator_norm(ma) + operator_norm(mb))


# ---------------------------------------------------------------------------
# Evaluation dispatch
# ---------------------------------------------------------------------------


def _memoized(memo: dict | None, key, make):
    if memo is None:
        return make()
    if key not in memo:
        memo[key] = make()
    return memo[key]


def _digest(bound: str, params: BoundParams, ma: np.ndarray, mb: np.ndarray | None) -> str:
    hsh = hashlib.sha256()
    hsh.update(f"{bound}|r={params.r!r}|theta={params.theta!r}|n={ma.shape[0]}|".encode())
    hsh.update(np.ascontiguousarray(ma).tobytes())
    if mb is not None:
        hsh.update(b"|B|")
        hsh.update(np.ascontiguousarray(mb).tobytes())
    return hsh.hexdigest()[:16]


def evaluate(
    bound: str,
    a,
    b=None,
    params: BoundParams | None = None,
    rtol: float = 1e-8,
    memo: dict | None = None,
) -> BoundEvaluation:
    """Evaluate one registry bound on A (and B for the binary block tags).

    `memo`, when given, is a scratch dict that reuses moduli and radius
    computations across several evaluate calls on the same pair (A, B); the
    caller owns its lifetime and must not share it between different inputs.
    """
    if bound not in BOUND_INFO:
        raise ValueError(f"unknown bound tag {bound!r}")
    info = BOUND_INFO[bound]
    params = BoundParams() if params is None else params
    _check_params(params)
    ma = as_matrix(a)
    mb = None
    if info.needs_b:
        if b is None:
            raise ValueError(f"bound {bound!r} requires a second matrix")
        mb = as_matrix(b)
        if mb.shape != ma.shape:
            raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    elif b is not None:
        raise ValueError(f"bound {bound!r} takes a single matrix")

    r, theta = params.r, params.theta

    def w_a() -> float:
        return _memoized(memo, ("w", "a"), lambda: numerical_radius(ma, rtol).value)

    def w_block() -> float:
        key = ("w", "t_ab") if info.needs_b else ("w", "t_aa")
        other = mb if info.needs_b else ma
        return _memoized(
            memo, key, lambda: numerical_radius(block_offdiag(ma, other), rtol).value
        )

    def norm_a() -> float:
        return _memoized(memo, ("norm", "a"), lambda: operator_norm(ma))

    def norm_b() -> float:
        return _memoized(memo, ("norm", "b"), lambda: operator_norm(mb))

    def mod_a() -> ModuliPair:
        return _memoized(memo, ("moduli", "a"), lambda: moduli(ma))

    def mod_b() -> ModuliPair:
        return _memoized(memo, ("moduli", "b"), lambda: moduli(mb))

    if bound == "classical_upper":
        lhs, rhs = w_a(), norm_a()
    elif bound == "classical_lower":
        lhs, rhs = 0.5 * norm_a(), w_a()
    elif bound == "kittaneh_eq2":
        lhs = w_a() ** 2
        rhs = 0.5 * _power_sum_norm([mod_a()], 1.0)
    elif bound == "bhunia_paul_eq3":
        lhs = w_a() ** (2.0 * r)
        mp = mod_a()
        rhs = 0.25 * _power_sum_norm([mp], r) + 0.5 * numerical_radius(
            _cross(mp, r, mp, r), rtol
        ).value
    elif bound == "weighted_thm21":
        lhs = w_a() ** (2.0 * r)
        rhs = rhs_weighted_thm21(ma, r, theta, rtol, moduli_pair=mod_a())
    elif bound == "weighted_norm_cor23":
        lhs = w_a() ** (2.0 * r)
        mp = mod_a()
        cross = _cross(mp, r * theta, mp, r * (1.0 - theta))
        rhs = 0.25 * _power_sum_norm([mp], r) + 0.5 * operator_norm(cross)
    elif bound == "spectral_thm31":
        lhs = w_a() ** (2.0 * r)
        mp = mod_a()
        rhs = 0.25 * _power_sum_norm([mp], r) + 0.5 * spectral_radius(
            _cross(mp, r / 2.0, mp, r / 2.0)
        )
    elif bound == "classical_mix_cor34":
        lhs = w_a()
        rhs = rhs_classical_mix_cor34(ma)
    elif bound == "block_thm41":
        lhs = w_block() ** (2.0 * r)
        mpa, mpb = mod_a(), mod_b()
        cross = _cross(mpa, r / 2.0, mpb, r / 2.0)
        rhs = 0.25 * _power_sum_norm([mpa, mpb], r) + 0.5 * numerical_radius(cross, rtol).value
    elif bound == "block_sym_cor42":
        lhs = w_block() ** (2.0 * r)
        mp = mod_a()
        powered = psd_power_from_eig(mp.eig_abs_a, r)
        rhs = 0.5 * _power_sum_norm([mp], r) + 0.5 * numerical_radius(powered, rtol).value
    elif bound == "block_spectral_thm43":
        lhs = w_block() ** (2.0 * r)
        mpa, mpb = mod_a(), mod_b()
        cross = _cross(mpa, r / 2.0, mpb, r / 2.0)
        rhs = 0.25 * _power_sum_norm([mpa, mpb], r) + 0.5 * spectral_radius(cross)
    else:  # block_halfsum_cor45
        lhs = w_block()
        rhs = 0.5 * (norm_a() + norm_b())

    lhs, rhs = float(lhs), float(rhs)
    margin = rhs - lhs
    tol_margin = 1e-8 * max(1.0, lhs, rhs)
    return BoundEvaluation(
        bound=bound,
        params=params,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=margin >= -tol_margin,
        tol_margin=tol_margin,
        inputs_digest=_digest(bound, params, ma, mb),
    )


# ---------------------------------------------------------------------------
# Equality / rigidity certificates
# ---------------------------------------------------------------------------


def _certificate(x: np.ndarray) -> EqualityCertificate:
    n = x.shape[0]
    lam = max(float(np.trace(x).real) / n, 0.0)
    residual = operator_norm(x - lam * np.eye(n))
    is_scalar = residual <= 1e-8 * max(1.0, operator_norm(x))
    normality = operator_norm(x @ x.conj().T - x.conj().T @ x)
    return EqualityCertificate(lam, residual, is_scalar, normality)


def equality_certificate_thm51(a, r: float = 1.0, theta: float = 0.5) -> EqualityCertificate:
    """Scalar-identity certificate for X = |A|^{r theta} |A*|^{r(1-theta)}."""
    _check_params(BoundParams(r, theta))
    mp = moduli(a)
    return _certificate(_cross(mp, r * theta, mp, r * (1.0 - theta)))


def block_equality_certificate(a, b, r: float = 1.0) -> EqualityCertificate:
    """Scalar-identity certificate for X = |A|^{r/2} |B*|^{r/2}."""
    _check_params(BoundParams(r, 0.5))
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    mpa, mpb = moduli(ma), moduli(mb)
    return _certificate(_cross(mpa, r / 2.0, mpb, r / 2.0))
