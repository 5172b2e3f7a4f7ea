"""Dense complex matrix algebra and the spectral quantities bounds are built from.

Matrices are plain numpy arrays (square, complex128). This module provides
operator moduli and fractional powers through Hermitian functional calculus,
the operator and spectral radii, and two independent routes to the numerical
radius: a certified global angle-sweep solver for any dimension, and an
elliptical-range oracle for 2x2 matrices used to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HermitianEig",
    "ModuliPair",
    "RadiusResult",
    "adjoint",
    "as_matrix",
    "block_offdiag",
    "hermitian_eig",
    "moduli",
    "numerical_radius",
    "numerical_radius_2x2_oracle",
    "operator_norm",
    "psd_power",
    "psd_power_from_eig",
    "rotated_hermitian_part",
    "spectral_radius",
]

_TWO_PI = 2.0 * math.pi
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Angle-grid sizing for the numerical radius sweep.
_GRID_MIN = 1024
_GRID_MAX = 65536


def as_matrix(entries) -> np.ndarray:
    """Coerce input to a fresh square complex128 matrix.

    Rejects 0x0 input, non-square shapes and non-finite entries.
    """
    a = np.array(entries, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("0x0 matrices are not supported")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def operator_norm(a) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(as_matrix(a), 2))


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus, via the dense nonsymmetric eigensolver."""
    m = as_matrix(a)
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        n = m.shape[0]
        raise np.linalg.LinAlgError(
            f"eigenvalue computation failed on a {n}x{n} matrix: {exc}"
        ) from exc
    return float(np.max(np.abs(ev)))


@dataclass(frozen=True)
class HermitianEig:
    """Eigensystem of a Hermitian matrix: ascending eigenvalues, orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eig(h) -> HermitianEig:
    """Eigendecomposition of a (numerically) Hermitian matrix."""
    m = as_matrix(h)
    m = (m + m.conj().T) / 2.0
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        n = m.shape[0]
        raise np.linalg.LinAlgError(
            f"Hermitian eigendecomposition failed on a {n}x{n} matrix: {exc}"
        ) from exc
    return HermitianEig(vals, vecs)


@dataclass(frozen=True)
class ModuliPair:
    """|A| = (A*A)^(1/2) and |A*| = (AA*)^(1/2), with their eigensystems cached.

    The cached eigenvalues are the singular values of A (already clamped to be
    nonnegative), so fractional powers of either modulus come straight from
    `psd_power_from_eig` without another eigendecomposition.
    """

    abs_a: np.ndarray
    abs_a_star: np.ndarray
    eig_abs_a: HermitianEig
    eig_abs_a_star: HermitianEig


def moduli(a) -> ModuliPair:
    """Operator moduli of A via Hermitian eigendecomposition of the Gram matrices.

    Gram eigenvalues in [-1e-10*||A||^2, 0) are clamped to zero; anything more
    negative means the eigensolve went wrong and raises. The input is scale
    normalized first so the squared Gram entries cannot overflow or underflow.
    """
    m = as_matrix(a)
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        zeros = np.zeros_like(m)
        eig = HermitianEig(np.zeros(m.shape[0]), np.eye(m.shape[0], dtype=np.complex128))
        return ModuliPair(zeros, zeros.copy(), eig, eig)
    unit = m / scale
    gram_tol = 1e-10 * float(np.linalg.norm(unit, 2)) ** 2

    def _half(gram: np.ndarray) -> tuple[np.ndarray, HermitianEig]:
        eig = hermitian_eig(gram)
        if eig.values[0] < -gram_tol:
            raise np.linalg.LinAlgError(
                f"Gram matrix produced eigenvalue {eig.values[0]:.3e} below -{gram_tol:.3e}"
            )
        svals = scale * np.sqrt(np.clip(eig.values, 0.0, None))
        root = (eig.vectors * svals) @ eig.vectors.conj().T
        return (root + root.conj().T) / 2.0, HermitianEig(svals, eig.vectors)

    abs_a, eig_a = _half(unit.conj().T @ unit)
    abs_a_star, eig_a_star = _half(unit @ unit.conj().T)
    return ModuliPair(abs_a, abs_a_star, eig_a, eig_a_star)


def psd_power(p, s: float) -> np.ndarray:
    """P^s for a positive semidefinite P, by functional calculus.

    Eigenvalues in [-1e-10*||P||, 0) are clamped to zero first. The 0^0 = 1
    convention applies, so P^0 = I even when P is singular.
    """
    m = as_matrix(p)
    if s < 0:
        raise ValueError(f"power must be nonnegative, got {s}")
    nrm = float(np.linalg.norm(m, 2))
    if float(np.linalg.norm(m - m.conj().T, 2)) > 1e-10 * nrm:
        raise ValueError("matrix is not Hermitian within 1e-10 relative tolerance")
    eig = hermitian_eig(m)
    if eig.values[0] < -1e-10 * nrm:
        raise ValueError(
            f"matrix has eigenvalue {eig.values[0]:.3e}, beyond the PSD clamping tolerance"
        )
    clamped = HermitianEig(np.clip(eig.values, 0.0, None), eig.vectors)
    return psd_power_from_eig(clamped, s)


def psd_power_from_eig(eig: HermitianEig, s: float) -> np.ndarray:
    """P^s from a cached nonnegative eigensystem (same 0^0 = 1 convention)."""
    if s < 0:
        raise ValueError(f"power must be nonnegative, got {s}")
    n = eig.values.shape[0]
    if s == 0:
        return np.eye(n, dtype=np.complex128)
    powered = (eig.vectors * eig.values**s) @ eig.vectors.conj().T
    return (powered + powered.conj().T) / 2.0


def rotated_hermitian_part(a, angle: float) -> np.ndarray:
    """(e^{i angle} A + e^{-i angle} A*) / 2, Hermitian by construction."""
    m = as_matrix(a)
    phase = complex(math.cos(angle), math.sin(angle))
    h = (phase * m + np.conj(phase) * m.conj().T) / 2.0
    return (h + h.conj().T) / 2.0


def block_offdiag(a, b) -> np.ndarray:
    """The 2n x 2n matrix [[0, A], [B, 0]] acting on C^n (+) C^n."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    n = ma.shape[0]
    t = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    t[:n, n:] = ma
    t[n:, :n] = mb
    return t


# ---------------------------------------------------------------------------
# Numerical radius: certified angle sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadiusResult:
    """Certified two-sided enclosure of the numerical radius.

    `value` is a guaranteed lower estimate (a numerical-range point modulus at
    the witness vector), `upper` a guaranteed upper bound, `argmax_angle` the
    maximizing rotation angle in [0, 2pi), `witness` the unit vector with
    |<A witness, witness>| = value.
    """

    value: float
    upper: float
    argmax_angle: float
    witness: np.ndarray


def _hermitian_parts(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # H(theta) = cos(theta) K1 - sin(theta) K2 with both parts Hermitian.
    return (m + m.conj().T) / 2.0, (m - m.conj().T) / 2.0j


def _sweep_values(k1: np.ndarray, k2: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of H(theta) for every angle; closed form for n <= 2."""
    n = k1.shape[0]
    co, si = np.cos(thetas), np.sin(thetas)
    if n == 1:
        return co * k1[0, 0].real - si * k2[0, 0].real
    if n == 2:
        p = co * k1[0, 0].real - si * k2[0, 0].real
        q = co * k1[1, 1].real - si * k2[1, 1].real
        xr = co * k1[0, 1].real - si * k2[0, 1].real
        xi = co * k1[0, 1].imag - si * k2[0, 1].imag
        return (p + q) / 2.0 + np.sqrt(((p - q) / 2.0) ** 2 + xr * xr + xi * xi)
    # Chunked batch keeps the (chunk, n, n) workspace near 32 MB.
    chunk = max(1024, (1 << 21) // (n * n))
    out = np.empty(thetas.shape[0])
    for start in range(0, thetas.shape[0], chunk):
        sl = slice(start, start + chunk)
        h = co[sl, None, None] * k1 - si[sl, None, None] * k2
        out[sl] = np.linalg.eigvalsh(h)[:, -1]
    return out


def _sweep_value(k1: np.ndarray, k2: np.ndarray, theta: float) -> float:
    if k1.shape[0] <= 2:
        return float(_sweep_values(k1, k2, np.array([theta]))[0])
    h = math.cos(theta) * k1 - math.sin(theta) * k2
    return float(np.linalg.eigvalsh(h)[-1])


def _golden_max(f, lo: float, hi: float, width: float, max_iter: int = 200):
    """Golden-section maximization on [lo, hi]; returns the best evaluated point."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def numerical_radius(a, rtol: float = 1e-8) -> RadiusResult:
    """Numerical radius by global maximization of f(theta) = lambda_max(H(theta)).

    Two phases: a uniform coarse grid of N = max(1024, min(ceil(pi/rtol), 65536))
    angles over [0, 2pi), then golden-section refinement (to bracket width 1e-12)
    of the brackets around grid-local maxima. f is Lipschitz in theta with
    constant ||A||, which yields the certificate

        value <= w(A) <= upper,   upper = max(value, min(grid_max + ||A||*h/2, ||A||)),

    where h is the coarse grid spacing; the enclosure width never exceeds
    ||A||*h/2. Brackets that provably (by the same Lipschitz bound) cannot beat
    the incumbent are skipped; this cannot loosen the certificate.
    """
    m = as_matrix(a)
    if rtol <= 0:
        raise ValueError(f"rtol must be positive, got {rtol}")
    n = m.shape[0]
    norm_a = float(np.linalg.norm(m, 2))
    if norm_a == 0.0:
        e1 = np.zeros(n, dtype=np.complex128)
        e1[0] = 1.0
        return RadiusResult(0.0, 0.0, 0.0, e1)

    # Work on A/||A|| (f is positively homogeneous) so squared intermediates
    # cannot overflow or underflow at extreme scales; rescale on return.
    unit = m / norm_a
    k1, k2 = _hermitian_parts(unit)
    count = max(_GRID_MIN, min(math.ceil(math.pi / rtol), _GRID_MAX))
    h = _TWO_PI / count
    thetas = h * np.arange(count)
    fv = _sweep_values(k1, k2, thetas)
    grid_max = float(np.max(fv))
    g_idx = int(np.argmax(fv))

    # Grid-local maxima; the strict left comparison collapses a plateau run to
    # its entry point. The global argmax is always kept as a candidate.
    rising = fv > np.roll(fv, 1)
    not_falling = fv >= np.roll(fv, -1)
    cand = np.flatnonzero(rising & not_falling)
    if g_idx not in cand:
        cand = np.append(cand, g_idx)
    cand = cand[np.argsort(-fv[cand], kind="stable")]

    best_val = grid_max
    best_angle = float(thetas[g_idx])
    stale = 0
    for k in cand:
        # The scaled f has Lipschitz constant 1, so this bracket tops out at
        # fv[k] + h/2; skip it when that cannot improve on the incumbent.
        if float(fv[k]) + h / 2.0 <= best_val:
            break
        x, fx = _golden_max(
            lambda t: _sweep_value(k1, k2, t),
            float(thetas[k]) - h,
            float(thetas[k]) + h,
            1e-12,
        )
        if fx > best_val:
            best_val, best_angle = fx, x
            stale = 0
        else:
            stale += 1
            if stale >= 16:
                break

    angle = best_angle % _TWO_PI
    eig = hermitian_eig(math.cos(angle) * k1 - math.sin(angle) * k2)
    witness = eig.vectors[:, -1]
    value = norm_a * max(float(abs(np.vdot(witness, unit @ witness))), best_val)
    upper = max(value, norm_a * min(grid_max + h / 2.0, 1.0))
    return RadiusResult(value, upper, angle, witness)


def numerical_radius_2x2_oracle(a) -> float:
    """Independent numerical radius for 2x2 matrices, to 1e-10 absolute.

    The numerical range of a 2x2 matrix is an ellipse with foci at the two
    eigenvalues and minor semi-axis sqrt(tr(A*A) - |l1|^2 - |l2|^2)/2. The
    radius is the farthest ellipse point from the origin, found by a dense
    parameter grid plus golden-section refinement (the squared distance is a
    degree-2 trigonometric polynomial, so it has at most two local maxima).
    """
    big = as_matrix(a)
    if big.shape[0] != 2:
        raise ValueError(f"oracle requires a 2x2 matrix, got {big.shape[0]}x{big.shape[0]}")
    scale = float(np.max(np.abs(big)))
    if scale == 0.0:
        return 0.0
    m = big / scale  # w is positively homogeneous; avoids over/underflow in squares
    ev = np.linalg.eigvals(m)
    center = complex(ev.mean())
    gap = complex(ev[0] - ev[1]) / 2.0
    c = abs(gap)
    minor_sq = (float(np.sum(np.abs(m) ** 2)) - abs(ev[0]) ** 2 - abs(ev[1]) ** 2) / 4.0
    b = math.sqrt(max(minor_sq, 0.0))
    semi_major = math.hypot(b, c)
    if semi_major == 0.0:
        return scale * abs(center)
    axis = gap / c if c > 0 else complex(1.0)

    def dist(t: float) -> float:
        return abs(center + axis * (semi_major * math.cos(t) + 1j * b * math.sin(t)))

    count = 4096
    ts = np.linspace(0.0, _TWO_PI, count, endpoint=False)
    zs = np.abs(center + axis * (semi_major * np.cos(ts) + 1j * b * np.sin(ts)))
    step = _TWO_PI / count
    best = float(np.max(zs))
    for k in np.argsort(-zs)[:4]:
        _, fx = _golden_max(dist, float(ts[k]) - step, float(ts[k]) + step, 1e-13)
        best = max(best, fx)
    return scale * best
