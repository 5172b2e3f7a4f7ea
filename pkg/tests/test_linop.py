import math

import numpy as np
import pytest

from helpers import haar_unitary, random_complex, random_normal_matrix
from numradlab import linop


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        linop.as_matrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        linop.as_matrix(np.zeros((0, 0)))
    with pytest.raises(ValueError):
        linop.as_matrix([1, 2, 3])
    with pytest.raises(ValueError):
        linop.as_matrix([[np.nan, 0], [0, 1]])
    with pytest.raises(ValueError):
        linop.as_matrix([[np.inf, 0], [0, 1]])
    with pytest.raises(ValueError):
        linop.as_matrix([[1, 2], [3]])


def test_as_matrix_accepts_one_dim():
    m = linop.as_matrix([[3 - 4j]])
    assert m.shape == (1, 1) and m.dtype == np.complex128


def test_adjoint_examples():
    sym = np.array([[2.0, 1.0], [1.0, 3.0]])
    assert np.array_equal(linop.adjoint(sym), sym.astype(complex))
    assert np.array_equal(
        linop.adjoint([[0, 2], [0, 0]]), np.array([[0, 0], [2, 0]], dtype=complex)
    )
    assert np.array_equal(linop.adjoint(1j * np.eye(2)), -1j * np.eye(2))


def test_moduli_shift_matrix():
    # A*A = diag(0, 4) and AA* = diag(4, 0), so the moduli are the diagonal roots.
    mp = linop.moduli([[0, 2], [0, 0]])
    assert np.allclose(mp.abs_a, np.diag([0.0, 2.0]), atol=1e-12)
    assert np.allclose(mp.abs_a_star, np.diag([2.0, 0.0]), atol=1e-12)


def test_moduli_fixed_points():
    psd = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    mp = linop.moduli(psd)
    assert np.allclose(mp.abs_a, psd, atol=1e-10)
    assert np.allclose(mp.abs_a_star, psd, atol=1e-10)
    u = haar_unitary(np.random.default_rng(5), 4)
    mp = linop.moduli(u)
    assert np.allclose(mp.abs_a, np.eye(4), atol=1e-10)
    assert np.allclose(mp.abs_a_star, np.eye(4), atol=1e-10)


def test_moduli_invariants_random():
    rng = np.random.default_rng(17)
    for i in range(25):
        n = 2 + i % 5
        a = random_complex(rng, n)
        nrm = linop.operator_norm(a)
        mp = linop.moduli(a)
        assert np.linalg.norm(mp.abs_a @ mp.abs_a - a.conj().T @ a, 2) <= 1e-10 * nrm**2
        assert np.linalg.norm(mp.abs_a_star @ mp.abs_a_star - a @ a.conj().T, 2) <= 1e-10 * nrm**2
        for m, eig in ((mp.abs_a, mp.eig_abs_a), (mp.abs_a_star, mp.eig_abs_a_star)):
            assert np.linalg.norm(m - m.conj().T, 2) <= 1e-12 * nrm
            assert eig.values.min() >= 0.0
            assert np.all(np.diff(eig.values) >= 0.0)
            v = eig.vectors
            assert np.linalg.norm(v.conj().T @ v - np.eye(n), 2) <= 1e-12 * n
            recon = (v * eig.values) @ v.conj().T
            assert np.linalg.norm(recon - m, 2) <= 1e-12 * n * max(nrm, 1e-30)


def test_psd_power_examples():
    assert np.allclose(linop.psd_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]), atol=1e-12)
    rng = np.random.default_rng(3)
    g = random_complex(rng, 4)
    p = g.conj().T @ g
    assert np.allclose(linop.psd_power(p, 1.0), p, atol=1e-12 * np.linalg.norm(p, 2) + 1e-15)
    # 0^0 = 1 convention: the zeroth power is the identity even on the kernel.
    assert np.array_equal(linop.psd_power(np.diag([0.0, 2.0]), 0.0), np.eye(2))


def test_psd_power_errors():
    with pytest.raises(ValueError):
        linop.psd_power(np.eye(2), -0.5)
    with pytest.raises(ValueError):
        linop.psd_power([[0, 1], [0, 0]], 0.5)
    with pytest.raises(ValueError):
        linop.psd_power(np.diag([-1.0, 1.0]), 0.5)


def test_psd_power_semigroup():
    rng = np.random.default_rng(11)
    pairs = [(0.5, 0.5), (0.3, 1.7), (0.0, 2.0)]
    for i in range(20):
        n = 2 + i % 4
        g = random_complex(rng, n)
        p = g.conj().T @ g
        scale_base = np.linalg.norm(p, 2)
        s1, s2 = rng.uniform(0.0, 3.0, size=2)
        for e1, e2 in pairs + [(float(s1), float(s2))]:
            left = linop.psd_power(p, e1 + e2)
            right = linop.psd_power(p, e1) @ linop.psd_power(p, e2)
            assert np.linalg.norm(left - right, 2) <= 1e-9 * scale_base ** (e1 + e2)


def test_operator_norm_examples():
    assert linop.operator_norm([[0, 2], [0, 0]]) == pytest.approx(2.0, abs=1e-12)
    # A*A for [[1,2],[0,1]] has trace 6 and determinant 1, so its larger
    # eigenvalue is 3 + 2*sqrt(2) and sigma_max is its square root.
    expected = math.sqrt(3.0 + 2.0 * math.sqrt(2.0))
    assert linop.operator_norm([[1, 2], [0, 1]]) == pytest.approx(expected, abs=1e-12)
    assert linop.operator_norm(np.eye(7)) == pytest.approx(1.0, abs=1e-12)


def test_spectral_radius_examples():
    assert linop.spectral_radius([[0, 2], [0, 0]]) == pytest.approx(0.0, abs=1e-12)
    assert linop.spectral_radius([[1, 2], [0, 1]]) == pytest.approx(1.0, abs=1e-12)
    assert linop.spectral_radius(np.diag([2.0, 1.0])) == pytest.approx(2.0, abs=1e-12)


def test_rotated_hermitian_part():
    herm = np.array([[2.0, 1j], [-1j, 0.0]])
    assert np.allclose(linop.rotated_hermitian_part(herm, 0.0), herm, atol=1e-15)
    rng = np.random.default_rng(2)
    a = random_complex(rng, 3)
    assert np.allclose(
        linop.rotated_hermitian_part(a, math.pi),
        -linop.rotated_hermitian_part(a, 0.0),
        atol=1e-15,
    )
    assert np.allclose(
        linop.rotated_hermitian_part([[0, 2], [0, 0]], 0.0),
        np.array([[0.0, 1.0], [1.0, 0.0]]),
        atol=1e-15,
    )


def test_numerical_radius_small_matrices():
    assert linop.numerical_radius([[0, 1], [0, 0]]).value == pytest.approx(0.5, abs=1e-10)
    assert linop.numerical_radius([[0, 2], [0, 0]]).value == pytest.approx(1.0, abs=1e-10)
    assert linop.numerical_radius(np.diag([2.0, 1.0])).value == pytest.approx(2.0, abs=1e-10)


def test_numerical_radius_enclosure_and_witness():
    rng = np.random.default_rng(23)
    for i in range(18):
        n = 1 + i % 6
        a = random_complex(rng, n)
        res = linop.numerical_radius(a, rtol=1e-6)
        nrm = linop.operator_norm(a)
        budget = nrm * (2.0 * math.pi / 65536) / 2.0
        assert res.value <= res.upper
        assert res.upper - res.value <= budget + 1e-14
        assert 0.0 <= res.argmax_angle < 2.0 * math.pi
        assert np.linalg.norm(res.witness) == pytest.approx(1.0, abs=1e-12)
        quad = abs(np.vdot(res.witness, linop.as_matrix(a) @ res.witness))
        assert abs(quad - res.value) <= 1e-10 * max(1.0, nrm)


def test_radius_angle_matches_rotated_part():
    # At the maximizing angle the top eigenvalue of the rotated Hermitian part
    # coincides with the reported radius value.
    rng = np.random.default_rng(19)
    for n in (2, 3, 4):
        a = random_complex(rng, n)
        res = linop.numerical_radius(a)
        top = linop.hermitian_eig(linop.rotated_hermitian_part(a, res.argmax_angle)).values[-1]
        assert abs(top - res.value) <= 1e-9 * max(1.0, linop.operator_norm(a))


def test_hermitian_eig_contract():
    rng = np.random.default_rng(13)
    g = random_complex(rng, 5)
    h = g + g.conj().T
    eig = linop.hermitian_eig(h)
    assert np.all(np.diff(eig.values) >= 0.0)
    nrm = linop.operator_norm(h)
    assert np.linalg.norm(eig.vectors.conj().T @ eig.vectors - np.eye(5), 2) <= 1e-12 * 5
    recon = (eig.vectors * eig.values) @ eig.vectors.conj().T
    assert np.linalg.norm(recon - h, 2) <= 1e-12 * 5 * nrm


def test_numerical_radius_degenerate_inputs():
    res = linop.numerical_radius(np.zeros((3, 3)))
    assert res.value == 0.0 and res.upper == 0.0
    assert linop.numerical_radius([[3 - 4j]]).value == pytest.approx(5.0, abs=1e-10)
    with pytest.raises(ValueError):
        linop.numerical_radius(np.eye(2), rtol=0.0)
    with pytest.raises(ValueError):
        linop.numerical_radius(np.eye(2), rtol=-1e-3)


def test_numerical_radius_extreme_scales():
    # f is positively homogeneous; internal scale normalization keeps squared
    # intermediates from over/underflowing.
    for scale in (1e-200, 1e-4, 1e4, 1e200):
        res = linop.numerical_radius([[0.0, scale], [0.0, 0.0]])
        assert res.value == pytest.approx(scale / 2.0, rel=1e-10)
        assert res.value <= res.upper
        oracle = linop.numerical_radius_2x2_oracle([[0.0, scale], [0.0, 0.0]])
        assert oracle == pytest.approx(scale / 2.0, rel=1e-10)
    mp = linop.moduli([[0.0, 1e-200], [0.0, 0.0]])
    assert np.allclose(mp.abs_a, np.diag([0.0, 1e-200]), atol=1e-215)


def test_unitary_invariance():
    rng = np.random.default_rng(31)
    for n in (2, 3, 5):
        a = random_complex(rng, n)
        u, v = haar_unitary(rng, n), haar_unitary(rng, n)
        nrm = linop.operator_norm(a)
        assert abs(linop.operator_norm(u @ a @ v) - nrm) <= 1e-9 * nrm
        w_rot = linop.numerical_radius(u @ a @ u.conj().T).value
        w_ref = linop.numerical_radius(a).value
        assert abs(w_rot - w_ref) <= 1e-9 * nrm


def test_sandwich_and_spectral_ordering():
    rng = np.random.default_rng(37)
    for i in range(40):
        n = 2 + i % 5
        a = random_complex(rng, n)
        res = linop.numerical_radius(a, rtol=1e-4)
        nrm = linop.operator_norm(a)
        assert nrm / 2.0 <= res.value * (1.0 + 1e-9) + 1e-15
        assert res.value <= res.upper <= nrm * (1.0 + 1e-9)
        assert linop.spectral_radius(a) <= res.value * (1.0 + 1e-9)


def test_normal_matrix_exactness():
    rng = np.random.default_rng(41)
    for i in range(15):
        n = 2 + i % 5
        a = random_normal_matrix(rng, n)
        res = linop.numerical_radius(a)
        assert abs(res.value - linop.spectral_radius(a)) <= 1e-8 * linop.operator_norm(a)


def test_block_offdiag_examples():
    assert np.array_equal(linop.block_offdiag(np.zeros((2, 2)), np.zeros((2, 2))), np.zeros((4, 4)))
    assert np.array_equal(
        linop.block_offdiag([[2]], [[3]]), np.array([[0, 2], [3, 0]], dtype=complex)
    )
    swap = linop.block_offdiag(np.eye(3), np.eye(3))
    assert linop.numerical_radius(swap).value == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        linop.block_offdiag(np.eye(2), np.eye(3))


def test_block_symmetry_radius():
    # [[0,A],[A,0]] is unitarily equivalent to diag(A, -A), so the radii agree.
    rng = np.random.default_rng(43)
    for i in range(12):
        n = 2 + i % 3
        a = random_complex(rng, n)
        w_a = linop.numerical_radius(a, rtol=3e-4).value
        w_t = linop.numerical_radius(linop.block_offdiag(a, a), rtol=3e-4).value
        assert abs(w_a - w_t) <= 1e-7 * linop.operator_norm(a)


def test_oracle_examples():
    # Both shears have coincident eigenvalues, so the range is a disk about 1.
    assert linop.numerical_radius_2x2_oracle([[1, 2], [0, 1]]) == pytest.approx(2.0, abs=1e-9)
    assert linop.numerical_radius_2x2_oracle([[1, 3], [0, 1]]) == pytest.approx(2.5, abs=1e-9)
    assert linop.numerical_radius_2x2_oracle(np.diag([3 - 4j, 1 + 1j])) == pytest.approx(
        5.0, abs=1e-9
    )
    with pytest.raises(ValueError):
        linop.numerical_radius_2x2_oracle(np.eye(3))


def test_oracle_agreement_random():
    rng = np.random.default_rng(47)
    for _ in range(100):
        a = random_complex(rng, 2)
        dev = abs(linop.numerical_radius(a).value - linop.numerical_radius_2x2_oracle(a))
        assert dev <= 1e-7 * linop.operator_norm(a)


def test_oracle_agreement_hostile_geometries():
    # Disk-shaped ranges (plateau path), near-normal perturbations (needle
    # ellipses), and highly eccentric shears.
    rng = np.random.default_rng(83)

    def disk():
        d = rng.standard_normal() + 1j * rng.standard_normal()
        return np.array([[d, 3.0 * rng.standard_normal()], [0.0, d]])

    def near_normal():
        base = random_normal_matrix(rng, 2)
        return base + 1e-8 * random_complex(rng, 2)

    def elongated():
        return np.array(
            [
                [1e-3 * rng.standard_normal(), 50.0 * rng.standard_normal()],
                [0.0, 1e-3 * rng.standard_normal()],
            ]
        )

    for family in (disk, near_normal, elongated):
        for _ in range(60):
            a = family().astype(complex)
            nrm = linop.operator_norm(a)
            if nrm == 0.0:
                continue
            dev = abs(linop.numerical_radius(a).value - linop.numerical_radius_2x2_oracle(a))
            assert dev <= 1e-7 * nrm
