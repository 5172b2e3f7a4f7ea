"""Shared test helpers: random matrix constructions independent of the package."""

import math

import numpy as np


def random_complex(rng, n):
    """Complex Gaussian matrix with entries scaled by 1/sqrt(2n)."""
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0 * n)


def haar_unitary(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def random_normal_matrix(rng, n):
    """U diag(complex spectrum) U* with Haar U; normal by construction."""
    u = haar_unitary(rng, n)
    lam = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return (u * lam) @ u.conj().T
