"""Shared helpers for the test suite."""

import numpy as np

from surfemit import DipolePolarization


def random_complex_vector(rng, n=3):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def random_dipole(rng):
    u = random_complex_vector(rng)
    return DipolePolarization(u / np.linalg.norm(u))


def random_real_dipole(rng):
    u = rng.normal(size=3)
    return DipolePolarization(u / np.linalg.norm(u))


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)
