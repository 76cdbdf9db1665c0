import numpy as np
import pytest

from magnus2.m2 import M2C, M2R


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def rand_m2r(rng, scale=1.0):
    return M2R(*(scale * rng.standard_normal(4)))


def rand_m2c(rng, scale=1.0):
    re = rng.standard_normal(4)
    im = rng.standard_normal(4)
    return M2C(*(scale * (re + 1j * im)))


def to_np(m):
    e = m.entries()
    return np.array([[e[0], e[1]], [e[2], e[3]]], dtype=complex)


def series_exp(mat, terms=60):
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, terms):
        term = term @ mat / k
        out = out + term
    return out
