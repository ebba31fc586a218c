import random
from fractions import Fraction

import pytest

from ybx.catalog import catalog_get, sample_entry_binding
from ybx.scalars import Backend
from ybx.tensor import Matrix


def random_rational(rng, lo=-9, hi=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


def random_matrix(rng, rows, cols):
    return Matrix.from_rows(
        [[random_rational(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng, n):
    while True:
        M = random_matrix(rng, n, n)
        if M.det():
            return M


def sampled_catalog_object(entry_id, seed):
    return catalog_get(entry_id, sample_entry_binding(entry_id, seed))


def fa_matrix(alpha, beta):
    """Case-a charge-conserving solution with parameters (alpha, beta)."""
    zero = alpha * 0
    return Matrix.from_rows([
        [alpha, zero, zero, zero],
        [zero, alpha + beta, -beta, zero],
        [zero, alpha, zero, zero],
        [zero, zero, zero, beta]])


def zeta8():
    return complex(2 ** -0.5, 2 ** -0.5)


def ising_exact():
    return Matrix.from_rows([
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, -1, 1, 0],
        [-1, 0, 0, 1]])


def ising_unitary():
    return ising_exact().promote_to(Backend.COMPLEX_F).scale(complex(2 ** -0.5))


def gaussian_pair():
    """The 9x9 unitary pair built from a primitive 12th root of unity."""
    a = complex((3 ** 0.5) / 2, 0.5)
    x = -(1 + a * a) / 3
    y = x + 1
    z = -(x + y)
    R = Matrix.from_rows([
        [x, 0, 0, 0, y, 0, 0, 0, y],
        [0, x, 0, 0, 0, x, z, 0, 0],
        [0, 0, x, z, 0, 0, 0, x, 0],
        [0, 0, x, x, 0, 0, 0, z, 0],
        [y, 0, 0, 0, x, 0, 0, 0, y],
        [0, z, 0, 0, 0, x, x, 0, 0],
        [0, x, 0, 0, 0, z, x, 0, 0],
        [0, 0, z, x, 0, 0, 0, x, 0],
        [y, 0, 0, 0, y, 0, 0, 0, x]])
    S = Matrix.from_rows([
        [x, 0, 0, y, 0, 0, y, 0, 0],
        [0, x, 0, 0, x, 0, 0, z, 0],
        [0, 0, x, 0, 0, z, 0, 0, x],
        [y, 0, 0, x, 0, 0, y, 0, 0],
        [0, z, 0, 0, x, 0, 0, x, 0],
        [0, 0, x, 0, 0, x, 0, 0, z],
        [y, 0, 0, y, 0, 0, x, 0, 0],
        [0, x, 0, 0, z, 0, 0, x, 0],
        [0, 0, z, 0, 0, x, 0, 0, x]])
    return R, S


@pytest.fixture
def rng():
    return random.Random(1234)
