import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from skt_lab.linalg import (
    DimensionError, DomainError, all_zero, eigen, identity, inverse, is_normal,
    mat, norm_estimate_check, nullspace, rank, solve_affine, symmetric_part,
)


def test_eigen_rotation():
    r = eigen(mat([[0, 1], [-1, 0]]))
    assert sorted(z.imag for z, _ in r.eigenvalues) == [-1, 1]
    assert r.diagonalizable
    assert r.real_part_classes == (0.0,)
    assert r.mu is None


def test_eigen_diagonal_mu():
    r = eigen(mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert sum(k for _, k in r.eigenvalues) == 4
    assert r.diagonalizable
    assert set(r.real_part_classes) == {0.0, 1.0}
    assert r.mu == 1.0


def test_eigen_jordan():
    assert not eigen(mat([[1, 1], [0, 1]])).diagonalizable


def test_eigen_nonsquare():
    with pytest.raises(DimensionError):
        eigen(mat([[1, 2, 3]]))


def test_symmetric_part_examples():
    assert all_zero(symmetric_part(mat([[0, 2], [-2, 0]])))
    s = mat([[1, 2], [2, 5]])
    assert all_zero(symmetric_part(s) - s)
    assert all_zero(symmetric_part(mat([[1, 2], [0, 1]])) - mat([[1, 1], [1, 1]]))


@given(st.lists(rationals(), min_size=9, max_size=9))
def test_symmetric_part_idempotent(xs):
    m = mat([xs[0:3], xs[3:6], xs[6:9]])
    assert all_zero(symmetric_part(symmetric_part(m)) - symmetric_part(m))


def test_is_normal_examples():
    assert is_normal(mat([[0, 3], [-3, 0]]))
    assert not is_normal(mat([[1, 1], [0, 0]]))
    assert is_normal(mat([[1, 1], [0, 0]]), mat([[1, 1], [1, 2]]))
    with pytest.raises(DomainError):
        is_normal(mat([[1, 0], [0, 1]]), mat([[1, 2], [2, 1]]))


def test_norm_estimate_examples():
    # S = [[1, 1/2], [1/2, 1]], so |S|^2 = 5/2 against sum Re^2 = 2
    lhs, rhs = norm_estimate_check(mat([[1, 1], [0, 1]]))
    assert lhs == Fraction(5, 2) and abs(rhs - 2) < 1e-12
    assert norm_estimate_check(mat([[0, 0], [0, 0]])) == (0, 0.0)


def _cayley(K):
    n = K.shape[0]
    return (identity(n) - K) @ inverse(identity(n) + K)


def test_normal_iff_norm_equality():
    rng = random.Random(5)
    for _ in range(100):
        m = mat([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)])
        lhs, rhs = norm_estimate_check(m)
        assert float(lhs) >= rhs - 1e-9
        assert is_normal(m) == (abs(float(lhs) - rhs) <= 1e-9)
    for _ in range(100):
        K = mat([[0] * 4 for _ in range(4)])
        for i in range(4):
            for j in range(i + 1, 4):
                x = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                K[i, j], K[j, i] = x, -x
        Q = _cayley(K)
        assert all_zero(Q.T @ Q - identity(4))
        D = mat([[0] * 4 for _ in range(4)])
        for i in range(4):
            D[i, i] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        m = Q @ D @ Q.T
        lhs, rhs = norm_estimate_check(m)
        assert is_normal(m)
        assert abs(float(lhs) - rhs) <= 1e-9


def test_eigen_exact_block_rotation():
    m = mat([[Fraction(1, 2), 3, 0, 0], [-3, Fraction(1, 2), 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    r = eigen(m)
    vals = sorted((z.real, z.imag) for z, _ in r.eigenvalues)
    expected = [(0.0, -2.0), (0.0, 2.0), (0.5, -3.0), (0.5, 3.0)]
    assert all(abs(x - y) <= 1e-9 and abs(u - w) <= 1e-9 for (x, u), (y, w) in zip(vals, expected))
    assert r.admissible and abs(r.mu - 0.5) <= 1e-9


@given(st.lists(rationals(), min_size=12, max_size=12))
def test_solve_affine_solutions(xs):
    M = mat([xs[0:4], xs[4:8], xs[8:12]])
    b = M @ mat([1, 2, 3, 4])
    part, null = solve_affine(M, b)
    assert part is not None
    assert all_zero(M @ part - b)
    assert len(null) == 4 - rank(M)
    for z in null:
        assert all_zero(M @ z)


def test_float_path():
    m = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert is_normal(m)
    assert len(nullspace(np.array([[1.0, 1.0]]))) == 1
