import random
from fractions import Fraction
from itertools import combinations

from hypothesis import given, strategies as st

from conftest import rationals
from skt_lab.forms import (
    InvariantForm, ce_d, codifferential, flat, hodge_star, one_form_action, pullback, wedge,
)
from skt_lab.liealg import LieAlgebra, build_from_data, canonical_j, jacobi_check
from skt_lab.linalg import identity, mat, zeros
from skt_lab.hermitian import HermitianStructure, fundamental_form
from skt_lab.notation import parse_notation


def f(n, *idx, c=1):
    return InvariantForm.basis(n, *[i - 1 for i in idx], coeff=Fraction(c))


def forms_of(dim, degree):
    keys = list(combinations(range(dim), degree))
    return st.dictionaries(st.sampled_from(keys), rationals(), max_size=4).map(
        lambda d: InvariantForm(dim, degree, d))


def test_wedge_examples():
    assert wedge(f(6, 1), f(6, 2)) == f(6, 1, 2)
    assert wedge(f(6, 1), f(6, 1)).is_zero()
    assert wedge(f(6, 2), f(6, 1)) == -f(6, 1, 2)
    assert wedge(f(4, 1, 2), f(4, 2, 3, 4)).is_zero()


@given(forms_of(5, 1), forms_of(5, 2), forms_of(5, 1))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_wedge_graded_commutative(p, q, data):
    a = data.draw(forms_of(6, p))
    b = data.draw(forms_of(6, q))
    assert wedge(a, b) == wedge(b, a) * ((-1) ** (p * q))


def test_ce_d_examples():
    l13 = parse_notation("(f16,0,0,0,0,0)")
    assert ce_d(l13, f(6, 1)) == f(6, 1, 6)
    l1 = parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": 1})
    assert ce_d(l1, f(6, 2, 3)) == f(6, 2, 3, 6, c=-2)


def _random_almost_abelian(rng, n=6):
    m = n - 2
    R = lambda: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return build_from_data(R(), [R() for _ in range(m)], mat([[R() for _ in range(m)] for _ in range(m)]))


def _random_table(rng, n):
    brackets = {}
    for i, j in combinations(range(n), 2):
        if rng.random() < 0.3:
            brackets[i, j] = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
    return LieAlgebra.from_brackets(n, brackets)


def _d_squared_zero(g):
    for k in range(1, 3):
        for idx in combinations(range(g.dim), k):
            if not ce_d(g, ce_d(g, InvariantForm.basis(g.dim, *idx))).is_zero():
                return False
    return True


def test_d_squared_iff_jacobi():
    rng = random.Random(11)
    for _ in range(30):
        g = _random_almost_abelian(rng)
        assert jacobi_check(g) and _d_squared_zero(g)
    for _ in range(30):
        g = _random_table(rng, 5)
        assert jacobi_check(g) == _d_squared_zero(g)


def test_non_jacobi_has_nonzero_d2_on_one_form():
    g = parse_notation("(0,f34,f12,0,0,0)")
    assert not jacobi_check(g)
    assert any(not ce_d(g, ce_d(g, InvariantForm.basis(6, i))).is_zero() for i in range(6))


def test_pullback_examples():
    J = canonical_j(6)
    a = f(6, 2, 3, 6)
    assert pullback(identity(6), a) == a
    assert pullback(J, a) == f(6, 1, 2, 3)
    h = HermitianStructure(J, identity(6))
    w = fundamental_form(h)
    assert pullback(J, w) == w


@given(st.lists(rationals(-2, 2, 2), min_size=16, max_size=16),
       st.lists(rationals(-2, 2, 2), min_size=16, max_size=16), forms_of(4, 2))
def test_pullback_functorial(xs, ys, a):
    A = mat([xs[i:i + 4] for i in range(0, 16, 4)])
    B = mat([ys[i:i + 4] for i in range(0, 16, 4)])
    assert pullback(A @ B, a) == pullback(B, pullback(A, a))


def test_flat_examples():
    x = zeros(6)
    x[3] = Fraction(1)
    assert flat(identity(6), x) == f(6, 4)
    assert flat(identity(6), zeros(6)).is_zero()
    g = identity(6)
    for i in range(6):
        g[i, i] = Fraction(i + 1)
    e2 = zeros(6)
    e2[1] = Fraction(1)
    assert flat(g, e2) == f(6, 2, c=2)


def test_hodge_examples():
    g = identity(6)
    assert hodge_star(g, f(6, 1)) == f(6, 2, 3, 4, 5, 6)
    assert hodge_star(g, f(6, 1, 2)) == f(6, 3, 4, 5, 6)


def _random_spd(rng, n):
    M = mat([[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
    return M.T @ M + identity(n)


def test_star_star_sign_all_degrees():
    rng = random.Random(3)
    for n in (4, 6, 8):
        metrics = [identity(n)] + ([_random_spd(rng, n)] if n <= 6 else [])
        for g in metrics:
            for k in range(n + 1):
                idx = sorted(rng.sample(range(n), k))
                a = InvariantForm.basis(n, *idx) if k else InvariantForm(n, 0, {(): Fraction(1)})
                assert hodge_star(g, hodge_star(g, a)) == a * ((-1) ** (k * (n - k)))


def test_codifferential_examples():
    l13 = parse_notation("(f16,0,0,0,0,0)")
    g = identity(6)
    one = InvariantForm(6, 0, {(): Fraction(1)})
    assert codifferential(l13, g, one).is_zero()
    w = fundamental_form(HermitianStructure(canonical_j(6), g))
    assert codifferential(l13, g, w).is_zero()
    for p in (Fraction(1), Fraction(-1, 3)):
        l1 = parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": p})
        theta = one_form_action(canonical_j(6), codifferential(l1, g, w))
        assert theta == f(6, 6, c=-4 * p)
