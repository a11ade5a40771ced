import random
from fractions import Fraction

import pytest

from skt_lab.catalog import (
    example_two_complex_structures, example_unimodular_lcskt_lcb, load_catalog,
    random_compatible_metric, sample_assignments,
)
from skt_lab.forms import InvariantForm, ce_d, pullback, wedge_all
from skt_lab.hermitian import (
    HermitianStructure, bismut_ricci, bismut_ricci_direct, bismut_torsion,
    fundamental_form, is_integrable, lee_form, lee_form_closed, lee_form_direct, nijenhuis,
)
from skt_lab.liealg import LieAlgebra, build_from_data, canonical_j, extract_data
from skt_lab.linalg import DomainError, all_zero, identity, mat, zeros
from skt_lab.notation import parse_notation


def f(n, *idx, c=1):
    return InvariantForm.basis(n, *[i - 1 for i in idx], coeff=Fraction(c))


def l1(p):
    return parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": Fraction(p)})


def test_nijenhuis_examples():
    J = canonical_j(6)
    assert all_zero(nijenhuis(parse_notation("(f16,0,0,0,0,0)"), J))
    g = build_from_data(1, [0] * 4, zeros(4, 4), w=[1, 0, 0, 0])
    assert not all_zero(nijenhuis(g, J))
    assert is_integrable(LieAlgebra.abelian(6), J)
    rng = random.Random(1)
    # any J on an abelian algebra
    P = mat([[Fraction(rng.randint(-3, 3)) + (3 if i == j else 0) for j in range(6)] for i in range(6)])
    from skt_lab.linalg import inverse
    assert is_integrable(LieAlgebra.abelian(6), P @ J @ inverse(P))


def test_fundamental_form():
    h = HermitianStructure(canonical_j(6), identity(6))
    w = fundamental_form(h)
    assert w == f(6, 1, 6) + f(6, 2, 3) + f(6, 4, 5)
    assert pullback(h.J, w) == w
    assert not wedge_all(w, w, w).is_zero()


def test_incompatible_pair():
    G = identity(6)
    G[0, 0] = Fraction(2)
    with pytest.raises(DomainError):
        HermitianStructure(canonical_j(6), G)


def test_torsion_examples():
    h = HermitianStructure(canonical_j(6), identity(6))
    assert bismut_torsion(parse_notation("(f16,0,0,0,0,0)"), h).is_zero()
    for p in (1, Fraction(-2, 3)):
        H = bismut_torsion(l1(p), h)
        assert H == (f(6, 1, 2, 3) + f(6, 1, 4, 5)) * (2 * Fraction(p))
    with pytest.raises(DomainError):
        bismut_torsion(build_from_data(1, [0] * 4, zeros(4, 4), w=[1, 0, 0, 0]), h)


def test_torsion_skew_storage():
    h = HermitianStructure(canonical_j(6), identity(6))
    H = bismut_torsion(l1(2), h)
    e = identity(6)
    for i, j, k in ((0, 1, 2), (0, 3, 4)):
        v = H(e[i], e[j], e[k])
        assert H(e[j], e[i], e[k]) == -v and H(e[k], e[j], e[i]) == -v and H(e[j], e[k], e[i]) == v


def test_lee_examples():
    h = HermitianStructure(canonical_j(6), identity(6))
    for p in (1, Fraction(1, 3)):
        assert lee_form(l1(p), h) == f(6, 6, c=-4 * Fraction(p))
    assert lee_form(l1(0), h).is_zero()
    g, J = example_unimodular_lcskt_lcb(Fraction(1, 3))
    theta = lee_form(g, HermitianStructure(J, identity(8)))
    assert theta.coeffs.get((6,)) == 1


def test_lee_dual_path_catalog():
    cat = load_catalog()
    for e in cat:
        for values in sample_assignments(e, samples=2, seed=3):
            g = e.algebra(**values)
            h = HermitianStructure(canonical_j(6), identity(6))
            d = extract_data(g, h.J, h.metric)
            assert lee_form_direct(g, h) == lee_form_closed(d)


def test_lee_dual_path_random_metrics():
    rng = random.Random(2)
    g = build_from_data(Fraction(1, 2), [1, 0, 2, -1], mat([[1, -2, 0, 0], [2, 1, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]))
    J = canonical_j(6)
    for _ in range(5):
        G = random_compatible_metric(J, rng)
        h = HermitianStructure(J, G)
        d = extract_data(g, J, G)
        assert lee_form_direct(g, h).isclose(lee_form_closed(d))


def test_bismut_ricci_examples():
    A = mat([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    g = build_from_data(1, [0, 0, 1, 0], A)
    d = extract_data(g, canonical_j(6), identity(6))
    assert bismut_ricci(d).is_zero()
    k = build_from_data(0, [0] * 4, mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert bismut_ricci(extract_data(k, canonical_j(6), identity(6))).is_zero()
    q1 = parse_notation("(q*f16,f26,f36,0,0,0)", {"q": 1})
    assert bismut_ricci(extract_data(q1, canonical_j(6), identity(6))).is_zero()
    q3 = parse_notation("(q*f16,f26,f36,0,0,0)", {"q": 3})
    assert bismut_ricci(extract_data(q3, canonical_j(6), identity(6))) == f(6, 1, 6, c=-6)


def test_bismut_ricci_curvature_agrees():
    """The closed form equals the curvature trace on random metrics."""
    rng = random.Random(7)
    J = canonical_j(6)
    for _ in range(6):
        R = lambda: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        A = mat([[R(), -R(), 0, 0], [0, 0, 0, 0], [0, 0, R(), 0], [0, 0, 0, 0]])
        A[1, 0], A[1, 1] = -A[0, 1], A[0, 0]
        A[3, 3] = A[2, 2]
        g = build_from_data(R(), [R(), R(), R(), R()], A)
        G = random_compatible_metric(J, rng, spread=1)
        h = HermitianStructure(J, G)
        d = extract_data(g, J, G)
        assert bismut_ricci_direct(g, h).isclose(bismut_ricci(d, h), 1e-9)


def test_second_complex_structure_metric():
    g, J, Jp, Gp = example_two_complex_structures()
    assert is_integrable(g, Jp)
    h = HermitianStructure(Jp, Gp)
    assert not bismut_ricci_direct(g, h).is_zero()
