import random
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, rationals
from skt_lab.catalog import (
    example_unimodular_lcskt_lcb, load_catalog, random_admissible, random_compatible_metric,
    table1_samples,
)
from skt_lab.forms import InvariantForm, ce_d
from skt_lab.hermitian import HermitianStructure, bismut_torsion
from skt_lab.liealg import AlmostAbelianData, build_from_data, canonical_j, extract_data
from skt_lab.linalg import all_zero, identity, mat, nullspace, zeros
from skt_lab.notation import parse_notation
from skt_lab.verdicts import (
    AlphaSpace, check_antisym_consequence, check_brf, check_kahler, check_lcb,
    check_lcskt_conditions, check_skt, solve_alpha, verdict,
)


def f(n, *idx, c=1):
    return InvariantForm.basis(n, *[i - 1 for i in idx], coeff=Fraction(c))


def l1(p):
    return parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": Fraction(p)})


def canon(n=6):
    return HermitianStructure(canonical_j(n), identity(n))


def data_of(g, n=6):
    return extract_data(g, canonical_j(n), identity(n))


def test_solve_alpha_examples():
    s = solve_alpha(l1(1), canon())
    assert s.dimension == 0 and s.contains(f(6, 6, c=-3))
    assert solve_alpha(l1(Fraction(-1, 2)), canon()).contains_zero()
    p = Fraction(2)
    g = build_from_data(0, [0] * 4, identity(4) * p)
    s = solve_alpha(g, canon())
    expected = AlphaSpace.from_forms(f(6, 6, c=-2 * p), [f(6, 1)])
    assert s == expected


def test_torsion_identity_for_l1():
    p = Fraction(3, 2)
    h = canon()
    H = bismut_torsion(l1(p), h)
    dH = ce_d(l1(p), H)
    assert dH == (f(6, 1, 2, 3, 6) + f(6, 1, 4, 5, 6)) * (2 * p * (1 + 2 * p))


def test_check_skt_examples():
    for p in (0, Fraction(-1, 2), 1, Fraction(1, 3)):
        assert check_skt(data_of(l1(p))) == (p in (0, Fraction(-1, 2)))
    for p, q in ((2, -1), (2, 0), (2, 1), (Fraction(1, 3), Fraction(-1, 6))):
        g = parse_notation("(p*f16,q*f26,q*f36,q*f46+f56,-f46+q*f56,0)", {"p": Fraction(p), "q": Fraction(q)})
        assert check_skt(data_of(g)) == (q in (0, -Fraction(p) / 2))
    A = mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    assert check_skt(AlmostAbelianData.from_parameters(5, [1, 2, 3, 4], A))


def test_check_kahler_examples():
    g = parse_notation("(f16,0,0,0,0,0)")
    assert check_kahler(data_of(g), g, canon())
    for p in (0, 1, Fraction(-1, 2)):
        g = parse_notation("(0,p*f26+f36,-f26+p*f36,0,0,0)", {"p": Fraction(p)})
        assert check_kahler(data_of(g), g, canon()) == (p == 0)
    d = AlmostAbelianData.from_parameters(0, [0, 0, 1, 0], mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert not check_kahler(d)


def test_check_lcb_examples():
    cat = load_catalog()
    for e in cat:
        values = {p: Fraction(3, 7) for p in e.params}
        assert verdict(e.algebra(**values), canonical_j(6), identity(6)).lcb == e.expected(values, "lcb")
    g, J = example_unimodular_lcskt_lcb(Fraction(2))
    assert check_lcb(extract_data(g, J, identity(8)))
    d = AlmostAbelianData.from_parameters(0, [1, 0, 0, 0], mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert not check_lcb(d)


def test_check_brf_examples():
    d = AlmostAbelianData.from_parameters(1, [0, 0, 1, 0], mat([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    assert check_brf(d)
    for q in (0, 2, 1, -1):
        g = parse_notation("(q*f16,f26,f36,f46,f56,0)", {"q": Fraction(q)})
        assert check_brf(data_of(g)) == (q in (0, 2))
    assert not check_brf(AlmostAbelianData.from_parameters(1, [0] * 4, zeros(4, 4)))


def test_lcskt_conditions_examples():
    d = data_of(l1(1))
    assert check_lcskt_conditions(d, f(6, 6, c=-3))
    assert not check_lcskt_conditions(d, f(6, 6))
    d0 = data_of(l1(Fraction(-1, 2)))
    assert check_lcskt_conditions(d0, InvariantForm.zero(6, 1))
    assert check_antisym_consequence(d, f(6, 6, c=-3))


def _closed_forms(g):
    n = g.dim
    rows = []
    for i in range(n):
        rows.append(ce_d(g, InvariantForm.basis(n, i)).to_matrix().reshape(-1))
    M = np.array(rows, dtype=object).T
    return nullspace(M)


def test_lcskt_conditions_equivalence_table1():
    """conditions(alpha) iff alpha in solve_alpha, for closed alpha."""
    rng = random.Random(4)
    for row in range(1, 7):
        for data in table1_samples(row, 5, seed=1):
            g = data.algebra
            s = solve_alpha(g, canon())
            assert not s.is_empty()
            for _ in range(3):
                alpha = s.element([Fraction(rng.randint(-5, 5)) for _ in s.homogeneous])
                assert check_lcskt_conditions(data, alpha)
                assert check_antisym_consequence(data, alpha)
            closed = _closed_forms(g)
            for z in closed:
                beta = s.particular + z * Fraction(rng.randint(1, 4))
                assert check_lcskt_conditions(data, beta) == s.contains(beta)


def test_verdict_monotone_and_flags():
    rng = random.Random(8)
    J = canonical_j(6)
    for _ in range(25):
        a, v, A, _, _ = random_admissible(rng)
        g = build_from_data(a, v, A)
        G = identity(6) if rng.random() < 0.5 else random_compatible_metric(J, rng, spread=1)
        vd = verdict(g, J, G)
        if vd.kaehler:
            assert vd.skt and vd.torsion.is_zero() and vd.lee.is_zero()
        if vd.skt:
            assert vd.twisted_skt
        assert vd.lcskt == vd.alpha_space.has_nonzero()
        assert vd.skt == vd.alpha_space.contains_zero()


def test_scale_covariance():
    """Rescaling e_2n keeps every flag and scales alpha(e_2n)."""
    A = mat([[1, -2, 0, 0], [2, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    g = build_from_data(Fraction(1, 2), [0, 0, 1, 0], A)
    J = canonical_j(6)
    base = verdict(g, J, identity(6))
    for c in (Fraction(2), Fraction(1, 3)):
        G = identity(6)
        G[0, 0] = G[5, 5] = 1 / (c * c)
        vd = verdict(g, J, G)
        assert vd.flags() == base.flags()
        d0, d1 = base.data, vd.data
        p0 = base.alpha_space.particular @ d0.basis
        p1 = vd.alpha_space.particular @ d1.basis
        assert p1[-1] == c * p0[-1]


@given(nonzero_rationals(), rationals())
def test_l1_alpha_formula(p, dummy):
    s = solve_alpha(l1(p), canon())
    if p == Fraction(-1, 2):
        assert s.contains_zero()
    else:
        assert s.contains(f(6, 6, c=-1 - 2 * p))
