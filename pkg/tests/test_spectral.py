import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals, rationals
from skt_lab.catalog import random_admissible, random_inadmissible, table1_samples
from skt_lab.liealg import AlmostAbelianData, build_from_data, canonical_j, extract_data
from skt_lab.linalg import (
    DomainError, adjoint, all_zero, identity, is_normal, mat, matrix_poly, solve_affine, zeros,
)
from skt_lab.notation import parse_notation
from skt_lab.spectral import (
    MetricFamilyElement, adjoint_polynomial, bi_invariance_check, classify,
    complex_form, complex_to_real, construct_alpha, construct_normalizing_metric,
    exists_brf, exists_kahler, exists_lcb, exists_lcskt, exists_twisted_skt,
    family_metric, table1_row, transform_data, witness_metric,
)
from skt_lab.verdicts import solve_alpha
from skt_lab.hermitian import HermitianStructure


def flags(d):
    return (exists_kahler(d), exists_lcb(d), exists_brf(d))


def test_normalizing_metric_example():
    A = complex_to_real([[1, 1], [0, 0]])
    H = construct_normalizing_metric(A)
    assert all_zero(H - complex_to_real([[1, 1], [1, 2]]))
    assert is_normal(A, H)
    assert not is_normal(A)


def test_normalizing_metric_random():
    rng = random.Random(12)
    J1 = canonical_j(6)[1:5, 1:5]
    for _ in range(40):
        _, _, A, _, _ = random_admissible(rng)
        H = construct_normalizing_metric(A)
        assert is_normal(A, H)
        assert all_zero(J1.T @ H @ J1 - H)


def test_normalizing_metric_rejects_jordan():
    with pytest.raises(DomainError):
        construct_normalizing_metric(complex_to_real([[(1, 1), 1], [0, (1, 1)]]))


def test_adjoint_polynomial_examples():
    rot = complex_to_real([[(0, 1), 0], [0, (0, 2)]])
    assert adjoint_polynomial(rot, identity(4)) == [0, -1, 0, 0]
    mixed = complex_to_real([[(1, 1), 0], [0, 1]])
    assert adjoint_polynomial(mixed, identity(4)) == [2, -1, 0]
    with pytest.raises(DomainError):
        adjoint_polynomial(complex_to_real([[1, 1], [0, 0]]), identity(4))


def test_adjoint_polynomial_random():
    rng = random.Random(13)
    for _ in range(20):
        _, _, A, _, _ = random_admissible(rng)
        H = construct_normalizing_metric(A)
        q = adjoint_polynomial(A, H)
        assert all_zero(matrix_poly(q, A) - adjoint(A, H))


def test_complex_form_roundtrip():
    M = [[(1, 2), (0, -1)], [(Fraction(1, 2), 0), (3, 3)]]
    A = complex_to_real(M)
    out, B = complex_form(A)
    assert all_zero(B - identity(4))
    assert [[tuple(z) for z in row] for row in out] == [[(1, 2), (0, -1)], [(Fraction(1, 2), 0), (3, 3)]]


def test_twisted_and_lcskt_examples():
    J = canonical_j(6)
    l1 = lambda p: parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": Fraction(p)})
    assert exists_twisted_skt(l1(1), J)[0]
    assert exists_lcskt(l1(1), J)
    # mu = -a/2 is the only obstruction once real parts are 0 or mu
    assert not exists_lcskt(l1(Fraction(-1, 2)), J)
    jordan = build_from_data(0, [0] * 4, complex_to_real([[1, 1], [0, 1]]))
    assert not exists_twisted_skt(jordan, J)[0]
    two = build_from_data(0, [0] * 4, complex_to_real([[1, 0], [0, 2]]))
    assert not exists_twisted_skt(two, J)[0]


def test_table1_rows():
    for row in range(1, 7):
        for data in table1_samples(row, 3, seed=5):
            assert table1_row(data) == row


def test_construct_alpha_matches_solver_on_table1():
    J = canonical_j(6)
    for row in range(1, 7):
        for data in table1_samples(row, 3, seed=6):
            h = HermitianStructure(data.J, data.metric)
            assert construct_alpha(data) == solve_alpha(data.algebra, h)


def _compatible_h(xs):
    x, y, z, t = xs
    # J_1-compatible SPD: [[X, Z], [Z^T, Y]] with 2x2 blocks commuting with J_1
    return mat([[x, 0, z, -t], [0, x, t, z], [z, t, y, 0], [-t, z, 0, y]])


@given(st.lists(rationals(-3, 3, 2), min_size=4, max_size=4), nonzero_rationals(), st.integers(0, 3))
def test_transform_matches_family_metric(w, c, k):
    A = mat([[1, -2, 0, 0], [2, 1, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]])
    d = AlmostAbelianData.from_parameters(Fraction(1, 2), [1, 0, 2, -1], A)
    h = _compatible_h([Fraction(2 + k), Fraction(3), Fraction(k, 2), Fraction(1, 2)])
    elt = MetricFamilyElement(h=h, c=c, w=mat(w))
    t = transform_data(d, elt)
    G, B = family_metric(d, elt)
    d2 = extract_data(d.algebra, d.J, G, orientation=B[:, -1], n1_basis=B[:, 1:-1])
    assert d2.a == t.a_u
    assert all_zero(d2.v - t.v_u)
    assert all_zero(d2.A - t.A_u)
    assert all_zero(d2.h - t.h_u)
    # existence is a property of the family, not of the member
    assert flags(t.as_data()) == flags(d)


def test_scaling_u():
    """u = s e_1 multiplies (a, A) by s and v by s^2."""
    A = mat([[1, -2, 0, 0], [2, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    d = AlmostAbelianData.from_parameters(Fraction(1, 3), [0, 1, 1, 0], A)
    s = Fraction(-5, 2)
    t = transform_data(d, MetricFamilyElement(h=identity(4), c=s, w=zeros(4)))
    assert t.a_u == s * d.a
    assert all_zero(t.A_u - s * A)
    assert all_zero(t.v_u - s * s * d.v)


def test_existence_examples():
    J = canonical_j(6)

    def data(text, **kw):
        return extract_data(parse_notation(text, {k: Fraction(x) for k, x in kw.items()}), J, identity(6))

    assert exists_kahler(data("(f16,0,0,0,0,0)"))
    assert not exists_kahler(data("(f16,p*f26,p*f36,p*f46,p*f56,0)", p=1))
    assert exists_kahler(data("(0,f36,-f26,0,0,0)"))
    # v outside the image of A - a: no Kahler metric
    assert not exists_kahler(data("(0,f36,-f26,f16,0,0)"))
    # BRF needs a^2 - a Tr A / 2 <= 0
    assert exists_brf(data("(q*f16,f26,f36,0,0,0)", q=1))
    assert not exists_brf(data("(q*f16,f26,f36,0,0,0)", q=3))
    assert exists_lcb(data("(q*f16,f26,f36,0,0,0)", q=3))
    r = Fraction(1, 2)
    assert exists_brf(data("(f16,r*f26-f36,f26+r*f36,f16,0,0)", r=1))
    assert not exists_brf(data("(f16,r*f26-f36,f26+r*f36,f16,0,0)", r=r))


def test_existence_implications_random():
    rng = random.Random(21)
    J = canonical_j(6)
    for _ in range(60):
        a, v, A, _, _ = random_admissible(rng)
        g = build_from_data(a, v, A)
        rep = classify(g, J)
        assert rep.twisted_skt
        if rep.bismut_ricci_flat or rep.kaehler:
            assert rep.lcb
        if rep.unimodular and rep.bismut_ricci_flat:
            assert rep.kaehler
        wd = extract_data(g, J, rep.witness_metric)
        assert is_normal(wd.A, wd.h)
        assert rep.alpha_space == solve_alpha(g, HermitianStructure(J, rep.witness_metric))


def test_inadmissible_random():
    rng = random.Random(22)
    J = canonical_j(6)
    for _ in range(30):
        a, v, A, _ = random_inadmissible(rng)
        rep = classify(build_from_data(a, v, A), J)
        assert not any((rep.twisted_skt, rep.lcskt, rep.kaehler, rep.lcb, rep.bismut_ricci_flat))
        assert rep.witness_metric is None


def test_bi_invariance():
    rot = complex_to_real([[(0, 1), 0], [0, (0, 2)]])
    assert bi_invariance_check(AlmostAbelianData.from_parameters(0, [0] * 4, rot))
    assert not bi_invariance_check(AlmostAbelianData.from_parameters(1, [0] * 4, rot))
    assert not bi_invariance_check(AlmostAbelianData.from_parameters(0, [1, 0, 0, 0], rot))
    # unimodular with a bi-invariant J: BRF metrics exist and are Kahler
    d = AlmostAbelianData.from_parameters(0, [0] * 4, rot)
    assert exists_brf(d) and exists_kahler(d)
    # a = 0 and v in Im A: not bi-invariant for this metric, but for another one
    d = AlmostAbelianData.from_parameters(0, [1, 0, 0, 0], rot)
    assert not bi_invariance_check(d)
    assert _bi_invariant_member(d)


def _bi_invariant_member(d):
    """Move to the family member with u = e_1 + w, A w = -v, and test
    bi-invariance there through the brackets as well."""
    part, _ = solve_affine(d.A, -d.v)
    if part is None or d.a != 0:
        return False
    elt = MetricFamilyElement(h=identity(4), c=Fraction(1), w=part)
    G, B = family_metric(d, elt)
    d2 = extract_data(d.algebra, d.J, G, orientation=B[:, -1], n1_basis=B[:, 1:-1])
    return bi_invariance_check(d2)


def test_unimodular_brf_iff_bi_invariant():
    rng = random.Random(24)
    J = canonical_j(6)
    seen = 0
    for _ in range(60):
        a, v, A, _, _ = random_admissible(rng)
        a = Fraction(0) if rng.random() < 0.5 else a
        if rng.random() < 0.5:
            v = [0] * 4
        A = A - (a + sum(A[i, i] for i in range(4))) / 4 * identity(4)
        if a == 0 and all_zero(A):
            continue
        rep = classify(build_from_data(a, v, A), J, with_witness=False)
        if not rep.twisted_skt:
            continue
        assert rep.unimodular
        if rep.bi_invariant:
            assert rep.bismut_ricci_flat
        assert rep.bismut_ricci_flat == _bi_invariant_member(rep.data)
        seen += rep.bismut_ricci_flat
    assert seen > 0


def test_witness_metric_compatible():
    rng = random.Random(23)
    J = canonical_j(6)
    for _ in range(10):
        a, v, A, _, _ = random_admissible(rng)
        g = build_from_data(a, v, A)
        d = extract_data(g, J, identity(6))
        G = witness_metric(d)
        assert all_zero(J.T @ G @ J - G)
        HermitianStructure(J, G)
