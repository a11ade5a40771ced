import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from skt_lab.catalog import load_catalog, random_admissible, sample_assignments
from skt_lab.liealg import build_from_data, canonical_j
from skt_lab.linalg import all_zero, identity
from skt_lab.notation import (
    NotationError, UnboundParameterError, algebra_from_json, algebra_to_json,
    alpha_space_from_json, alpha_space_to_json, emit_report, format_notation,
    parameters_in, parse_form, parse_notation, unicode_notation, verdict_from_json,
    verdict_to_json,
)
from skt_lab.spectral import classify
from skt_lab.verdicts import verdict


def test_parse_brackets():
    g = parse_notation("(f16,0,0,0,0,0)")
    # df^1 = f^16 means [e1, e6] = -e1
    assert g.c[0, 5, 0] == -1 and g.c[5, 0, 0] == 1
    assert not g.warnings


def test_parse_spellings_agree():
    a = parse_notation("(f^{16},-1/2*f_{26}+f[3,6],f36,0,0,0)")
    b = parse_notation("(f16, -1/2*f26 + f36, f36, 0, 0, 0)")
    assert all_zero(a.c - b.c)


def test_parse_reversed_index_flips_sign():
    a = parse_notation("(f61,0,0,0,0,0)")
    b = parse_notation("(-f16,0,0,0,0,0)")
    assert all_zero(a.c - b.c)


def test_parse_parameters():
    g = parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": Fraction(2, 3)})
    assert g.c[1, 5, 1] == Fraction(-2, 3)
    assert parameters_in("(p*f16, q*r2*f26, p*f36,0)") == ["p", "q", "r2"]


def test_parse_jacobi_warning():
    g = parse_notation("(0,f34,f12,0,0,0)")
    assert g.warnings and "Jacobi" in g.warnings[0]


@pytest.mark.parametrize("text,pos", [
    ("(f16,0,0,0,0,0", 14),
    ("(f16,0,0,0,0,0) x", 16),
    ("(f17,0,0,0,0,0)", 1),
    ("(f16,,0,0,0,0)", 5),
    ("(f1,0)", 1),
    ("(f16 f26,0,0,0,0,0)", 5),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(NotationError) as e:
        parse_notation(text)
    assert e.value.pos == pos
    assert "^" in str(e.value)


def test_unbound_parameter():
    with pytest.raises(UnboundParameterError) as e:
        parse_notation("(2*f16,q*f26,0,0,0,0)")
    assert e.value.pos == 7


def test_parse_form():
    f = parse_form("f16 + f23 - 2*f45", 6)
    assert f.degree == 2 and f.coeffs[(3, 4)] == -2
    assert parse_form("f32", 6) == -parse_form("f23", 6)
    assert parse_form("0", 6, degree=3).is_zero()


def test_format_roundtrip_catalog():
    for e in load_catalog():
        for values in sample_assignments(e, samples=2, seed=4):
            g = e.algebra(**values)
            assert all_zero(parse_notation(format_notation(g)).c - g.c)
            assert unicode_notation(g).startswith("(")


@given(rationals(), st.lists(rationals(), min_size=4, max_size=4), st.lists(rationals(), min_size=4, max_size=4))
def test_json_roundtrip(a, v, xs):
    A = [[xs[0], -xs[1], 0, 0], [xs[1], xs[0], 0, 0], [0, 0, xs[2], -xs[3]], [0, 0, xs[3], xs[2]]]
    g = build_from_data(a, v, A)
    d = json.loads(json.dumps(algebra_to_json(g)))
    assert all_zero(algebra_from_json(d).c - g.c)
    assert all_zero(parse_notation(d["notation"]).c - g.c)


def test_json_notation_with_params():
    d = {"schema": "skt-lab/1", "kind": "algebra", "notation": "(f16,p*f26,p*f36,p*f46,p*f56,0)",
         "params": {"p": "1/2"}}
    with pytest.raises(NotationError):
        algebra_from_json({**d, "schema": "other/9"})
    g = algebra_from_json(d, {"p": Fraction(1, 2)})
    assert g.c[1, 5, 1] == Fraction(-1, 2)


def test_verdict_json_roundtrip():
    rng = random.Random(41)
    J = canonical_j(6)
    for _ in range(8):
        a, v, A, _, _ = random_admissible(rng)
        vd = verdict(build_from_data(a, v, A), J, identity(6))
        back = verdict_from_json(json.loads(json.dumps(verdict_to_json(vd))))
        assert back.flags() == vd.flags()
        assert back.alpha_space == vd.alpha_space
        assert back.torsion == vd.torsion and back.lee == vd.lee and back.ricci == vd.ricci
        space = alpha_space_from_json(alpha_space_to_json(vd.alpha_space))
        assert space == vd.alpha_space


def test_markdown_row():
    g = parse_notation("(f16,0,0,0,0,0)")
    vd = verdict(g, canonical_j(6), identity(6))
    md = emit_report(vd, "markdown", name="ℓ₁₃", notation="(f16,0,0,0,0,0)")
    assert "| ℓ₁₃ | (f16,0,0,0,0,0) | ✓ | ✓ | ✓ |" in md
    md = emit_report(classify(g, canonical_j(6)), "markdown", name="ℓ₁₃", notation="(f16,0,0,0,0,0)")
    assert "| ℓ₁₃ | (f16,0,0,0,0,0) | — | ✓ | — |" in md


def test_json_report_deterministic():
    g = parse_notation("(f16,p*f26,p*f36,p*f46,p*f56,0)", {"p": 1})
    vd = verdict(g, canonical_j(6), identity(6))
    assert emit_report(vd) == emit_report(vd)
    with pytest.raises(TypeError):
        emit_report(object())
