"""The six-dimensional classification as executable data.

Entries come from ``data/catalog.json``.  Each has structure equations with
parameters and the printed table cells as predicates (Python expressions
over the parameters, evaluated exactly).  ``verify_entry`` samples
parameters, recomputes every flag and lists the disagreements.
"""

from __future__ import annotations

import ast
import cmath
import json
import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np

from .linalg import (
    DEFAULT_TOL, ConsistencyError, DomainError, all_zero, commutator, identity,
    inverse, is_exact, mat, nullspace, to_scalar, zeros,
)
from .liealg import (
    AlmostAbelianData, LieAlgebra, build_from_data, canonical_j, canonical_j1,
    extract_data, unimodular_check,
)
from .notation import parse_notation
from .spectral import (
    complex_form, complex_to_real, construct_alpha, exists_brf, exists_lcb,
    exists_lcskt, exists_twisted_skt, table1_row,
)
from .verdicts import AlphaSpace, solve_alpha, verdict

TABLE2 = ("kaehler", "skt", "lcskt")
TABLE3 = ("unimodular", "lcb", "brf")


class EntryDefinitionError(ValueError):
    """A catalog entry whose equations do not parse or are not a Lie algebra."""


class PredicateError(ValueError):
    pass


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

_CMP = {
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
    ast.In: lambda a, b: a in b,
    ast.NotIn: lambda a, b: a not in b,
}
_BIN = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: Fraction(a) / b if isinstance(a, int) else a / b,
}


def evaluate(expr: str, env: dict):
    """Evaluate a predicate or arithmetic expression exactly.

    Integer literals become Fractions so ``-1/2`` is exact; only arithmetic,
    comparisons, ``and``/``or``/``not`` and tuple literals are allowed.
    """
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as e:
        raise PredicateError(f"cannot parse {expr!r}: {e.msg}") from None
    return _eval(tree.body, env, expr)


def _eval(node, env, src):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool):
            return node.value
        if isinstance(node.value, int):
            return Fraction(node.value)
        raise PredicateError(f"unsupported constant in {src!r}")
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise PredicateError(f"unbound name {node.id!r} in {src!r}")
        return env[node.id]
    if isinstance(node, (ast.Tuple, ast.List, ast.Set)):
        return tuple(_eval(x, env, src) for x in node.elts)
    if isinstance(node, ast.UnaryOp):
        x = _eval(node.operand, env, src)
        if isinstance(node.op, ast.USub):
            return -x
        if isinstance(node.op, ast.UAdd):
            return x
        if isinstance(node.op, ast.Not):
            return not x
    if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
        return _BIN[type(node.op)](_eval(node.left, env, src), _eval(node.right, env, src))
    if isinstance(node, ast.BoolOp):
        vals = (_eval(x, env, src) for x in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, env, src)
        for op, right in zip(node.ops, node.comparators):
            r = _eval(right, env, src)
            if not _CMP[type(op)](left, r):
                return False
            left = r
        return True
    raise PredicateError(f"unsupported syntax in {src!r}")


def special_values(expr: str, params):
    """Parameter assignments on the boundaries of a predicate.

    Each comparison ``lhs op rhs`` (or each element of ``lhs in (...)``)
    gives an equation, solved for the first parameter it involves.  Values
    are sympy expressions in the remaining parameters, returned as strings.
    """
    import sympy

    tree = ast.parse(expr, mode="eval")
    out = []
    for node in ast.walk(tree):
        if not isinstance(node, ast.Compare):
            continue
        left = node.left
        for op, right in zip(node.ops, node.comparators):
            rhs = right.elts if isinstance(op, (ast.In, ast.NotIn)) and isinstance(right, (ast.Tuple, ast.List, ast.Set)) else [right]
            for r in rhs:
                eq = sympy.sympify(f"({ast.unparse(left)}) - ({ast.unparse(r)})", rational=True)
                names = [p for p in params if sympy.Symbol(p) in eq.free_symbols]
                if not names:
                    continue
                sol = sympy.solve(eq, sympy.Symbol(names[0]))
                for s in sol:
                    item = (names[0], str(s))
                    if item not in out:
                        out.append(item)
            left = right
    return out


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AShape:
    """A template for ``A``; ``kind`` describes it over C (with ``J_1``
    as multiplication by i) for matching."""
    name: str
    source: str
    template: tuple
    params: tuple
    kind: str
    j1: str = "canonical"

    def instantiate(self, **values):
        env = {k: to_scalar(v) for k, v in values.items()}
        missing = [p for p in self.params if p not in env]
        if missing:
            raise PredicateError(f"missing shape parameters {missing}")
        return mat([[evaluate(x, env) for x in row] for row in self.template])

    def J1(self):
        return canonical_j1(4) if self.j1 == "canonical" else ALT_J1.copy()


def _t(rows):
    return tuple(tuple(r.split()) for r in rows)


ALT_J1 = mat([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]])

COMPLEX_SHAPES = (
    AShape("complex-1", "complex", _t(["p 0 0 0", "0 p 0 0", "0 0 r 0", "0 0 0 r"]), ("p", "r"), "real-real"),
    AShape("complex-2", "complex", _t(["p 1 0 0", "-1 p 0 0", "0 0 q 0", "0 0 0 q"]), ("p", "q"), "nonreal-real"),
    AShape("complex-3", "complex", _t(["p 1 0 0", "-1 p 0 0", "0 0 q r", "0 0 -r q"]), ("p", "q", "r"), "nonreal-any"),
    AShape("complex-4", "complex", _t(["p 1 0 0", "0 p 0 0", "0 0 p 1", "0 0 0 p"]), ("p",), "jordan-real", "alternate"),
    AShape("complex-5", "complex", _t(["p 1 -1 0", "-1 p 0 -1", "0 0 p 1", "0 0 -1 p"]), ("p",), "jordan-nonreal"),
)

TWISTED_SHAPES = (
    AShape("twisted-1", "twisted", _t(["p 0 0 0", "0 p 0 0", "0 0 p 0", "0 0 0 p"]), ("p",), "equal-real"),
    AShape("twisted-2", "twisted", _t(["p 0 0 0", "0 p 0 0", "0 0 0 0", "0 0 0 0"]), ("p",), "real-zero"),
    AShape("twisted-3", "twisted", _t(["p 1 0 0", "-1 p 0 0", "0 0 p 0", "0 0 0 p"]), ("p",), "nonreal-realpart"),
    AShape("twisted-4", "twisted", _t(["0 1 0 0", "-1 0 0 0", "0 0 q 0", "0 0 0 q"]), ("q",), "imaginary-real"),
    AShape("twisted-5", "twisted", _t(["p 1 0 0", "-1 p 0 0", "0 0 0 0", "0 0 0 0"]), ("p",), "nonreal-zero"),
    AShape("twisted-6", "twisted", _t(["p r 0 0", "-r p 0 0", "0 0 p s", "0 0 -s p"]), ("p", "r", "s"), "same-realpart"),
    AShape("twisted-7", "twisted", _t(["p r 0 0", "-r p 0 0", "0 0 0 s", "0 0 -s 0"]), ("p", "r", "s"), "one-imaginary"),
)

SHAPES = {s.name: s for s in COMPLEX_SHAPES + TWISTED_SHAPES}


def _cplx(z):
    re, im = z
    return complex(float(re), float(im))


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def complex_spectrum(A, J1=None, tol=DEFAULT_TOL):
    """Eigenvalues ``(l1, l2)`` of the 2x2 complex form of a 4x4 ``A`` and
    whether it is diagonalizable.  Repeated eigenvalues are decided exactly
    for rational input."""
    M, _ = complex_form(A, J1, tol)
    if len(M) != 2:
        raise DomainError("shape matching needs a 4x4 A")
    tr = (M[0][0][0] + M[1][1][0], M[0][0][1] + M[1][1][1])
    p1, p2 = _cmul(M[0][0], M[1][1]), _cmul(M[0][1], M[1][0])
    det = (p1[0] - p2[0], p1[1] - p2[1])
    t2 = _cmul(tr, tr)
    disc = (t2[0] - 4 * det[0], t2[1] - 4 * det[1])
    exact = is_exact(np.asarray(A))
    if (exact and disc == (0, 0)) or (not exact and abs(_cplx(disc)) <= tol):
        lam = _cplx(tr) / 2
        off = all(abs(_cplx(M[i][j])) <= tol for i, j in ((0, 1), (1, 0)))
        return (lam, lam), off
    r = cmath.sqrt(_cplx(disc))
    t = _cplx(tr)
    return ((t + r) / 2, (t - r) / 2), True


def _real(z, tol):
    return abs(z.imag) <= tol


def _kind_params(kind, l1, l2, diag, tol):
    """Parameters (with scale ``c``) when ``(l1, l2)`` fits ``kind``."""
    z = lambda x: abs(x) <= tol
    if kind.startswith("jordan"):
        if diag:
            return None
        lam = l1
        if kind == "jordan-real":
            return {"p": lam.real} if _real(lam, tol) else None
        if _real(lam, tol):
            return None
        c = -1 / lam.imag
        return {"p": c * lam.real, "scale": c}
    if not diag:
        return None
    for x, y in ((l1, l2), (l2, l1)):
        if kind == "equal-real" and _real(x, tol) and abs(x - y) <= tol:
            return {"p": x.real}
        if kind == "real-real" and _real(x, tol) and _real(y, tol):
            return {"p": x.real, "r": y.real}
        if kind == "real-zero" and _real(x, tol) and z(y):
            return {"p": x.real}
        if kind in ("nonreal-real", "nonreal-any", "nonreal-realpart", "nonreal-zero") and not _real(x, tol):
            c = -1 / x.imag
            u, w = c * x, c * y
            if kind == "nonreal-real" and _real(y, tol):
                return {"p": u.real, "q": w.real, "scale": c}
            if kind == "nonreal-any":
                return {"p": u.real, "q": w.real, "r": -w.imag, "scale": c}
            if kind == "nonreal-realpart" and _real(y, tol) and abs(x.real - y.real) <= tol:
                return {"p": u.real, "scale": c}
            if kind == "nonreal-zero" and z(y):
                return {"p": u.real, "scale": c}
        if kind == "imaginary-real" and z(x.real) and not z(x.imag) and _real(y, tol):
            c = -1 / x.imag
            return {"q": c * y.real, "scale": c}
        if kind == "same-realpart" and abs(x.real - y.real) <= tol:
            return {"p": x.real, "r": -x.imag, "s": -y.imag}
        if kind == "one-imaginary" and z(y.real):
            return {"p": x.real, "r": -x.imag, "s": -y.imag}
    return None


def _default_j1(A, tol):
    """Canonical J_1 when ``A`` commutes with it, else the alternate pairing
    ``e_2 -> e_4``, ``e_3 -> e_5``."""
    for J1 in (canonical_j1(4), ALT_J1):
        if all_zero(commutator(np.asarray(A), J1), tol):
            return J1
    raise DomainError("A commutes with neither the canonical nor the alternate J_1")


def matching_shapes(A, J1=None, tol=DEFAULT_TOL, source=None):
    """All ``(AShape, params)`` that ``A`` instantiates up to a complex
    linear change of basis and a real rescaling."""
    A = np.asarray(A)
    if A.shape != (4, 4):
        raise DomainError("shape matching needs a 4x4 A")
    J1 = _default_j1(A, tol) if J1 is None else np.asarray(J1)
    (l1, l2), diag = complex_spectrum(A, J1, tol)
    ctol = max(tol, 1e-9)
    out = []
    for shape in COMPLEX_SHAPES + TWISTED_SHAPES:
        if source is not None and shape.source != source:
            continue
        params = _kind_params(shape.kind, l1, l2, diag, ctol)
        if params is not None:
            out.append((shape, params))
    return out


def match_shape(A, J1=None, tol=DEFAULT_TOL, source="twisted"):
    """First matching template from ``source`` (``"twisted"`` or
    ``"complex"``), or None."""
    found = matching_shapes(A, J1, tol, source)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# catalog entries
# ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    id: str
    name: str
    notation: str
    params: list
    table2: dict
    table3: dict
    printed: dict = field(default_factory=dict)
    shape: str = None
    also_known_as: list = field(default_factory=list)
    isomorphic_to: list = field(default_factory=list)

    def algebra(self, **values) -> LieAlgebra:
        from .notation import NotationError

        try:
            g = parse_notation(self.notation, values, name=self.name)
        except NotationError as e:
            raise EntryDefinitionError(f"{self.id}: {e}") from None
        if g.warnings:
            raise EntryDefinitionError(f"{self.id}: {'; '.join(g.warnings)}")
        return g

    def expected(self, values, column):
        pred = self.table2.get(column, self.table3.get(column))
        return evaluate(pred, {k: to_scalar(v) for k, v in values.items()})

    def predicates(self):
        return list(self.table2.values()) + list(self.table3.values())


@dataclass
class Catalog:
    entries: list
    table1: list
    errata: list

    def __getitem__(self, key):
        for e in self.entries:
            if e.id == key or e.name == key:
                return e
        raise KeyError(key)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def expected_mismatches(self):
        return {e["where"] for e in self.errata if e.get("expected_mismatch")}


@lru_cache(maxsize=None)
def load_catalog(path=None) -> Catalog:
    if path is None:
        text = resources.files("skt_lab").joinpath("data/catalog.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    d = json.loads(text)
    entries = [CatalogEntry(**e) for e in d["entries"]]
    return Catalog(entries, d["table1"], d.get("errata", []))


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_rational(rng, lo=-9, hi=9, max_den=4, nonzero=True):
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
        if x or not nonzero:
            return x


def entry_rng(entry_id, seed):
    return random.Random(zlib.crc32(entry_id.encode()) ^ seed)


def sample_assignments(entry: CatalogEntry, samples=8, seed=0):
    """``samples`` generic assignments, then one per special value of any
    predicate (other parameters generic and nonzero)."""
    rng = entry_rng(entry.id, seed)
    if not entry.params:
        return [{}]
    out = [{p: random_rational(rng) for p in entry.params} for _ in range(samples)]
    exprs = entry.predicates() + [iso["when"] for iso in entry.isomorphic_to]
    seen = set()
    for expr in exprs:
        try:
            specials = special_values(expr, entry.params)
        except Exception:
            continue
        for name, value in specials:
            if (name, value) in seen:
                continue
            seen.add((name, value))
            env = {p: random_rational(rng) for p in entry.params if p != name}
            env[name] = evaluate(value.replace("**", "*"), env)
            out.append(env)
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class Mismatch:
    entry: str
    table: int
    column: str
    params: dict
    expected: object
    computed: bool
    note: str = ""

    @property
    def where(self):
        return f"table{self.table}/{self.entry}/{self.column}"

    def as_dict(self):
        return {"where": self.where, "params": {k: str(v) for k, v in self.params.items()},
                "printed": str(self.expected), "computed": self.computed, "note": self.note}


@dataclass
class EntryReport:
    entry: CatalogEntry
    rows: list
    mismatches: list
    errors: list

    def ok(self, tables=(2, 3), expected=()):
        return not self.errors and not [m for m in self.mismatches
                                        if m.table in tables and m.where not in expected]

    def as_dict(self):
        return {
            "entry": self.entry.id,
            "name": self.entry.name,
            "samples": len(self.rows),
            "mismatches": [m.as_dict() for m in self.mismatches],
            "errors": self.errors,
        }


def entry_flags(g: LieAlgebra, brf_reading="existence", tol=DEFAULT_TOL):
    """Table 2 flags for the canonical J and identity metric, and Table 3
    flags (existence reading for LCB and BRF unless ``brf_reading`` is
    ``"canonical"``)."""
    n = g.dim
    J = canonical_j(n)
    v = verdict(g, J, identity(n), tol)
    data = v.data
    twisted, report = exists_twisted_skt(g, J, tol, data=data)
    flags = {
        "kaehler": v.kaehler,
        "skt": v.skt,
        "lcskt": v.lcskt,
        "unimodular": unimodular_check(g, tol),
        "lcb": exists_lcb(data, tol, report),
        "brf": exists_brf(data, tol, report) if brf_reading == "existence" else v.bismut_ricci_flat,
    }
    problems = []
    if v.twisted_skt and not twisted:
        problems.append("a twisted SKT metric was found but the spectral test says none exists")
    if v.lcskt and not exists_lcskt(g, J, tol, data=data):
        problems.append("LCSKT holds for the identity metric but the existence test fails")
    if v.lcb and not flags["lcb"]:
        problems.append("LCB holds for the identity metric but the existence test fails")
    if v.bismut_ricci_flat and v.twisted_skt and not exists_brf(data, tol, report):
        problems.append("the identity metric is Bismut-Ricci flat but the existence test fails")
    if v.balanced and v.twisted_skt:
        from .spectral import exists_kahler
        if not exists_kahler(data, tol, report):
            problems.append("balanced and twisted SKT without a Kahler metric")
    return flags, v, problems


def verify_entry(entry: CatalogEntry, samples=8, seed=0, brf_reading="existence",
                 tables=(2, 3), tol=DEFAULT_TOL) -> EntryReport:
    rows, mismatches, errors = [], [], []
    for values in sample_assignments(entry, samples, seed):
        g = entry.algebra(**values)
        flags, _, problems = entry_flags(g, brf_reading, tol)
        errors += [f"{entry.id} {values}: {p}" for p in problems]
        rows.append((values, flags))
        for table, cols in ((2, TABLE2), (3, TABLE3)):
            if table not in tables:
                continue
            for col in cols:
                try:
                    exp = entry.expected(values, col)
                    note = ""
                except PredicateError as e:
                    exp, note = entry.printed.get(col, "?"), str(e)
                if exp is not flags[col] and exp != flags[col]:
                    mismatches.append(Mismatch(entry.id, table, col, values, exp, flags[col], note))
    return EntryReport(entry, rows, mismatches, errors)


def verify_isomorphisms(entry: CatalogEntry, catalog: Catalog, samples=4, seed=0, tol=DEFAULT_TOL):
    """Computed Table 2 flags agree across recorded isomorphic pairs."""
    problems = []
    for iso in entry.isomorphic_to:
        other = catalog[iso["entry"]]
        for values in sample_assignments(entry, samples, seed):
            if not evaluate(iso["when"], values):
                continue
            mapped = {k: evaluate(v, values) for k, v in iso["params"].items()}
            for p in other.params:
                mapped.setdefault(p, values.get(p, Fraction(1)))
            f1, _, _ = entry_flags(entry.algebra(**values), tol=tol)
            f2, _, _ = entry_flags(other.algebra(**mapped), tol=tol)
            for col in TABLE2 + ("unimodular", "lcb", "brf"):
                if f1[col] != f2[col]:
                    problems.append(f"{entry.id}{values} vs {other.id}{mapped}: {col} {f1[col]} != {f2[col]}")
    return problems


# ---------------------------------------------------------------------------
# the alpha table
# ---------------------------------------------------------------------------

def printed_alpha_family(row: dict, data: AlmostAbelianData, tol=DEFAULT_TOL) -> AlphaSpace:
    """The alpha family exactly as printed in a row of the alpha table,
    built for ``data`` (orthonormal adapted data)."""
    report_mu = None
    if row["spectrum"] == "mu":
        from .linalg import eigen
        from .spectral import mu_value
        report_mu = mu_value(data, eigen(data.A, tol))
    dual = data.dual_basis()
    mids = dual[1:-1]
    symbols = {"e1": dual[0], "e2n": dual[-1],
               "vflat": sum((b * r for b, r in zip(data.h @ data.v, mids)), zeros(data.dim))}
    env = {"a": data.a, "mu": report_mu, "vnorm2": data.v_norm2()}

    def combo(spec):
        out = zeros(data.dim)
        for sym, coef in spec.items():
            out = out + evaluate(coef, env) * symbols[sym]
        return out

    hom = []
    for item in row["homogeneous"]:
        if item == "beta":
            hom += [sum((b * r for b, r in zip(beta, mids)), zeros(data.dim)) for beta in nullspace(data.A.T, tol)]
        else:
            hom.append(combo(item))
    return AlphaSpace(data.dim, combo(row["particular"]), hom, tol)


def _rot(p, r):
    return [[p, r], [-r, p]]


def _blocks(b1, b2):
    A = zeros(4, 4)
    for i in range(2):
        for j in range(2):
            A[i, j] = to_scalar(b1[i][j])
            A[2 + i, 2 + j] = to_scalar(b2[i][j])
    return A


def table1_samples(row: int, count=5, seed=0):
    """Orthonormal adapted data in dimension 6 satisfying a row's
    conditions: normal ``A`` (block rotations and scalings), generic
    rational parameters."""
    rng = random.Random(1000 * row + seed)
    out = []
    while len(out) < count:
        R = lambda: random_rational(rng)
        if row in (1, 2):
            mu = R()
            A = _blocks(_rot(mu, R()), _rot(rng.choice([0, mu]), R()))
        else:
            A = _blocks(_rot(0, R()), _rot(0, rng.choice([0, R()])))
        a = 0 if row in (1, 3, 4) else R()
        if row in (3, 5):
            v = [0, 0, 0, 0]
        elif row in (4, 6):
            v = [R() if rng.random() < 0.7 else 0 for _ in range(4)]
            if all(x == 0 for x in v):
                continue
        else:
            v = [R() if rng.random() < 0.5 else 0 for _ in range(4)]
        data = AlmostAbelianData.from_parameters(a, v, A)
        if table1_row(data) != row:
            continue
        out.append(data)
    return out


def table1_compare(row_spec: dict, data: AlmostAbelianData, tol=DEFAULT_TOL):
    """``(printed, solved, constructed)`` alpha spaces for one sample."""
    from .hermitian import HermitianStructure

    g = data.algebra
    h = HermitianStructure(canonical_j(g.dim), identity(g.dim), tol)
    solved = solve_alpha(g, h, tol=tol)
    wdata = extract_data(g, h.J, h.metric, tol=tol)
    return printed_alpha_family(row_spec, wdata, tol), solved, construct_alpha(wdata, tol)


# ---------------------------------------------------------------------------
# random instances for the main theorem
# ---------------------------------------------------------------------------

def random_complex_basis(rng, k=2):
    """A random invertible complex ``k x k`` matrix with rational entries,
    realified (commutes with the canonical J_1)."""
    while True:
        P = [[(random_rational(rng, -3, 3, 2, False), random_rational(rng, -3, 3, 2, False))
              for _ in range(k)] for _ in range(k)]
        Pr = complex_to_real(P)
        if np.linalg.matrix_rank(Pr.astype(float)) == 2 * k:
            return Pr


def random_admissible(rng, shapes=TWISTED_SHAPES):
    """``(a, v, A, shape, params)`` with ``A`` a random twisted SKT shape
    conjugated by a random complex-linear change of basis."""
    shape = rng.choice(shapes)
    params = {p: random_rational(rng, -4, 4, 3, False) for p in shape.params}
    if shape.name == "twisted-4" and rng.random() < 0.5:
        params["q"] = Fraction(0)
    A0 = shape.instantiate(**params)
    P = random_complex_basis(rng)
    A = P @ A0 @ inverse(P)
    a = rng.choice([Fraction(0), random_rational(rng, -4, 4, 3)])
    v = [random_rational(rng, -3, 3, 2, False) if rng.random() < 0.5 else Fraction(0) for _ in range(4)]
    return a, v, A, shape, params


def random_inadmissible(rng):
    """``(a, v, A, reason)``: a complex Jordan block, or two eigenvalues
    with distinct nonzero real parts."""
    P = random_complex_basis(rng)
    if rng.random() < 0.5:
        lam = (random_rational(rng, -4, 4, 3, False), random_rational(rng, -4, 4, 3, False))
        A0 = complex_to_real([[lam, (1, 0)], [(0, 0), lam]])
        reason = "jordan"
    else:
        x1 = random_rational(rng, -4, 4, 3)
        x2 = x1
        while x2 == x1:
            x2 = random_rational(rng, -4, 4, 3)
        A0 = complex_to_real([[(x1, random_rational(rng, -3, 3, 2, False)), (0, 0)],
                              [(0, 0), (x2, random_rational(rng, -3, 3, 2, False))]])
        reason = "two-real-parts"
    A = P @ A0 @ inverse(P)
    a = rng.choice([Fraction(0), random_rational(rng, -4, 4, 3)])
    v = [random_rational(rng, -3, 3, 2, False) for _ in range(4)]
    return a, v, A, reason


def random_compatible_metric(J, rng, spread=3):
    """``M^T M + J^T M^T M J + I`` for a random ``M`` with half-integer
    entries: SPD and J-compatible.  Products run in integers."""
    n = J.shape[0]
    M2 = np.array([[rng.randint(-2 * spread, 2 * spread) for _ in range(n)] for _ in range(n)], dtype=np.int64)
    S4 = M2.T @ M2
    Ji = np.array([[int(x) for x in row] for row in J], dtype=np.int64)
    if not all_zero(mat(Ji) - J):
        S = mat(S4.tolist()) / 4
        return S + J.T @ S @ J + identity(n)
    G4 = S4 + Ji.T @ S4 @ Ji + 4 * np.eye(n, dtype=np.int64)
    return mat(G4.tolist()) / 4


# ---------------------------------------------------------------------------
# dimension four
# ---------------------------------------------------------------------------

def dim4_decomposition(A, J1=None, tol=DEFAULT_TOL):
    """``(x, y)`` with ``A = x Id + y J_1`` for a 2x2 ``A`` commuting with
    ``J_1``."""
    A = np.asarray(A)
    J1 = canonical_j1(2) if J1 is None else np.asarray(J1)
    if A.shape != (2, 2) or not all_zero(commutator(A, J1), tol):
        raise DomainError("need a 2x2 A commuting with J_1")
    x = (A[0, 0] + A[1, 1]) / 2
    # J_1 A = x J_1 - y Id, so y = -(J_1 A)[0, 0]
    y = -(J1 @ A)[0, 0]
    if not all_zero(A - x * identity(2) - y * J1, tol):
        raise ConsistencyError("A is not of the form x Id + y J_1")
    return x, y


def dim4_theorem(g: LieAlgebra, J, tol=DEFAULT_TOL) -> bool:
    """Every four-dimensional almost abelian algebra with a complex
    structure carries a twisted SKT metric."""
    if g.dim != 4:
        raise DomainError("dim4_theorem needs a four-dimensional algebra")
    flag, report = exists_twisted_skt(g, J, tol)
    if not flag:
        raise ConsistencyError(f"dimension four without a twisted SKT metric: {report}")
    return flag


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------

def _rot_block(r, s):
    return [[r, -s], [s, r]]


def example_unimodular_lcskt_lcb(r, s=1, s2=1):
    """Eight-dimensional ``g(a, v, A)`` with ``a = 1``, ``v = e_6`` and
    ``A = R(r, s) + R(r, -s2) + 0``; canonical J and identity metric.
    Unimodular exactly when ``r = -1/4``."""
    r, s, s2 = map(to_scalar, (r, s, s2))
    A = zeros(6, 6)
    for i, row in enumerate(_rot_block(r, s)):
        for j, x in enumerate(row):
            A[i, j] = x
    for i, row in enumerate(_rot_block(r, -s2)):
        for j, x in enumerate(row):
            A[2 + i, 2 + j] = x
    v = [0, 0, 0, 0, 1, 0]
    return build_from_data(1, v, A, name=f"g8(r={r})"), canonical_j(8)


def example_brf_rotation(r, s=1):
    """Six-dimensional ``g(a, v, A)`` with ``a = 1``, ``v = e_4`` and
    ``A = R(r, s) + 0``.  A twisted SKT Bismut-Ricci flat metric exists
    exactly when ``r >= 1``."""
    r, s = to_scalar(r), to_scalar(s)
    A = zeros(4, 4)
    for i, row in enumerate(_rot_block(r, s)):
        for j, x in enumerate(row):
            A[i, j] = x
    return build_from_data(1, [0, 0, 1, 0], A, name=f"g6(r={r})"), canonical_j(6)


def example_two_complex_structures():
    """``g(1, e_4, diag(2, 2, 0, 0))`` with the canonical J and with
    ``J'``: ``J'(e_1 + e_4) = e_6``, ``J' e_2 = e_3``, ``J' e_4 = e_5``.

    Returns ``(g, J, J', g')`` where ``g'`` makes
    ``(e_1 + e_4, e_2, ..., e_6)`` orthonormal."""
    A = mat([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    g = build_from_data(1, [0, 0, 1, 0], A, name="g(1, e4, diag(2,2,0,0))")
    P = identity(6)
    P[3, 0] = Fraction(1)
    Pi = inverse(P)
    Jp = P @ canonical_j(6) @ Pi
    return g, canonical_j(6), Jp, Pi.T @ Pi


def jprime_brf_witness(tol=DEFAULT_TOL):
    """An explicit J'-Hermitian twisted SKT metric with vanishing Bismut
    Ricci form on the algebra of ``example_two_complex_structures``.

    In a J'-adapted basis the data are ``a = 1``, ``v = 0`` and ``A`` with
    real spectrum ``{0, 2}``, so ``a^2 - a Tr(A)/2 = -1``.  For a unit
    ``w`` in ``ker A`` the family element ``u = e_1 + w`` gives
    ``v^u = (A - a) w = -w``, which lies in ``ker A^T`` and has norm 1."""
    from .spectral import MetricFamilyElement, family_metric

    g, _, Jp, Gp = example_two_complex_structures()
    data = extract_data(g, Jp, Gp, tol=tol)
    ker = nullspace(data.A, tol)
    if not ker:
        raise ConsistencyError("expected a kernel for A under J'")
    w = ker[0]
    elt = MetricFamilyElement(h=identity(4), c=Fraction(1), w=w)
    G, _ = family_metric(data, elt)
    return g, Jp, G
