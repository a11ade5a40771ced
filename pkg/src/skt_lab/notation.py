"""Structure-equation notation, the JSON interchange schema and report
emitters.

Notation: ``(df^1, ..., df^n)`` with each component ``0`` or a signed sum of
terms ``coef * fij``.  Coefficients are rationals, parameters (one letter,
optional digits and primes) or products and quotients of these.  Basis
2-forms are written ``f16``, ``f^{16}``, ``f_{16}`` or ``f[1,6]``; the last
form is required in dimension 10 and above.  A term ``c * f^{jk}`` in
component ``i`` means ``[e_j, e_k]`` has ``e_i``-coefficient ``-c``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forms import InvariantForm
from .linalg import DEFAULT_TOL, is_exact_scalar, is_zero, mat, to_scalar, zeros
from .liealg import LieAlgebra, jacobi_check
from .verdicts import AlphaSpace, StructureVerdict

SCHEMA = "skt-lab/1"


class NotationError(ValueError):
    """Malformed notation; ``pos`` is the 0-based offset into ``text``."""

    def __init__(self, message, text="", pos=None):
        self.message = message
        self.text = text
        self.pos = pos
        if pos is None:
            super().__init__(message)
        else:
            caret = " " * pos + "^"
            super().__init__(f"{message} at position {pos}\n  {text}\n  {caret}")


class UnboundParameterError(NotationError):
    pass


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

@dataclass
class _Tok:
    kind: str
    value: object
    pos: int
    shorthand: bool = False


_NUM = re.compile(r"\d+(\.\d+)?")
_IDENT = re.compile(r"[A-Za-eg-z]\d*'*")
_BRACED = re.compile(r"[\^_]\{([\d,\s]+)\}")
_CARET = re.compile(r"\^(\d+)")
_BRACKET = re.compile(r"\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]")
_DIGITS = re.compile(r"(\d+)")


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()+-*/,":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        if ch in "−–":
            toks.append(_Tok("-", "-", i))
            i += 1
            continue
        if ch == "f":
            rest = text[i + 1:]
            for pat, shorthand in ((_BRACKET, False), (_BRACED, None), (_CARET, True), (_DIGITS, True)):
                m = pat.match(rest)
                if m:
                    body = m.group(1)
                    if "," in body:
                        idx = tuple(int(x) for x in body.replace(" ", "").split(","))
                        short = False
                    else:
                        body = body.strip()
                        idx = tuple(int(x) for x in body)
                        short = True if shorthand is None else shorthand
                    toks.append(_Tok("basis", idx, i, short))
                    i += 1 + m.end()
                    break
            else:
                raise NotationError("expected basis form such as f16 or f[1,6]", text, i)
            continue
        m = _NUM.match(text, i)
        if m:
            s = m.group(0)
            toks.append(_Tok("num", Fraction(s), i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            toks.append(_Tok("ident", m.group(0), i))
            i = m.end()
            continue
        raise NotationError(f"unexpected character {ch!r}", text, i)
    toks.append(_Tok("end", None, n))
    return toks


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text, bindings):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.bindings = {k: to_scalar(v) for k, v in (bindings or {}).items()}

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.tok
        if kind is not None and t.kind != kind:
            raise NotationError(f"expected {kind!r}, found {t.kind!r}", self.text, t.pos)
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return NotationError(msg, self.text, tok.pos)

    # coefficient expressions
    def factor(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return t.value
        if t.kind == "ident":
            self.take()
            if t.value not in self.bindings:
                raise UnboundParameterError(f"unbound parameter {t.value!r}", self.text, t.pos)
            return self.bindings[t.value]
        if t.kind == "(":
            self.take()
            val = self.sum_expr()
            self.take(")")
            return val
        if t.kind == "-":
            self.take()
            return -self.factor()
        raise self.error(f"expected a number, parameter or '(', found {t.kind!r}")

    def sum_expr(self):
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        val = sign * self.product()
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
            val = val + sign * self.product()
        return val

    def product(self):
        val = self.factor()
        while True:
            k = self.tok.kind
            if k == "*":
                self.take()
                val = val * self.factor()
            elif k == "/":
                self.take()
                t = self.tok
                d = self.factor()
                if is_zero(d):
                    raise self.error("division by zero", t)
                val = val / d
            elif k in ("num", "ident", "("):
                val = val * self.factor()
            else:
                return val

    def term(self):
        """``[coef ['*']] basis``; returns ``(coef, basis_token)``."""
        coef = Fraction(1)
        if self.tok.kind != "basis":
            coef = self.factor()
            while True:
                k = self.tok.kind
                if k == "*":
                    self.take()
                    if self.tok.kind == "basis":
                        break
                    coef = coef * self.factor()
                elif k == "/":
                    self.take()
                    t = self.tok
                    d = self.factor()
                    if is_zero(d):
                        raise self.error("division by zero", t)
                    coef = coef / d
                elif k in ("num", "ident", "("):
                    coef = coef * self.factor()
                else:
                    break
        if self.tok.kind != "basis":
            raise self.error("expected a basis form such as f16")
        return coef, self.take()

    def terms(self, stop):
        """Signed sum of terms up to a token in ``stop``; ``'0'`` alone is
        the empty sum."""
        t = self.tok
        if t.kind == "num" and t.value == 0 and self.toks[self.i + 1].kind in stop + ("end",):
            self.take()
            return []
        out = []
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        c, b = self.term()
        out.append((sign * c, b))
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
            c, b = self.term()
            out.append((sign * c, b))
        if self.tok.kind not in stop:
            raise self.error(f"unexpected {self.tok.kind!r}")
        return out


def _perm_sign(idx):
    idx = list(idx)
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign


def _check_index(p, tok, dim, degree):
    idx = tok.value
    if len(idx) != degree:
        raise p.error(f"expected a {degree}-form, found f{''.join(map(str, idx))}", tok)
    if len(set(idx)) != len(idx):
        raise p.error("repeated index in basis form", tok)
    for x in idx:
        if not 1 <= x <= dim:
            raise p.error(f"index {x} outside 1..{dim}", tok)
    if dim >= 10 and tok.shorthand:
        raise p.error("use the bracketed form f[i,j] in dimension 10 or more", tok)


def parse_notation(text: str, bindings=None, name=None) -> LieAlgebra:
    """Algebra from structure equations; Jacobi failures are recorded in
    ``g.warnings`` instead of raising."""
    p = _Parser(text, bindings)
    p.take("(")
    comps = [p.terms((",", ")"))]
    while p.tok.kind == ",":
        p.take()
        comps.append(p.terms((",", ")")))
    p.take(")")
    if p.tok.kind != "end":
        raise p.error("trailing input after ')'")
    n = len(comps)
    c = zeros(n, n, n)
    for k, terms in enumerate(comps):
        for coef, tok in terms:
            _check_index(p, tok, n, 2)
            i, j = tok.value
            s = _perm_sign((i, j))
            i, j = sorted((i - 1, j - 1))
            c[i, j, k] -= s * coef
            c[j, i, k] += s * coef
    g = LieAlgebra(c, name=name)
    if not jacobi_check(g):
        g.warnings.append("Jacobi identity fails: this is not a Lie algebra")
    return g


def parse_form(text: str, dim: int, degree=None, bindings=None) -> InvariantForm:
    """A form such as ``f16 + f23 - 2*f45``; ``degree`` is needed only for
    ``0``."""
    p = _Parser(text, bindings)
    terms = p.terms(("end",))
    if not terms:
        return InvariantForm(dim, degree or 0, {})
    deg = len(terms[0][1].value) if degree is None else degree
    coeffs = {}
    for coef, tok in terms:
        _check_index(p, tok, dim, deg)
        s = _perm_sign(tok.value)
        key = tuple(sorted(x - 1 for x in tok.value))
        coeffs[key] = coeffs.get(key, 0) + s * coef
    return InvariantForm(dim, deg, coeffs)


def parameters_in(text: str):
    """Parameter names used in ``text``, in order of first appearance."""
    out = []
    for t in _tokenize(text):
        if t.kind == "ident" and t.value not in out:
            out.append(t.value)
    return out


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_SUP = str.maketrans("0123456789,", "⁰¹²³⁴⁵⁶⁷⁸⁹˒")


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _basis_name(idx, dim, style):
    if style == "unicode":
        body = "".join(str(i) for i in idx) if dim <= 9 else ",".join(str(i) for i in idx)
        return "f" + body.translate(_SUP)
    if dim <= 9:
        return "f" + "".join(str(i) for i in idx)
    return "f[" + ",".join(str(i) for i in idx) + "]"


def format_terms(terms, dim, style="ascii"):
    """``terms`` is a list of ``(coef, 1-based index tuple)``."""
    parts = []
    for coef, idx in terms:
        name = _basis_name(idx, dim, style)
        neg = coef < 0
        mag = -coef if neg else coef
        body = name if mag == 1 else f"{format_scalar(mag)}*{name}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def format_notation(g: LieAlgebra, style="ascii", tol=DEFAULT_TOL) -> str:
    """Normalized notation; ``parse_notation(format_notation(g))`` rebuilds
    the same constants."""
    n = g.dim
    comps = []
    for k in range(n):
        terms = []
        for i in range(n):
            for j in range(i + 1, n):
                x = g.c[i, j, k]
                if not is_zero(x, tol):
                    terms.append((-x, (i + 1, j + 1)))
        comps.append(format_terms(terms, n, style))
    sep = "," if style == "unicode" else ", "
    return "(" + sep.join(comps) + ")"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def scalar_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return float(x)


def scalar_from_json(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


def matrix_to_json(m):
    m = np.asarray(m)
    if m.ndim == 1:
        return [scalar_to_json(x) for x in m]
    return [matrix_to_json(r) for r in m]


def matrix_from_json(rows):
    if rows and not isinstance(rows[0], list):
        vals = [scalar_from_json(x) for x in rows]
        return np.array(vals, dtype=object if all(isinstance(v, Fraction) for v in vals) else float)
    return mat([[scalar_from_json(x) for x in r] for r in rows])


def form_to_json(f: InvariantForm):
    if f is None:
        return None
    return {
        "dim": f.dim,
        "degree": f.degree,
        "terms": [[[i + 1 for i in idx], scalar_to_json(c)] for idx, c in sorted(f.coeffs.items())],
        "text": str(f),
    }


def form_from_json(d) -> InvariantForm:
    if d is None:
        return None
    return InvariantForm(d["dim"], d["degree"],
                         {tuple(i - 1 for i in idx): scalar_from_json(c) for idx, c in d["terms"]})


def algebra_to_json(g: LieAlgebra):
    n = g.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                x = g.c[i, j, k]
                if not is_zero(x):
                    brackets.append([i + 1, j + 1, k + 1, scalar_to_json(x)])
    return {"schema": SCHEMA, "kind": "algebra", "name": g.name, "dim": n,
            "notation": format_notation(g), "brackets": brackets}


def algebra_from_json(d, bindings=None) -> LieAlgebra:
    """Accepts ``brackets`` (``[i, j, k, coef]``: ``[e_i, e_j]`` has
    ``e_k``-coefficient ``coef``) or ``notation`` plus optional ``params``."""
    _check_schema(d, "algebra")
    if "brackets" in d:
        n = d["dim"]
        c = zeros(n, n, n)
        for i, j, k, x in d["brackets"]:
            x = scalar_from_json(x)
            c[i - 1, j - 1, k - 1] += x
            c[j - 1, i - 1, k - 1] -= x
        g = LieAlgebra(c, name=d.get("name"))
        if not jacobi_check(g):
            g.warnings.append("Jacobi identity fails: this is not a Lie algebra")
        return g
    params = dict(d.get("params") or {})
    params.update(bindings or {})
    return parse_notation(d["notation"], params, name=d.get("name"))


def _check_schema(d, kind):
    if d.get("schema", SCHEMA) != SCHEMA:
        raise NotationError(f"unsupported schema {d.get('schema')!r}")
    if d.get("kind", kind) != kind:
        raise NotationError(f"expected kind {kind!r}, found {d.get('kind')!r}")


def alpha_space_to_json(space: AlphaSpace):
    return {
        "schema": SCHEMA,
        "kind": "alpha_space",
        "dim": space.dim,
        "empty": space.is_empty(),
        "particular": None if space.is_empty() else form_to_json(space.particular_form()),
        "basis": [form_to_json(h) for h in space.homogeneous_forms()],
        "text": str(space),
    }


def alpha_space_from_json(d) -> AlphaSpace:
    _check_schema(d, "alpha_space")
    if d["empty"]:
        return AlphaSpace.empty(d["dim"])
    part = form_from_json(d["particular"])
    hom = [form_from_json(h) for h in d["basis"]]
    return AlphaSpace(d["dim"], part.to_vector(), [h.to_vector() for h in hom])


def data_to_json(data):
    a, v, A = data.normalized()
    return {"a": scalar_to_json(a), "v": matrix_to_json(v), "A": matrix_to_json(A),
            "basis": matrix_to_json(data.basis)}


def verdict_to_json(v: StructureVerdict, name=None, notation=None):
    out = {"schema": SCHEMA, "kind": "verdict", "name": name, "notation": notation,
           "flags": v.flags(), "alpha_space": alpha_space_to_json(v.alpha_space)}
    if v.data is not None:
        out["data"] = data_to_json(v.data)
    if v.spectrum is not None:
        out["spectrum"] = v.spectrum.as_dict()
    for key in ("torsion", "lee", "ricci"):
        out[key] = form_to_json(getattr(v, key))
    return out


def verdict_from_json(d) -> StructureVerdict:
    """Flags, alpha space and forms; the adapted data are not restored."""
    _check_schema(d, "verdict")
    return StructureVerdict(
        alpha_space=alpha_space_from_json(d["alpha_space"]),
        torsion=form_from_json(d.get("torsion")),
        lee=form_from_json(d.get("lee")),
        ricci=form_from_json(d.get("ricci")),
        **d["flags"],
    )


def existence_to_json(r, name=None, notation=None):
    out = {"schema": SCHEMA, "kind": "existence", "name": name, "notation": notation,
           "flags": r.flags()}
    if r.spectrum is not None:
        out["spectrum"] = r.spectrum.as_dict()
    if r.data is not None:
        out["data"] = data_to_json(r.data)
    if r.witness_metric is not None:
        out["witness_metric"] = matrix_to_json(r.witness_metric)
    if r.alpha_space is not None:
        out["alpha_space"] = alpha_space_to_json(r.alpha_space)
    return out


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def mark(flag) -> str:
    return "✓" if flag else "—"


def _md_table(header, rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines)


def emit_report(obj, fmt="json", name=None, notation=None) -> str:
    """Serialize a ``StructureVerdict`` or an ``ExistenceReport``.

    Markdown mirrors the table layouts: Kahler / SKT / LCSKT for a fixed
    metric, unimodular / LCB / Bismut-Ricci flat for existence.
    """
    from .spectral import ExistenceReport

    is_verdict = isinstance(obj, StructureVerdict)
    if not is_verdict and not isinstance(obj, ExistenceReport):
        raise TypeError(f"cannot report on {type(obj).__name__}")
    if fmt == "json":
        payload = verdict_to_json(obj, name, notation) if is_verdict else existence_to_json(obj, name, notation)
        return dumps(payload)
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    label = name or ""
    eqs = notation or ""
    if is_verdict:
        main = _md_table(["Name", "Structure equations", "Kähler", "SKT", "LCSKT"],
                         [[label, eqs, mark(obj.kaehler), mark(obj.skt), mark(obj.lcskt)]])
        extra = _md_table(["twisted SKT", "balanced", "LCB", "Bismut-Ricci flat"],
                          [[mark(obj.twisted_skt), mark(obj.balanced), mark(obj.lcb), mark(obj.bismut_ricci_flat)]])
        tail = f"alpha: {obj.alpha_space}"
    else:
        main = _md_table(["Name", "Structure equations", "Unimodular", "LCB", "Bismut-Ricci flat"],
                         [[label, eqs, mark(obj.unimodular), mark(obj.lcb), mark(obj.bismut_ricci_flat)]])
        extra = _md_table(["twisted SKT", "LCSKT", "Kähler", "bi-invariant J"],
                          [[mark(obj.twisted_skt), mark(obj.lcskt), mark(obj.kaehler), mark(obj.bi_invariant)]])
        tail = "" if obj.alpha_space is None else f"alpha (witness metric): {obj.alpha_space}"
    return "\n\n".join(x for x in (main, extra, tail) if x) + "\n"


def unicode_notation(g: LieAlgebra) -> str:
    return format_notation(g, style="unicode")
