"""Left-invariant exterior forms on a Lie algebra.

A k-form is stored sparsely as ``{(i1, ..., ik): coefficient}`` with strictly
increasing 0-based indices.  Forms are evaluated with the determinant
convention, ``e^{ij}(e_i, e_j) = 1``, and printed 1-based in the ``f^{ij}``
style of structure equations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .linalg import (
    DEFAULT_TOL, det, inverse, is_exact, is_exact_scalar, is_zero, mat,
    require_spd, sqrt_scalar, to_scalar,
)


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


class InvariantForm:
    """A k-form on an n-dimensional Lie algebra with constant coefficients."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim, degree, coeffs=None, tol=None):
        self.dim = int(dim)
        self.degree = int(degree)
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.degree:
                raise ValueError(f"index {idx} does not have degree {self.degree}")
            if any(not 0 <= i < self.dim for i in idx):
                raise ValueError(f"index {idx} out of range for dim {self.dim}")
            sign = _perm_sign(idx)
            if sign == 0:
                continue
            key = tuple(sorted(idx))
            clean[key] = clean.get(key, 0) + sign * c
        zero_tol = DEFAULT_TOL if tol is None else tol
        self.coeffs = {k: v for k, v in clean.items() if not is_zero(v, zero_tol)}

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, dim, degree):
        return cls(dim, degree)

    @classmethod
    def basis(cls, dim, *indices, coeff=Fraction(1)):
        """The monomial ``e^{i1} ^ ... ^ e^{ik}`` (0-based indices)."""
        return cls(dim, len(indices), {tuple(indices): coeff})

    @classmethod
    def from_vector(cls, vec):
        """1-form with the given coefficients."""
        vec = list(vec)
        return cls(len(vec), 1, {(i,): to_scalar(c) for i, c in enumerate(vec)})

    @classmethod
    def from_matrix(cls, m):
        """2-form ``sum_{i<j} m[i, j] e^{ij}`` from an antisymmetric matrix."""
        n = m.shape[0]
        return cls(n, 2, {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n)})

    def to_vector(self):
        if self.degree != 1:
            raise ValueError("only 1-forms convert to vectors")
        out = np.full(self.dim, Fraction(0), dtype=object)
        for (i,), c in self.coeffs.items():
            out[i] = c
        return out

    def to_matrix(self):
        """Antisymmetric matrix of a 2-form, ``m[i, j] = a(e_i, e_j)``."""
        if self.degree != 2:
            raise ValueError("only 2-forms convert to matrices")
        out = np.full((self.dim, self.dim), Fraction(0), dtype=object)
        for (i, j), c in self.coeffs.items():
            out[i, j] = c
            out[j, i] = -c
        return out

    # arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        if other.dim != self.dim or other.degree != self.degree:
            raise ValueError("forms of different shape")

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return InvariantForm(self.dim, self.degree, out)

    def __neg__(self):
        return InvariantForm(self.dim, self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, InvariantForm):
            return NotImplemented
        s = to_scalar(s)
        return InvariantForm(self.dim, self.degree, {k: v * s for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return (self.dim, self.degree) == (other.dim, other.degree) and (self - other).is_zero()

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(sorted(self.coeffs.items()))))

    def is_zero(self, tol=DEFAULT_TOL):
        return all(is_zero(v, tol) for v in self.coeffs.values())

    def isclose(self, other, tol=DEFAULT_TOL):
        return (self - other).is_zero(tol)

    @property
    def exact(self):
        return all(is_exact_scalar(v) for v in self.coeffs.values())

    def __call__(self, *vectors):
        return evaluate(self, *vectors)

    def __repr__(self):
        return f"InvariantForm({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        wide = self.dim > 9
        out = ""
        for idx in sorted(self.coeffs):
            c = self.coeffs[idx]
            name = "f" + (f"[{','.join(str(i + 1) for i in idx)}]" if wide else "".join(str(i + 1) for i in idx))
            if not idx:
                name = "1"
            neg = (c < 0) if not isinstance(c, complex) else False
            mag = -c if neg else c
            term = name if mag == 1 else f"{mag}*{name}"
            if not out:
                out = ("-" if neg else "") + term
            else:
                out += (" - " if neg else " + ") + term
        return out


def scalar_form(dim, c):
    return InvariantForm(dim, 0, {(): to_scalar(c)})


def wedge(a: InvariantForm, b: InvariantForm) -> InvariantForm:
    if a.dim != b.dim:
        raise ValueError("forms live on different spaces")
    deg = a.degree + b.degree
    out = {}
    if deg > a.dim:
        return InvariantForm(a.dim, deg)
    for I, x in a.coeffs.items():
        for J, y in b.coeffs.items():
            seq = I + J
            s = _perm_sign(seq)
            if s:
                key = tuple(sorted(seq))
                out[key] = out.get(key, 0) + s * x * y
    return InvariantForm(a.dim, deg, out)


def wedge_all(*forms):
    acc = forms[0]
    for f in forms[1:]:
        acc = wedge(acc, f)
    return acc


def evaluate(a: InvariantForm, *vectors):
    """``a(v1, ..., vk)`` with the determinant convention."""
    if len(vectors) != a.degree:
        raise ValueError(f"a {a.degree}-form needs {a.degree} arguments")
    if a.degree == 0:
        return a.coeffs.get((), Fraction(0))
    V = np.column_stack([np.asarray(v, dtype=object) for v in vectors])
    total = 0
    for I, c in a.coeffs.items():
        total = total + c * det(V[list(I), :])
    return total


def _basis_differentials(g):
    """``d e^k = - sum_{i<j} c^k_ij e^{ij}`` for every k, cached on ``g``."""
    cached = getattr(g, "_d_basis", None)
    if cached is not None:
        return cached
    c = g.structure_constants
    n = g.dim
    out = []
    for k in range(n):
        terms = {}
        for i in range(n):
            for j in range(i + 1, n):
                if c[i, j, k] != 0:
                    terms[(i, j)] = -c[i, j, k]
        out.append(terms)
    try:
        object.__setattr__(g, "_d_basis", out)
    except AttributeError:
        pass
    return out


def ce_d(g, a: InvariantForm) -> InvariantForm:
    """Chevalley-Eilenberg differential of a left-invariant form.

    On 1-forms ``d alpha(X, Y) = -alpha([X, Y])``; extended to higher degree
    as a graded derivation.
    """
    if a.dim != g.dim:
        raise ValueError("form and Lie algebra dimensions differ")
    dbasis = _basis_differentials(g)
    out = {}
    for I, x in a.coeffs.items():
        for r, i in enumerate(I):
            rs = -1 if r % 2 else 1
            for (j, l), y in dbasis[i].items():
                seq = I[:r] + (j, l) + I[r + 1:]
                s = _perm_sign(seq)
                if s:
                    key = tuple(sorted(seq))
                    out[key] = out.get(key, 0) + rs * s * x * y
    return InvariantForm(a.dim, a.degree + 1, out)


def _monomial_map(phi):
    """For a matrix with one nonzero per row and column, return
    ``[(row, value) for each column]``; otherwise None."""
    n = phi.shape[0]
    cols = []
    for k in range(n):
        nz = [j for j in range(n) if phi[j, k] != 0]
        if len(nz) != 1:
            return None
        cols.append((nz[0], phi[nz[0], k]))
    if len({r for r, _ in cols}) != n:
        return None
    return cols


def pullback(phi, a: InvariantForm) -> InvariantForm:
    """``(phi^* a)(X1, ..., Xk) = a(phi X1, ..., phi Xk)``."""
    phi = np.asarray(phi)
    n = a.dim
    if phi.shape != (n, n):
        raise ValueError("pullback needs an n x n matrix")
    k = a.degree
    if k == 0:
        return a
    mono = _monomial_map(phi)
    out = {}
    if mono is not None:
        inv = {r: (col, val) for col, (r, val) in enumerate(mono)}
        for J, c in a.coeffs.items():
            cols, coef = [], c
            for j in J:
                col, val = inv[j]
                cols.append(col)
                coef = coef * val
            s = _perm_sign(cols)
            key = tuple(sorted(cols))
            out[key] = out.get(key, 0) + s * coef
        return InvariantForm(n, k, out)
    for K in combinations(range(n), k):
        sub = phi[:, list(K)]
        total = 0
        for J, c in a.coeffs.items():
            total = total + c * det(sub[list(J), :])
        out[K] = total
    return InvariantForm(n, k, out)


def flat(g, x) -> InvariantForm:
    """``x^flat = g(x, .)``."""
    require_spd(g)
    return InvariantForm.from_vector(np.asarray(g) @ np.asarray(x))


def sharp(g, alpha: InvariantForm):
    """Vector dual to a 1-form."""
    return inverse(g) @ alpha.to_vector()


def _is_identity(g):
    n = g.shape[0]
    return all((g[i, j] == (1 if i == j else 0)) for i in range(n) for j in range(n))


def _star_rational(ginv, a: InvariantForm, identity_metric: bool) -> InvariantForm:
    """Hodge star without the sqrt(det g) factor."""
    n, k = a.dim, a.degree
    full = tuple(range(n))
    out = {}
    if identity_metric:
        for I, c in a.coeffs.items():
            comp = tuple(i for i in full if i not in I)
            out[comp] = out.get(comp, 0) + _perm_sign(I + comp) * c
        return InvariantForm(n, n - k, out)
    for L in combinations(full, k):
        comp = tuple(i for i in full if i not in L)
        total = 0
        for I, c in a.coeffs.items():
            total = total + c * (det(ginv[np.ix_(list(L), list(I))]) if k else 1)
        out[comp] = _perm_sign(L + comp) * total
    return InvariantForm(n, n - k, out)


def hodge_star(g, a: InvariantForm) -> InvariantForm:
    """Hodge star for the metric ``g`` and orientation ``e^1 ^ ... ^ e^n``.

    Exact whenever ``det g`` is the square of a rational.
    """
    g = mat(g) if not isinstance(g, np.ndarray) else g
    require_spd(g)
    ident = _is_identity(g)
    core = _star_rational(None if ident else inverse(g), a, ident)
    if ident:
        return core
    return core * sqrt_scalar(det(g))


def codifferential(g, metric, a: InvariantForm) -> InvariantForm:
    """``d* = (-1)^(n(k-1)+1) * d *`` on k-forms, i.e. ``-*d*`` in even
    dimension.  The two square roots of ``det g`` multiply out, so the
    result is exact for any rational metric."""
    metric = mat(metric) if not isinstance(metric, np.ndarray) else metric
    require_spd(metric)
    n, k = a.dim, a.degree
    if k == 0:
        return InvariantForm.zero(n, 0)
    ident = _is_identity(metric)
    ginv = None if ident else inverse(metric)
    inner = _star_rational(ginv, a, ident)
    outer = _star_rational(ginv, ce_d(g, inner), ident)
    sign = -1 if (n * (k - 1) + 1) % 2 else 1
    scale = 1 if ident else det(metric)
    return outer * (sign * scale)


def one_form_action(J, beta: InvariantForm) -> InvariantForm:
    """Action of an almost complex structure on a 1-form,
    ``(J beta)(X) = -beta(J X)``, so that ``J e^1 = e^{2n}`` when
    ``J e_1 = e_{2n}``."""
    return InvariantForm.from_vector(-(np.asarray(J).T @ beta.to_vector()))


def one_forms_matrix(forms):
    """Coefficient matrix with one column per 1-form."""
    return np.column_stack([f.to_vector() for f in forms])


def is_exact_form(a: InvariantForm) -> bool:
    return a.exact and is_exact(np.array(list(a.coeffs.values()) or [0], dtype=object))
