"""Lie algebras given by structure constants, and almost abelian data.

``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]`` (0-based).
An almost abelian algebra of dimension 2n is described in an adapted basis
``(e_1, n_1, e_2n)``, where ``n = span(e_1, n_1)`` is an abelian ideal,
``e_2n`` is orthogonal to it and ``e_1 = -J e_2n``.  The action of
``ad(e_2n)`` on ``n`` has block form ``B = [[a, w], [v, A]]``, and ``w``
vanishes when J is integrable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .linalg import (
    DEFAULT_TOL, DimensionError, DomainError, adjoint, all_zero, commutator,
    identity, in_column_span, inverse, is_exact, is_exact_scalar, is_zero, mat, nullspace,
    rational_sqrt, require_spd, to_scalar, trace, zeros,
)


class IntegrabilityError(DomainError):
    """J is not compatible with the almost abelian splitting.

    ``w`` is the off-diagonal block of ``ad(e_2n)`` and ``commutator`` is
    ``[A, J_1]``; at least one of them is nonzero.
    """

    def __init__(self, message, w=None, commutator=None):
        super().__init__(message)
        self.w = w
        self.commutator = commutator


class LieAlgebra:
    def __init__(self, c, check=True, name=None):
        c = np.asarray(c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise DimensionError(f"structure constants must be n x n x n, got {c.shape}")
        self.dim = c.shape[0]
        self.c = c
        self.name = name
        self.warnings = []
        if check:
            for i in range(self.dim):
                for j in range(i, self.dim):
                    for k in range(self.dim):
                        if not is_zero(c[i, j, k] + c[j, i, k]):
                            raise DomainError(f"structure constants not antisymmetric at ({i + 1},{j + 1},{k + 1})")

    @classmethod
    def from_brackets(cls, dim, brackets, name=None):
        """``brackets`` maps 0-based pairs ``(i, j)`` to a coefficient vector."""
        c = zeros(dim, dim, dim)
        for (i, j), vec in brackets.items():
            for k, x in enumerate(vec):
                x = to_scalar(x)
                c[i, j, k] += x
                c[j, i, k] -= x
        return cls(c, name=name)

    @classmethod
    def abelian(cls, dim):
        return cls(zeros(dim, dim, dim), name="abelian")

    @property
    def structure_constants(self):
        return self.c

    @property
    def exact(self):
        if getattr(self, "_exact", None) is None:
            self._exact = is_exact(self.c)
        return self._exact

    def nonzero_brackets(self):
        """``{(i, j): [(k, c_ijk), ...]}`` over nonzero constants, ``i < j``."""
        if getattr(self, "_nz", None) is None:
            n, c = self.dim, self.c
            nz = {}
            for i in range(n):
                for j in range(i + 1, n):
                    terms = [(k, c[i, j, k]) for k in range(n) if c[i, j, k] != 0]
                    if terms:
                        nz[i, j] = terms
            self._nz = nz
        return self._nz

    def bracket(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        exact = x.dtype == object or y.dtype == object or self.exact
        out = zeros(self.dim) if exact else np.zeros(self.dim)
        for (i, j), terms in self.nonzero_brackets().items():
            s = x[i] * y[j] - x[j] * y[i]
            if s != 0:
                for k, ck in terms:
                    out[k] = out[k] + s * ck
        return out

    def ad(self, x):
        """Matrix of ``ad_x``; column j is ``[x, e_j]``."""
        x = np.asarray(x)
        exact = x.dtype == object or self.exact
        out = zeros(self.dim, self.dim) if exact else np.zeros((self.dim, self.dim))
        for (i, j), terms in self.nonzero_brackets().items():
            for p, q, sign in ((i, j, 1), (j, i, -1)):
                if x[p] != 0:
                    for k, ck in terms:
                        out[k, q] = out[k, q] + sign * x[p] * ck
        return out

    def ad_basis(self, i):
        return self.c[i].T

    def derived_span(self):
        """Columns spanning ``[g, g]``."""
        n = self.dim
        vecs = [self.c[i, j] for i in range(n) for j in range(i + 1, n)]
        if not vecs:
            return zeros(n, 0)
        return np.column_stack(vecs)

    def is_abelian(self, tol=DEFAULT_TOL):
        return all_zero(self.c, tol)

    def in_basis(self, P, name=None):
        """The same algebra in the basis given by the columns of ``P``;
        a complex structure ``J`` becomes ``P^-1 J P``."""
        P = np.asarray(P)
        Pi = inverse(P)
        n = self.dim
        c = zeros(n, n, n) if is_exact(P) and self.exact else np.zeros((n, n, n))
        for i in range(n):
            for j in range(i + 1, n):
                x = Pi @ self.bracket(P[:, i], P[:, j])
                c[i, j] = x
                c[j, i] = -x
        return LieAlgebra(c, check=False, name=name or self.name)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{label} dim={self.dim}>"


def jacobi_check(g: LieAlgebra, tol=DEFAULT_TOL) -> bool:
    c = g.c
    n = g.dim
    nz = g.nonzero_brackets()
    # [[e_i, e_j], e_k] has coefficient sum_m c[i,j,m] c[m,k,l]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = None
                for (p, q, r) in ((i, j, k), (j, k, i), (k, i, j)):
                    key, sign = ((p, q), 1) if p < q else ((q, p), -1)
                    for m, cm in nz.get(key, ()):
                        term = sign * cm * c[m, r]
                        total = term if total is None else total + term
                if total is not None and not all_zero(total, tol):
                    return False
    return True


def unimodular_check(g: LieAlgebra, tol=DEFAULT_TOL) -> bool:
    return all(is_zero(trace(g.ad_basis(i)), tol) for i in range(g.dim))


def canonical_j(dim):
    """``J e_1 = e_2n``, ``J e_2 = e_3``, ``J e_4 = e_5`` and so on."""
    if dim % 2 or dim < 2:
        raise DimensionError("an almost complex structure needs even dimension")
    J = zeros(dim, dim)
    last = dim - 1
    J[last, 0] = Fraction(1)
    J[0, last] = Fraction(-1)
    for i in range(1, last, 2):
        J[i + 1, i] = Fraction(1)
        J[i, i + 1] = Fraction(-1)
    return J


def canonical_j1(size):
    """Complex structure on ``n_1`` in its adapted basis."""
    J1 = zeros(size, size)
    for i in range(0, size, 2):
        J1[i + 1, i] = Fraction(1)
        J1[i, i + 1] = Fraction(-1)
    return J1


def build_from_data(a, v, A, w=None, name=None) -> LieAlgebra:
    """Semidirect product ``R e_2n`` acting on the abelian ideal
    ``span(e_1, ..., e_{2n-1})`` by ``B = [[a, w], [v, A]]``."""
    A = mat(A) if not isinstance(A, np.ndarray) else A
    m = A.shape[0] if A.size else 0
    if A.size and A.shape != (m, m):
        raise DimensionError("A must be square")
    v = mat(list(v)) if len(v) else zeros(0)
    if len(v) != m:
        raise DimensionError(f"v has length {len(v)}, expected {m}")
    w = zeros(m) if w is None else mat(list(w))
    n = m + 2
    B = zeros(n - 1, n - 1)
    B[0, 0] = to_scalar(a)
    for i in range(m):
        B[0, i + 1] = w[i]
        B[i + 1, 0] = v[i]
        for j in range(m):
            B[i + 1, j + 1] = A[i, j]
    c = zeros(n, n, n)
    last = n - 1
    for j in range(n - 1):
        for k in range(n - 1):
            c[last, j, k] = B[k, j]
            c[j, last, k] = -B[k, j]
    return LieAlgebra(c, check=False, name=name)


# ---------------------------------------------------------------------------
# codimension-one abelian ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """``ker(functional)``, with a basis of the kernel as columns."""
    functional: np.ndarray
    basis: np.ndarray


def _kernel_basis(eta, tol):
    return np.column_stack(nullspace(eta.reshape(1, -1), tol))


def is_abelian_ideal(g: LieAlgebra, eta, tol=DEFAULT_TOL) -> bool:
    """Whether ``ker(eta)`` is an abelian ideal of codimension one."""
    eta = np.asarray(eta, dtype=object)
    if all_zero(eta, tol):
        return False
    D = g.derived_span()
    if D.shape[1] and not all_zero(eta @ D, tol):
        return False
    K = _kernel_basis(eta, tol)
    for i in range(K.shape[1]):
        for j in range(i + 1, K.shape[1]):
            if not all_zero(g.bracket(K[:, i], K[:, j]), tol):
                return False
    return True


def _abelian_hyperplane_functionals(g: LieAlgebra, tol):
    """Basis of the functionals ``eta`` whose kernel is an abelian ideal.

    ``ker(eta)`` is abelian exactly when every component of the bracket,
    a 2-form, is divisible by ``eta``, that is ``eta ^ beta_k = 0``.  It is
    then an ideal exactly when ``eta`` kills ``[g, g]``.  Both conditions
    are linear in ``eta``."""
    n = g.dim
    c = g.c
    exact = g.exact
    rows = []
    for k in range(n):
        for i, j, l in combinations(range(n), 3):
            row = zeros(n) if exact else np.zeros(n)
            row[i] = row[i] + c[j, l, k]
            row[j] = row[j] - c[i, l, k]
            row[l] = row[l] + c[i, j, k]
            if not all_zero(row, tol):
                rows.append(row)
    D = g.derived_span()
    rows += [D[:, q] for q in range(D.shape[1]) if not all_zero(D[:, q], tol)]
    if not rows:
        return [row for row in identity(n)]
    return nullspace(np.vstack(rows), tol)


def find_codim1_abelian_ideal(g: LieAlgebra, tol=DEFAULT_TOL):
    """A hyperplane that is an abelian ideal, or None.

    When several exist, a standard covector ``f^k`` is preferred (largest
    ``k`` first) so the tables keep ``e_n`` transverse; otherwise the
    linear system for ``eta`` decides.  Abelian algebras return None.
    """
    n = g.dim
    if g.is_abelian(tol):
        return None
    D = g.derived_span()
    ann = nullspace(D.T, tol) if D.shape[1] else [row for row in identity(n)]
    if not ann:
        return None
    if len(ann) == 1:
        eta = ann[0]
        return Hyperplane(eta, _kernel_basis(eta, tol)) if is_abelian_ideal(g, eta, tol) else None
    # cheap path: the usual tables have f^n as the transverse covector
    for k in reversed(range(n)):
        e = zeros(n) if g.exact else np.zeros(n)
        e[k] = 1
        if is_abelian_ideal(g, e, tol):
            return Hyperplane(e, _kernel_basis(e, tol))
    sols = _abelian_hyperplane_functionals(g, tol)
    if not sols:
        return None
    eta = sols[0]
    if len(sols) > 1:
        S = np.column_stack(sols)
        for k in reversed(range(n)):
            e = zeros(n) if is_exact(S) else np.zeros(n)
            e[k] = 1
            if in_column_span(S, e, tol):
                eta = e
                break
    if not is_abelian_ideal(g, eta, tol):
        from .linalg import ConsistencyError
        raise ConsistencyError("abelian hyperplane from the linear system fails the direct check")
    return Hyperplane(eta, _kernel_basis(eta, tol))


def is_almost_abelian(g: LieAlgebra, tol=DEFAULT_TOL) -> bool:
    return find_codim1_abelian_ideal(g, tol) is not None


# ---------------------------------------------------------------------------
# adapted data
# ---------------------------------------------------------------------------

@dataclass
class AlmostAbelianData:
    """``(a, v, A)`` read off in a J-adapted basis.

    The basis (columns, standard coordinates) is ``(e_1, n_1..., e_2n)``.
    To stay exact no square roots are taken: ``norm2 = g(e_2n, e_2n)``
    and ``h`` is the diagonal Gram matrix of the ``n_1`` part.  When both
    are identities, ``(a, v, A)`` are the orthonormal-basis values.  In
    general the orthonormal values are ``a / sqrt(N)``, ``A / sqrt(N)``
    (as an endomorphism) and ``v / N`` (as a vector), with ``N = norm2``.
    """

    a: object
    v: np.ndarray
    A: np.ndarray
    basis: np.ndarray = None
    h: np.ndarray = None
    norm2: object = Fraction(1)
    J: np.ndarray = None
    metric: np.ndarray = None
    J1: np.ndarray = None
    algebra: LieAlgebra = field(default=None, repr=False)

    def __post_init__(self):
        m = self.A.shape[0]
        n = m + 2
        if self.h is None:
            self.h = identity(m)
        if self.J1 is None:
            self.J1 = canonical_j1(m)
        if self.basis is None:
            self.basis = identity(n)
        if self.J is None:
            self.J = canonical_j(n)
        if self.metric is None:
            self.metric = identity(n)

    @classmethod
    def from_parameters(cls, a, v, A):
        """Data for ``build_from_data(a, v, A)`` with canonical J and the
        identity metric."""
        A = mat(A)
        v = mat(list(v)) if len(v) else zeros(0)
        return cls(a=to_scalar(a), v=v, A=A, algebra=build_from_data(a, v, A))

    @property
    def dim(self):
        return self.A.shape[0] + 2

    @property
    def orthonormal(self):
        """True when no rescaling is pending."""
        m = self.A.shape[0]
        return self.norm2 == 1 and all(self.h[i, i] == 1 for i in range(m))

    @property
    def exact(self):
        return is_exact_scalar(self.a) and is_exact(self.v) and is_exact(self.A) and is_exact(self.h)

    def A_star(self):
        """Adjoint of A with respect to the metric on ``n_1``."""
        return adjoint(self.A, self.h)

    def B(self):
        m = self.A.shape[0]
        B = zeros(m + 1, m + 1)
        B[0, 0] = self.a
        B[1:, 0] = self.v
        B[1:, 1:] = self.A
        return B

    def v_norm2(self):
        return self.v @ self.h @ self.v

    def normalized(self):
        """``(a, v, A)`` in an orthonormal adapted basis, with ``v`` and ``A``
        in orthonormal ``n_1`` coordinates.  Exact when the square roots
        are rational, float otherwise."""
        m = self.A.shape[0]
        rN = rational_sqrt(self.norm2) if is_exact_scalar(self.norm2) else None
        rh = [rational_sqrt(self.h[i, i]) if is_exact_scalar(self.h[i, i]) else None for i in range(m)]
        if rN is None or any(r is None for r in rh):
            sN = float(self.norm2) ** 0.5
            sh = np.array([float(self.h[i, i]) ** 0.5 for i in range(m)])
            A = np.array(self.A.tolist(), dtype=float)
            v = np.array(self.v.tolist(), dtype=float)
            return (float(self.a) / sN, sh * v / float(self.norm2),
                    (sh[:, None] * A / sh[None, :]) / sN if m else A)
        D = np.array(rh, dtype=object)
        A = zeros(m, m)
        for i in range(m):
            for j in range(m):
                A[i, j] = D[i] * self.A[i, j] / D[j] / rN
        v = np.array([D[i] * self.v[i] / self.norm2 for i in range(m)], dtype=object)
        return self.a / rN, v, A

    def dual_basis(self):
        """Rows are the adapted dual covectors ``e^i`` in standard coordinates."""
        return inverse(self.basis)

    def as_dict(self):
        a, v, A = self.normalized()
        return {"a": a, "v": list(v), "A": [list(r) for r in A]}


def _g(metric, x, y):
    return x @ metric @ y


def extract_data(g: LieAlgebra, J, metric, orientation=None, n1_basis=None,
                 tol=DEFAULT_TOL) -> AlmostAbelianData:
    """Read off ``(a, v, A)`` for a Hermitian structure on an almost abelian
    algebra.

    ``orientation`` is a vector whose pairing with the ideal functional
    fixes the sign of ``e_2n``; by default the functional's last nonzero
    coefficient is made positive.  ``n1_basis`` optionally fixes the basis
    of ``n_1`` (columns, standard coordinates).
    """
    J = mat(J) if not isinstance(J, np.ndarray) else J
    metric = mat(metric) if not isinstance(metric, np.ndarray) else metric
    n = g.dim
    require_spd(metric, tol)
    if not all_zero(J @ J + identity(n), tol):
        raise DomainError("J does not square to -1")
    if not all_zero(J.T @ metric @ J - metric, tol):
        raise DomainError("metric is not J-compatible")
    hyper = find_codim1_abelian_ideal(g, tol)
    if hyper is None:
        raise DomainError("no codimension-one abelian ideal")
    eta = hyper.functional
    if orientation is not None:
        s = eta @ np.asarray(orientation, dtype=object)
        if is_zero(s, tol):
            raise DomainError("orientation vector lies in the ideal")
        if s < 0:
            eta = -eta
    else:
        last = next(x for x in reversed(list(eta)) if not is_zero(x, tol))
        if last < 0:
            eta = -eta
    ginv = inverse(metric)
    e2n = ginv @ eta
    N = eta @ e2n
    r = rational_sqrt(N) if is_exact_scalar(N) else None
    if r is not None:
        e2n = e2n / r
        N = Fraction(1)
    e1 = -(J @ e2n)

    fixed = [e1, e2n]
    if n1_basis is not None:
        cols = [np.asarray(n1_basis)[:, i] for i in range(np.asarray(n1_basis).shape[1])]
        for x in cols:
            if not all(is_zero(_g(metric, x, b), tol) for b in fixed):
                raise DomainError("supplied n_1 basis is not orthogonal to e_1, e_2n and itself")
            fixed.append(x)
        n1 = cols
    else:
        n1 = []
        for k in range(n):
            if len(n1) == n - 2:
                break
            x = identity(n)[:, k] if is_exact(metric) and is_exact(J) else np.eye(n)[:, k]
            for b in fixed:
                x = x - (_g(metric, x, b) / _g(metric, b, b)) * b
            if all_zero(x, tol):
                continue
            hx = _g(metric, x, x)
            rx = rational_sqrt(hx) if is_exact_scalar(hx) else None
            if rx is not None:
                x = x / rx
            y = J @ x
            n1 += [x, y]
            fixed += [x, y]
    if len(n1) != n - 2:
        raise DomainError("could not complete an adapted basis")
    basis = np.column_stack([e1] + n1 + [e2n])
    h = np.array([[_g(metric, x, y) for y in n1] for x in n1], dtype=object)
    if not is_exact(h):
        h = h.astype(float)
    binv = inverse(basis)
    M = binv @ g.ad(e2n) @ basis
    Jb = binv @ J @ basis
    m = n - 2
    a = M[0, 0]
    v = M[1:-1, 0].copy()
    w = M[0, 1:-1].copy()
    A = M[1:-1, 1:-1].copy()
    J1 = Jb[1:-1, 1:-1].copy()
    if not (all_zero(M[-1, :], tol) and all_zero(M[:, -1], tol)):
        raise DomainError("ad(e_2n) does not preserve the ideal")
    comm = commutator(A, J1) if m else zeros(0, 0)
    if not all_zero(w, tol) or not all_zero(comm, tol):
        raise IntegrabilityError(
            "J is not integrable on this almost abelian algebra "
            f"(w = {list(w)}, [A, J1] {'= 0' if all_zero(comm, tol) else '!= 0'})",
            w=w, commutator=comm)
    return AlmostAbelianData(a=a, v=v, A=A, basis=basis, h=h, norm2=N, J=J,
                             metric=metric, J1=J1, algebra=g)
