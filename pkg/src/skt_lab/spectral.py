"""Metric-free decisions for an almost abelian algebra with a complex
structure.

Twisted SKT metrics exist exactly when ``A`` is diagonalizable over C with
real parts of eigenvalues in ``{0, mu}``.  Existence of Kahler, LCB and
Bismut-Ricci-flat metrics among them is decided by linear algebra on
``(a, v, A)`` read off in any adapted basis, since all of these conditions
are invariant under the rescaling and change of metric inside the family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import InvariantForm
from .linalg import (
    DEFAULT_TOL, DomainError, SpectralReport, adjoint, all_zero, commutator,
    eigen, identity, in_column_span, inverse, is_exact, is_exact_scalar,
    is_normal, is_zero, matrix_poly, nullspace, rank, rational_sqrt,
    require_spd, to_float, trace, zeros,
)
from .liealg import (
    AlmostAbelianData, LieAlgebra, canonical_j1, extract_data,
    unimodular_check,
)
from .verdicts import AlphaSpace


class ClassificationError(DomainError):
    """Data outside every case of the alpha table."""


def compatible_metric(J):
    """A simple J-compatible inner product: the identity when J is
    orthogonal, ``I + J^T J`` otherwise."""
    J = np.asarray(J)
    n = J.shape[0]
    JtJ = J.T @ J
    if all_zero(JtJ - identity(n)):
        return identity(n)
    return identity(n) + JtJ


def adapted_data(g: LieAlgebra, J, metric=None, tol=DEFAULT_TOL) -> AlmostAbelianData:
    return extract_data(g, J, compatible_metric(J) if metric is None else metric, tol=tol)


# ---------------------------------------------------------------------------
# spectral criterion
# ---------------------------------------------------------------------------

def _nonzero_multiplicity(report: SpectralReport):
    return sum(k for z, k in report.eigenvalues if z.real != 0.0)


def mu_value(data: AlmostAbelianData, report: SpectralReport):
    """The nonzero real part, exact when the data are: for admissible ``A``
    the trace is ``k * mu`` with ``k`` eigenvalues carrying ``mu``."""
    if report.mu is None:
        return None
    k = _nonzero_multiplicity(report)
    if is_exact(data.A):
        return trace(data.A) / k
    return report.mu


def exists_twisted_skt(g: LieAlgebra, J, tol=DEFAULT_TOL, data=None):
    """``(flag, report)``: A diagonalizable with real parts in ``{0, mu}``."""
    data = adapted_data(g, J, tol=tol) if data is None else data
    report = eigen(data.A, tol)
    return report.admissible, report


def _lcskt_from(data, report, tol):
    if not report.admissible:
        return False
    if report.all_imaginary:
        return True
    mu = mu_value(data, report)
    return not is_zero(mu + data.a / 2, tol)


def exists_lcskt(g: LieAlgebra, J, tol=DEFAULT_TOL, data=None) -> bool:
    """Twisted SKT admissible and either all real parts vanish or
    ``mu != -a/2``.  Both ``a`` and ``mu`` scale with ``e_2n``, so the test
    does not depend on the adapted basis."""
    data = adapted_data(g, J, tol=tol) if data is None else data
    return _lcskt_from(data, eigen(data.A, tol), tol)


# ---------------------------------------------------------------------------
# normalizing metric
# ---------------------------------------------------------------------------

def _gaussian_eigenvalues(A):
    """Exact eigenvalues as ``(re, im, multiplicity)`` Fractions when they
    all lie in Q(i), else None."""
    from sympy import Poly, QQ, Symbol
    from .linalg import _charpoly_exact

    x = Symbol("x")
    p = Poly([QQ(c) for c in _charpoly_exact(A)], x, domain=QQ)
    _, factors = p.factor_list()
    out = []
    for f, k in factors:
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in f.all_coeffs()]
        lead = cs[0]
        cs = [c / lead for c in cs]
        if len(cs) == 2:
            out.append((-cs[1], Fraction(0), k))
        elif len(cs) == 3:
            b, c = cs[1], cs[2]
            disc = b * b - 4 * c
            s = rational_sqrt(-disc) if disc < 0 else None
            if s is None:
                return None
            out.append((-b / 2, s / 2, k))
            out.append((-b / 2, -s / 2, k))
        else:
            return None
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _qqi(x, y=Fraction(0)):
    from sympy import QQ, QQ_I
    return QQ_I(QQ(x.numerator, x.denominator), QQ(y.numerator, y.denominator))


def _frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _unit_leading(vec):
    lead = next(z for z in vec if z.x != 0 or z.y != 0)
    return [z / lead for z in vec]


def _eigenbasis_exact(A, eigs):
    """Columns of P over Q(i): unit-leading eigenvectors, conjugate pairs
    for non-real eigenvalues."""
    from sympy import QQ_I
    from sympy.polys.matrices import DomainMatrix

    m = A.shape[0]
    M = DomainMatrix([[_qqi(x) for x in row] for row in A], (m, m), QQ_I)
    cols = []
    for re, im, _ in eigs:
        if im < 0:
            continue
        lam = _qqi(re, im)
        null = (M - DomainMatrix.eye(m, QQ_I) * lam).nullspace().to_Matrix()
        for r in range(null.rows):
            vec = _unit_leading([QQ_I.convert(null[r, c]) for c in range(m)])
            cols.append(vec)
            if im > 0:
                cols.append([QQ_I(z.x, -z.y) for z in vec])
    return cols


def _hermitian_from_exact(cols, m):
    from sympy import QQ_I
    from sympy.polys.matrices import DomainMatrix

    P = DomainMatrix([[cols[j][i] for j in range(m)] for i in range(m)], (m, m), QQ_I)
    Pi = P.inv().to_Matrix()
    Pi = [[QQ_I.convert(Pi[i, j]) for j in range(m)] for i in range(m)]
    H = zeros(m, m)
    for i in range(m):
        for j in range(m):
            s = QQ_I(0, 0)
            for k in range(m):
                z = Pi[k][i]
                s += QQ_I(z.x, -z.y) * Pi[k][j]
            if s.y != 0:
                raise DomainError("eigenbasis Gram matrix is not real")
            H[i, j] = _frac(s.x)
    return H


def _hermitian_float(A, tol):
    Af = to_float(A).astype(float)
    m = Af.shape[0]
    vals = np.linalg.eigvals(Af)
    ctol = max(tol, np.sqrt(tol))
    groups = []
    for z in sorted(vals, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(g[0] - z) <= ctol:
                g[1] += 1
                break
        else:
            groups.append([z, 1])
    cols = []
    for z, k in groups:
        if z.imag < -ctol:
            continue
        _, s, vh = np.linalg.svd(Af - z * np.eye(m))
        basis = vh[m - k:].conj()
        for vec in basis:
            if abs(z.imag) <= ctol:
                vec = vec.real if np.linalg.norm(vec.real) > ctol else vec.imag
            lead = vec[np.argmax(np.abs(vec) > ctol)]
            vec = vec / lead
            cols.append(vec)
            if abs(z.imag) > ctol:
                cols.append(vec.conj())
    P = np.column_stack(cols)
    Pi = np.linalg.inv(P)
    H = Pi.conj().T @ Pi
    return H.real


def construct_normalizing_metric(A, J1=None, tol=DEFAULT_TOL):
    """A J_1-compatible inner product on ``n_1`` for which ``A`` is normal.

    ``H = conj(P^-1)^T P^-1`` for a complex eigenbasis ``P`` (unit leading
    entries, conjugate pairs, eigenvalues in lexicographic order) makes the
    eigenbasis orthonormal; averaging with its J_1-pullback keeps ``A``
    normal because the adjoint is a polynomial in ``A``, which commutes with
    J_1.  Exact when the eigenvalues are Gaussian rationals.
    """
    A = np.asarray(A)
    m = A.shape[0]
    J1 = canonical_j1(m) if J1 is None else np.asarray(J1)
    if not all_zero(commutator(A, J1), tol):
        raise DomainError("A does not commute with J_1")
    if all_zero(J1.T @ J1 - identity(m), tol) and is_normal(A, None, tol):
        return identity(m) if is_exact(A) else np.eye(m)
    report = eigen(A, tol)
    if not report.diagonalizable:
        raise DomainError("A is not diagonalizable over C")
    H = None
    if is_exact(A):
        eigs = _gaussian_eigenvalues(A)
        if eigs is not None:
            H = _hermitian_from_exact(_eigenbasis_exact(A, eigs), m)
    if H is None:
        H = _hermitian_float(A, tol)
        J1 = to_float(J1)
    g = (H + J1.T @ H @ J1) / 2
    require_spd(g, tol)
    return g


def adjoint_polynomial(A, gram, tol=DEFAULT_TOL):
    """Coefficients (lowest degree first) of the interpolation polynomial
    ``Q`` with ``Q(lambda) = conj(lambda)`` on the spectrum, so that the
    ``gram``-adjoint of a normal ``A`` is ``Q(A)``."""
    A = np.asarray(A)
    gram = np.asarray(gram)
    if not is_normal(A, gram, tol):
        raise DomainError("A is not normal for this inner product")
    eigs = _gaussian_eigenvalues(A) if is_exact(A) else None
    if eigs is not None:
        from sympy import QQ_I
        from sympy.polys.matrices import DomainMatrix

        pts = [_qqi(re, im) for re, im, _ in eigs]
        k = len(pts)
        V = DomainMatrix([[p ** j for j in range(k)] for p in pts], (k, k), QQ_I)
        rhs = DomainMatrix([[QQ_I(p.x, -p.y)] for p in pts], (k, 1), QQ_I)
        sol = V.inv() * rhs
        sol = sol.to_Matrix()
        coeffs = []
        for j in range(k):
            z = QQ_I.convert(sol[j, 0])
            if z.y != 0:
                raise DomainError("interpolation polynomial is not real")
            coeffs.append(_frac(z.x))
    else:
        report = eigen(A, tol)
        pts = [z for z, _ in report.eigenvalues]
        V = np.array([[p ** j for j in range(len(pts))] for p in pts])
        coeffs = list(np.linalg.solve(V, np.conj(pts)).real)
    if not all_zero(matrix_poly(coeffs, A) - adjoint(A, gram), max(tol, 1e-7)):
        raise DomainError("interpolation polynomial does not reproduce the adjoint")
    return coeffs


# ---------------------------------------------------------------------------
# alpha families
# ---------------------------------------------------------------------------

def table1_row(data: AlmostAbelianData, tol=DEFAULT_TOL, report=None) -> int:
    """Which case of the alpha table ``(a, v, A)`` belongs to (1 to 6)."""
    report = eigen(data.A, tol) if report is None else report
    if not report.admissible:
        raise ClassificationError("A is not admissible: no closed alpha exists for any metric")
    a0 = is_zero(data.a, tol)
    v0 = all_zero(data.v, tol)
    if not report.all_imaginary:
        return 1 if a0 else 2
    if a0:
        return 3 if v0 else 4
    return 5 if v0 else 6


def construct_alpha(data: AlmostAbelianData, tol=DEFAULT_TOL) -> AlphaSpace:
    """All closed ``alpha`` with ``dH = alpha ^ H`` for a metric making
    ``A`` normal, assembled case by case.

    ``d alpha = 0`` amounts to ``a alpha(e_1) + alpha(v) = 0`` and
    ``alpha o A = 0``.  If some eigenvalue has real part ``mu != 0`` then
    ``alpha`` vanishes on ``n_1`` and ``alpha(e_2n) = -a - 2 mu``.  If ``A``
    is antisymmetric, ``alpha(e_2n)`` is free and, when ``v != 0``, the
    restriction to ``n_1`` is a multiple of ``v^flat``.
    """
    report = eigen(data.A, tol)
    table1_row(data, tol, report)
    if not is_normal(data.A, data.h, tol):
        raise DomainError("the metric does not make A normal")
    dual = data.dual_basis()
    e1, e2n, mids = dual[0], dual[-1], dual[1:-1]
    a, v, A, h = data.a, data.v, data.A, data.h
    n = data.dim
    exact = is_exact(dual) and is_exact_scalar(a) and is_exact(A)
    zero = zeros(n) if exact else np.zeros(n)

    def on_n1(beta):
        return sum((b * row for b, row in zip(beta, mids)), zero)

    hom = []
    if not report.all_imaginary:
        mu = mu_value(data, report)
        particular = (-a - 2 * mu) * e2n
        if is_zero(a, tol):
            hom.append(e1)
    else:
        particular = zero
        hom.append(e2n)
        hv = h @ v
        if all_zero(v, tol):
            if is_zero(a, tol):
                hom.append(e1)
            for beta in nullspace(A.T, tol):
                hom.append(on_n1(beta))
        elif is_zero(a, tol):
            hom.append(e1)
        elif all_zero(hv @ A, tol):
            hom.append(data.v_norm2() * e1 - a * on_n1(hv))
    return AlphaSpace(n, particular, hom, tol)


# ---------------------------------------------------------------------------
# the metric family
# ---------------------------------------------------------------------------

@dataclass
class MetricFamilyElement:
    """``g^{h,u} = h + k^u`` with ``u = c e_1 + w``; ``h`` and ``w`` are
    in the ``n_1`` coordinates of the reference data."""
    h: np.ndarray
    c: object
    w: np.ndarray

    def u(self, data: AlmostAbelianData):
        """``u`` in standard coordinates."""
        return self.c * data.basis[:, 0] + data.basis[:, 1:-1] @ self.w


@dataclass
class TransformedData:
    a_u: object
    v_u: np.ndarray
    A_u: np.ndarray
    P: np.ndarray
    h_u: np.ndarray = field(default=None)

    def as_data(self, J=None, basis=None, metric=None):
        return AlmostAbelianData(a=self.a_u, v=self.v_u, A=self.A_u, h=self.h_u,
                                 J=J, basis=basis, metric=metric)


def adapted_n1_basis(h, J1, tol=DEFAULT_TOL):
    """An ``h``-orthogonal basis ``(x_1, J_1 x_1, x_2, J_1 x_2, ...)``,
    normalized whenever the norms are rational squares."""
    m = h.shape[0]
    exact = is_exact(h) and is_exact(J1)
    eye = identity(m) if exact else np.eye(m)
    cols = []
    for k in range(m):
        if len(cols) == m:
            break
        x = eye[:, k]
        for b in cols:
            x = x - ((x @ h @ b) / (b @ h @ b)) * b
        if all_zero(x, tol):
            continue
        nx = x @ h @ x
        r = rational_sqrt(nx) if is_exact_scalar(nx) else None
        if r is not None:
            x = x / r
        cols += [x, J1 @ x]
    return np.column_stack(cols)


def transform_data(data: AlmostAbelianData, elt: MetricFamilyElement, tol=DEFAULT_TOL) -> TransformedData:
    """``a^u = c a``, ``A^u = c P^-1 A P``, ``P v^u = c^2 v + c (A - a) w``,
    with ``P`` an ``h``-orthogonal J_1-adapted basis of ``n_1``."""
    c = elt.c
    if is_zero(c, tol):
        raise DomainError("u must not lie in n_1 (c = 0)")
    h = np.asarray(elt.h)
    require_spd(h, tol, "h")
    if not all_zero(data.J1.T @ h @ data.J1 - h, tol):
        raise DomainError("h is not J_1-compatible")
    m = data.A.shape[0]
    P = adapted_n1_basis(h, data.J1, tol)
    Pi = inverse(P)
    A, a, v = data.A, data.a, data.v
    A_u = c * (Pi @ A @ P)
    v_u = Pi @ (c * c * v + c * ((A - a * identity(m)) @ elt.w))
    return TransformedData(a_u=c * a, v_u=v_u, A_u=A_u, P=P, h_u=P.T @ h @ P)


def family_metric(data: AlmostAbelianData, elt: MetricFamilyElement):
    """``g^{h,u}`` in standard coordinates, together with the adapted basis
    ``(u, P, J u)`` it makes orthogonal."""
    P = adapted_n1_basis(np.asarray(elt.h), data.J1)
    u = elt.u(data)
    Ju = data.J @ u
    n1 = data.basis[:, 1:-1] @ P
    basis = np.column_stack([u, n1, Ju])
    m = P.shape[1]
    G = zeros(m + 2, m + 2) if is_exact(basis) else np.zeros((m + 2, m + 2))
    G[0, 0] = G[-1, -1] = 1
    G[1:-1, 1:-1] = P.T @ np.asarray(elt.h) @ P
    Bi = inverse(basis)
    return Bi.T @ G @ Bi, basis


# ---------------------------------------------------------------------------
# existence of special metrics
# ---------------------------------------------------------------------------

def _im_shift(data):
    m = data.A.shape[0]
    return data.A - data.a * (identity(m) if is_exact(data.A) else np.eye(m))


def _kernel_cols(A, tol):
    ker = nullspace(A, tol)
    return np.column_stack(ker) if ker else None


def _span_contains(cols, v, tol):
    mats = [c for c in cols if c is not None and c.size]
    if not mats:
        return all_zero(v, tol)
    return in_column_span(np.hstack(mats), v, tol)


def _intersects(U, W, tol):
    """Whether two column spans meet outside 0."""
    if U is None or W is None or U.size == 0 or W.size == 0:
        return False
    return rank(U, tol) + rank(W, tol) > rank(np.hstack([U, W]), tol)


def _set_meets_kernel(data, tol):
    """Whether ``{b v + (A - a) x : b != 0}`` meets ``ker A^T`` outside 0.

    For admissible data ``A`` is normal for the family metrics, so the
    kernel of its adjoint is ``ker A``.  When ``v`` is not in
    ``Im(A - a)`` every element of the set is nonzero and the condition is
    ``v in Im(A - a) + ker A``; otherwise the set is ``Im(A - a)`` itself.
    """
    S = _im_shift(data)
    K = _kernel_cols(data.A, tol)
    if in_column_span(S, data.v, tol):
        return _intersects(S, K, tol)
    return _span_contains([S, K], data.v, tol)


def exists_kahler(data: AlmostAbelianData, tol=DEFAULT_TOL, report=None) -> bool:
    """``Tr A = 0`` and ``v in Im(A - a Id)``."""
    report = eigen(data.A, tol) if report is None else report
    if not report.admissible:
        return False
    return is_zero(trace(data.A), tol) and in_column_span(_im_shift(data), data.v, tol)


def exists_lcb(data: AlmostAbelianData, tol=DEFAULT_TOL, report=None) -> bool:
    """``v in Im(A - a Id)``, or some ``b v + (A - a Id) x`` with ``b != 0``
    is a nonzero element of ``ker A^T``."""
    report = eigen(data.A, tol) if report is None else report
    if not report.admissible:
        return False
    S = _im_shift(data)
    if in_column_span(S, data.v, tol):
        return True
    return _set_meets_kernel(data, tol)


def brf_discriminant(data: AlmostAbelianData):
    """``a^2 - a Tr(A) / 2``; its sign does not depend on the adapted basis."""
    return data.a * data.a - data.a * trace(data.A) / 2


def exists_brf(data: AlmostAbelianData, tol=DEFAULT_TOL, report=None) -> bool:
    """Either ``a^2 - a Tr A / 2 = 0`` and ``v in Im(A - a Id)``, or it is
    negative and ``{b v + (A - a) x : b != 0}`` meets ``ker A^T``.
    Values in ``(-tol, 0)`` count as zero."""
    report = eigen(data.A, tol) if report is None else report
    if not report.admissible:
        return False
    k = brf_discriminant(data)
    if is_zero(k, tol) or (not is_exact_scalar(k) and -tol < k < 0):
        return in_column_span(_im_shift(data), data.v, tol)
    if k < 0:
        return _set_meets_kernel(data, tol)
    return False


def bi_invariance_check(data: AlmostAbelianData, J=None, tol=DEFAULT_TOL) -> bool:
    """``B = ad(e_2n)`` commutes with J; in adapted terms ``a = 0``,
    ``v = 0`` and ``[A, J_1] = 0``.  The literal identity
    ``[Jx, y] = J[x, y]`` for all ``x, y`` would force the algebra to be
    abelian, so only the transverse derivation is tested."""
    J = data.J if J is None else np.asarray(J)
    flag = is_zero(data.a, tol) and all_zero(data.v, tol) and all_zero(commutator(data.A, data.J1), tol)
    g = data.algebra
    if g is not None:
        B = g.ad(data.basis[:, -1])
        if all_zero(commutator(B, J), tol) != flag:
            from .linalg import ConsistencyError
            raise ConsistencyError("bi-invariance disagrees between brackets and (a, v, A)")
    return flag


# ---------------------------------------------------------------------------
# complex coordinates
# ---------------------------------------------------------------------------

def complex_form(A, J1=None, tol=DEFAULT_TOL):
    """Matrix of a J_1-linear ``A`` over C, in the basis ``x_1, x_2, ...``
    where ``(x_1, J_1 x_1, x_2, J_1 x_2, ...)`` is built from standard
    vectors.  Entries are ``(re, im)`` pairs; multiplication by ``i`` is
    ``J_1``."""
    A = np.asarray(A)
    m = A.shape[0]
    J1 = canonical_j1(m) if J1 is None else np.asarray(J1)
    if not all_zero(commutator(A, J1), tol):
        raise DomainError("A does not commute with J_1")
    eye = identity(m) if is_exact(J1) else np.eye(m)
    cols = []
    for k in range(m):
        if len(cols) == m:
            break
        x = eye[:, k]
        if cols and in_column_span(np.column_stack(cols), x, tol):
            continue
        cols += [x, J1 @ x]
    Bm = np.column_stack(cols)
    M = inverse(Bm) @ A @ Bm
    k = m // 2
    out = [[(M[2 * i, 2 * j], M[2 * i + 1, 2 * j]) for j in range(k)] for i in range(k)]
    return out, Bm


def complex_to_real(Mc):
    """Inverse of :func:`complex_form` for the canonical J_1: entry
    ``x + iy`` becomes the block ``[[x, -y], [y, x]]``."""
    k = len(Mc)
    out = zeros(2 * k, 2 * k)
    for i in range(k):
        for j in range(k):
            z = Mc[i][j]
            x, y = (z if isinstance(z, tuple) else (z, 0))
            x, y = Fraction(x), Fraction(y)
            out[2 * i, 2 * j] = x
            out[2 * i, 2 * j + 1] = -y
            out[2 * i + 1, 2 * j] = y
            out[2 * i + 1, 2 * j + 1] = x
    return out


# ---------------------------------------------------------------------------
# everything at once
# ---------------------------------------------------------------------------

@dataclass
class ExistenceReport:
    twisted_skt: bool
    lcskt: bool
    kaehler: bool
    lcb: bool
    bismut_ricci_flat: bool
    unimodular: bool
    bi_invariant: bool
    spectrum: SpectralReport = field(repr=False, default=None)
    data: AlmostAbelianData = field(repr=False, default=None)
    witness_metric: np.ndarray = field(repr=False, default=None)
    alpha_space: AlphaSpace = field(repr=False, default=None)

    FLAGS = ("twisted_skt", "lcskt", "kaehler", "lcb", "bismut_ricci_flat", "unimodular", "bi_invariant")

    def flags(self):
        return {k: getattr(self, k) for k in self.FLAGS}

    def as_dict(self):
        out = dict(self.flags())
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum.as_dict()
        if self.data is not None:
            out["data"] = self.data.as_dict()
        if self.witness_metric is not None:
            out["witness_metric"] = [list(r) for r in self.witness_metric]
        if self.alpha_space is not None:
            out["alpha_space"] = self.alpha_space.as_dict()
        return out


def witness_metric(data: AlmostAbelianData, tol=DEFAULT_TOL):
    """A J-Hermitian metric (standard coordinates) making ``A`` normal,
    with the adapted ``e_1``, ``e_2n`` unit and orthogonal to ``n_1``."""
    h = construct_normalizing_metric(data.A, data.J1, tol)
    m = h.shape[0]
    exact = is_exact(h) and is_exact(data.basis)
    G = zeros(m + 2, m + 2) if exact else np.zeros((m + 2, m + 2))
    G[0, 0] = G[-1, -1] = 1
    G[1:-1, 1:-1] = h
    Bi = inverse(data.basis) if exact else np.linalg.inv(to_float(data.basis))
    return Bi.T @ G @ Bi


def classify(g: LieAlgebra, J, tol=DEFAULT_TOL, with_witness=True) -> ExistenceReport:
    data = adapted_data(g, J, tol=tol)
    report = eigen(data.A, tol)
    admissible = report.admissible
    metric = alpha = None
    if admissible and with_witness:
        metric = witness_metric(data, tol)
        wdata = extract_data(g, data.J, metric, tol=tol)
        alpha = construct_alpha(wdata, tol)
    return ExistenceReport(
        twisted_skt=admissible,
        lcskt=_lcskt_from(data, report, tol),
        kaehler=exists_kahler(data, tol, report),
        lcb=exists_lcb(data, tol, report),
        bismut_ricci_flat=exists_brf(data, tol, report),
        unimodular=unimodular_check(g, tol),
        bi_invariant=bi_invariance_check(data, tol=tol),
        spectrum=report,
        data=data,
        witness_metric=metric,
        alpha_space=alpha,
    )
