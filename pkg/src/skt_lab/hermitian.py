"""Hermitian structures on Lie algebras: integrability, the fundamental
form, Bismut torsion, Lee form and the Bismut Ricci form of an almost
abelian Hermitian algebra."""

from __future__ import annotations

import numpy as np

from .forms import (
    InvariantForm, ce_d, codifferential, one_form_action, pullback, wedge,
)
from .linalg import (
    DEFAULT_TOL, ConsistencyError, DomainError, all_zero, identity, inverse, is_exact,
    mat, require_spd, trace,
)
from .liealg import AlmostAbelianData, LieAlgebra, extract_data


class HermitianStructure:
    """A pair ``(J, g)`` with ``J^2 = -1`` and ``g(J., J.) = g``."""

    def __init__(self, J, metric, tol=DEFAULT_TOL):
        J = mat(J) if not isinstance(J, np.ndarray) else J
        metric = mat(metric) if not isinstance(metric, np.ndarray) else metric
        n = J.shape[0]
        if J.shape != (n, n) or metric.shape != (n, n):
            raise DomainError("J and metric must be square of the same size")
        if not all_zero(J @ J + identity(n), tol):
            raise DomainError("J does not square to -1")
        require_spd(metric, tol)
        if not all_zero(J.T @ metric @ J - metric, tol):
            raise DomainError("metric is not compatible with J")
        self.J = J
        self.metric = metric
        self.tol = tol
        self._omega = None

    @property
    def dim(self):
        return self.J.shape[0]

    @property
    def omega(self):
        if self._omega is None:
            self._omega = fundamental_form(self)
        return self._omega

    @property
    def exact(self):
        return is_exact(self.J) and is_exact(self.metric)


def nijenhuis(g: LieAlgebra, J):
    """``N[i, j] = N(e_i, e_j)`` for
    ``N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY]``."""
    J = np.asarray(J)
    n = g.dim
    c = g.c
    br = {}
    for a in range(n):
        for b in range(n):
            terms = [(k, c[a, b, k]) for k in range(n) if c[a, b, k] != 0]
            if terms:
                br[a, b] = terms
    cols = [[(a, J[a, i]) for a in range(n) if J[a, i] != 0] for i in range(n)]
    unit = [[(i, 1)] for i in range(n)]

    def bracket(xs, ys, out, sign):
        for a, x in xs:
            for b, y in ys:
                for k, z in br.get((a, b), ()):
                    out[k] = out.get(k, 0) + sign * x * y * z

    N = np.full((n, n, n), 0, dtype=object) if c.dtype == object else np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            direct, mixed = {}, {}
            bracket(cols[i], cols[j], direct, 1)
            bracket(unit[i], unit[j], direct, -1)
            bracket(cols[i], unit[j], mixed, 1)
            bracket(unit[i], cols[j], mixed, 1)
            for k, x in mixed.items():
                for l, y in cols[k]:
                    direct[l] = direct.get(l, 0) - x * y
            for k, x in direct.items():
                N[i, j, k] = x
    return N


def is_integrable(g: LieAlgebra, J, tol=DEFAULT_TOL) -> bool:
    return all_zero(nijenhuis(g, J), tol)


def fundamental_form(h: HermitianStructure) -> InvariantForm:
    """``omega(X, Y) = g(JX, Y)``."""
    return InvariantForm.from_matrix(h.J.T @ h.metric)


def bismut_torsion(g: LieAlgebra, h: HermitianStructure, check=True) -> InvariantForm:
    """``H(X, Y, Z) = -d omega(JX, JY, JZ)``."""
    if check and not is_integrable(g, h.J, h.tol):
        raise DomainError("J is not integrable")
    return -pullback(h.J, ce_d(g, h.omega))


def lee_form_direct(g: LieAlgebra, h: HermitianStructure) -> InvariantForm:
    """``theta = J d* omega``."""
    return one_form_action(h.J, codifferential(g, h.metric, h.omega))


def _vector_std(data: AlmostAbelianData, x):
    """Standard coordinates of a vector given in ``n_1`` adapted coordinates."""
    return data.basis[:, 1:-1] @ x


def lee_form_closed(data: AlmostAbelianData) -> InvariantForm:
    """``theta = -Tr(A) e^2n + (J v)^flat`` in an orthonormal adapted basis,
    rewritten for the unnormalized basis as ``-Tr(A) e^2n + (J v)^flat / N``."""
    dual = data.dual_basis()
    e2n = InvariantForm.from_vector(dual[-1])
    Jv = _vector_std(data, data.J1 @ data.v)
    flat = InvariantForm.from_vector(data.metric @ Jv)
    return e2n * (-trace(data.A)) + flat * (1 / data.norm2)


def lee_form(g: LieAlgebra, h: HermitianStructure, data=None, check=True) -> InvariantForm:
    """Lee form, computed as ``J d* omega`` and, when ``check`` is set,
    compared with the almost abelian closed form."""
    theta = lee_form_direct(g, h)
    if check:
        if data is None:
            data = extract_data(g, h.J, h.metric, tol=h.tol)
        other = lee_form_closed(data)
        if not theta.isclose(other, max(h.tol, 1e-7)):
            raise ConsistencyError(f"Lee form mismatch: J d* omega = {theta}, closed form = {other}")
    return theta


def bismut_ricci(data: AlmostAbelianData, h: HermitianStructure = None) -> InvariantForm:
    """``rho^B = -(a^2 - a Tr(A)/2 + |v|^2) e^1 ^ e^2n - (A^T v)^flat ^ e^2n``
    for orthonormal adapted data, rescaled here to the stored basis."""
    N = data.norm2
    dual = data.dual_basis()
    e1 = InvariantForm.from_vector(dual[0])
    e2n = InvariantForm.from_vector(dual[-1])
    a = data.a
    K = (a * a - a * trace(data.A) / 2) / N + data.v_norm2() / (N * N)
    metric = data.metric if h is None else h.metric
    Asv = _vector_std(data, data.A_star() @ data.v)
    flat = InvariantForm.from_vector(metric @ Asv)
    return -(wedge(e1, e2n) * (K * N)) - wedge(flat, e2n) * (1 / N)


def _full_tensor(form: InvariantForm):
    """Dense antisymmetric array of a 3-form."""
    from itertools import permutations

    n = form.dim
    T = np.full((n, n, n), 0, dtype=object)
    for idx, c in form.coeffs.items():
        for perm in permutations(range(3)):
            sign = 1
            p = list(perm)
            for x in range(3):
                for y in range(x + 1, 3):
                    if p[x] > p[y]:
                        sign = -sign
            T[tuple(idx[k] for k in perm)] = sign * c
    return T


def bismut_connection(g: LieAlgebra, h: HermitianStructure, H=None):
    """Matrices ``Gamma[i]`` of ``nabla^B_{e_i}``, from the Koszul formula
    plus half the torsion form.  Raises if ``nabla^B J != 0``."""
    n = g.dim
    G = h.metric
    H = bismut_torsion(g, h) if H is None else H
    L = np.tensordot(g.c, G, axes=([2], [0]))
    low = (L - L.transpose(2, 0, 1) + L.transpose(1, 2, 0)) / 2 - _full_tensor(H) / 2
    Gi = inverse(G)
    gamma = [Gi @ low[i].T for i in range(n)]
    for i in range(n):
        if not all_zero(gamma[i] @ h.J - h.J @ gamma[i], max(h.tol, 1e-7)):
            raise ConsistencyError("Bismut connection does not preserve J")
    return gamma


def bismut_ricci_direct(g: LieAlgebra, h: HermitianStructure, H=None) -> InvariantForm:
    """``rho^B(X, Y) = 1/2 sum_i g(R^B(X, Y) J e_i, e_i)`` from the curvature
    of the Bismut connection, with ``R(X, Y) = [nabla_X, nabla_Y] -
    nabla_[X,Y]``.  With this sign ``rho^B(X, Y) = Ric(JX, Y)`` for Kahler
    metrics.  Independent of the almost abelian formula."""

    n = g.dim
    gamma = bismut_connection(g, h, H)
    G, J = h.metric, h.J
    Gi = inverse(G)
    M = np.full((n, n), 0, dtype=object) if h.exact and g.exact else np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            R = gamma[i] @ gamma[j] - gamma[j] @ gamma[i]
            for k in range(n):
                if g.c[i, j, k] != 0:
                    R = R - g.c[i, j, k] * gamma[k]
            val = -np.trace(Gi @ J.T @ G @ R) / 2
            M[i, j], M[j, i] = val, -val
    return InvariantForm.from_matrix(M)
