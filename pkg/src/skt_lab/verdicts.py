"""Condition checks for a fixed Hermitian structure.

Everything here works on one metric at a time: the direct solver for
``dH = alpha ^ H`` with ``alpha`` closed, and the Kahler / SKT / LCSKT /
balanced / LCB / Bismut-Ricci-flat tests, each computed both from the
adapted data ``(a, v, A)`` and, where cheap, from the forms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .forms import InvariantForm, ce_d, wedge
from .hermitian import (
    HermitianStructure, bismut_ricci, bismut_torsion, lee_form,
)
from .linalg import (
    DEFAULT_TOL, ConsistencyError, SpectralReport, adjoint, all_zero, eigen,
    identity, is_exact,
    rank, rref, solve_affine, trace, zeros,
)
from .liealg import AlmostAbelianData, LieAlgebra, extract_data


# ---------------------------------------------------------------------------
# affine spaces of 1-forms
# ---------------------------------------------------------------------------

class AlphaSpace:
    """``particular + span(homogeneous)``, or empty when ``particular`` is None.

    The homogeneous part is kept in reduced echelon form and the particular
    solution is reduced against it, so two equal spaces have equal data.
    """

    def __init__(self, dim, particular=None, homogeneous=(), tol=DEFAULT_TOL):
        self.dim = dim
        self.tol = tol
        hom = [np.asarray(h) for h in homogeneous]
        if hom:
            R, piv = rref(np.vstack(hom), tol)
            hom = [R[i] for i in range(len(piv))]
        else:
            piv = []
        self.pivots = list(piv)
        self.homogeneous = hom
        if particular is not None:
            p = np.asarray(particular).copy()
            for row, c in zip(hom, piv):
                p = p - p[c] * row
            particular = p
        self.particular = particular

    @classmethod
    def empty(cls, dim):
        return cls(dim)

    @classmethod
    def from_forms(cls, particular, homogeneous=(), tol=DEFAULT_TOL):
        dim = particular.dim if particular is not None else homogeneous[0].dim
        return cls(dim, None if particular is None else particular.to_vector(),
                   [h.to_vector() for h in homogeneous], tol)

    def is_empty(self):
        return self.particular is None

    @property
    def dimension(self):
        return -1 if self.is_empty() else len(self.homogeneous)

    def contains(self, alpha, tol=None) -> bool:
        if self.is_empty():
            return False
        tol = self.tol if tol is None else tol
        x = alpha.to_vector() if isinstance(alpha, InvariantForm) else np.asarray(alpha)
        d = x - self.particular
        for row, c in zip(self.homogeneous, self.pivots):
            d = d - d[c] * row
        return all_zero(d, tol)

    def contains_zero(self) -> bool:
        return not self.is_empty() and all_zero(self.particular, self.tol)

    def has_nonzero(self) -> bool:
        return not self.is_empty() and (bool(self.homogeneous) or not self.contains_zero())

    def nonzero_element(self):
        if not self.has_nonzero():
            return None
        if not self.contains_zero():
            return self.particular_form()
        return InvariantForm.from_vector(self.homogeneous[0])

    def particular_form(self):
        return None if self.is_empty() else InvariantForm.from_vector(self.particular)

    def homogeneous_forms(self):
        return [InvariantForm.from_vector(h) for h in self.homogeneous]

    def element(self, coeffs):
        """``particular + sum coeffs[i] * homogeneous[i]``."""
        x = self.particular
        for c, h in zip(coeffs, self.homogeneous):
            x = x + c * h
        return InvariantForm.from_vector(x)

    def __eq__(self, other):
        if not isinstance(other, AlphaSpace):
            return NotImplemented
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        if len(self.homogeneous) != len(other.homogeneous):
            return False
        if self.homogeneous:
            both = np.vstack(self.homogeneous + other.homogeneous)
            if rank(both, self.tol) != len(self.homogeneous):
                return False
        return other.contains(self.particular)

    def __le__(self, other):
        """Inclusion of affine spaces."""
        if self.is_empty():
            return True
        if not other.contains(self.particular):
            return False
        return all(other.contains(self.particular + h) for h in self.homogeneous)

    def __str__(self):
        if self.is_empty():
            return "{}"
        parts = [str(self.particular_form())]
        for i, h in enumerate(self.homogeneous_forms()):
            parts.append(f"t{i + 1}*({h})")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlphaSpace({self})"

    def as_dict(self):
        return {
            "empty": self.is_empty(),
            "particular": None if self.is_empty() else list(self.particular),
            "homogeneous": [list(h) for h in self.homogeneous],
        }


def _linear_system(columns, rhs):
    """Stack sparse form coefficients into a dense matrix, one column per
    unknown."""
    keys = {}
    for f in list(columns) + [rhs]:
        for k in f.coeffs:
            keys.setdefault(k, len(keys))
    exact = all(f.exact for f in columns) and rhs.exact
    M = zeros(len(keys), len(columns)) if exact else np.zeros((len(keys), len(columns)))
    b = zeros(len(keys)) if exact else np.zeros(len(keys))
    for j, f in enumerate(columns):
        for k, c in f.coeffs.items():
            M[keys[k], j] = c
    for k, c in rhs.coeffs.items():
        b[keys[k]] = c
    return M, b


def solve_alpha(g: LieAlgebra, h: HermitianStructure, H=None, tol=DEFAULT_TOL) -> AlphaSpace:
    """All closed 1-forms with ``dH = alpha ^ H``."""
    n = g.dim
    if H is None:
        H = bismut_torsion(g, h)
    dH = ce_d(g, H)
    basis = [InvariantForm.basis(n, i) for i in range(n)]
    closed = [ce_d(g, f) for f in basis]
    wedged = [wedge(f, H) for f in basis]
    # one column per unknown; the 2-form and 4-form equations sit in
    # disjoint rows because the forms have different degree
    M1, b1 = _linear_system(closed, InvariantForm.zero(n, 2))
    M2, b2 = _linear_system(wedged, dH)
    if M1.shape[0] == 0:
        M, b = M2, b2
    elif M2.shape[0] == 0:
        M, b = M1, b1
    else:
        M, b = np.vstack([M1, M2]), np.concatenate([b1, b2])
    if M.shape[0] == 0:
        return AlphaSpace(n, zeros(n), list(identity(n)), tol)
    part, null = solve_affine(M, b, tol)
    return AlphaSpace(n, part, null, tol)


# ---------------------------------------------------------------------------
# checks on adapted data
# ---------------------------------------------------------------------------

def _sym_h(X, data):
    """Twice the ``h``-symmetric part, ``X + X^*``."""
    return X + _adj(X, data)


def _adj(X, data):
    h = data.h
    m = h.shape[0]
    if data.orthonormal:
        return X.T
    if all(h[i, j] == 0 for i in range(m) for j in range(m) if i != j):
        hd = np.array([h[i, i] for i in range(m)], dtype=h.dtype)
        return (X.T * hd[None, :]) / hd[:, None]
    return adjoint(X, h)


def check_skt(data: AlmostAbelianData, tol=DEFAULT_TOL) -> bool:
    """``S(aA + A^2 + A^T A) = 0``."""
    A = data.A
    X = data.a * A + A @ A + _adj(A, data) @ A
    return all_zero(_sym_h(X, data), tol)


def check_kahler(data: AlmostAbelianData, g: LieAlgebra = None, h: HermitianStructure = None,
                 tol=DEFAULT_TOL) -> bool:
    """``v = 0`` and ``A`` antisymmetric; compared with ``d omega = 0`` when
    the algebra and structure are given."""
    flag = all_zero(data.v, tol) and all_zero(_sym_h(data.A, data), tol)
    if g is not None and h is not None:
        direct = ce_d(g, h.omega).is_zero(tol)
        if direct != flag:
            raise ConsistencyError(f"Kahler test disagrees: data says {flag}, d omega = 0 is {direct}")
    return flag


def check_balanced(data: AlmostAbelianData, tol=DEFAULT_TOL) -> bool:
    """Lee form vanishes: ``Tr A = 0`` and ``v = 0``."""
    return all_zero(np.array([trace(data.A)], dtype=object), tol) and all_zero(data.v, tol)


def check_lcb(data: AlmostAbelianData, g: LieAlgebra = None, theta=None, tol=DEFAULT_TOL) -> bool:
    """``d theta = e^2n ^ (J A^T v)^flat`` vanishes iff ``A^T v = 0``."""
    flag = all_zero(_adj(data.A, data) @ data.v, tol)
    if g is not None and theta is not None:
        direct = ce_d(g, theta).is_zero(tol)
        if direct != flag:
            raise ConsistencyError(f"LCB test disagrees: data says {flag}, d theta = 0 is {direct}")
    return flag


def check_brf(data: AlmostAbelianData, tol=DEFAULT_TOL) -> bool:
    """``a^2 - a Tr(A)/2 = -|v|^2`` and ``A^T v = 0``."""
    a = data.a
    s = data.norm2 * (a * a - a * trace(data.A) / 2) + data.v_norm2()
    return all_zero(np.array([s], dtype=object), tol) and all_zero(_adj(data.A, data) @ data.v, tol)


def _alpha_adapted(data, alpha):
    """Values of alpha on the stored adapted basis."""
    x = alpha.to_vector() if isinstance(alpha, InvariantForm) else np.asarray(alpha)
    return x @ data.basis


def check_lcskt_conditions(data: AlmostAbelianData, alpha, tol=DEFAULT_TOL, domain="n1") -> bool:
    """The four conditions characterizing ``dH = alpha ^ H`` for a closed
    ``alpha`` in terms of ``(a, v, A)``.

    The last two are bilinear identities checked on the adapted basis.
    ``domain="n1"`` lets ``Y, Z`` range over ``n_1``, where ``J_1`` lives;
    ``domain="n"`` lets them range over ``n``, with ``J_1 e_1 = 0``.
    """
    vals = _alpha_adapted(data, alpha)
    al1, al_n1, al2n = vals[0], vals[1:-1], vals[-1]
    a, v, A, h, J1 = data.a, data.v, data.A, data.h, data.J1
    m = A.shape[0]
    # alpha(a e_1 + v) = 0
    if not all_zero(np.array([a * al1 + al_n1 @ v], dtype=object), tol):
        return False
    # alpha o A = 0
    if m and not all_zero(al_n1 @ A, tol):
        return False
    if m == 0:
        return True
    SA = _sym_h(A, data)  # 2 S(A)
    T = (SA @ J1).T @ h  # T[y, z] = 2 g(S(A) J_1 e_y, e_z)
    C = _sym_h((a + al2n) * A + A @ A + _adj(A, data) @ A, data)  # 2 S(...)
    L = (C @ J1).T @ h
    hv = h @ v
    if domain == "n":
        # extend with e_1 in slot 0, where J_1 and h-pairings with n_1 vanish
        T = _pad(T)
        L = _pad(L)
        hv = np.concatenate([np.array([Fraction(0)], dtype=object), hv])
        al = np.concatenate([np.array([al1], dtype=object), al_n1])
    else:
        al = al_n1
    # alpha(X) T(Y, Z) - alpha(Y) T(X, Z) + alpha(Z) T(Y, X) = 0
    e13 = (np.einsum("x,yz->xyz", al, T) - np.einsum("y,xz->xyz", al, T)
           + np.einsum("z,yx->xyz", al, T))
    if not all_zero(e13, tol):
        return False
    # g(S(...) J_1 Y, Z) = (g(v, Y) alpha(Z) - g(v, Z) alpha(Y)) / 2, both sides doubled
    rhs = np.outer(hv, al) - np.outer(al, hv)
    return all_zero(L - rhs, tol)


def _pad(M):
    m = M.shape[0]
    out = zeros(m + 1, m + 1) if is_exact(M) else np.zeros((m + 1, m + 1))
    out[1:, 1:] = M
    return out


def check_antisym_consequence(data: AlmostAbelianData, alpha, tol=DEFAULT_TOL) -> bool:
    """``(a + alpha(e_2n)) A + A^2 + A^T A`` is antisymmetric."""
    al2n = _alpha_adapted(data, alpha)[-1]
    A = data.A
    X = (data.a + al2n) * A + A @ A + _adj(A, data) @ A
    return all_zero(_sym_h(X, data), tol)


# ---------------------------------------------------------------------------
# combined verdict
# ---------------------------------------------------------------------------

@dataclass
class StructureVerdict:
    kaehler: bool
    skt: bool
    twisted_skt: bool
    lcskt: bool
    balanced: bool
    lcb: bool
    bismut_ricci_flat: bool
    alpha_space: AlphaSpace
    data: AlmostAbelianData = field(repr=False, default=None)
    spectrum: SpectralReport = field(repr=False, default=None)
    torsion: InvariantForm = field(repr=False, default=None)
    lee: InvariantForm = field(repr=False, default=None)
    ricci: InvariantForm = field(repr=False, default=None)

    FLAGS = ("kaehler", "skt", "twisted_skt", "lcskt", "balanced", "lcb", "bismut_ricci_flat")

    def flags(self):
        return {k: getattr(self, k) for k in self.FLAGS}

    def as_dict(self):
        out = dict(self.flags())
        out["alpha_space"] = self.alpha_space.as_dict()
        if self.data is not None:
            out["data"] = self.data.as_dict()
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum.as_dict()
        for name in ("torsion", "lee", "ricci"):
            f = getattr(self, name)
            if f is not None:
                out[name] = str(f)
        return out


def verdict(g: LieAlgebra, J, metric, tol=DEFAULT_TOL, check=True) -> StructureVerdict:
    """All metric-fixed flags for ``(g, J, metric)``.

    With ``check`` set, every flag that has two independent computations is
    computed both ways and a disagreement raises ``ConsistencyError``.
    """
    h = HermitianStructure(J, metric, tol)
    data = extract_data(g, h.J, h.metric, tol=tol)
    H = bismut_torsion(g, h)
    space = solve_alpha(g, h, H, tol)
    theta = lee_form(g, h, data, check=check)
    skt = space.contains_zero()
    if check and skt != check_skt(data, tol):
        raise ConsistencyError("SKT test disagrees between dH = 0 and the (a, v, A) condition")
    kaehler = check_kahler(data, g if check else None, h if check else None, tol)
    if check and kaehler and not H.is_zero(tol):
        raise ConsistencyError("Kahler structure with nonzero torsion")
    ricci = bismut_ricci(data, h)
    brf = check_brf(data, tol)
    if check and brf != ricci.is_zero(tol):
        raise ConsistencyError("Bismut Ricci flatness disagrees with the closed-form 2-form")
    spec = eigen(data.A, tol) if data.A.size else None
    return StructureVerdict(
        kaehler=kaehler,
        skt=skt,
        twisted_skt=not space.is_empty(),
        lcskt=space.has_nonzero(),
        balanced=theta.is_zero(tol),
        lcb=check_lcb(data, g if check else None, theta if check else None, tol),
        bismut_ricci_flat=brf,
        alpha_space=space,
        data=data,
        spectrum=spec,
        torsion=H,
        lee=theta,
        ricci=ricci,
    )
