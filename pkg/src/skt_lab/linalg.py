"""Scalars and small dense linear algebra.

Two towers are used throughout the package.  Exact computations run on
``fractions.Fraction`` entries stored in numpy ``object`` arrays; anything
spectral (eigenvalues, clustering of real parts) runs in floating point with
an absolute tolerance.  A matrix is "exact" when every entry is an int or a
Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    pass


class DomainError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def to_scalar(x):
    """Coerce ``x`` to the exact tower when possible, else to float."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if hasattr(x, "p") and hasattr(x, "q"):  # sympy Rational
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return complex(x)
    raise TypeError(f"cannot interpret {x!r} as a scalar")


def is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def is_zero(x, tol=DEFAULT_TOL) -> bool:
    if is_exact_scalar(x):
        return x == 0
    return abs(x) <= tol


def rational_sqrt(x):
    """Exact square root of a non-negative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(x):
    r = rational_sqrt(x) if is_exact_scalar(x) else None
    return r if r is not None else math.sqrt(float(x))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def mat(rows) -> np.ndarray:
    """Build a matrix (or vector), exact when all entries allow it."""
    arr = np.array(rows, dtype=object)
    flat = [to_scalar(x) for x in arr.ravel()]
    if all(isinstance(x, Fraction) for x in flat):
        out = np.empty(arr.shape, dtype=object)
        out.ravel()[:] = flat
        return out
    if any(isinstance(x, complex) for x in flat):
        return np.array(flat, dtype=complex).reshape(arr.shape)
    return np.array([float(x) for x in flat], dtype=float).reshape(arr.shape)


def is_exact(m) -> bool:
    m = np.asarray(m)
    return m.dtype == object and all(is_exact_scalar(x) for x in m.ravel())


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(*shape) -> np.ndarray:
    return np.full(shape, Fraction(0), dtype=object)


def to_float(m) -> np.ndarray:
    m = np.asarray(m)
    if m.dtype == object:
        if any(isinstance(x, complex) for x in m.ravel()):
            return np.array(m.tolist(), dtype=complex)
        return np.array(m.tolist(), dtype=float)
    return m


def all_zero(m, tol=DEFAULT_TOL) -> bool:
    return all(is_zero(x, tol) for x in np.asarray(m).ravel())


def _square(m, name="matrix"):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def symmetric_part(m) -> np.ndarray:
    m = _square(m)
    half = Fraction(1, 2) if is_exact(m) else 0.5
    return (m + m.T) * half


def is_symmetric(m, tol=DEFAULT_TOL) -> bool:
    m = _square(m)
    return all_zero(m - m.T, tol)


def is_antisymmetric(m, tol=DEFAULT_TOL) -> bool:
    m = _square(m)
    return all_zero(m + m.T, tol)


def commutator(x, y):
    return x @ y - y @ x


def trace(m):
    m = _square(m)
    return sum((m[i, i] for i in range(m.shape[0])), Fraction(0) if is_exact(m) else 0.0)


def frobenius_sq(m):
    m = np.asarray(m)
    return sum((x * x for x in m.ravel()), Fraction(0) if is_exact(m) else 0.0)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def rref(m, tol=DEFAULT_TOL):
    """Reduced row echelon form and pivot columns.

    Works over any field whose elements support ``+ - * /``; exact entries
    pivot on the first nonzero, float entries on the largest magnitude.
    """
    m = np.asarray(m)
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = m.shape[1] if m.ndim == 2 else 0
    exact = m.dtype == object and all(not isinstance(x, (float, complex)) for x in m.ravel())
    scale = 1.0 if exact or m.size == 0 else max(1.0, float(np.max(np.abs(to_float(m)))))
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        if exact:
            p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        else:
            p = max(range(r, nrows), key=lambda i: abs(rows[i][c]))
            if abs(rows[p][c]) <= tol * scale:
                p = None
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if (f != 0) if exact else (abs(f) > 0):
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    out = np.array(rows, dtype=object if exact else m.dtype).reshape(m.shape)
    return out, pivots


def rank(m, tol=DEFAULT_TOL) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, tol)[1])


def nullspace(m, tol=DEFAULT_TOL) -> list:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = np.asarray(m)
    ncols = m.shape[1]
    R, piv = rref(m, tol)
    exact = R.dtype == object
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    basis = []
    for f in (c for c in range(ncols) if c not in piv):
        x = np.full(ncols, zero, dtype=object if exact else R.dtype)
        x[f] = one
        for i, p in enumerate(piv):
            x[p] = -R[i, f]
        basis.append(x)
    return basis


def solve_affine(m, b, tol=DEFAULT_TOL):
    """All solutions of ``m x = b`` as ``(particular, null_basis)``.

    ``particular`` is None when the system is inconsistent; free variables
    are set to zero in the particular solution.
    """
    m = np.asarray(m)
    b = np.asarray(b).reshape(-1, 1)
    aug = np.hstack([m, b])
    R, piv = rref(aug, tol)
    ncols = m.shape[1]
    if ncols in piv:
        return None, []
    exact = R.dtype == object
    x = np.full(ncols, Fraction(0) if exact else 0.0, dtype=object if exact else R.dtype)
    for i, p in enumerate(piv):
        x[p] = R[i, ncols]
    return x, nullspace(m, tol)


def inverse(m, tol=DEFAULT_TOL) -> np.ndarray:
    m = _square(m)
    n = m.shape[0]
    if not is_exact(m):
        return np.linalg.inv(to_float(m))
    R, piv = rref(np.hstack([m, identity(n)]), tol)
    if piv[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    return R[:, n:]


def det(m):
    m = _square(m)
    if not is_exact(m):
        return float(np.linalg.det(to_float(m)))
    rows = [list(r) for r in m]
    n = len(rows)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        piv = rows[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = rows[i][c] / piv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def in_column_span(m, x, tol=DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    x = np.asarray(x).reshape(-1, 1)
    if m.size == 0:
        return all_zero(x, tol)
    return rank(np.hstack([m, x]), tol) == rank(m, tol)


def column_stack(vectors, n):
    if not vectors:
        return zeros(n, 0)
    return np.column_stack(vectors)


def is_positive_definite(g, tol=DEFAULT_TOL) -> bool:
    g = _square(g, "Gram matrix")
    if not is_symmetric(g, tol):
        return False
    if is_exact(g):
        # symmetric elimination: positive definite iff every pivot is positive
        m = [list(r) for r in g]
        n = len(m)
        for k in range(n):
            p = m[k][k]
            if p <= 0:
                return False
            for i in range(k + 1, n):
                f = m[i][k] / p
                if f:
                    for j in range(k + 1, n):
                        m[i][j] -= f * m[k][j]
        return True
    try:
        np.linalg.cholesky(to_float(g))
    except np.linalg.LinAlgError:
        return False
    return bool(np.min(np.linalg.eigvalsh(to_float(g))) > tol)


def require_spd(g, tol=DEFAULT_TOL, name="metric"):
    if not is_positive_definite(g, tol):
        raise DomainError(f"{name} is not symmetric positive definite")


def adjoint(m, gram):
    """Adjoint of ``m`` with respect to the inner product ``gram``."""
    return inverse(gram) @ np.asarray(m).T @ gram


def is_normal(m, gram=None, tol=DEFAULT_TOL) -> bool:
    m = _square(m)
    if gram is None:
        gram = identity(m.shape[0])
    require_spd(gram, tol, "gram")
    ms = adjoint(m, gram)
    return all_zero(m @ ms - ms @ m, tol)


def matrix_poly(coeffs, m):
    """Evaluate ``sum coeffs[k] m^k`` (lowest degree first) by Horner."""
    m = _square(m)
    n = m.shape[0]
    if is_exact(m) and all(is_exact_scalar(c) for c in coeffs):
        eye, acc = identity(n), zeros(n, n)
    else:
        m = to_float(m).astype(complex)
        eye, acc = np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex)
    for c in reversed(list(coeffs)):
        acc = acc @ m + eye * c
    return acc


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple  # ((complex, multiplicity), ...)
    diagonalizable: bool
    real_part_classes: tuple
    mu: float | None = None
    tol: float = DEFAULT_TOL
    exact: bool = field(default=False, compare=False)

    @property
    def nonzero_classes(self):
        return tuple(x for x in self.real_part_classes if x != 0.0)

    @property
    def all_imaginary(self) -> bool:
        return not self.nonzero_classes

    @property
    def admissible(self) -> bool:
        """Diagonalizable with real parts inside ``{0, mu}`` for one mu."""
        return self.diagonalizable and len(self.nonzero_classes) <= 1

    def as_dict(self):
        return {
            "eigenvalues": [[z.real, z.imag, k] for z, k in self.eigenvalues],
            "diagonalizable": self.diagonalizable,
            "real_part_classes": list(self.real_part_classes),
            "mu": self.mu,
        }


def cluster(values, tol=DEFAULT_TOL):
    """Single-linkage clustering of reals; clusters near 0 snap to 0."""
    vals = sorted(float(v) for v in values)
    groups = []
    for v in vals:
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    reps = []
    for g in groups:
        rep = sum(g) / len(g)
        reps.append(0.0 if any(abs(x) <= tol for x in g) else rep)
    return tuple(sorted(set(reps)))


def _charpoly_exact(m):
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    n = m.shape[0]
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in m], (n, n), QQ)
    return dm.charpoly()


def _sqf_factors(m):
    """Square-free decomposition of the characteristic polynomial.

    Returns ``[(coeffs_high_to_low as Fractions, multiplicity), ...]``.
    """
    from sympy import Poly, QQ, Symbol

    x = Symbol("x")
    coeffs = _charpoly_exact(m)
    p = Poly([QQ(c) for c in coeffs], x, domain=QQ)
    _, factors = p.sqf_list()
    out = []
    for f, k in factors:
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in f.all_coeffs()]
        out.append((cs, k))
    return out


def eigen(m, tol=DEFAULT_TOL) -> SpectralReport:
    """Eigenvalues with multiplicities, diagonalizability, real-part classes.

    Exact matrices are decided exactly: the matrix is diagonalizable over C
    iff the square-free part of its characteristic polynomial annihilates it.
    Roots are then found numerically, one simple-rooted factor at a time.
    """
    m = _square(m)
    n = m.shape[0]
    if n == 0:
        return SpectralReport((), True, (), None, tol, True)
    if is_exact(m):
        factors = _sqf_factors(m)
        radical = [Fraction(1)]
        eigs = []
        for cs, k in factors:
            radical = list(np.convolve(np.array(radical, dtype=object), np.array(cs, dtype=object)))
            if len(cs) > 1:
                for z in np.roots([float(c) for c in cs]):
                    eigs.append((complex(z), k))
        diag = all_zero(matrix_poly(list(reversed(radical)), m))
        exact = True
    else:
        mf = to_float(m)
        raw = np.linalg.eigvals(mf)
        # defective eigenvalues split by about eps**(1/k); cluster loosely
        ctol = max(tol, math.sqrt(tol))
        eigs_c = []
        for z in sorted(raw, key=lambda z: (z.real, z.imag)):
            for e in eigs_c:
                if abs(e[0] - z) <= ctol:
                    e[1].append(z)
                    break
            else:
                eigs_c.append([z, [z]])
        eigs = [(complex(np.mean(g)), len(g)) for _, g in eigs_c]
        diag = True
        for z, k in eigs:
            geo = n - np.linalg.matrix_rank(mf - z * np.eye(n), tol=ctol)
            if geo < k:
                diag = False
        exact = False
    eigs.sort(key=lambda e: (round(e[0].real, 12), round(e[0].imag, 12)))
    eigs = tuple((complex(0.0 if abs(z.real) <= tol else z.real, 0.0 if abs(z.imag) <= tol else z.imag), k)
                 for z, k in eigs)
    classes = cluster([z.real for z, _ in eigs], tol)
    nonzero = [c for c in classes if c != 0.0]
    mu = nonzero[0] if len(nonzero) == 1 else None
    return SpectralReport(eigs, bool(diag), classes, mu, tol, exact)


def norm_estimate_check(m):
    """``(|S(m)|_F^2, sum of Re(lambda)^2)``; the first dominates the second,
    with equality exactly for normal ``m``."""
    m = _square(m)
    lhs = frobenius_sq(symmetric_part(m))
    if m.shape[0] == 0:
        return lhs, 0.0
    rhs = float(sum(z.real ** 2 for z in np.linalg.eigvals(to_float(m))))
    return lhs, rhs
