"""Exact rational linear algebra helpers.

Matrices are exchanged as numpy object arrays of ``fractions.Fraction``;
elimination is delegated to sympy's ``DomainMatrix`` over QQ, which uses
gmpy2 rationals when available.
"""

from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = [
    "frac", "fmt", "as_exact", "to_dm", "from_dm", "rref", "rank", "nullspace",
    "solve", "inverse", "column_echelon", "to_float", "is_zero", "identity",
    "exact_matmul", "is_positive_definite", "charpoly_coeffs", "lcm_denominator",
]


def frac(x):
    """Convert ints, strings like ``"p/q"``, Fractions or gmpy2 rationals to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not np.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def fmt(x):
    """Serialize a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    x = frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_exact(a):
    """Return an object ndarray of Fractions with the same shape as ``a``."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = frac(v)
    return out


def identity(n):
    out = np.empty((n, n), dtype=object)
    out[...] = Fraction(0)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def _qq(x):
    f = frac(x)
    return QQ(f.numerator, f.denominator)


def to_dm(a):
    a = np.asarray(a, dtype=object)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    rows, cols = a.shape
    return DomainMatrix([[_qq(v) for v in row] for row in a.tolist()], (rows, cols), QQ)


def from_dm(m):
    rows, cols = m.shape
    out = np.empty((rows, cols), dtype=object)
    dense = m.to_list()
    for i in range(rows):
        for j in range(cols):
            out[i, j] = frac(dense[i][j])
    return out


def exact_matmul(a, b):
    """Exact product of two Fraction matrices."""
    return from_dm(to_dm(a) * to_dm(b))


def rref(a):
    """Reduced row echelon form and pivot columns."""
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return a.copy(), ()
    r, piv = to_dm(a).rref()
    return from_dm(r), tuple(piv)


def rank(a):
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return 0
    return to_dm(a).rank()


def nullspace(a, ncols=None):
    """Basis of {x : a x = 0}, returned as the columns of an object array.

    Tall systems are first compressed through ``aᵀa``, which has the same
    kernel over the rationals and is much cheaper to eliminate.
    """
    a = np.asarray(a, dtype=object)
    if ncols is None:
        ncols = a.shape[1]
    if a.size == 0:
        return identity(ncols)
    m = to_dm(a)
    if a.shape[0] > 2 * a.shape[1]:
        m = m.transpose() * m
    ns = m.nullspace()
    if ns.shape[0] == 0:
        return np.empty((ncols, 0), dtype=object)
    return from_dm(ns).T


def solve(a, b):
    """Exact solution of a x = b; raises ValueError when inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides. When the
    solution is not unique the particular solution with free variables
    set to zero is returned.
    """
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    n = a.shape[1]
    aug = np.concatenate([a, bb], axis=1)
    r, piv = rref(aug)
    if any(p >= n for p in piv):
        raise ValueError("inconsistent linear system")
    x = np.empty((n, bb.shape[1]), dtype=object)
    x[...] = Fraction(0)
    for row, p in enumerate(piv):
        x[p, :] = r[row, n:]
    return x[:, 0] if vec else x


def inverse(a):
    a = np.asarray(a, dtype=object)
    m = to_dm(a)
    if m.rank() != a.shape[0]:
        raise ValueError("singular matrix")
    return from_dm(m.inv())


def column_echelon(cols):
    """Canonical basis of a column span: reduced column echelon form.

    Returns an object array whose columns are the nonzero rows of
    rref(colsᵀ), so equal spans give identical arrays.
    """
    cols = np.asarray(cols, dtype=object)
    if cols.ndim == 1:
        cols = cols.reshape(-1, 1)
    if cols.shape[1] == 0:
        return cols.copy()
    r, piv = rref(cols.T)
    return r[: len(piv), :].T.copy()


def to_float(a):
    return np.asarray(a, dtype=object).astype(float)


def is_zero(a):
    return all(v == 0 for v in np.asarray(a, dtype=object).ravel())


def is_positive_definite(gram):
    """Exact test via symmetric Gaussian elimination (Sylvester's criterion)."""
    g = as_exact(gram).copy()
    n = g.shape[0]
    for k in range(n):
        piv = g[k, k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = g[i, k] / piv
            if f:
                g[i, k:] = g[i, k:] - f * g[k, k:]
    return True


def charpoly_coeffs(a):
    """Characteristic polynomial coefficients, leading first, as Fractions."""
    return [frac(c) for c in to_dm(a).charpoly()]


def lcm_denominator(values):
    from math import lcm
    out = 1
    for v in values:
        out = lcm(out, frac(v).denominator)
    return out
