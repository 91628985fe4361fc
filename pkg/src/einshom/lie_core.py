"""Exact-arithmetic Lie algebra kernel.

A :class:`LieAlgebra` stores structure constants ``c[i][j][k]`` with
``[e_i, e_j] = sum_k c[i][j][k] e_k`` as Fractions.  Sums of products of
structure constants (Jacobi, Killing form) are evaluated on an
integer-scaled copy of the tensor so they stay exact while running at
numpy speed.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json

import numpy as np

from . import _exact as ex

__all__ = [
    "LieAlgebra", "Subspace", "BilinearForm", "MatrixBasis", "CartanSplitReport",
    "bracket", "bracket_columns", "verify_jacobi", "killing_form", "trace_ad", "derived_subalgebra",
    "derived_series", "direct_sum", "verify_cartan_split", "from_matrices",
    "sl2r", "su2", "abelian", "solvable_2d", "toy_sl2r_su2",
]

_INT_LIMIT = 1 << 20


class LieAlgebra:
    """Finite-dimensional real Lie algebra given by exact structure constants.

    ``structure`` is either a mapping ``{(i, j): {k: value}}`` listing
    brackets with ``i < j`` (antisymmetric completion is implicit) or a
    dense ``dim x dim x dim`` array.  Instances are treated as immutable.
    """

    def __init__(self, structure, labels=None, dim=None, name=""):
        if isinstance(structure, dict):
            if dim is None:
                dim = len(labels) if labels is not None else 0
            c = np.empty((dim, dim, dim), dtype=object)
            c[...] = Fraction(0)
            for (i, j), terms in structure.items():
                if i == j:
                    continue
                for k, v in terms.items():
                    v = ex.frac(v)
                    if i < j:
                        c[i, j, k] = v
                        c[j, i, k] = -v
                    else:
                        c[j, i, k] = -v
                        c[i, j, k] = v
        else:
            c = ex.as_exact(structure)
            dim = c.shape[0]
            if c.shape != (dim, dim, dim):
                raise ValueError("structure tensor must be dim x dim x dim")
            for i in range(dim):
                for j in range(i, dim):
                    if any(c[i, j, k] != -c[j, i, k] for k in range(dim)):
                        raise ValueError(f"structure constants not antisymmetric at ({i},{j})")
        if labels is None:
            labels = [f"e{i}" for i in range(dim)]
        if len(labels) != dim:
            raise ValueError("label count does not match dimension")
        self._c = c
        self._c.setflags(write=False)
        self.dim = int(dim)
        self.basis_labels = tuple(str(s) for s in labels)
        self.name = name
        self._cache = {}

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    # structure access -------------------------------------------------
    @property
    def structure(self):
        """Sparse ``{(i, j): {k: Fraction}}`` listing with ``i < j``."""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = {k: self._c[i, j, k] for k in range(self.dim) if self._c[i, j, k] != 0}
                if terms:
                    out[(i, j)] = terms
        return out

    def c(self, i, j, k):
        return self._c[i, j, k]

    @property
    def tensor(self):
        """Dense exact tensor (read-only object array)."""
        return self._c

    @property
    def float_tensor(self):
        if "float" not in self._cache:
            self._cache["float"] = ex.to_float(self._c)
        return self._cache["float"]

    @property
    def int_tensor(self):
        """Pair ``(C, L)`` with ``C`` integral and ``c = C / L`` exactly."""
        if "int" not in self._cache:
            L = ex.lcm_denominator(self._c.ravel()) if self.dim else 1
            scaled = np.empty(self._c.shape, dtype=object)
            for idx, v in np.ndenumerate(self._c):
                scaled[idx] = int(v * L)
            big = max((abs(v) for v in scaled.ravel()), default=0)
            arr = scaled.astype(np.int64) if big < _INT_LIMIT else scaled
            self._cache["int"] = (arr, L)
        return self._cache["int"]

    def ad(self, x):
        """Exact matrix of ad_x; column j holds the coordinates of [x, e_j]."""
        C, L = self.int_tensor
        xi, dx = _int_scale(ex.as_exact(x))
        raw = np.einsum("i,ijk->kj", _fit(xi, C, self.dim), C)
        return _unscale(raw, dx * L)

    def ad_basis(self, i):
        return self._c[i].T.copy()

    def zero_vector(self):
        return ex.as_exact(np.zeros(self.dim, dtype=int))

    def unit(self, i):
        v = self.zero_vector()
        v[i] = Fraction(1)
        return v

    def vector(self, mapping):
        """Coordinate vector from ``{label or index: coefficient}``."""
        v = self.zero_vector()
        for key, coef in mapping.items():
            idx = self.basis_labels.index(key) if isinstance(key, str) else int(key)
            v[idx] += ex.frac(coef)
        return v

    # serialization ----------------------------------------------------
    def to_json(self):
        brackets = []
        for (i, j), terms in sorted(self.structure.items()):
            brackets.append([i, j, [[k, ex.fmt(v)] for k, v in sorted(terms.items())]])
        return {"dim": self.dim, "labels": list(self.basis_labels), "brackets": brackets}

    @classmethod
    def from_json(cls, data, name=""):
        if isinstance(data, str):
            data = json.loads(data)
        dim = int(data["dim"])
        structure = {}
        for i, j, terms in data["brackets"]:
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket indices must satisfy 0 <= i < j < dim, got ({i},{j})")
            structure[(int(i), int(j))] = {int(k): ex.frac(v) for k, v in terms}
        return cls(structure, labels=data.get("labels"), dim=dim, name=name or data.get("name", ""))

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash((self.dim, tuple(self._c.ravel())))


class Subspace:
    """Linear subspace of a Lie algebra, spanned by coordinate columns.

    The given columns are kept as an ordered basis (``basis``); equality
    uses the reduced column echelon form (``canonical``).
    """

    def __init__(self, parent, cols=None, check=True):
        self.parent = parent
        if cols is None:
            cols = np.empty((parent.dim, 0), dtype=object)
        cols = ex.as_exact(cols)
        if cols.ndim == 1:
            cols = cols.reshape(-1, 1)
        if cols.shape[0] != parent.dim:
            raise ValueError("column length does not match parent dimension")
        if check and cols.shape[1] and ex.rank(cols) != cols.shape[1]:
            raise ValueError("subspace columns are linearly dependent")
        self.basis = cols
        self.basis.setflags(write=False)
        self._canon = None

    @classmethod
    def spanned_by(cls, parent, vectors):
        """Subspace spanned by possibly dependent vectors (canonical basis)."""
        cols = ex.as_exact(np.column_stack(list(vectors))) if len(vectors) else None
        if cols is None:
            return cls(parent)
        return cls(parent, ex.column_echelon(cols), check=False)

    @classmethod
    def full(cls, parent):
        return cls(parent, ex.identity(parent.dim), check=False)

    @classmethod
    def from_indices(cls, parent, indices):
        return cls(parent, ex.identity(parent.dim)[:, list(indices)], check=False)

    @property
    def span(self):
        return self.basis

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def canonical(self):
        if self._canon is None:
            self._canon = ex.column_echelon(self.basis)
        return self._canon

    def vectors(self):
        return [self.basis[:, i] for i in range(self.dim)]

    def contains(self, v):
        v = ex.as_exact(v).reshape(-1, 1)
        if self.dim == 0:
            return ex.is_zero(v)
        return ex.rank(np.concatenate([self.basis, v], axis=1)) == self.dim

    def contains_subspace(self, other):
        if other.dim == 0:
            return True
        return ex.rank(np.concatenate([self.basis, other.basis], axis=1)) == self.dim

    def coords(self, v):
        """Coordinates of ``v`` in the ordered basis; ValueError if outside."""
        return ex.solve(self.basis, ex.as_exact(v))

    def __add__(self, other):
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        return Subspace.spanned_by(self.parent, self.vectors() + other.vectors())

    def intersection(self, other):
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.parent)
        ns = ex.nullspace(np.concatenate([self.basis, -other.basis], axis=1))
        if ns.shape[1] == 0:
            return Subspace(self.parent)
        vecs = ex.exact_matmul(self.basis, ns[: self.dim, :])
        return Subspace(self.parent, ex.column_echelon(vecs), check=False)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.parent is other.parent or self.parent == other.parent) and self.dim == other.dim and bool(
            np.all(self.canonical == other.canonical))

    def __hash__(self):
        return hash((id(self.parent), tuple(self.canonical.ravel())))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.parent!r})"

    def bracket_with(self, other):
        """Span of all brackets between basis vectors of self and other."""
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.parent)
        cols = bracket_columns(self.parent, self.basis, other.basis)
        return Subspace(self.parent, ex.column_echelon(cols), check=False)

    def is_subalgebra(self):
        return self.contains_subspace(self.bracket_with(self))

    def is_ideal(self):
        return self.contains_subspace(Subspace.full(self.parent).bracket_with(self))


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form on a Lie algebra given by an exact Gram matrix."""

    parent: LieAlgebra
    gram: np.ndarray = field(repr=False)

    def __post_init__(self):
        g = ex.as_exact(self.gram)
        if g.shape != (self.parent.dim, self.parent.dim):
            raise ValueError("gram matrix has the wrong shape")
        if not np.all(g == g.T):
            raise ValueError("gram matrix is not symmetric")
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)

    def __call__(self, x, y):
        return ex.as_exact(x) @ self.gram @ ex.as_exact(y)

    def restrict(self, S):
        """Gram matrix of the form on the ordered basis of ``S``."""
        if S.dim == 0:
            return S.basis.T @ S.basis
        return ex.exact_matmul(ex.exact_matmul(S.basis.T, self.gram), S.basis)

    def orthogonal_complement(self, S, within=None):
        """Form-orthogonal complement of ``S`` inside ``within`` (default: everything)."""
        W = within if within is not None else Subspace.full(self.parent)
        if S.dim == 0:
            return W
        rows = S.basis.T @ self.gram @ W.basis
        ns = ex.nullspace(rows, W.dim)
        if ns.shape[1] == 0:
            return Subspace(self.parent)
        return Subspace(self.parent, ex.column_echelon(W.basis @ ns), check=False)

    def is_ad_invariant(self):
        """B([x,y],z) + B(y,[x,z]) = 0 on all basis triples, exactly."""
        C, _ = self.parent.int_tensor
        G, _ = _int_scale(self.gram)
        if C.dtype != object and max((abs(v) for v in G.ravel()), default=0) < 1 << 20:
            G = G.astype(np.int64)
        else:
            C = C.astype(object)
        # C[i, j, k]: [e_i, e_j] = sum_k C[i, j, k] e_k
        m = np.einsum("ijk,kl->ijl", C, G)
        return not np.any(m + m.transpose(0, 2, 1))

    def is_nondegenerate(self, S=None):
        g = self.gram if S is None else self.restrict(S)
        return g.shape[0] == 0 or ex.rank(g) == g.shape[0]


@dataclass(frozen=True)
class CartanSplitReport:
    """Itemized result of :func:`verify_cartan_split`."""

    items: dict

    @property
    def ok(self):
        return all(self.items.values())

    def __bool__(self):
        return self.ok


# operations -----------------------------------------------------------------

def _int_scale(a):
    """Integer array and common denominator with ``a == ints / den``."""
    den = ex.lcm_denominator(a.ravel()) if a.size else 1
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = int(v * den)
    return out, den


def _fit(ints, C, dim):
    # int64 when the einsum cannot overflow, Python ints otherwise
    big = max((abs(v) for v in ints.ravel()), default=0)
    cmax = int(np.max(np.abs(C))) if C.size else 0
    if (big + 1) ** 2 * (cmax + 1) * (dim + 1) ** 2 < 1 << 62 and C.dtype != object:
        return ints.astype(np.int64)
    return ints


def _unscale(raw, den):
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        out[idx] = Fraction(int(v), den)
    return out


def bracket_columns(L, X, Y):
    """All brackets [X_a, Y_b] of the columns of X and Y, as columns (a-major)."""
    C, den = L.int_tensor
    Xi, dx = _int_scale(ex.as_exact(X))
    Yi, dy = _int_scale(ex.as_exact(Y))
    Xi, Yi = _fit(Xi, C, L.dim), _fit(Yi, C, L.dim)
    if Xi.dtype == object or Yi.dtype == object:
        Xi, Yi, Cc = Xi.astype(object), Yi.astype(object), C.astype(object)
    else:
        Cc = C
    raw = np.einsum("ia,jb,ijk->kab", Xi, Yi, Cc).reshape(L.dim, -1)
    return _unscale(raw, dx * dy * den)


def bracket(L, x, y):
    """Coordinates of [x, y] from coordinate vectors ``x`` and ``y``."""
    x = ex.as_exact(x)
    y = ex.as_exact(y)
    if x.shape != (L.dim,) or y.shape != (L.dim,):
        raise ValueError(f"expected vectors of length {L.dim}, got {x.shape} and {y.shape}")
    return bracket_columns(L, x.reshape(-1, 1), y.reshape(-1, 1))[:, 0]


def verify_jacobi(L):
    """Largest absolute Jacobi violation over basis triples, as an exact rational."""
    if L.dim == 0:
        return Fraction(0)
    C, den = L.int_tensor
    J = (np.einsum("jlk,ikm->ijlm", C, C) + np.einsum("lik,jkm->ijlm", C, C)
         + np.einsum("ijk,lkm->ijlm", C, C))
    worst = int(np.max(np.abs(J)))
    return Fraction(worst, den * den)


def killing_form(L):
    """Killing form B(x, y) = tr(ad_x ad_y), exactly."""
    C, den = L.int_tensor
    B = np.einsum("ikl,jlk->ij", C, C)
    gram = np.empty(B.shape, dtype=object)
    for idx, v in np.ndenumerate(B):
        gram[idx] = Fraction(int(v), den * den)
    return BilinearForm(L, gram)


def trace_ad(L, x, within=None):
    """Trace of ad_x, on the whole algebra or restricted to the subspace ``within``.

    ``within`` must be ad_x-invariant (for instance a subalgebra containing x).
    """
    ad = L.ad(x)
    if within is None:
        return sum((ad[i, i] for i in range(L.dim)), Fraction(0))
    image = ad @ within.basis
    coeffs = ex.solve(within.basis, image)
    return sum((coeffs[i, i] for i in range(within.dim)), Fraction(0))


def derived_subalgebra(S):
    """[S, S]; raises ValueError when ``S`` is not closed under the bracket."""
    D = S.bracket_with(S)
    if not S.contains_subspace(D):
        raise ValueError("subspace is not a subalgebra")
    return D


def derived_series(S, max_len=None):
    """List S, S', S'', ... until it stabilizes."""
    out = [S]
    while True:
        nxt = derived_subalgebra(out[-1])
        if nxt == out[-1] or (max_len and len(out) >= max_len):
            return out
        out.append(nxt)
        if nxt.dim == 0:
            return out


def direct_sum(L1, L2, name=""):
    """Direct sum with block structure constants; each summand is an ideal."""
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    c = np.empty((n, n, n), dtype=object)
    c[...] = Fraction(0)
    c[:n1, :n1, :n1] = L1.tensor
    c[n1:, n1:, n1:] = L2.tensor
    labels = list(L1.basis_labels) + list(L2.basis_labels)
    if len(set(labels)) != len(labels):
        labels = [f"{s}_1" for s in L1.basis_labels] + [f"{s}_2" for s in L2.basis_labels]
    return LieAlgebra(c, labels=labels, name=name or f"{L1.name}+{L2.name}")


def verify_cartan_split(L, k, p):
    """Check the bracket relations and Killing-form signs of g = k + p."""
    if k.dim + p.dim != L.dim:
        raise ValueError("dim k + dim p must equal dim g")
    B = killing_form(L)
    items = {
        "spans_g": (k + p).dim == L.dim,
        "[k,k] in k": k.contains_subspace(k.bracket_with(k)),
        "[k,p] in p": p.contains_subspace(k.bracket_with(p)),
        "[p,p] in k": k.contains_subspace(p.bracket_with(p)),
        "B negative definite on k": ex.is_positive_definite(-B.restrict(k)) if k.dim else True,
        "B positive definite on p": ex.is_positive_definite(B.restrict(p)) if p.dim else True,
        "B(k,p) = 0": ex.is_zero(ex.exact_matmul(ex.exact_matmul(k.basis.T, B.gram), p.basis))
        if k.dim and p.dim else True,
    }
    return CartanSplitReport(items)


# matrix realizations ---------------------------------------------------------

class MatrixBasis:
    """A Lie algebra realized by an explicit basis of real matrices.

    Matrices may carry rational entries; internally each is scaled to an
    integer matrix so commutators are computed in int64.
    """

    def __init__(self, matrices, labels=None, name=""):
        mats = [ex.as_exact(m) for m in matrices]
        if not mats:
            raise ValueError("empty matrix basis")
        self.size = mats[0].shape[0]
        self.matrices = tuple(mats)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(len(mats)))
        flat = np.column_stack([m.ravel() for m in mats])
        r, piv = ex.rref(flat.T)
        if len(piv) != len(mats):
            raise ValueError("matrix basis is linearly dependent")
        self._piv = list(piv)
        self._flat = flat
        self._solver = ex.inverse(flat[self._piv, :])
        self._ints = []
        for m in mats:
            den = ex.lcm_denominator(m.ravel())
            self._ints.append((np.array([[int(v * den) for v in row] for row in m], dtype=np.int64), den))
        self.algebra = self._build(name)

    def coords(self, M):
        """Exact coordinates of a matrix in this basis; ValueError if outside the span."""
        M = ex.as_exact(M)
        x = ex.exact_matmul(self._solver, M.ravel()[self._piv].reshape(-1, 1))[:, 0]
        if not np.all(ex.exact_matmul(self._flat, x.reshape(-1, 1))[:, 0] == M.ravel()):
            raise ValueError("matrix is not in the span of the basis")
        return x

    def matrix(self, x):
        x = ex.as_exact(x)
        out = sum((c * m for c, m in zip(x, self.matrices) if c != 0), ex.as_exact(np.zeros((self.size, self.size), dtype=int)))
        return out

    def _build(self, name):
        n = len(self.matrices)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if not pairs:
            return LieAlgebra({}, labels=self.labels, dim=n, name=name)
        rhs = np.empty((len(self._piv), len(pairs)), dtype=object)
        full = np.empty((self._flat.shape[0], len(pairs)), dtype=object)
        for col, (i, j) in enumerate(pairs):
            (A, da), (B, db) = self._ints[i], self._ints[j]
            comm = (A @ B - B @ A).ravel()
            den = da * db
            vals = [Fraction(int(v), den) for v in comm]
            full[:, col] = vals
            rhs[:, col] = [vals[p] for p in self._piv]
        X = ex.exact_matmul(self._solver, rhs)
        recon = ex.exact_matmul(self._flat, X)
        if not np.all(recon == full):
            raise ValueError("matrix span is not closed under the commutator")
        structure = {}
        for col, (i, j) in enumerate(pairs):
            terms = {k: X[k, col] for k in range(n) if X[k, col] != 0}
            if terms:
                structure[(i, j)] = terms
        return LieAlgebra(structure, labels=self.labels, dim=n, name=name)


def from_matrices(matrices, labels=None, name=""):
    """Lie algebra spanned by a commutator-closed list of real matrices."""
    return MatrixBasis(matrices, labels, name).algebra


# standard small algebras -----------------------------------------------------

def sl2r():
    """sl2(R) with basis {h, e, f}: [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return LieAlgebra({(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
                      labels=["h", "e", "f"], name="sl2R")


def su2():
    """su(2) with [x,y]=z, [y,z]=x, [z,x]=y."""
    return LieAlgebra({(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
                      labels=["x", "y", "z"], name="su2")


def abelian(n):
    return LieAlgebra({}, labels=[f"a{i}" for i in range(n)], dim=n, name=f"R^{n}")


def solvable_2d():
    """Non-unimodular 2-dim algebra [x,y] = y."""
    return LieAlgebra({(0, 1): {1: 1}}, labels=["x", "y"], name="aff1")


def toy_sl2r_su2():
    """sl2(R) + su(2), the toy ambient algebra for the structural checks."""
    return direct_sum(sl2r(), su2(), name="sl2R+su2")
