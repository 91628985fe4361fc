"""Reductive decompositions and isotropy representations of G/H.

Everything in this module is exact unless a module had to be split
numerically, in which case it is flagged (``IrreducibleModule.exact``).
Coordinates "in m" always refer to the ordered ``m_basis`` of a
:class:`ReductiveDecomposition`.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.linalg as sla
from sympy import Poly, QQ, symbols

from . import _exact as ex
from .lie_core import BilinearForm, Subspace, killing_form, verify_cartan_split

__all__ = [
    "HomogeneousPresentation", "ReductiveDecomposition", "IrreducibleModule",
    "IsotropyDecomposition", "ObstructionVerdict", "DecompositionError",
    "reductive_complement", "decompose_isotropy", "endo_type", "intertwiner_dimension",
    "cartan_orthogonality_obstruction", "transitivity_dimension_check",
    "OBSTRUCTED", "NOT_OBSTRUCTED",
]

OBSTRUCTED = "OBSTRUCTED"
NOT_OBSTRUCTED = "NOT_OBSTRUCTED"
_ENDO = {1: "R", 2: "C", 4: "H"}


class DecompositionError(ValueError):
    """Raised when the isotropy representation cannot be split reliably."""


class HomogeneousPresentation:
    """Lie-algebraic data of G/H together with a Cartan split g = k + p.

    ``ideals``/``form_scales`` rescale the reference form per ideal
    (reference = sum over ideals of B_theta / scale).  ``reference`` may
    instead give an explicit Gram matrix on ``m_basis``, which is how
    non-semisimple fixtures are handled.  ``printed`` holds named
    subspaces (module bases as displayed in the literature) for
    comparison in tests.
    """

    def __init__(self, g, h, k, p, name="", params=None, *, ideals=None, form_scales=None,
                 reference=None, m_basis=None, printed=None, cartan=True):
        self.g, self.h, self.k, self.p = g, h, k, p
        self.name = name or g.name
        self.params = tuple(params) if params is not None else None
        self.ideals = tuple(ideals) if ideals is not None else None
        self.form_scales = tuple(ex.frac(s) for s in form_scales) if form_scales is not None else None
        self.reference = ex.as_exact(reference) if reference is not None else None
        self.m_basis = ex.as_exact(m_basis) if m_basis is not None else None
        self.printed = dict(printed or {})
        self.cartan = cartan
        if not h.is_subalgebra():
            raise ValueError("h is not a subalgebra")
        if not k.contains_subspace(h):
            raise ValueError("h is not contained in k")
        if cartan:
            report = verify_cartan_split(g, k, p)
            if not report.ok:
                bad = [key for key, v in report.items.items() if not v]
                raise ValueError(f"Cartan split check failed: {bad}")

    def __repr__(self):
        tag = f"{self.params}" if self.params else ""
        return f"HomogeneousPresentation({self.name}{tag}, dim g={self.g.dim}, dim h={self.h.dim})"

    @cached_property
    def killing(self):
        return killing_form(self.g)

    def theta_form(self):
        """B_theta = -B on k, +B on p, as a Gram matrix on g."""
        B = self.killing.gram
        P = np.concatenate([self.k.basis, self.p.basis], axis=1)
        sign = ex.identity(self.g.dim)
        for i in range(self.k.dim, self.g.dim):
            sign[i, i] = Fraction(-1)
        theta = ex.exact_matmul(ex.exact_matmul(P, sign), ex.inverse(P))
        return -ex.exact_matmul(theta.T, B)

    def reference_gram(self):
        """Reference inner product on g (positive definite when cartan=True)."""
        G = self.theta_form()
        if self.ideals is None:
            scale = self.form_scales[0] if self.form_scales else Fraction(1)
            return G / scale if scale != 1 else G
        P = np.concatenate([I.basis for I in self.ideals], axis=1)
        if P.shape[1] != self.g.dim:
            raise ValueError("ideals must span g")
        Pinv = ex.inverse(P)
        out = np.empty_like(G)
        out[...] = Fraction(0)
        start = 0
        for I, s in zip(self.ideals, self.form_scales or [1] * len(self.ideals)):
            proj = np.zeros_like(Pinv)
            proj[...] = Fraction(0)
            proj[start:start + I.dim, :] = Pinv[start:start + I.dim, :]
            Pi = ex.exact_matmul(P, proj)
            out = out + ex.exact_matmul(ex.exact_matmul(Pi.T, G), Pi) / ex.frac(s)
            start += I.dim
        return out


def _transform_tensor(L, P):
    """Structure constants in the basis given by the columns of P, exactly."""
    C, den = L.int_tensor
    C = np.asarray(C, dtype=object)
    dp = ex.lcm_denominator(P.ravel())
    Pi = np.array([[int(v * dp) for v in row] for row in P], dtype=object)
    Pinv = ex.inverse(P)
    di = ex.lcm_denominator(Pinv.ravel())
    Qi = np.array([[int(v * di) for v in row] for row in Pinv], dtype=object)
    T = np.tensordot(C, Pi, axes=([0], [0]))      # b c i
    T = np.tensordot(T, Pi, axes=([0], [0]))      # c i j
    T = np.tensordot(T, Qi, axes=([0], [1]))      # i j k
    scale = den * dp * dp * di
    out = np.empty(T.shape, dtype=object)
    for idx, v in np.ndenumerate(T):
        out[idx] = Fraction(int(v), scale)
    return out


class ReductiveDecomposition:
    """g = h + m with m = q + p, the reference form, and the bracket split.

    Exact tensors (n = dim m, r = dim h):

    * ``Cm[i, j, k]``: coefficient of m_k in [m_i, m_j]
    * ``Ch[i, j, a]``: coefficient of h_a in [m_i, m_j]
    * ``Ah[a, i, k]``: coefficient of m_k in [h_a, m_i]
    * ``tau[i]``: trace of ad(m_i) on g
    """

    def __init__(self, presentation, q, m_basis, reference):
        self.presentation = presentation
        self.g = presentation.g
        self.h = presentation.h
        self.q = q
        self.p = presentation.p
        self.m_basis = m_basis
        self.m_basis.setflags(write=False)
        self.reference = reference
        self.reference.setflags(write=False)
        self.n = m_basis.shape[1]
        self.r = self.h.dim
        P = np.concatenate([self.h.basis, m_basis], axis=1)
        c = _transform_tensor(self.g, P)
        r = self.r
        self.Cm = c[r:, r:, r:]
        self.Ch = c[r:, r:, :r]
        self.Ah = c[:r, r:, r:]
        if r and not ex.is_zero(c[:r, r:, :r]):
            raise ValueError("[h, m] is not contained in m")
        self.tau = np.array([sum((c[r + i, j, j] for j in range(self.g.dim)), Fraction(0))
                             for i in range(self.n)], dtype=object)
        self.labels = [_label_vector(self.g, m_basis[:, i]) for i in range(self.n)]

    def __repr__(self):
        return f"ReductiveDecomposition({self.presentation.name}, dim m={self.n})"

    @property
    def name(self):
        return self.presentation.name

    @cached_property
    def m(self):
        return Subspace(self.g, self.m_basis, check=False)

    @cached_property
    def q_coords(self):
        """Basis of q in m-coordinates."""
        return _coords_in(self.m_basis, self.q.basis)

    @cached_property
    def p_coords(self):
        return _coords_in(self.m_basis, self.p.basis)

    def action(self):
        """Exact matrices of ad(h_a) on m; column i is [h_a, m_i]."""
        return [self.Ah[a].T.copy() for a in range(self.r)]

    @cached_property
    def floats(self):
        return {
            "Cm": ex.to_float(self.Cm), "Ch": ex.to_float(self.Ch),
            "Ah": ex.to_float(self.Ah), "tau": ex.to_float(self.tau),
            "G": ex.to_float(self.reference),
        }

    def to_g(self, x):
        """Vector of g from m-coordinates."""
        return self.m_basis @ ex.as_exact(x)

    def is_unimodular(self):
        return ex.is_zero(self.tau)


def _coords_in(basis, vecs):
    if vecs.shape[1] == 0:
        return np.empty((basis.shape[1], 0), dtype=object)
    return ex.solve(basis, vecs)


def _label_vector(g, v):
    terms = []
    for c, lab in zip(v, g.basis_labels):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+{lab}")
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{'+' if c > 0 else '-'}{ex.fmt(abs(c))}{lab}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else (s or "0")


def reductive_complement(pres):
    """Build the reductive decomposition with q the Killing complement of h in k."""
    g, h, k = pres.g, pres.h, pres.k
    if not k.contains_subspace(h):
        raise ValueError("h is not contained in k")
    if h.dim == 0:
        q = k
    else:
        B = pres.killing
        if not B.is_nondegenerate(k):
            raise ValueError("Killing form is degenerate on k")
        q = B.orthogonal_complement(h, within=k)
        if q.dim != k.dim - h.dim:
            raise ValueError("Killing form is degenerate on h")
    if pres.m_basis is not None:
        m_basis = pres.m_basis
        if not Subspace(g, m_basis) == q + pres.p:
            raise ValueError("m_basis does not span q + p")
    else:
        m_basis = np.concatenate([q.basis, pres.p.basis], axis=1)
    if pres.reference is not None:
        ref = pres.reference
        if ref.shape != (m_basis.shape[1],) * 2:
            raise ValueError("reference form has the wrong shape")
    else:
        G = pres.reference_gram()
        ref = ex.exact_matmul(ex.exact_matmul(m_basis.T, G), m_basis)
    if not ex.is_positive_definite(ref):
        raise ValueError("reference form is not positive definite on m")
    return ReductiveDecomposition(pres, q, m_basis, ref)


# isotropy decomposition ------------------------------------------------------

@dataclass
class IrreducibleModule:
    """An Ad(H)-irreducible submodule of m."""

    basis_m: np.ndarray = field(repr=False)
    side: str
    endo_dim: int
    trivial: bool
    exact: bool = True
    label: str = ""
    span: Subspace = field(default=None, repr=False)

    @property
    def dim(self):
        return self.basis_m.shape[1]

    @property
    def endo_type(self):
        return _ENDO.get(self.endo_dim, "?")


@dataclass
class IsotropyDecomposition:
    """Irreducible modules of m (ordered) and their isotypic classes."""

    rd: ReductiveDecomposition = field(repr=False)
    modules: list
    isotypic_classes: list
    hom_dims: dict = field(default_factory=dict, repr=False)

    def signature(self):
        """Sorted multiset of (dim, side, endo type, class size)."""
        size = {}
        for cls in self.isotypic_classes:
            for i in cls:
                size[i] = len(cls)
        return tuple(sorted((m.dim, m.side, m.endo_type, size[i]) for i, m in enumerate(self.modules)))

    def labels(self):
        return [m.label for m in self.modules]

    def class_of(self, i):
        for cls in self.isotypic_classes:
            if i in cls:
                return cls
        raise IndexError(i)

    def class_labels(self):
        return [[self.modules[i].label for i in cls] for cls in self.isotypic_classes]

    def mixed_classes(self):
        """Classes containing both q-side and p-side modules."""
        return [cls for cls in self.isotypic_classes if len({self.modules[i].side for i in cls}) > 1]

    def summary(self):
        parts = " + ".join(f"{m.label}({m.endo_type})" for m in self.modules)
        iso = "; ".join(" ~ ".join(c) for c in self.class_labels() if len(c) > 1)
        return parts + (f"  [{iso}]" if iso else "")

    def to_dict(self):
        return {
            "modules": [{"label": m.label, "dim": m.dim, "side": m.side, "endo_type": m.endo_type,
                         "trivial": m.trivial, "exact": m.exact} for m in self.modules],
            "classes": self.class_labels(),
            "signature": [list(s) for s in self.signature()],
        }


def _restricted(As, V):
    """Matrices of the action on the invariant subspace with basis V."""
    return [ex.solve(V, ex.exact_matmul(A, V)) if V.shape[1] else A[:0, :0] for A in As]


def _kron(a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    out = np.empty((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=object)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = a[i, j] * b
    return out


def _hom_system(Ai, Aj):
    """Rows of the linear system T A_i = A_j T for T: V_i -> V_j (row-major vec)."""
    di = Ai[0].shape[0] if Ai else 0
    dj = Aj[0].shape[0] if Aj else 0
    rows = [_kron(ex.identity(dj), A.T) - _kron(B, ex.identity(di)) for A, B in zip(Ai, Aj)]
    return np.concatenate(rows, axis=0) if rows else np.empty((0, di * dj), dtype=object)


def _hom_basis(Ai, Aj, di, dj):
    if not Ai:
        ns = ex.identity(di * dj)
    else:
        ns = ex.nullspace(_hom_system(Ai, Aj), di * dj)
    return [ns[:, c].reshape(dj, di) for c in range(ns.shape[1])]


def _sym_commutant(As, G):
    """G-self-adjoint endomorphisms commuting with the action (exact basis)."""
    d = G.shape[0]
    I = ex.identity(d)
    # vec(T^T) = K vec(T)
    K = np.empty((d * d, d * d), dtype=object)
    K[...] = Fraction(0)
    for i in range(d):
        for j in range(d):
            K[i * d + j, j * d + i] = Fraction(1)
    rows = [_hom_system(As, As)] if As else []
    # G T = T^T G
    rows.append(_kron(G, I) - ex.exact_matmul(_kron(I, G.T), K))
    ns = ex.nullspace(np.concatenate(rows, axis=0), d * d)
    return [ns[:, c].reshape(d, d) for c in range(ns.shape[1])]


def _poly_eval(coeffs, T):
    d = T.shape[0]
    out = ex.identity(d) * coeffs[0]
    for c in coeffs[1:]:
        out = ex.exact_matmul(out, T) + ex.identity(d) * c
    return out


_X = symbols("x")


def _rational_split(T):
    """Kernels of the distinct rational irreducible factors of charpoly(T), or None."""
    coeffs = ex.charpoly_coeffs(T)
    poly = Poly([QQ(c.numerator, c.denominator) for c in coeffs], _X, domain=QQ)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    parts = []
    for f, _mult in factors:
        fc = [ex.frac(c) for c in f.all_coeffs()]
        K = ex.nullspace(_poly_eval(fc, T))
        if K.shape[1]:
            parts.append(ex.column_echelon(K))
    return parts if len(parts) > 1 else None


def _candidates(basis, rng, tries=40):
    for S in basis:
        yield S
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield basis[i] + 2 * basis[j]
    for _ in range(tries):
        coef = rng.integers(-4, 5, size=len(basis))
        yield sum((int(c) * S for c, S in zip(coef, basis)), basis[0] * 0)


def _float_split(V, As, G, rng, tol):
    """Numerical eigen-split with rationalization of the projectors."""
    Sym = _sym_commutant(_restricted(As, V), ex.exact_matmul(ex.exact_matmul(V.T, G), V))
    Gv = ex.to_float(ex.exact_matmul(ex.exact_matmul(V.T, G), V))
    coef = rng.standard_normal(len(Sym))
    T = sum(c * ex.to_float(S) for c, S in zip(coef, Sym))
    w, U = sla.eigh(Gv @ T, Gv)
    order = np.argsort(w)
    w, U = w[order], U[:, order]
    clusters = [[0]]
    for i in range(1, len(w)):
        gap = w[i] - w[i - 1]
        scale = max(1.0, abs(w[i]))
        if tol * scale < gap < 1e3 * tol * scale:
            raise DecompositionError(f"ambiguous eigenvalue cluster at tol={tol:g}; try tol={tol * 1e-3:g}")
        if gap <= tol * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    out = []
    for cl in clusters:
        Uc = U[:, cl]
        P = Uc @ Uc.T @ Gv
        Pr = np.empty(P.shape, dtype=object)
        ok = True
        for idx, v in np.ndenumerate(P):
            fr = Fraction(v).limit_denominator(10 ** 6)
            if abs(float(fr) - v) > 1e3 * tol:
                ok = False
                break
            Pr[idx] = fr
        if ok:
            P2 = ex.exact_matmul(Pr, Pr)
            Ar = _restricted(As, V)
            ok = bool(np.all(P2 == Pr)) and all(
                ex.is_zero(ex.exact_matmul(Pr, A) - ex.exact_matmul(A, Pr)) for A in Ar)
        if ok:
            out.append((ex.exact_matmul(V, ex.column_echelon(Pr)), True))
        else:
            out.append((ex.to_float(V) @ Uc, False))
    return out


def _split(V, As, G, rng, tol):
    """Recursively split the invariant subspace V (m-coordinates) into irreducibles."""
    Ar = _restricted(As, V)
    Gv = ex.exact_matmul(ex.exact_matmul(V.T, G), V)
    Sym = _sym_commutant(Ar, Gv)
    if len(Sym) <= 1:
        return [(V, True)]
    for T in _candidates(Sym, rng):
        parts = _rational_split(T)
        if parts:
            out = []
            for W in parts:
                out.extend(_split(ex.exact_matmul(V, W), As, G, rng, tol))
            return out
    out = []
    for W, exact in _float_split(V, As, G, rng, tol):
        out.extend(_split(W, As, G, rng, tol) if exact else [(W, False)])
    return out


def _commutant_dim(Ar, d):
    if not Ar:
        return d * d
    return ex.nullspace(_hom_system(Ar, Ar), d * d).shape[1]


def decompose_isotropy(rd, tol=1e-10, seed=0):
    """Split m into Ad(H)-irreducible modules and group them into isotypic classes."""
    rng = np.random.default_rng(seed)
    As = rd.action()
    G = rd.reference
    sides = []
    if rd.q_coords.shape[1]:
        sides.append(("q", rd.q_coords))
    if rd.p_coords.shape[1]:
        sides.append(("p", rd.p_coords))
    raw = []
    for side, V in sides:
        for W, exact in _split(ex.column_echelon(V), As, G, rng, tol):
            raw.append((side, W, exact))
    modules = []
    for side, W, exact in raw:
        if exact:
            W = ex.column_echelon(W)
            Ar = _restricted(As, W)
            trivial = all(ex.is_zero(A) for A in Ar)
            endo = _commutant_dim(Ar, W.shape[1])
            span = Subspace(rd.g, ex.exact_matmul(rd.m_basis, W), check=False)
        else:
            Ar = [np.linalg.lstsq(W, ex.to_float(A) @ W, rcond=None)[0] for A in As]
            trivial = all(np.abs(A).max() < 1e-9 for A in Ar)
            endo = 0
            span = None
        modules.append(IrreducibleModule(W, side, endo, trivial, exact, span=span))

    def key(mod):
        piv = tuple(_pivots(mod.basis_m))
        return (0 if mod.side == "q" else 1, mod.dim, piv)

    modules.sort(key=key)
    n = len(modules)
    hom = {}
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            mi, mj = modules[i], modules[j]
            if mi.dim != mj.dim:
                d = 0
            elif mi.trivial and mj.trivial:
                d = mi.dim * mj.dim
            elif mi.trivial != mj.trivial:
                d = 0
            else:
                d = _hom_dim(rd, mi, mj, As)
            hom[(i, j)] = hom[(j, i)] = d
            if d > 0:
                parent[find(j)] = find(i)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])
    # labels: trivial class is index 0, others numbered in order of appearance
    idx = 1
    for cls in classes:
        if modules[cls[0]].trivial:
            ci = 0
        else:
            ci, idx = idx, idx + 1
        for i in cls:
            modules[i].label = f"{modules[i].side}{ci}^{modules[i].dim}"
    for i, m in enumerate(modules):
        hom[(i, i)] = m.endo_dim if m.exact else None
    return IsotropyDecomposition(rd, modules, classes, hom)


def _pivots(W):
    if W.dtype != object:
        return [int(np.argmax(np.abs(W[:, c]) > 1e-9)) for c in range(W.shape[1])]
    out = []
    for c in range(W.shape[1]):
        col = W[:, c]
        out.append(next(i for i, v in enumerate(col) if v != 0))
    return out


def _hom_dim(rd, mi, mj, As=None):
    As = rd.action() if As is None else As
    if mi.exact and mj.exact:
        Ai = _restricted(As, mi.basis_m)
        Aj = _restricted(As, mj.basis_m)
        return len(_hom_basis(Ai, Aj, mi.dim, mj.dim))
    Wi = np.asarray(mi.basis_m, dtype=float)
    Wj = np.asarray(mj.basis_m, dtype=float)
    Af = [ex.to_float(A) for A in As]
    Ai = [np.linalg.lstsq(Wi, A @ Wi, rcond=None)[0] for A in Af]
    Aj = [np.linalg.lstsq(Wj, A @ Wj, rcond=None)[0] for A in Af]
    M = np.concatenate([np.kron(np.eye(mj.dim), a.T) - np.kron(b, np.eye(mi.dim)) for a, b in zip(Ai, Aj)])
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s < 1e-8)) + max(0, M.shape[1] - len(s))


def intertwiner_basis(rd, mi, mj):
    """Exact basis of equivariant maps mi -> mj, as m-coordinate matrices (n x n)."""
    As = rd.action()
    Ai = _restricted(As, mi.basis_m)
    Aj = _restricted(As, mj.basis_m)
    out = []
    # left inverse of mi.basis_m: coordinates inside the module
    Wi = mi.basis_m
    left = ex.exact_matmul(ex.inverse(ex.exact_matmul(Wi.T, Wi)), Wi.T)
    for T in _hom_basis(Ai, Aj, mi.dim, mj.dim):
        out.append(ex.exact_matmul(ex.exact_matmul(mj.basis_m, T), left))
    return out


def endo_type(module, rd):
    """Frobenius type R, C or H from the exact commutant dimension."""
    if not module.exact:
        raise DecompositionError("module was split numerically; type is not certified")
    d = _commutant_dim(_restricted(rd.action(), module.basis_m), module.dim)
    if d not in _ENDO:
        raise ValueError(f"commutant has dimension {d}; module is reducible")
    return _ENDO[d]


def intertwiner_dimension(mi, mj, rd):
    """Exact dimension of the space of ad(h)-equivariant maps mi -> mj."""
    return _hom_dim(rd, mi, mj)


@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: str
    mixing: tuple = ()

    def __str__(self):
        return self.verdict


def cartan_orthogonality_obstruction(iso):
    """OBSTRUCTED iff no q-side module is isomorphic to a p-side module.

    In that case every invariant metric makes q and p orthogonal, and such
    metrics are never Einstein on these spaces.
    """
    mixed = iso.mixed_classes()
    labels = tuple(tuple(iso.modules[i].label for i in cls) for cls in mixed)
    return ObstructionVerdict(OBSTRUCTED if not mixed else NOT_OBSTRUCTED, labels)


def transitivity_dimension_check(g, gbar, h):
    """True iff h + gbar = g, i.e. the subgroup for gbar acts transitively."""
    return (h + gbar).dim == g.dim
