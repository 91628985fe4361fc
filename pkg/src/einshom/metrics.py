"""Invariant inner products on m: moduli, Gram matrices and orthonormal frames.

A metric is stored by its Gram matrix ``Q`` in the m-basis of a
:class:`~einshom.homspace.ReductiveDecomposition`, so that
``<x, y> = x^T Q y`` for m-coordinate vectors.  Parameter slots are
linear: ``Q = sum(value[s] * M_s)``.

Generic moduli get one slot per irreducible module (scaling the
reference form on it) and one slot per basis intertwiner between
isomorphic modules.  The two worked spaces use the literal slot names
a, b, c, d (SL2(H)) and a, b, c, d, l, q, f, g, n (SL2(C)^2).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
import math

import numpy as np
from scipy.linalg import expm

from . import _exact as ex
from .homspace import intertwiner_basis

__all__ = [
    "MetricDomainError", "Slot", "MetricModuli", "MetricPoint", "OrthonormalFrame",
    "moduli_space", "build_Q", "orthonormal_frame", "normalize_by_automorphisms",
    "random_point", "point_to_json", "point_from_json",
]


class MetricDomainError(ValueError):
    """Slot values outside the open domain of positive definite metrics."""


@dataclass(frozen=True)
class Slot:
    name: str
    matrix: np.ndarray = field(repr=False, compare=False)
    kind: str = "diag"          # "diag" (positive scale) or "cross"
    modules: tuple = ()


@dataclass(frozen=True)
class Constraint:
    text: str
    check: object = field(repr=False, compare=False)


@dataclass
class MetricModuli:
    """Linear parameterization of the Ad(H)-invariant inner products on m."""

    rd: object = field(repr=False)
    iso: object = field(repr=False)
    slots: list
    blocks: list
    constraints: list = field(default_factory=list)
    template: str = "generic"
    frame_basis: np.ndarray = field(default=None, repr=False)
    # cross slot -> (group, diag slot, diag slot, kappa); a group's cross values with
    # Euclidean norm below kappa sqrt(x_i x_j) keep Q positive definite
    cross_bounds: dict = field(default_factory=dict, repr=False)

    @property
    def slot_names(self):
        return [s.name for s in self.slots]

    @property
    def dim(self):
        return len(self.slots)

    @property
    def n(self):
        return self.rd.n

    def slot(self, name):
        for s in self.slots:
            if s.name == name:
                return s
        raise KeyError(name)

    def identity_values(self):
        """Slot values reproducing the reference form (diagonal slots 1, cross slots 0)."""
        return {s.name: Fraction(1 if s.kind == "diag" else 0) for s in self.slots}


@dataclass(frozen=True)
class MetricPoint:
    moduli: MetricModuli = field(repr=False)
    values: dict
    Q: np.ndarray = field(repr=False)
    exact: bool = True
    note: str = ""

    @property
    def Qf(self):
        return ex.to_float(self.Q) if self.exact else np.asarray(self.Q, dtype=float)

    @property
    def space(self):
        return self.moduli.rd.name


@dataclass(frozen=True)
class OrthonormalFrame:
    point: MetricPoint = field(repr=False)
    frame: np.ndarray = field(repr=False)

    def orthonormality_error(self):
        F = self.frame
        return float(np.abs(F.T @ self.point.Qf @ F - np.eye(F.shape[1])).max())


# moduli --------------------------------------------------------------------------

def _module_projectors(iso):
    W = np.concatenate([m.basis_m for m in iso.modules], axis=1)
    Winv = ex.inverse(W)
    out, s = [], 0
    for m in iso.modules:
        rows = Winv[s:s + m.dim, :]
        out.append(ex.exact_matmul(m.basis_m, rows))
        s += m.dim
    return W, out


def _sym(M):
    return M + M.T


def _generic_moduli(rd, iso):
    if not all(m.exact for m in iso.modules):
        raise ValueError("metric moduli need an exact decomposition")
    G = rd.reference
    W, P = _module_projectors(iso)
    slots, blocks = [], []
    for cls in iso.isotypic_classes:
        first = iso.modules[cls[0]]
        blocks.append((tuple(iso.modules[i].label for i in cls), first.endo_type, len(cls)))
        for i in cls:
            M = ex.exact_matmul(ex.exact_matmul(P[i].T, G), P[i])
            slots.append(Slot(f"x{i}", M, "diag", (i,)))
        for a, i in enumerate(cls):
            for j in cls[a + 1:]:
                for t, T in enumerate(intertwiner_basis(rd, iso.modules[i], iso.modules[j])):
                    # <Tx, y> + <x, Ty> is invariant because T commutes with the action
                    M = _sym(ex.exact_matmul(T.T, G))
                    slots.append(Slot(f"y{i}_{j}_{t}", M, "cross", (i, j)))
    Gf = ex.to_float(G)
    bounds = {}
    per_pair = {}
    for s in slots:
        if s.kind == "cross":
            per_pair[s.modules] = per_pair.get(s.modules, 0) + 1
    size = {i: len(cls) for cls in iso.isotypic_classes for i in cls}
    for s in slots:
        if s.kind == "cross":
            i, j = s.modules
            ev = np.linalg.eigvals(np.linalg.solve(Gf, ex.to_float(s.matrix)))
            # block Gershgorin: these bounds keep every admissible combination positive definite
            kappa = 1.0 / (float(np.abs(ev).max()) * math.sqrt(per_pair[s.modules]) * (size[i] - 1))
            bounds[s.name] = ((i, j), f"x{i}", f"x{j}", kappa)
    return MetricModuli(rd, iso, slots, blocks, template="generic", frame_basis=W, cross_bounds=bounds)


def _entry_matrix(n, entries):
    M = ex.as_exact(np.zeros((n, n), dtype=int))
    for i, j, v in entries:
        M[i, j] += Fraction(v)
        if i != j:
            M[j, i] += Fraction(v)
    return M


def _sl2h_moduli(rd, iso):
    # m order: D | S, iA, jA, kA | A, iS, jS, kS
    n = rd.n
    slots = [
        Slot("a", _entry_matrix(n, [(0, 0, 1)]), "diag"),
        Slot("b", _entry_matrix(n, [(1 + k, 1 + k, 1) for k in range(4)]), "diag"),
        Slot("c", _entry_matrix(n, [(5 + k, 5 + k, 1) for k in range(4)]), "diag"),
        Slot("d", _entry_matrix(n, [(1 + k, 5 + k, 1) for k in range(4)]), "cross"),
    ]
    cons = [Constraint("a > 0", lambda v: v["a"] > 0), Constraint("b > 0", lambda v: v["b"] > 0),
            Constraint("c > 0", lambda v: v["c"] > 0),
            Constraint("d^2 < bc", lambda v: v["d"] ** 2 < v["b"] * v["c"])]
    blocks = [(("p0^1",), "R", 1), (("q1^4", "p1^4"), "R", 2)]
    return MetricModuli(rd, iso, slots, blocks, cons, template="SL2H", frame_basis=ex.identity(n),
                        cross_bounds={"d": ("d", "b", "c", 1.0)})


def _sl2c2_moduli(rd, iso, normal_form=True):
    # m order: D1, D2 | A1, iS1 | S1, iA1 | A2, iS2 | S2, iA2
    n = rd.n
    E = _entry_matrix
    slots = [
        Slot("a", E(n, [(0, 0, 1)]), "diag"), Slot("b", E(n, [(1, 1, 1)]), "diag"),
        Slot("c", E(n, [(0, 1, 1)]), "cross"),
        Slot("d", E(n, [(2, 2, 1), (3, 3, 1)]), "diag"),
        Slot("l", E(n, [(2, 5, 1), (3, 4, -1)]), "cross"),
        Slot("q", E(n, [(4, 4, 1), (5, 5, 1)]), "diag"),
        Slot("f", E(n, [(6, 6, 1), (7, 7, 1)]), "diag"),
        Slot("g", E(n, [(8, 8, 1), (9, 9, 1)]), "diag"),
        Slot("n", E(n, [(6, 9, 1), (7, 8, -1)]), "cross"),
    ]
    cons = [Constraint(f"{s} > 0", (lambda s: lambda v: v[s] > 0)(s)) for s in "adqfg"]
    cons += [Constraint("l^2 < dq", lambda v: v["l"] ** 2 < v["d"] * v["q"]),
             Constraint("n^2 < fg", lambda v: v["n"] ** 2 < v["f"] * v["g"]),
             Constraint("c^2 < ab", lambda v: v["c"] ** 2 < v["a"] * v["b"])]
    if not normal_form:
        slots.insert(6, Slot("p", E(n, [(2, 4, 1), (3, 5, 1)]), "cross"))
        slots.append(Slot("m", E(n, [(6, 8, 1), (7, 9, 1)]), "cross"))
        cons[-3] = Constraint("l^2 + p^2 < dq", lambda v: v["l"] ** 2 + v["p"] ** 2 < v["d"] * v["q"])
        cons[-2] = Constraint("n^2 + m^2 < fg", lambda v: v["n"] ** 2 + v["m"] ** 2 < v["f"] * v["g"])
    blocks = [(("p0^1", "p0^1"), "R", 2), (("q1^2", "p1^2"), "C", 2), (("q2^2", "p2^2"), "C", 2)]
    bounds = {"c": ("c", "a", "b", 1.0), "l": ("1", "d", "q", 1.0), "n": ("2", "f", "g", 1.0)}
    if not normal_form:
        bounds.update({"p": ("1", "d", "q", 1.0), "m": ("2", "f", "g", 1.0)})
    return MetricModuli(rd, iso, slots, blocks, cons, template="SL2C2" if normal_form else "SL2C2_full",
                        frame_basis=ex.identity(n), cross_bounds=bounds)


def moduli_space(iso, normal_form=True):
    """Moduli of invariant metrics for a decomposition.

    The two worked spaces use their literal templates; ``normal_form=False``
    gives all eleven slots for SL2C2_U1U1 (the extra cross slots ``p`` and
    ``m`` are removed by :func:`normalize_by_automorphisms`).
    """
    rd = iso.rd
    if rd.name == "SL2H_Sp1Sp1" and rd.presentation.m_basis is not None:
        return _sl2h_moduli(rd, iso)
    if rd.name == "SL2C2_U1U1" and rd.presentation.m_basis is not None:
        return _sl2c2_moduli(rd, iso, normal_form)
    return _generic_moduli(rd, iso)


def expected_slot_count(blocks):
    """Real dimension of the cone h+_n(F) summed over isotypic blocks."""
    per = {"R": lambda n: n * (n + 1) // 2, "C": lambda n: n * n, "H": lambda n: n * (2 * n - 1)}
    return sum(per[t](n) for _, t, n in blocks)


# points -----------------------------------------------------------------------------

def _is_rational(v):
    return isinstance(v, (Rational, str)) and not isinstance(v, bool)


def _invariance_defect(rd, Q):
    out = 0.0
    exact = Q.dtype == object
    for A in rd.action():
        if exact:
            R = ex.exact_matmul(A.T, Q) + ex.exact_matmul(Q, A)
            if not ex.is_zero(R):
                return float(np.abs(ex.to_float(R)).max())
        else:
            Af = ex.to_float(A)
            out = max(out, float(np.abs(Af.T @ Q + Q @ Af).max()))
    return out


def build_Q(moduli, values, check_invariance=True):
    """Assemble the Gram matrix; raises MetricDomainError outside the open domain."""
    names = moduli.slot_names
    unknown = set(values) - set(names)
    missing = set(names) - set(values)
    if unknown:
        raise KeyError(f"unknown slots {sorted(unknown)}")
    if missing:
        raise KeyError(f"missing slots {sorted(missing)}")
    exact = all(_is_rational(values[s]) for s in names)
    vals = {s: ex.frac(values[s]) if exact else float(values[s]) for s in names}
    if not exact and not all(math.isfinite(v) for v in vals.values()):
        raise MetricDomainError("non-finite slot value")
    for c in moduli.constraints:
        if not c.check(vals):
            raise MetricDomainError(f"constraint violated: {c.text}")
    n = moduli.n
    if exact:
        Q = ex.as_exact(np.zeros((n, n), dtype=int))
        for s in moduli.slots:
            if vals[s.name]:
                Q = Q + vals[s.name] * s.matrix
        if not ex.is_positive_definite(Q):
            raise MetricDomainError("Q is not positive definite")
    else:
        Q = sum(vals[s.name] * ex.to_float(s.matrix) for s in moduli.slots)
        try:
            np.linalg.cholesky(Q)
        except np.linalg.LinAlgError:
            raise MetricDomainError("Q is not positive definite") from None
    if check_invariance and exact and _invariance_defect(moduli.rd, Q) != 0:
        raise AssertionError("assembled Q is not Ad(H)-invariant")
    return MetricPoint(moduli, dict(vals), Q, exact)


def random_point(moduli, rng, exact=False, spread=1.0):
    """Random in-domain point: diagonal slots in (1/2, 2), cross slots small enough for PD.

    With ``exact=True`` values are rationals with denominator 64.
    """
    for _ in range(200):
        vals = {}
        for s in moduli.slots:
            if s.kind == "diag":
                v = float(np.exp(rng.uniform(-0.7, 0.7) * spread))
            else:
                v = float(rng.uniform(-0.45, 0.45) * spread)
            vals[s.name] = Fraction(round(v * 64), 64) if exact else v
        try:
            return build_Q(moduli, vals, check_invariance=False)
        except MetricDomainError:
            continue
    raise RuntimeError("could not sample an in-domain point")


# frames ---------------------------------------------------------------------------

def orthonormal_frame(mp):
    """Q-orthonormal frame by Gram-Schmidt in the moduli's frame order.

    For the worked templates this is the m-basis order, so the frame
    starts (1/sqrt a) D, (1/sqrt b) S, ...
    """
    B = ex.to_float(mp.moduli.frame_basis)
    Q = mp.Qf
    L = np.linalg.cholesky(B.T @ Q @ B)
    F = B @ np.linalg.inv(L).T
    return OrthonormalFrame(mp, F)


# normalization ------------------------------------------------------------------------

def _ad_on_m(rd, x_m):
    """Float matrix of ad(x) on m for x in m whose adjoint action preserves m."""
    Cm = rd.floats["Cm"]
    Ch = rd.floats["Ch"]
    A = np.einsum("i,ijk->kj", x_m, Cm)
    if np.abs(np.einsum("i,ija->aj", x_m, Ch)).max() > 1e-12:
        raise ValueError("ad(x) does not preserve m")
    return A


def normalize_by_automorphisms(mp):
    """Remove the (q_j, p_j) cross slots p, m of an SL2C2_U1U1 point.

    Uses P_j(t) = Ad(exp(t D_j)) restricted to m, which fixes h, and
    returns the pulled-back metric P^T Q P in the nine-slot normal form.
    Points of other spaces are returned unchanged with a note.
    """
    mod = mp.moduli
    if mod.template not in ("SL2C2", "SL2C2_full"):
        return MetricPoint(mod, dict(mp.values), mp.Q, mp.exact, note="normalization unsupported; unchanged")
    v = {k: float(x) for k, x in mp.values.items()}
    pcoef, mcoef = v.get("p", 0.0), v.get("m", 0.0)
    t = math.atanh(-2 * pcoef / (v["d"] + v["q"])) / 4
    s = math.atanh(-2 * mcoef / (v["f"] + v["g"])) / 4
    rd = mod.rd
    e = np.eye(rd.n)
    P = expm(t * _ad_on_m(rd, e[0])) @ expm(s * _ad_on_m(rd, e[1]))
    Qn = P.T @ mp.Qf @ P
    nf = _sl2c2_moduli(rd, mod.iso, normal_form=True)
    vals = {"a": Qn[0, 0], "b": Qn[1, 1], "c": Qn[0, 1], "d": Qn[2, 2], "l": Qn[2, 5], "q": Qn[4, 4],
            "f": Qn[6, 6], "g": Qn[8, 8], "n": Qn[6, 9]}
    out = build_Q(nf, {k: float(x) for k, x in vals.items()})
    resid = np.abs(out.Qf - Qn).max()
    if resid > 1e-9 * max(1.0, np.abs(Qn).max()):
        raise ArithmeticError(f"normalized metric left the normal form (defect {resid:.2e})")
    return MetricPoint(nf, out.values, out.Q, False, note=f"t={t:.12g}, s={s:.12g}")


# serialization --------------------------------------------------------------------------

def point_to_json(mp):
    vals = {k: (ex.fmt(v) if mp.exact else float(v)) for k, v in mp.values.items()}
    return {"space": mp.space, "values": vals}


def point_from_json(moduli, data):
    if data.get("space") not in (None, moduli.rd.name):
        raise ValueError(f"point belongs to {data['space']}, not {moduli.rd.name}")
    return build_Q(moduli, data["values"])
