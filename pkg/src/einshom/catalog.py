"""Static catalog of the 9/10-dimensional spaces and small test fixtures.

Every space is built from an explicit basis of real matrices.  Complex
matrices are realified entrywise by ``x + iy -> [[x, -y], [y, x]]`` and
quaternionic ones by left multiplication, so conjugate transposition
becomes ordinary transposition.  For all classical algebras used here
the Cartan involution is ``X -> -X^T``: k is spanned by the
skew-symmetric basis matrices and p by the symmetric ones.

The split real form of G2 is shipped as precomputed structure constants
(``data/g2_split.json``), obtained as derivations of the split
octonions; :func:`split_octonion_derivations` regenerates them.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
import json

import numpy as np

from . import _exact as ex
from .homspace import HomogeneousPresentation, _sym_commutant, _split
from .lie_core import (LieAlgebra, MatrixBasis, Subspace, abelian, killing_form,
                       sl2r, solvable_2d, su2, toy_sl2r_su2)

__all__ = [
    "CatalogEntry", "SymmetricSpaceRecord", "list_spaces", "get_entry", "build", "table1",
    "split_octonion_derivations", "g2_split_data", "CLASSES", "realify_complex", "realify_quaternion",
    "sl2c_borel", "toy_presentation", "printed_basis_report",
]

CLASSES = (
    "CARTAN_ORTHOGONAL_OBSTRUCTED", "POSITIVE_DIRECTION_OBSTRUCTED", "OFFDIAGONAL_CONTRADICTION",
    "NON_MINIMAL", "PRODUCT_REDUCTION", "UNRESOLVED", "FIXTURE",
)


# realification -----------------------------------------------------------------

def realify_complex(M):
    """Complex n x n matrix (numpy, integer or dyadic parts) -> exact real 2n x 2n."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    out = np.empty((2 * n, 2 * n), dtype=object)
    for a in range(n):
        for b in range(n):
            x, y = Fraction(M[a, b].real), Fraction(M[a, b].imag)
            out[2 * a:2 * a + 2, 2 * b:2 * b + 2] = [[x, -y], [y, x]]
    return out


def _lq(a, b, c, d):
    return [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]


def realify_quaternion(M):
    """Quaternionic n x n matrix given as an (n, n, 4) array -> exact real 4n x 4n."""
    M = np.asarray(M)
    n = M.shape[0]
    out = np.empty((4 * n, 4 * n), dtype=object)
    for a in range(n):
        for b in range(n):
            out[4 * a:4 * a + 4, 4 * b:4 * b + 4] = _lq(*(ex.frac(v) for v in M[a, b]))
    return out


_QUNIT = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}


def _qm(n, entries):
    """Quaternionic matrix from {(a, b): (unit, coeff)} style entries."""
    M = np.zeros((n, n, 4))
    for (a, b), terms in entries.items():
        for unit, coeff in terms:
            M[a, b] += coeff * np.array(_QUNIT[unit])
    return M


def _cm(n, entries):
    M = np.zeros((n, n), dtype=complex)
    for (a, b), v in entries.items():
        M[a, b] += v
    return M


def _block(*blocks):
    size = sum(b.shape[0] for b in blocks)
    out = np.empty((size, size), dtype=object)
    out[...] = Fraction(0)
    s = 0
    for b in blocks:
        out[s:s + b.shape[0], s:s + b.shape[0]] = b
        s += b.shape[0]
    return out


def _zeros(n):
    return ex.as_exact(np.zeros((n, n), dtype=int))


# classical algebras as labelled matrix lists ------------------------------------

def _su_basis(signs):
    """Basis of su(p,q) for the Hermitian form diag(signs); complex matrices with labels."""
    n = len(signs)
    out = []
    for a in range(n - 1):
        out.append((f"iH{a}", _cm(n, {(a, a): 1j, (a + 1, a + 1): -1j})))
    for a in range(n):
        for b in range(a + 1, n):
            if signs[a] == signs[b]:
                out.append((f"R{a}{b}", _cm(n, {(a, b): 1, (b, a): -1})))
                out.append((f"I{a}{b}", _cm(n, {(a, b): 1j, (b, a): 1j})))
            else:
                out.append((f"R{a}{b}", _cm(n, {(a, b): 1, (b, a): 1})))
                out.append((f"I{a}{b}", _cm(n, {(a, b): 1j, (b, a): -1j})))
    return out


def _sp_basis(signs):
    """Basis of sp(p,q) for diag(signs); quaternionic matrices with labels."""
    n = len(signs)
    out = []
    for a in range(n):
        for u in "ijk":
            out.append((f"{u}{a}{a}", _qm(n, {(a, a): [(u, 1)]})))
    for a in range(n):
        for b in range(a + 1, n):
            same = signs[a] == signs[b]
            out.append((f"R{a}{b}", _qm(n, {(a, b): [("1", 1)], (b, a): [("1", -1 if same else 1)]})))
            for u in "ijk":
                out.append((f"{u}{a}{b}", _qm(n, {(a, b): [(u, 1)], (b, a): [(u, 1 if same else -1)]})))
    return out


def _sl2c_named(tag=""):
    """Realified sl2(C) basis D, A, S, iD, iA, iS (complex 2x2 before realification)."""
    D = _cm(2, {(0, 0): 1, (1, 1): -1})
    A = _cm(2, {(0, 1): 1, (1, 0): -1})
    S = _cm(2, {(0, 1): 1, (1, 0): 1})
    return [(f"D{tag}", D), (f"A{tag}", A), (f"S{tag}", S),
            (f"iD{tag}", 1j * D), (f"iA{tag}", 1j * A), (f"iS{tag}", 1j * S)]


# presentation assembly ----------------------------------------------------------

class _Builder:
    """Collects realified basis matrices and turns them into a presentation."""

    def __init__(self, named_mats):
        self.labels = [lab for lab, _ in named_mats]
        self.mats = [m for _, m in named_mats]
        self.mb = MatrixBasis(self.mats, self.labels)
        self.g = self.mb.algebra
        k_idx, p_idx = [], []
        for i, M in enumerate(self.mats):
            if np.all(M == -M.T):
                k_idx.append(i)
            elif np.all(M == M.T):
                p_idx.append(i)
            else:
                raise ValueError(f"basis matrix {self.labels[i]} is neither symmetric nor skew")
        self.k = Subspace.from_indices(self.g, k_idx)
        self.p = Subspace.from_indices(self.g, p_idx)
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def vec(self, M):
        return self.mb.coords(M)

    def named(self, *labels):
        return [self.g.unit(self.index[lab]) for lab in labels]

    def sub(self, mats):
        return Subspace(self.g, np.column_stack([self.vec(M) for M in mats]))

    def sub_named(self, *labels):
        return Subspace.from_indices(self.g, [self.index[lab] for lab in labels])

    def present(self, h, name, params=None, ideals=None, units=None, m_labels=None, printed=None):
        """``units`` names one p-vector per ideal; the reference form gives it norm 1."""
        scales = None
        if units is not None:
            B = killing_form(self.g).gram
            scales = [B[self.index[u], self.index[u]] for u in units]
        m_basis = None
        if m_labels is not None:
            m_basis = np.column_stack(self.named(*m_labels))
        return HomogeneousPresentation(self.g, h, self.k, self.p, name=name, params=params,
                                       ideals=ideals, form_scales=scales, m_basis=m_basis,
                                       printed=printed or {})


def _check_coprime(params, name):
    if params is None or len(params) != 2:
        raise ValueError(f"{name} requires integer parameters (p, q)")
    p, q = (int(v) for v in params)
    if gcd(p, q) != 1:
        raise ValueError(f"{name}: (p, q) = ({p}, {q}) must be coprime")
    return p, q


# individual spaces ----------------------------------------------------------------

def _emb_q(M2, unit):
    """Real 2x2 matrix times a quaternion unit, as a 2x2 quaternionic matrix."""
    M = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            M[a, b] = M2[a][b] * np.array(_QUNIT[unit])
    return M


_U2 = [[1, 0], [0, 1]]
_D2 = [[1, 0], [0, -1]]
_A2 = [[0, 1], [-1, 0]]
_S2 = [[0, 1], [1, 0]]


def _sl2h():
    names = []
    for lab, M in (("D", _D2), ("S", _S2), ("A", _A2)):
        names.append((lab, realify_quaternion(_emb_q(M, "1"))))
        for u in "ijk":
            names.append((f"{u}{lab}", realify_quaternion(_emb_q(M, u))))
    for u in "ijk":
        names.append((f"{u}U", realify_quaternion(_emb_q(_U2, u))))
    order = ["D", "S", "iS", "jS", "kS", "A", "iA", "jA", "kA", "iD", "iU", "jD", "jU", "kD", "kU"]
    d = dict(names)
    b = _Builder([(lab, d[lab]) for lab in order])
    h = b.sub_named("iD", "iU", "jD", "jU", "kD", "kU")
    printed = {
        "p0^1": b.sub_named("D"),
        "p1^4 (as printed)": b.sub_named("S", "iS", "jS", "kS"),
        "q1^4 (as printed)": b.sub_named("A", "iA", "jA", "kA"),
        "p1^4": b.sub_named("S", "iA", "jA", "kA"),
        "q1^4": b.sub_named("A", "iS", "jS", "kS"),
    }
    return b.present(h, "SL2H_Sp1Sp1", units=["D"],
                     m_labels=["D", "S", "iA", "jA", "kA", "A", "iS", "jS", "kS"], printed=printed)


def _sl2c2():
    named = []
    for t in ("1", "2"):
        for lab, M in _sl2c_named(t):
            named.append((lab, (t, M)))

    def emb(t, M):
        Z = _zeros(4)
        R = realify_complex(M)
        return _block(R, Z) if t == "1" else _block(Z, R)

    b = _Builder([(lab, emb(t, M)) for lab, (t, M) in named])
    h = b.sub_named("iD1", "iD2")
    ideals = [b.sub_named("D1", "A1", "S1", "iD1", "iA1", "iS1"),
              b.sub_named("D2", "A2", "S2", "iD2", "iA2", "iS2")]
    printed = {
        "p0^2": b.sub_named("D1", "D2"),
        "q1^2": b.sub_named("A1", "iS1"), "p1^2": b.sub_named("S1", "iA1"),
        "q2^2": b.sub_named("A2", "iS2"), "p2^2": b.sub_named("S2", "iA2"),
    }
    return b.present(h, "SL2C2_U1U1", ideals=ideals, units=["D1", "D2"],
                     m_labels=["D1", "D2", "A1", "iS1", "S1", "iA1", "A2", "iS2", "S2", "iA2"],
                     printed=printed)


def _su21_sl2c_builder():
    """su(2,1) on indices 0..2 (index 2 noncompact) plus sl2(C) on indices 3, 4."""
    named = []
    for lab, M in _su_basis([1, 1, -1]):
        named.append((lab, _block(realify_complex(M), _zeros(4))))
    for lab, M in _sl2c_named():
        named.append((lab, _block(_zeros(6), realify_complex(M))))
    b = _Builder(named)
    su21 = b.sub_named(*[lab for lab, _ in _su_basis([1, 1, -1])])
    sl2c = b.sub_named(*[lab for lab, _ in _sl2c_named()])
    return b, [su21, sl2c]


def _c5(entries):
    return realify_complex(_cm(5, entries))


def _su21_sl2c_printed(b):
    return {
        "q0^1": b.sub([_c5({(0, 0): 1j, (1, 1): 1j, (2, 2): -2j})]),
        "p0^1": b.sub([_c5({(3, 3): 1, (4, 4): -1})]),
        "q1^2": b.sub([_c5({(3, 4): 1, (4, 3): -1}), _c5({(3, 4): 1j, (4, 3): 1j})]),
        "p2^2": b.sub([_c5({(3, 4): 1, (4, 3): 1}), _c5({(3, 4): 1j, (4, 3): -1j})]),
        "p1^4": b.sub([_c5({(0, 2): 1, (2, 0): 1}), _c5({(0, 2): 1j, (2, 0): -1j}),
                       _c5({(1, 2): 1, (2, 1): 1}), _c5({(1, 2): 1j, (2, 1): -1j})]),
    }


def _su2_01():
    return [_c5({(0, 0): 1j, (1, 1): -1j}), _c5({(0, 1): 1, (1, 0): -1}), _c5({(0, 1): 1j, (1, 0): 1j})]


def _su21xsl2c_su2_dpq(params):
    p, q = _check_coprime(params, "SU21xSL2C_SU2_Dpq")
    b, ideals = _su21_sl2c_builder()
    h1 = _c5({(0, 0): -1j * p, (1, 1): 1j * (p + q), (2, 2): -1j * q, (3, 3): 1j * (p - q), (4, 4): 1j * (q - p)})
    h = b.sub([h1] + _su2_01())
    return b.present(h, "SU21xSL2C_SU2_Dpq", params=(p, q), ideals=ideals, units=["R02", "D"],
                     printed=_su21_sl2c_printed(b))


def _su21xsl2c_su2xdpq(params):
    p, q = _check_coprime(params, "SU21xSL2C_SU2xDpq")
    b, ideals = _su21_sl2c_builder()
    t = _c5({(0, 0): 1j * p, (1, 1): 1j * p, (2, 2): -2j * p, (3, 3): 1j * q, (4, 4): -1j * q})
    h = b.sub(_su2_01() + [t])
    return b.present(h, "SU21xSL2C_SU2xDpq", params=(p, q), ideals=ideals, units=["R02", "D"],
                     printed=_su21_sl2c_printed(b))


def _su21xsl2c_u1dsu2():
    b, ideals = _su21_sl2c_builder()
    Z = _c5({(0, 0): 1j, (1, 1): 1j, (2, 2): -2j})
    diag = [_c5({(0, 0): 1j, (1, 1): -1j, (3, 3): 1j, (4, 4): -1j}),
            _c5({(0, 1): 1, (1, 0): -1, (3, 4): 1, (4, 3): -1}),
            _c5({(0, 1): 1j, (1, 0): 1j, (3, 4): 1j, (4, 3): 1j})]
    h = b.sub([Z] + diag)
    return b.present(h, "SU21xSL2C_U1DSU2", ideals=ideals, units=["R02", "D"])


def _sp11_dpq(params):
    p, q = _check_coprime(params, "Sp11_Dpq")
    b = _Builder([(lab, realify_quaternion(M)) for lab, M in _sp_basis([1, -1])])
    hq = _qm(2, {(0, 0): [("i", p)], (1, 1): [("i", q)]})
    h = b.sub([realify_quaternion(hq)])
    R = realify_quaternion
    printed = {
        "q0^1": b.sub([R(_qm(2, {(0, 0): [("i", -q)], (1, 1): [("i", q)]}))]),
        "q1^2": b.sub_named("j00", "k00"),
        "q2^2": b.sub_named("j11", "k11"),
        "p1^2": b.sub([R(_qm(2, {(0, 1): [("1", 1)], (1, 0): [("1", 1)]})),
                       R(_qm(2, {(0, 1): [("i", 1)], (1, 0): [("i", -1)]}))]),
        "p2^2": b.sub([R(_qm(2, {(0, 1): [("j", 1)], (1, 0): [("j", -1)]})),
                       R(_qm(2, {(0, 1): [("k", 1)], (1, 0): [("k", -1)]}))]),
    }
    return b.present(h, "Sp11_Dpq", params=(p, q), units=["R01"], printed=printed)


def _sp2r_named():
    """sp(2,R) as 4x4 real matrices [[A, B], [C, -A^T]] with B, C symmetric."""
    def E(a, b):
        M = np.zeros((2, 2), dtype=int)
        M[a, b] = 1
        return M
    Z = np.zeros((2, 2), dtype=int)
    syms = [("00", E(0, 0)), ("01", E(0, 1) + E(1, 0)), ("11", E(1, 1))]
    skew = E(0, 1) - E(1, 0)
    out = [("kA", np.block([[skew, Z], [Z, skew]]))]
    out += [(f"kB{t}", np.block([[Z, S], [-S, Z]])) for t, S in syms]
    out += [(f"pA{t}", np.block([[S, Z], [Z, -S]])) for t, S in syms]
    out += [(f"pB{t}", np.block([[Z, S], [S, Z]])) for t, S in syms]
    return [(lab, ex.as_exact(M)) for lab, M in out]


def _sp2r_dpq(params):
    p, q = _check_coprime(params, "Sp2R_Dpq")
    b = _Builder(_sp2r_named())
    H = np.zeros((4, 4), dtype=int)
    H[0, 2], H[1, 3], H[2, 0], H[3, 1] = p, q, -p, -q
    h = b.sub([ex.as_exact(H)])
    return b.present(h, "Sp2R_Dpq", params=(p, q), units=["pA00"])


def _su_space(signs, h_mats, name, units, printed=None):
    b = _Builder([(lab, realify_complex(M)) for lab, M in _su_basis(signs)])
    h = b.sub([realify_complex(M) for M in h_mats])
    pr = {k: b.sub([realify_complex(M) for M in v]) for k, v in (printed or {}).items()}
    return b.present(h, name, units=units, printed=pr)


def _su31():
    n = 4
    hm = [_cm(n, {(0, 0): 1j, (1, 1): -1j}), _cm(n, {(1, 1): 1j, (2, 2): -1j}),
          _cm(n, {(2, 2): 1j, (3, 3): -1j}), _cm(n, {(2, 3): 1, (3, 2): -1}), _cm(n, {(2, 3): 1j, (3, 2): 1j})]
    return _su_space([-1, 1, 1, 1], hm, "SU31_SU1U1U2", ["R01"])


def _su22_s():
    n = 4
    hm = [_cm(n, {(0, 0): 1j, (1, 1): -1j}), _cm(n, {(1, 1): 1j, (2, 2): -1j}),
          _cm(n, {(2, 2): 1j, (3, 3): -1j}), _cm(n, {(2, 3): 1, (3, 2): -1}), _cm(n, {(2, 3): 1j, (3, 2): 1j})]
    printed = {
        "q1^2": [_cm(n, {(0, 1): 1, (1, 0): -1}), _cm(n, {(0, 1): 1j, (1, 0): 1j})],
        "p1^4": [_cm(n, {(0, 2): 1, (2, 0): 1}), _cm(n, {(0, 2): 1j, (2, 0): -1j}),
                 _cm(n, {(0, 3): 1, (3, 0): 1}), _cm(n, {(0, 3): 1j, (3, 0): -1j})],
        "p2^4": [_cm(n, {(1, 2): 1, (2, 1): 1}), _cm(n, {(1, 2): 1j, (2, 1): -1j}),
                 _cm(n, {(1, 3): 1, (3, 1): 1}), _cm(n, {(1, 3): 1j, (3, 1): -1j})],
    }
    return _su_space([1, 1, -1, -1], hm, "SU22_SU1U1U2", ["R02"], printed)


def _su2_block(n, a, b):
    return [_cm(n, {(a, a): 1j, (b, b): -1j}), _cm(n, {(a, b): 1, (b, a): -1}), _cm(n, {(a, b): 1j, (b, a): 1j})]


def _su22_su2su2():
    return _su_space([1, 1, -1, -1], _su2_block(4, 0, 1) + _su2_block(4, 2, 3), "SU22_SU2SU2", ["R02"])


def _su41():
    n = 5
    hm = [M for lab, M in _su_basis([1, 1, 1, 1]) for M in [np.pad(M, ((0, 1), (0, 1)))]]
    return _su_space([1, 1, 1, 1, -1], hm, "SU41_SU4", ["R04"])


def _sp12():
    b = _Builder([(lab, realify_quaternion(M)) for lab, M in _sp_basis([1, -1, -1])])
    R = realify_quaternion
    hm = [_qm(3, {(0, 0): [("i", 1)]})]
    hm += [np.pad(M, ((1, 0), (1, 0), (0, 0))) for lab, M in _sp_basis([1, 1])]
    h = b.sub([R(M) for M in hm])
    printed = {"q1^2": b.sub_named("j00", "k00"),
               "p1^8": b.sub_named("R01", "i01", "j01", "k01", "R02", "i02", "j02", "k02")}
    return b.present(h, "Sp12_U1Sp2", units=["R01"], printed=printed)


def _su21sq_builder():
    named = []
    for t, pos in (("_1", 0), ("_2", 1)):
        for lab, M in _su_basis([1, 1, -1]):
            R = realify_complex(M)
            named.append((lab + t, _block(R, _zeros(6)) if pos == 0 else _block(_zeros(6), R)))
    b = _Builder(named)
    ideals = [b.sub_named(*[lab + "_1" for lab, _ in _su_basis([1, 1, -1])]),
              b.sub_named(*[lab + "_2" for lab, _ in _su_basis([1, 1, -1])])]
    return b, ideals


def _c6(entries):
    return realify_complex(_cm(6, entries))


def _su2sq_6():
    out = []
    for off in (0, 3):
        a, c = off, off + 1
        out += [_c6({(a, a): 1j, (c, c): -1j}), _c6({(a, c): 1, (c, a): -1}), _c6({(a, c): 1j, (c, a): 1j})]
    return out


def _su21sq_su2sq():
    b, ideals = _su21sq_builder()
    return b.present(b.sub(_su2sq_6()), "SU21sq_SU2sq", ideals=ideals, units=["R02_1", "R02_2"])


def _su21sq_su2sq_dpq(params):
    p, q = _check_coprime(params, "SU21sq_SU2sq_Dpq")
    b, ideals = _su21sq_builder()
    t = _c6({(0, 0): 1j * p, (1, 1): 1j * p, (2, 2): -2j * p, (3, 3): 1j * q, (4, 4): 1j * q, (5, 5): -2j * q})
    return b.present(b.sub(_su2sq_6() + [t]), "SU21sq_SU2sq_Dpq", params=(p, q), ideals=ideals,
                     units=["R02_1", "R02_2"])


def _sl2c2_dsu2():
    named = []
    for t in ("1", "2"):
        for lab, M in _sl2c_named(t):
            R = realify_complex(M)
            named.append((lab, _block(R, _zeros(4)) if t == "1" else _block(_zeros(4), R)))
    b = _Builder(named)
    h = Subspace(b.g, np.column_stack([b.named(x + "1")[0] + b.named(x + "2")[0] for x in ("iD", "A", "iS")]))
    ideals = [b.sub_named(*[lab for lab, _ in _sl2c_named("1")]), b.sub_named(*[lab for lab, _ in _sl2c_named("2")])]
    return b.present(h, "SL2C2_DSU2", ideals=ideals, units=["D1", "D2"])


def _sp11xsl2c():
    named = []
    for lab, M in _sp_basis([1, -1]):
        named.append((lab, _block(realify_quaternion(M), _zeros(4))))
    for lab, M in _sl2c_named():
        named.append((lab, _block(_zeros(8), realify_complex(M))))
    b = _Builder(named)
    e = lambda lab: b.named(lab)[0]
    # sp(1) in the first slot, and the second slot paired with su(2) = {iD, A, iS}
    cols = [e("i00"), e("j00"), e("k00"),
            e("i11") + e("iD"), e("j11") + e("A"), e("k11") + e("iS")]
    h = Subspace(b.g, np.column_stack(cols))
    ideals = [b.sub_named(*[lab for lab, _ in _sp_basis([1, -1])]), b.sub_named(*[lab for lab, _ in _sl2c_named()])]
    return b.present(h, "Sp11xSL2C_Sp1DSU2", ideals=ideals, units=["R01", "D"])


# split G2 -------------------------------------------------------------------------

def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.array([a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3, a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                     a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1, a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0])


def _qconj(a):
    return np.array([a[0], -a[1], -a[2], -a[3]])


def _split_octonion_product(x, y):
    # Cayley-Dickson doubling of H with the split sign
    a, b, c, d = x[:4], x[4:], y[:4], y[4:]
    return np.concatenate([_qmul(a, c) + _qmul(_qconj(d), b), _qmul(d, a) + _qmul(b, _qconj(c))])


def split_octonion_derivations():
    """Basis of Der(split octonions) as 8x8 integer matrices (the split form of G2)."""
    E = np.eye(8, dtype=int)
    T = np.array([[_split_octonion_product(E[i], E[j]) for j in range(8)] for i in range(8)])
    rows = []
    for i in range(8):
        for j in range(8):
            for k in range(8):
                r = np.zeros((8, 8), dtype=int)
                r[k, :] += T[i, j]
                r[:, i] -= T[:, j, k]
                r[:, j] -= T[i, :, k]
                rows.append(r.ravel())
    ns = ex.nullspace(np.array(rows, dtype=object), 64)
    mats = [ns[:, c].reshape(8, 8) for c in range(ns.shape[1])]
    # prefer a basis of symmetric and skew matrices
    parts = []
    for M in mats:
        parts += [(M + M.T) / 2, (M - M.T) / 2]
    basis = []
    for M in parts:
        if ex.is_zero(M):
            continue
        cand = basis + [M]
        if ex.rank(np.column_stack([m.ravel() for m in cand])) == len(cand):
            basis.append(M)
    skew = [M for M in basis if np.all(M == -M.T)]
    sym = [M for M in basis if np.all(M == M.T)]
    return skew + sym


def g2_split_data():
    """JSON payload for the split G2 algebra: skew (compact) basis first, then symmetric."""
    mats = split_octonion_derivations()
    nk = sum(1 for M in mats if np.all(M == -M.T))
    labels = [f"K{i}" for i in range(nk)] + [f"P{i}" for i in range(len(mats) - nk)]
    alg = MatrixBasis(mats, labels, name="G2split").algebra
    return {"algebra": alg.to_json(), "k_dim": nk,
            "matrices": [[[ex.fmt(v) for v in row] for row in M] for M in mats]}


def _g2_data():
    with resources.files("einshom").joinpath("data/g2_split.json").open() as fh:
        return json.load(fh)


def _g2_algebra():
    data = _g2_data()
    g = LieAlgebra.from_json(data["algebra"], name="G2split")
    k = Subspace.from_indices(g, range(data["k_dim"]))
    p = Subspace.from_indices(g, range(data["k_dim"], g.dim))
    return g, k, p


def _g2_k_ideals(g, k):
    """The two su(2) ideals of k, split exactly through the symmetric commutant."""
    ad = [ex.solve(k.basis, ex.exact_matmul(g.ad(k.basis[:, i]), k.basis)) for i in range(k.dim)]
    B = killing_form(g).restrict(k)
    parts = _split(ex.identity(k.dim), ad, -B, np.random.default_rng(0), 1e-10)
    return [Subspace(g, ex.exact_matmul(k.basis, W), check=False) for W, _ in parts]


def _spin_levels(g, I, p):
    """Number of distinct |eigenvalues| of a nonzero element of I acting on p.

    An su(2) ideal acting through spin 3/2 gives two levels (3 and 1),
    one acting through spin 1/2 gives a single level.
    """
    x = ex.to_float(I.basis[:, 0])
    M = np.linalg.lstsq(ex.to_float(p.basis), ex.to_float(g.ad(I.basis[:, 0])) @ ex.to_float(p.basis),
                        rcond=None)[0]
    mags = np.abs(np.linalg.eigvals(M).imag)
    levels = []
    for v in sorted(mags):
        if not levels or v - levels[-1] > 1e-8 * max(1.0, v):
            levels.append(v)
    return len(levels)


def _g2_u2(which):
    """U(2)_3: su(2) acting with spin 3/2 plus a circle in the other factor; U(2)_1 the reverse."""
    g, k, p = _g2_algebra()
    I1, I2 = _g2_k_ideals(g, k)
    long_, short = (I1, I2) if _spin_levels(g, I1, p) == 1 else (I2, I1)
    su, torus = (short, long_) if which == 3 else (long_, short)
    h = Subspace(g, np.column_stack([su.basis, torus.basis[:, :1]]))
    name = "G2_U2_1" if which == 1 else "G2_U2_3"
    B = killing_form(g).gram
    return HomogeneousPresentation(g, h, k, p, name=name, form_scales=[B[k.dim, k.dim]])


# fixtures -------------------------------------------------------------------------

def _flat(n=3):
    g = abelian(n)
    full = Subspace.full(g)
    return HomogeneousPresentation(g, Subspace(g), full, Subspace(g), name="FLAT_R3",
                                   reference=ex.identity(n), cartan=False)


def _su2_biinv():
    g = su2()
    return HomogeneousPresentation(g, Subspace(g), Subspace.full(g), Subspace(g), name="SU2_BIINV")


def _aff1():
    g = solvable_2d()
    return HomogeneousPresentation(g, Subspace(g), Subspace.full(g), Subspace(g), name="AFF1",
                                   reference=ex.identity(2), cartan=False)


def toy_presentation():
    """sl2(R) + su(2) with h = 0 and the Cartan split k = span{e - f} + su(2)."""
    g = toy_sl2r_su2()
    e = g.unit
    k = Subspace(g, np.column_stack([e(1) - e(2), e(3), e(4), e(5)]))
    p = Subspace(g, np.column_stack([e(0), e(1) + e(2)]))
    ideals = [Subspace.from_indices(g, [0, 1, 2]), Subspace.from_indices(g, [3, 4, 5])]
    # B(h,h) = 8 on sl2(R), B = -2 I on su(2)
    return HomogeneousPresentation(g, Subspace(g), k, p, name="TOY_SL2R_SU2", ideals=ideals,
                                   form_scales=[8, 2])


def sl2c_borel(pres):
    """Realified Borel a0 + n0 = span{D, E, iE} of the sl2(C) ideal, with E = (S + A)/2."""
    g = pres.g
    lab = {s: i for i, s in enumerate(g.basis_labels)}
    suffix = "" if "D" in lab else ("2" if "D2" in lab else "1")
    D, S, A, iS, iA = (g.unit(lab[x + suffix]) for x in ("D", "S", "A", "iS", "iA"))
    half = Fraction(1, 2)
    return Subspace(g, np.column_stack([D, half * (S + A), half * (iS + iA)]))


# catalog entries -------------------------------------------------------------------

def _weights_signature(q_weights, p_weights, q_trivial=0, p_trivial=0):
    """Expected signature for a circle acting on 2-dim modules with integer weights.

    Nonzero weight w gives a complex-type plane; weight 0 gives two
    trivial lines.  Modules are isomorphic iff their |weights| agree.
    """
    mods = []
    for side, ws, triv in (("q", q_weights, q_trivial), ("p", p_weights, p_trivial)):
        mods += [(1, side, 0)] * triv
        for w in ws:
            mods += [(1, side, 0)] * 2 if w == 0 else [(2, side, abs(w))]
    count = {}
    for d, s, w in mods:
        count[w] = count.get(w, 0) + 1
    return tuple(sorted((d, s, "R" if w == 0 else "C", count[w]) for d, s, w in mods))


def _sig(*items):
    return tuple(sorted(items))


@dataclass
class CatalogEntry:
    name: str
    title: str
    builder: object = field(repr=False)
    expected_class: object
    expected_signature: object = None
    listing: str = ""
    listed_isomorphisms: tuple = ()
    takes_params: bool = False
    default_params: tuple = None
    notes: str = ""
    fixture: bool = False

    def build(self, params=None):
        return build(self.name, params)

    def klass(self, params=None):
        c = self.expected_class
        return c(self._params(params)) if callable(c) else c

    def signature(self, params=None):
        s = self.expected_signature
        return s(self._params(params)) if callable(s) else s

    def _params(self, params):
        if not self.takes_params:
            return None
        return tuple(params) if params is not None else self.default_params

    def display(self, params=None):
        pr = self._params(params)
        return f"{self.name}({pr[0]},{pr[1]})" if pr else self.name


def _sp11_sig(pq):
    p, q = pq
    return _weights_signature([2 * p, 2 * q], [p - q, p + q], q_trivial=1)


def _sp11_class(pq):
    sig = _sp11_sig(pq)
    # mixed q/p classes exist iff some class size exceeds its same-side count
    return "UNRESOLVED" if _mixed(pq, [2 * pq[0], 2 * pq[1]], [pq[0] - pq[1], pq[0] + pq[1]], 1) else \
        "CARTAN_ORTHOGONAL_OBSTRUCTED"


def _mixed(pq, qw, pw, q_triv):
    qs = {abs(w) for w in qw} | ({0} if q_triv else set())
    ps = {abs(w) for w in pw}
    return bool(qs & ps)


def _sp2r_sig(pq):
    p, q = pq
    return _weights_signature([p - q], [2 * p, p + q, 2 * q], q_trivial=1)


def _sp2r_class(pq):
    p, q = pq
    return "UNRESOLVED" if _mixed(pq, [p - q], [2 * p, p + q, 2 * q], 1) else "CARTAN_ORTHOGONAL_OBSTRUCTED"


def _su21sl2c_signature(w, four_type):
    """sl2(C) planes carry circle weight w; the su(2,1) part is one 4-dim module."""
    base = _weights_signature([w], [w], q_trivial=1, p_trivial=1)
    return tuple(sorted(base + ((4, "p", four_type, 1),)))


def _su21sl2c_sig(pq):
    # the circle acts on C^2 with weight proportional to q and on the sl2(C) planes with 2(p - q)
    p, q = pq
    return _su21sl2c_signature(2 * (p - q), "C" if q else "H")


def _su21sl2c_x_sig(pq):
    p, q = pq
    return _su21sl2c_signature(2 * q, "C" if p else "H")


def _su21sq_dpq_sig(pq):
    p, q = pq
    t1 = "H" if p == 0 else "C"
    t2 = "H" if q == 0 else "C"
    return _sig((1, "q", "R", 1), (4, "p", t1, 1), (4, "p", t2, 1))


_ENTRIES = [
    CatalogEntry("SL2H_Sp1Sp1", "SL2(H)/Sp(1)Sp(1)", _sl2h, "OFFDIAGONAL_CONTRADICTION",
                 _sig((1, "p", "R", 1), (4, "p", "R", 2), (4, "q", "R", 2)),
                 "q1^4 + p0^1 + p1^4", (("q1^4", "p1^4"),)),
    CatalogEntry("Sp11_Dpq", "Sp(1,1)/D_{p,q}U(1)", _sp11_dpq, _sp11_class, _sp11_sig,
                 "q0^1 + q1^2 + q2^2 + p1^2 + p2^2", takes_params=True, default_params=(1, 1),
                 notes="q1^2 ~ q2^2 ~ p2^2 iff p = q = 1; p2^2 ~ p1^2 iff p = 0, q = 1"),
    CatalogEntry("Sp2R_Dpq", "Sp(2,R)/D_{p,q}U(1)", _sp2r_dpq, _sp2r_class, _sp2r_sig,
                 "q0^1 + q1^2 + p1^2 + p2^2 + p3^2", takes_params=True, default_params=(2, 3)),
    CatalogEntry("SU31_SU1U1U2", "SU(3,1)/S(U(1)U(1)U(2))", _su31, "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((4, "q", "C", 1), (2, "p", "C", 1), (4, "p", "C", 1)), "q1^4 + p1^2 + p2^4"),
    CatalogEntry("SL2C2_U1U1", "SL2(C)xSL2(C)/U(1)U(1)", _sl2c2, "OFFDIAGONAL_CONTRADICTION",
                 _sig((1, "p", "R", 2), (1, "p", "R", 2), (2, "q", "C", 2), (2, "p", "C", 2),
                      (2, "q", "C", 2), (2, "p", "C", 2)),
                 "q1^2 + q2^2 + p0^2 + p1^2 + p2^2", (("q1^2", "p1^2"), ("q2^2", "p2^2"))),
    CatalogEntry("SU21xSL2C_SU2_Dpq", "SU(2,1)xSL2(C)/D_{p,q}U(1)(SU(2)x{e})", _su21xsl2c_su2_dpq,
                 "POSITIVE_DIRECTION_OBSTRUCTED", _su21sl2c_sig, "q0^1 + q1^2 + p0^1 + p1^4 + p2^2",
                 (("p2^2", "q1^2"),), takes_params=True, default_params=(1, 2)),
    CatalogEntry("SU21xSL2C_SU2xDpq", "SU(2,1)xSL2(C)/SU(2)xD_{p,q}U(1)", _su21xsl2c_su2xdpq,
                 "POSITIVE_DIRECTION_OBSTRUCTED", _su21sl2c_x_sig, "q0^1 + q1^2 + p0^1 + p1^4 + p2^2",
                 (("p2^2", "q1^2"),), takes_params=True, default_params=(1, 2),
                 notes="classified by the computation for the previous family; the literature "
                       "wording for this space is ambiguous"),
    CatalogEntry("SU21sq_SU2sq", "SU(2,1)^2/SU(2)^2", _su21sq_su2sq, "PRODUCT_REDUCTION",
                 _sig((1, "q", "R", 2), (1, "q", "R", 2), (4, "p", "H", 1), (4, "p", "H", 1)),
                 "q0^2 + p1^4 + p2^4"),
    CatalogEntry("SU21sq_SU2sq_Dpq", "SU(2,1)^2/SU(2)^2 D_{p,q}U(1)", _su21sq_su2sq_dpq,
                 "CARTAN_ORTHOGONAL_OBSTRUCTED", _su21sq_dpq_sig, "q0^1 + p1^4 + p2^4",
                 takes_params=True, default_params=(2, 3)),
    CatalogEntry("SU22_SU1U1U2", "SU(2,2)/S(U(1)U(1)U(2))", _su22_s, "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((2, "q", "C", 1), (4, "p", "C", 1), (4, "p", "C", 1)), "q1^2 + p1^4 + p2^4"),
    CatalogEntry("SU22_SU2SU2", "SU(2,2)/SU(2)SU(2)", _su22_su2su2, "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((1, "q", "R", 1), (4, "p", "R", 2), (4, "p", "R", 2)), "q0^1 + p1^4 + p1^4"),
    CatalogEntry("SU41_SU4", "SU(4,1)/SU(4)", _su41, "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((1, "q", "R", 1), (8, "p", "C", 1)), "q0^1 + p1^8"),
    CatalogEntry("Sp12_U1Sp2", "Sp(1,2)/U(1)Sp(2)", _sp12, "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((2, "q", "C", 1), (8, "p", "C", 1)), "q1^2 + p1^8"),
    CatalogEntry("G2_U2_1", "G2(split)/U(2)_1", lambda: _g2_u2(1), "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((2, "q", "C", 1), (4, "p", "C", 1), (4, "p", "C", 1)), "q1^2 + p1^4 + p1^4"),
    CatalogEntry("G2_U2_3", "G2(split)/U(2)_3", lambda: _g2_u2(3), "CARTAN_ORTHOGONAL_OBSTRUCTED",
                 _sig((2, "q", "C", 1), (8, "p", "C", 1)), "q1^2 + p1^8"),
    CatalogEntry("SL2C2_DSU2", "SL2(C)xSL2(C)/DSU(2)", _sl2c2_dsu2, "NON_MINIMAL",
                 _sig((3, "q", "R", 3), (3, "p", "R", 3), (3, "p", "R", 3))),
    CatalogEntry("SU21xSL2C_U1DSU2", "SU(2,1)xSL2(C)/U(1)DSU(2)", _su21xsl2c_u1dsu2, "NON_MINIMAL",
                 _sig((3, "q", "R", 2), (3, "p", "R", 2), (4, "p", "C", 1))),
    CatalogEntry("Sp11xSL2C_Sp1DSU2", "Sp(1,1)xSL2(C)/Sp(1)DSU(2)", _sp11xsl2c, "NON_MINIMAL",
                 _sig((3, "q", "R", 2), (3, "p", "R", 2), (4, "p", "R", 1))),
    # fixtures
    CatalogEntry("FLAT_R3", "flat R^3", _flat, "FIXTURE", _sig(*[(1, "q", "R", 3)] * 3), fixture=True),
    CatalogEntry("SU2_BIINV", "SU(2) with h = 0", _su2_biinv, "FIXTURE", _sig(*[(1, "q", "R", 3)] * 3),
                 fixture=True),
    CatalogEntry("AFF1", "2-dim solvable [x,y] = y", _aff1, "FIXTURE", _sig(*[(1, "q", "R", 2)] * 2),
                 fixture=True),
    CatalogEntry("TOY_SL2R_SU2", "sl2(R) + su(2) with h = 0", toy_presentation, "FIXTURE",
                 _sig(*([(1, "q", "R", 6)] * 4 + [(1, "p", "R", 6)] * 2)), fixture=True),
]

_BY_NAME = {e.name: e for e in _ENTRIES}


def list_spaces(include_fixtures=False):
    return [e for e in _ENTRIES if include_fixtures or not e.fixture]


def get_entry(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown space {name!r}") from None


@lru_cache(maxsize=None)
def _build_cached(name, params):
    e = get_entry(name)
    return e.builder(params) if e.takes_params else e.builder()


def build(name, params=None):
    """Presentation for a catalog name; parametric entries use their default (p, q)."""
    e = get_entry(name)
    if e.takes_params:
        params = tuple(int(v) for v in params) if params is not None else e.default_params
        _check_coprime(params, name)
    else:
        if params is not None:
            raise ValueError(f"{name} takes no parameters")
        params = None
    return _build_cached(name, params)


# Table 1 -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricSpaceRecord:
    dim_quotient: int
    label: str
    dim_group: int


def table1():
    with resources.files("einshom").joinpath("data/table1.json").open() as fh:
        rows = json.load(fh)
    return [SymmetricSpaceRecord(*r) for r in rows]


def printed_basis_report(pres):
    """Where each distinguished (printed) subspace sits relative to the computed q, p and h.

    ``side`` is "q" or "p" when the subspace lies in that summand,
    ``mod_h`` records whether it lies in k (or p) only after adding h,
    and ``invariant`` whether it is stable under ad(h) modulo h.
    """
    from .homspace import reductive_complement
    rd = reductive_complement(pres)
    g, h = pres.g, pres.h
    q = Subspace(g, ex.exact_matmul(rd.m_basis, rd.q_coords), check=False)
    p = Subspace(g, ex.exact_matmul(rd.m_basis, rd.p_coords), check=False)
    out = {}
    for label, S in pres.printed.items():
        side = "q" if q.contains_subspace(S) else "p" if p.contains_subspace(S) else None
        mod_h = side is not None or (q + h).contains_subspace(S)
        out[label] = {"side": side, "in_k_mod_h": bool(mod_h),
                      "invariant": (S + h).contains_subspace(h.bracket_with(S))}
    return out
