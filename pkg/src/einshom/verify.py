"""The verification suite behind ``einshom verify-paper`` and the acceptance tests.

Each check returns a :class:`CheckResult` carrying its numeric evidence
and the tolerance it was judged at.  Checks are grouped into nine
numbered criteria; ``case`` keys select subsets from the command line.
"""

from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
import math
import os
import time

import numpy as np

from . import __version__
from . import _exact as ex
from . import catalog as cat
from .analysis import (CONVERGED, NON_MINIMAL, SearchConfig, borel_nilradical_span, classify,
                       integral_minimality_check, minimality_obstruction, nonnegative_direction_check,
                       offdiagonal_vanishing_sl2h, orthogonality_report, search_einstein)
from .curvature import (EINSTEIN, closed_form_sl2c2, closed_form_sl2h, einstein_report, ricci,
                        sl2c2_delta, sl2c2_offdiagonal, sl2h_branch_value, sl2h_offdiagonal)
from .homspace import decompose_isotropy, reductive_complement
from .lie_core import BilinearForm, Subspace, verify_cartan_split, verify_jacobi
from .metrics import build_Q, moduli_space, random_point

__all__ = ["CheckResult", "CHECKS", "CASES", "run_checks", "make_report", "threads"]

DELTA_PQ_GRID = ((1, 1), (0, 1), (2, 3), (1, 2))


@dataclass
class CheckResult:
    id: str
    criterion: int
    case: str
    title: str
    passed: bool
    tol: object
    evidence: dict = field(default_factory=dict)
    kind: str = "assertion"        # or "corroboration"
    seconds: float = 0.0

    def to_dict(self):
        return {"id": self.id, "criterion": self.criterion, "case": self.case, "title": self.title,
                "passed": self.passed, "tol": self.tol, "kind": self.kind,
                "evidence": _jsonable(self.evidence)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if hasattr(x, "numerator") and not isinstance(x, (int, bool)):
        return ex.fmt(x)
    return x


def _rd(name, params=None):
    return reductive_complement(cat.build(name, params))


def _all_builds():
    out = []
    for e in cat.list_spaces(include_fixtures=True):
        grid = DELTA_PQ_GRID if e.takes_params else (None,)
        for pq in grid:
            out.append((e, pq))
    return out


# 1 exactness ------------------------------------------------------------------------------

def check_exactness():
    rows, ok = [], True
    for e, pq in _all_builds():
        pres = e.build(pq)
        jac = verify_jacobi(pres.g)
        inv = pres.killing.is_ad_invariant()
        split = verify_cartan_split(pres.g, pres.k, pres.p).ok if pres.cartan else None
        good = jac == 0 and inv and split is not False
        ok &= good
        rows.append({"space": e.display(pq), "jacobi": ex.fmt(jac), "killing_invariant": inv,
                     "cartan_split": split})
    return ok, {"spaces": rows}


# 2 decomposition ------------------------------------------------------------------------------

def check_decomposition():
    rows, ok = [], True
    for e, pq in _all_builds():
        iso = decompose_isotropy(_rd(e.name, pq))
        got, want = iso.signature(), e.signature(pq)
        ok &= got == want
        rows.append({"space": e.display(pq), "match": got == want, "computed": iso.summary(),
                     "signature": [list(s) for s in got]})
    return ok, {"spaces": rows}


# 3 SL2(H) closed form ------------------------------------------------------------------------------

def _sl2h_points(rng, count):
    out = []
    for _ in range(count):
        a, b, c = np.exp(rng.uniform(-0.7, 0.7, 3))
        d = rng.uniform(-0.9, 0.9) * math.sqrt(b * c)
        out.append((a, b, c, d))
    return out


def check_sl2h_closed_form(samples=100, seed=0, rtol=1e-8):
    rd = _rd("SL2H_Sp1Sp1")
    mod = moduli_space(decompose_isotropy(rd))
    rng = np.random.default_rng(seed)
    worst = {"matrix": 0.0, "offdiag": 0.0, "branch": 0.0}
    branch_min = math.inf
    at_identity = None
    for a, b, c, d in _sl2h_points(rng, samples):
        R = ricci(rd, build_Q(mod, dict(a=a, b=b, c=c, d=d), check_invariance=False)).matrix
        C = closed_form_sl2h(a, b, c, d)
        worst["matrix"] = max(worst["matrix"], float((np.abs(R - C) / np.maximum(1, np.abs(C))).max()))
        s = sl2h_offdiagonal(a, b, c, d)
        worst["offdiag"] = max(worst["offdiag"], abs(R[1, 5] - s) / max(1, abs(s)))
        bb = (7 * a + 2 * c) / 2
        if d * d < bb * c:
            Rb = ricci(rd, build_Q(mod, dict(a=a, b=bb, c=c, d=d), check_invariance=False)).matrix
            v = sl2h_branch_value(a, bb, c, d)
            worst["branch"] = max(worst["branch"], abs(Rb[1, 1] - v) / max(1, abs(v)))
            branch_min = min(branch_min, float(Rb[1, 1]))
    R0 = ricci(rd, build_Q(mod, dict(a=1, b=1, c=1, d=0))).matrix
    at_identity = {"computed_diag": [float(R0[0, 0]), float(R0[1, 1]), float(R0[5, 5])],
                   "closed_form_diag": [float(x) for x in np.diag(closed_form_sl2h(1, 1, 1, 0))[[0, 1, 5]]]}
    branch = offdiagonal_vanishing_sl2h()["summary"]
    passed = (worst["matrix"] < rtol and worst["offdiag"] < rtol and worst["branch"] < rtol
              and branch_min > 0)
    return passed, {"max_relative_diff": worst, "branch_ric22_min": branch_min, "at_(1,1,1,0)": at_identity,
                    "branch_analysis": branch, "samples": samples}


# 4 SL2(C)^2 closed form ----------------------------------------------------------------------------------

_SL2C2_ENTRIES = {"R1": (0, 0), "R2": (1, 1), "R3": (0, 1), "R4": (2, 2), "R5": (2, 5),
                  "R6": (4, 4), "R7": (6, 6), "R8": (6, 9), "R9": (8, 8)}


def check_sl2c2(samples=100, seed=0, rtol=1e-8):
    rd = _rd("SL2C2_U1U1")
    mod = moduli_space(decompose_isotropy(rd))
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in _SL2C2_ENTRIES}
    stand = {"vs_oracle": 0.0, "vs_matrix": 0.0}
    delta_min, zero_max, nonzero_min = math.inf, 0.0, math.inf
    for k in range(samples):
        v = {s: float(x) for s, x in random_point(mod, rng).values.items()}
        R = ricci(rd, build_Q(mod, v, check_invariance=False)).matrix
        M, s = closed_form_sl2c2(**v)
        for name, (i, j) in _SL2C2_ENTRIES.items():
            worst[name] = max(worst[name], abs(R[i, j] - M[i, j]) / max(1, abs(R[i, j])))
        stand["vs_oracle"] = max(stand["vs_oracle"], abs(s - R[0, 1]) / max(1, abs(R[0, 1])))
        stand["vs_matrix"] = max(stand["vs_matrix"], abs(s - M[0, 1]) / max(1, abs(M[0, 1])))
        delta_min = min(delta_min, sl2c2_delta(**v))
        for c, zero in ((0.0, True), (0.3 if k % 2 else -0.3, False)):
            w = dict(v, c=c)
            r12 = abs(ricci(rd, build_Q(mod, w, check_invariance=False)).matrix[0, 1])
            if zero:
                zero_max = max(zero_max, r12)
            else:
                nonzero_min = min(nonzero_min, r12)
    agree = {k: w < rtol for k, w in worst.items()}
    passed = delta_min > 0 and zero_max < 1e-10 and nonzero_min > 1e-6
    return passed, {
        "entry_max_relative_diff": worst, "entry_agrees": agree,
        "standalone_max_relative_diff": stand, "delta_min": delta_min,
        "ric12_at_c0_max": zero_max, "ric12_at_abs_c_0.3_min": nonzero_min, "samples": samples,
        "note": "closed-form disagreements are logged; the direct evaluation is authoritative",
    }


# 5 positive direction -----------------------------------------------------------------------------

def check_positive_direction(samples=100, seed=0):
    rep = nonnegative_direction_check(_rd("SU21xSL2C_SU2_Dpq", (1, 2)), samples=samples, seed=seed)
    sib = nonnegative_direction_check(_rd("SU21xSL2C_SU2xDpq", (1, 2)), samples=samples, seed=seed)
    s = rep["summary"]
    return s["passed"], {"SU21xSL2C_SU2_Dpq(1,2)": s, "SU21xSL2C_SU2xDpq(1,2)": sib["summary"]}


# 6 Cartan orthogonality -----------------------------------------------------------------------------

CARTAN_CASES = (("Sp2R_Dpq", (2, 3)), ("SU21sq_SU2sq_Dpq", (2, 3)), ("SU22_SU2SU2", None),
                ("SU41_SU4", None), ("Sp12_U1Sp2", None))


def check_cartan():
    rows = [classify(n, pq) for n, pq in CARTAN_CASES]
    ok = all(r["match"] and r["computed"] == "CARTAN_ORTHOGONAL_OBSTRUCTED" for r in rows)
    return ok, {r["space"]: {"expected": r["expected"], "computed": r["computed"]} for r in rows}


# 7 structural ---------------------------------------------------------------------------------------

def _toy():
    pres = cat.build("TOY_SL2R_SU2")
    g = pres.g
    e = g.unit
    gbar = Subspace(g, np.column_stack([e(0), e(1), e(3), e(4), e(5)]))   # span{h, e} + su(2)
    return pres, gbar, Subspace(g, e(1)), Subspace.from_indices(g, [3, 4, 5])


def check_borel():
    rep = borel_nilradical_span()
    return rep["rank"] == 3, rep


def check_integral_minimality(samples=20, seed=0):
    pres, gbar, _, _ = _toy()
    rd = reductive_complement(pres)
    mod = moduli_space(decompose_isotropy(rd))
    rng = np.random.default_rng(seed)
    vals = [integral_minimality_check(rd, gbar, random_point(mod, rng, exact=True)) for _ in range(samples)]
    return all(v == 0 for v in vals), {"traces": [ex.fmt(v) if not isinstance(v, float) else v for v in vals]}


def check_minimality():
    out, ok = {}, True
    for e in cat.list_spaces():
        if e.klass() != "NON_MINIMAL":
            continue
        pres = e.build()
        rep = minimality_obstruction(pres, cat.sl2c_borel(pres))
        ok &= rep["verdict"] == NON_MINIMAL
        out[e.name] = rep
    return ok and len(out) == 3, out


def check_standardness():
    pres, gbar, n0, g1 = _toy()
    rep = orthogonality_report(gbar, n0, g1, BilinearForm(pres.g, pres.reference_gram()))
    return rep["ok"], rep


# 8 sanity -------------------------------------------------------------------------------------------

def check_sanity():
    def at_identity(name):
        rd = _rd(name)
        mod = moduli_space(decompose_isotropy(rd))
        return rd, mod, einstein_report(rd, build_Q(mod, mod.identity_values()))

    _, _, su2 = at_identity("SU2_BIINV")
    _, _, flat = at_identity("FLAT_R3")
    rd, mod, _ = at_identity("AFF1")
    res = search_einstein(rd, mod, SearchConfig(seed=0))
    ev = {"su2_lambda": su2.lambda_star, "su2_verdict": su2.verdict,
          "flat_lambda": flat.lambda_star, "flat_residual": flat.residual,
          "aff1_search": {"verdict": res.verdict, "residual": res.best_residual}}
    ok = (su2.verdict == EINSTEIN and abs(su2.lambda_star - 0.25) <= 1e-10
          and flat.lambda_star == 0 and flat.residual < 1e-14
          and res.verdict == CONVERGED and res.best_residual < 1e-9)
    return ok, ev


# 9 search corroboration ------------------------------------------------------------------------------

def check_search(restarts=50, seed=0, max_iters=200):
    out = {}
    for name in ("SL2H_Sp1Sp1", "SL2C2_U1U1"):
        rd = _rd(name)
        mod = moduli_space(decompose_isotropy(rd))
        res = search_einstein(rd, mod, SearchConfig(seed=seed, restarts=restarts, max_iters=max_iters))
        out[name] = {"verdict": res.verdict, "best_residual": res.best_residual,
                     "converged_restarts": sum(r["converged"] for r in res.restarts),
                     "min_restart_relative_residual": min(r["relative_residual"] for r in res.restarts)}
    ok = all(v["verdict"] != CONVERGED for v in out.values())
    return ok, out


# registry -------------------------------------------------------------------------------------------

# (id, criterion, case, title, function, tolerance, kind)
CHECKS = [
    ("C1.exactness", 1, "exactness", "Jacobi, Killing invariance and Cartan split, exact", check_exactness,
     "exact", "assertion"),
    ("C2.decomposition", 2, "decomposition", "isotypic signatures incl. D_{p,q} patterns", check_decomposition,
     "exact", "assertion"),
    ("C3.sl2h", 3, "sl2h", "SL2(H)/Sp(1)Sp(1): direct Ricci vs closed form and branch", check_sl2h_closed_form,
     1e-8, "assertion"),
    ("C4.sl2c2", 4, "sl2c2", "SL2(C)^2/U(1)^2: Delta > 0 and Ric(e1,e2) = 0 iff c = 0", check_sl2c2,
     {"c=0": 1e-10, "|c|=0.3": 1e-6}, "assertion"),
    ("C5.positive", 5, "positive", "ad(e1) skew and Ric(e1,e1) >= 0", check_positive_direction,
     {"skew": 1e-10, "ric11": -1e-10, "identity": 1e-9}, "assertion"),
    ("C6.cartan", 6, "cartan", "Cartan-orthogonality obstruction verdicts", check_cartan, "exact", "assertion"),
    ("C7.borel", 7, "borel", "Borel nilradicals span sl2(R)", check_borel, "exact", "assertion"),
    ("C7.integral", 7, "integral", "orbit mean curvature trace vanishes on the toy", check_integral_minimality,
     "exact", "assertion"),
    ("C7.minimality", 7, "minimality", "minimality obstruction on the non-minimal entries", check_minimality,
     "exact", "assertion"),
    ("C7.standardness", 7, "standardness", "g1 = gbar^(2) inside u, re-derived", check_standardness,
     "exact", "assertion"),
    ("C8.sanity", 8, "sanity", "su(2), flat and solvable sanity oracles", check_sanity,
     {"lambda": 1e-10, "flat": 1e-14, "search": 1e-9}, "assertion"),
    ("C9.search", 9, "search", "50-restart searches report no convergence", check_search, 1e-9,
     "corroboration"),
]

CASES = sorted({c[2] for c in CHECKS} | {"structural"})


def threads():
    try:
        return max(1, int(os.environ.get("EINSHOM_THREADS", "1")))
    except ValueError:
        return 1


def _run_one(entry, overrides):
    cid, crit, case, title, fn, tol, kind = entry
    t0 = time.perf_counter()
    try:
        passed, evidence = fn(**overrides.get(case, {}))
    except Exception as exc:           # a crashing check is a failed check, with the reason kept
        passed, evidence = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(cid, crit, case, title, bool(passed), tol, evidence, kind, time.perf_counter() - t0)


def run_checks(cases=None, overrides=None, progress=None):
    """Run the selected checks; ``cases`` filters by case key ("structural" = all of criterion 7)."""
    overrides = overrides or {}
    if cases:
        unknown = set(cases) - set(CASES)
        if unknown:
            raise ValueError(f"unknown case(s): {sorted(unknown)}")
    specs = [c for c in CHECKS if not cases or c[2] in cases or ("structural" in cases and c[1] == 7)]
    n = threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda s: _run_one(s, overrides), specs))
    else:
        results = []
        for s in specs:
            if progress:
                progress(f"running {s[0]}")
            results.append(_run_one(s, overrides))
    return sorted(results, key=lambda r: r.id)


def make_report(command, inputs, results, space=None, started=None):
    """Report payload; timing lives in its own field so results are reproducible."""
    timing = {"seconds": {r.id: round(r.seconds, 3) for r in results} if results and hasattr(results[0], "seconds")
              else {}}
    if started is not None:
        timing["started"] = started
    return {"tool": "einshom", "version": __version__, "command": command, "space": space,
            "inputs": inputs, "results": [r.to_dict() if hasattr(r, "to_dict") else r for r in results],
            "timing": timing}
