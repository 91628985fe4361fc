"""``einshom`` command line: list, analyze, ricci, search, verify-paper.

Exit codes: 0 success, 1 verification failure, 2 usage error.
Results go to stdout (``--json`` for the machine-readable payload),
progress to stderr.
"""

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from . import catalog as cat
from .analysis import SearchConfig, classify, search_einstein, trace_to_csv
from .curvature import closed_form_sl2c2, closed_form_sl2h, einstein_report, spectral_residual
from .homspace import decompose_isotropy, reductive_complement
from .metrics import MetricDomainError, build_Q, moduli_space
from .verify import CASES, make_report, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(args):
    if args.p is None and args.q is None:
        return None
    if args.p is None or args.q is None:
        raise UsageError("--p and --q go together")
    return (args.p, args.q)


def _entry_and_pres(args):
    try:
        entry = cat.get_entry(args.space)
        pres = cat.build(args.space, _params(args))
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    return entry, pres


def _emit(args, payload, text):
    if args.json:
        json.dump(payload, sys.stdout, indent=2, sort_keys=False)
        sys.stdout.write("\n")
    else:
        print(text)


def _parse_values(s):
    out = {}
    for part in filter(None, (x.strip() for x in s.split(","))):
        if "=" not in part:
            raise UsageError(f"bad value {part!r}; expected name=value")
        k, v = part.split("=", 1)
        v = v.strip()
        try:
            float(v.split("/")[0]) if "/" in v else float(v)
        except ValueError:
            raise UsageError(f"bad number {v!r} for {k}") from None
        out[k.strip()] = v if ("/" in v or v.lstrip("-").isdigit()) else float(v)
    return out


# commands -------------------------------------------------------------------------------

def cmd_list(args):
    rows = []
    for e in cat.list_spaces(include_fixtures=args.fixtures):
        klass = e.klass()
        if args.klass and klass != args.klass:
            continue
        rows.append({"name": e.name, "display": e.display(), "title": e.title,
                     "params": "p q (coprime)" if e.takes_params else None,
                     "default_params": list(e.default_params) if e.default_params else None,
                     "expected_class": klass})
    text = "\n".join(f"{r['display']:28s} {r['expected_class']:32s} {r['title']}" for r in rows)
    _emit(args, rows, text)
    return EXIT_OK


def cmd_analyze(args):
    entry, pres = _entry_and_pres(args)
    iso = decompose_isotropy(reductive_complement(pres))
    sig_ok = iso.signature() == entry.signature(pres.params)
    cls = classify(args.space, pres.params, samples=args.samples, seed=args.seed)
    ok = sig_ok and cls["match"]
    payload = make_report("analyze", {"space": args.space, "params": list(pres.params) if pres.params else None},
                          [{"id": "signature", "passed": sig_ok, "tol": "exact",
                            "computed": iso.to_dict(), "expected": [list(s) for s in entry.signature(pres.params)]},
                           {"id": "verdict", "passed": cls["match"], "tol": "exact",
                            "expected": cls["expected"], "computed": cls["computed"],
                            "evidence": _plain(cls["evidence"])}],
                          space=entry.display(pres.params))
    text = "\n".join([
        f"space      {entry.display(pres.params)}  ({entry.title})",
        f"modules    {iso.summary()}",
        f"signature  {'matches' if sig_ok else 'DIFFERS from'} expected",
        f"verdict    {cls['computed']} (expected {cls['expected']})",
    ])
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def _plain(x):
    return json.loads(json.dumps(x, default=lambda o: o.item() if hasattr(o, "item") else str(o)))


def cmd_ricci(args):
    entry, pres = _entry_and_pres(args)
    rd = reductive_complement(pres)
    mod = moduli_space(decompose_isotropy(rd))
    vals = mod.identity_values()
    if args.values:
        given = _parse_values(args.values)
        unknown = set(given) - set(vals)
        if unknown:
            raise UsageError(f"unknown slots {sorted(unknown)}; slots are {mod.slot_names}")
        vals.update(given)
    try:
        mp = build_Q(mod, vals)
    except MetricDomainError as exc:
        raise UsageError(f"metric out of domain: {exc}") from None
    rep = einstein_report(rd, mp, tol=args.tol)
    out = rep.to_dict(matrices=args.matrix)
    out["spectral_residual"] = spectral_residual(rep)
    lines = [f"space      {entry.display(pres.params)}",
             f"values     {', '.join(f'{k}={float(v):.6g}' for k, v in mp.values.items())}",
             f"scalar     {rep.scalar:.12g}",
             f"lambda*    {rep.lambda_star:.12g}",
             f"residual   {rep.residual:.3e}  (tol {rep.tol:g})  -> {rep.verdict}"]
    if args.compare_closed_form:
        fv = {k: float(v) for k, v in mp.values.items()}
        if mod.template == "SL2H":
            C = closed_form_sl2h(**fv)
        elif mod.template == "SL2C2":
            C, _ = closed_form_sl2c2(**fv)
        else:
            raise UsageError("closed forms exist only for SL2H_Sp1Sp1 and SL2C2_U1U1")
        diff = np.abs(rep.ricci.matrix - C)
        out["closed_form_max_diff"] = float(diff.max())
        out["closed_form_diff_entries"] = [[int(i), int(j), float(diff[i, j])]
                                           for i, j in zip(*np.nonzero(diff > 1e-8)) if i <= j]
        lines.append(f"closed form max |diff| {diff.max():.3e} over {len(out['closed_form_diff_entries'])} entries")
    if args.matrix:
        lines.append(np.array2string(rep.ricci.matrix, precision=6, suppress_small=True, max_line_width=160))
    payload = make_report("ricci", {"space": args.space, "values": {k: str(v) for k, v in vals.items()}},
                          [out], space=entry.display(pres.params))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_search(args):
    if args.restarts < 1:
        raise UsageError("--restarts must be at least 1")
    entry, pres = _entry_and_pres(args)
    rd = reductive_complement(pres)
    mod = moduli_space(decompose_isotropy(rd))
    try:
        cfg = SearchConfig(seed=args.seed, restarts=args.restarts, max_iters=args.max_iters, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"searching {entry.display(pres.params)}: {args.restarts} restarts", file=sys.stderr)
    res = search_einstein(rd, mod, cfg)
    if args.trace_csv:
        with open(args.trace_csv, "w", newline="") as fh:
            fh.write(trace_to_csv(res))
    out = res.to_dict()
    out["kind"] = "corroboration"
    payload = make_report("search", {"space": args.space, "config": cfg.to_dict()}, [out],
                          space=entry.display(pres.params))
    text = "\n".join([
        f"space          {entry.display(pres.params)}",
        f"verdict        {res.verdict}",
        f"best residual  {res.best_residual:.3e} (tol {cfg.tol:g})",
        f"restarts       {len(res.restarts)}, converged {sum(r['converged'] for r in res.restarts)}",
        "note           a search can corroborate non-existence, never prove it",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args):
    cases = args.case or None
    try:
        results = run_checks(cases, progress=lambda m: print(m, file=sys.stderr))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = make_report("verify-paper", {"cases": cases}, results)
    lines = []
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        kind = " (corroboration)" if r.kind == "corroboration" else ""
        lines.append(f"{tag}  {r.id:18s} {r.title}{kind}")
        if not r.passed and "error" in r.evidence:
            lines.append(f"      {r.evidence['error']}")
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


# parser -------------------------------------------------------------------------------

def _add_space(p):
    p.add_argument("space", help="catalog name (see `einshom list`)")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="einshom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"einshom {__version__}")
    parser.add_argument("--config", help="JSON file whose keys supply defaults for the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("list", help="catalog entries")
    p.add_argument("--class", dest="klass", choices=cat.CLASSES + ("FIXTURE",))
    p.add_argument("--fixtures", action="store_true", help="include test fixtures")
    common(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("analyze", help="decomposition and obstruction verdict")
    _add_space(p)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ricci", help="Ricci curvature at a metric point")
    _add_space(p)
    p.add_argument("--values", help="slot values, e.g. a=1,b=1,c=1,d=1/2 (default: reference metric)")
    p.add_argument("--compare-closed-form", action="store_true")
    p.add_argument("--matrix", action="store_true", help="print the Ricci matrix")
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_ricci)

    p = sub.add_parser("search", help="numerical Einstein search")
    _add_space(p)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--trace-csv", help="write the iteration trace to this CSV file")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-paper", help="run the verification suite")
    p.add_argument("--case", action="append", choices=CASES, help="restrict to a case (repeatable)")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    parser.set_defaults(**cfg)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.set_defaults(**cfg)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        started = time.time()
        code = args.func(args)
        print(f"done in {time.time() - started:.2f} s", file=sys.stderr)
        return code
    except UsageError as exc:
        print(f"einshom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
