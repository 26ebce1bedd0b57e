"""Command-line entry point wiring file I/O and the computational modules.

Commands: stats, audit, incidence, scan, search.  Every run emits a
machine-readable report (JSON / JSON-lines / TSV, to --output or stdout)
whose header records the seed, the seed-derivation rule, and the precision;
human-readable summaries go to stderr.  Exit codes: 0 success, 1 usage or
parse error, 2 audit FAIL or fixture regression breach.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal

from .audit import audit_theorem
from .errors import AuditFailure, ConvexLabError, ParseError
from .families import ALL_KINDS, growth_scan, scan_to_tsv
from .functions import fn_by_name
from .incidence import build_instance, count_incidences, lemma_st1_ratio, lemma_st2_ratio
from .search import SearchConfig, extremal_search
from .seeding import SEED_RULE
from .sets import (
    difference_set,
    format_scalar,
    product_set,
    read_set_file,
    sumset,
    write_set_file,
)
from .energy import energy_report

USAGE_ERROR, AUDIT_ERROR = 1, 2

THEOREM_CHOICES = ("T1", "T2", "T3", "C_diffprod", "C_sumprod")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int
    precision: int
    workers: int
    output: str | None
    fixtures: str | None

    def header(self, **extra) -> dict:
        return {
            "type": "header",
            "command": self.command,
            "seed": self.seed,
            "seedRule": SEED_RULE,
            "precision": self.precision,
            **extra,
        }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=30, help="significant digits in reports")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default=None)
    p.add_argument("--fixtures", default=None)


def _run_config(args, command: str) -> RunConfig:
    return RunConfig(command=command, seed=args.seed, precision=args.precision,
                     workers=args.workers, output=args.output, fixtures=args.fixtures)


def cmd_stats(args) -> int:
    cfg = _run_config(args, "stats")
    a = read_set_file(args.input)
    report = energy_report(a)
    digits = cfg.precision
    sizes = {
        "size": len(a),
        "sumset": len(sumset(a, a)),
        "diffset": len(difference_set(a, a)),
        "prodset": len(product_set(a, a)) if a.is_strictly_positive() else None,
    }
    payload = {
        **cfg.header(input=args.input),
        "sizes": sizes,
        "energy": report.to_json_dict(),
        "E15Decimal": report.e15_decimal(digits),
    }
    _emit(cfg, _dump(payload) + "\n")
    _note(f"|A| = {sizes['size']}  |A+A| = {sizes['sumset']}  |A-A| = {sizes['diffset']}")
    if sizes["prodset"] is not None:
        _note(f"|A*A| = {sizes['prodset']}")
    else:
        _note("|A*A| skipped: set has nonpositive elements")
    _note(f"E = {report.E}  E3 = {report.E3}  E1.5 = {report.e15_decimal(digits)}")
    return 0


def _fixture_breaches(fixtures_path: str, key: str, chain, tolerance: float = 0.10) -> list[dict]:
    with open(fixtures_path, encoding="utf-8") as fh:
        stored = json.load(fh).get("chains", {})
    entry = stored.get(key)
    if entry is None:
        return [{"type": "regression", "key": key, "missing": True}]
    breaches = []
    observed = {"finalRatio": chain.final_ratio}
    observed.update({s.name: s.ratio for s in chain.report_only_steps()})
    expected = {"finalRatio": entry["finalRatio"]}
    expected.update(entry.get("steps", {}))
    for name, want in expected.items():
        got = observed.get(name)
        if got is None:
            breaches.append({"type": "regression", "key": key, "step": name, "missing": True})
            continue
        want_d, got_d = Decimal(want), Decimal(got)
        if want_d == 0 or abs(got_d - want_d) / abs(want_d) >= Decimal(str(tolerance)):
            breaches.append({
                "type": "regression", "key": key, "step": name,
                "expected": want, "observed": got,
            })
    return breaches


def cmd_audit(args) -> int:
    cfg = _run_config(args, "audit")
    a = read_set_file(args.input)
    c = read_set_file(args.cset) if args.cset else None
    which, fn_name = args.theorem, args.fn
    if which == "C_diffprod":
        which, fn_name = "T1", "log-as-product"
    elif which == "C_sumprod":
        which, fn_name = "T2", "log-as-product"
    fn = fn_by_name(fn_name)
    lines = [cfg.header(input=args.input, theorem=args.theorem, fn=fn.name)]
    try:
        chain = audit_theorem(which, fn, a, c, digits=cfg.precision)
    except AuditFailure as failure:
        lines.append(failure.report.to_json_dict())
        lines.append({"type": "counterexample", "inputs": failure.inputs})
        _emit(cfg, "\n".join(_dump(l) for l in lines) + "\n")
        _note(f"FAIL: {failure.report.name} (counterexample dumped)")
        return AUDIT_ERROR
    lines.extend(chain.to_json_lines())
    status = 0
    if cfg.fixtures:
        key = args.fixture_key or f"{chain.theorem}/{fn.name}/n={len(a)}"
        breaches = _fixture_breaches(cfg.fixtures, key, chain)
        lines.extend(breaches)
        if breaches:
            status = AUDIT_ERROR
    _emit(cfg, "\n".join(_dump(l) for l in lines) + "\n")
    fails = [s.name for s in chain.steps if s.verdict == "FAIL"]
    _note(f"{chain.theorem}: {len(chain.steps)} steps, final ratio {chain.final_ratio}")
    if status:
        _note("regression breach against fixtures")
    return AUDIT_ERROR if fails else status


def cmd_incidence(args) -> int:
    cfg = _run_config(args, "incidence")
    fn = fn_by_name(args.fn)
    a = read_set_file(args.input)
    b = read_set_file(args.bset)
    c = read_set_file(args.cset)
    taus = tuple(int(t) for t in args.tau.split(",")) if args.tau else (1, 2, 4, 8)
    grid, family = build_instance(fn, a, b, c)
    report = count_incidences(grid, family, taus=taus, workers=cfg.workers)
    payload = {**cfg.header(fn=fn.name), "incidence": report.to_json_dict(cfg.precision)}
    levels = []
    for tau in taus:
        levels.append(lemma_st1_ratio(fn, a, b, c, tau).to_json_dict(cfg.precision))
        levels.append(lemma_st2_ratio(fn, a, b, c, tau).to_json_dict(cfg.precision))
    payload["levelSets"] = levels
    _emit(cfg, _dump(payload) + "\n")
    _note(f"incidences = {report.incidences} on {report.points} points x {report.curves} curves")
    _note(f"bound holds: {report.st_bound_holds}; max curves through a point: {report.max_point_curves}")
    return 0


def cmd_scan(args) -> int:
    cfg = _run_config(args, "scan")
    fn = fn_by_name(args.fn) if args.fn else None
    sizes = [int(s) for s in args.sizes.split(",")]
    result = growth_scan(args.kind, fn, sizes, seed=cfg.seed)
    header = (f"# command scan\n# seed {cfg.seed}\n# seedRule {SEED_RULE}\n"
              f"# precision {cfg.precision}\n# kind {args.kind}\n# fn {fn.name if fn else ''}\n")
    _emit(cfg, header + scan_to_tsv(result, cfg.precision))
    for metric, slope in sorted(result.ls_slopes.items()):
        _note(f"ls slope {metric}: {float(slope):.4f}")
    return 0


def cmd_search(args) -> int:
    cfg = _run_config(args, "search")
    with open(args.config, encoding="utf-8") as fh:
        data = json.load(fh)
    if args.seed is not None and args.seed != 0:
        data["seed"] = args.seed
    scfg = SearchConfig.from_json_dict(data)
    outcome = extremal_search(scfg, workers=cfg.workers, digits=cfg.precision)
    lines = [cfg.header(config=scfg.to_json_dict())]
    lines.extend(outcome.traces)
    lines.append({
        "type": "result",
        "bestObjective": outcome.best_objective_decimal(cfg.precision),
        "bestSet": [format_scalar(q) for q in outcome.best_set],
    })
    _emit(cfg, "\n".join(_dump(l) for l in lines) + "\n")
    if args.best_set:
        write_set_file(args.best_set, outcome.best_set,
                       header=f"best set, objective {outcome.best_objective_decimal(cfg.precision)}")
    _note(f"best objective {outcome.best_objective_decimal(cfg.precision)} "
          f"after {scfg.iterations} iterations x {scfg.restarts} restarts")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="convexlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="set sizes and energy moments")
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("audit", help="replay a theorem chain on a set file")
    p.add_argument("--input", required=True)
    p.add_argument("--theorem", choices=THEOREM_CHOICES, required=True)
    p.add_argument("--fn", default="square",
                   help="square | power:k | reciprocal | exp2 | log-as-product")
    p.add_argument("--cset", default=None, help="optional C set file (default C = f(A))")
    p.add_argument("--fixture-key", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("incidence", help="point-curve incidence instance")
    p.add_argument("--input", required=True, help="A set file")
    p.add_argument("--bset", required=True)
    p.add_argument("--cset", required=True)
    p.add_argument("--fn", default="square")
    p.add_argument("--tau", default=None, help="comma-separated richness thresholds")
    _add_common(p)
    p.set_defaults(func=cmd_incidence)

    p = sub.add_parser("scan", help="growth exponents across a family")
    p.add_argument("--kind", choices=ALL_KINDS, required=True)
    p.add_argument("--fn", default="square")
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("search", help="simulated-annealing extremal search")
    p.add_argument("--config", required=True, help="JSON search configuration")
    p.add_argument("--best-set", default=None, help="write the best set to this file")
    _add_common(p)
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except ParseError as exc:
        _note(f"parse error: {exc}")
        return USAGE_ERROR
    except FileNotFoundError as exc:
        _note(f"missing file: {exc}")
        return USAGE_ERROR
    except (ConvexLabError, ValueError, json.JSONDecodeError) as exc:
        _note(f"error: {exc}")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
