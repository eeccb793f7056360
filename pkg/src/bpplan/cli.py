"""Command-line front end: ``bpplan plan|validate|oracle|check|bench``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from .bat import Bat, EvaluationError
from .benchmarks import DOMAINS, domain_text, load_domain
from .dsl import DslError, ProblemSpec, parse_domain, parse_plan, parse_problem
from .oracle import OracleLimit, oracle_plan
from .progression import ProgressionError
from .search import NO_PLAN, PLAN, RESOURCE_LIMIT, PlannerConfig, PlanResult, SearchStats, plan, validate_plan

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_LIMIT = 4

JSON_SCHEMA_VERSION = 1


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", EXIT_USAGE) from None


def _load_domain(path: str) -> Bat:
    """Load a domain file; a shipped domain name works when no such file exists."""
    if path in DOMAINS and not Path(path).exists():
        return load_domain(path)
    try:
        return parse_domain(_read(path), file=path)
    except DslError as e:
        raise CliError(str(e), EXIT_DOMAIN if e.only_properness else EXIT_USAGE) from None


def _load_problem(text_path: str, bat: Bat, err: TextIO) -> ProblemSpec:
    try:
        spec = parse_problem(_read(text_path), bat, file=text_path)
    except DslError as e:
        raise CliError(str(e), EXIT_USAGE) from None
    for d in spec.diagnostics:
        print(d, file=err)
    return spec


def _config(args: argparse.Namespace, bound: int) -> PlannerConfig:
    return PlannerConfig(
        bound=bound,
        heuristic=not args.no_heuristic,
        duplicate_detection=args.dup_detect,
        dead_end_prune=args.dead_end_prune,
        tie_breaking=args.tie_breaking,
        node_limit=args.node_limit,
        time_limit=args.time_limit,
    )


def _stats_lines(pairs: Sequence[Tuple[str, object]]) -> List[str]:
    return [f"; {k}: {v}" for k, v in pairs]


def _result_json(mode: str, domain: str, problem: str, bound: int, result: PlanResult) -> Dict[str, object]:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "mode": mode,
        "domain": domain,
        "problem": problem,
        "bound": bound,
        "outcome": result.outcome,
        "plan": None if result.plan is None else [str(a) for a in result.plan],
        "plan_length": None if result.plan is None else len(result.plan),
        "stats": result.stats.to_dict(),
    }


def _emit(mode: str, args: argparse.Namespace, bound: int, result: PlanResult, out: TextIO) -> int:
    code = {PLAN: EXIT_OK, NO_PLAN: EXIT_FAIL, RESOURCE_LIMIT: EXIT_LIMIT}[result.outcome]
    if args.json:
        json.dump(_result_json(mode, args.domain, args.problem, bound, result), out, indent=2)
        out.write("\n")
        return code
    if result.plan is not None:
        for a in result.plan:
            print(a, file=out)
    elif result.outcome == NO_PLAN:
        print(f"no plan within bound {bound}", file=out)
    else:
        print("resource limit reached before the search finished", file=out)
    s = result.stats
    pairs: List[Tuple[str, object]] = []
    if mode == "oracle":
        pairs.append(("mode", "oracle"))
    pairs += [
        ("outcome", result.outcome),
        ("bound", bound),
        ("expansions", s.expansions),
        ("generated", s.generated),
        ("peak frontier", s.peak_frontier),
        ("wall time", f"{s.wall_time:.3f}s"),
    ]
    if result.plan is not None:
        pairs.append(("plan length", len(result.plan)))
    for line in _stats_lines(pairs):
        print(line, file=out)
    return code


def cmd_plan(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    bat = _load_domain(args.domain)
    spec = _load_problem(args.problem, bat, err)
    bound = spec.bound if args.bound is None else args.bound
    result = plan(bat, spec.initial_theory(bat), spec.goal, _config(args, bound))
    return _emit("search", args, bound, result, out)


def cmd_oracle(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    bat = _load_domain(args.domain)
    spec = _load_problem(args.problem, bat, err)
    bound = spec.bound if args.bound is None else args.bound
    stats = SearchStats()
    start = time.perf_counter()
    try:
        found = oracle_plan(bat, spec.initial_theory(bat), spec.goal, bound, max_nodes=args.node_limit, stats=stats)
        outcome = NO_PLAN if found is None else PLAN
    except OracleLimit:
        found, outcome = None, RESOURCE_LIMIT
    stats.wall_time = time.perf_counter() - start
    return _emit("oracle", args, bound, PlanResult(outcome, found, stats), out)


def cmd_validate(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    bat = _load_domain(args.domain)
    spec = _load_problem(args.problem, bat, err)
    try:
        actions = parse_plan(_read(args.plan), file=args.plan)
    except DslError as e:
        raise CliError(str(e), EXIT_USAGE) from None
    verdict = validate_plan(bat, spec.initial_theory(bat), spec.goal, actions, bound=args.bound)
    if args.json:
        json.dump({"schema": JSON_SCHEMA_VERSION, "valid": verdict.ok, "step": verdict.step,
                   "reason": verdict.reason, "plan_length": len(actions)}, out, indent=2)
        out.write("\n")
    else:
        print("plan valid" if verdict.ok else f"plan invalid: {verdict}", file=out)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def cmd_check(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    path = args.domain
    if path in DOMAINS and not Path(path).exists():
        text = domain_text(path)
    else:
        text = _read(path)
    try:
        bat = parse_domain(text, file=path)
    except DslError as e:
        if not e.only_properness:
            raise CliError(str(e), EXIT_USAGE) from None
        for d in e.errors:
            print(d, file=out)
        print(f"{len(e.errors)} violation(s)", file=out)
        return EXIT_FAIL
    print(f"domain {bat.name}: {_count(len(bat.fluents), 'fluent')}, {_count(len(bat.schemas), 'action')}, proper", file=out)
    return EXIT_OK


@dataclass
class SuiteEntry:
    domain: str
    problem: str
    bound: Optional[int]
    line: int


def read_suite(path: str) -> List[SuiteEntry]:
    """Manifest lines are ``domain problem [bound]``; ``#`` starts a comment.

    ``domain`` is a shipped domain name or a path; paths are relative to the
    manifest's directory.
    """
    base = Path(path).parent
    entries = []
    for i, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise CliError(f"{path}:{i}: expected 'domain problem [bound]'", EXIT_USAGE)
        domain = parts[0] if parts[0] in DOMAINS else str(base / parts[0])
        bound = None
        if len(parts) == 3:
            try:
                bound = int(parts[2])
            except ValueError:
                raise CliError(f"{path}:{i}: bound must be an integer", EXIT_USAGE) from None
        entries.append(SuiteEntry(domain, str(base / parts[1]), bound, i))
    return entries


def cmd_bench(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    rows = []
    domains: Dict[str, Bat] = {}
    for entry in read_suite(args.suite):
        if entry.domain not in domains:
            domains[entry.domain] = _load_domain(entry.domain)
        bat = domains[entry.domain]
        spec = _load_problem(entry.problem, bat, err)
        bound = entry.bound if entry.bound is not None else spec.bound
        if args.bound is not None:
            bound = args.bound
        result = plan(bat, spec.initial_theory(bat), spec.goal, _config(args, bound))
        rows.append({
            "instance": spec.name,
            "bound": bound,
            "outcome": result.outcome,
            "plan_length": None if result.plan is None else len(result.plan),
            "expansions": result.stats.expansions,
            "generated": result.stats.generated,
            "wall_time": result.stats.wall_time,
        })
    if args.json:
        json.dump({"schema": JSON_SCHEMA_VERSION, "suite": args.suite, "rows": rows}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    width = max([len("instance")] + [len(r["instance"]) for r in rows])
    print(f"{'instance':<{width}}  {'bound':>5}  {'plan':>8}  {'expansions':>10}  {'time':>9}", file=out)
    for r in rows:
        if r["outcome"] == PLAN:
            res = str(r["plan_length"])
        else:
            res = "no-plan" if r["outcome"] == NO_PLAN else "limit"
        print(f"{r['instance']:<{width}}  {r['bound']:>5}  {res:>8}  {r['expansions']:>10}  {r['wall_time']:>8.3f}s", file=out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(f"{self.prog}: {message}", EXIT_USAGE)


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, help="maximum plan length (overrides the problem file)")
    p.add_argument("--no-heuristic", action="store_true", help="use h = 0 (uniform-cost order)")
    p.add_argument("--dup-detect", action="store_true", help="prune situations whose state was reached no later")
    p.add_argument("--dead-end-prune", action="store_true", help="drop children whose relaxed graph hits a fixpoint")
    p.add_argument("--tie-breaking", choices=("low-h", "fifo"), default="low-h",
                   help="order among equal f values (default: low-h)")
    p.add_argument("--seed", type=int, help="reserved; the planner uses no randomness")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--time-limit", type=float, metavar="SECS")
    p.add_argument("--node-limit", type=int, metavar="K")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bpplan", description="Bounded planning over open-world action theories.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="search for a plan")
    p.add_argument("domain")
    p.add_argument("problem")
    _search_flags(p)

    p = sub.add_parser("oracle", help="exhaustive breadth-first search (small instances only)")
    p.add_argument("domain")
    p.add_argument("problem")
    _search_flags(p)

    p = sub.add_parser("validate", help="check a plan file against a problem")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("plan")
    p.add_argument("--bound", type=int, help="also reject plans longer than this")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="check that a domain is a proper action theory")
    p.add_argument("domain")

    p = sub.add_parser("bench", help="run a suite manifest")
    p.add_argument("suite")
    _search_flags(p)
    return parser


COMMANDS = {
    "plan": cmd_plan,
    "oracle": cmd_oracle,
    "validate": cmd_validate,
    "check": cmd_check,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:  # type: ignore[assignment]
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "bound", None) is not None and args.bound < 0:
            raise CliError("--bound must be non-negative", EXIT_USAGE)
        return COMMANDS[args.command](args, out, err)
    except CliError as e:
        print(e, file=err)
        return e.code
    except (EvaluationError, ProgressionError) as e:
        print(f"domain error: {e}", file=err)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())
