"""``qolab`` command-line entry point.

Exit codes: 0 on success, 1 when a property or proposition check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import harness
from .auxgraph import aux_graph, witness_set
from .dilworth import dichotomy, min_chain_cover, width_and_antichain
from .errors import Budget, QolabError
from .g0 import g0_level, level_stats, parse_sequences
from .procedures import PROPOSITIONS, paper_chain_cover
from .relation import (
    Graph,
    QuasiOrder,
    as_graph,
    incomparability_graph,
    is_quasi_order,
    parse_relation,
    random_quasi_order,
)
from .trees import eval_borel_code, eval_staged, parse_code, parse_tree, pruning_rank, node_to_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunReport:
    command: str
    seed: int = 0
    inputs: dict[str, str] = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "violations": self.violations,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }


def _read(path: str, report: RunReport) -> str:
    data = Path(path).read_bytes()
    report.inputs[path] = hashlib.sha256(data).hexdigest()
    return data.decode()


def _load_quasi_order(path: str, report: RunReport) -> QuasiOrder:
    rel = parse_relation(_read(path, report))
    verdict = is_quasi_order(rel)
    if not verdict:
        raise QolabError(f"{path}: not a quasi-order: {verdict.reason}")
    return QuasiOrder(rel.n, rel.rows)


def _load_graph(path: str, report: RunReport) -> Graph:
    """``.gr`` files are graphs; anything else is read as a quasi-order and replaced by its incomparability graph."""
    if path.endswith(".gr"):
        return as_graph(parse_relation(_read(path, report)))
    return incomparability_graph(_load_quasi_order(path, report))


def _fmt(vs) -> str:
    return "[" + ",".join(map(str, sorted(vs))) + "]"


def _fmt_chains(chains) -> str:
    return "[" + ",".join(_fmt(c) for c in chains) + "]"


# subcommands; each returns an exit code and fills ``report.results``


def cmd_check(args, report, out):
    rel = parse_relation(_read(args.file, report))
    if args.file.endswith(".gr") or args.graph:
        try:
            Graph(rel.n, rel.rows)
        except QolabError as exc:
            report.results = {"kind": "graph", "ok": False, "reason": str(exc)}
            out(f"violation: {exc}")
            return 1
        report.results = {"kind": "graph", "ok": True, "n": rel.n}
        out(f"ok: graph on {rel.n} vertices")
        return 0
    verdict = is_quasi_order(rel)
    report.results = {"kind": "quasi_order", "ok": verdict.ok, "n": rel.n,
                      "witness": list(verdict.witness), "reason": verdict.reason}
    if verdict:
        out(f"ok: quasi-order on {rel.n} points")
        return 0
    out(f"violation: {verdict.reason} (witness {list(verdict.witness)})")
    return 1


def cmd_width(args, report, out):
    q = _load_quasi_order(args.file, report)
    w, a = width_and_antichain(q)
    report.results = {"width": w, "antichain": sorted(a)}
    out(f"width={w} antichain={_fmt(a)}")
    return 0


def cmd_chains(args, report, out):
    q = _load_quasi_order(args.file, report)
    cover = min_chain_cover(q)
    report.results = {"chains": cover.as_lists()}
    out(f"chains={_fmt_chains(cover.chains)}")
    return 0


def cmd_paperchains(args, report, out):
    q = _load_quasi_order(args.file, report)
    pc = paper_chain_cover(q, Budget(args.budget))
    report.results = pc.to_json()
    out(json.dumps(pc.to_json(), separators=(",", ":")))
    return 0


def cmd_auxgraph(args, report, out):
    g = _load_graph(args.file, report)
    ag = aux_graph(g, Budget(args.budget))
    summary = {"chi": ag.chi, "edges_base": [list(e) for e in g.edges()],
               "edges_aux": [list(e) for e in ag.aux.edges()]}
    report.results = summary
    text = ag.aux.to_text(comment=f"auxiliary graph, chi={ag.chi}")
    if args.output:
        Path(args.output).write_text(text)
        out(f"chi={ag.chi} base_edges={len(g.edges())} aux_edges={len(ag.aux.edges())} -> {args.output}")
    else:
        out(text.rstrip("\n"))
    return 0


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--pair expects X,Y, got {text!r}") from None
    return x, y


def cmd_witness(args, report, out):
    g = _load_graph(args.file, report)
    pairs = [_parse_pair(p) for p in args.pair]
    f = witness_set(g, pairs, Budget(args.budget))
    report.results = {"pairs": [list(p) for p in pairs], "witness": sorted(f)}
    out(f"witness={_fmt(f)}")
    return 0


def cmd_dichotomy(args, report, out):
    q = _load_quasi_order(args.file, report)
    if args.k is None or args.k < 1:
        raise UsageError("dichotomy needs -k with a positive integer")
    res = dichotomy(q, args.k)
    if res.cover is not None:
        report.results = {"k": args.k, "cover": res.cover.as_lists()}
        out(f"cover with {args.k} chains: {_fmt_chains(res.cover.chains)}")
    else:
        report.results = {"k": args.k, "antichain": sorted(res.antichain)}
        out(f"antichain of size {args.k + 1}: {_fmt(res.antichain)}")
    return 0


def cmd_g0(args, report, out):
    seqs = parse_sequences(_read(args.sequences, report)) if args.sequences else None
    level = g0_level(args.N, seqs)
    stats = level_stats(level)
    report.results = stats
    if args.export:
        Path(args.export).write_text(level.to_graph().to_text(comment=f"G0 level N={args.N}"))
    if args.sequences_out:
        Path(args.sequences_out).write_text(level.sequences.to_text())
    out(" ".join(f"{k}={v}" for k, v in stats.items()))
    return 0


def cmd_tree(args, report, out):
    tree = parse_tree(_read(args.file, report), args.index_size)
    rank = pruning_rank(tree)
    ranks = {node_to_text(t): r for t, r in sorted(rank.node_ranks.items(), key=lambda kv: (len(kv[0]), kv[0]))}
    report.results = {"rho": rank.rho, "wf": rank.wf, "node_ranks": ranks}
    out(f"rho={rank.rho} wf={str(rank.wf).lower()} nodes={len(tree)}")
    for t, r in ranks.items():
        out(f"  {t}: {r}")
    return 0


def cmd_borel_eval(args, report, out):
    code = parse_code(_read(args.file, report))
    value = eval_borel_code(code)
    staged = eval_staged(code)
    report.results = {"set": sorted(value), "staged_agrees": staged == value}
    out(f"set={_fmt(value)}")
    return 0 if staged == value else 1


def cmd_gen(args, report, out):
    if args.n is None or args.n < 0:
        raise UsageError("gen needs -n with a non-negative size")
    q = random_quasi_order(args.n, args.density, args.seed)
    text = q.to_text(comment=f"random quasi-order n={args.n} density={args.density} seed={args.seed}")
    report.results = {"n": args.n, "density": args.density, "rows": text.splitlines()[2:]}
    if args.output:
        Path(args.output).write_text(text)
    else:
        out(text.rstrip("\n"))
    return 0


def cmd_prove(args, report, out):
    if args.all:
        suites = list(harness.SUITES)
    elif args.prop:
        suites = args.prop
    else:
        suites = list(PROPOSITIONS)
    unknown = [s for s in suites if s not in harness.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}")
    if args.exhaustive:
        n_max = harness.EXHAUSTIVE_N_MAX if args.n_max is None else args.n_max
        if n_max > 5:
            raise UsageError("--exhaustive supports --n-max up to 5")
        corpus = harness.exhaustive_corpus(n_max)
    else:
        n_max = harness.DEFAULT_N_MAX if args.n_max is None else args.n_max
        corpus = harness.random_corpus(args.count, n_max, args.seed)
    results = {}
    for suite in suites:
        res = harness.run_suite(suite, corpus, args.seed, args.budget)
        results[suite] = res.to_json()
        report.violations.extend(res.violations)
        status = "pass" if not res.violations else "FAIL"
        out(f"{suite:<13} {status}  {res.passed}/{res.instances} instances, {res.checks} checks")
    report.results = {"corpus": corpus.description, "suites": results}
    if args.bundle_dir and report.violations:
        d = Path(args.bundle_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, bundle in enumerate(report.violations):
            (d / f"bundle-{i:03d}-{bundle['suite']}.json").write_text(json.dumps(bundle, indent=2, sort_keys=True))
    if report.violations:
        out(f"{len(report.violations)} violation(s)")
        return 1
    return 0


def cmd_replay(args, report, out):
    try:
        bundle = json.loads(_read(args.file, report))
        suite = bundle["suite"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise QolabError(f"{args.file}: not a counterexample bundle ({exc})") from None
    if suite not in harness.SUITES:
        raise QolabError(f"{args.file}: unknown suite {suite!r}")
    reproduced, fresh = harness.replay_bundle(bundle, args.budget)
    report.results = {"suite": suite, "reproduced": reproduced, "detail": fresh}
    if reproduced:
        report.violations.append(bundle)
        out(f"reproduced: {suite} violation on instance {bundle.get('index')}")
        return 1
    out(f"not reproduced: {suite} " + ("passes" if fresh is None else "fails differently"))
    return 0


COMMANDS = {
    "check": cmd_check,
    "width": cmd_width,
    "chains": cmd_chains,
    "paperchains": cmd_paperchains,
    "auxgraph": cmd_auxgraph,
    "witness": cmd_witness,
    "dichotomy": cmd_dichotomy,
    "g0": cmd_g0,
    "tree": cmd_tree,
    "borel-eval": cmd_borel_eval,
    "gen": cmd_gen,
    "prove": cmd_prove,
    "replay": cmd_replay,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the run report as JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="search-node cap")

    parser = _Parser(prog="qolab", description="Finite quasi-order laboratory.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text, file=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            p.add_argument("file")
        return p

    p = add("check", "validate a .qo quasi-order or .gr graph")
    p.add_argument("--graph", action="store_true", help="validate as a graph regardless of extension")
    add("width", "width and least maximum antichain")
    add("chains", "minimum chain cover (matching oracle)")
    add("paperchains", "chain cover by peeling auxiliary-graph independent layers")
    p = add("auxgraph", "auxiliary graph of a .gr graph (or of the incomparability graph of a .qo)")
    p.add_argument("-o", "--output")
    p = add("witness", "forcing witness set for auxiliary edges")
    p.add_argument("--pair", action="append", required=True, metavar="X,Y")
    p = add("dichotomy", "k chains or an antichain of size k+1")
    p.add_argument("-k", type=int)
    p = add("g0", "statistics of a finite G0 level", file=False)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--sequences", help="dense-sequence file (one word per line, - for empty)")
    p.add_argument("--export", metavar="OUT.gr")
    p.add_argument("--sequences-out", metavar="PATH")
    p = add("tree", "pruning rank of a tree file")
    p.add_argument("--index-size", type=int)
    add("borel-eval", "evaluate a Borel code JSON file")
    p = add("gen", "random quasi-order in .qo format", file=False)
    p.add_argument("-n", type=int)
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("-o", "--output")
    p = add("prove", "run property suites", file=False)
    p.add_argument("--all", action="store_true", help="every suite, not only the propositions")
    p.add_argument("--prop", action="append", metavar="NAME", help=f"one of {', '.join(harness.SUITES)}")
    p.add_argument("--n-max", type=int)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--count", type=int, default=harness.DEFAULT_COUNT)
    p.add_argument("--bundle-dir", metavar="DIR")
    add("replay", "re-run a counterexample bundle")
    return parser


def run(argv, out=print, err=None) -> tuple[RunReport | None, int]:
    err = err or (lambda msg: print(msg, file=sys.stderr))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err(str(exc))
        return None, 2
    except SystemExit as exc:  # --help
        return None, int(exc.code or 0)
    if not args.command:
        err(parser.format_usage().strip())
        return None, 2
    report = RunReport(args.command, seed=args.seed)
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, report, out)
    except UsageError as exc:
        err(str(exc))
        code = 2
    except (QolabError, OSError, UnicodeDecodeError) as exc:
        err(f"error: {exc}")
        report.results.setdefault("error", f"{type(exc).__name__}: {exc}")
        code = 2
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n")
    return report, code


def main(argv=None) -> int:
    _, code = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
