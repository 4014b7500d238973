"""Property suites over instance corpora, with replayable counterexample bundles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import auxgraph as _aux
from .dilworth import (
    has_antichain,
    is_chain_cover,
    min_chain_cover,
    dichotomy,
    iter_antichains,
    width_and_antichain,
)
from .errors import Budget, QolabError, as_budget
from .g0 import g0_level, level_stats
from .procedures import PROPOSITIONS, paper_chain_cover, verify_proposition
from .relation import (
    FiniteRelation,
    Graph,
    QuasiOrder,
    all_graphs,
    all_quasi_orders,
    incomparability_graph,
    is_antichain,
    random_graph,
    random_quasi_order,
)
from .trees import code_from_json, complement_code, eval_borel_code, eval_staged, random_code

DENSITIES = (0.2, 0.4, 0.6)
DEFAULT_COUNT = 200
DEFAULT_N_MAX = 16
EXHAUSTIVE_N_MAX = 4
DICHOTOMY_N_MAX = 14
AUX_ORACLE_N_MAX = 8
G0_CONNECTED_MAX = 12
G0_EDGES_MAX = 16

GRAPH_PROPOSITIONS = ("union", "clique", "antichain")
SUITES = PROPOSITIONS + ("dilworth", "dichotomy", "papercover", "auxoracle", "g0", "borel")


# instance encoding


def encode_instance(inst) -> dict:
    if isinstance(inst, FiniteRelation):
        kind = "graph" if isinstance(inst, Graph) else "quasi_order"
        return {"kind": kind, "n": inst.n, "rows": inst.to_text().splitlines()[1:]}
    if isinstance(inst, dict):
        return inst
    raise TypeError(f"cannot encode {type(inst).__name__}")


def decode_instance(data: dict):
    kind = data["kind"]
    if kind in ("graph", "quasi_order"):
        n = int(data["n"])
        rows = data["rows"]
        rel = FiniteRelation.from_matrix([[ch == "1" for ch in r] for r in rows]) if n else FiniteRelation(0)
        return Graph(rel.n, rel.rows) if kind == "graph" else QuasiOrder(rel.n, rel.rows)
    if kind in ("g0_level", "borel_code"):
        return data
    raise ValueError(f"unknown instance kind {kind!r}")


# per-instance checks: each returns (checks, detail or None)


def _check_dilworth(q: QuasiOrder, seed: int, budget: Budget):
    cover = min_chain_cover(q)
    w, antichain = width_and_antichain(q)
    if len(cover) != w:
        return 1, {"reason": "cover size differs from width", "cover": cover.as_lists(), "width": w}
    if not is_chain_cover(q, cover.chains):
        return 1, {"reason": "invalid chain cover", "cover": cover.as_lists()}
    if len(antichain) != w or not is_antichain(q, antichain):
        return 1, {"reason": "invalid antichain witness", "antichain": sorted(antichain)}
    if has_antichain(q, w + 1, budget):
        return 1, {"reason": "antichain larger than width exists", "width": w}
    return 1, None


def _check_dichotomy(q: QuasiOrder, seed: int, budget: Budget):
    w = len(min_chain_cover(q))
    checks = 0
    for k in range(1, w + 2):
        checks += 1
        res = dichotomy(q, k)
        big = has_antichain(q, k + 1, budget)
        if res.cover is not None:
            chains = [c for c in res.cover.chains]
            if len(chains) != k or not is_chain_cover(q, chains) or big:
                return checks, {"k": k, "reason": "bad cover alternative",
                                "cover": res.cover.as_lists(), "antichain_exists": big}
        else:
            a = res.antichain
            if len(a) != k + 1 or not is_antichain(q, a) or not big:
                return checks, {"k": k, "reason": "bad antichain alternative", "antichain": sorted(a)}
    return checks, None


def _check_papercover(q: QuasiOrder, seed: int, budget: Budget):
    pc = paper_chain_cover(q, budget)
    w = len(min_chain_cover(q))
    if len(pc.cover) != w or not is_chain_cover(q, pc.cover.chains):
        return 1, {"reason": "peeled cover is not an optimal chain cover", **pc.to_json(), "width": w}
    remaining = set(range(q.n))
    for depth, layer in enumerate(pc.layers):
        sub, labels = q.induced(remaining)
        rw = len(min_chain_cover(sub))
        for a in iter_antichains(sub, rw, budget):
            if not {labels[i] for i in a} & layer:
                return 1, {"reason": "layer misses a maximum antichain", "depth": depth,
                           "antichain": sorted(labels[i] for i in a), **pc.to_json()}
        remaining -= layer
    return 1, None


def _check_auxoracle(inst, seed: int, budget: Budget):
    g = inst if isinstance(inst, Graph) else incomparability_graph(inst)
    fast = _aux.aux_graph(g, budget)
    slow = _aux.aux_graph_bruteforce(g, budget)
    if fast.aux != slow.aux or fast.chi != slow.chi:
        return 1, {"merge_test": fast.aux.edges(), "enumeration": slow.aux.edges(),
                   "chi": [fast.chi, slow.chi]}
    return 1, None


def _check_g0(inst: dict, seed: int, budget: Budget):
    N = int(inst["N"])
    stats = level_stats(g0_level(N))
    problems = []
    if stats["edges"] != 2**N - 1:
        problems.append("edge count")
    if not stats["dense"]:
        problems.append("density")
    if 1 <= N <= G0_CONNECTED_MAX:
        if not stats["connected"]:
            problems.append("connectivity")
        if stats["chi"] != 2:
            problems.append("chromatic number")
    return 1, ({"N": N, "failed": problems, "stats": stats} if problems else None)


def _check_borel(inst: dict, seed: int, budget: Budget):
    code = code_from_json(inst["code"])
    memo = eval_borel_code(code)
    staged = eval_staged(code)
    dual = eval_borel_code(complement_code(code))
    if memo != staged or dual != frozenset(range(code.m)) - memo:
        return 1, {"memoized": sorted(memo), "staged": sorted(staged), "complement": sorted(dual)}
    return 1, None


def _proposition_check(name: str) -> Callable:
    def check(inst, seed: int, budget: Budget):
        report = verify_proposition(name, inst, seed=seed, budget=budget)
        return report.checks, report.counterexample

    return check


SUITE_CHECKS: dict[str, Callable] = {name: _proposition_check(name) for name in PROPOSITIONS}
SUITE_CHECKS.update(
    dilworth=_check_dilworth,
    dichotomy=_check_dichotomy,
    papercover=_check_papercover,
    auxoracle=_check_auxoracle,
    g0=_check_g0,
    borel=_check_borel,
)


def check_instance(suite: str, inst, seed: int = 0, budget: Budget | int | None = None):
    return SUITE_CHECKS[suite](inst, seed, as_budget(budget))


# corpora


@dataclass
class Corpus:
    quasi_orders: list[QuasiOrder]
    graphs: list[Graph]
    seeds: list[int]
    description: dict = field(default_factory=dict)


def exhaustive_corpus(n_max: int = EXHAUSTIVE_N_MAX) -> Corpus:
    qos = [q for n in range(n_max + 1) for q in all_quasi_orders(n)]
    graphs = [g for n in range(min(n_max, 4) + 1) for g in all_graphs(n)]
    return Corpus(qos, graphs, [0] * max(len(qos), len(graphs)),
                  {"mode": "exhaustive", "n_max": n_max, "quasi_orders": len(qos), "graphs": len(graphs)})


def random_corpus(count: int = DEFAULT_COUNT, n_max: int = DEFAULT_N_MAX, seed: int = 0, n_min: int = 2) -> Corpus:
    rng = random.Random(seed)
    qos, graphs, seeds = [], [], []
    for i in range(count):
        n = rng.randint(n_min, max(n_min, n_max))
        density = DENSITIES[i % len(DENSITIES)]
        inst_seed = rng.getrandbits(63)
        qos.append(random_quasi_order(n, density, inst_seed))
        graphs.append(random_graph(n, density, inst_seed))
        seeds.append(inst_seed)
    return Corpus(qos, graphs, seeds,
                  {"mode": "random", "count": count, "n_min": n_min, "n_max": n_max, "seed": seed})


def suite_instances(suite: str, corpus: Corpus, seed: int = 0) -> list[tuple[object, int]]:
    """Instances (with their per-instance seeds) that ``suite`` runs on."""
    qos = list(zip(corpus.quasi_orders, corpus.seeds))
    graphs = list(zip(corpus.graphs, corpus.seeds))
    if suite in GRAPH_PROPOSITIONS:
        if corpus.description.get("mode") == "exhaustive":
            return [(incomparability_graph(q), s) for q, s in qos] + graphs
        return graphs
    if suite == "maximal":
        if corpus.description.get("mode") == "exhaustive":
            return qos + graphs
        return [qos[i] if i % 2 == 0 else graphs[i] for i in range(len(qos))]
    if suite in ("transitive", "independence", "dilworth"):
        return qos
    if suite in ("dichotomy", "papercover"):
        return [(q, s) for q, s in qos if q.n <= DICHOTOMY_N_MAX]
    if suite == "auxoracle":
        return ([(q, s) for q, s in qos if q.n <= AUX_ORACLE_N_MAX]
                + [(g, s) for g, s in graphs if g.n <= AUX_ORACLE_N_MAX])
    if suite == "g0":
        return [({"kind": "g0_level", "N": N}, 0) for N in range(G0_EDGES_MAX + 1)]
    if suite == "borel":
        rng = random.Random(f"borel:{seed}")
        count = max(1, len(qos))
        return [({"kind": "borel_code", "code": random_code(rng).to_json()}, 0) for _ in range(count)]
    raise ValueError(f"unknown suite {suite!r}")


@dataclass
class SuiteResult:
    suite: str
    instances: int = 0
    passed: int = 0
    checks: int = 0
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.instances - self.passed,
            "checks": self.checks,
        }


def run_suite(suite: str, corpus: Corpus, seed: int = 0, budget: int | None = None) -> SuiteResult:
    result = SuiteResult(suite)
    for index, (inst, inst_seed) in enumerate(suite_instances(suite, corpus, seed)):
        result.instances += 1
        try:
            checks, detail = check_instance(suite, inst, inst_seed, budget)
        except QolabError as exc:
            checks, detail = 0, {"error": type(exc).__name__, "message": str(exc)}
        result.checks += checks
        if detail is None:
            result.passed += 1
        else:
            result.violations.append(make_bundle(suite, inst, inst_seed, index, detail))
    return result


def make_bundle(suite: str, inst, seed: int, index: int, detail: dict) -> dict:
    return {
        "suite": suite,
        "index": index,
        "seed": seed,
        "instance": encode_instance(inst),
        "detail": _jsonable(detail),
    }


def replay_bundle(bundle: dict, budget: int | None = None) -> tuple[bool, dict | None]:
    """Re-run the recorded check; returns ``(reproduced, fresh_detail)``."""
    inst = decode_instance(bundle["instance"])
    try:
        _, detail = check_instance(bundle["suite"], inst, int(bundle.get("seed", 0)), budget)
    except QolabError as exc:
        detail = {"error": type(exc).__name__, "message": str(exc)}
    fresh = _jsonable(detail) if detail is not None else None
    return fresh is not None and fresh == bundle["detail"], fresh


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    return obj
