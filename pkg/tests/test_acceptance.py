"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import json
import random
import time

import pytest

from qolab import harness
from qolab.auxgraph import aux_graph, aux_graph_bruteforce
from qolab.cli import run
from qolab.dilworth import (
    dichotomy,
    enumerate_antichains,
    is_chain_cover,
    iter_antichains,
    min_chain_cover,
    width_and_antichain,
)
from qolab.g0 import dense_sequences, g0_level, length_lex, level_stats
from qolab.procedures import PROPOSITIONS, paper_chain_cover, reduced_relation
from qolab.relation import (
    FENCE_TEXT,
    all_quasi_orders,
    derive,
    fence,
    incomparability_graph,
    is_antichain,
    is_chain,
    random_graph,
    random_quasi_order,
)
from qolab.trees import BorelCode, FiniteTree, eval_borel_code, eval_staged, random_code

DENSITIES = (0.2, 0.4, 0.6)


@pytest.fixture
def emit(capsys):
    def _emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, detail

    return _emit


def corpus(count, n_max, seed, n_min=2):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(n_min, n_max)
        out.append(random_quasi_order(n, DENSITIES[i % 3], rng.getrandbits(63)))
    return out


DILWORTH_CORPUS = corpus(500, 40, seed=2024)


def test_criterion_1_dilworth_equality(emit):
    start = time.perf_counter()
    bad = []
    for i, q in enumerate(DILWORTH_CORPUS):
        cover = min_chain_cover(q)
        w, antichain = width_and_antichain(q)
        # an antichain and a chain cover of equal size certify both optima
        if not (len(cover) == w == len(antichain) and is_chain_cover(q, cover.chains)
                and is_antichain(q, antichain)):
            bad.append(i)
    elapsed = time.perf_counter() - start
    emit("1 Dilworth equality", not bad and elapsed < 10,
         f"500 instances, n<=40, {len(bad)} mismatches, {elapsed:.2f}s (limit 10s)")


def test_criterion_2_dichotomy(emit):
    start = time.perf_counter()
    small = [q for q in DILWORTH_CORPUS if q.n <= 14]
    bad, runs = [], 0
    for i, q in enumerate(small):
        w = len(min_chain_cover(q))
        for k in range(1, w + 2):
            runs += 1
            res = dichotomy(q, k)
            big = bool(enumerate_antichains(q, k + 1))
            if res.cover is not None:
                ok = (res.antichain is None and not big and len(res.cover) == k
                      and is_chain_cover(q, [c for c in res.cover.chains]))
            else:
                ok = big and len(res.antichain) == k + 1 and is_antichain(q, res.antichain)
            if not ok:
                bad.append((i, k))
    elapsed = time.perf_counter() - start
    emit("2 constructive dichotomy", not bad and elapsed < 60,
         f"{len(small)} instances n<=14, {runs} (q,k) runs, {len(bad)} failures, {elapsed:.2f}s (limit 60s)")


def test_criterion_3_peeled_cover(emit):
    start = time.perf_counter()
    qs = corpus(200, 14, seed=77)
    bad = []
    for i, q in enumerate(qs):
        pc = paper_chain_cover(q)
        ok = len(pc.cover) == len(min_chain_cover(q)) and is_chain_cover(q, pc.cover.chains)
        ok = ok and all(is_chain(q, c) for c in pc.cover.chains)
        remaining = set(range(q.n))
        for layer in pc.layers:
            sub, labels = q.induced(remaining)
            w = len(min_chain_cover(sub))
            for a in iter_antichains(sub, w):
                if not {labels[j] for j in a} & layer:
                    ok = False
                    break
            remaining -= layer
        if not ok:
            bad.append(i)
    elapsed = time.perf_counter() - start
    emit("3 peeled cover optimality", not bad and elapsed < 120,
         f"200 instances n<=14, {len(bad)} failures, {elapsed:.2f}s (limit 120s)")


def test_criterion_4_aux_oracle(emit):
    mismatches = 0
    exhaustive = 0
    for n in range(5):
        for q in all_quasi_orders(n):
            exhaustive += 1
            g = incomparability_graph(q)
            fast, slow = aux_graph(g), aux_graph_bruteforce(g)
            mismatches += fast.aux != slow.aux or fast.chi != slow.chi
    rng = random.Random(4)
    for i in range(300):
        g = random_graph(rng.randint(1, 8), DENSITIES[i % 3], rng.getrandbits(63))
        fast, slow = aux_graph(g), aux_graph_bruteforce(g)
        mismatches += fast.aux != slow.aux or fast.chi != slow.chi
    emit("4 aux-graph oracle equivalence", mismatches == 0,
         f"{exhaustive} exhaustive quasi-orders n<=4 + 300 random graphs n<=8, {mismatches} mismatches")


def test_criterion_5_propositions(emit, tmp_path):
    start = time.perf_counter()
    exhaustive = harness.exhaustive_corpus(4)
    random_qs = harness.random_corpus(200, n_max=8, seed=0)
    counts, bundles = {}, []
    for name in PROPOSITIONS:
        total = 0
        for corp in (exhaustive, random_qs):
            res = harness.run_suite(name, corp, seed=0)
            total += res.instances
            bundles.extend(res.violations)
        counts[name] = total
    for i, bundle in enumerate(bundles):
        (tmp_path / f"bundle-{i:03d}.json").write_text(json.dumps(bundle, sort_keys=True))
    elapsed = time.perf_counter() - start
    summary = ", ".join(f"{k}={v}" for k, v in counts.items())
    emit("5 propositions", not bundles and elapsed < 300,
         f"instances {summary}; {len(bundles)} counterexamples, {elapsed:.1f}s (limit 300s)")


def test_criterion_6_fence_golden(emit):
    q = fence()
    checks = {
        "text": q.to_text() == FENCE_TEXT,
        "width": width_and_antichain(q) == (2, frozenset({0, 1})),
        "perp": derive(q, "incomparable").edges() == [(0, 1), (0, 3), (2, 3)],
        "aux": aux_graph(derive(q, "incomparable")).aux.edges() == [(0, 1), (0, 3), (1, 2), (2, 3)],
        "reduced": reduced_relation(q).to_text() == "4\n1010\n0101\n0010\n0001\n",
        "paper": json.dumps(paper_chain_cover(q).to_json(), separators=(",", ":"))
        == '{"chains":[[0,2],[1,3]],"layers":[[0,2]]}',
    }
    failed = [k for k, v in checks.items() if not v]
    emit("6 fence golden values", not failed, f"{len(checks) - len(failed)}/{len(checks)} exact ({failed or 'all match'})")


def test_criterion_7_g0(emit):
    start = time.perf_counter()
    problems = []
    for N in range(17):
        level = g0_level(N)
        if len(level.edges) != 2**N - 1:
            problems.append(f"edges N={N}")
        seqs = dense_sequences(N)
        if not all(any(w.startswith(length_lex(i)) for w in seqs.s) for i in range(N)):
            problems.append(f"density N={N}")
        if 1 <= N <= 12:
            stats = level_stats(level)
            if not stats["connected"] or stats["chi"] != 2:
                problems.append(f"connectivity/chi N={N}")
    elapsed = time.perf_counter() - start
    emit("7 G0 truncations", not problems and elapsed < 30,
         f"N<=16 edges+density, N<=12 connected chi=2, {problems or 'no problems'}, {elapsed:.2f}s (limit 30s)")


def test_criterion_8_borel(emit):
    start = time.perf_counter()
    rng = random.Random(8)
    disagree = 0
    for _ in range(500):
        code = random_code(rng, max_alpha=3, max_depth=3, max_m=6)
        disagree += eval_borel_code(code) != eval_staged(code)
    leaves = {(0,): frozenset({0, 1}), (1,): frozenset({1, 2}), (2,): frozenset({0}), (3,): frozenset()}
    example = BorelCode(2, FiniteTree.of(4, [()]), leaves, 3)
    worked = eval_borel_code(example) == eval_staged(example) == frozenset({1})
    elapsed = time.perf_counter() - start
    emit("8 Borel-code evaluators", disagree == 0 and worked and elapsed < 10,
         f"500 random codes, {disagree} disagreements, worked example {'ok' if worked else 'wrong'}, {elapsed:.2f}s (limit 10s)")


def test_criterion_9_determinism(emit, tmp_path):
    docs = []
    codes = []
    for name in ("r1.json", "r2.json"):
        path = tmp_path / name
        _, code = run(["prove", "--all", "--seed", "0", "--json", str(path)], out=lambda s: None)
        codes.append(code)
        data = json.loads(path.read_text())
        data.pop("elapsed_ms")
        docs.append(json.dumps(data, sort_keys=True, indent=2))
    same = docs[0] == docs[1]
    emit("9 determinism", same and codes == [0, 0],
         f"two prove --all --seed 0 runs, reports {'identical' if same else 'differ'}, exit codes {codes}")
