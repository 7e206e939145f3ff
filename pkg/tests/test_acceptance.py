"""Acceptance criteria 1-8; conftest prints one PASS/FAIL line per criterion."""

import statistics

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from wirelabels import (Circuit, DiagramError, RecyclePlan, analyze, analyze_bruteforce,
                        apply_recycling, decompose_toffoli, default_rules, flush, generate_adder,
                        memory_estimate, normalize_wires, parse_circuit, plan_recycling, recycle,
                        rewrite_gate, serialize_circuit, to_icm, validate_recycled)
from wirelabels.bench import run_pipeline
from wirelabels.diagram import Diagram
from wirelabels.ids import EQUAL, GREATER, LESS, MIN_ID, compare_gate_ids
from wirelabels.naive import (EagerCircuit, count_label_writes, eager_decompose_toffoli,
                              eager_recycle_rounds, eager_to_icm)
from wirelabels.testing import random_gates

from sample_circuits import BELL, LADDER, LADDER_REACH, LADDER_RECYCLED, bell_walkthrough

ACCEPT = settings(max_examples=1000, deadline=None, derandomize=True,
                  suppress_health_check=list(HealthCheck))
rngs = st.randoms(use_true_random=False)


def both_engines(gates, rounds=1):
    """(fast ICM, naive ICM, fast recycled, naive recycled, fast plans, naive plans)."""
    c = Circuit.from_gates(gates)
    e = EagerCircuit.from_circuit(c)
    decompose_toffoli(c)
    flush(to_icm(c))
    eager_decompose_toffoli(e)
    eager_to_icm(e)
    icm_c, icm_e = c.copy(), e.copy()
    _, fast_plans = recycle(c, rounds)
    _, naive_plans = eager_recycle_rounds(e, rounds)
    return icm_c, icm_e, c, e, fast_plans, naive_plans


# 1 ---------------------------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("n", range(4, 21))
def test_c1_adders_identical(n):
    icm_c, icm_e, rec_c, rec_e, pf, pn = both_engines(generate_adder(n).gate_list(), rounds=2)
    assert icm_c.gate_list() == icm_e.gate_list()
    assert rec_c.gate_list() == rec_e.gate_list()
    assert [p.pairs for p in pf] == [p.pairs for p in pn]


@pytest.mark.criterion(1)
@ACCEPT
@given(rngs)
def test_c1_random_identical(rng):
    gates = random_gates(rng, max_wires=64, max_ops=256)
    icm_c, icm_e, rec_c, rec_e, _pf, _pn = both_engines(gates)
    assert icm_c.gate_list() == icm_e.gate_list()
    assert rec_c.gate_list() == rec_e.gate_list()


# 2 ---------------------------------------------------------------------------

@pytest.mark.criterion(2)
def test_c2_bell_rewrites():
    rules = default_rules()
    c = parse_circuit(BELL)
    rewrite_gate(c, 0, rules["h"])
    assert serialize_circuit(c) == "p 0\nv 0\np 0\ncnot 0 1\n"
    rewrite_gate(c, 0, rules["p"])
    expected = [("init", "Y", ("anc",)), ("cnot", None, ("0", "anc")), ("measure", "Z", ("0",)),
             ("v", None, ("anc",)), ("p", None, ("anc",)), ("cnot", None, ("anc", "1"))]
    assert normalize_wires(c.gate_list()) == normalize_wires(expected)


@pytest.mark.criterion(2)
def test_c2_ladder_recycled():
    c = parse_circuit(LADDER)
    apply_recycling(c, RecyclePlan([("2", "0")]))
    flush(c)
    assert c.gate_list() == LADDER_RECYCLED
    cnots = [g for g in c.gate_list() if g[0] == "cnot"]
    assert cnots == [("cnot", None, ("0", "1")), ("cnot", None, ("1", "0")),
                     ("cnot", None, ("0", "3"))]
    assert sorted(c.wires) == ["0", "1", "3"]


# 3 ---------------------------------------------------------------------------

@pytest.mark.criterion(3)
def test_c3_ladder_sets():
    c = parse_circuit(LADDER)
    assert analyze(c).as_sets() == LADDER_REACH
    assert analyze_bruteforce(c).as_sets() == LADDER_REACH


@pytest.mark.criterion(3)
@settings(ACCEPT, max_examples=500)
@given(rngs, st.booleans())
def test_c3_random_matches_bruteforce(rng, transformed):
    gates = random_gates(rng, max_wires=64, max_ops=256, clifford_t=transformed, toffoli=False)
    c = Circuit.from_gates(gates)
    if transformed:
        flush(to_icm(c))
    assert analyze(c) == analyze_bruteforce(c)


# 4 ---------------------------------------------------------------------------

@pytest.mark.criterion(4)
def test_c4_bell_update_count(record_property):
    fast, naive = bell_walkthrough("fast"), bell_walkthrough("naive")
    assert flush(fast).gate_list() == naive.gate_list()
    extra = count_label_writes(naive) - count_label_writes(fast)
    record_property("note", f"naive {count_label_writes(naive)} vs fast "
                            f"{count_label_writes(fast)} label writes")
    assert extra == 12


# 5 ---------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_c5_memory():
    assert memory_estimate(100_000) == 1_250_000_000


# 6 ---------------------------------------------------------------------------

SWEEP = list(range(4, 21)) + [100, 200]
PAIRED_ROUNDS = 3


@pytest.mark.criterion(6)
@pytest.mark.slow
def test_c6_speedup_trend(record_property):
    speedups = {}
    for n in SWEEP:
        c = generate_adder(n)
        # paired rounds so machine drift hits both engines alike
        ratios = []
        for _ in range(PAIRED_ROUNDS):
            fast = run_pipeline(c, "fast", ("transform",), reps=3, min_time=0.1)
            naive = run_pipeline(c, "naive", ("transform",), reps=3, min_time=0.1)
            assert fast.transformed.gate_list() == naive.transformed.gate_list()
            ratios.append(naive.timings["transform"] / fast.timings["transform"])
        speedups[n] = statistics.median(ratios)
    record_property("note", "speedup " + ", ".join(f"n={n}: {s:.1f}x" for n, s in speedups.items()))
    assert speedups[100] >= 5
    drops = [(a, b) for a, b in zip(SWEEP, SWEEP[1:]) if speedups[b] < speedups[a]]
    assert not drops, f"speedup decreased between {drops}"


# 7 ---------------------------------------------------------------------------

def check_arithmetic(gates):
    n_in = Circuit.from_gates(gates).n_wires
    icm_c, icm_e, rec_c, rec_e, pf, pn = both_engines(gates, rounds=2)
    for icm, rec, plans in ((icm_c, rec_c, pf), (icm_e, rec_e, pn)):
        assert icm.n_wires - n_in == icm.counters["teleports"]
        assert icm.n_wires - rec.n_wires == sum(len(p) for p in plans)


@pytest.mark.criterion(7)
def test_c7_adders():
    for n in range(1, 21):
        check_arithmetic(generate_adder(n).gate_list())


@pytest.mark.criterion(7)
@settings(ACCEPT, max_examples=300)
@given(rngs)
def test_c7_random(rng):
    check_arithmetic(random_gates(rng, max_wires=64, max_ops=256))


# 8 ---------------------------------------------------------------------------

gate_ids = st.lists(st.integers(0, 5), min_size=1, max_size=4).map(tuple) | st.just(MIN_ID)


@pytest.mark.criterion(8)
@ACCEPT
@given(gate_ids, gate_ids, gate_ids)
def test_c8_gate_id_total_order(a, b, c):
    ab, ba = compare_gate_ids(a, b), compare_gate_ids(b, a)
    assert ab == -ba
    assert (ab == EQUAL) == (a == b)
    if ab != GREATER and compare_gate_ids(b, c) != GREATER:
        assert compare_gate_ids(a, c) != GREATER
    if ab == LESS and compare_gate_ids(b, c) == LESS:
        assert compare_gate_ids(a, c) == LESS
    if a != MIN_ID:
        assert compare_gate_ids(MIN_ID, a) == LESS


def transformed_unflushed(rng):
    c = Circuit.from_gates(random_gates(rng, max_wires=32, max_ops=128))
    decompose_toffoli(c)
    to_icm(c)
    return c


@pytest.mark.criterion(8)
@ACCEPT
@given(rngs)
def test_c8_flush_idempotent(rng):
    c = transformed_unflushed(rng)
    flush(c)
    once = (c.gate_list(), [op.id for op in c.ops], [list(op.refs) for op in c.ops],
            list(c.diagram.labels), c.wires)
    flush(c)
    assert once == (c.gate_list(), [op.id for op in c.ops], [list(op.refs) for op in c.ops],
                    list(c.diagram.labels), c.wires)


@pytest.mark.criterion(8)
@ACCEPT
@given(rngs)
def test_c8_resolve_pure(rng):
    c = transformed_unflushed(rng)
    d = c.diagram
    state = (list(d.labels), list(d.thresholds), list(d.left), list(d.right),
             [list(op.refs) for op in c.ops])
    first = [c.resolve(op) for op in c.ops]
    assert [c.resolve(op) for op in c.ops] == first
    assert state == (d.labels, d.thresholds, d.left, d.right, [op.refs for op in c.ops])


@pytest.mark.criterion(8)
@ACCEPT
@given(rngs)
def test_c8_recycling_keeps_qubit_order(rng):
    c = Circuit.from_gates(random_gates(rng, max_wires=48, max_ops=200, clifford_t=False,
                                        toffoli=False))
    original = c.copy()
    plan = plan_recycling(analyze(c), c)
    flush(apply_recycling(c, plan))
    report = validate_recycled(c, original, plan)
    assert report.ok, report.violations


@pytest.mark.criterion(8)
@ACCEPT
@given(rngs)
def test_c8_diagram_acyclic_after_joins(rng):
    d = Diagram()
    for i in range(rng.randint(2, 6)):
        d.add_node(f"r{i}")
    fresh = iter(range(10**6))
    for _ in range(rng.randint(1, 40)):
        leaves = [n for n in range(len(d)) if d.is_leaf(n)]
        if rng.random() < 0.4:
            node = rng.choice(leaves)
            d.split(node, (rng.randrange(8),), f"s{next(fresh)}", f"s{next(fresh)}")
        else:
            src, dst = rng.choice(leaves), rng.randrange(len(d))
            before = (list(d.thresholds), list(d.right))
            try:
                d.join(src, dst)
            except DiagramError:
                assert before == (d.thresholds, d.right)
        assert d.is_acyclic()
