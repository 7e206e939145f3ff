from wirelabels import analyze, decompose_toffoli, flush, generate_adder, parse_circuit, to_icm
from wirelabels.naive import (EagerCircuit, count_label_writes, eager_analyze,
                              eager_decompose_toffoli, eager_plan, eager_to_icm, reach_sets)
from wirelabels.recycle import plan_recycling

from sample_circuits import BELL, LADDER, LADDER_REACH, bell_walkthrough


def test_bell_pipeline_matches_fast():
    c = parse_circuit(BELL)
    e = EagerCircuit.from_circuit(c)
    flush(to_icm(c))
    eager_to_icm(e)
    assert e.gate_list() == c.gate_list()


def test_noop_costs_nothing():
    e = EagerCircuit.from_circuit(parse_circuit(LADDER))
    eager_to_icm(e)
    assert count_label_writes(e) == 0


def test_bell_extra_writes():
    fast, naive = bell_walkthrough("fast"), bell_walkthrough("naive")
    assert flush(fast).gate_list() == naive.gate_list()
    assert count_label_writes(naive) == count_label_writes(fast) + 12
    assert naive.counters["eager_updates"] == 12


def test_add4_naive_writes_more():
    c = generate_adder(4)
    e = EagerCircuit.from_circuit(c)
    decompose_toffoli(c)
    to_icm(c)
    eager_decompose_toffoli(e)
    eager_to_icm(e)
    assert count_label_writes(e) > count_label_writes(c)


def test_set_reachability_matches_bitarrays():
    c = parse_circuit(LADDER)
    e = EagerCircuit.from_circuit(c)
    assert reach_sets(e.gate_list()) == LADDER_REACH
    assert eager_analyze(e) == analyze(c)
    assert eager_plan(e).pairs == plan_recycling(analyze(c), c).pairs


def test_wire_table_is_positional():
    e = EagerCircuit.from_gates(parse_circuit(BELL).gate_list())
    assert e.wires == ["0", "1"]
    assert [op.refs for op in e.ops] == [[0], [0, 1]]
