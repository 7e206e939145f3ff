import random

import pytest

from wirelabels import Circuit, ParseError, parse_circuit, read_circuit, serialize_circuit, write_circuit
from wirelabels.textio import parse_gates, serialize_gates
from wirelabels.testing import random_gates

from sample_circuits import LADDER


def test_parse_single_wire():
    c = parse_circuit("init 0 +\nh 0\nmeasure 0 Z")
    assert len(c) == 3
    assert [op.id for op in c.ops] == [(0,), (1,), (2,)]
    assert c.n_wires == 1
    assert c.gate_list() == [("init", "+", ("0",)), ("h", None, ("0",)), ("measure", "Z", ("0",))]


def test_parse_empty():
    c = parse_circuit("")
    assert len(c) == 0 and c.n_wires == 0


def test_parse_ladder():
    c = parse_circuit(LADDER)
    assert len(c) == 11
    assert c.n_wires == 4
    assert [g for g in c.gate_list() if g[0] == "cnot"] == [
        ("cnot", None, ("0", "1")), ("cnot", None, ("1", "2")), ("cnot", None, ("2", "3"))]


def test_roundtrip_ladder():
    assert serialize_circuit(parse_circuit(LADDER)) == LADDER


def test_comments_case_and_aliases():
    text = "# header\nINIT a y  # trailing\n\nH a\nMeas a x\n"
    assert serialize_circuit(parse_circuit(text)) == "init a Y\nh a\nmeasure a X\n"


@pytest.mark.parametrize("text, line, column", [
    ("frob 0", 1, 1),
    ("h 0\ncnot 0", 2, 7),
    ("init 0 Q", 1, 8),
    ("measure 0 Y", 1, 11),
    ("cnot 1 1", 1, 6),
    ("h 0 1", 1, 5),
    ("init 0 0\ninit 0 0", 2, 1),
    ("measure 0 Z\nh 0", 2, 1),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_circuit(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_reinit_after_measure_is_allowed():
    c = parse_circuit("init 0 0\nmeasure 0 Z\ninit 0 +\nh 0\nmeasure 0 X\n")
    assert c.n_wires == 1


def test_pattern_check_can_be_disabled():
    gates = parse_gates("measure 0 Z\nh 0\n", check_pattern=False)
    assert len(gates) == 2


def test_random_roundtrip():
    for seed in range(100):
        gates = random_gates(random.Random(seed))
        text = serialize_gates(gates)
        c = parse_circuit(text)
        assert serialize_circuit(c) == text
        assert c.gate_list() == [(k, a, tuple(w)) for k, a, w in gates]


def test_file_roundtrip(tmp_path):
    path = tmp_path / "c.txt"
    write_circuit(parse_circuit(LADDER), path)
    assert read_circuit(path).gate_list() == parse_circuit(LADDER).gate_list()


def test_serialize_rejects_dangling_refs():
    c = parse_circuit("h 0\n")
    c.ops[0].refs[0] = 7
    with pytest.raises(ValueError):
        serialize_circuit(c)


def test_from_gates_rejects_bad_arity():
    with pytest.raises(ValueError):
        Circuit.from_gates([("cnot", None, ("a",))])
