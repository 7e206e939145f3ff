import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from wirelabels import Circuit, generate_adder, serialize_circuit
from wirelabels.estimators import (ICMTransformer, ToffoliDecomposer, WireRecycler, check_circuit,
                                   check_engine)
from wirelabels.naive import EagerCircuit

from sample_circuits import BELL


def test_params_roundtrip():
    est = WireRecycler(engine="naive", rounds=3)
    assert est.get_params() == {"engine": "naive", "rounds": 3, "copy": True}
    est.set_params(rounds=2)
    assert clone(est).rounds == 2


def test_pipeline_engines_agree():
    outs = {}
    for engine in ("fast", "naive"):
        pipe = make_pipeline(ICMTransformer(engine=engine), WireRecycler(engine=engine))
        outs[engine] = serialize_circuit(pipe.fit_transform(generate_adder(3)))
    assert outs["fast"] == outs["naive"]


def test_input_not_modified():
    c = generate_adder(2)
    before = c.gate_list()
    ICMTransformer().fit_transform(c)
    assert c.gate_list() == before


def test_decomposer_and_teleport_count():
    c = ToffoliDecomposer().fit_transform(generate_adder(2))
    assert "toffoli" not in {g[0] for g in c.gate_list()}
    icm = ICMTransformer().fit(BELL)
    out = icm.transform(BELL)
    assert icm.n_teleports_ == 3 and out.n_wires == 5


def test_accepts_text_and_gate_lists():
    assert isinstance(check_circuit(BELL), Circuit)
    assert isinstance(check_circuit([("h", None, ("a",))], "naive"), EagerCircuit)
    with pytest.raises(TypeError):
        check_circuit(42)


def test_validation_errors():
    with pytest.raises(ValueError):
        check_engine("turbo")
    with pytest.raises(ValueError):
        ICMTransformer(engine="turbo").fit(BELL)
    with pytest.raises(ValueError):
        WireRecycler(rounds=0).fit(BELL)
    with pytest.raises(NotFittedError):
        ICMTransformer().transform(BELL)


def test_recycler_records_plans():
    rec = WireRecycler(rounds=2)
    icm = ICMTransformer().fit_transform(generate_adder(2))
    out = rec.fit_transform(icm)
    assert icm.n_wires - out.n_wires == sum(len(p) for p in rec.plans_)
