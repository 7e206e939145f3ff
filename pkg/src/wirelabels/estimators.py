"""scikit-learn style wrappers so the passes compose in a ``Pipeline``.

``X`` is one circuit: a :class:`~wirelabels.circuit.Circuit`, an
:class:`~wirelabels.naive.EagerCircuit`, circuit text, or a list of
``(kind, arg, wires)`` tuples.  ``transform`` returns the engine's circuit type.

>>> from sklearn.pipeline import make_pipeline
>>> pipe = make_pipeline(ICMTransformer(), WireRecycler())
>>> out = pipe.fit_transform(generate_adder(4))  # doctest: +SKIP
"""
from __future__ import annotations

from typing import List, Optional

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .circuit import Circuit
from .flush import flush
from .naive import (EagerCircuit, eager_decompose_toffoli, eager_recycle_rounds,
                    eager_to_icm)
from .recycle import RecyclePlan, recycle
from .rewrite import decompose_toffoli, load_rules, to_icm
from .textio import parse_circuit

ENGINES = ("fast", "naive")


def check_engine(engine) -> str:
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}, got {engine!r}")
    return engine


def check_circuit(X, engine: str = "fast", copy: bool = True):
    """Coerce ``X`` to the circuit type used by ``engine``."""
    engine = check_engine(engine)
    if isinstance(X, str):
        c = parse_circuit(X)
        copy = False
    elif isinstance(X, (list, tuple)):
        c = Circuit.from_gates(X)
        copy = False
    elif isinstance(X, (Circuit, EagerCircuit)):
        c = X
    else:
        raise TypeError(f"expected a circuit, circuit text or gate list, got {type(X).__name__}")
    if engine == "fast":
        if isinstance(c, EagerCircuit):
            return Circuit.from_gates(c.gate_list())
        return c.copy() if copy else c
    if isinstance(c, Circuit):
        return EagerCircuit.from_circuit(c)
    return c.copy() if copy else c


class _CircuitPass(BaseEstimator, TransformerMixin):
    def fit(self, X, y=None):
        check_engine(self.engine)
        self.rules_ = load_rules(getattr(self, "templates", None))
        self.n_wires_in_ = check_circuit(X, self.engine, copy=False).n_wires
        return self

    def _prepare(self, X):
        check_is_fitted(self, "rules_")
        return check_circuit(X, self.engine, self.copy)


class ToffoliDecomposer(_CircuitPass):
    """Replace every Toffoli by its Clifford+T template."""

    def __init__(self, engine: str = "fast", templates: Optional[str] = None, copy: bool = True):
        self.engine = engine
        self.templates = templates
        self.copy = copy

    def transform(self, X):
        c = self._prepare(X)
        if self.engine == "fast":
            return decompose_toffoli(c, self.rules_)
        return eager_decompose_toffoli(c, self.rules_)


class ICMTransformer(_CircuitPass):
    """Toffoli decomposition followed by ICM conversion.

    The fast engine's output is flushed, so it can go straight into
    :class:`WireRecycler`.  ``n_teleports_`` is the number of ancillae the
    last call introduced.
    """

    def __init__(self, engine: str = "fast", templates: Optional[str] = None, copy: bool = True):
        self.engine = engine
        self.templates = templates
        self.copy = copy

    def transform(self, X):
        c = self._prepare(X)
        before = c.counters["teleports"]
        if self.engine == "fast":
            decompose_toffoli(c, self.rules_)
            flush(to_icm(c, self.rules_))
        else:
            eager_decompose_toffoli(c, self.rules_)
            eager_to_icm(c, self.rules_)
        self.n_teleports_ = c.counters["teleports"] - before
        return c


class WireRecycler(BaseEstimator, TransformerMixin):
    """Greedy wire recycling, up to ``rounds`` rounds.

    ``plans_`` holds the plans applied by the last ``transform`` call.
    """

    def __init__(self, engine: str = "fast", rounds: int = 1, copy: bool = True):
        self.engine = engine
        self.rounds = rounds
        self.copy = copy

    def fit(self, X, y=None):
        check_engine(self.engine)
        if not isinstance(self.rounds, int) or self.rounds < 1:
            raise ValueError(f"rounds must be a positive integer, got {self.rounds!r}")
        self.n_wires_in_ = check_circuit(X, self.engine, copy=False).n_wires
        return self

    def transform(self, X):
        check_is_fitted(self, "n_wires_in_")
        c = check_circuit(X, self.engine, self.copy)
        if self.engine == "fast":
            c, plans = recycle(c, self.rounds)
        else:
            c, plans = eager_recycle_rounds(c, self.rounds)
        self.plans_: List[RecyclePlan] = plans
        return c
