"""Gate-list circuit representation.

A :class:`Circuit` is an ordered list of :class:`Operation` objects plus the
label diagram their wire references point into.  Each wire slot of an
operation holds a diagram node handle; the wire a slot actually lives on is
found lazily with :meth:`Circuit.resolve`.
"""
from __future__ import annotations

from collections import Counter
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .diagram import Diagram
from .ids import GateId, format_gate_id

INIT = "init"
MEASURE = "measure"
CNOT = "cnot"
TOFFOLI = "toffoli"
SINGLE_QUBIT_GATES = ("x", "z", "h", "p", "pdag", "v", "vdag", "t", "tdag")

ARITY: Dict[str, int] = {INIT: 1, MEASURE: 1, CNOT: 2, TOFFOLI: 3}
ARITY.update({g: 1 for g in SINGLE_QUBIT_GATES})

INIT_STATES = ("0", "1", "+", "Y", "A")
MEASURE_BASES = ("Z", "X")

CLIFFORD_T = frozenset(SINGLE_QUBIT_GATES) | {CNOT}
ICM_KINDS = frozenset({INIT, CNOT, MEASURE})

# (kind, argument, wire labels): the engine-independent view of one op
GateTuple = Tuple[str, Optional[str], Tuple[Hashable, ...]]


class CircuitError(ValueError):
    pass


class Operation:
    """One circuit element.

    ``arg`` is the initial state of an init, the basis of a measurement and
    ``None`` for gates.  ``refs`` holds one wire reference per operated wire
    (diagram handles in a :class:`Circuit`, wire indices in the naive engine).
    """

    __slots__ = ("id", "kind", "arg", "refs")

    def __init__(self, id: GateId, kind: str, arg: Optional[str], refs: List[int]) -> None:
        self.id = id
        self.kind = kind
        self.arg = arg
        self.refs = refs

    def copy(self) -> "Operation":
        return Operation(self.id, self.kind, self.arg, list(self.refs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Operation):
            return NotImplemented
        return (self.id, self.kind, self.arg, self.refs) == (other.id, other.kind, other.arg, other.refs)

    def __repr__(self) -> str:
        arg = f" {self.arg}" if self.arg is not None else ""
        return f"Operation({format_gate_id(self.id)}: {self.kind}{arg} {self.refs})"


def check_operation(kind: str, arg: Optional[str], n_wires: int) -> None:
    if kind not in ARITY:
        raise CircuitError(f"unknown gate kind {kind!r}")
    if ARITY[kind] != n_wires:
        raise CircuitError(f"{kind} takes {ARITY[kind]} wire(s), got {n_wires}")
    if kind == INIT and arg not in INIT_STATES:
        raise CircuitError(f"unknown initial state {arg!r}")
    if kind == MEASURE and arg not in MEASURE_BASES:
        raise CircuitError(f"unknown measurement basis {arg!r}")
    if kind not in (INIT, MEASURE) and arg is not None:
        raise CircuitError(f"{kind} takes no argument")


class WireNamer:
    """Hands out fresh wire labels ``w0, w1, ...`` skipping labels in use.

    Both engines create one from the same input circuit, so they generate
    identical names for identical split sequences.
    """

    def __init__(self, used: Iterable[Hashable] = (), prefix: str = "w") -> None:
        self.used = set(used)
        self.prefix = prefix
        self.counter = 0

    def copy(self) -> "WireNamer":
        new = WireNamer(prefix=self.prefix)
        new.used = set(self.used)
        new.counter = self.counter
        return new

    def fresh(self) -> str:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.used:
                self.used.add(name)
                return name


class WirePatternChecker:
    """Per-wire state machine for the init ... measure pattern.

    A wire may start without an init (implicit input) and end without a
    measurement.  Violations: an init on an open wire, or any other op on a
    wire that was measured and not re-initialised.
    """

    FRESH, OPEN, CLOSED = 0, 1, 2

    def __init__(self) -> None:
        self.state: Dict[Hashable, int] = {}

    def feed(self, kind: str, wires: Sequence[Hashable]) -> Optional[str]:
        state = self.state
        for w in wires:
            s = state.get(w, self.FRESH)
            if kind == INIT:
                if s == self.OPEN:
                    return f"init on wire {w!r}, which is already in use"
                state[w] = self.OPEN
            elif s == self.CLOSED:
                return f"{kind} on wire {w!r} after its measurement"
            else:
                state[w] = self.CLOSED if kind == MEASURE else self.OPEN
        return None


def pattern_violations(gates: Iterable[GateTuple]) -> List[str]:
    checker = WirePatternChecker()
    problems = []
    for pos, (kind, _arg, wires) in enumerate(gates):
        msg = checker.feed(kind, wires)
        if msg is not None:
            problems.append(f"op {pos}: {msg}")
            # restart the wire so one bad op does not cascade
            for w in wires:
                checker.state[w] = checker.CLOSED if kind == MEASURE else checker.OPEN
    return problems


class Circuit:
    """Ordered operations, their label diagram and the live wire registry.

    Manipulations mutate the circuit in place and return it.  Counters:
    ``label_writes`` counts op wire slots written by manipulations,
    ``flush_writes`` counts slots rewritten by :func:`~wirelabels.flush.flush`.
    """

    def __init__(self) -> None:
        self.ops: List[Operation] = []
        self.diagram = Diagram()
        self.wire_nodes: Dict[Hashable, int] = {}  # live label -> leaf/root handle
        self.retired: List[Hashable] = []
        self.joined: Dict[Hashable, int] = {}  # labels joined away since the last flush
        self.namer = WireNamer()
        self.counters: Counter = Counter()
        # set once ops were moved out of id order; rewriting then needs a flush
        self.reordered = False

    @classmethod
    def from_gates(cls, gates: Iterable[Tuple[str, Optional[str], Sequence[Hashable]]],
                   check_pattern: bool = True) -> "Circuit":
        """Build a circuit from ``(kind, arg, wires)`` triples.

        Ids are the 0-based positions; one diagram root per distinct label.
        """
        c = cls()
        checker = WirePatternChecker() if check_pattern else None
        for pos, (kind, arg, wires) in enumerate(gates):
            wires = tuple(wires)
            check_operation(kind, arg, len(wires))
            if len(set(wires)) != len(wires):
                raise CircuitError(f"op {pos}: {kind} on repeated wire in {wires}")
            if checker is not None:
                msg = checker.feed(kind, wires)
                if msg is not None:
                    raise CircuitError(f"op {pos}: {msg}")
            refs = [c._root_for(w) for w in wires]
            c.ops.append(Operation((pos,), kind, arg, refs))
        return c

    def _root_for(self, label: Hashable) -> int:
        node = self.wire_nodes.get(label)
        if node is None:
            node = self.diagram.add_node(label)
            self.wire_nodes[label] = node
            self.namer.used.add(label)
        return node

    def copy(self) -> "Circuit":
        new = Circuit()
        new.ops = [op.copy() for op in self.ops]
        new.diagram = self.diagram.copy()
        new.wire_nodes = dict(self.wire_nodes)
        new.retired = list(self.retired)
        new.joined = dict(self.joined)
        new.namer = self.namer.copy()
        new.counters = Counter(self.counters)
        new.reordered = self.reordered
        return new

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def wires(self) -> List[Hashable]:
        """Live wire labels."""
        return list(self.wire_nodes)

    @property
    def n_wires(self) -> int:
        return len(self.wire_nodes)

    @property
    def label_writes(self) -> int:
        return self.counters["label_writes"]

    def resolve(self, op: Operation) -> Tuple[Hashable, ...]:
        d = self.diagram
        return tuple(d.labels[d.resolve(r, op.id)] for r in op.refs)

    def gate_list(self) -> List[GateTuple]:
        """Fully resolved ``(kind, arg, wires)`` list."""
        d = self.diagram
        labels, resolve = d.labels, d.resolve
        return [
            (op.kind, op.arg, tuple(labels[resolve(r, op.id)] for r in op.refs))
            for op in self.ops
        ]

    def is_flushed(self) -> bool:
        is_leaf = self.diagram.is_leaf
        return all(is_leaf(r) for op in self.ops for r in op.refs)

    def split_wire(self, leaf: int, threshold: GateId) -> Tuple[int, int]:
        """Split a live leaf into two freshly named wires."""
        old = self.diagram.labels[leaf]
        if self.wire_nodes.get(old) != leaf:
            raise CircuitError(f"node {leaf} is not the live leaf of a wire")
        left, right = self.diagram.split(leaf, threshold, self.namer.fresh(), self.namer.fresh())
        del self.wire_nodes[old]
        self.retired.append(old)
        self.wire_nodes[self.diagram.labels[left]] = left
        self.wire_nodes[self.diagram.labels[right]] = right
        self.counters["splits"] += 1
        return left, right

    def join_wires(self, init_label: Hashable, meas_label: Hashable) -> None:
        """Put the wire ``init_label`` onto the wire ``meas_label``.

        ``meas_label`` may itself have been joined away earlier in the same
        round; its node then forwards to wherever it went.
        """
        init_node = self.wire_nodes.get(init_label)
        meas_node = self.wire_nodes.get(meas_label, self.joined.get(meas_label))
        if init_node is None or meas_node is None:
            bad = init_label if init_node is None else meas_label
            raise CircuitError(f"unknown live wire {bad!r}")
        self.diagram.join(init_node, meas_node)
        del self.wire_nodes[init_label]
        self.joined[init_label] = init_node
        self.retired.append(init_label)
        self.counters["joins"] += 1

    def __repr__(self) -> str:
        return f"<Circuit ops={len(self.ops)} wires={self.n_wires}>"


def normalize_wires(gates: Sequence[GateTuple]) -> List[GateTuple]:
    """Rename wires to ``0, 1, ...`` in order of first appearance."""
    names: Dict[Hashable, int] = {}
    out = []
    for kind, arg, wires in gates:
        out.append((kind, arg, tuple(names.setdefault(w, len(names)) for w in wires)))
    return out


def count_kinds(gates: Iterable[GateTuple]) -> Counter:
    return Counter(kind for kind, _arg, _wires in gates)
