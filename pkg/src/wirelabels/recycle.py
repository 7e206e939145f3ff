"""Wire recycling: put an initialisation after a measurement it cannot reach.

A :class:`RecyclePlan` pairs source wires (whose first op is an init) with
target wires (whose last op is a measurement).  Applying a pair moves the
source wire behind the target's measurement in time and joins the two wires
in the label diagram, so the source's ops resolve to the target label without
being rewritten.

The new gate order is a stable topological sort of the op dependency graph
(consecutive ops on a wire) plus one edge per pair, target measurement to
source init, always emitting the lowest original position first.  For a
single pair this keeps everything up to the measurement in place and moves the
source's future cone right behind it, in its original order.
"""
from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .circuit import INIT, MEASURE, Circuit, CircuitError, GateTuple, pattern_violations
from .flush import flush
from .reachability import ReachMatrix, analyze, analyze_gates, wire_spans


class RecycleError(ValueError):
    pass


@dataclass
class RecyclePlan:
    """Ordered ``(init wire, target wire)`` pairs for one recycling round."""

    pairs: List[Tuple[Hashable, Hashable]] = field(default_factory=list)
    predicted_wire_count: int = 0

    def __len__(self) -> int:
        return len(self.pairs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["init_wire", "target_wire"])
        writer.writerows(self.pairs)
        return buf.getvalue()


@dataclass
class RecycleReport:
    ok: bool
    violations: List[str]

    def __bool__(self) -> bool:
        return self.ok


def candidates(gates: Sequence[GateTuple]) -> Tuple[List[Hashable], List[Hashable]]:
    """Sources in order of their init, targets in order of their final measurement."""
    spans = wire_spans(gates)
    sources = sorted((w for w, (first, _l) in spans.items() if gates[first][0] == INIT),
                     key=lambda w: spans[w][0])
    targets = sorted((w for w, (_f, last) in spans.items() if gates[last][0] == MEASURE),
                     key=lambda w: spans[w][1])
    return sources, targets


def plan_recycling(matrix: ReachMatrix, circuit) -> RecyclePlan:
    """Greedy first-fit plan.

    Sources are taken in circuit order; each is given the earliest unused
    target whose output it does not reach.  Reachability is updated after
    every accepted pair (whatever reached the target now also reaches what
    the source reaches), which keeps the combined pairs acyclic.
    """
    gates = circuit.gate_list()
    if list(matrix.wires) != list(dict.fromkeys(w for _k, _a, ws in gates for w in ws)):
        raise RecycleError("reachability matrix does not match the circuit's wires")
    sources, targets = candidates(gates)
    q = matrix.q
    packed = matrix.packed.copy()
    index = matrix.index
    tgt_idx = np.array([index[w] for w in targets], dtype=np.int64)
    free = np.ones(len(targets), dtype=bool)
    pairs = []
    for src in sources:
        i = index[src]
        row = np.unpackbits(packed[i], count=q, bitorder="little").astype(bool)
        ok = free & ~row[tgt_idx] & (tgt_idx != i)
        if not ok.any():
            continue
        pos = int(np.argmax(ok))
        m = int(tgt_idx[pos])
        pairs.append((src, targets[pos]))
        free[pos] = False
        reaching = np.flatnonzero((packed[:, m >> 3] >> (m & 7)) & 1)
        if reaching.size:
            packed[reaching] |= packed[i]
    return RecyclePlan(pairs, q - len(pairs))


def schedule(wire_lists: Sequence[Sequence[Hashable]],
             pairs: Sequence[Tuple[Hashable, Hashable]]) -> List[int]:
    """New op order for ``pairs``; raises :class:`RecycleError` on a cycle."""
    n = len(wire_lists)
    succ: List[List[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    first_on: Dict[Hashable, int] = {}
    last_on: Dict[Hashable, int] = {}
    for pos, ws in enumerate(wire_lists):
        for w in ws:
            prev = last_on.get(w)
            if prev is None:
                first_on[w] = pos
            else:
                succ[prev].append(pos)
                indeg[pos] += 1
            last_on[w] = pos
    for src, tgt in pairs:
        if src not in first_on or tgt not in last_on:
            raise RecycleError(f"pair ({src!r}, {tgt!r}) names an unknown wire")
        v = first_on[src]
        succ[last_on[tgt]].append(v)
        indeg[v] += 1
    heap = [pos for pos in range(n) if indeg[pos] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        pos = heapq.heappop(heap)
        order.append(pos)
        for nxt in succ[pos]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                heapq.heappush(heap, nxt)
    if len(order) != n:
        raise RecycleError("recycling plan creates a cyclic dependency")
    return order


def check_plan(gates: Sequence[GateTuple], plan: RecyclePlan) -> None:
    spans = wire_spans(gates)
    seen_src, seen_tgt = set(), set()
    for src, tgt in plan.pairs:
        if src not in spans or tgt not in spans:
            raise RecycleError(f"pair ({src!r}, {tgt!r}) names an unknown wire")
        if src == tgt:
            raise RecycleError(f"wire {src!r} cannot be recycled onto itself")
        if gates[spans[src][0]][0] != INIT:
            raise RecycleError(f"wire {src!r} does not start with an init")
        if gates[spans[tgt][1]][0] != MEASURE:
            raise RecycleError(f"wire {tgt!r} does not end with a measurement")
        if src in seen_src or tgt in seen_tgt:
            raise RecycleError(f"wire used twice in plan: ({src!r}, {tgt!r})")
        seen_src.add(src)
        seen_tgt.add(tgt)


def apply_recycling(circuit: Circuit, plan: RecyclePlan) -> Circuit:
    """Reorder ops and join wires per ``plan``, in place.

    Labels are not rewritten; the joins make the moved ops resolve to the
    target wires.  Call :func:`~wirelabels.flush.flush` before rewriting again.
    """
    if not circuit.is_flushed():
        raise CircuitError("recycling needs a flushed circuit")
    if not plan.pairs:
        return circuit
    labels = circuit.diagram.labels
    wire_lists = [[labels[r] for r in op.refs] for op in circuit.ops]
    gates = [(op.kind, op.arg, tuple(ws)) for op, ws in zip(circuit.ops, wire_lists)]
    check_plan(gates, plan)
    order = schedule(wire_lists, plan.pairs)
    ops = circuit.ops
    circuit.ops = [ops[pos] for pos in order]
    for src, tgt in plan.pairs:
        circuit.join_wires(src, tgt)
    circuit.reordered = True
    return circuit


def recycle(circuit: Circuit, rounds: int = 1) -> Tuple[Circuit, List[RecyclePlan]]:
    """Flush, analyse, plan and apply, ``rounds`` times (stops early when idle)."""
    plans = []
    for _ in range(rounds):
        flush(circuit)
        plan = plan_recycling(analyze(circuit), circuit)
        if not plan.pairs:
            break
        apply_recycling(circuit, plan)
        plans.append(plan)
    flush(circuit)
    return circuit, plans


def final_wire_map(plan: RecyclePlan) -> Dict[Hashable, Hashable]:
    """Map every source wire to the wire it ends up on (chains followed)."""
    target_of = dict(plan.pairs)
    out = {}
    for src in target_of:
        w, hops = src, 0
        while w in target_of:
            w = target_of[w]
            hops += 1
            if hops > len(target_of):
                raise RecycleError("plan contains a join cycle")
        out[src] = w
    return out


def validate_recycled(circuit, original=None, plan: Optional[RecyclePlan] = None) -> RecycleReport:
    """Check a recycled circuit.

    (a) every wire follows init ... measure (init ... measure)*;
    (b) with ``original`` and ``plan``: each original wire's ops appear, in
        order, on the wire it was recycled onto, and nothing else does;
    (c) with ``original`` and ``plan``: no source reaches its target's output
        in the original circuit.
    """
    gates = circuit.gate_list()
    violations = [f"(a) {msg}" for msg in pattern_violations(gates)]
    if original is not None and plan is not None:
        before = original.gate_list()
        mapping = final_wire_map(plan)
        target_of = dict(plan.pairs)
        source_of = {t: s for s, t in plan.pairs}

        def mapped(w):
            return mapping.get(w, w)

        per_wire: Dict[Hashable, List[GateTuple]] = {}
        for kind, arg, ws in before:
            g = (kind, arg, tuple(mapped(w) for w in ws))
            for w in ws:
                per_wire.setdefault(w, []).append(g)
        actual: Dict[Hashable, List[GateTuple]] = {}
        for g in gates:
            for w in g[2]:
                actual.setdefault(w, []).append(g)
        finals = [w for w in per_wire if w not in target_of]
        for f in finals:
            expected, w = [], f
            while w is not None:
                expected.extend(per_wire.get(w, []))
                w = source_of.get(w)
            if actual.get(f, []) != expected:
                violations.append(f"(b) op order on wire {f!r} differs from the original qubits")
        extra = set(actual) - set(finals)
        if extra:
            violations.append(f"(b) unexpected wires {sorted(map(str, extra))}")
        matrix = analyze_gates(before)
        for src, tgt in plan.pairs:
            if src in matrix.index and tgt in matrix.index and matrix.reaches(src, tgt):
                violations.append(f"(c) init of {src!r} reaches the output of {tgt!r}")
    return RecycleReport(not violations, violations)
