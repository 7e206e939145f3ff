"""Eager reference engine.

Wires are numbered by their position in an ordered wire table, and an op's
wire slots hold those positions, the way gate-list tools usually treat qubit
labels.  Every manipulation that changes the wires immediately rewrites every
affected slot in the whole gate list: a split inserts the new wire right
after the split one (shifting all later positions), a join deletes the
recycled wire (shifting the other way).  This is deliberately the slow,
obviously-correct baseline; it also counts every slot it writes.

Reachability here uses plain Python sets.
"""
from __future__ import annotations

from collections import Counter
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .circuit import (INIT, MEASURE, TOFFOLI, Circuit, GateTuple, Operation, WireNamer,
                      check_operation)
from .recycle import RecycleError, RecyclePlan, candidates, check_plan, schedule
from .reachability import ReachMatrix
from .rewrite import (RewriteError, RewriteRule, RuleSet, _Compiled, check_icm_convertible,
                      default_rules, icm_stages)


class EagerCircuit:
    """Gate list whose wire slots are positions in ``wires``."""

    def __init__(self) -> None:
        self.ops: List[Operation] = []
        self.wires: List[Hashable] = []
        self.namer = WireNamer()
        self.counters: Counter = Counter()

    @classmethod
    def from_gates(cls, gates: Iterable[Tuple[str, Optional[str], Sequence[Hashable]]]) -> "EagerCircuit":
        ec = cls()
        position: Dict[Hashable, int] = {}
        for pos, (kind, arg, wires) in enumerate(gates):
            check_operation(kind, arg, len(wires))
            refs = []
            for w in wires:
                k = position.get(w)
                if k is None:
                    k = position[w] = len(ec.wires)
                    ec.wires.append(w)
                refs.append(k)
            ec.ops.append(Operation((pos,), kind, arg, refs))
        ec.namer = WireNamer(ec.wires)
        return ec

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> "EagerCircuit":
        """Snapshot of a lazy circuit; wire order is the registry order."""
        ec = cls.from_gates(circuit.gate_list())
        present = set(ec.wires)
        ec.wires.extend(w for w in circuit.wires if w not in present)
        ec.namer = circuit.namer.copy()
        return ec

    def copy(self) -> "EagerCircuit":
        new = EagerCircuit()
        new.ops = [op.copy() for op in self.ops]
        new.wires = list(self.wires)
        new.namer = self.namer.copy()
        new.counters = Counter(self.counters)
        return new

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def n_wires(self) -> int:
        return len(self.wires)

    @property
    def label_writes(self) -> int:
        return self.counters["label_writes"]

    def gate_list(self) -> List[GateTuple]:
        wires = self.wires
        return [(op.kind, op.arg, tuple(wires[r] for r in op.refs)) for op in self.ops]

    def __repr__(self) -> str:
        return f"<EagerCircuit ops={len(self.ops)} wires={self.n_wires}>"


def _expand(ec: EagerCircuit, index: int, comp: _Compiled) -> int:
    """Rewrite ``ec.ops[index]`` eagerly; returns the template length."""
    op = ec.ops[index]
    if comp.ancilla:
        k = op.refs[0]
        ec.wires[k] = ec.namer.fresh()
        ec.wires.insert(k + 1, ec.namer.fresh())
        writes = 0
        for pos, other in enumerate(ec.ops):
            refs = other.refs
            for j, r in enumerate(refs):
                if r > k or (r == k and pos > index):
                    refs[j] = r + 1
                    writes += 1
        ec.counters["label_writes"] += writes
        ec.counters["eager_updates"] += writes
        ec.counters["splits"] += 1
        ec.counters["teleports"] += 1
        slots = (k, k + 1)
    else:
        slots = op.refs
    ec.counters["label_writes"] += comp.n_slots
    ec.counters["rewrites"] += 1
    gid = op.id
    ec.ops[index:index + 1] = [
        Operation(gid + (i,), kind, arg, [slots[s] for s in idx])
        for i, (kind, arg, idx) in enumerate(comp.ops)
    ]
    return len(comp.ops)


def eager_rewrite_gate(ec: EagerCircuit, op_index: int, rule: RewriteRule) -> EagerCircuit:
    if not (0 <= op_index < len(ec.ops)):
        raise RewriteError(f"op index {op_index} out of range")
    if ec.ops[op_index].kind != rule.matches:
        raise RewriteError(
            f"rule for {rule.matches!r} does not match {ec.ops[op_index].kind!r} at {op_index}")
    _expand(ec, op_index, _Compiled(rule))
    return ec


def _eager_sweep(ec: EagerCircuit, compiled: Dict[str, _Compiled]) -> None:
    i = 0
    while i < len(ec.ops):
        comp = compiled.get(ec.ops[i].kind)
        if comp is None:
            i += 1
        else:
            i += _expand(ec, i, comp)


def eager_decompose_toffoli(ec: EagerCircuit, rules: Optional[RuleSet] = None) -> EagerCircuit:
    rules = default_rules() if rules is None else rules
    _eager_sweep(ec, {TOFFOLI: _Compiled(rules[TOFFOLI])})
    return ec


def eager_to_icm(ec: EagerCircuit, rules: Optional[RuleSet] = None) -> EagerCircuit:
    rules = default_rules() if rules is None else rules
    check_icm_convertible({op.kind for op in ec.ops}, rules)
    plain, teleport = icm_stages(rules)
    while plain and any(op.kind in plain for op in ec.ops):
        _eager_sweep(ec, plain)
    if teleport:
        _eager_sweep(ec, teleport)
    return ec


def reach_sets(gates: Sequence[GateTuple]) -> Dict[Hashable, Set[Hashable]]:
    """Backward reachability pass with one Python set per wire."""
    running: Dict[Hashable, Set[Hashable]] = {}
    rows: Dict[Hashable, Set[Hashable]] = {}
    first_kind: Dict[Hashable, str] = {}
    for kind, _arg, ws in reversed(gates):
        if len(ws) == 1:
            w = ws[0]
            cur = running.setdefault(w, set())
            if kind == MEASURE:
                cur.add(w)
            elif kind == INIT:
                rows[w] = set(cur)
        else:
            merged = set()
            for w in ws:
                merged |= running.get(w, set())
            for w in ws:
                running[w] = set(merged)
        for w in ws:
            first_kind[w] = kind
    return {w: (rows.get(w, set()) if kind == INIT else set()) for w, kind in first_kind.items()}


def eager_analyze(ec: EagerCircuit) -> ReachMatrix:
    gates = ec.gate_list()
    wires = list(dict.fromkeys(w for _k, _a, ws in gates for w in ws))
    return ReachMatrix.from_sets(wires, reach_sets(gates))


def eager_plan(ec: EagerCircuit) -> RecyclePlan:
    """Same greedy first-fit choice as the fast planner, on sets."""
    gates = ec.gate_list()
    rows = reach_sets(gates)
    sources, targets = candidates(gates)
    used: Set[Hashable] = set()
    pairs = []
    for src in sources:
        row = rows[src]
        for tgt in targets:
            if tgt in used or tgt == src or tgt in row:
                continue
            pairs.append((src, tgt))
            used.add(tgt)
            for w, other in rows.items():
                if tgt in other:
                    other |= row
            break
    return RecyclePlan(pairs, len(rows) - len(pairs))


def eager_recycle(ec: EagerCircuit, plan: RecyclePlan) -> EagerCircuit:
    """Reorder and eagerly relabel after every join."""
    if not plan.pairs:
        return ec
    gates = ec.gate_list()
    check_plan(gates, plan)
    order = schedule([g[2] for g in gates], plan.pairs)
    ops = ec.ops
    ec.ops = [ops[pos] for pos in order]
    moved: Dict[Hashable, Hashable] = {}
    for src, tgt in plan.pairs:
        while tgt in moved:  # target already joined away in this round
            tgt = moved[tgt]
        try:
            i = ec.wires.index(src)
            m = ec.wires.index(tgt)
        except ValueError:
            raise RecycleError(f"pair ({src!r}, {tgt!r}) names an unknown wire") from None
        moved[src] = tgt
        if m > i:
            m -= 1
        writes = 0
        for op in ec.ops:
            refs = op.refs
            for j, r in enumerate(refs):
                if r == i:
                    refs[j] = m
                    writes += 1
                elif r > i:
                    refs[j] = r - 1
                    writes += 1
        del ec.wires[i]
        ec.counters["label_writes"] += writes
        ec.counters["eager_updates"] += writes
        ec.counters["joins"] += 1
    return ec


def eager_recycle_rounds(ec: EagerCircuit, rounds: int = 1) -> Tuple[EagerCircuit, List[RecyclePlan]]:
    plans = []
    for _ in range(rounds):
        plan = eager_plan(ec)
        if not plan.pairs:
            break
        eager_recycle(ec, plan)
        plans.append(plan)
    return ec, plans


def count_label_writes(session) -> int:
    """Op wire slots written so far by either engine."""
    return session.counters["label_writes"]
