"""Init-to-output reachability with per-wire bit arrays.

Row ``i`` of a :class:`ReachMatrix` holds, as a bit array, the wires whose
measurement can be influenced by the initialisation that opens wire ``i``.
:func:`analyze` computes it in one backward pass: every wire carries a running
bit array, a measurement sets the wire's own bit, a multi-wire gate ORs the
arrays of all its wires together, and the first op of a wire (if it is an
init) snapshots the row.  Gates are never commuted.

A wire is treated as one line in time, so after a recycling round a wire that
hosts several qubits still gets a single row (the reach of its first init).
"""
from __future__ import annotations

from collections import deque
from typing import Dict, Hashable, List, Optional, Sequence, Set

import numpy as np

from .circuit import INIT, MEASURE, Circuit, CircuitError, GateTuple


class ReachMatrix:
    """``q x q`` bit matrix stored as packed rows (little-endian bit order).

    ``wires[k]`` is the label of index ``k``; indices follow first appearance
    in the gate list.  Rows of wires that do not start with an init are zero.
    """

    def __init__(self, wires: Sequence[Hashable], packed: np.ndarray) -> None:
        self.wires = list(wires)
        self.index: Dict[Hashable, int] = {w: k for k, w in enumerate(self.wires)}
        q = len(self.wires)
        if packed.shape != (q, (q + 7) // 8):
            raise ValueError(f"packed matrix has shape {packed.shape}, expected {(q, (q + 7) // 8)}")
        self.packed = packed

    @property
    def q(self) -> int:
        return len(self.wires)

    @classmethod
    def from_int_rows(cls, wires: Sequence[Hashable], rows: Sequence[int]) -> "ReachMatrix":
        q = len(wires)
        nbytes = (q + 7) // 8
        packed = np.zeros((q, nbytes), dtype=np.uint8)
        for k, row in enumerate(rows):
            if row:
                packed[k] = np.frombuffer(row.to_bytes(nbytes, "little"), dtype=np.uint8)
        return cls(wires, packed)

    @classmethod
    def from_sets(cls, wires: Sequence[Hashable], rows: Dict[Hashable, Set[Hashable]]) -> "ReachMatrix":
        index = {w: k for k, w in enumerate(wires)}
        ints = []
        for w in wires:
            bits = 0
            for r in rows.get(w, ()):
                bits |= 1 << index[r]
            ints.append(bits)
        return cls.from_int_rows(wires, ints)

    def to_bool(self) -> np.ndarray:
        if self.q == 0:
            return np.zeros((0, 0), dtype=bool)
        return np.unpackbits(self.packed, axis=1, count=self.q, bitorder="little").astype(bool)

    def row(self, wire: Hashable) -> np.ndarray:
        k = self.index[wire]
        return np.unpackbits(self.packed[k], count=self.q, bitorder="little").astype(bool)

    def reaches(self, init_wire: Hashable, out_wire: Hashable) -> bool:
        i, j = self.index[init_wire], self.index[out_wire]
        return bool((self.packed[i, j >> 3] >> (j & 7)) & 1)

    def reached(self, init_wire: Hashable) -> Set[Hashable]:
        """Labels of the outputs reachable from ``init_wire``."""
        return {self.wires[j] for j in np.flatnonzero(self.row(init_wire))}

    def as_sets(self) -> Dict[Hashable, Set[Hashable]]:
        return {w: self.reached(w) for w in self.wires}

    @property
    def nbytes(self) -> int:
        return int(self.packed.nbytes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReachMatrix):
            return NotImplemented
        return self.wires == other.wires and np.array_equal(self.packed, other.packed)

    def __repr__(self) -> str:
        return f"<ReachMatrix q={self.q}>"

    def to_pbm(self) -> str:
        """Plain PBM (P1) bitmap, one image row per matrix row."""
        bits = self.to_bool()
        lines = ["P1", f"{self.q} {self.q}"]
        lines += [" ".join("1" if b else "0" for b in row) for row in bits]
        return "\n".join(lines) + "\n"


def _wire_order(gates: Sequence[GateTuple]) -> List[Hashable]:
    seen: Dict[Hashable, None] = {}
    for _k, _a, wires in gates:
        for w in wires:
            seen.setdefault(w)
    return list(seen)


def _flushed_gates(circuit) -> List[GateTuple]:
    if isinstance(circuit, Circuit) and not circuit.is_flushed():
        raise CircuitError("reachability needs a flushed circuit (unresolved wire references)")
    return circuit.gate_list()


def analyze_gates(gates: Sequence[GateTuple]) -> ReachMatrix:
    wires = _wire_order(gates)
    index = {w: k for k, w in enumerate(wires)}
    running = [0] * len(wires)
    rows = [0] * len(wires)
    first_kind: Dict[int, str] = {}
    for kind, _arg, ws in reversed(gates):
        if len(ws) == 1:
            k = index[ws[0]]
            if kind == MEASURE:
                running[k] |= 1 << k
            elif kind == INIT:
                rows[k] = running[k]
            first_kind[k] = kind
        else:
            ks = [index[w] for w in ws]
            merged = 0
            for k in ks:
                merged |= running[k]
            for k in ks:
                running[k] = merged
                first_kind[k] = kind
    for k, kind in first_kind.items():
        if kind != INIT:
            rows[k] = 0
    return ReachMatrix.from_int_rows(wires, rows)


def analyze(circuit) -> ReachMatrix:
    """Bit-array reachability of a flushed circuit (backward pass)."""
    return analyze_gates(_flushed_gates(circuit))


def analyze_bruteforce(circuit) -> ReachMatrix:
    """Reference implementation: forward search over the op dependency DAG.

    Every op points to the next op on each of its wires; row ``i`` collects
    the wires of all measurements reachable from wire ``i``'s first op, when
    that op is an init.
    """
    gates = _flushed_gates(circuit)
    wires = _wire_order(gates)
    succ: List[List[int]] = [[] for _ in gates]
    last_on: Dict[Hashable, int] = {}
    first_on: Dict[Hashable, int] = {}
    for pos, (_k, _a, ws) in enumerate(gates):
        for w in ws:
            if w in last_on:
                succ[last_on[w]].append(pos)
            else:
                first_on[w] = pos
            last_on[w] = pos
    rows: Dict[Hashable, Set[Hashable]] = {}
    for w in wires:
        start = first_on[w]
        if gates[start][0] != INIT:
            continue
        seen = {start}
        todo = deque([start])
        reached = set()
        while todo:
            pos = todo.popleft()
            kind, _a, ws = gates[pos]
            if kind == MEASURE:
                reached.add(ws[0])
            for nxt in succ[pos]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        rows[w] = reached
    return ReachMatrix.from_sets(wires, rows)


def memory_estimate(q: int) -> int:
    """Bytes needed for ``q * q`` reachability bits."""
    if q < 0:
        raise ValueError("wire count must be non-negative")
    return (q * q + 7) // 8


def wire_spans(gates: Sequence[GateTuple]) -> Dict[Hashable, List[Optional[int]]]:
    """``{wire: [first position, last position]}``."""
    spans: Dict[Hashable, List[Optional[int]]] = {}
    for pos, (_k, _a, ws) in enumerate(gates):
        for w in ws:
            span = spans.get(w)
            if span is None:
                spans[w] = [pos, pos]
            else:
                span[1] = pos
    return spans
