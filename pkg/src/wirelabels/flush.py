"""Forced resolution of a circuit's lazy wire references."""
from __future__ import annotations

from collections import Counter
from typing import List

from .circuit import Circuit
from .diagram import Diagram


def flush(circuit: Circuit) -> Circuit:
    """Resolve every reference, renumber ids ``0..n-1`` and drop interior nodes.

    In place; returns ``circuit``.  Live leaves become the roots of a fresh
    diagram.  Slots whose resolved node differs from the stored one are
    counted in ``counters["flush_writes"]``.
    """
    old = circuit.diagram
    resolve = old.resolve
    new = Diagram()
    remap = {}
    for label, node in circuit.wire_nodes.items():
        if not old.is_leaf(node):
            raise AssertionError(f"live wire {label!r} is not a leaf")
        remap[node] = new.add_node(label)
    writes = 0
    for pos, op in enumerate(circuit.ops):
        gid = op.id
        refs = op.refs
        for i, r in enumerate(refs):
            leaf = resolve(r, gid)
            if leaf != r:
                writes += 1
            try:
                refs[i] = remap[leaf]
            except KeyError:
                raise AssertionError(
                    f"op {pos} resolves to retired wire {old.labels[leaf]!r}") from None
        op.id = (pos,)
    circuit.diagram = new
    circuit.wire_nodes = {new.labels[n]: n for n in remap.values()}
    circuit.joined = {}
    circuit.counters["flush_writes"] += writes
    circuit.reordered = False
    return circuit


def resolution_depths(circuit: Circuit) -> List[int]:
    """Per-slot path length from the referenced node to its resolution."""
    depth = circuit.diagram.depth
    return [depth(r, op.id) for op in circuit.ops for r in op.refs]


def resolution_depth_stats(circuit: Circuit) -> Counter:
    """Histogram ``{path length: number of wire slots}``."""
    return Counter(resolution_depths(circuit))
