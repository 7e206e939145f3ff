"""Wire label reference diagrams.

Nodes live in an arena of parallel lists and are addressed by integer
handles, so operations can hold references that stay valid across splits and
joins.  A node carries a wire label, an optional threshold gate id and up to
two children.  A split turns a leaf into a decision node; a join hangs a
measured wire below a recycled initialisation with the ``MIN_ID`` threshold.
"""
from __future__ import annotations

from typing import Hashable, Iterator, List, Optional, Tuple

from .ids import MIN_ID, GateId, format_gate_id, is_after

NO_CHILD = -1


class DiagramError(ValueError):
    pass


class Diagram:
    """Arena of diagram nodes."""

    __slots__ = ("labels", "thresholds", "left", "right")

    def __init__(self) -> None:
        self.labels: List[Hashable] = []
        self.thresholds: List[Optional[GateId]] = []
        self.left: List[int] = []
        self.right: List[int] = []

    def __len__(self) -> int:
        return len(self.labels)

    def copy(self) -> "Diagram":
        new = Diagram()
        new.labels = self.labels.copy()
        new.thresholds = self.thresholds.copy()
        new.left = self.left.copy()
        new.right = self.right.copy()
        return new

    def add_node(self, label: Hashable) -> int:
        self.labels.append(label)
        self.thresholds.append(None)
        self.left.append(NO_CHILD)
        self.right.append(NO_CHILD)
        return len(self.labels) - 1

    def check_handle(self, node: int) -> None:
        if not (0 <= node < len(self.labels)):
            raise DiagramError(f"dangling node handle {node}")

    def is_leaf(self, node: int) -> bool:
        return (
            self.thresholds[node] is None
            and self.left[node] == NO_CHILD
            and self.right[node] == NO_CHILD
        )

    def children(self, node: int) -> Iterator[int]:
        if self.left[node] != NO_CHILD:
            yield self.left[node]
        if self.right[node] != NO_CHILD:
            yield self.right[node]

    def split(self, node: int, threshold: GateId, left_label: Hashable,
              right_label: Hashable) -> Tuple[int, int]:
        """Split leaf ``node`` at ``threshold``; return (left, right) handles.

        Ops before the threshold resolve into the left child, the rest into
        the right child.  Label freshness is the caller's business (the
        circuit owns the wire registry).
        """
        self.check_handle(node)
        if not self.is_leaf(node):
            raise DiagramError(f"cannot split non-leaf node {node} ({self.labels[node]!r})")
        if threshold == MIN_ID:
            raise DiagramError("split threshold must be a real gate id")
        if left_label == right_label:
            raise DiagramError(f"split needs two distinct labels, got {left_label!r} twice")
        lft = self.add_node(left_label)
        rgt = self.add_node(right_label)
        self.thresholds[node] = threshold
        self.left[node] = lft
        self.right[node] = rgt
        return lft, rgt

    def join(self, init_node: int, meas_node: int) -> None:
        """Redirect every reference to ``init_node`` onto ``meas_node``.

        ``meas_node`` may be an interior node; resolution continues from it.
        """
        self.check_handle(init_node)
        self.check_handle(meas_node)
        if init_node == meas_node:
            raise DiagramError("cannot join a node with itself")
        if not self.is_leaf(init_node):
            raise DiagramError(f"cannot join non-leaf node {init_node} ({self.labels[init_node]!r})")
        if self.reaches(meas_node, init_node):
            raise DiagramError(
                f"joining {self.labels[init_node]!r} onto {self.labels[meas_node]!r} creates a cycle")
        self.thresholds[init_node] = MIN_ID
        self.right[init_node] = meas_node

    def reaches(self, start: int, goal: int) -> bool:
        """Whether ``goal`` is reachable from ``start`` along child edges."""
        stack = [start]
        seen = set()
        while stack:
            node = stack.pop()
            if node == goal:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(self.children(node))
        return False

    def resolve(self, node: int, gid: GateId) -> int:
        """Handle of the node that ``gid`` ends on when starting at ``node``.

        Walks down, going right when ``gid`` is after the threshold, and
        stops at a node without threshold or without the chosen child.
        """
        thresholds, left, right = self.thresholds, self.left, self.right
        while True:
            t = thresholds[node]
            if t is None:
                return node
            nxt = right[node] if is_after(gid, t) else left[node]
            if nxt == NO_CHILD:
                return node
            node = nxt

    def resolve_label(self, node: int, gid: GateId) -> Hashable:
        return self.labels[self.resolve(node, gid)]

    def depth(self, node: int, gid: GateId) -> int:
        """Number of edges walked by :meth:`resolve`."""
        thresholds, left, right = self.thresholds, self.left, self.right
        steps = 0
        while True:
            t = thresholds[node]
            if t is None:
                return steps
            nxt = right[node] if is_after(gid, t) else left[node]
            if nxt == NO_CHILD:
                return steps
            node = nxt
            steps += 1

    def is_acyclic(self) -> bool:
        state = [0] * len(self.labels)  # 0 new, 1 on stack, 2 done
        for root in range(len(self.labels)):
            if state[root]:
                continue
            stack = [(root, iter(self.children(root)))]
            state[root] = 1
            while stack:
                node, it = stack[-1]
                for child in it:
                    if state[child] == 1:
                        return False
                    if state[child] == 0:
                        state[child] = 1
                        stack.append((child, iter(self.children(child))))
                        break
                else:
                    state[node] = 2
                    stack.pop()
        return True

    def to_dot(self, name: str = "diagram") -> str:
        lines = [f"digraph {name} {{", "  node [shape=box];"]
        for node, label in enumerate(self.labels):
            t = self.thresholds[node]
            thr = "n/a" if t is None else format_gate_id(t)
            lines.append(f'  n{node} [label="{label}\\n{thr}"];')
            if self.left[node] != NO_CHILD:
                lines.append(f'  n{node} -> n{self.left[node]} [label="L"];')
            if self.right[node] != NO_CHILD:
                lines.append(f'  n{node} -> n{self.right[node]} [label="R"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
