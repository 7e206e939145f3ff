"""Hierarchical gate identifiers.

A gate identifier is a tuple of non-negative integers, rendered dotted
(``(2, 5, 0)`` -> ``"2.5.0"``).  Ops produced by rewriting gate ``t`` get
``t + (i,)``, so the identifiers of a gate list stay ordered without
renumbering.  Plain tuple comparison is the total order: lexicographic, with a
proper prefix ordered before its extensions.

``MIN_ID`` (the empty tuple) is smaller than every real identifier.  It is the
threshold of a joined diagram node, which sends every query to the right.
"""
from __future__ import annotations

from typing import Tuple

GateId = Tuple[int, ...]

MIN_ID: GateId = ()

LESS, EQUAL, GREATER = -1, 0, 1


def gate_id(*components: int) -> GateId:
    if not components:
        raise ValueError("a gate id needs at least one component; use MIN_ID for the sentinel")
    if any(c < 0 for c in components):
        raise ValueError(f"gate id components must be non-negative, got {components}")
    return tuple(components)


def parse_gate_id(text: str) -> GateId:
    """Parse ``"2.5.0"`` into ``(2, 5, 0)``; ``"MIN"`` gives the sentinel."""
    text = text.strip()
    if text.upper() == "MIN":
        return MIN_ID
    try:
        parts = tuple(int(p) for p in text.split("."))
    except ValueError:
        raise ValueError(f"malformed gate id {text!r}") from None
    return gate_id(*parts)


def format_gate_id(gid: GateId) -> str:
    if gid == MIN_ID:
        return "MIN"
    return ".".join(str(c) for c in gid)


def compare_gate_ids(a: GateId, b: GateId) -> int:
    """Return LESS, EQUAL or GREATER.

    Strict total order; a shorter id that is a prefix of a longer one is LESS.
    """
    if a == b:
        return EQUAL
    return LESS if a < b else GREATER


def is_after(gid: GateId, threshold: GateId) -> bool:
    """True when an op with id ``gid`` lies on the right of ``threshold``.

    Only the overlapping components are compared, and a tie counts as after:
    ops inheriting a rewritten gate's id belong to the right-hand wire.
    Every id is after ``MIN_ID``.
    """
    n = len(threshold)
    if len(gid) < n:
        n = len(gid)
        return gid >= threshold[:n]
    return gid[:n] >= threshold
