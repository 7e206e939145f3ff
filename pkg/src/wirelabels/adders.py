"""Ripple-carry adders built from MAJ/UMA blocks of Toffoli and CNOT gates.

Wires: carry-in ``c``, operands ``a0..a{n-1}`` and ``b0..b{n-1}``, carry-out
``z``; that is ``2n + 2`` wires, ``6n + 1`` gates of which ``2n`` are Toffolis.
Every wire is initialised to ``|0>`` and measured in Z.
"""
from __future__ import annotations

from typing import List

from .circuit import Circuit, GateTuple


def _maj(x: str, y: str, w: str) -> List[GateTuple]:
    return [("cnot", None, (w, y)), ("cnot", None, (w, x)), ("toffoli", None, (x, y, w))]


def _uma(x: str, y: str, w: str) -> List[GateTuple]:
    return [("toffoli", None, (x, y, w)), ("cnot", None, (w, x)), ("cnot", None, (x, y))]


def adder_wires(n: int) -> List[str]:
    wires = ["c"]
    for i in range(n):
        wires += [f"a{i}", f"b{i}"]
    return wires + ["z"]


def adder_gates(n: int) -> List[GateTuple]:
    if n < 1:
        raise ValueError(f"adder width must be at least 1, got {n}")
    a = [f"a{i}" for i in range(n)]
    b = [f"b{i}" for i in range(n)]
    wires = adder_wires(n)
    gates: List[GateTuple] = [("init", "0", (w,)) for w in wires]
    gates += _maj("c", b[0], a[0])
    for i in range(1, n):
        gates += _maj(a[i - 1], b[i], a[i])
    gates.append(("cnot", None, (a[n - 1], "z")))
    for i in range(n - 1, 0, -1):
        gates += _uma(a[i - 1], b[i], a[i])
    gates += _uma("c", b[0], a[0])
    gates += [("measure", "Z", (w,)) for w in wires]
    return gates


def generate_adder(n: int) -> Circuit:
    return Circuit.from_gates(adder_gates(n))


def gate_count(gates) -> int:
    """Number of gates, not counting initialisations and measurements."""
    return sum(1 for kind, _a, _w in gates if kind not in ("init", "measure"))
