"""Line-oriented text format for circuits.

::

    # comment
    init <wire> <state>        state in {0, 1, +, Y, A}
    <gate> <wire>              gate in {x, z, h, p, pdag, v, vdag, t, tdag}
    cnot <control> <target>
    toffoli <c1> <c2> <target>
    measure <wire> <basis>     basis in {Z, X}

Keywords, states and bases are case-insensitive; wire labels are not.
"""
from __future__ import annotations

from typing import Hashable, Iterable, List, Optional, Tuple

from .circuit import (ARITY, INIT, INIT_STATES, MEASURE, MEASURE_BASES, Circuit,
                      CircuitError, GateTuple, WirePatternChecker)

KEYWORD_ALIASES = {"meas": MEASURE}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def _tokens(line: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns, comments stripped."""
    hash_at = line.find("#")
    if hash_at >= 0:
        line = line[:hash_at]
    out = []
    i, n = 0, len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_line(line: str, lineno: int = 1) -> Optional[GateTuple]:
    """Parse one line into ``(kind, arg, wires)``; ``None`` for blank lines."""
    toks = _tokens(line)
    if not toks:
        return None
    word, col = toks[0]
    kind = word.lower()
    kind = KEYWORD_ALIASES.get(kind, kind)
    if kind not in ARITY:
        raise ParseError(f"unknown gate kind {word!r}", lineno, col)
    n_wires = ARITY[kind]
    takes_arg = kind in (INIT, MEASURE)
    expected = 1 + n_wires + (1 if takes_arg else 0)
    if len(toks) != expected:
        col_err = toks[expected][1] if len(toks) > expected else len(line) + 1
        raise ParseError(
            f"{kind} expects {expected - 1} operand(s), got {len(toks) - 1}", lineno, col_err)
    wires = tuple(tok for tok, _ in toks[1:1 + n_wires])
    if len(set(wires)) != len(wires):
        raise ParseError(f"{kind} operates on a repeated wire", lineno, toks[1][1])
    arg = None
    if takes_arg:
        raw, acol = toks[-1]
        arg = raw.upper()
        allowed = INIT_STATES if kind == INIT else MEASURE_BASES
        if arg not in allowed:
            what = "initial state" if kind == INIT else "measurement basis"
            raise ParseError(f"unknown {what} {raw!r}", lineno, acol)
    return kind, arg, wires


def parse_gates(text: str, check_pattern: bool = True) -> List[GateTuple]:
    gates = []
    checker = WirePatternChecker() if check_pattern else None
    for lineno, line in enumerate(text.splitlines(), start=1):
        gate = parse_line(line, lineno)
        if gate is None:
            continue
        if checker is not None:
            msg = checker.feed(gate[0], gate[2])
            if msg is not None:
                raise ParseError(msg, lineno, _tokens(line)[0][1])
        gates.append(gate)
    return gates


def parse_circuit(text: str) -> Circuit:
    """Parse the text format into a :class:`Circuit` with ids ``0..n-1``.

    Raises :class:`ParseError` for syntax, unknown gates, arity mismatches
    and init/measure ordering violations on a wire.
    """
    return Circuit.from_gates(parse_gates(text))


def format_gate(kind: str, arg: Optional[str], wires: Iterable[Hashable]) -> str:
    parts = [kind, *(str(w) for w in wires)]
    if arg is not None:
        parts.append(arg)
    return " ".join(parts)


def serialize_gates(gates: Iterable[GateTuple]) -> str:
    return "".join(format_gate(*g) + "\n" for g in gates)


def serialize_circuit(circuit) -> str:
    """Canonical text with every wire reference resolved.

    Accepts anything with a ``gate_list()`` method (the naive engine's
    circuits too).
    """
    if isinstance(circuit, Circuit):
        n = len(circuit.diagram)
        for pos, op in enumerate(circuit.ops):
            for r in op.refs:
                if not (0 <= r < n):
                    raise CircuitError(f"op {pos}: dangling wire reference {r}")
    return serialize_gates(circuit.gate_list())


def read_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())


def write_circuit(circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_circuit(circuit))
