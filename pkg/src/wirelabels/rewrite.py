"""Template-driven gate rewriting on the lazy (diagram) engine.

Rules come from a line-oriented template file (see
``data/default_templates.txt``).  Rewriting gate ``t`` replaces it in place
by the template ops, which get ids ``t.0, t.1, ...``.  A rule that uses the
``%anc`` placeholder introduces an ancilla: the gate's current wire is split
at ``t`` and the template ops point straight at the two new leaves.  No other
operation is touched.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .circuit import (ARITY, CLIFFORD_T, CNOT, ICM_KINDS, INIT, MEASURE, TOFFOLI,
                      Circuit, Operation)
from .textio import ParseError, _tokens, parse_line

ANCILLA = "%anc"
PLACEHOLDERS: Dict[int, Tuple[str, ...]] = {
    1: ("%old",),
    2: ("%c", "%t"),
    3: ("%c1", "%c2", "%t"),
}

TemplateOp = Tuple[str, Optional[str], Tuple[str, ...]]


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    """Replacement of one gate kind by a template sequence."""

    matches: str
    template: Tuple[TemplateOp, ...]

    def __post_init__(self) -> None:
        if self.matches not in ARITY or self.matches in (INIT, MEASURE):
            raise RewriteError(f"cannot rewrite {self.matches!r}")
        if not self.template:
            raise RewriteError(f"rule {self.matches}: empty template")
        allowed = set(self.placeholders) | {ANCILLA}
        for kind, _arg, wires in self.template:
            bad = [w for w in wires if w not in allowed]
            if bad:
                raise RewriteError(f"rule {self.matches}: unknown placeholder(s) {bad}")
        if self.introduces_ancilla:
            self._check_teleport()

    def _check_teleport(self) -> None:
        if ARITY[self.matches] != 1:
            raise RewriteError(f"rule {self.matches}: ancilla rules must match single-qubit gates")
        kinds = [k for k, _a, _w in self.template]
        if kinds.count(INIT) != 1 or kinds.count(MEASURE) != 1 or CNOT not in kinds:
            raise RewriteError(
                f"rule {self.matches}: an ancilla template needs exactly one init, "
                "one measure and at least one cnot")
        if any(k not in ICM_KINDS for k in kinds):
            raise RewriteError(f"rule {self.matches}: ancilla templates must be in ICM form")
        for kind, _arg, wires in self.template:
            if kind == INIT and wires != (ANCILLA,):
                raise RewriteError(f"rule {self.matches}: the init must prepare %anc")
            if kind == MEASURE and wires != ("%old",):
                raise RewriteError(f"rule {self.matches}: the measurement must read %old")

    @property
    def placeholders(self) -> Tuple[str, ...]:
        return PLACEHOLDERS[ARITY[self.matches]]

    @property
    def introduces_ancilla(self) -> bool:
        return any(ANCILLA in wires for _k, _a, wires in self.template)

    @property
    def ancilla_state(self) -> Optional[str]:
        for kind, arg, _w in self.template:
            if kind == INIT:
                return arg
        return None

    @property
    def measurement_basis(self) -> Optional[str]:
        for kind, arg, _w in self.template:
            if kind == MEASURE:
                return arg
        return None

    @property
    def n_slots(self) -> int:
        return sum(len(w) for _k, _a, w in self.template)

    def roles(self) -> List[str]:
        """``old``, ``new`` or ``bridging`` for every template op."""
        out = []
        for _k, _a, wires in self.template:
            on_new = ANCILLA in wires
            on_old = any(w != ANCILLA for w in wires)
            out.append("bridging" if on_new and on_old else "new" if on_new else "old")
        return out


RuleSet = Mapping[str, RewriteRule]


def parse_templates(text: str) -> Dict[str, RewriteRule]:
    """Parse ``rule <gate> ... end`` blocks into rules keyed by gate kind."""
    rules: Dict[str, RewriteRule] = {}
    current: Optional[str] = None
    body: List[TemplateOp] = []
    start = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        head = toks[0][0].lower()
        if head == "rule":
            if current is not None:
                raise ParseError("nested rule", lineno, toks[0][1])
            if len(toks) != 2:
                raise ParseError("expected 'rule <gate>'", lineno, toks[0][1])
            current, body, start = toks[1][0].lower(), [], lineno
        elif head == "end":
            if current is None:
                raise ParseError("'end' outside a rule", lineno, toks[0][1])
            try:
                rules[current] = RewriteRule(current, tuple(body))
            except RewriteError as exc:
                raise ParseError(str(exc), start, 1) from None
            current = None
        else:
            if current is None:
                raise ParseError("template op outside a rule", lineno, toks[0][1])
            body.append(parse_line(line, lineno))
    if current is not None:
        raise ParseError(f"rule {current!r} is missing 'end'", start, 1)
    return rules


_DEFAULT_RULES: Optional[Dict[str, RewriteRule]] = None


def default_rules() -> Dict[str, RewriteRule]:
    global _DEFAULT_RULES
    if _DEFAULT_RULES is None:
        text = resources.files("wirelabels").joinpath("data/default_templates.txt").read_text("utf-8")
        _DEFAULT_RULES = parse_templates(text)
    return dict(_DEFAULT_RULES)


def load_rules(path=None) -> Dict[str, RewriteRule]:
    """Default rules, overridden by the rules in ``path`` if given."""
    rules = default_rules()
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            rules.update(parse_templates(fh.read()))
    return rules


class _Compiled:
    """Template with placeholders turned into slot indices, for the hot loop."""

    __slots__ = ("rule", "ops", "n_slots", "ancilla")

    def __init__(self, rule: RewriteRule) -> None:
        self.rule = rule
        self.ancilla = rule.introduces_ancilla
        names = ("%old", ANCILLA) if self.ancilla else rule.placeholders
        index = {name: i for i, name in enumerate(names)}
        self.ops = tuple((k, a, tuple(index[w] for w in wires)) for k, a, wires in rule.template)
        self.n_slots = rule.n_slots


def _instantiate(circuit: Circuit, op: Operation, comp: _Compiled) -> List[Operation]:
    if comp.ancilla:
        leaf = circuit.diagram.resolve(op.refs[0], op.id)
        slots = circuit.split_wire(leaf, op.id)
        circuit.counters["teleports"] += 1
    else:
        slots = op.refs
    gid = op.id
    circuit.counters["label_writes"] += comp.n_slots
    circuit.counters["rewrites"] += 1
    return [Operation(gid + (i,), kind, arg, [slots[s] for s in idx])
            for i, (kind, arg, idx) in enumerate(comp.ops)]


def _check_order(circuit: Circuit) -> None:
    if circuit.reordered:
        raise RewriteError("circuit was reordered since its last flush; flush before rewriting")


def rewrite_gate(circuit: Circuit, op_index: int, rule: RewriteRule) -> Circuit:
    """Replace ``circuit.ops[op_index]`` by ``rule``'s template, in place."""
    if not (0 <= op_index < len(circuit.ops)):
        raise RewriteError(f"op index {op_index} out of range")
    op = circuit.ops[op_index]
    if op.kind != rule.matches:
        raise RewriteError(f"rule for {rule.matches!r} does not match {op.kind!r} at {op_index}")
    comp = _Compiled(rule)
    if comp.ancilla:
        _check_order(circuit)
    circuit.ops[op_index:op_index + 1] = _instantiate(circuit, op, comp)
    return circuit


def _sweep(circuit: Circuit, compiled: Mapping[str, _Compiled]) -> int:
    """Rewrite, left to right, every op that has a rule.  Returns #rewrites."""
    if any(c.ancilla for c in compiled.values()):
        _check_order(circuit)
    out: List[Operation] = []
    fired = 0
    for op in circuit.ops:
        comp = compiled.get(op.kind)
        if comp is None:
            out.append(op)
        else:
            out.extend(_instantiate(circuit, op, comp))
            fired += 1
    circuit.ops = out
    return fired


def decompose_toffoli(circuit: Circuit, rules: Optional[RuleSet] = None) -> Circuit:
    """Replace every Toffoli by its Clifford+T template (no ancillae by default)."""
    rules = default_rules() if rules is None else rules
    _sweep(circuit, {TOFFOLI: _Compiled(rules[TOFFOLI])})
    return circuit


def icm_stages(rules: RuleSet) -> Tuple[Dict[str, _Compiled], Dict[str, _Compiled]]:
    """Split the single-qubit rules into (plain rewrites, teleportations)."""
    plain, teleport = {}, {}
    for kind, rule in rules.items():
        if ARITY[kind] != 1:
            continue
        (teleport if rule.introduces_ancilla else plain)[kind] = _Compiled(rule)
    return plain, teleport


def check_icm_convertible(kinds: Iterable[str], rules: RuleSet) -> None:
    """Raise unless every kind reaches ICM form through ``rules``."""
    ok = set(ICM_KINDS)
    pending = set(kinds) - ok
    visiting = set()

    def reachable(kind: str) -> bool:
        if kind in ok:
            return True
        rule = rules.get(kind)
        if rule is None or kind in visiting or ARITY[kind] != 1:
            return False
        visiting.add(kind)
        good = all(reachable(k) for k, _a, _w in rule.template)
        visiting.discard(kind)
        if good:
            ok.add(kind)
        return good

    bad = sorted(k for k in pending if k not in CLIFFORD_T or not reachable(k))
    if bad:
        raise RewriteError(f"unsupported gate kind(s) for ICM conversion: {', '.join(bad)}")


def to_icm(circuit: Circuit, rules: Optional[RuleSet] = None) -> Circuit:
    """Rewrite a Clifford+T circuit into init/CNOT/measure form, in place.

    First the plain rewrites (H -> P V P, ...) run to a fixpoint, then every
    remaining single-qubit gate is teleported onto a fresh ancilla.
    """
    rules = default_rules() if rules is None else rules
    check_icm_convertible({op.kind for op in circuit.ops}, rules)
    plain, teleport = icm_stages(rules)
    while plain and any(op.kind in plain for op in circuit.ops):
        _sweep(circuit, plain)
    if teleport:
        _sweep(circuit, teleport)
    return circuit


def count_ancillae_introduced(before: Circuit, after: Circuit) -> int:
    """Change in the number of live wires."""
    return after.n_wires - before.n_wires
