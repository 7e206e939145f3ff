"""Wire label reference diagrams for fast quantum circuit manipulation.

The lazy engine (:class:`Circuit`) records wire splits and joins in a label
diagram instead of relabelling every later gate; :mod:`wirelabels.naive` is
the eager reference engine it is checked against.
"""
from .adders import adder_gates, gate_count, generate_adder
from .circuit import Circuit, CircuitError, Operation, normalize_wires
from .diagram import Diagram, DiagramError
from .flush import flush, resolution_depth_stats, resolution_depths
from .ids import MIN_ID, GateId, compare_gate_ids, format_gate_id, is_after, parse_gate_id
from .naive import EagerCircuit, eager_decompose_toffoli, eager_recycle_rounds, eager_to_icm
from .reachability import ReachMatrix, analyze, analyze_bruteforce, memory_estimate
from .recycle import (RecycleError, RecyclePlan, apply_recycling, plan_recycling, recycle,
                      validate_recycled)
from .rewrite import (RewriteError, RewriteRule, decompose_toffoli, default_rules, load_rules,
                      parse_templates, rewrite_gate, to_icm)
from .textio import ParseError, parse_circuit, read_circuit, serialize_circuit, write_circuit

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CircuitError", "Diagram", "DiagramError", "EagerCircuit", "GateId", "MIN_ID",
    "Operation", "ParseError", "ReachMatrix", "RecycleError", "RecyclePlan", "RewriteError",
    "RewriteRule", "adder_gates", "analyze", "analyze_bruteforce", "apply_recycling",
    "compare_gate_ids", "decompose_toffoli", "default_rules", "eager_decompose_toffoli",
    "eager_recycle_rounds", "eager_to_icm", "flush", "format_gate_id", "gate_count",
    "generate_adder", "is_after", "load_rules", "memory_estimate", "normalize_wires",
    "parse_circuit", "parse_gate_id", "parse_templates", "plan_recycling", "read_circuit",
    "recycle", "resolution_depth_stats", "resolution_depths", "rewrite_gate",
    "serialize_circuit", "to_icm", "validate_recycled", "write_circuit",
]
