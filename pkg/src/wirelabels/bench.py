"""Timing harness comparing the lazy and the eager engines.

Each phase is timed as the median of ``reps`` runs after a discarded warm-up
run; tiny circuits are repeated inside a run until it lasts at least
``min_time`` seconds, and the per-call time is reported.  Garbage collection
is off while the clock runs.
"""
from __future__ import annotations

import csv
import gc
import hashlib
import math
import multiprocessing as mp
import queue
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, TextIO, Tuple, Union

from .adders import gate_count
from .circuit import Circuit
from .flush import flush
from .naive import EagerCircuit, eager_decompose_toffoli, eager_recycle_rounds, eager_to_icm
from .recycle import recycle
from .rewrite import RuleSet, decompose_toffoli, default_rules, to_icm
from .textio import parse_circuit, serialize_circuit

CSV_HEADER = ["circuit", "wires", "gates", "naive_t", "fast_t", "impr_t",
              "icm_wires", "icm_ops", "naive_r", "fast_r", "impr_r"]

ENGINES = ("fast", "naive")
PHASES = ("transform", "recycle")


def _ratio(num: Optional[float], den: Optional[float]) -> Optional[float]:
    if num is None or den is None or den <= 0:
        return None
    return num / den


@dataclass
class BenchRow:
    circuit: str
    wires: int
    gates: int
    naive_t: Optional[float] = None
    fast_t: Optional[float] = None
    icm_wires: Optional[int] = None
    icm_ops: Optional[int] = None
    naive_r: Optional[float] = None
    fast_r: Optional[float] = None
    timeouts: Set[str] = field(default_factory=set)

    @property
    def impr_t(self) -> Optional[float]:
        return _ratio(self.naive_t, self.fast_t)

    @property
    def impr_r(self) -> Optional[float]:
        return _ratio(self.naive_r, self.fast_r)

    def cells(self) -> List[str]:
        def fmt(v):
            if v is None:
                return ""
            return f"{v:.6f}" if isinstance(v, float) else str(v)

        return [fmt(v) for v in (self.circuit, self.wires, self.gates, self.naive_t,
                                 self.fast_t, self.impr_t, self.icm_wires, self.icm_ops,
                                 self.naive_r, self.fast_r, self.impr_r)]


def emit_csv(rows: Iterable[BenchRow], out: Union[str, TextIO]) -> None:
    """Write rows under the fixed header; missing values are blank cells."""
    if isinstance(out, str):
        with open(out, "w", newline="", encoding="utf-8") as fh:
            emit_csv(rows, fh)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())


def time_call(make_input: Callable[[], object], fn: Callable[[object], object],
              reps: int = 3, min_time: float = 0.05, max_number: int = 10_000):
    """Return ``(warm-up result, median seconds per call)``."""
    x = make_input()
    t0 = time.perf_counter()
    result = fn(x)
    warm = time.perf_counter() - t0
    number = 1 if warm >= min_time else min(max_number, math.ceil(min_time / max(warm, 1e-7)))
    samples = []
    gc_was_enabled = gc.isenabled()
    for _ in range(reps):
        inputs = [make_input() for _ in range(number)]
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter()
            for x in inputs:
                fn(x)
            samples.append((time.perf_counter() - t0) / number)
        finally:
            if gc_was_enabled:
                gc.enable()
    return result, statistics.median(samples)


def fast_transform(circuit: Circuit, rules: Optional[RuleSet] = None) -> Circuit:
    decompose_toffoli(circuit, rules)
    to_icm(circuit, rules)
    return flush(circuit)


def naive_transform(ec: EagerCircuit, rules: Optional[RuleSet] = None) -> EagerCircuit:
    eager_decompose_toffoli(ec, rules)
    return eager_to_icm(ec, rules)


def fast_recycle(circuit: Circuit, rounds: int = 1) -> Circuit:
    return recycle(circuit, rounds)[0]


def naive_recycle(ec: EagerCircuit, rounds: int = 1) -> EagerCircuit:
    return eager_recycle_rounds(ec, rounds)[0]


@dataclass
class PipelineResult:
    engine: str
    transformed: Optional[Union[Circuit, EagerCircuit]] = None
    recycled: Optional[Union[Circuit, EagerCircuit]] = None
    timings: Dict[str, float] = field(default_factory=dict)


def run_pipeline(circuit: Circuit, engine: str = "fast", phases: Sequence[str] = PHASES,
                 reps: int = 3, rules: Optional[RuleSet] = None, rounds: int = 1,
                 min_time: float = 0.05, report: Optional[Callable] = None) -> PipelineResult:
    """Transform (Toffoli -> Clifford+T -> ICM) and/or recycle on one engine.

    ``circuit`` is not modified.  When ``report`` is given it is called as
    ``report(phase, result)`` after each phase finishes.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    rules = default_rules() if rules is None else rules
    res = PipelineResult(engine)
    if engine == "fast":
        current = circuit
        copy = Circuit.copy
        transform, recyc = fast_transform, fast_recycle
    else:
        current = EagerCircuit.from_circuit(circuit)
        copy = EagerCircuit.copy
        transform, recyc = naive_transform, naive_recycle
    if "transform" in phases:
        src = current
        out, secs = time_call(lambda: copy(src), lambda c: transform(c, rules), reps, min_time)
        res.transformed, res.timings["transform"] = out, secs
        current = out
        if report:
            report("transform", res)
    if "recycle" in phases:
        if engine == "fast" and not current.is_flushed():
            current = flush(current.copy())
        src = current
        out, secs = time_call(lambda: copy(src), lambda c: recyc(c, rounds), reps, min_time)
        res.recycled, res.timings["recycle"] = out, secs
        if report:
            report("recycle", res)
    return res


def digest(circuit) -> str:
    return hashlib.sha256(serialize_circuit(circuit).encode()).hexdigest()


def _worker(text: str, engine: str, reps: int, rules_path: Optional[str], rounds: int,
            out: "mp.Queue") -> None:
    from .rewrite import load_rules

    def report(phase, res):
        c = res.transformed if phase == "transform" else res.recycled
        out.put((phase, res.timings[phase], c.n_wires, len(c), digest(c)))

    try:
        run_pipeline(parse_circuit(text), engine, PHASES, reps, load_rules(rules_path), rounds,
                     report=report)
    except BaseException as exc:  # surfaced in the parent
        out.put(("error", repr(exc), 0, 0, ""))


def _run_engine_with_timeout(text: str, engine: str, reps: int, rules_path: Optional[str],
                             rounds: int, timeout: Optional[float]) -> Dict[str, Tuple]:
    """Run one engine in a child process; phases that time out are missing."""
    ctx = mp.get_context("fork")
    q = ctx.Queue()
    proc = ctx.Process(target=_worker, args=(text, engine, reps, rules_path, rounds, q), daemon=True)
    proc.start()
    got: Dict[str, Tuple] = {}
    try:
        for _ in PHASES:
            try:
                phase, secs, wires, ops, dig = q.get(timeout=timeout)
            except queue.Empty:
                break
            if phase == "error":
                raise RuntimeError(f"{engine} engine failed: {secs}")
            got[phase] = (secs, wires, ops, dig)
    finally:
        if proc.is_alive():
            proc.kill()
        proc.join()
    return got


def bench_circuit(name: str, circuit: Circuit, engines: Sequence[str] = ENGINES, reps: int = 3,
                  timeout: Optional[float] = None, rules_path: Optional[str] = None,
                  rounds: int = 1) -> BenchRow:
    """One CSV row.  With a timeout each engine runs in a child process."""
    gates = circuit.gate_list()
    row = BenchRow(name, circuit.n_wires, gate_count(gates))
    digests: Dict[Tuple[str, str], str] = {}
    if timeout is None:
        from .rewrite import load_rules
        rules = load_rules(rules_path)
        results = {}
        for engine in engines:
            res = run_pipeline(circuit, engine, PHASES, reps, rules, rounds)
            results[engine] = {
                "transform": (res.timings["transform"], res.transformed.n_wires,
                              len(res.transformed), digest(res.transformed)),
                "recycle": (res.timings["recycle"], res.recycled.n_wires,
                            len(res.recycled), digest(res.recycled)),
            }
    else:
        text = serialize_circuit(circuit)
        results = {e: _run_engine_with_timeout(text, e, reps, rules_path, rounds, timeout)
                   for e in engines}
    for engine, phases in results.items():
        for phase in PHASES:
            if phase not in phases:
                row.timeouts.add(f"{engine}_{phase}")
                continue
            secs, wires, ops, dig = phases[phase]
            setattr(row, f"{engine}_{phase[0]}", secs)
            digests[(engine, phase)] = dig
            if phase == "transform":
                row.icm_wires, row.icm_ops = wires, ops
    for phase in PHASES:
        if ("fast", phase) in digests and ("naive", phase) in digests:
            if digests[("fast", phase)] != digests[("naive", phase)]:
                raise AssertionError(f"{name}: engines disagree after {phase}")
    return row


def parse_adder_range(spec: str) -> List[int]:
    """``"4..20"``, ``"100..1000,100"`` or a single ``"8"``."""
    spec = spec.strip()
    step = 1
    if "," in spec:
        spec, step_s = spec.split(",", 1)
        step = int(step_s)
    if ".." in spec:
        lo, hi = (int(x) for x in spec.split("..", 1))
    else:
        lo = hi = int(spec)
    if lo < 1 or hi < lo or step < 1:
        raise ValueError(f"bad adder range {spec!r}")
    return list(range(lo, hi + 1, step))
