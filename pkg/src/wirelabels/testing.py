"""Random circuits for property tests."""
from __future__ import annotations

import random
from typing import List, Optional

from .circuit import CNOT, INIT, MEASURE, SINGLE_QUBIT_GATES, TOFFOLI, GateTuple

ICM_STATES = ("0", "+", "Y", "A")


def random_gates(rng: random.Random, max_wires: int = 64, max_ops: int = 256,
                 clifford_t: bool = True, toffoli: bool = True,
                 n_wires: Optional[int] = None, n_ops: Optional[int] = None) -> List[GateTuple]:
    """A circuit that respects the per-wire init/measure pattern.

    Wires start either with an explicit init or as an implicit input; some are
    measured part way and re-initialised later, so a wire can carry several
    qubits.  With ``clifford_t`` and ``toffoli`` off the result is ICM.
    """
    n = n_wires if n_wires is not None else rng.randint(1, max_wires)
    budget = n_ops if n_ops is not None else rng.randint(0, max_ops)
    wires = [f"q{i}" for i in range(n)]
    singles = sorted(SINGLE_QUBIT_GATES) if clifford_t else []
    gates: List[GateTuple] = []
    open_ = []
    closed = []
    for w in wires:
        if rng.random() < 0.7:
            gates.append((INIT, rng.choice(ICM_STATES), (w,)))
        open_.append(w)
    while len(gates) < budget:
        r = rng.random()
        if r < 0.08 and closed:
            w = closed.pop(rng.randrange(len(closed)))
            gates.append((INIT, rng.choice(ICM_STATES), (w,)))
            open_.append(w)
        elif r < 0.14 and len(open_) > 1:
            w = open_.pop(rng.randrange(len(open_)))
            gates.append((MEASURE, rng.choice(("Z", "X")), (w,)))
            closed.append(w)
        elif r < 0.24 and toffoli and len(open_) >= 3:
            gates.append((TOFFOLI, None, tuple(rng.sample(open_, 3))))
        elif r < 0.55 and singles and open_:
            gates.append((rng.choice(singles), None, (rng.choice(open_),)))
        elif len(open_) >= 2:
            gates.append((CNOT, None, tuple(rng.sample(open_, 2))))
        elif open_:
            w = open_[0]
            gates.append((rng.choice(singles), None, (w,)) if singles
                         else (MEASURE, "Z", (w,)))
            if not singles:
                open_.remove(w)
                closed.append(w)
        else:
            break
    for w in open_:
        if rng.random() < 0.8:
            gates.append((MEASURE, "Z", (w,)))
    return gates
