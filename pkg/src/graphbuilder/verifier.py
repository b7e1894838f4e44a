"""Independent check that a circuit prepares the target graph state."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gates import parse_wire, wire_p
from .graph import Graph, bits_of
from .tableau import StabilizerTableau
from .transpiler import GateCircuit, append_corrections, transpile

DENSE_LIMIT = 12


class VerificationError(ValueError):
    pass


def _qubit(c: GateCircuit, w: str) -> int:
    kind, idx = parse_wire(w)
    if kind == "p":
        if idx >= c.n_photons:
            raise VerificationError(f"unknown wire {w}")
        return idx
    if idx >= c.n_emitters:
        raise VerificationError(f"unknown wire {w}")
    return c.n_photons + idx


def simulate(c: GateCircuit, random_outcomes: bool = False, seed: Optional[int] = None):
    """Run ``c`` from ``|0...0>``.  Returns ``(tableau, outcomes)``.

    Measured emitters are reset to ``|0>``.  Random measurements give 0
    unless ``random_outcomes`` is set, in which case they are drawn from a
    generator seeded with ``seed``.
    """
    t = StabilizerTableau(c.n_photons + c.n_emitters)
    rng = np.random.default_rng(seed) if random_outcomes else None
    outcomes = []
    for g in c.gates:
        qs = [_qubit(c, w) for w in g.qubits]
        name = g.name
        if name == "H":
            t.h(qs[0])
        elif name == "PHASE":
            t.s(qs[0])
        elif name == "SQRT_X_DAG":
            t.sqrt_x_dag(qs[0])
        elif name == "X":
            t.px(qs[0])
        elif name == "Z":
            t.pz(qs[0])
        elif name == "CZ":
            t.cz(qs[0], qs[1])
        elif name == "CNOT":
            t.cnot(qs[0], qs[1])
        elif name == "MZ":
            m, _ = t.measure_z(qs[0], rng)
            outcomes.append({"wire": g.qubits[0], "outcome": m})
            if m:
                t.px(qs[0])
        else:  # pragma: no cover - GateOp validates names
            raise VerificationError(f"unknown gate {name}")
    return t, outcomes


@dataclass
class VerifyResult:
    passed: bool
    corrections: list = field(default_factory=list)
    diagnostic: str = ""
    seed: Optional[int] = None
    outcomes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "corrections": list(self.corrections),
            "seed": self.seed,
            "outcomes": list(self.outcomes),
            "diagnostic": self.diagnostic,
        }


def check_graph_state(t: StabilizerTableau, target: Graph, n_photons: int, n_emitters: int) -> VerifyResult:
    """Compare the photonic part of ``t`` with the graph state of ``target``.

    Each emitter must be disentangled in ``|0>`` and each target generator
    ``X_i Z_N(i)`` must be a stabilizer up to sign.  Negative signs are
    repaired by ``Z_i`` corrections, which are reported.
    """
    n = t.n
    if target.n != n_photons:
        return VerifyResult(False, diagnostic=f"target has {target.n} nodes, circuit {n_photons} photons")
    for j in range(n_emitters):
        px = np.zeros(n, np.uint8)
        pz = np.zeros(n, np.uint8)
        pz[n_photons + j] = 1
        sign = t.stabilizer_sign(px, pz)
        if sign is None:
            return VerifyResult(False, diagnostic=f"emitter e{j} is still entangled")
        if sign:
            return VerifyResult(False, diagnostic=f"emitter e{j} left in |1>")
    corrections = []
    for i in range(n_photons):
        px = np.zeros(n, np.uint8)
        pz = np.zeros(n, np.uint8)
        px[i] = 1
        for v in bits_of(target.rows[i]):
            pz[v] = 1
        sign = t.stabilizer_sign(px, pz)
        if sign is None:
            return VerifyResult(False, corrections, diagnostic=f"generator of photon {i} is not a stabilizer")
        if sign:
            corrections.append(f"Z {wire_p(i)}")
    return VerifyResult(True, corrections)


def verify_circuit(c: GateCircuit, target: Graph, random_outcomes: bool = False,
                   seed: Optional[int] = None) -> VerifyResult:
    t, outcomes = simulate(c, random_outcomes, seed)
    res = check_graph_state(t, target, c.n_photons, c.n_emitters)
    res.seed = seed if random_outcomes else None
    res.outcomes = outcomes
    return res


def verify_recipe(recipe, random_outcomes: bool = False, seed: Optional[int] = None,
                  confirm: bool = False) -> VerifyResult:
    """Transpile and verify ``recipe`` against its emission-ordered target.

    With ``confirm`` the corrections are appended and the corrected circuit
    is re-simulated, which must then need no correction at all.
    """
    c = transpile(recipe)
    target = recipe.relabelled_target()
    res = verify_circuit(c, target, random_outcomes, seed)
    if res.passed and confirm:
        fixed = append_corrections(c, res.corrections)
        again = verify_circuit(fixed, target, random_outcomes, seed)
        if not again.passed or again.corrections:
            res.passed = False
            res.diagnostic = "corrected circuit does not reproduce the target exactly"
    return res


def graph_state_vector(g: Graph) -> np.ndarray:
    """Dense amplitudes ``(-1)^{sum of x_u x_v over edges}``, qubit ``k`` = bit ``k``."""
    if g.n > DENSE_LIMIT:
        raise VerificationError(f"dense oracle limited to {DENSE_LIMIT} qubits")
    idx = np.arange(1 << g.n)
    phase = np.zeros(1 << g.n, dtype=np.int64)
    for u, v in g.edges():
        phase ^= ((idx >> u) & 1) & ((idx >> v) & 1)
    return (1 - 2 * phase).astype(float) / np.sqrt(1 << g.n)


def bipartite_entropy_oracle(g: Graph, n_inside: int) -> int:
    """Entanglement entropy (in bits) of nodes ``0..n_inside-1`` vs the rest."""
    if not 0 <= n_inside <= g.n:
        raise VerificationError("n_inside out of range")
    psi = graph_state_vector(g)
    mat = psi.reshape(1 << (g.n - n_inside), 1 << n_inside)
    sv = np.linalg.svd(mat, compute_uv=False)
    p = sv ** 2
    p = p[p > 1e-12]
    ent = float(-(p * np.log2(p)).sum())
    val = round(ent)
    if abs(ent - val) > 1e-9:
        raise VerificationError(f"non-integral entropy {ent}")
    return int(val)
