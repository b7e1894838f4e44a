"""Recipe to Clifford circuit translation and cost metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .gates import GATE_NAMES, GateOp, H, parse_wire, wire_e
from .ops import Decouple, PAIR_OPS, gate_expansion, initial_state, op_emitters


@dataclass
class GateCircuit:
    n_emitters: int
    n_photons: int
    gates: list = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"qubits E={self.n_emitters} P={self.n_photons}"]
        lines += [str(g) for g in self.gates]
        return "\n".join(lines) + "\n"

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)

    def emitter_cz_count(self) -> int:
        return sum(1 for g in self.gates if g.name == "CZ" and all(q[0] == "e" for q in g.qubits))


class CircuitError(ValueError):
    pass


def parse_circuit(text: str) -> GateCircuit:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CircuitError("empty circuit")
    head = lines[0].split()
    try:
        if head[0] != "qubits":
            raise ValueError("missing header")
        kv = dict(part.split("=") for part in head[1:])
        c = GateCircuit(int(kv["E"]), int(kv["P"]))
    except (ValueError, KeyError, IndexError) as exc:
        raise CircuitError(f"bad circuit header {lines[0]!r}") from exc
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] not in GATE_NAMES:
            raise CircuitError(f"unknown gate in {ln!r}")
        try:
            g = GateOp(parts[0], tuple(parts[1:]))
        except ValueError as exc:
            raise CircuitError(str(exc)) from exc
        for q in g.qubits:
            kind, idx = parse_wire(q)
            limit = c.n_emitters if kind == "e" else c.n_photons
            if idx >= limit:
                raise CircuitError(f"gate on unknown wire {q}")
        c.gates.append(g)
    return c


def load_circuit(path) -> GateCircuit:
    return parse_circuit(Path(path).read_text())


def transpile(recipe, n_photons: Optional[int] = None) -> GateCircuit:
    """Expand every op into gates.  A fresh emitter wire gets a Hadamard
    before its first use; a decoupled wire is treated as fresh again."""
    ops = list(recipe.ops) if hasattr(recipe, "ops") else list(recipe)
    N = recipe.n_photons if n_photons is None else n_photons
    s = initial_state(N)
    gates: list[GateOp] = []
    live: set[int] = set()
    n_em = 0
    for op in ops:
        for e in op_emitters(op):
            n_em = max(n_em, e + 1)
            if e not in live and not isinstance(op, Decouple):
                gates.append(H(wire_e(e)))
                live.add(e)
        gates.extend(gate_expansion(op, s))
        s.apply(op)
        if isinstance(op, Decouple):
            live.discard(op.emitter)
    return GateCircuit(n_em, N, gates)


def append_corrections(c: GateCircuit, corrections: Iterable[str]) -> GateCircuit:
    """Copy of ``c`` with the given sign corrections (``"Z p3"`` strings) appended."""
    out = GateCircuit(c.n_emitters, c.n_photons, list(c.gates))
    for corr in corrections:
        name, q = corr.split()
        out.gates.append(GateOp(name, (q,)))
    return out


@dataclass
class CostReport:
    two_qubit_count: int
    per_emitter_depth: dict
    emitters_used: int
    op_count: int

    def to_dict(self) -> dict:
        return {
            "two_qubit_count": self.two_qubit_count,
            "per_emitter_depth": {str(k): v for k, v in sorted(self.per_emitter_depth.items())},
            "emitters_used": self.emitters_used,
            "op_count": self.op_count,
        }


def cost_report(recipe) -> CostReport:
    """Emitter-emitter gate count and the per-emitter two-qubit depth.

    Depth is counted between an emitter's (re)initialisation and its next
    measurement; the largest such interval is reported per emitter.
    """
    ops = list(recipe.ops) if hasattr(recipe, "ops") else list(recipe)
    cur: dict[int, int] = {}
    best: dict[int, int] = {}
    used = 0
    count = 0
    for op in ops:
        ems = op_emitters(op)
        for e in ems:
            used = max(used, e + 1)
            cur.setdefault(e, 0)
            best.setdefault(e, 0)
        if isinstance(op, PAIR_OPS):
            count += 1
            for e in ems:
                cur[e] += 1
                best[e] = max(best[e], cur[e])
        elif isinstance(op, Decouple):
            cur[op.emitter] = 0
    return CostReport(count, best, used, len(ops))
