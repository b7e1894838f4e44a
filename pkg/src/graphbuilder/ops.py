"""Elementary graphical operations on the joint photon/emitter graph.

Node numbering inside :class:`PhysicalState`: photon ``p`` is node ``p`` and
emitter ``j`` is node ``n_photons + j``.  Recipe ops refer to emitters and
photons by their own indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Union

from .gates import CNOT, CZ, GateOp, H, MZ, PHASE, SQRT_X_DAG, X, Z, wire_e, wire_p
from .graph import Graph, bits_of


class OpError(ValueError):
    """An operation was applied to invalid operands."""


class EmissionMode(str, Enum):
    L = "L"
    SS = "SS"
    S = "S"
    CS = "CS"


@dataclass(frozen=True)
class EdgeToggle:
    a: int
    b: int
    step: int = -1


@dataclass(frozen=True)
class EToInside:
    """Toggle the edges between emitter ``src`` and ``N(tgt) - {src}``."""

    src: int
    tgt: int
    step: int = -1


@dataclass(frozen=True)
class EToInsideConnect:
    src: int
    tgt: int
    step: int = -1


@dataclass(frozen=True)
class Emit:
    emitter: int
    photon: int
    mode: EmissionMode
    step: int = -1


@dataclass(frozen=True)
class Decouple:
    emitter: int
    step: int = -1


@dataclass(frozen=True)
class LocalClifford:
    """A single named gate on a wire such as ``"p3"`` or ``"e0"``."""

    node: str
    gate: str
    step: int = -1


RecipeOp = Union[EdgeToggle, EToInside, EToInsideConnect, Emit, Decouple, LocalClifford]
PAIR_OPS = (EdgeToggle, EToInside, EToInsideConnect)


def op_emitters(op: RecipeOp) -> tuple[int, ...]:
    if isinstance(op, EdgeToggle):
        return (op.a, op.b)
    if isinstance(op, (EToInside, EToInsideConnect)):
        return (op.src, op.tgt)
    if isinstance(op, (Emit, Decouple)):
        return (op.emitter,)
    return ()


def op_wires(op: RecipeOp) -> tuple[str, ...]:
    """Wire names an op touches (photon wires included)."""
    if isinstance(op, Emit):
        return (wire_e(op.emitter), wire_p(op.photon))
    if isinstance(op, LocalClifford):
        return (op.node,)
    return tuple(wire_e(e) for e in op_emitters(op))


def is_two_qubit(op: RecipeOp) -> bool:
    return isinstance(op, PAIR_OPS)


# --------------------------------------------------------------------------
# physical state


@dataclass
class PhysicalState:
    """Joint photon/emitter graph plus emitter bookkeeping.

    ``adj`` holds one bitmask per node.  ``rows`` maps an active emitter to
    its emitter row, stored as a mask over absolute photon indices.
    """

    n_photons: int
    adj: list[int] = field(default_factory=list)
    emitted: int = 0  # mask of emitted photons
    active: set[int] = field(default_factory=set)
    rows: dict[int, int] = field(default_factory=dict)
    depth: dict[int, int] = field(default_factory=dict)
    pool: list[int] = field(default_factory=list)
    n_emitters: int = 0

    def __post_init__(self):
        if not self.adj:
            self.adj = [0] * (self.n_photons + self.n_emitters)

    def copy(self) -> "PhysicalState":
        return PhysicalState(
            self.n_photons, list(self.adj), self.emitted, set(self.active),
            dict(self.rows), dict(self.depth), list(self.pool), self.n_emitters,
        )

    # node helpers
    def enode(self, j: int) -> int:
        return self.n_photons + j

    def is_emitter_node(self, v: int) -> bool:
        return v >= self.n_photons

    @property
    def photon_mask(self) -> int:
        return (1 << self.n_photons) - 1

    def ensure_emitter(self, j: int) -> None:
        while self.n_emitters <= j:
            self.adj.append(0)
            self.depth[self.n_emitters] = 0
            self.n_emitters += 1

    def allocate_emitter(self) -> int:
        """Lowest-index idle emitter, creating one if none is idle."""
        if self.pool:
            self.pool.sort()
            j = self.pool.pop(0)
        else:
            j = self.n_emitters
            self.ensure_emitter(j)
        self.active.add(j)
        self.depth[j] = 0
        return j

    def _check_emitter(self, j: int) -> None:
        if not isinstance(j, int) or j < 0:
            raise OpError(f"{j!r} is not an emitter index")
        self.ensure_emitter(j)
        if j in self.pool:
            self.pool.remove(j)
        self.active.add(j)

    def neighbours(self, v: int) -> int:
        return self.adj[v]

    def emitter_neighbours(self, j: int) -> int:
        return self.adj[self.enode(j)]

    def toggle(self, u: int, v: int) -> None:
        self.adj[u] ^= 1 << v
        self.adj[v] ^= 1 << u

    def local_complement(self, k: int) -> None:
        nk = self.adj[k]
        for v in bits_of(nk):
            self.adj[v] ^= nk & ~(1 << v)

    # graph views
    def photon_graph(self) -> Graph:
        m = self.photon_mask
        return Graph(self.n_photons, tuple(r & m for r in self.adj[: self.n_photons]))

    def full_graph(self) -> Graph:
        return Graph(len(self.adj), tuple(self.adj))

    def emitter_emitter_edges(self) -> list[tuple[int, int]]:
        out = []
        for j in range(self.n_emitters):
            for v in bits_of(self.adj[self.enode(j)] >> self.n_photons):
                if v > j:
                    out.append((j, v))
        return out

    def all_emitters_isolated(self) -> bool:
        return all(self.adj[self.enode(j)] == 0 for j in range(self.n_emitters))

    # in-place primitive actions -------------------------------------------

    def do_edge_toggle(self, a: int, b: int) -> None:
        if a == b:
            raise OpError("edge toggle needs two distinct emitters")
        self._check_emitter(a)
        self._check_emitter(b)
        self.toggle(self.enode(a), self.enode(b))
        self.depth[a] += 1
        self.depth[b] += 1

    def do_e_to_inside(self, i: int, j: int) -> None:
        if i == j:
            raise OpError("e-to-inside needs two distinct emitters")
        self._check_emitter(i)
        self._check_emitter(j)
        ni, nj = self.enode(i), self.enode(j)
        d = self.adj[nj] & ~(1 << ni)
        self.adj[ni] ^= d
        bit = 1 << ni
        for v in bits_of(d):
            self.adj[v] ^= bit
        self.depth[i] += 1
        self.depth[j] += 1

    def do_e_to_inside_connect(self, i: int, j: int) -> None:
        self.do_e_to_inside(i, j)
        self.toggle(self.enode(i), self.enode(j))

    def do_emit(self, e: int, p: int, mode: EmissionMode) -> None:
        if not 0 <= p < self.n_photons:
            raise OpError(f"photon {p} out of range")
        if (self.emitted >> p) & 1:
            raise OpError(f"photon {p} already emitted")
        self._check_emitter(e)
        mode = EmissionMode(mode)
        ne = self.enode(e)
        old = self.adj[ne]
        if self.adj[p]:  # pragma: no cover - unemitted photons are isolated
            raise OpError(f"photon {p} is not isolated before emission")
        if mode is EmissionMode.SS:
            self.toggle(ne, p)
        elif mode is EmissionMode.L:
            for v in bits_of(old):
                self.adj[v] ^= (1 << ne) | (1 << p)
            self.adj[p] = old | (1 << ne)
            self.adj[ne] = 1 << p
        else:
            for v in bits_of(old):
                self.adj[v] ^= 1 << p
            self.adj[p] = old
            if mode is EmissionMode.CS:
                self.toggle(ne, p)
        self.emitted |= 1 << p

    def do_decouple(self, e: int) -> None:
        self.ensure_emitter(e)
        ne = self.enode(e)
        for v in bits_of(self.adj[ne]):
            self.adj[v] &= ~(1 << ne)
        self.adj[ne] = 0
        self.active.discard(e)
        self.rows.pop(e, None)
        self.depth[e] = 0
        if e not in self.pool:
            self.pool.append(e)

    def apply(self, op: RecipeOp) -> None:
        """Apply ``op`` in place."""
        if isinstance(op, EdgeToggle):
            self.do_edge_toggle(op.a, op.b)
        elif isinstance(op, EToInside):
            self.do_e_to_inside(op.src, op.tgt)
        elif isinstance(op, EToInsideConnect):
            self.do_e_to_inside_connect(op.src, op.tgt)
        elif isinstance(op, Emit):
            self.do_emit(op.emitter, op.photon, op.mode)
        elif isinstance(op, Decouple):
            self.do_decouple(op.emitter)
        elif isinstance(op, LocalClifford):
            pass  # local gates do not change the graph picture
        else:
            raise OpError(f"unknown op {op!r}")


def initial_state(n_photons: int, n_emitters: int = 0) -> PhysicalState:
    s = PhysicalState(n_photons, n_emitters=n_emitters)
    s.pool = list(range(n_emitters))
    s.depth = {j: 0 for j in range(n_emitters)}
    return s


def apply_edge_toggle(s: PhysicalState, a: int, b: int) -> PhysicalState:
    out = s.copy()
    out.do_edge_toggle(a, b)
    return out


def apply_e_to_inside(s: PhysicalState, i: int, j: int) -> PhysicalState:
    out = s.copy()
    out.do_e_to_inside(i, j)
    return out


def apply_e_to_inside_connect(s: PhysicalState, i: int, j: int) -> PhysicalState:
    out = s.copy()
    out.do_e_to_inside_connect(i, j)
    return out


def apply_emission(s: PhysicalState, e: int, p: int, mode: EmissionMode) -> PhysicalState:
    out = s.copy()
    out.do_emit(e, p, mode)
    return out


def apply_decouple(s: PhysicalState, e: int) -> PhysicalState:
    out = s.copy()
    out.do_decouple(e)
    return out


# --------------------------------------------------------------------------
# gate expansions


def _wire(s: PhysicalState, v: int) -> str:
    return wire_e(v - s.n_photons) if s.is_emitter_node(v) else wire_p(v)


def _lc_gates(s: PhysicalState, adj: list[int], k: int) -> list[GateOp]:
    """Gates of the local complementation at ``k``; updates ``adj`` in place."""
    nk = adj[k]
    gates = [SQRT_X_DAG(_wire(s, k))] + [PHASE(_wire(s, v)) for v in bits_of(nk)]
    for v in bits_of(nk):
        adj[v] ^= nk & ~(1 << v)
    return gates


def gate_expansion(op: RecipeOp, s: PhysicalState) -> list[GateOp]:
    """Clifford gates realising ``op`` on the state ``s`` (taken before the op).

    Gates are exact up to Pauli operators, which the verifier's final sign
    pass absorbs.
    """
    for e in op_emitters(op):
        s.ensure_emitter(e)
    adj = list(s.adj)
    if isinstance(op, EdgeToggle):
        return [CZ(wire_e(op.a), wire_e(op.b))]
    if isinstance(op, (EToInside, EToInsideConnect)):
        ni, nj = s.enode(op.src), s.enode(op.tgt)
        cz = CZ(wire_e(op.src), wire_e(op.tgt))
        if isinstance(op, EToInsideConnect):
            g = _lc_gates(s, adj, nj)
            adj[ni] ^= 1 << nj
            adj[nj] ^= 1 << ni
            return g + [cz] + _lc_gates(s, adj, nj)
        others = adj[nj] & ~(1 << ni)
        if not others:
            return []  # nothing to toggle
        a = bits_of(others)[0]
        g = _lc_gates(s, adj, a)
        g += _lc_gates(s, adj, nj)
        g.append(cz)
        adj[ni] ^= 1 << nj
        adj[nj] ^= 1 << ni
        g += _lc_gates(s, adj, nj)
        g += _lc_gates(s, adj, a)
        return g
    if isinstance(op, Emit):
        e, p = wire_e(op.emitter), wire_p(op.photon)
        mode = EmissionMode(op.mode)
        if mode is EmissionMode.SS:
            return [CNOT(e, p), H(p)]
        if mode is EmissionMode.L:
            return [CNOT(e, p), H(e)]
        if mode is EmissionMode.S:
            return [H(e), CNOT(e, p), H(e), H(p)]
        ne = s.enode(op.emitter)
        g = _lc_gates(s, adj, ne)
        g += [CNOT(e, p), H(p)]
        adj[ne] ^= 1 << op.photon
        adj[op.photon] ^= 1 << ne
        g += _lc_gates(s, adj, ne)
        return g
    if isinstance(op, Decouple):
        return [MZ(wire_e(op.emitter))]
    if isinstance(op, LocalClifford):
        ctor = {"H": H, "PHASE": PHASE, "SQRT_X_DAG": SQRT_X_DAG, "X": X, "Z": Z}
        if op.gate not in ctor:
            raise OpError(f"unknown local gate {op.gate!r}")
        return [ctor[op.gate](op.node)]
    raise OpError(f"unknown op {op!r}")


# --------------------------------------------------------------------------
# serialisation

_NAMES = {
    EdgeToggle: "EdgeToggle",
    EToInside: "EToInside",
    EToInsideConnect: "EToInsideConnect",
    Emit: "Emit",
    Decouple: "Decouple",
    LocalClifford: "LocalClifford",
}


def op_to_dict(op: RecipeOp) -> dict:
    name = _NAMES[type(op)]
    if isinstance(op, EdgeToggle):
        d = {"op": name, "args": [op.a, op.b]}
    elif isinstance(op, (EToInside, EToInsideConnect)):
        d = {"op": name, "args": [op.src, op.tgt]}
    elif isinstance(op, Emit):
        d = {"op": name, "args": [op.emitter, op.photon], "mode": EmissionMode(op.mode).value}
    elif isinstance(op, Decouple):
        d = {"op": name, "args": [op.emitter]}
    else:
        d = {"op": name, "args": [op.node, op.gate]}
    d["step"] = op.step
    return d


def op_from_dict(d: dict) -> RecipeOp:
    try:
        name, args, step = d["op"], list(d["args"]), int(d.get("step", -1))
        if name == "EdgeToggle":
            return EdgeToggle(int(args[0]), int(args[1]), step)
        if name == "EToInside":
            return EToInside(int(args[0]), int(args[1]), step)
        if name == "EToInsideConnect":
            return EToInsideConnect(int(args[0]), int(args[1]), step)
        if name == "Emit":
            return Emit(int(args[0]), int(args[1]), EmissionMode(d["mode"]), step)
        if name == "Decouple":
            return Decouple(int(args[0]), step)
        if name == "LocalClifford":
            return LocalClifford(str(args[0]), str(args[1]), step)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise OpError(f"bad recipe entry {d!r}: {exc}") from exc
    raise OpError(f"unknown op name {name!r}")


def ops_to_json(ops: Iterable[RecipeOp]) -> str:
    return json.dumps([op_to_dict(op) for op in ops])


def ops_from_json(text: str) -> list[RecipeOp]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("ops", [])
    if not isinstance(data, list):
        raise OpError("recipe JSON must be an array of ops")
    return [op_from_dict(d) for d in data]


def replay(n_photons: int, ops: Iterable[RecipeOp], n_emitters: int = 0) -> PhysicalState:
    """Replay ops from the all-isolated initial state."""
    s = initial_state(n_photons, n_emitters)
    for op in ops:
        s.apply(op)
    return s


def replay_with_states(n_photons: int, ops: Iterable[RecipeOp], n_emitters: int = 0):
    """Yield ``(op, state_before_op)`` pairs; the state is live, copy it if kept."""
    s = initial_state(n_photons, n_emitters)
    for op in ops:
        yield op, s
        s.apply(op)
