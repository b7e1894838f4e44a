"""Recipe simplification by merging and cancelling emitter-pair operations.

Two ops on the same emitter pair are combined when they can be brought next
to each other by commuting them through the ops in between, wire by wire,
without creating a cycle in the op DAG.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Optional

from .gates import wire_e
from .ops import (
    Decouple,
    EdgeToggle,
    EmissionMode,
    Emit,
    EToInside,
    EToInsideConnect,
    LocalClifford,
    RecipeOp,
    is_two_qubit,
    op_wires,
)

_DEPENDS_ON_NEIGHBOURHOOD = (EmissionMode.L, EmissionMode.S, EmissionMode.CS)
_CHANGES_NEIGHBOURHOOD = (EmissionMode.L, EmissionMode.CS, EmissionMode.SS)


def _pair(op) -> Optional[tuple[int, int]]:
    if isinstance(op, EdgeToggle):
        return (op.a, op.b)
    if isinstance(op, (EToInside, EToInsideConnect)):
        return (op.src, op.tgt)
    return None


def _touches(op, e: int) -> bool:
    return wire_e(e) in op_wires(op)


def _blocks_transfer_target(b, j: int) -> bool:
    """``b`` changes ``N(e_j)`` (so it cannot pass a transfer whose target is ``e_j``)."""
    if isinstance(b, Emit):
        return b.emitter == j and EmissionMode(b.mode) in _CHANGES_NEIGHBOURHOOD
    if isinstance(b, EdgeToggle):
        return j in (b.a, b.b)
    if isinstance(b, EToInside):
        return b.src == j
    if isinstance(b, EToInsideConnect):
        return j in (b.src, b.tgt)
    if isinstance(b, Decouple):
        return b.emitter == j
    return isinstance(b, LocalClifford) and b.node == wire_e(j)


def _depends_on(b, i: int) -> bool:
    """``b`` reads ``N(e_i)`` (so it cannot pass an op that rewrites ``N(e_i)``)."""
    if isinstance(b, Emit):
        return b.emitter == i and EmissionMode(b.mode) in _DEPENDS_ON_NEIGHBOURHOOD
    if isinstance(b, (EToInside, EToInsideConnect)):
        return b.tgt == i
    if isinstance(b, Decouple):
        return b.emitter == i
    return isinstance(b, LocalClifford) and b.node == wire_e(i)


def _blocked_by(a, b, e: int) -> bool:
    """Does the table for pair op ``a`` forbid exchanging it with ``b`` on ``e``?"""
    if isinstance(a, EToInside):
        if e == a.tgt:
            return _blocks_transfer_target(b, e)
        return _depends_on(b, e)
    if isinstance(a, EdgeToggle):
        return _depends_on(b, e)
    if isinstance(a, EToInsideConnect):
        t = EToInside(a.src, a.tgt)
        c = EdgeToggle(a.src, a.tgt)
        return _blocked_by(t, b, e) or _blocked_by(c, b, e)
    raise TypeError(a)


def commutes(a: RecipeOp, b: RecipeOp, node) -> bool:
    """Whether ``a`` and ``b`` may be exchanged on the wire ``node``.

    ``node`` is an emitter index or a wire name.  Ops that do not share the
    wire always commute.
    """
    w = wire_e(node) if isinstance(node, int) else node
    if w not in op_wires(a) or w not in op_wires(b):
        return True
    if w[0] == "p":
        return False
    e = int(w[1:])
    pa, pb = is_two_qubit(a), is_two_qubit(b)
    if not pa and not pb:
        return False
    if pa and _blocked_by(a, b, e):
        return False
    if pb and _blocked_by(b, a, e):
        return False
    return True


# --------------------------------------------------------------------------
# rewrite rules

CANCEL, MERGE = "cancel", "merge"


def combine(a: RecipeOp, b: RecipeOp) -> Optional[tuple[str, Optional[RecipeOp]]]:
    """Rule for the adjacent pair ``a, b`` or ``None``.

    Returns ``(kind, replacement)``; the replacement is ``None`` for a
    cancellation.
    """
    pa, pb = _pair(a), _pair(b)
    if pa is None or pb is None or set(pa) != set(pb):
        return None
    ta, tb = type(a), type(b)
    if ta is EdgeToggle and tb is EdgeToggle:
        return CANCEL, None
    if ta is tb and pa == pb:
        return CANCEL, None
    kinds = {ta, tb}
    if kinds == {EdgeToggle, EToInside}:
        t = a if ta is EToInside else b
        return MERGE, EToInsideConnect(t.src, t.tgt, t.step)
    if kinds == {EdgeToggle, EToInsideConnect}:
        t = a if ta is EToInsideConnect else b
        return MERGE, EToInside(t.src, t.tgt, t.step)
    if kinds == {EToInside, EToInsideConnect} and pa == pb:
        return MERGE, EdgeToggle(pa[0], pa[1], min(a.step, b.step))
    return None


# --------------------------------------------------------------------------
# DAG


@dataclass
class OpDag:
    nodes: list  # op indices
    edges: set = field(default_factory=set)  # (producer, consumer)
    wires: dict = field(default_factory=dict)  # wire -> ordered op indices

    def is_acyclic(self) -> bool:
        return _topo(self.nodes, self.edges) is not None


def _wire_lists(ops: dict, order: list) -> dict:
    wires: dict = {}
    for k in order:
        for w in op_wires(ops[k]):
            wires.setdefault(w, []).append(k)
    return wires


def _edges_from_wires(wires: dict) -> set:
    edges = set()
    for seq in wires.values():
        for a, b in zip(seq, seq[1:]):
            edges.add((a, b))
    return edges


def _topo(nodes, edges, key=None) -> Optional[list]:
    key = key or (lambda k: k)
    indeg = {k: 0 for k in nodes}
    succ: dict = {k: [] for k in nodes}
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    heap = [(key(k), k) for k in nodes if indeg[k] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, k = heapq.heappop(heap)
        out.append(k)
        for v in succ[k]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, (key(v), v))
    return out if len(out) == len(nodes) else None


def build_dag(recipe) -> OpDag:
    ops = list(recipe.ops) if hasattr(recipe, "ops") else list(recipe)
    idx = list(range(len(ops)))
    wires = _wire_lists(dict(enumerate(ops)), idx)
    dag = OpDag(idx, _edges_from_wires(wires), wires)
    if not dag.is_acyclic():  # pragma: no cover - wire order comes from a list
        raise ValueError("malformed recipe: cycle in op DAG")
    return dag


# --------------------------------------------------------------------------
# Algorithm


class _Work:
    def __init__(self, ops_list):
        self.ops = dict(enumerate(ops_list))
        self.key = {k: float(k) for k in self.ops}
        self.order = list(self.ops)
        self.wires = _wire_lists(self.ops, self.order)
        self.next_id = len(ops_list)
        self.log: list[str] = []

    def emitters(self) -> list[int]:
        return sorted(int(w[1:]) for w in self.wires if w[0] == "e")

    def meet(self, seq: list, a: int, b: int, e: int) -> Optional[int]:
        """Index in ``seq`` (with a, b removed) where the combined op goes."""
        pa, pb = seq.index(a), seq.index(b)
        alpha, beta = self.ops[a], self.ops[b]
        gamma = None
        for k in range(pa + 1, pb):
            if not commutes(alpha, self.ops[seq[k]], e):
                gamma = k
                break
        if gamma is None:
            return pb - 1
        for k in range(gamma, pb):
            if not commutes(beta, self.ops[seq[k]], e):
                return None
        return gamma - 1

    def try_pair(self, a: int, b: int, kinds: tuple) -> bool:
        rule = combine(self.ops[a], self.ops[b])
        if rule is None or rule[0] not in kinds:
            return False
        kind, repl = rule
        i, j = sorted(_pair(self.ops[a]))
        wi, wj = wire_e(i), wire_e(j)
        si, sj = self.wires[wi], self.wires[wj]
        mi = self.meet(si, a, b, i)
        if mi is None:
            return False
        mj = self.meet(sj, a, b, j)
        if mj is None:
            return False
        new_si = [k for k in si if k not in (a, b)]
        new_sj = [k for k in sj if k not in (a, b)]
        m = self.next_id
        new_si.insert(mi, m)
        new_sj.insert(mj, m)
        wires = dict(self.wires)
        wires[wi], wires[wj] = new_si, new_sj
        nodes = [k for k in self.order if k not in (a, b)] + [m]
        key = dict(self.key)
        key[m] = min(self.key[a], self.key[b])
        order = _topo(nodes, _edges_from_wires(wires), key=lambda k: (key[k], k))
        if order is None:
            return False
        # commit
        self.next_id += 1
        old_a, old_b = self.ops[a], self.ops[b]
        del self.ops[a], self.ops[b]
        if repl is None:
            wires[wi].remove(m)
            wires[wj].remove(m)
            order.remove(m)
        else:
            self.ops[m] = repl
            self.key[m] = key[m]
        self.wires = wires
        self.order = order
        self.log.append(f"{kind}: {_fmt(old_a)} + {_fmt(old_b)} -> {_fmt(repl) if repl else 'nothing'}")
        return True

    def pass_over(self, kinds: tuple) -> bool:
        changed = False
        for i in self.emitters():
            restart = True
            while restart:
                restart = False
                seq = list(self.wires.get(wire_e(i), []))
                for pos, a in enumerate(seq):
                    pa = _pair(self.ops[a])
                    if pa is None:
                        continue
                    j = pa[0] if pa[1] == i else pa[1]
                    if j < i:
                        continue
                    for b in seq[pos + 1:]:
                        pb = _pair(self.ops[b])
                        if pb is None or set(pb) != {i, j}:
                            continue
                        if self.try_pair(a, b, kinds):
                            changed = restart = True
                            break
                    if restart:
                        break
        return changed


def _fmt(op) -> str:
    name = type(op).__name__
    p = _pair(op)
    return f"{name}({p[0]},{p[1]})" if p else name


def simplify(recipe, log: Optional[list] = None):
    """Cancel, then merge, until no rule applies.  Returns a new recipe (or op list)."""
    ops_list = list(recipe.ops) if hasattr(recipe, "ops") else list(recipe)
    w = _Work(ops_list)
    total = False
    while True:
        changed = w.pass_over((CANCEL,))
        changed |= w.pass_over((MERGE,))
        total |= changed
        if not changed:
            break
    if log is not None:
        log.extend(w.log)
    out = [w.ops[k] for k in w.order] if total else ops_list
    if hasattr(recipe, "replace_ops"):
        return recipe.replace_ops(out)
    return out
