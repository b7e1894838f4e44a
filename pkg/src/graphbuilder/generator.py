"""Inductive photon-by-photon generation of a target graph state.

At every step the emitters carry *emitter rows*: masks over future photons
whose span is the row space of the current biadjacency matrix.  The next
photon's step is classified by how the cut rank reacts to moving the photon
inside, and a fixed operation pattern is emitted for each case.

Emitter rows are stored as masks over absolute photon indices, so the
"first element" of a row at step ``n`` is bit ``n``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .gf2 import NotInSpan, express_bits, rank_of_rows
from .graph import Graph, GraphError, bits_of, check_permutation
from .ops import (
    Decouple,
    EdgeToggle,
    EmissionMode,
    Emit,
    EToInside,
    PhysicalState,
    RecipeOp,
    initial_state,
    op_from_dict,
    op_to_dict,
    replay,
)


class InvariantViolation(RuntimeError):
    """The generator reached a state its case analysis says is impossible."""


CASES = ("A", "B1", "B2i", "B2ii", "B2iii", "C", "D1", "D2i", "D2iia", "D2iib")


# --------------------------------------------------------------------------
# configuration


class Strategy:
    """Decision hooks.  Subclass and override to change tie-breaking."""

    def choose_emitter(self, case_id: str, candidates: Sequence[int], state: PhysicalState) -> int:
        """Emitter for the next emission: youngest (smallest depth), then lowest index."""
        return min(candidates, key=lambda e: (state.depth.get(e, 0), e))

    def choose_decoupled(self, case_id: str, candidates: Sequence[int], state: PhysicalState) -> int:
        """Emitter that is emitted from and then retired: oldest first."""
        return min(candidates, key=lambda e: (-state.depth.get(e, 0), e))

    def basis_preference(self, emitters: Sequence[int], state: PhysicalState) -> list[int]:
        """Pivot order used when emitter rows are expanded."""
        return sorted(emitters)

    def retarget(self, target: Graph, state: PhysicalState, step: int) -> Graph:
        """Hook for swapping in a locally equivalent target; identity here."""
        return target

    def plan(self, step: int, cls: "StepClassification", state: PhysicalState) -> "StepClassification":
        """Hook for lookahead strategies; may only change ``chosen_emitter``."""
        return cls


@dataclass
class GeneratorOptions:
    strategy: Strategy = field(default_factory=Strategy)
    extra_emitters: int = 0
    extra_every: int = 1  # force the new-emitter subroutine on every j-th photon
    check_conditions: bool = False
    simplify: bool = False
    allow_isolated: bool = False

    def __post_init__(self):
        if self.extra_emitters < 0:
            raise ValueError("extra_emitters must be >= 0")
        if self.extra_every < 1:
            raise ValueError("extra_every must be >= 1")


@dataclass(frozen=True)
class StepClassification:
    step: int
    case_id: str
    J: frozenset
    K: frozenset
    M: frozenset
    chosen_emitter: int
    candidates: tuple = ()
    column_effect: int = 0
    row_effect: int = 0
    forced: bool = False


@dataclass
class Recipe:
    ops: list
    target: Graph
    order: list
    emitters_used: int
    steps: list = field(default_factory=list)

    @property
    def n_photons(self) -> int:
        return self.target.n

    def relabelled_target(self) -> Graph:
        return self.target.relabel(self.order)

    def to_json(self) -> str:
        return json.dumps([op_to_dict(op) for op in self.ops])

    def to_bundle(self) -> dict:
        return {
            "n": self.target.n,
            "edges": [list(e) for e in self.target.edges()],
            "order": list(self.order),
            "emitters_used": self.emitters_used,
            "ops": [op_to_dict(op) for op in self.ops],
        }

    @classmethod
    def from_ops(cls, ops: Sequence[RecipeOp], target: Graph, order: Optional[Sequence[int]] = None) -> "Recipe":
        order = list(range(target.n)) if order is None else list(order)
        used = 0
        for op in ops:
            for e in _emitters_of(op):
                used = max(used, e + 1)
        return cls(list(ops), target, order, used)

    @classmethod
    def from_bundle(cls, d: dict) -> "Recipe":
        g = Graph.from_edges(int(d["n"]), d["edges"])
        return cls.from_ops([op_from_dict(o) for o in d["ops"]], g, d.get("order"))

    def replace_ops(self, ops: Sequence[RecipeOp]) -> "Recipe":
        return Recipe(list(ops), self.target, list(self.order), self.emitters_used, list(self.steps))


def _emitters_of(op) -> tuple:
    from .ops import op_emitters

    return op_emitters(op)


# --------------------------------------------------------------------------
# step analysis


@dataclass
class _Analysis:
    n: int
    K: frozenset
    trunc: dict  # emitter -> row with bit n cleared
    r_new: int
    M: Optional[frozenset]  # None when no dependency is created
    J: Optional[frozenset]  # None when r_new is outside the span
    pref: list

    @property
    def column_effect(self) -> int:
        return -1 if self.M is not None else 0

    @property
    def row_effect(self) -> int:
        return 1 if self.J is None else 0


def _express(v: int, emitters: Sequence[int], rows: dict) -> frozenset:
    idx = express_bits(v, [rows[e] for e in emitters])
    return frozenset(emitters[i] for i in idx)


def _analyse(s: PhysicalState, g: Graph, n: int, strategy: Strategy) -> _Analysis:
    pref = strategy.basis_preference(sorted(s.rows), s)
    bit = 1 << n
    K = frozenset(e for e in pref if s.rows[e] & bit)
    trunc = {e: s.rows[e] & ~bit for e in pref}
    r_new = g.future_row(n, n + 1)
    try:
        M = _express(bit, pref, s.rows)
    except NotInSpan:
        M = None
    try:
        J = _express(r_new, pref, trunc)
    except NotInSpan:
        J = None
    return _Analysis(n, K, trunc, r_new, M, J, pref)


def compute_sets(s: PhysicalState, target: Graph, strategy: Optional[Strategy] = None):
    """``(J, K, M)`` for the next photon.  ``J`` is ``None`` when the new
    photon's future row is independent; ``M`` is empty without a dependency."""
    n = bin(s.emitted).count("1")
    a = _analyse(s, target, n, strategy or Strategy())
    return a.J, a.K, (a.M or frozenset())


def _classify(a: _Analysis, s: PhysicalState, strategy: Strategy, force_a: bool) -> StepClassification:
    n, K, J, M = a.n, a.K, a.J, a.M
    col, row = a.column_effect, a.row_effect
    empty = frozenset()

    def pick(case, cands, decoupled=False):
        cands = tuple(sorted(cands))
        if not cands:
            raise InvariantViolation(f"step {n}: empty candidate set for case {case}")
        chooser = strategy.choose_decoupled if decoupled else strategy.choose_emitter
        e = chooser(case, cands, s)
        return StepClassification(n, case, J or empty, K, M or empty, e, cands, col, row, force_a)

    if force_a or (col == 0 and row == 1):
        return StepClassification(n, "A", J or empty, K, M or empty, -1, (), col, row, force_a)
    if col == 0:
        if a.r_new == 0:
            return pick("B1", K)
        if not K:
            return pick("B2i", J)
        if not (K & J):
            return pick("B2ii", K)
        return pick("B2iii", K & J)
    if row == 1:
        return pick("C", K & M)
    if len(M) == 1:
        return pick("D1", M, decoupled=True)
    if a.r_new == 0:
        return pick("D2i", M, decoupled=True)
    if (M & K) - J:
        return pick("D2iia", (M & K) - J, decoupled=True)
    return pick("D2iib", M & K, decoupled=True)


def classify_step(s: PhysicalState, target: Graph, strategy: Optional[Strategy] = None) -> StepClassification:
    strategy = strategy or Strategy()
    n = bin(s.emitted).count("1")
    if not 1 <= n <= target.n - 1:
        raise GraphError("classify_step needs 1 <= n <= N-1")
    return _classify(_analyse(s, target, n, strategy), s, strategy, False)


# --------------------------------------------------------------------------
# the per-case operation patterns


class _Builder:
    def __init__(self, s: PhysicalState, ops: list, step: int):
        self.s, self.ops, self.step = s, ops, step

    def t(self, i: int, j: int) -> None:
        # skip transfers that cannot change the graph (target has no other neighbour)
        if not (self.s.adj[self.s.enode(j)] & ~(1 << self.s.enode(i))):
            return
        op = EToInside(i, j, self.step)
        self.s.apply(op)
        self.ops.append(op)

    def cz(self, i: int, j: int) -> None:
        op = EdgeToggle(i, j, self.step)
        self.s.apply(op)
        self.ops.append(op)

    def emit(self, e: int, mode: EmissionMode) -> None:
        op = Emit(e, self.step, mode, self.step)
        self.s.apply(op)
        self.ops.append(op)

    def decouple(self, e: int) -> None:
        op = Decouple(e, self.step)
        self.s.apply(op)
        self.ops.append(op)


def _run_case(c: StepClassification, a: _Analysis, s: PhysicalState, b: _Builder) -> None:
    i = c.chosen_emitter
    K, J, M = sorted(c.K), sorted(c.J), sorted(c.M)
    others_k = [k for k in K if k != i]
    case = c.case_id
    if case == "A":
        for k in K:
            b.t(i, k)
        b.emit(i, EmissionMode.L)
        return
    if case == "B1":
        for k in others_k:
            b.t(i, k)
        b.emit(i, EmissionMode.S)
        for k in reversed(others_k):
            b.t(i, k)
        return
    if case == "B2i":
        for j in J:
            if j != i:
                b.t(j, i)
        b.emit(i, EmissionMode.SS)
        return
    if case in ("B2ii", "B2iii"):
        js = [j for j in J if j != i]
        for k in others_k:
            b.t(i, k)
        for j in js:
            b.cz(i, j)
        if case == "B2iii" and len(c.K & c.J) % 2 == 1:
            b.emit(i, EmissionMode.CS)
        else:
            b.emit(i, EmissionMode.S)
        for j in reversed(js):
            b.cz(i, j)
        for k in reversed(others_k):
            b.t(i, k)
        return
    # C and D cases
    for m in M:
        if m != i and case != "D1":
            b.t(m, i)
    for k in others_k:
        b.t(i, k)
    if case in ("D1", "D2iia"):
        targets = J
    elif case == "D2iib":
        targets = sorted((c.J ^ c.M) - {i})
    else:
        targets = []
    for j in targets:
        b.cz(i, j)
    b.emit(i, EmissionMode.L)
    if case != "C":
        b.decouple(i)


def _update_rows(c: StepClassification, a: _Analysis, s: PhysicalState) -> None:
    for e in list(s.rows):
        s.rows[e] = a.trunc[e]
    i = c.chosen_emitter
    if c.case_id in ("A", "B2i", "C"):
        s.rows[i] = a.r_new
    elif c.case_id.startswith("D"):
        s.rows.pop(i, None)


def update_emitter_rows(s: PhysicalState, target: Graph, c: StepClassification,
                        strategy: Optional[Strategy] = None) -> PhysicalState:
    """Emitter rows after the step described by ``c`` (graph left untouched)."""
    out = s.copy()
    a = _analyse(s, target, c.step, strategy or Strategy())
    _update_rows(c, a, out)
    return out


# --------------------------------------------------------------------------
# condition checking


@dataclass
class ConditionReport:
    step: int
    condition_I: bool = True
    condition_II: bool = True
    condition_III: bool = True
    structure: bool = True
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition_I and self.condition_II and self.condition_III and self.structure

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def check_conditions(s: PhysicalState, target: Graph, minimal: bool = True) -> ConditionReport:
    """Check the eligibility conditions for the state after ``n`` emissions.

    ``target`` must already be relabelled into emission order.
    """
    n = bin(s.emitted).count("1")
    rep = ConditionReport(step=n)
    if s.emitted != (1 << n) - 1:
        rep.structure = False
        rep.diagnostics.append("photons were not emitted in order")
        return rep
    b_rows = [target.future_row(i, n) for i in range(n)]
    rank_b = rank_of_rows(b_rows)
    em = sorted(s.rows)
    e_rows = [s.rows[e] for e in em]
    r_e = rank_of_rows(e_rows)
    # condition I: emitter rows are rows of B and span its row space
    if r_e != rank_b or rank_of_rows(b_rows + e_rows) != rank_b:
        rep.condition_I = False
        rep.diagnostics.append(f"emitter rows span rank {r_e}, B({n}) has rank {rank_b}")
    if minimal and len(em) != rank_b:
        rep.condition_I = False
        rep.diagnostics.append(f"{len(em)} active emitters but rank B({n}) = {rank_b}")
    if set(em) != set(s.active):
        rep.condition_I = False
        rep.diagnostics.append("active emitters and emitter rows disagree")
    # condition II: every emitted photon's future row is the sum of its emitters' rows
    N = s.n_photons
    for x in range(n):
        acc = 0
        for v in bits_of(s.adj[x] >> N):
            if v not in s.rows:
                rep.condition_II = False
                rep.diagnostics.append(f"photon {x} touches idle emitter {v}")
                break
            acc ^= s.rows[v]
        if acc != b_rows[x]:
            rep.condition_II = False
            rep.diagnostics.append(f"photon {x}: emitter expansion does not match its row")
            break
    # condition III': emitted photons already carry the target's edges among them
    inside = (1 << n) - 1
    for x in range(n):
        if (s.adj[x] & inside) != (target.rows[x] & inside):
            rep.condition_III = False
            rep.diagnostics.append(f"photon {x}: inside neighbourhood differs from target")
            break
    for x in range(n, N):
        if s.adj[x]:
            rep.structure = False
            rep.diagnostics.append(f"unemitted photon {x} has edges")
            break
    if s.emitter_emitter_edges():
        rep.structure = False
        rep.diagnostics.append(f"emitter-emitter edges {s.emitter_emitter_edges()}")
    return rep


# --------------------------------------------------------------------------
# driver


def _isolated_step(s: PhysicalState, b: _Builder) -> None:
    e = s.allocate_emitter()
    b.emit(e, EmissionMode.SS)
    b.decouple(e)


def generate(target: Graph, order: Optional[Sequence[int]] = None,
             opts: Optional[GeneratorOptions] = None) -> Recipe:
    """Build a generation recipe for ``target`` emitted in ``order``."""
    opts = opts or GeneratorOptions()
    strategy = opts.strategy
    order = list(range(target.n)) if order is None else list(order)
    check_permutation(order, target.n)
    if target.isolated_nodes() and not opts.allow_isolated:
        raise GraphError(f"target has isolated nodes {target.isolated_nodes()}")
    g = target.relabel(order)
    N = g.n
    ops: list[RecipeOp] = []
    steps: list[StepClassification] = []
    s = initial_state(N)
    if N == 0:
        return Recipe(ops, target, order, 0, steps)
    minimal = opts.extra_emitters == 0
    budget = g.min_emitters() + opts.extra_emitters

    # base step: leaf emission of photon 0
    b = _Builder(s, ops, 0)
    e0 = s.allocate_emitter()
    b.emit(e0, EmissionMode.SS)
    s.rows[e0] = g.future_row(0, 1)
    _cleanup(s, b)
    _check(s, g, opts, minimal)

    for n in range(1, N):
        g2 = strategy.retarget(g, s, n)
        if g2 != g:
            raise NotImplementedError("retargeting to another graph is not supported")
        b = _Builder(s, ops, n)
        if g.rows[n] == 0:
            _isolated_step(s, b)
            _check(s, g, opts, minimal)
            continue
        a = _analyse(s, g, n, strategy)
        if opts.check_conditions:
            eff = g.rank_effects(n)
            if (eff.column_effect, eff.row_effect) != (a.column_effect, a.row_effect):
                raise InvariantViolation(f"step {n}: row-span effects disagree with rank effects")
        force = (
            not minimal
            and n % opts.extra_every == 0
            and a.r_new != 0
            and _redundancy(s) + 1 - a.column_effect - a.row_effect <= opts.extra_emitters
            and not (a.column_effect == 0 and a.row_effect == 1)
        )
        c = _classify(a, s, strategy, force)
        if c.case_id == "A":
            c = StepClassification(n, "A", c.J, c.K, c.M, s.allocate_emitter(), (), c.column_effect,
                                   c.row_effect, force)
        else:
            c2 = strategy.plan(n, c, s)
            if c2.chosen_emitter not in c.candidates or c2.case_id != c.case_id:
                raise InvariantViolation("plan hook may only pick another candidate emitter")
            c = c2
        _run_case(c, a, s, b)
        _update_rows(c, a, s)
        _cleanup(s, b)
        steps.append(c)
        if len(s.active) > budget:
            raise InvariantViolation("active emitters exceed the allowed budget")
        _check(s, g, opts, minimal)

    b = _Builder(s, ops, N)
    for e in sorted(s.active):
        b.decouple(e)
    recipe = Recipe(ops, target, order, s.n_emitters, steps)
    if opts.simplify:
        from .simplifier import simplify

        recipe = simplify(recipe)
    return recipe


def _redundancy(s: PhysicalState) -> int:
    """Active emitters beyond the rank of their rows."""
    return len(s.rows) - rank_of_rows(s.rows.values())


def _cleanup(s: PhysicalState, b: _Builder) -> None:
    """Retire emitters whose row has become zero."""
    for e in sorted(s.rows):
        if s.rows[e] == 0:
            b.decouple(e)


def _check(s: PhysicalState, g: Graph, opts: GeneratorOptions, minimal: bool) -> None:
    if not opts.check_conditions:
        return
    rep = check_conditions(s, g, minimal=minimal)
    if not rep.ok:
        raise InvariantViolation(f"step {rep.step}: " + "; ".join(rep.diagnostics))


def replay_recipe(r: Recipe) -> PhysicalState:
    return replay(r.n_photons, r.ops)


def recipe_reproduces_target(r: Recipe) -> bool:
    """Replay ends with the relabelled target on photons and idle emitters."""
    s = replay_recipe(r)
    return s.all_emitters_isolated() and s.photon_graph() == r.relabelled_target()
