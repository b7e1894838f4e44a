import json
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from conftest import connected_graphs, fig_target
from graphbuilder.generator import (
    CASES,
    GeneratorOptions,
    InvariantViolation,
    Recipe,
    StepClassification,
    Strategy,
    check_conditions,
    classify_step,
    compute_sets,
    generate,
    recipe_reproduces_target,
    update_emitter_rows,
)
from graphbuilder.graph import Graph, GraphError
from graphbuilder.ops import EmissionMode, Emit, PAIR_OPS, initial_state
from graphbuilder.transpiler import cost_report
from graphbuilder.zoo import complete, dfs_order, path, random_connected, star, tree, cycle


def fig_state():
    """Two photons emitted by two emitters, rows [1,0,0] and [1,1,1] (bits 2..4)."""
    g = fig_target()
    s = initial_state(5)
    for p in (0, 1):
        e = s.allocate_emitter()
        s.apply(Emit(e, p, EmissionMode.SS))
        s.rows[e] = g.future_row(p, 2)
    return g, s


def two_qubit(r):
    return sum(isinstance(op, PAIR_OPS) for op in r.ops)


def test_sets_on_two_emitter_state():
    g, s = fig_state()
    J, K, M = compute_sets(s, g)
    assert K == {0, 1}
    assert J == frozenset()  # photon 2 has no future neighbours
    assert M == {0}


def test_sets_star_leaf_steps():
    g = star(6)
    r = generate(g, None, GeneratorOptions(check_conditions=True))
    for c in r.steps[1:-1]:
        assert c.K == {0} and c.J == frozenset() and c.M == frozenset()


def test_conditions_pass_on_valid_state():
    g, s = fig_state()
    assert check_conditions(s, g).ok


def test_zeroed_row_breaks_condition_one():
    g, s = fig_state()
    s.rows[0] = 0
    rep = check_conditions(s, g)
    assert not rep.condition_I and not rep.ok


def test_flipped_photon_emitter_edge_breaks_condition_two():
    g, s = fig_state()
    s.toggle(0, s.enode(1))
    rep = check_conditions(s, g)
    assert not rep.condition_II


def test_inside_edge_breaks_condition_three():
    g, s = fig_state()
    s.toggle(0, 1)
    assert not check_conditions(s, g).condition_III


def test_classification_examples():
    assert generate(path(3)).steps[0].case_id == "C"
    for c in generate(star(6)).steps[1:-1]:
        assert c.case_id == "B1"
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert generate(c4).steps[0].case_id == "A"


def test_classify_step_matches_driver():
    g = cycle(5)
    s = initial_state(5)
    e = s.allocate_emitter()
    s.apply(Emit(e, 0, EmissionMode.SS))
    s.rows[e] = g.future_row(0, 1)
    assert classify_step(s, g).case_id == generate(g).steps[0].case_id
    with pytest.raises(GraphError):
        classify_step(initial_state(3), path(3))


def test_row_update_rules():
    g, s = fig_state()
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    s4 = initial_state(4)
    e = s4.allocate_emitter()
    s4.apply(Emit(e, 0, EmissionMode.SS))
    s4.rows[e] = c4.future_row(0, 1)
    c = classify_step(s4, c4)
    assert c.case_id == "A"
    c = StepClassification(1, "A", c.J, c.K, c.M, 1)
    out = update_emitter_rows(s4, c4, c)
    assert out.rows[1] == c4.future_row(1, 2)
    assert out.rows[0] == c4.future_row(0, 2)
    p3 = path(3)
    s3 = initial_state(3)
    e = s3.allocate_emitter()
    s3.apply(Emit(e, 0, EmissionMode.SS))
    s3.rows[e] = p3.future_row(0, 1)
    c = classify_step(s3, p3)
    assert c.case_id == "C"
    assert update_emitter_rows(s3, p3, c).rows[0] == p3.future_row(1, 2)


def test_examples_from_families():
    r = generate(path(5))
    assert r.emitters_used == 1 and two_qubit(r) == 0
    t = tree((3, 3, 3))
    r = generate(t, dfs_order(t))
    assert r.emitters_used == 3 and two_qubit(r) == 8
    r = generate(complete(6), [3, 1, 5, 0, 2, 4])
    assert r.emitters_used == 1 and two_qubit(r) == 0


@given(connected_graphs(max_n=14), st.randoms(use_true_random=False))
def test_generate_is_correct_and_minimal(g, r):
    order = list(range(g.n))
    r.shuffle(order)
    rec = generate(g, order, GeneratorOptions(check_conditions=True))
    assert recipe_reproduces_target(rec)
    assert rec.emitters_used == g.min_emitters(order)
    assert rec.n_photons == g.n


@given(connected_graphs(min_n=3, max_n=12), st.integers(1, 3), st.integers(1, 3))
def test_extra_emitters_stay_within_budget(g, k, every):
    rec = generate(g, None, GeneratorOptions(extra_emitters=k, extra_every=every, check_conditions=True))
    assert recipe_reproduces_target(rec)
    assert rec.emitters_used <= g.min_emitters() + k


def test_extra_emitters_are_used():
    rng = random.Random(5)
    wider = 0
    for _ in range(40):
        g = random_connected(16, 0.3, rng.randrange(10**6))
        rec = generate(g, None, GeneratorOptions(extra_emitters=2))
        assert recipe_reproduces_target(rec)
        wider += rec.emitters_used > g.min_emitters()
    assert wider > 0


def test_all_cases_reached():
    seen = Counter()
    rng = random.Random(0)
    for _ in range(200):
        g = random_connected(rng.choice([5, 8, 12]), rng.choice([0.2, 0.4, 0.7]), rng.randrange(10**6))
        for c in generate(g).steps:
            seen[c.case_id] += 1
    assert set(seen) == set(CASES)


class _Youngest(Strategy):
    def choose_emitter(self, case_id, candidates, state):
        return max(candidates)

    def choose_decoupled(self, case_id, candidates, state):
        return max(candidates)

    def basis_preference(self, emitters, state):
        return sorted(emitters, reverse=True)


@given(connected_graphs(max_n=12))
def test_custom_strategy_still_correct(g):
    rec = generate(g, None, GeneratorOptions(strategy=_Youngest(), check_conditions=True))
    assert recipe_reproduces_target(rec)
    assert rec.emitters_used == g.min_emitters()


def test_plan_hook_cannot_change_case():
    class Bad(Strategy):
        def plan(self, step, cls, state):
            return StepClassification(cls.step, cls.case_id, cls.J, cls.K, cls.M, 99)

    with pytest.raises(InvariantViolation):
        generate(cycle(6), None, GeneratorOptions(strategy=Bad()))


def test_retarget_must_be_identity():
    class Swap(Strategy):
        def retarget(self, target, state, step):
            return target.local_complement(0)

    with pytest.raises(NotImplementedError):
        generate(cycle(5), None, GeneratorOptions(strategy=Swap()))


def test_isolated_nodes():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        generate(g)
    rec = generate(g, [3, 0, 1, 2], GeneratorOptions(allow_isolated=True, check_conditions=True))
    assert recipe_reproduces_target(rec)
    rec = generate(g, None, GeneratorOptions(allow_isolated=True))
    assert recipe_reproduces_target(rec)


def test_bad_order_rejected():
    with pytest.raises(GraphError):
        generate(path(3), [0, 0, 1])


def test_options_validation():
    with pytest.raises(ValueError):
        GeneratorOptions(extra_emitters=-1)
    with pytest.raises(ValueError):
        GeneratorOptions(extra_every=0)


def test_recipe_bundle_roundtrip():
    g = random_connected(10, 0.3, 4)
    order = dfs_order(g)
    rec = generate(g, order)
    back = Recipe.from_bundle(json.loads(json.dumps(rec.to_bundle())))
    assert back.ops == rec.ops and back.order == order and back.target == g
    assert recipe_reproduces_target(back)
    assert isinstance(json.loads(rec.to_json()), list)


def test_simplify_option():
    t = random_connected(20, 0.2, 9)
    a = generate(t)
    b = generate(t, None, GeneratorOptions(simplify=True))
    assert recipe_reproduces_target(b)
    assert cost_report(b).two_qubit_count <= cost_report(a).two_qubit_count
