import pytest
from hypothesis import given, strategies as st

from graphbuilder.graph import Graph, GraphError
from graphbuilder.zoo import (
    RGS,
    RHG,
    SixRing,
    Tree,
    build,
    caterpillar,
    complete,
    cycle,
    dfs_order,
    generalized_rgs,
    parse_family,
    path,
    random_connected,
    rgs,
    rhg,
    six_ring,
    star,
    tree,
)

TABLE_TREES = {(3, 3, 3): 40, (4, 4, 4): 85, (3, 3, 3, 3): 121, (4, 4, 4, 4): 341,
               (5, 5, 5, 5): 781, (3, 3, 3, 3, 3): 364, (3, 3, 3, 3, 3, 3): 1093}
TABLE_RHG = {(1, 1, 1): (18, 24), (2, 1, 1): (31, 44), (3, 1, 1): (44, 64), (2, 2, 1): (53, 80),
             (3, 2, 1): (75, 116), (3, 3, 1): (106, 168), (2, 2, 2): (90, 144),
             (3, 3, 2): (179, 300), (3, 3, 3): (252, 432)}


def connected(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges():
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.n)}) <= 1


@pytest.mark.parametrize("b,n", TABLE_TREES.items())
def test_tree_sizes(b, n):
    g = tree(b)
    assert g.n == n and g.num_edges() == n - 1 and connected(g)


@pytest.mark.parametrize("dims,ne", TABLE_RHG.items())
def test_rhg_sizes(dims, ne):
    g = rhg(*dims)
    assert (g.n, g.num_edges()) == ne


def test_rhg_is_bipartite_edges_to_faces():
    g = rhg(1, 1, 1)
    degs = sorted(len(g.neighbors(v)) for v in range(g.n))
    # 12 edge qubits, 6 face qubits in a single cell
    assert degs.count(2) == 12 and degs.count(4) == 6


def test_rgs():
    g = rgs(12)
    assert g.n == 12 and g.num_edges() == 21
    assert [len(g.neighbors(v)) for v in range(0, 12, 2)] == [1] * 6
    for order in ("core-leaf", "cores-first"):
        h = rgs(12, order)
        assert h.num_edges() == 21 and sorted(len(h.neighbors(v)) for v in range(12)) == [1] * 6 + [6] * 6
    with pytest.raises(GraphError):
        rgs(7)
    with pytest.raises(GraphError):
        rgs(8, "sideways")


def test_other_families():
    assert six_ring(2, 3).n == 36 and cycle(6) == six_ring(1, 1)
    assert generalized_rgs().n == 16 and connected(generalized_rgs())
    c = caterpillar([2, 0, 1])
    assert c.n == 6 and c.num_edges() == 5
    assert complete(5).num_edges() == 10 and star(5).num_edges() == 4 and path(5).num_edges() == 4


def test_random_connected_examples():
    g = random_connected(30, 0.1, 3)
    assert g.num_edges() == 43 and connected(g)
    assert random_connected(5, 1e-6, 0).num_edges() == 4
    assert random_connected(7, 1.0, 2) == complete(7)


@given(st.integers(2, 40), st.floats(0.01, 1.0), st.integers(0, 10**6))
def test_random_connected_properties(n, p, seed):
    g = random_connected(n, p, seed)
    assert connected(g)
    assert g.num_edges() == max(int(p * n * (n - 1) / 2 + 1e-9), n - 1)
    assert random_connected(n, p, seed) == g


def test_random_connected_string_seeds():
    assert random_connected(12, 0.3, "a:1") == random_connected(12, 0.3, "a:1")


def test_dfs_order():
    assert dfs_order(path(5), 0) == [0, 1, 2, 3, 4]
    assert dfs_order(path(5), 4) == [4, 3, 2, 1, 0]
    assert dfs_order(star(5), 0)[0] == 0
    assert dfs_order(tree((2, 2)), 0) == [0, 1, 3, 4, 2, 5, 6]
    with pytest.raises(GraphError):
        dfs_order(Graph.from_edges(3, [(0, 1)]))


def test_build_and_parse():
    assert parse_family("tree:3,3,3") == Tree((3, 3, 3))
    assert parse_family("RHG:1,1,1") == RHG(1, 1, 1)
    assert parse_family("rgs:8,cores-first") == RGS(8, "cores-first")
    assert parse_family("sixring:2") == SixRing(2, 1)
    g, order = build(Tree((3, 3)))
    assert sorted(order) == list(range(g.n)) and order == dfs_order(g)
    for bad in ["blob:3", "tree:x", "rgs", "random:5"]:
        with pytest.raises(GraphError):
            parse_family(bad)
