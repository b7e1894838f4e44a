"""Benchmark graph families, the random connected generator, and orders."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .graph import Graph, GraphError


@dataclass(frozen=True)
class Tree:
    branching: tuple


@dataclass(frozen=True)
class RHG:
    lx: int
    ly: int
    lz: int


@dataclass(frozen=True)
class RGS:
    n: int
    order: str = "interleaved"  # or "cores-first", "core-leaf"


@dataclass(frozen=True)
class GeneralizedRGS:
    size: int = 16


@dataclass(frozen=True)
class SixRing:
    n: int
    m: int = 1


@dataclass(frozen=True)
class Caterpillar:
    leaves: tuple  # leaves per spine node


@dataclass(frozen=True)
class RandomConnected:
    n: int
    p: float
    seed: Union[int, str] = 0


@dataclass(frozen=True)
class Path:
    n: int


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class Star:
    n: int


@dataclass(frozen=True)
class Cycle:
    n: int


GraphFamilySpec = Union[Tree, RHG, RGS, GeneralizedRGS, SixRing, Caterpillar, RandomConnected,
                        Path, Complete, Star, Cycle]


# --------------------------------------------------------------------------
# orders


def dfs_order(g: Graph, root: int = 0) -> list[int]:
    """Preorder depth-first traversal, children visited in ascending order."""
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    if not g.is_connected():
        raise GraphError("dfs_order needs a connected graph")
    order, seen, stack = [], set(), [root]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        stack.extend(u for u in reversed(g.neighbors(v)) if u not in seen)
    return order


# --------------------------------------------------------------------------
# constructors


def tree(branching: Sequence[int]) -> Graph:
    """Rooted tree: every node at depth ``k`` has ``branching[k]`` children.

    Nodes are numbered breadth first, so node 0 is the root.
    """
    if not branching or any(b < 1 for b in branching):
        raise GraphError("branching entries must be positive")
    edges, level, n = [], [0], 1
    for b in branching:
        nxt = []
        for v in level:
            for _ in range(b):
                edges.append((v, n))
                nxt.append(n)
                n += 1
        level = nxt
    return Graph.from_edges(n, edges)


def rhg_nodes(lx: int, ly: int, lz: int) -> list[tuple[int, int, int]]:
    """Face and edge centres of an ``lx x ly x lz`` block of cubes (doubled coordinates).

    Edge centres have exactly one odd coordinate, face centres exactly two.
    """
    pts = []
    for x in range(2 * lx + 1):
        for y in range(2 * ly + 1):
            for z in range(2 * lz + 1):
                odd = x % 2 + y % 2 + z % 2
                if odd in (1, 2):
                    pts.append((x, y, z))
    return pts


def rhg(lx: int, ly: int, lz: int) -> Graph:
    """RHG lattice: every face centre is joined to its four edge centres.

    Nodes are numbered in raster order of their coordinates (``x`` slowest,
    then ``y``, then ``z``).
    """
    if min(lx, ly, lz) < 1:
        raise GraphError("RHG dimensions must be positive")
    pts = sorted(rhg_nodes(lx, ly, lz), key=lambda p: (p[0], p[1], p[2]))
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for p in pts:
        if sum(c % 2 for c in p) != 2:
            continue
        for axis in range(3):
            if p[axis] % 2 == 0:
                continue
            for d in (-1, 1):
                q = list(p)
                q[axis] += d
                edges.append((index[p], index[tuple(q)]))
    return Graph.from_edges(len(pts), edges)


def rgs(n: int, order: str = "interleaved") -> Graph:
    """Repeater graph state: complete core of ``n/2`` nodes, one leaf per core node.

    ``interleaved`` puts each leaf directly before its core node (leaf ``k``
    is ``2k``, core ``k`` is ``2k+1``); ``core-leaf`` swaps the two;
    ``cores-first`` numbers the core ``0..n/2-1`` and leaf ``k`` as ``n/2+k``.
    """
    if n < 2 or n % 2:
        raise GraphError("RGS size must be even and >= 2")
    h = n // 2
    if order == "interleaved":
        core, leaf = (lambda k: 2 * k + 1), (lambda k: 2 * k)
    elif order == "core-leaf":
        core, leaf = (lambda k: 2 * k), (lambda k: 2 * k + 1)
    elif order == "cores-first":
        core, leaf = (lambda k: k), (lambda k: h + k)
    else:
        raise GraphError(f"unknown RGS order {order!r}")
    edges = [(core(a), core(b)) for a, b in itertools.combinations(range(h), 2)]
    edges += [(core(k), leaf(k)) for k in range(h)]
    return Graph.from_edges(n, edges)


def generalized_rgs(size: int = 16) -> Graph:
    """Generalised repeater graph: complete core whose nodes each carry a
    two-node arm (core - middle - end), plus a leaf on every middle node.

    Only the 16-node instance is provided (4 core nodes, 3 arm nodes each).
    """
    if size != 16:
        raise GraphError("only the 16-node generalised RGS is available")
    edges = []
    core = [0, 4, 8, 12]
    edges += list(itertools.combinations(core, 2))
    for c in core:
        edges += [(c, c + 1), (c + 1, c + 2), (c + 1, c + 3)]
    return Graph.from_edges(16, edges)


def six_ring(n: int, m: int) -> Graph:
    """Parity-encoded six-ring.

    Each ring vertex holds ``n`` blocks of ``m`` qubits.  A block is a star
    centred on its first qubit, and the block centres of neighbouring ring
    vertices are joined completely.  Nodes are numbered ring-major: vertex,
    then block, then position in block.
    """
    if n < 1 or m < 1:
        raise GraphError("encoding parameters must be positive")

    def q(v, b, k):
        return (v * n + b) * m + k

    edges = []
    for v in range(6):
        for b in range(n):
            edges += [(q(v, b, 0), q(v, b, k)) for k in range(1, m)]
        w = (v + 1) % 6
        edges += [(q(v, a, 0), q(w, b, 0)) for a in range(n) for b in range(n)]
    return Graph.from_edges(6 * n * m, edges)


def caterpillar(leaves: Sequence[int]) -> Graph:
    """Path with pendant leaves; spine node ``k`` is followed by its leaves."""
    if not leaves:
        raise GraphError("caterpillar needs a spine")
    edges, spine, n = [], [], 0
    for cnt in leaves:
        spine.append(n)
        n += 1
        for _ in range(cnt):
            edges.append((spine[-1], n))
            n += 1
    edges += list(zip(spine, spine[1:]))
    return Graph.from_edges(n, edges)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(n: int) -> Graph:
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_connected(n: int, p: float, seed: Optional[Union[int, str]] = 0) -> Graph:
    """Random spanning tree plus uniformly chosen extra edges.

    The edge count is ``max(floor(p n (n-1) / 2), n - 1)``.
    """
    if n < 2:
        raise GraphError("random_connected needs n >= 2")
    if not 0 <= p <= 1:
        raise GraphError("p must lie in [0, 1]")
    rng = random.Random(seed)
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges = set()
    for k in range(1, n):
        u, v = nodes[k], nodes[rng.randrange(k)]
        edges.add((min(u, v), max(u, v)))
    want = max(int(p * n * (n - 1) / 2 + 1e-9), n - 1)
    rest = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    rng.shuffle(rest)
    edges.update(rest[: want - len(edges)])
    return Graph.from_edges(n, sorted(edges))


def canonical_order(spec: GraphFamilySpec, g: Graph) -> list[int]:
    if isinstance(spec, Tree):
        return dfs_order(g, 0)
    if isinstance(spec, RandomConnected):
        return dfs_order(g, 0)
    return list(range(g.n))


def build(spec: GraphFamilySpec) -> tuple[Graph, list[int]]:
    """Graph for ``spec`` and its canonical emission order."""
    if isinstance(spec, Tree):
        g = tree(spec.branching)
    elif isinstance(spec, RHG):
        g = rhg(spec.lx, spec.ly, spec.lz)
    elif isinstance(spec, RGS):
        g = rgs(spec.n, spec.order)
    elif isinstance(spec, GeneralizedRGS):
        g = generalized_rgs(spec.size)
    elif isinstance(spec, SixRing):
        g = six_ring(spec.n, spec.m)
    elif isinstance(spec, Caterpillar):
        g = caterpillar(spec.leaves)
    elif isinstance(spec, RandomConnected):
        g = random_connected(spec.n, spec.p, spec.seed)
    elif isinstance(spec, Path):
        g = path(spec.n)
    elif isinstance(spec, Complete):
        g = complete(spec.n)
    elif isinstance(spec, Star):
        g = star(spec.n)
    elif isinstance(spec, Cycle):
        g = cycle(spec.n)
    else:
        raise GraphError(f"unknown family {spec!r}")
    return g, canonical_order(spec, g)


def parse_family(text: str) -> GraphFamilySpec:
    """Parse ``name:arg,arg`` such as ``tree:3,3,3`` or ``random:30,0.1,7``."""
    name, _, rest = text.partition(":")
    args = [a for a in rest.split(",") if a] if rest else []
    name = name.lower()
    try:
        if name == "tree":
            return Tree(tuple(int(a) for a in args))
        if name == "rhg":
            return RHG(*(int(a) for a in args))
        if name == "rgs":
            return RGS(int(args[0]), args[1] if len(args) > 1 else "interleaved")
        if name in ("grgs", "generalized-rgs"):
            return GeneralizedRGS(int(args[0]) if args else 16)
        if name in ("sixring", "6ring", "six-ring"):
            return SixRing(int(args[0]), int(args[1]) if len(args) > 1 else 1)
        if name == "caterpillar":
            return Caterpillar(tuple(int(a) for a in args))
        if name == "random":
            return RandomConnected(int(args[0]), float(args[1]), int(args[2]) if len(args) > 2 else 0)
        if name == "path":
            return Path(int(args[0]))
        if name == "complete":
            return Complete(int(args[0]))
        if name == "star":
            return Star(int(args[0]))
        if name == "cycle":
            return Cycle(int(args[0]))
    except (IndexError, ValueError, TypeError) as exc:
        raise GraphError(f"bad family spec {text!r}: {exc}") from exc
    raise GraphError(f"unknown family {name!r}")
