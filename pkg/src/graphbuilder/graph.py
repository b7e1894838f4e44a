"""Simple undirected graphs with GF(2) adjacency.

Adjacency rows are bit-packed integers (bit ``j`` of row ``i`` is the edge
``i-j``), shared with :mod:`graphbuilder.gf2`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .gf2 import BitMatrix, rank_of_rows


class GraphError(ValueError):
    """Malformed graph input or out-of-range node."""


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class RankEffects:
    column_effect: int
    row_effect: int


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on nodes ``0..n-1``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise GraphError(f"row {i} references a node outside the graph")
            if (r >> i) & 1:
                raise GraphError(f"self-loop at node {i}")
            for j in bits_of(r):
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")

    # construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_adjacency(cls, m: BitMatrix) -> "Graph":
        if m.rows != m.cols:
            raise GraphError("adjacency must be square")
        return cls(m.rows, tuple(m.data))

    # queries --------------------------------------------------------------

    @property
    def adj(self) -> BitMatrix:
        return BitMatrix(self.rows, self.n)

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return bits_of(self.rows[v])

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in bits_of(r >> (i + 1) << (i + 1))]

    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def isolated_nodes(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if r == 0]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"node {v} out of range for n={self.n}")

    # transformations ------------------------------------------------------

    def local_complement(self, k: int) -> "Graph":
        """Complement the subgraph induced on the neighbourhood of ``k``."""
        self._check(k)
        nk = self.rows[k]
        rows = list(self.rows)
        for v in bits_of(nk):
            rows[v] ^= nk & ~(1 << v)
        return Graph(self.n, tuple(rows))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose node ``i`` is node ``order[i]`` of this graph."""
        check_permutation(order, self.n)
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        rows = [0] * self.n
        for i, v in enumerate(order):
            rows[i] = mask_of(pos[u] for u in bits_of(self.rows[v]))
        return Graph(self.n, tuple(rows))

    def induced_subgraph(self, nodes: Iterable[int]) -> "Graph":
        """Subgraph on ``nodes``, relabelled to ``0..k-1`` in ascending order."""
        keep = sorted(set(nodes))
        for v in keep:
            self._check(v)
        return self.relabel_partial(keep)

    def relabel_partial(self, keep: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(keep)}
        sel = mask_of(keep)
        rows = tuple(mask_of(pos[u] for u in bits_of(self.rows[v] & sel)) for v in keep)
        return Graph(len(keep), rows)

    # bipartition structure ------------------------------------------------

    def biadjacency(self, n_inside: int) -> BitMatrix:
        """Rows are the first ``n_inside`` nodes, columns the remaining ones."""
        if not 0 <= n_inside <= self.n:
            raise GraphError("n_inside out of range")
        return BitMatrix(tuple(r >> n_inside for r in self.rows[:n_inside]), self.n - n_inside)

    def cut_rank(self, n_inside: int) -> int:
        return rank_of_rows(r >> n_inside for r in self.rows[:n_inside])

    def future_row(self, i: int, n: int) -> int:
        """Row ``i`` of the biadjacency at cut ``n`` as an absolute node mask."""
        return self.rows[i] & ~((1 << n) - 1)

    def rank_effects(self, n: int) -> RankEffects:
        """Rank changes of the cut at ``n`` when photon ``n`` is moved inside."""
        if not 1 <= n <= self.n - 1:
            raise GraphError("rank_effects needs 1 <= n <= N-1")
        base = [self.future_row(i, n) for i in range(n)]
        r0 = rank_of_rows(base)
        trunc = [r & ~(1 << n) for r in base]
        r1 = rank_of_rows(trunc)
        r2 = rank_of_rows(trunc + [self.future_row(n, n + 1)])
        return RankEffects(r1 - r0, r2 - r1)

    def min_emitters(self, order: Optional[Sequence[int]] = None) -> int:
        g = self if order is None else self.relabel(order)
        return max((g.cut_rank(n) for n in range(g.n)), default=0)

    def external_neighbourhood(self, v: int, pair: tuple[int, int]) -> int:
        """Neighbours of ``v`` outside the node pair, as a mask."""
        return self.rows[v] & ~mask_of(pair)

    # io -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_edge_list(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"


def check_permutation(order: Sequence[int], n: int) -> None:
    if len(order) != n or sorted(order) != list(range(n)):
        raise GraphError("order must be a permutation of the node indices")


def parse_graph(text: str) -> Graph:
    """Parse either the JSON or the edge-list format."""
    stripped = text.strip()
    if not stripped:
        raise GraphError("empty graph input")
    if stripped[0] == "{":
        try:
            obj = json.loads(stripped)
            n = int(obj["n"])
            edges = obj["edges"]
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphError(f"bad graph JSON: {exc}") from exc
        return Graph.from_edges(n, edges)
    lines = [ln.split("#")[0].strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"expected 'u v', got {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphError(f"bad edge list: {exc}") from exc
    if n < 0:
        raise GraphError("negative node count")
    return Graph.from_edges(n, edges)


def load_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def save_graph(g: Graph, path: str | Path, fmt: Optional[str] = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "edges"
    if fmt == "json":
        path.write_text(json.dumps(g.to_json()) + "\n")
    else:
        path.write_text(g.to_edge_list())
