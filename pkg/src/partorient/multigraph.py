"""Undirected multigraphs with deletion and contraction.

Vertices are the integers ``0..n-1`` and edges are identified by their
position in the edge list.  The stored ``(tail, head)`` pair of an edge is its
default reference direction; loops and parallel edges are allowed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or operations outside their domain."""


class EdgeClass(Enum):
    BRIDGE = "bridge"
    LOOP = "loop"
    ORDINARY = "ordinary"


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} = ({u}, {v}) has an endpoint outside 0..{self.n - 1}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending; a loop is listed once."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {e}")

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def check_edge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise GraphError(f"invalid edge id {e} (graph has {self.m} edges)")

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"invalid vertex {v} (graph has {self.n} vertices)")

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={list(self.edges)})"


class Minor(NamedTuple):
    """A minor together with the maps that transport ids into it.

    ``edge_map[old]`` is the new edge id or ``None`` for the removed edge;
    ``vertex_map[old]`` is the new vertex id.
    """

    graph: Multigraph
    edge_map: tuple[Optional[int], ...]
    vertex_map: tuple[int, ...]


def build(n: int, edges: Iterable[Sequence[int]]) -> Multigraph:
    return Multigraph(n, tuple((int(u), int(v)) for u, v in edges))


def delete_edge(G: Multigraph, e: int) -> Minor:
    G.check_edge(e)
    edges = G.edges[:e] + G.edges[e + 1:]
    edge_map = tuple(None if i == e else (i if i < e else i - 1) for i in range(G.m))
    return Minor(Multigraph(G.n, edges), edge_map, tuple(range(G.n)))


def contract_edge(G: Multigraph, e: int) -> Minor:
    """Merge the endpoints of non-loop edge ``e``; the smaller id survives."""
    G.check_edge(e)
    u, v = G.edges[e]
    if u == v:
        raise GraphError(f"edge {e} is a loop and cannot be contracted")
    keep, gone = min(u, v), max(u, v)
    vertex_map = tuple(keep if x == gone else (x - 1 if x > gone else x) for x in range(G.n))
    edges = tuple(
        (vertex_map[a], vertex_map[b]) for i, (a, b) in enumerate(G.edges) if i != e
    )
    edge_map = tuple(None if i == e else (i if i < e else i - 1) for i in range(G.m))
    return Minor(Multigraph(G.n - 1, edges), edge_map, vertex_map)


def reachable(G: Multigraph, start: int = 0, skip_edge: Optional[int] = None) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for f in G.incidence[x]:
            if f == skip_edge:
                continue
            y = G.other_end(f, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_connected(G: Multigraph) -> bool:
    return len(reachable(G, 0)) == G.n


def require_connected(G: Multigraph) -> None:
    if not is_connected(G):
        raise GraphError("graph is disconnected")


def classify_edge(G: Multigraph, e: int) -> EdgeClass:
    G.check_edge(e)
    u, v = G.edges[e]
    if u == v:
        return EdgeClass.LOOP
    if v in reachable(G, u, skip_edge=e):
        return EdgeClass.ORDINARY
    return EdgeClass.BRIDGE


def bridges(G: Multigraph) -> frozenset[int]:
    """All bridge edge ids, by low-link DFS (parallel edges handled by edge id)."""
    order = [-1] * G.n
    low = [0] * G.n
    found: set[int] = set()
    counter = 0
    for root in range(G.n):
        if order[root] >= 0:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, edge used to enter, iterator over incident edges)
        stack = [(root, -1, iter(G.incidence[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for f in it:
                if f == via or G.is_loop(f):
                    continue
                y = G.other_end(f, x)
                if order[y] < 0:
                    order[y] = low[y] = counter
                    counter += 1
                    stack.append((y, f, iter(G.incidence[y])))
                    advanced = True
                    break
                low[x] = min(low[x], order[y])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[x])
                if low[x] > order[parent]:
                    found.add(via)
    return frozenset(found)


def genus(G: Multigraph) -> int:
    """Cycle rank ``m - n + 1`` of a connected graph."""
    require_connected(G)
    return G.m - G.n + 1


def parse_graph(text: str) -> Multigraph:
    """Read the ``n m`` header plus ``m`` lines of ``tail head``; ``#`` starts a comment line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None
    if not rows:
        raise GraphError("missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if n < 1 or m < 0:
        raise GraphError(f"malformed header: n={n}, m={m}")
    if len(body) != m:
        raise GraphError(f"header announces {m} edges but {len(body)} were given")
    return build(n, body)


def format_graph(G: Multigraph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"
