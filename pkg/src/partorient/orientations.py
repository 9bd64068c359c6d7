"""Partial orientations: representation, enumeration and the acyclic / strongly connected predicates."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Optional, Sequence

import networkx as nx

from .multigraph import GraphError, Multigraph, bridges, require_connected


class State(IntEnum):
    """Per-edge state; the values are the base-3 digits used for enumeration."""

    UNORIENTED = 0
    FORWARD = 1
    BACKWARD = 2


U, F, B = State.UNORIENTED, State.FORWARD, State.BACKWARD

_CHAR = {U: "0", F: "+", B: "-"}
_FROM_CHAR = {v: k for k, v in _CHAR.items()}


def reverse_state(s: int) -> State:
    return State((0, 2, 1)[s])


def arc(G: Multigraph, e: int, s: int) -> tuple[int, int]:
    """``(from, to)`` of edge ``e`` when it has orientation state ``s``."""
    u, v = G.edges[e]
    if s == F:
        return u, v
    if s == B:
        return v, u
    raise ValueError(f"edge {e} is unoriented")


def state_toward(G: Multigraph, e: int, v: int) -> State:
    """The state orienting edge ``e`` into vertex ``v`` (for a loop, FORWARD)."""
    tail, head = G.edges[e]
    if head == v:
        return F
    if tail == v:
        return B
    raise GraphError(f"vertex {v} is not an endpoint of edge {e}")


@dataclass(frozen=True)
class PartialOrientation:
    graph: Multigraph
    states: tuple[State, ...]

    def __post_init__(self):
        if len(self.states) != self.graph.m:
            raise ValueError(f"expected {self.graph.m} edge states, got {len(self.states)}")
        object.__setattr__(self, "states", tuple(State(s) for s in self.states))

    # -- constructors -----------------------------------------------------
    @classmethod
    def unoriented(cls, G: Multigraph) -> "PartialOrientation":
        return cls(G, (U,) * G.m)

    @classmethod
    def from_string(cls, G: Multigraph, text: str) -> "PartialOrientation":
        text = text.strip()
        if len(text) != G.m or any(ch not in _FROM_CHAR for ch in text):
            raise ValueError(f"orientation string must be {G.m} characters over '0+-', got {text!r}")
        return cls(G, tuple(_FROM_CHAR[ch] for ch in text))

    @classmethod
    def from_index(cls, G: Multigraph, index: int) -> "PartialOrientation":
        """Inverse of :attr:`index`; edge 0 is the least significant base-3 digit."""
        states = []
        for _ in range(G.m):
            index, d = divmod(index, 3)
            states.append(d)
        return cls(G, tuple(states))

    @classmethod
    def from_masks(cls, G: Multigraph, fwd: int, bwd: int) -> "PartialOrientation":
        return cls(G, tuple(F if fwd >> e & 1 else B if bwd >> e & 1 else U for e in range(G.m)))

    # -- views ------------------------------------------------------------
    def __str__(self) -> str:
        return "".join(_CHAR[s] for s in self.states)

    def __repr__(self) -> str:
        return f"PartialOrientation({str(self)!r})"

    @property
    def index(self) -> int:
        return sum(int(s) * 3**e for e, s in enumerate(self.states))

    @property
    def masks(self) -> tuple[int, int]:
        fwd = bwd = 0
        for e, s in enumerate(self.states):
            if s == F:
                fwd |= 1 << e
            elif s == B:
                bwd |= 1 << e
        return fwd, bwd

    @property
    def num_oriented(self) -> int:
        return sum(1 for s in self.states if s)

    @property
    def is_full(self) -> bool:
        return all(self.states)

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(edge, from, to)`` for each oriented edge."""
        for e, s in enumerate(self.states):
            if s:
                a, b = arc(self.graph, e, s)
                yield e, a, b

    def with_states(self, changes: dict[int, State]) -> "PartialOrientation":
        states = list(self.states)
        for e, s in changes.items():
            states[e] = s
        return PartialOrientation(self.graph, tuple(states))


def enumerate_partial_orientations(G: Multigraph, start: int = 0,
                                   stop: Optional[int] = None) -> Iterator[PartialOrientation]:
    """All ``3**m`` states in base-3 counter order, optionally a sub-range of indices."""
    total = 3**G.m
    stop = total if stop is None else min(stop, total)
    for index in range(start, stop):
        yield PartialOrientation.from_index(G, index)


def indegree_sequence(O: PartialOrientation) -> tuple[int, ...]:
    deg = [0] * O.graph.n
    for _, _, head in O.arcs():
        deg[head] += 1
    return tuple(deg)


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectedCycleWitness:
    """A simple directed cycle ``vertices[i] -> vertices[i+1]`` along ``edges[i]``.

    ``states[i]`` is the state of ``edges[i]`` that realises that traversal.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    states: tuple[State, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DirectedCutWitness:
    """Vertex set ``X`` whose crossing edges are all oriented out of ``X``."""

    X: frozenset[int]
    edges: tuple[int, ...]


def crossing_edges(G: Multigraph, X) -> tuple[int, ...]:
    return tuple(e for e, (u, v) in enumerate(G.edges) if (u in X) != (v in X))


def cut_out_states(G: Multigraph, X, edges: Sequence[int]) -> tuple[State, ...]:
    """States orienting each crossing edge out of ``X``."""
    return tuple(F if G.edges[e][0] in X else B for e in edges)


def is_directed_cut(O: PartialOrientation, X) -> bool:
    G = O.graph
    edges = crossing_edges(G, X)
    if not edges:
        return False
    return all(O.states[e] == s for e, s in zip(edges, cut_out_states(G, X, edges)))


def is_directed_cycle(O: PartialOrientation, C: DirectedCycleWitness) -> bool:
    G = O.graph
    k = len(C.edges)
    if k == 0 or len(set(C.edges)) != k or len(set(C.vertices)) != k:
        return False
    for i, (e, s) in enumerate(zip(C.edges, C.states)):
        if O.states[e] != s or s == U:
            return False
        if arc(G, e, s) != (C.vertices[i], C.vertices[(i + 1) % k]):
            return False
    return True


def find_directed_cycle(O: PartialOrientation) -> Optional[DirectedCycleWitness]:
    G = O.graph
    for e, a, b in O.arcs():
        if a == b:
            return DirectedCycleWitness((a,), (e,), (O.states[e],))
    out: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e, a, b in O.arcs():
        out[a].append((e, b))
    colour = [0] * G.n  # 0 new, 1 on stack, 2 done
    for root in range(G.n):
        if colour[root]:
            continue
        colour[root] = 1
        path_v = [root]
        path_e: list[int] = []
        iters = [iter(out[root])]
        while iters:
            x = path_v[-1]
            for e, y in iters[-1]:
                if colour[y] == 1:
                    i = path_v.index(y)
                    verts = tuple(path_v[i:])
                    edges = tuple(path_e[i:]) + (e,)
                    return DirectedCycleWitness(verts, edges, tuple(O.states[f] for f in edges))
                if colour[y] == 0:
                    colour[y] = 1
                    path_v.append(y)
                    path_e.append(e)
                    iters.append(iter(out[y]))
                    break
            else:
                colour[x] = 2
                path_v.pop()
                iters.pop()
                if path_e:
                    path_e.pop()
    return None


def is_acyclic(O: PartialOrientation) -> bool:
    return find_directed_cycle(O) is None


def mixed_digraph(O: PartialOrientation) -> nx.DiGraph:
    """Oriented edges become one arc, unoriented edges two opposite arcs."""
    D = nx.DiGraph()
    D.add_nodes_from(range(O.graph.n))
    for e, s in enumerate(O.states):
        u, v = O.graph.edges[e]
        if u == v:
            continue
        if s != B:
            D.add_edge(u, v)
        if s != F:
            D.add_edge(v, u)
    return D


def find_directed_cut(O: PartialOrientation) -> Optional[DirectedCutWitness]:
    """Directed cut from the condensation of the mixed digraph, or ``None``.

    ``X`` is the complement of the sink component holding the smallest vertex.
    """
    G = O.graph
    require_connected(G)
    D = mixed_digraph(O)
    C = nx.condensation(D)
    if C.number_of_nodes() == 1:
        return None
    sinks = [c for c in C.nodes if C.out_degree(c) == 0]
    sink = min(sinks, key=lambda c: min(C.nodes[c]["members"]))
    X = frozenset(range(G.n)) - frozenset(C.nodes[sink]["members"])
    return DirectedCutWitness(X, crossing_edges(G, X))


def is_strongly_connected(O: PartialOrientation) -> bool:
    return find_directed_cut(O) is None


# ---------------------------------------------------------------------------
# extensions to full orientations
# ---------------------------------------------------------------------------

def extend_to_full_acyclic(O: PartialOrientation) -> PartialOrientation:
    """Orient every unoriented edge along a topological order of the oriented arcs.

    Ties in the topological order go to the lowest vertex id.
    """
    G = O.graph
    if any(G.is_loop(e) for e in range(G.m)):
        raise GraphError("graph has a loop; no acyclic full orientation exists")
    if not is_acyclic(O):
        raise ValueError("partial orientation contains a directed cycle")
    indeg = [0] * G.n
    out: list[list[int]] = [[] for _ in range(G.n)]
    for _, a, b in O.arcs():
        out[a].append(b)
        indeg[b] += 1
    heap = [v for v in range(G.n) if indeg[v] == 0]
    heapq.heapify(heap)
    position = {}
    while heap:
        v = heapq.heappop(heap)
        position[v] = len(position)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    states = list(O.states)
    for e, s in enumerate(states):
        if s == U:
            u, v = G.edges[e]
            states[e] = F if position[u] < position[v] else B
    return PartialOrientation(G, tuple(states))


def extend_to_full_strong(O: PartialOrientation) -> PartialOrientation:
    """Backtracking completion that never creates a directed cut.

    A directed cut has no unoriented crossing edge, so once one appears no
    further choice can remove it; that is the pruning rule.
    """
    G = O.graph
    require_connected(G)
    if bridges(G):
        raise GraphError("graph has a bridge; no strongly connected full orientation exists")
    if not is_strongly_connected(O):
        raise ValueError("partial orientation contains a directed cut")
    free = [e for e, s in enumerate(O.states) if s == U]
    states = list(O.states)

    def search(i: int) -> bool:
        if i == len(free):
            return True
        e = free[i]
        for s in (F, B):
            states[e] = s
            if is_strongly_connected(PartialOrientation(G, tuple(states))) and search(i + 1):
                return True
        states[e] = U
        return False

    if not search(0):
        raise RuntimeError("no strongly connected completion found; this contradicts bridgelessness")
    return PartialOrientation(G, tuple(states))
