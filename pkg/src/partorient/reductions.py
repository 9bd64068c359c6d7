"""Reversal moves, minimality with respect to a reference pair, and greedy canonical forms.

A reference pair fixes a total order on the edges and a reference
orientation.  A directed cut, directed cycle or half-open path is *minimal*
when its lowest-ranked edge points the way the reference does; a partial
orientation is canonical for a class when every structure of the class's
kinds is minimal.  Canonical forms are reached greedily by reversing a
nonminimal structure until none is left.

Internally an orientation is a pair of bitmasks ``(fwd, bwd)`` and every
candidate structure of the graph is precompiled into masks, so a minimality
scan is a handful of integer operations per structure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, Union

from .multigraph import Multigraph, require_connected
from .orientations import (
    B,
    F,
    U,
    DirectedCutWitness,
    DirectedCycleWitness,
    PartialOrientation,
    State,
    arc,
    crossing_edges,
    cut_out_states,
    indegree_sequence,
    is_directed_cut,
    is_directed_cycle,
    reverse_state,
    state_toward,
)
from .tutte import OrientationClass


# ---------------------------------------------------------------------------
# reference pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReferencePair:
    """``order[r]`` is the edge of rank ``r``; ``reversed[e]`` flips edge ``e``'s reference."""

    order: tuple[int, ...]
    reversed: tuple[bool, ...]
    rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = len(self.order)
        if sorted(self.order) != list(range(m)) or len(self.reversed) != m:
            raise ValueError("order must be a permutation of the edge ids with one flag per edge")
        rank = [0] * m
        for r, e in enumerate(self.order):
            rank[e] = r
        object.__setattr__(self, "rank", tuple(rank))

    @property
    def m(self) -> int:
        return len(self.order)

    def reference_state(self, e: int) -> State:
        return B if self.reversed[e] else F

    def reference_orientation(self, G: Multigraph) -> PartialOrientation:
        return PartialOrientation(G, tuple(self.reference_state(e) for e in range(G.m)))

    def to_text(self) -> str:
        flags = "".join("r" if r else "a" for r in self.reversed)
        return f"order: {','.join(map(str, self.order))}\nreference: {flags}"

    @classmethod
    def from_text(cls, text: str) -> "ReferencePair":
        order = flags = None
        for line in text.splitlines():
            key, _, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if key == "order":
                order = tuple(int(x) for x in value.split(",")) if value else ()
            elif key == "reference":
                if set(value) - {"a", "r"}:
                    raise ValueError(f"reference flags must be over 'a'/'r', got {value!r}")
                flags = tuple(ch == "r" for ch in value)
        if order is None or flags is None:
            raise ValueError("pair text needs 'order:' and 'reference:' lines")
        return cls(order, flags)


def default_pair(G: Multigraph) -> ReferencePair:
    return ReferencePair(tuple(range(G.m)), (False,) * G.m)


def random_pair(G: Multigraph, rng: random.Random) -> ReferencePair:
    order = list(range(G.m))
    rng.shuffle(order)
    return ReferencePair(tuple(order), tuple(rng.random() < 0.5 for _ in range(G.m)))


def q_connected_pair(G: Multigraph, q: int) -> ReferencePair:
    """BFS tree from ``q`` ranked first, in discovery order, referenced away from ``q``."""
    G.check_vertex(q)
    require_connected(G)
    seen = {q}
    queue = [q]
    tree: list[int] = []
    flip = [False] * G.m
    for u in queue:
        for f in G.incidence[u]:
            if G.is_loop(f):
                continue
            w = G.other_end(f, u)
            if w not in seen:
                seen.add(w)
                queue.append(w)
                tree.append(f)
                flip[f] = G.edges[f][0] != u
    in_tree = set(tree)
    order = tuple(tree) + tuple(e for e in range(G.m) if e not in in_tree)
    return ReferencePair(order, tuple(flip))


# ---------------------------------------------------------------------------
# half-open paths and moves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfOpenPath:
    """Directed path ``a1..ak`` followed by an unoriented terminal edge.

    ``vertices`` is ``v0..v(k+1)``, ``edges`` is ``a1..ak, e`` and ``states``
    gives the state of each edge along the traversal; the last entry is the
    imagined state of ``e`` (from ``vk`` to ``v(k+1)``), which has to be
    stored explicitly because a loop can be imagined either way.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    states: tuple[State, ...]

    @property
    def k(self) -> int:
        return len(self.edges) - 1

    @property
    def terminal(self) -> int:
        return self.edges[-1]

    @property
    def is_simple(self) -> bool:
        """Interior ``v1..vk`` distinct, ends off the interior, end loops only."""
        v, k = self.vertices, self.k
        inner = v[1:k + 1]
        if len(set(inner)) != k:
            return False
        if v[0] in v[2:k + 1] or v[k + 1] in v[1:k]:
            return False
        return True

    def reversed(self) -> "HalfOpenPath":
        return HalfOpenPath(
            self.vertices[::-1], self.edges[::-1], tuple(reverse_state(s) for s in self.states[::-1])
        )


class MoveKind(Enum):
    CUT_REVERSAL = "cut"
    CYCLE_REVERSAL = "cycle"
    PIVOT = "pivot"
    CASCADE = "cascade"


@dataclass(frozen=True)
class Pivot:
    edge: int
    prior: int
    vertex: int
    loop_state: Optional[State] = None


Witness = Union[DirectedCutWitness, DirectedCycleWitness, HalfOpenPath, Pivot]


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    witness: Witness

    def apply(self, O: PartialOrientation) -> PartialOrientation:
        w = self.witness
        if self.kind is MoveKind.CUT_REVERSAL:
            return apply_cut_reversal(O, w.X)
        if self.kind is MoveKind.CYCLE_REVERSAL:
            return apply_cycle_reversal(O, w)
        if self.kind is MoveKind.PIVOT:
            return apply_edge_pivot(O, w.edge, w.prior, w.vertex, w.loop_state)
        return apply_cascade(O, w)

    def describe(self) -> str:
        w = self.witness
        if self.kind is MoveKind.CUT_REVERSAL:
            return f"cut X={sorted(w.X)} edges={list(w.edges)}"
        if self.kind is MoveKind.CYCLE_REVERSAL:
            return f"cycle edges={list(w.edges)} vertices={list(w.vertices)}"
        if self.kind is MoveKind.PIVOT:
            return f"pivot at {w.vertex}: unorient {w.prior}, orient {w.edge}"
        return f"cascade edges={list(w.edges)} vertices={list(w.vertices)}"


@dataclass
class MoveTrace:
    moves: list[Move] = field(default_factory=list)

    def replay(self, O: PartialOrientation) -> PartialOrientation:
        for move in self.moves:
            O = move.apply(O)
        return O

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


def move_for(witness: Witness) -> Move:
    if isinstance(witness, DirectedCutWitness):
        return Move(MoveKind.CUT_REVERSAL, witness)
    if isinstance(witness, DirectedCycleWitness):
        return Move(MoveKind.CYCLE_REVERSAL, witness)
    if isinstance(witness, HalfOpenPath):
        return Move(MoveKind.CASCADE, witness)
    return Move(MoveKind.PIVOT, witness)


def apply_cut_reversal(O: PartialOrientation, X: Iterable[int]) -> PartialOrientation:
    X = frozenset(X)
    if not is_directed_cut(O, X):
        raise ValueError(f"{sorted(X)} does not span a directed cut")
    return O.with_states({e: reverse_state(O.states[e]) for e in crossing_edges(O.graph, X)})


def apply_cycle_reversal(O: PartialOrientation, C: DirectedCycleWitness) -> PartialOrientation:
    if not is_directed_cycle(O, C):
        raise ValueError("witness is not a directed cycle of this orientation")
    return O.with_states({e: reverse_state(s) for e, s in zip(C.edges, C.states)})


def apply_edge_pivot(O: PartialOrientation, e: int, e_prime: int, v: int,
                     loop_state: Optional[State] = None) -> PartialOrientation:
    """Unorient ``e_prime`` (pointing into ``v``) and orient ``e`` into ``v``.

    A loop ``e`` points into ``v`` either way; ``loop_state`` picks one
    (FORWARD by default).
    """
    G = O.graph
    G.check_edge(e)
    G.check_edge(e_prime)
    if e == e_prime:
        raise ValueError("pivot needs two distinct edges")
    if O.states[e] != U or v not in G.edges[e]:
        raise ValueError(f"edge {e} must be unoriented and incident to {v}")
    if O.states[e_prime] == U or arc(G, e_prime, O.states[e_prime])[1] != v:
        raise ValueError(f"edge {e_prime} must be oriented into {v}")
    if G.is_loop(e):
        new = State(loop_state) if loop_state is not None else F
        if new == U:
            raise ValueError("loop_state must be FORWARD or BACKWARD")
    else:
        new = state_toward(G, e, v)
    return O.with_states({e: new, e_prime: U})


def is_half_open_path(O: PartialOrientation, P: HalfOpenPath, simple: bool = True) -> bool:
    G = O.graph
    k = P.k
    if k < 1 or len(P.vertices) != k + 2 or len(P.states) != k + 1:
        return False
    if len(set(P.edges)) != len(P.edges):
        return False
    if simple and not P.is_simple:
        return False
    for i, (e, s) in enumerate(zip(P.edges, P.states)):
        if s == U:
            return False
        if arc(G, e, s) != (P.vertices[i], P.vertices[i + 1]):
            return False
        if i < k and O.states[e] != s:
            return False
    return O.states[P.terminal] == U


def apply_cascade(O: PartialOrientation, P: HalfOpenPath) -> PartialOrientation:
    """Run the pivots from the terminal end back to the start; reverses every edge of ``P``."""
    if not is_half_open_path(O, P, simple=False):
        raise ValueError("witness is not a half-open path of this orientation")
    for i in range(P.k, 0, -1):
        O = apply_edge_pivot(O, P.edges[i], P.edges[i - 1], P.vertices[i],
                             loop_state=reverse_state(P.states[i]))
    return O


def monomial_encoding(O: PartialOrientation, pair: ReferencePair) -> tuple[int, ...]:
    """Squarefree exponent vector ``(x_0..x_{m-1}, y_0..y_{m-1})`` indexed by rank."""
    m = O.graph.m
    vec = [0] * (2 * m)
    for e, s in enumerate(O.states):
        if s == U:
            continue
        r = pair.rank[e]
        vec[r if s == pair.reference_state(e) else m + r] = 1
    return tuple(vec)


# ---------------------------------------------------------------------------
# structure templates
# ---------------------------------------------------------------------------

class WitnessKind(Enum):
    CUT = "cut"
    CYCLE = "cycle"
    HALF_OPEN_PATH = "path"


_KIND_ORDER = {WitnessKind.CUT: 0, WitnessKind.CYCLE: 1, WitnessKind.HALF_OPEN_PATH: 2}

CLASS_KINDS = {
    OrientationClass.CUT_MINIMAL: frozenset({WitnessKind.CUT}),
    OrientationClass.CYCLE_MINIMAL: frozenset({WitnessKind.CYCLE}),
    OrientationClass.CYCLE_CUT_MINIMAL: frozenset({WitnessKind.CUT, WitnessKind.CYCLE}),
    OrientationClass.CYCLE_PATH_MINIMAL: frozenset({WitnessKind.CYCLE, WitnessKind.HALF_OPEN_PATH}),
}

MINIMAL_CLASSES = tuple(CLASS_KINDS)


@dataclass(frozen=True)
class _Template:
    kind: WitnessKind
    witness: Witness
    edges: tuple[int, ...]
    pattern: tuple[State, ...]     # state along the structure, same order as edges
    need_f: int
    need_b: int
    need_u: int
    span: int
    out_f: int
    out_b: int
    key: tuple

    def matches(self, fwd: int, bwd: int) -> bool:
        return (fwd & self.need_f) == self.need_f and (bwd & self.need_b) == self.need_b \
            and not ((fwd | bwd) & self.need_u)

    def is_minimal(self, pair: ReferencePair) -> bool:
        i = min(range(len(self.edges)), key=lambda j: pair.rank[self.edges[j]])
        return self.pattern[i] == pair.reference_state(self.edges[i])


def _make_template(kind: WitnessKind, witness: Witness, edges: Sequence[int],
                   pattern: Sequence[State], result: Sequence[State], n_unoriented: int = 0) -> _Template:
    need_f = need_b = need_u = span = out_f = out_b = 0
    cut = len(edges) - n_unoriented
    for i, (e, s, r) in enumerate(zip(edges, pattern, result)):
        bit = 1 << e
        span |= bit
        if i >= cut:
            need_u |= bit
        elif s == F:
            need_f |= bit
        else:
            need_b |= bit
        if r == F:
            out_f |= bit
        elif r == B:
            out_b |= bit
    by_edge = sorted(zip(edges, pattern))
    key = (tuple(e for e, _ in by_edge), tuple(int(s) for _, s in by_edge), _KIND_ORDER[kind])
    return _Template(kind, witness, tuple(edges), tuple(pattern), need_f, need_b, need_u,
                     span, out_f, out_b, key)


def _connected_within(G: Multigraph, verts: frozenset[int]) -> bool:
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for f in G.incidence[x]:
            y = G.other_end(f, x)
            if y in verts and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


@lru_cache(maxsize=64)
def bond_templates(G: Multigraph) -> tuple[_Template, ...]:
    """Both orientations of every bond, found by scanning vertex subsets."""
    out = []
    full = frozenset(range(G.n))
    for mask in range(1, (1 << G.n) - 1):
        X = frozenset(v for v in range(G.n) if mask >> v & 1)
        if not (_connected_within(G, X) and _connected_within(G, full - X)):
            continue
        edges = crossing_edges(G, X)
        if not edges:
            continue
        pattern = cut_out_states(G, X, edges)
        out.append(_make_template(WitnessKind.CUT, DirectedCutWitness(X, edges), edges, pattern,
                                  [reverse_state(s) for s in pattern]))
    return tuple(sorted(out, key=lambda t: t.key))


@lru_cache(maxsize=64)
def cycle_templates(G: Multigraph) -> tuple[_Template, ...]:
    """Both directions of every simple cycle (loops and 2-cycles included)."""
    out = []

    def add(vertices, edges):
        pattern = [state_toward(G, e, vertices[(i + 1) % len(vertices)]) for i, e in enumerate(edges)]
        w = DirectedCycleWitness(tuple(vertices), tuple(edges), tuple(pattern))
        out.append(_make_template(WitnessKind.CYCLE, w, edges, pattern,
                                  [reverse_state(s) for s in pattern]))

    for e in range(G.m):
        if G.is_loop(e):
            v = G.edges[e][0]
            for s in (F, B):
                w = DirectedCycleWitness((v,), (e,), (s,))
                out.append(_make_template(WitnessKind.CYCLE, w, (e,), (s,), (reverse_state(s),)))
    # each cycle is rooted at its smallest vertex and found once per direction
    for s in range(G.n):
        path_v = [s]
        path_e: list[int] = []

        def extend(x):
            for f in G.incidence[x]:
                if G.is_loop(f) or f in path_e:
                    continue
                y = G.other_end(f, x)
                if y == s and path_e:
                    add(list(path_v), path_e + [f])
                elif y > s and y not in path_v:
                    path_v.append(y)
                    path_e.append(f)
                    extend(y)
                    path_v.pop()
                    path_e.pop()

        extend(s)
    return tuple(sorted(out, key=lambda t: t.key))


@lru_cache(maxsize=64)
def path_templates(G: Multigraph) -> tuple[_Template, ...]:
    """Every simple half-open path shape of the graph, with its required states."""
    out = []

    def add(vertices, edges, states):
        P = HalfOpenPath(tuple(vertices), tuple(edges), tuple(states))
        result = [U] + [reverse_state(s) for s in states[1:]]
        out.append(_make_template(WitnessKind.HALF_OPEN_PATH, P, edges, states, result, n_unoriented=1))

    def terminals(vertices, edges, states):
        k = len(edges)
        vk = vertices[-1]
        interior = set(vertices[1:k])
        for f in G.incidence[vk]:
            if f in edges:
                continue
            if G.is_loop(f):
                for s in (F, B):
                    add(vertices + [vk], edges + [f], states + [s])
                continue
            w = G.other_end(f, vk)
            if w in interior:
                continue
            add(vertices + [w], edges + [f], states + [state_toward(G, f, w)])

    def grow(vertices, edges, states):
        terminals(vertices, edges, states)
        x = vertices[-1]
        for f in G.incidence[x]:
            if G.is_loop(f) or f in edges:
                continue
            y = G.other_end(f, x)
            if y in vertices:
                continue
            grow(vertices + [y], edges + [f], states + [state_toward(G, f, y)])

    for v0 in range(G.n):
        for f in G.incidence[v0]:
            if G.is_loop(f):
                for s in (F, B):
                    grow([v0, v0], [f], [s])
            else:
                v1 = G.other_end(f, v0)
                grow([v0, v1], [f], [state_toward(G, f, v1)])
    return tuple(sorted(out, key=lambda t: t.key))


_TEMPLATE_SOURCES = {
    WitnessKind.CUT: bond_templates,
    WitnessKind.CYCLE: cycle_templates,
    WitnessKind.HALF_OPEN_PATH: path_templates,
}


@lru_cache(maxsize=512)
def _nonminimal_templates(G: Multigraph, pair: ReferencePair,
                          kinds: frozenset[WitnessKind]) -> tuple[_Template, ...]:
    if pair.m != G.m:
        raise ValueError("reference pair does not match the graph's edge count")
    found = []
    for kind in kinds:
        found.extend(t for t in _TEMPLATE_SOURCES[kind](G) if not t.is_minimal(pair))
    return tuple(sorted(found, key=lambda t: t.key))


def _kinds(kinds) -> frozenset[WitnessKind]:
    if isinstance(kinds, OrientationClass):
        return CLASS_KINDS[kinds]
    if isinstance(kinds, WitnessKind):
        return frozenset({kinds})
    return frozenset(kinds)


# ---------------------------------------------------------------------------
# minimality and canonical forms
# ---------------------------------------------------------------------------

def directed_bonds(O: PartialOrientation) -> list[DirectedCutWitness]:
    fwd, bwd = O.masks
    return [t.witness for t in bond_templates(O.graph) if t.matches(fwd, bwd)]


def directed_cycles(O: PartialOrientation) -> list[DirectedCycleWitness]:
    fwd, bwd = O.masks
    return [t.witness for t in cycle_templates(O.graph) if t.matches(fwd, bwd)]


def enumerate_half_open_paths(O: PartialOrientation) -> list[HalfOpenPath]:
    fwd, bwd = O.masks
    return [t.witness for t in path_templates(O.graph) if t.matches(fwd, bwd)]


def find_nonminimal(O: PartialOrientation, pair: ReferencePair, kinds) -> Optional[Witness]:
    """Nonminimal structure with the lexicographically least edge set, or ``None``."""
    fwd, bwd = O.masks
    for t in _nonminimal_templates(O.graph, pair, _kinds(kinds)):
        if t.matches(fwd, bwd):
            return t.witness
    return None


def all_nonminimal(O: PartialOrientation, pair: ReferencePair, kinds) -> list[Witness]:
    fwd, bwd = O.masks
    return [t.witness for t in _nonminimal_templates(O.graph, pair, _kinds(kinds)) if t.matches(fwd, bwd)]


def is_minimal(O: PartialOrientation, pair: ReferencePair, cls: OrientationClass) -> bool:
    return find_nonminimal(O, pair, CLASS_KINDS[cls]) is None


def is_cut_minimal(O: PartialOrientation, pair: ReferencePair) -> bool:
    return is_minimal(O, pair, OrientationClass.CUT_MINIMAL)


def is_cycle_minimal(O: PartialOrientation, pair: ReferencePair) -> bool:
    return is_minimal(O, pair, OrientationClass.CYCLE_MINIMAL)


def is_cycle_cut_minimal(O: PartialOrientation, pair: ReferencePair) -> bool:
    return is_minimal(O, pair, OrientationClass.CYCLE_CUT_MINIMAL)


def is_cycle_path_minimal(O: PartialOrientation, pair: ReferencePair) -> bool:
    return is_minimal(O, pair, OrientationClass.CYCLE_PATH_MINIMAL)


def minimal_predicate(G: Multigraph, pair: ReferencePair,
                      cls: OrientationClass) -> Callable[[int, int], bool]:
    """Fast ``(fwd, bwd) -> bool`` minimality test for bulk scans."""
    templates = _nonminimal_templates(G, pair, CLASS_KINDS[cls])

    def test(fwd: int, bwd: int) -> bool:
        for t in templates:
            if (fwd & t.need_f) == t.need_f and (bwd & t.need_b) == t.need_b \
                    and not ((fwd | bwd) & t.need_u):
                return False
        return True

    return test


def canonical_masks(G: Multigraph, pair: ReferencePair, cls: OrientationClass, fwd: int, bwd: int,
                    rng: Optional[random.Random] = None) -> tuple[int, int, list[_Template]]:
    templates = _nonminimal_templates(G, pair, CLASS_KINDS[cls])
    applied: list[_Template] = []
    seen = {(fwd, bwd)}
    while True:
        if rng is None:
            chosen = None
            for t in templates:
                if (fwd & t.need_f) == t.need_f and (bwd & t.need_b) == t.need_b \
                        and not ((fwd | bwd) & t.need_u):
                    chosen = t
                    break
        else:
            hits = [t for t in templates if t.matches(fwd, bwd)]
            chosen = rng.choice(hits) if hits else None
        if chosen is None:
            return fwd, bwd, applied
        keep = ~chosen.span
        fwd = (fwd & keep) | chosen.out_f
        bwd = (bwd & keep) | chosen.out_b
        applied.append(chosen)
        if (fwd, bwd) in seen:
            raise RuntimeError("greedy reduction revisited a state")
        seen.add((fwd, bwd))


def canonical_rep(O: PartialOrientation, pair: ReferencePair, cls: OrientationClass,
                  rng: Optional[random.Random] = None) -> tuple[PartialOrientation, MoveTrace]:
    """Greedy reduction to the unique ``cls``-minimal orientation equivalent to ``O``.

    Without ``rng`` the least nonminimal witness is reversed at each step;
    with ``rng`` a uniformly random one is.
    """
    if cls not in CLASS_KINDS:
        raise ValueError(f"{cls.value!r} is not a minimality class")
    G = O.graph
    fwd, bwd, applied = canonical_masks(G, pair, cls, *O.masks, rng=rng)
    trace = MoveTrace([move_for(t.witness) for t in applied])
    return PartialOrientation.from_masks(G, fwd, bwd), trace


# ---------------------------------------------------------------------------
# difference decompositions
# ---------------------------------------------------------------------------

class DecomposeMode(Enum):
    CUT_ONLY = "cut"
    CYCLE_PIVOT = "cycle-pivot"


def _decompose_cuts(O1: PartialOrientation, O2: PartialOrientation) -> list[DirectedCutWitness]:
    G = O1.graph
    require_connected(G)
    # potential drops by exactly one along every edge that flips, stays level elsewhere
    step: dict[int, int] = {}
    for e in range(G.m):
        s1, s2 = O1.states[e], O2.states[e]
        if s1 == s2:
            continue
        if s1 == U or s2 == U or G.is_loop(e):
            raise ValueError(f"edge {e} differs in a way no cut reversal can produce")
        step[e] = 1
    level = {0: 0}
    queue = [0]
    for x in queue:
        for e in G.incidence[x]:
            if G.is_loop(e):
                continue
            y = G.other_end(e, x)
            if e in step:
                a, b = arc(G, e, O1.states[e])
                want = level[x] - 1 if x == a else level[x] + 1
            else:
                want = level[x]
            if y not in level:
                level[y] = want
                queue.append(y)
            elif level[y] != want:
                raise ValueError("orientations are not related by cut reversals")
    low = min(level.values())
    top = max(level.values()) - low
    out = []
    for t in range(1, top + 1):
        X = frozenset(v for v in range(G.n) if level[v] - low >= t)
        if not is_directed_cut(O1, X):
            raise RuntimeError("level set is not a directed cut")
        out.append(DirectedCutWitness(X, crossing_edges(G, X)))
    return out


def _decompose_cycle_pivot(O1: PartialOrientation, O2: PartialOrientation) -> list[Witness]:
    G = O1.graph
    if indegree_sequence(O1) != indegree_sequence(O2):
        raise ValueError("orientations have different indegree sequences")
    target = O2.states
    current = O1
    out: list[Witness] = []

    def into(e: int, s: State, x: int) -> bool:
        return s != U and arc(G, e, s)[1] == x

    while True:
        diff = [e for e in range(G.m) if current.states[e] != target[e]]
        if not diff:
            return out
        witness = None
        for e in diff:
            if G.is_loop(e) and current.states[e] != U and target[e] != U:
                v = G.edges[e][0]
                witness = DirectedCycleWitness((v,), (e,), (current.states[e],))
                break
        if witness is None:
            opening = [e for e in diff if current.states[e] == U]
            if opening:
                e0 = opening[0]
                x0 = arc(G, e0, target[e0])[1]
                walk_v, walk_e = [x0], []
            else:
                e0 = None
                first = diff[0]
                tail, head = arc(G, first, current.states[first])
                walk_v, walk_e = [head, tail], [first]
            pos = {v: i for i, v in enumerate(walk_v)}
            while witness is None:
                x = walk_v[-1]
                candidates = [
                    g for g in diff
                    if g not in walk_e and current.states[g] != U
                    and into(g, current.states[g], x) and not into(g, target[g], x)
                ]
                if not candidates:
                    raise RuntimeError("walk stalled; indegree bookkeeping is inconsistent")
                g = candidates[0]
                y = arc(G, g, current.states[g])[0]
                walk_e.append(g)
                if target[g] == U:
                    # walk closes into a half-open path ending at e0
                    verts = [y] + walk_v[::-1] + [G.other_end(e0, x0) if not G.is_loop(e0) else x0]
                    edges = walk_e[::-1] + [e0]
                    states = [current.states[f] for f in walk_e[::-1]] + [reverse_state(target[e0])]
                    witness = HalfOpenPath(tuple(verts), tuple(edges), tuple(states))
                elif y in pos:
                    j = pos[y]
                    cyc_e = walk_e[j:][::-1]
                    cyc_v = [y] + walk_v[j + 1:][::-1]
                    witness = DirectedCycleWitness(tuple(cyc_v), tuple(cyc_e),
                                                   tuple(current.states[f] for f in cyc_e))
                else:
                    pos[y] = len(walk_v)
                    walk_v.append(y)
        out.append(witness)
        current = move_for(witness).apply(current)


def decompose_difference(O1: PartialOrientation, O2: PartialOrientation,
                         mode: DecomposeMode = DecomposeMode.CYCLE_PIVOT) -> list[Witness]:
    """Edge-disjoint witnesses whose sequential application turns ``O1`` into ``O2``.

    ``CUT_ONLY`` yields directed cuts (level sets of a firing potential);
    ``CYCLE_PIVOT`` yields directed cycles and cascades found by walking
    backwards through the difference.  Cascades produced here may revisit
    a vertex, so they are not always simple half-open paths.
    """
    if O1.graph != O2.graph:
        raise ValueError("orientations belong to different graphs")
    mode = DecomposeMode(mode)
    if mode is DecomposeMode.CUT_ONLY:
        return _decompose_cuts(O1, O2)
    return _decompose_cycle_pivot(O1, O2)


def replay_witnesses(O: PartialOrientation, witnesses: Iterable[Witness]) -> PartialOrientation:
    for w in witnesses:
        O = move_for(w).apply(O)
    return O
