"""Brute-force ground truth over all ``3**m`` partial orientations.

Counts here come from full enumeration.  Orbits under the reversal moves are
built by union-find over base-3 state indices, with directed cuts found by
scanning every vertex subset and directed cycles by scanning every edge
subset, so the orbit oracle shares no structure enumeration with the
canonical-form code it checks.
"""

from __future__ import annotations

import json
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .multigraph import GraphError, Multigraph, genus, require_connected
from .orientations import (
    B,
    F,
    PartialOrientation,
    crossing_edges,
    cut_out_states,
    enumerate_partial_orientations,
    indegree_sequence,
    is_acyclic,
    is_strongly_connected,
)
from .reductions import (
    CLASS_KINDS,
    MINIMAL_CLASSES,
    ReferencePair,
    canonical_masks,
    default_pair,
    minimal_predicate,
)
from .tutte import (
    FORMULA_CLASSES,
    OrientationClass,
    chromatic_count,
    evaluate,
    reliability_exact,
    tutte_polynomial,
)

MAX_EDGES = 14


class EnumerationLimit(GraphError):
    """Raised when a graph is too large for exhaustive enumeration."""


class Move(Enum):
    CUT_REVERSAL = "cut"
    CYCLE_REVERSAL = "cycle"
    EDGE_PIVOT = "pivot"


CLASS_MOVES = {
    OrientationClass.CUT_MINIMAL: frozenset({Move.CUT_REVERSAL}),
    OrientationClass.CYCLE_MINIMAL: frozenset({Move.CYCLE_REVERSAL}),
    OrientationClass.CYCLE_CUT_MINIMAL: frozenset({Move.CUT_REVERSAL, Move.CYCLE_REVERSAL}),
    OrientationClass.CYCLE_PATH_MINIMAL: frozenset({Move.CYCLE_REVERSAL, Move.EDGE_PIVOT}),
}


def _guard(G: Multigraph) -> None:
    if G.m > MAX_EDGES:
        raise EnumerationLimit(f"{G.m} edges exceeds the enumeration limit of {MAX_EDGES}")


def _masks(index: int, m: int) -> tuple[int, int]:
    fwd = bwd = 0
    for e in range(m):
        index, d = divmod(index, 3)
        if d == 1:
            fwd |= 1 << e
        elif d == 2:
            bwd |= 1 << e
    return fwd, bwd


def _index(fwd: int, bwd: int, m: int) -> int:
    return sum((1 if fwd >> e & 1 else 2 if bwd >> e & 1 else 0) * 3**e for e in range(m))


# ---------------------------------------------------------------------------
# independent structure oracles
# ---------------------------------------------------------------------------

def directed_cuts_by_subsets(O: PartialOrientation) -> list[frozenset[int]]:
    """Every ``X`` whose crossing edges are all oriented out of ``X``."""
    G = O.graph
    found = []
    for mask in range(1, (1 << G.n) - 1):
        X = frozenset(v for v in range(G.n) if mask >> v & 1)
        edges = crossing_edges(G, X)
        if edges and all(O.states[e] == s for e, s in zip(edges, cut_out_states(G, X, edges))):
            found.append(X)
    return found


def cycles_by_subsets(G: Multigraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Directed simple cycles as ``(edges, states)`` from edge subsets that are cycles."""
    out = []
    for mask in range(1, 1 << G.m):
        edges = [e for e in range(G.m) if mask >> e & 1]
        deg: dict[int, int] = defaultdict(int)
        for e in edges:
            u, v = G.edges[e]
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg.values()):
            continue
        # connected 2-regular edge set: walk it from its first edge
        start = edges[0]
        u, v = G.edges[start]
        if u == v:
            if len(edges) == 1:
                out.append(((start,), (F,)))
                out.append(((start,), (B,)))
            continue
        order, states = [start], [F]
        x, prev = v, start
        while x != u:
            nxt = next(e for e in edges if e != prev and x in G.edges[e] and e not in order)
            order.append(nxt)
            states.append(F if G.edges[nxt][0] == x else B)
            x, prev = G.other_end(nxt, x), nxt
        if len(order) != len(edges):
            continue
        out.append((tuple(order), tuple(states)))
        out.append((tuple(order), tuple(B if s == F else F for s in states)))
    return out


def is_acyclic_by_cycles(O: PartialOrientation, cycles=None) -> bool:
    cycles = cycles_by_subsets(O.graph) if cycles is None else cycles
    return not any(all(O.states[e] == s for e, s in zip(es, ss)) for es, ss in cycles)


def is_strongly_connected_by_subsets(O: PartialOrientation) -> bool:
    return not directed_cuts_by_subsets(O)


# ---------------------------------------------------------------------------
# counts
# ---------------------------------------------------------------------------

def brute_count(G: Multigraph, cls: OrientationClass, pair: Optional[ReferencePair] = None,
                k: int = 1, l: int = 1) -> int:
    """Weighted count: sum over members of ``k**oriented * l**unoriented``."""
    _guard(G)
    if k < 0 or l < 0:
        raise ValueError("k and l must be nonnegative")
    if cls in CLASS_KINDS:
        pair = default_pair(G) if pair is None else pair
        minimal = minimal_predicate(G, pair, cls)
        member = lambda O: minimal(*O.masks)  # noqa: E731
    elif cls is OrientationClass.ACYCLIC:
        member = is_acyclic
    elif cls is OrientationClass.STRONGLY_CONNECTED:
        require_connected(G)
        member = is_strongly_connected
    else:
        member = lambda O: True  # noqa: E731
    total = 0
    for O in enumerate_partial_orientations(G):
        if member(O):
            oriented = O.num_oriented
            total += k**oriented * l ** (G.m - oriented)
    return total


def orbit_scan(G: Multigraph, moves: Iterable[Move]) -> tuple[int, list[int]]:
    """Orbits of all ``3**m`` states under the generated moves.

    Returns the orbit count and, per state index, its orbit id: the smallest
    state index in the orbit.
    """
    _guard(G)
    moves = frozenset(Move(mv) for mv in moves)
    if not moves:
        raise ValueError("need at least one move")
    m = G.m
    size = 3**m
    parent = list(range(size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    # each move is (need_f, need_b, need_u, flips) where flips lists (edge, new digit)
    generators = []
    if Move.CUT_REVERSAL in moves:
        require_connected(G)
        for mask in range(1, (1 << G.n) - 1):
            X = frozenset(v for v in range(G.n) if mask >> v & 1)
            edges = crossing_edges(G, X)
            states = cut_out_states(G, X, edges)
            generators.append(_generator(edges, states))
    if Move.CYCLE_REVERSAL in moves:
        for edges, states in cycles_by_subsets(G):
            generators.append(_generator(edges, states))
    if Move.EDGE_PIVOT in moves:
        for v in range(G.n):
            for e_in in G.incidence[v]:
                into = [F, B] if G.is_loop(e_in) else [F if G.edges[e_in][1] == v else B]
                for e_new in G.incidence[v]:
                    if e_new == e_in:
                        continue
                    targets = [F, B] if G.is_loop(e_new) else [F if G.edges[e_new][1] == v else B]
                    for s_in in into:
                        for s_new in targets:
                            need_f = (1 << e_in) if s_in == F else 0
                            need_b = (1 << e_in) if s_in == B else 0
                            flips = ((e_in, 0), (e_new, int(s_new)))
                            generators.append((need_f, need_b, 1 << e_new, flips))
    pow3 = [3**e for e in range(m)]
    for index in range(size):
        fwd, bwd = _masks(index, m)
        for need_f, need_b, need_u, flips in generators:
            if (fwd & need_f) == need_f and (bwd & need_b) == need_b and not ((fwd | bwd) & need_u):
                target = index
                for e, digit in flips:
                    old = 1 if fwd >> e & 1 else 2 if bwd >> e & 1 else 0
                    target += (digit - old) * pow3[e]
                union(index, target)
    ids = [find(i) for i in range(size)]
    return len(set(ids)), ids


def _generator(edges, states):
    need_f = need_b = 0
    flips = []
    for e, s in zip(edges, states):
        if s == F:
            need_f |= 1 << e
            flips.append((e, 2))
        else:
            need_b |= 1 << e
            flips.append((e, 1))
    return need_f, need_b, 0, tuple(flips)


def indegree_census(G: Multigraph) -> int:
    _guard(G)
    return len({indegree_sequence(O) for O in enumerate_partial_orientations(G)})


def minimal_indices(G: Multigraph, pair: ReferencePair, cls: OrientationClass) -> list[int]:
    _guard(G)
    test = minimal_predicate(G, pair, cls)
    return [i for i in range(3**G.m) if test(*_masks(i, G.m))]


def canonical_bijection_failures(G: Multigraph, pair: ReferencePair, cls: OrientationClass,
                                 orbit_ids: Optional[Sequence[int]] = None) -> list[int]:
    """Orbit ids where the minimal element is missing, repeated, or not the canonical image."""
    if orbit_ids is None:
        _, orbit_ids = orbit_scan(G, CLASS_MOVES[cls])
    minimal_by_orbit: dict[int, list[int]] = defaultdict(list)
    for i in minimal_indices(G, pair, cls):
        minimal_by_orbit[orbit_ids[i]].append(i)
    bad = set()
    for i, orbit in enumerate(orbit_ids):
        reps = minimal_by_orbit.get(orbit, [])
        if len(reps) != 1:
            bad.add(orbit)
            continue
        fwd, bwd, _ = canonical_masks(G, pair, cls, *_masks(i, G.m))
        if _index(fwd, bwd, G.m) != reps[0]:
            bad.add(orbit)
    return sorted(bad)


# ---------------------------------------------------------------------------
# identity harness
# ---------------------------------------------------------------------------

@dataclass
class IdentityRecord:
    name: str
    params: dict
    formula: object
    brute: object
    seconds: float

    @property
    def equal(self) -> bool:
        return self.formula == self.brute

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "formula": str(self.formula),
            "brute": str(self.brute),
            "equal": self.equal,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class CensusReport:
    graph: dict
    records: list[IdentityRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.equal for r in self.records)

    def failures(self) -> list[IdentityRecord]:
        return [r for r in self.records if not r.equal]

    def to_dict(self) -> dict:
        return {"graph": self.graph, "ok": self.ok, "records": [r.to_dict() for r in self.records]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def format_table(self) -> str:
        lines = []
        for r in self.records:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            mark = "ok  " if r.equal else "FAIL"
            lines.append(f"{mark} {r.name:<34} {params:<28} formula={r.formula} brute={r.brute}")
        return "\n".join(lines)


def graph_descriptor(G: Multigraph) -> dict:
    return {"n": G.n, "m": G.m, "edges": [list(e) for e in G.edges]}


DEFAULT_KL = ((1, 0), (1, 1), (2, 1), (1, 2), (3, 2))


def verify_identities(G: Multigraph, pairs: Optional[Sequence[ReferencePair]] = None,
                      k_l_list: Sequence[tuple[int, int]] = DEFAULT_KL,
                      check_canonical: bool = True) -> CensusReport:
    """Compare every Tutte formula with its brute-force count on ``G``."""
    from .reliability import chromatic_cutmin_probability

    _guard(G)
    require_connected(G)
    pairs = [default_pair(G)] if not pairs else list(pairs)
    report = CensusReport(graph_descriptor(G))
    T = tutte_polynomial(G)

    def record(name, params, formula_fn, brute_fn):
        t0 = time.perf_counter()
        formula = formula_fn()
        brute = brute_fn()
        report.records.append(IdentityRecord(name, params, formula, brute, time.perf_counter() - t0))

    for k, l in k_l_list:
        for cls in FORMULA_CLASSES:
            cls_pairs = pairs if cls in CLASS_KINDS else [None]
            for pi, pair in enumerate(cls_pairs):
                params = {"k": k, "l": l}
                if pair is not None:
                    params["pair"] = pi
                record(f"count/{cls.value}", params,
                       lambda: chromatic_count(G, cls, k, l, T=T),
                       lambda: brute_count(G, cls, pair, k, l))
        p = Fraction(k, 2 * k + l)
        record("reliability/cut-min-probability", {"k": k, "l": l},
               lambda: chromatic_cutmin_probability(G, k, l, T=T),
               lambda: Fraction(brute_count(G, OrientationClass.CUT_MINIMAL, pairs[0], k, l),
                                (2 * k + l) ** G.m))
        if p < 1:
            record("reliability/exact-vs-chromatic", {"k": k, "l": l},
                   lambda: reliability_exact(G, p, T=T),
                   lambda: chromatic_cutmin_probability(G, k, l, T=T))

    n1, g = G.n - 1, genus(G)
    orbits = {cls: orbit_scan(G, CLASS_MOVES[cls]) for cls in MINIMAL_CLASSES}
    record("orbits/cut", {}, lambda: 2**n1 * evaluate(T, 1, 3), lambda: orbits[OrientationClass.CUT_MINIMAL][0])
    record("orbits/cycle", {}, lambda: 2**g * evaluate(T, 3, 1), lambda: orbits[OrientationClass.CYCLE_MINIMAL][0])
    record("orbits/cycle-pivot-vs-indegree", {},
           lambda: indegree_census(G), lambda: orbits[OrientationClass.CYCLE_PATH_MINIMAL][0])
    for pi, pair in enumerate(pairs):
        for cls in MINIMAL_CLASSES:
            record(f"minimal-vs-orbits/{cls.value}", {"pair": pi},
                   lambda: orbits[cls][0], lambda: len(minimal_indices(G, pair, cls)))
            if check_canonical:
                record(f"canonical-bijection/{cls.value}", {"pair": pi},
                       lambda: 0,
                       lambda: len(canonical_bijection_failures(G, pair, cls, orbits[cls][1])))
    return report


def random_pairs(G: Multigraph, count: int, seed: int = 0) -> list[ReferencePair]:
    from .reductions import random_pair

    rng = random.Random(seed)
    return [random_pair(G, rng) for _ in range(count)]
