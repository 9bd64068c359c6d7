import json

import pytest
from hypothesis import given, settings

from partorient.census import (
    CLASS_MOVES,
    EnumerationLimit,
    Move,
    brute_count,
    canonical_bijection_failures,
    cycles_by_subsets,
    directed_cuts_by_subsets,
    indegree_census,
    minimal_indices,
    orbit_scan,
    random_pairs,
    verify_identities,
)
from partorient.multigraph import build
from partorient.orientations import State, enumerate_partial_orientations
from partorient.reductions import (
    MINIMAL_CLASSES,
    apply_cut_reversal,
    apply_edge_pivot,
    default_pair,
)
from partorient.tutte import OrientationClass
from strategies import connected_multigraphs
from conftest import SUITE


def test_brute_count_examples():
    k3 = SUITE["k3"]
    assert brute_count(k3, OrientationClass.ACYCLIC) == 25
    assert brute_count(k3, OrientationClass.STRONGLY_CONNECTED) == 15
    assert brute_count(k3, OrientationClass.ALL, k=1, l=0) == 8


def test_orbit_examples():
    assert orbit_scan(SUITE["k3"], {Move.CYCLE_REVERSAL})[0] == 26
    assert orbit_scan(SUITE["path"], {Move.CUT_REVERSAL})[0] == 8
    k3 = SUITE["k3"]
    assert orbit_scan(k3, {Move.CYCLE_REVERSAL, Move.EDGE_PIVOT})[0] == indegree_census(k3)
    with pytest.raises(ValueError):
        orbit_scan(k3, set())


def test_indegree_census_known_values():
    assert indegree_census(SUITE["path"]) == 21
    assert indegree_census(SUITE["star"]) == 20
    assert indegree_census(SUITE["edge"]) == 3


def test_identity_spot_values():
    for name, acyclic, strong, cut, cycle in (
        ("k3", 25, 15, 20, 26),
        ("k4", 543, 543, 624, 624),
        ("theta", 15, 25, 26, 20),
    ):
        G = SUITE[name]
        assert brute_count(G, OrientationClass.ACYCLIC) == acyclic
        assert brute_count(G, OrientationClass.STRONGLY_CONNECTED) == strong
        assert brute_count(G, OrientationClass.CUT_MINIMAL) == cut
        assert brute_count(G, OrientationClass.CYCLE_MINIMAL) == cycle


def test_enumeration_guard():
    big = build(2, [(0, 1)] * 15)
    with pytest.raises(EnumerationLimit):
        brute_count(big, OrientationClass.ACYCLIC)


def test_verify_k3_report():
    report = verify_identities(SUITE["k3"], [default_pair(SUITE["k3"])] + random_pairs(SUITE["k3"], 2, 1))
    assert report.ok, report.format_table()
    data = json.loads(report.to_json())
    assert data["ok"] is True
    assert all(isinstance(r["formula"], str) and isinstance(r["brute"], str) for r in data["records"])


def test_verify_whole_suite(suite_graph):
    report = verify_identities(suite_graph, random_pairs(suite_graph, 2, 7))
    assert report.ok, report.format_table()


def _bfs_orbits(G, moves):
    """Orbit ids via explicit move application; independent of the bitmask scan."""
    states = list(enumerate_partial_orientations(G))
    cycles = cycles_by_subsets(G)
    orbit = {}
    for start in states:
        if start in orbit:
            continue
        orbit[start] = start.index
        stack = [start]
        while stack:
            O = stack.pop()
            nbrs = []
            if Move.CUT_REVERSAL in moves:
                nbrs += [apply_cut_reversal(O, X) for X in directed_cuts_by_subsets(O)]
            if Move.CYCLE_REVERSAL in moves:
                for edges, sts in cycles:
                    if all(O.states[e] == s for e, s in zip(edges, sts)):
                        nbrs.append(O.with_states({e: State(3 - s) for e, s in zip(edges, sts)}))
            if Move.EDGE_PIVOT in moves:
                for v in range(G.n):
                    for e in G.incidence[v]:
                        for ep in G.incidence[v]:
                            for ls in (1, 2):
                                try:
                                    nbrs.append(apply_edge_pivot(O, e, ep, v, ls))
                                except ValueError:
                                    pass
            for N in nbrs:
                if N not in orbit:
                    orbit[N] = start.index
                    stack.append(N)
    return len(set(orbit.values())), orbit


@pytest.mark.parametrize("name", ["edge", "loop", "path", "star", "k3", "theta", "double_loop"])
def test_orbit_scan_matches_bfs(name):
    G = SUITE[name]
    for moves in set(CLASS_MOVES.values()):
        count, ids = orbit_scan(G, moves)
        bfs_count, orbit = _bfs_orbits(G, moves)
        assert count == bfs_count
        for O, root in orbit.items():
            assert ids[O.index] == ids[root]


@settings(max_examples=25, deadline=None)
@given(connected_multigraphs(max_n=4, max_extra=2))
def test_minimal_states_pick_one_per_orbit(G):
    for pair in [default_pair(G)] + random_pairs(G, 2, G.m):
        for cls in MINIMAL_CLASSES:
            count, ids = orbit_scan(G, CLASS_MOVES[cls])
            assert len(minimal_indices(G, pair, cls)) == count
            assert canonical_bijection_failures(G, pair, cls, ids) == []
