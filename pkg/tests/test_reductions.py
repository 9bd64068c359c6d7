import random

import pytest
from hypothesis import given, settings, strategies as st

from partorient.census import CLASS_MOVES, orbit_scan
from partorient.multigraph import build
from partorient.orientations import (
    B,
    F,
    U,
    DirectedCycleWitness,
    PartialOrientation,
    find_directed_cut,
    find_directed_cycle,
    indegree_sequence,
)
from partorient.reductions import (
    DecomposeMode,
    HalfOpenPath,
    MINIMAL_CLASSES,
    ReferencePair,
    WitnessKind,
    apply_cascade,
    apply_cut_reversal,
    apply_cycle_reversal,
    apply_edge_pivot,
    canonical_rep,
    decompose_difference,
    default_pair,
    enumerate_half_open_paths,
    find_nonminimal,
    is_cut_minimal,
    is_cycle_minimal,
    is_half_open_path,
    is_minimal,
    monomial_encoding,
    q_connected_pair,
    random_pair,
    replay_witnesses,
)
from partorient.tutte import OrientationClass
from strategies import graph_and_state
from conftest import SUITE

ALL_KINDS = {WitnessKind.CUT, WitnessKind.CYCLE, WitnessKind.HALF_OPEN_PATH}


def po(G, text):
    return PartialOrientation.from_string(G, text)


def test_default_pair():
    pair = default_pair(SUITE["k3"])
    assert pair.order == (0, 1, 2) and pair.reversed == (False,) * 3
    assert default_pair(build(1, [])).order == ()


def test_pair_text_roundtrip():
    pair = random_pair(SUITE["k4"], random.Random(3))
    assert ReferencePair.from_text(pair.to_text()) == pair
    assert default_pair(SUITE["k3"]).to_text() == "order: 0,1,2\nreference: aaa"
    with pytest.raises(ValueError):
        ReferencePair((0, 0), (False, False))


def test_q_connected_examples():
    pair = q_connected_pair(SUITE["path"], 0)
    assert pair.order == (0, 1, 2) and pair.reversed == (False,) * 3
    star = q_connected_pair(SUITE["star"], 0)
    assert star.reversed == (False,) * 3
    k3 = q_connected_pair(SUITE["k3"], 0)
    assert k3.order == (0, 2, 1)
    assert k3.reference_state(0) == F and k3.reference_state(2) == B


def test_cut_reversal_examples():
    G = SUITE["edge"]
    assert str(apply_cut_reversal(po(G, "+"), {0})) == "-"
    assert str(apply_cut_reversal(po(SUITE["k3"], "-0+"), {1, 2})) == "+0-"
    with pytest.raises(ValueError):
        apply_cut_reversal(po(SUITE["k3"], "-0+"), {1})


def test_cycle_reversal_examples():
    k3 = po(SUITE["k3"], "+++")
    w = find_directed_cycle(k3)
    assert str(apply_cycle_reversal(k3, w)) == "---"
    back = apply_cycle_reversal(k3, w)
    assert apply_cycle_reversal(back, find_directed_cycle(back)) == k3
    loop = po(SUITE["loop"], "+")
    assert str(apply_cycle_reversal(loop, find_directed_cycle(loop))) == "-"


def test_pivot_examples():
    P2 = build(3, [(0, 1), (1, 2)])
    assert str(apply_edge_pivot(po(P2, "+0"), 1, 0, 1)) == "0-"
    assert str(apply_edge_pivot(po(SUITE["star"], "-00"), 1, 0, 0)) == "0-0"
    loop_edge = build(2, [(0, 0), (0, 1)])
    out = apply_edge_pivot(po(loop_edge, "+0"), 1, 0, 0)
    assert str(out) == "0-"
    assert indegree_sequence(out) == indegree_sequence(po(loop_edge, "+0"))
    with pytest.raises(ValueError):
        apply_edge_pivot(po(P2, "+0"), 1, 0, 2)


def test_loop_pivots_preserve_indegree():
    G = build(2, [(0, 0), (0, 1)])
    for O in (po(G, s) for s in ("+0", "-0", "0+", "0-")):
        for v in range(2):
            for e, e_prime in ((0, 1), (1, 0)):
                for ls in (F, B):
                    try:
                        out = apply_edge_pivot(O, e, e_prime, v, ls)
                    except ValueError:
                        continue
                    assert indegree_sequence(out) == indegree_sequence(O)


def test_cascade_examples():
    P2 = build(3, [(0, 1), (1, 2)])
    path = HalfOpenPath((0, 1, 2), (0, 1), (F, F))
    assert is_half_open_path(po(P2, "+0"), path)
    assert str(apply_cascade(po(P2, "+0"), path)) == "0-"
    star = HalfOpenPath((1, 0, 2), (0, 1), (B, F))
    assert str(apply_cascade(po(SUITE["star"], "-00"), star)) == "0-0"


def test_nonminimal_examples():
    k3 = SUITE["k3"]
    pair = default_pair(k3)
    assert find_nonminimal(PartialOrientation.unoriented(k3), pair, ALL_KINDS) is None
    k4_pair = random_pair(SUITE["k4"], random.Random(5))
    A = k4_pair.reference_orientation(SUITE["k4"])
    assert is_cut_minimal(A, k4_pair) and is_cycle_minimal(A, k4_pair)
    w = find_nonminimal(po(k3, "---"), pair, WitnessKind.CYCLE)
    assert isinstance(w, DirectedCycleWitness) and set(w.edges) == {0, 1, 2}


def test_canonical_examples():
    rep, trace = canonical_rep(po(SUITE["path"], "-0+"), default_pair(SUITE["path"]),
                               OrientationClass.CUT_MINIMAL)
    assert str(rep) == "+0+" and len(trace) == 1
    rep, _ = canonical_rep(po(SUITE["k3"], "---"), default_pair(SUITE["k3"]),
                           OrientationClass.CYCLE_MINIMAL)
    assert str(rep) == "+++"
    rep, trace = canonical_rep(po(SUITE["star"], "-00"), default_pair(SUITE["star"]),
                               OrientationClass.CYCLE_PATH_MINIMAL)
    assert str(rep) == "00-" and len(trace) == 2
    with pytest.raises(ValueError):
        canonical_rep(po(SUITE["k3"], "---"), default_pair(SUITE["k3"]), OrientationClass.ACYCLIC)


def test_half_open_path_examples():
    star = SUITE["star"]
    assert enumerate_half_open_paths(po(star, "+++")) == []
    assert enumerate_half_open_paths(PartialOrientation.unoriented(star)) == []
    found = enumerate_half_open_paths(po(star, "-00"))
    assert sorted(p.edges for p in found) == [(0, 1), (0, 2)]
    assert all(p.vertices[:2] == (1, 0) for p in found)


def test_decompose_examples():
    k3 = SUITE["k3"]
    assert decompose_difference(po(k3, "+-0"), po(k3, "+-0")) == []
    ws = decompose_difference(po(k3, "+++"), po(k3, "---"))
    assert len(ws) == 1 and isinstance(ws[0], DirectedCycleWitness)
    star = SUITE["star"]
    ws = decompose_difference(po(star, "-00"), po(star, "0-0"))
    assert len(ws) == 1 and isinstance(ws[0], HalfOpenPath)
    with pytest.raises(ValueError):
        decompose_difference(po(k3, "+00"), po(k3, "000"))


def test_decompose_cuts():
    G = SUITE["k4"]
    O1 = po(G, "++++++")
    O2 = apply_cut_reversal(apply_cut_reversal(O1, {0}), {1})
    ws = decompose_difference(O1, O2, DecomposeMode.CUT_ONLY)
    assert replay_witnesses(O1, ws) == O2


def test_monomial_examples():
    k3 = SUITE["k3"]
    pair = default_pair(k3)
    assert monomial_encoding(PartialOrientation.unoriented(k3), pair) == (0,) * 6
    assert monomial_encoding(pair.reference_orientation(k3), pair) == (1, 1, 1, 0, 0, 0)
    assert monomial_encoding(po(SUITE["edge"], "-"), default_pair(SUITE["edge"])) == (0, 1)


def test_cascade_reverses_every_edge(suite_graph):
    for O in [PartialOrientation.from_index(suite_graph, i) for i in range(3**suite_graph.m)]:
        for P in enumerate_half_open_paths(O):
            assert P.is_simple and P.reversed().is_simple
            out = apply_cascade(O, P)
            assert indegree_sequence(out) == indegree_sequence(O)
            assert out.states[P.edges[0]] == U
            assert out.states[P.terminal] == (B if P.states[-1] == F else F)


def _pairs(draw_seed, G):
    return random_pair(G, random.Random(draw_seed))


@settings(max_examples=150, deadline=None)
@given(graph_and_state(), st.integers(0, 10**6), st.sampled_from(MINIMAL_CLASSES))
def test_canonical_properties(case, seed, cls):
    G, O = case
    pair = _pairs(seed, G)
    rep, trace = canonical_rep(O, pair, cls)
    assert is_minimal(rep, pair, cls)
    assert trace.replay(O) == rep
    again, again_trace = canonical_rep(rep, pair, cls)
    assert again == rep and len(again_trace) == 0
    randomized, _ = canonical_rep(O, pair, cls, rng=random.Random(seed))
    assert randomized == rep
    if cls is OrientationClass.CYCLE_PATH_MINIMAL:
        assert indegree_sequence(rep) == indegree_sequence(O)


@settings(max_examples=60, deadline=None)
@given(graph_and_state(max_n=3, max_extra=2), st.integers(0, 10**6), st.sampled_from(MINIMAL_CLASSES))
def test_canonical_stays_in_orbit(case, seed, cls):
    G, O = case
    pair = _pairs(seed, G)
    _, ids = orbit_scan(G, CLASS_MOVES[cls])
    rep, _ = canonical_rep(O, pair, cls)
    assert ids[rep.index] == ids[O.index]


@settings(max_examples=150, deadline=None)
@given(graph_and_state(), st.integers(0, 10**6))
def test_decompose_cycle_pivot_properties(case, seed):
    G, O1 = case
    rng = random.Random(seed)
    # walk a few random moves to get an equivalent target
    O2 = O1
    for _ in range(4):
        moves = [w for w in enumerate_half_open_paths(O2)]
        cyc = find_directed_cycle(O2)
        if cyc is not None:
            moves.append(cyc)
        if not moves:
            break
        w = rng.choice(moves)
        O2 = apply_cascade(O2, w) if isinstance(w, HalfOpenPath) else apply_cycle_reversal(O2, w)
    ws = decompose_difference(O1, O2)
    assert replay_witnesses(O1, ws) == O2
    used = [e for w in ws for e in w.edges]
    assert len(used) == len(set(used))


@settings(max_examples=150, deadline=None)
@given(graph_and_state(), st.integers(0, 10**6))
def test_decompose_cut_properties(case, seed):
    G, O1 = case
    rng = random.Random(seed)
    O2 = O1
    for _ in range(4):
        w = find_directed_cut(O2)
        if w is None:
            break
        O2 = apply_cut_reversal(O2, w.X)
        if rng.random() < 0.3:
            break
    ws = decompose_difference(O1, O2, DecomposeMode.CUT_ONLY)
    assert replay_witnesses(O1, ws) == O2
    used = [e for w in ws for e in w.edges]
    assert len(used) == len(set(used))


@settings(max_examples=150, deadline=None)
@given(graph_and_state(), st.integers(0, 10**6))
def test_monomial_properties(case, seed):
    G, O = case
    pair = _pairs(seed, G)
    vec = monomial_encoding(O, pair)
    assert set(vec) <= {0, 1}
    assert sum(vec) == O.num_oriented
    assert all(not (vec[i] and vec[G.m + i]) for i in range(G.m))
