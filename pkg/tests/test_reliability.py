from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import partorient.reliability as rel
from partorient.reliability import (
    McConfig,
    chromatic_cutmin_probability,
    draw_words,
    mc_cutminimal,
    mc_subgraph,
    parse_probability,
    reliability,
    reliability_exact,
)
from partorient.reductions import q_connected_pair
from conftest import SUITE

TARGET = Fraction(20, 27)


def within(est, target, sigmas=4):
    return abs(est.estimate - float(target)) <= sigmas * est.stderr


def test_parse_probability():
    assert parse_probability("1/3") == Fraction(1, 3)
    assert parse_probability("0.25") == Fraction(1, 4)
    with pytest.raises(ValueError):
        parse_probability("third")


def test_chromatic_probability_examples():
    assert chromatic_cutmin_probability(SUITE["k3"], 1, 1) == Fraction(20, 27)
    assert chromatic_cutmin_probability(SUITE["k3"], 1, 0) == Fraction(1, 2)
    for k, l in ((1, 1), (2, 3)):
        assert chromatic_cutmin_probability(SUITE["path"], k, l) == Fraction(k + l, 2 * k + l) ** 3


def test_subgraph_estimator_k3():
    est = mc_subgraph(SUITE["k3"], McConfig(100_000, 11, Fraction(1, 3)))
    assert within(est, TARGET)


def test_cutmin_estimator_k3():
    est = mc_cutminimal(SUITE["k3"], McConfig(100_000, 11, Fraction(1, 3)))
    assert within(est, TARGET)


def test_cutmin_at_half():
    est = mc_cutminimal(SUITE["k3"], McConfig(40_000, 2, Fraction(1, 2)))
    assert within(est, Fraction(1, 2))


def test_tree_estimates():
    p = Fraction(1, 5)
    target = (1 - p) ** 3
    assert within(mc_subgraph(SUITE["star"], McConfig(40_000, 4, p)), target)
    assert within(mc_cutminimal(SUITE["path"], McConfig(40_000, 4, p), q_connected_pair(SUITE["path"], 2)), target)


def test_small_p_near_one():
    est = mc_subgraph(SUITE["k4"], McConfig(5_000, 1, Fraction(1, 10**6)))
    assert est.estimate > 0.999


def test_range_checks():
    with pytest.raises(ValueError):
        mc_cutminimal(SUITE["k3"], McConfig(10, 0, Fraction(2, 3)))
    with pytest.raises(ValueError):
        mc_subgraph(SUITE["k3"], McConfig(10, 0, Fraction(1)))
    with pytest.raises(ValueError):
        McConfig(0, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        reliability(SUITE["k3"], Fraction(1, 3), method="bogus")


def test_seed_reproducible():
    cfg = McConfig(30_000, 99, Fraction(1, 3))
    assert mc_subgraph(SUITE["k4"], cfg) == mc_subgraph(SUITE["k4"], cfg)
    assert mc_cutminimal(SUITE["k4"], cfg) == mc_cutminimal(SUITE["k4"], cfg)
    assert mc_subgraph(SUITE["k4"], cfg) != mc_subgraph(SUITE["k4"], McConfig(30_000, 100, Fraction(1, 3)))


def test_chunk_size_does_not_matter(monkeypatch):
    cfg = McConfig(5_000, 5, Fraction(1, 3))
    base = (mc_subgraph(SUITE["k4"], cfg), mc_cutminimal(SUITE["k4"], cfg))
    monkeypatch.setattr(rel, "_CHUNK", 777)
    assert (mc_subgraph(SUITE["k4"], cfg), mc_cutminimal(SUITE["k4"], cfg)) == base


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(0, 50), st.integers(1, 60), st.integers(1, 9))
def test_draw_words_partition(seed, start, length, m):
    whole = draw_words(seed, start, start + length, m)
    cut = length // 2
    parts = np.vstack([draw_words(seed, start, start + cut, m), draw_words(seed, start + cut, start + length, m)])
    assert np.array_equal(whole, parts)


def test_dispatch():
    assert reliability(SUITE["k3"], "1/3") == TARGET
    assert reliability_exact(SUITE["k3"], Fraction(1, 3)) == TARGET
    est = reliability(SUITE["k3"], Fraction(1, 3), method="mc-subgraph", trials=1000, seed=3)
    assert est.trials == 1000 and est.seed == 3
