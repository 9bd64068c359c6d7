"""All-terminal reliability: exact values and two Monte Carlo estimators.

Randomness comes from numpy's counter-based Philox generator.  Trial ``t``
reads the block of words starting at counter ``t * blocks_per_trial``, so
any range of trials can be drawn on its own and estimates do not depend on
how the trials are chunked.  Probabilities stay exact rationals: an event
of probability ``p`` is ``u < ceil(p * 2**64)`` for a uniform 64-bit ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .multigraph import Multigraph, require_connected
from .reductions import ReferencePair, default_pair, minimal_predicate
from .tutte import OrientationClass, TuttePolynomial, chromatic_count, reliability_exact

_TWO64 = 1 << 64
_CHUNK = 1 << 16

Probability = Union[Fraction, int, str]


@dataclass(frozen=True)
class McConfig:
    trials: int
    seed: int
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0 <= self.seed < _TWO64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    trials: int
    seed: int
    successes: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
        }


def parse_probability(text: str) -> Fraction:
    """``"a/b"`` or a decimal string, kept exact."""
    return Fraction(text.strip())


def _threshold(p: Fraction) -> int:
    return -(-(p.numerator << 64) // p.denominator)


def _below(u: np.ndarray, threshold: int) -> np.ndarray:
    if threshold >= _TWO64:
        return np.ones(u.shape, dtype=bool)
    return u < np.uint64(threshold)


def draw_words(seed: int, start: int, stop: int, m: int) -> np.ndarray:
    """Uniform 64-bit words for trials ``start..stop-1``, shape ``(stop-start, m)``."""
    blocks = max(1, -(-m // 4))
    gen = np.random.Philox(key=seed, counter=start * blocks)
    raw = gen.random_raw((stop - start) * blocks * 4)
    return raw.reshape(stop - start, blocks * 4)[:, :m]


def _pack(bits: np.ndarray) -> np.ndarray:
    m = bits.shape[1]
    weights = np.left_shift(np.uint64(1), np.arange(m, dtype=np.uint64))
    return (bits.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def _estimate(successes: int, cfg: McConfig) -> McEstimate:
    est = successes / cfg.trials
    return McEstimate(est, math.sqrt(est * (1 - est) / cfg.trials), cfg.trials, cfg.seed, successes)


def _check_size(G: Multigraph) -> None:
    if G.m > 63:
        raise ValueError("Monte Carlo estimators support at most 63 edges")


def _spans(G: Multigraph, mask: int) -> bool:
    parent = list(range(G.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    parts = G.n
    for e, (u, v) in enumerate(G.edges):
        if mask >> e & 1:
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                parts -= 1
    return parts == 1


def mc_subgraph(G: Multigraph, cfg: McConfig) -> McEstimate:
    """Delete each edge with probability ``p``; success when the survivors connect every vertex."""
    require_connected(G)
    _check_size(G)
    if not 0 < cfg.p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    t_del = _threshold(cfg.p)
    verdict: dict[int, bool] = {}
    successes = 0
    for start in range(0, cfg.trials, _CHUNK):
        stop = min(cfg.trials, start + _CHUNK)
        u = draw_words(cfg.seed, start, stop, G.m)
        kept = _pack(~_below(u, t_del))
        masks, counts = np.unique(kept, return_counts=True)
        for mask, count in zip(masks.tolist(), counts.tolist()):
            if mask not in verdict:
                verdict[mask] = _spans(G, mask)
            if verdict[mask]:
                successes += count
    return _estimate(successes, cfg)


def mc_cutminimal(G: Multigraph, cfg: McConfig, pair: Optional[ReferencePair] = None) -> McEstimate:
    """Orient each edge forward or backward with probability ``p`` each; success when cut minimal."""
    require_connected(G)
    _check_size(G)
    if not 0 < cfg.p <= Fraction(1, 2):
        raise ValueError("p must lie in (0, 1/2]")
    pair = default_pair(G) if pair is None else pair
    minimal = minimal_predicate(G, pair, OrientationClass.CUT_MINIMAL)
    t_fwd, t_any = _threshold(cfg.p), _threshold(2 * cfg.p)
    verdict: dict[tuple[int, int], bool] = {}
    successes = 0
    for start in range(0, cfg.trials, _CHUNK):
        stop = min(cfg.trials, start + _CHUNK)
        u = draw_words(cfg.seed, start, stop, G.m)
        fwd = _below(u, t_fwd)
        bwd = _below(u, t_any) & ~fwd
        packed = np.stack([_pack(fwd), _pack(bwd)], axis=1)
        rows, counts = np.unique(packed, axis=0, return_counts=True)
        for (f, b), count in zip(rows.tolist(), counts.tolist()):
            if (f, b) not in verdict:
                verdict[(f, b)] = minimal(f, b)
            if verdict[(f, b)]:
                successes += count
    return _estimate(successes, cfg)


def chromatic_cutmin_probability(G: Multigraph, k: int, l: int,
                                 T: Optional[TuttePolynomial] = None) -> Fraction:
    """Probability that a uniform (k,l)-chromatic partial orientation is cut minimal."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    count = chromatic_count(G, OrientationClass.CUT_MINIMAL, k, l, T=T)
    return Fraction(count, (2 * k + l) ** G.m)


def reliability(G: Multigraph, p: Probability, method: str = "exact", trials: int = 100_000,
                seed: int = 0, pair: Optional[ReferencePair] = None):
    """Dispatch on ``method``: ``exact``, ``mc-subgraph`` or ``mc-cutmin``."""
    p = Fraction(p)
    if method == "exact":
        return reliability_exact(G, p)
    cfg = McConfig(trials, seed, p)
    if method == "mc-subgraph":
        return mc_subgraph(G, cfg)
    if method == "mc-cutmin":
        return mc_cutminimal(G, cfg, pair)
    raise ValueError(f"unknown method {method!r}")


__all__ = [
    "McConfig",
    "McEstimate",
    "chromatic_cutmin_probability",
    "draw_words",
    "mc_cutminimal",
    "mc_subgraph",
    "parse_probability",
    "reliability",
    "reliability_exact",
]
