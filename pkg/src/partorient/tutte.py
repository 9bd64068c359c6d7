"""Exact Tutte polynomials and the orientation-counting evaluations built on them.

All evaluations use :class:`fractions.Fraction`; the counting formulas assert
that the rational result is an integer.
"""

from __future__ import annotations

import math
import threading
from enum import Enum
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Mapping, Union

from .multigraph import (
    GraphError,
    Multigraph,
    bridges,
    contract_edge,
    delete_edge,
    genus,
    require_connected,
)

Number = Union[int, Fraction]


class OrientationClass(Enum):
    ACYCLIC = "acyclic"
    STRONGLY_CONNECTED = "strong"
    CUT_MINIMAL = "cut-min"
    CYCLE_MINIMAL = "cycle-min"
    CYCLE_CUT_MINIMAL = "cycle-cut-min"
    CYCLE_PATH_MINIMAL = "cycle-path-min"
    ALL = "all"


FORMULA_CLASSES = (
    OrientationClass.ACYCLIC,
    OrientationClass.STRONGLY_CONNECTED,
    OrientationClass.CUT_MINIMAL,
    OrientationClass.CYCLE_MINIMAL,
)


class TuttePolynomial:
    """Bivariate polynomial with nonnegative integer coefficients, keyed by (x-degree, y-degree)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] = None):
        clean = {}
        for (i, j), c in (coeffs or {}).items():
            if c:
                clean[(int(i), int(j))] = int(c)
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def one(cls) -> "TuttePolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def from_triples(cls, triples: Iterable) -> "TuttePolynomial":
        return cls({(int(i), int(j)): int(c) for i, j, c in triples})

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._coeffs.get(key, 0)

    def __add__(self, other: "TuttePolynomial") -> "TuttePolynomial":
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return TuttePolynomial(out)

    def shift(self, dx: int = 0, dy: int = 0) -> "TuttePolynomial":
        """Multiply by ``x**dx * y**dy``."""
        return TuttePolynomial({(i + dx, j + dy): c for (i, j), c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TuttePolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __call__(self, x: Number, y: Number) -> Fraction:
        return evaluate(self, x, y)

    def to_triples(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in self._coeffs.items()]

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self._coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(
                f"{var}^{d}" if d > 1 else var for var, d in (("x", i), ("y", j)) if d
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"TuttePolynomial({self})"


def evaluate(T: TuttePolynomial, x: Number, y: Number) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    total = Fraction(0)
    for (i, j), c in T.coeffs.items():
        total += c * x**i * y**j
    return total


# ---------------------------------------------------------------------------
# memo keys
# ---------------------------------------------------------------------------

_MAX_LABELINGS = 5040


def _edge_signature(G: Multigraph, label: Mapping[int, int]) -> tuple:
    return tuple(sorted(tuple(sorted((label[u], label[v]))) for u, v in G.edges))


def minor_key(G: Multigraph) -> tuple:
    """Isomorphism-invariant memo key.

    Vertices are split into classes by (degree, loops, neighbour degrees); when
    the number of class-respecting labelings is small the lexicographically
    least relabelled edge list is used, otherwise a relabelling by class only.
    Equal keys always mean isomorphic graphs, so a weak key costs cache hits,
    never correctness.
    """
    deg = [0] * G.n
    loops = [0] * G.n
    for u, v in G.edges:
        deg[u] += 1
        deg[v] += 1
        if u == v:
            loops[u] += 1
    colour = {
        v: (deg[v], loops[v], tuple(sorted(deg[G.other_end(f, v)] for f in G.incidence[v])))
        for v in range(G.n)
    }
    classes: dict[tuple, list[int]] = {}
    for v in range(G.n):
        classes.setdefault(colour[v], []).append(v)
    blocks = [classes[c] for c in sorted(classes)]
    count = math.prod(math.factorial(len(b)) for b in blocks)
    if G.n <= 10 and count <= _MAX_LABELINGS:
        best = None
        for choice in product(*(permutations(b) for b in blocks)):
            label = {}
            nxt = 0
            for block in choice:
                for v in block:
                    label[v] = nxt
                    nxt += 1
            sig = _edge_signature(G, label)
            if best is None or sig < best:
                best = sig
        return ("canon", G.n, best)
    label = {}
    nxt = 0
    for block in blocks:
        for v in block:
            label[v] = nxt
            nxt += 1
    return ("coarse", G.n, _edge_signature(G, label))


class TutteCache:
    """Memo map with atomic get-or-insert."""

    def __init__(self):
        self._data: dict[tuple, TuttePolynomial] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            value = self._data.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def setdefault(self, key, value: TuttePolynomial) -> TuttePolynomial:
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._data)


DEFAULT_CACHE = TutteCache()


def _tutte(G: Multigraph, cache) -> TuttePolynomial:
    if G.m == 0:
        return TuttePolynomial.one()
    key = None
    if cache is not None:
        key = minor_key(G)
        hit = cache.get(key)
        if hit is not None:
            return hit
    br = bridges(G)
    ordinary = [e for e in range(G.m) if e not in br and not G.is_loop(e)]
    if ordinary:
        e = ordinary[-1]
        result = _tutte(delete_edge(G, e).graph, cache) + _tutte(contract_edge(G, e).graph, cache)
    else:
        n_loops = sum(1 for e in range(G.m) if G.is_loop(e))
        result = TuttePolynomial.one().shift(len(br), n_loops)
    if cache is not None:
        result = cache.setdefault(key, result)
    return result


def tutte_polynomial(G: Multigraph, cache: TutteCache | None = DEFAULT_CACHE) -> TuttePolynomial:
    """Tutte polynomial by deletion-contraction on the highest-id ordinary edge.

    Pass ``cache=None`` to disable memoisation.
    """
    require_connected(G)
    return _tutte(G, cache)


def _rank(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    r = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            r += 1
    return r


def tutte_by_subsets(G: Multigraph) -> TuttePolynomial:
    """Rank-nullity expansion over all edge subsets; exponential, for checking."""
    require_connected(G)
    full = _rank(G.n, G.edges)
    out: dict[tuple[int, int], int] = {}
    for mask in range(1 << G.m):
        sub = [G.edges[i] for i in range(G.m) if mask >> i & 1]
        r = _rank(G.n, sub)
        a, b = full - r, len(sub) - r
        # (x-1)^a (y-1)^b expanded
        for i in range(a + 1):
            ci = math.comb(a, i) * (-1) ** (a - i)
            for j in range(b + 1):
                out[(i, j)] = out.get((i, j), 0) + ci * math.comb(b, j) * (-1) ** (b - j)
    if any(c < 0 for c in out.values()):
        raise ArithmeticError("negative Tutte coefficient from subset expansion")
    return TuttePolynomial(out)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to non-integer {value}")
    return value.numerator


def chromatic_count(G: Multigraph, cls: OrientationClass, k: int = 1, l: int = 1,
                    T: TuttePolynomial | None = None) -> int:
    """Number of (k,l)-chromatic partial orientations in ``cls``.

    Oriented edges take one of ``k`` colours and unoriented edges one of ``l``.
    With ``k=l=1`` this is the plain count; ``l=0`` counts full orientations.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if l < 0:
        raise ValueError("l must be nonnegative")
    if cls is OrientationClass.ALL:
        return (2 * k + l) ** G.m
    if cls not in FORMULA_CLASSES:
        raise ValueError(f"no Tutte formula for class {cls.value!r}")
    require_connected(G)
    if T is None:
        T = tutte_polynomial(G)
    n1, g = G.n - 1, genus(G)
    big = Fraction(2 * k + l, k)
    if cls is OrientationClass.ACYCLIC:
        value = k**n1 * (k + l) ** g * evaluate(T, big, Fraction(l, k + l))
    elif cls is OrientationClass.STRONGLY_CONNECTED:
        value = (k + l) ** n1 * k**g * evaluate(T, Fraction(l, k + l), big)
    elif cls is OrientationClass.CYCLE_MINIMAL:
        value = k**n1 * (k + l) ** g * evaluate(T, big, 1)
    else:
        value = (k + l) ** n1 * k**g * evaluate(T, 1, big)
    return _as_int(value, f"{cls.value} count")


def reliability_exact(G: Multigraph, p: Number, T: TuttePolynomial | None = None) -> Fraction:
    """All-terminal reliability when every edge fails independently with probability ``p``."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    require_connected(G)
    if T is None:
        T = tutte_polynomial(G)
    return (1 - p) ** (G.n - 1) * p ** genus(G) * evaluate(T, 1, 1 / p)


__all__ = [
    "FORMULA_CLASSES",
    "GraphError",
    "OrientationClass",
    "TutteCache",
    "TuttePolynomial",
    "chromatic_count",
    "evaluate",
    "minor_key",
    "reliability_exact",
    "tutte_by_subsets",
    "tutte_polynomial",
]
