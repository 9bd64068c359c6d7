import pytest

from partorient.multigraph import build

SUITE_EDGES = {
    "edge": (2, [(0, 1)]),
    "loop": (1, [(0, 0)]),
    "path": (4, [(0, 1), (1, 2), (2, 3)]),
    "star": (4, [(0, 1), (0, 2), (0, 3)]),
    "k3": (3, [(0, 1), (1, 2), (2, 0)]),
    "theta": (2, [(0, 1), (0, 1), (0, 1)]),
    "double_loop": (2, [(0, 1), (0, 1), (1, 1)]),
    "k3_pendant": (4, [(0, 1), (1, 2), (2, 0), (2, 3)]),
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
}

SUITE = {name: build(n, edges) for name, (n, edges) in SUITE_EDGES.items()}


@pytest.fixture(params=sorted(SUITE))
def suite_graph(request):
    return SUITE[request.param]


@pytest.fixture
def k3():
    return SUITE["k3"]
