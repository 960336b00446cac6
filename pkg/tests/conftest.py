import numpy as np
import pytest
from hypothesis import strategies as st

from coronaqec import Graph, complete, cycle, disjoint_union, empty, make_family, path
from coronaqec.theorems import complete_bipartite

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, keep in zip(pairs, mask) if keep}
    if connected and n > 1:
        # attach each vertex to some earlier one
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph(n, sorted(edges))


def corpus_graphs() -> list[Graph]:
    """Small named graphs used across the spectral and omega/psi tests."""
    gs = [complete(n) for n in range(1, 6)]
    gs += [empty(n) for n in range(1, 5)]
    gs += [path(n) for n in range(2, 7)]
    gs += [cycle(n) for n in range(3, 8)]
    gs += [make_family("disjoint-union-of-completes", [p, q]) for p, q in ((2, 2), (2, 3), (3, 2))]
    gs += [disjoint_union(complete(1), complete(2)), disjoint_union(complete(2), complete(3), complete(3)),
           disjoint_union(cycle(4), cycle(4), label="2C4"), disjoint_union(path(3), complete(1))]
    gs += [complete_bipartite(1, 3), complete_bipartite(2, 3), complete_bipartite(3, 3)]
    return gs


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
