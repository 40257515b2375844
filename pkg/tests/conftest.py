import random
from itertools import product

import pytest

from dirhomology.graph_core import from_edge_list

# (criterion number, description, passed) recorded by test_acceptance.py
ACCEPTANCE_RESULTS = []

CORPUS_SEEDS = list(range(100))


def random_digraph(seed, max_vertices=7, arc_prob=0.3):
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < arc_prob]
    return from_edge_list(n, arcs)


def grid_specs():
    """All width tuples with 1..4 layers and widths in 1..4 (340 of them)."""
    out = []
    for L in range(1, 5):
        out.extend(product(range(1, 5), repeat=L))
    return out


@pytest.fixture
def cyclic_triangle():
    return from_edge_list(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def transitive_triangle():
    return from_edge_list(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def reciprocal_pair():
    return from_edge_list(2, [(0, 1), (1, 0)])


@pytest.fixture
def record_criterion():
    def record(number, description, passed):
        ACCEPTANCE_RESULTS.append((number, description, bool(passed)))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")


def random_weighted(g, seed, distinct=True):
    """Seeded weights on every arc; magnitudes are distinct when ``distinct``."""
    from decimal import Decimal

    from dirhomology.graph_core import WeightedDigraph

    rng = random.Random(seed)
    arcs = g.sorted_arcs()
    if distinct:
        mags = rng.sample(range(1, 10**6), len(arcs))
    else:
        mags = [rng.randint(1, 5) for _ in arcs]
    weights = {
        a: Decimal(m).scaleb(-4) * rng.choice((1, -1)) for a, m in zip(arcs, mags)
    }
    return WeightedDigraph(g, weights)
