"""Shared fixtures: small named graphs and seeded random generators.

Random graphs here are built with plain Bernoulli draws per node pair,
independent of the package's own simulators, so generator bugs cannot mask
estimator bugs (or the reverse).
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from ccmselect import Graph, NodeType


def er_graph(n, p, seed, n_primary=None):
    """Bernoulli(p) per pair; typed when n_primary is given."""
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    ids = [f"x{i}" for i in range(n)]
    types = None
    if n_primary is not None:
        types = [NodeType.PRIMARY] * n_primary + [NodeType.SPECIALTY] * (n - n_primary)
    return Graph.build(ids, edges, node_type=types)


def typed_types(n, n_primary):
    return [NodeType.PRIMARY] * n_primary + [NodeType.SPECIALTY] * (n - n_primary)


@pytest.fixture
def single_edge():
    return Graph.build(["a", "b"], [(0, 1)])


@pytest.fixture
def path3():
    return Graph.build(["a", "b", "c"], [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return Graph.build(["a", "b", "c"], [(0, 1), (0, 2), (1, 2)])
