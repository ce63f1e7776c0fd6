"""Synthetic network generators, one per generative model family.

All mechanisms draw from a counter-seeded generator so a (mechanism, n,
seed) triple always yields the same network regardless of platform.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .enumeration import erdos_gallai_check
from .errors import DomainError, NumericError
from .graph import Graph, NodeType

__all__ = [
    "ErdosRenyi",
    "ExponentialDegree",
    "BlockMixing",
    "DegreeMixingLogistic",
    "Mechanism",
    "SimConfig",
    "sample_network",
]

logger = logging.getLogger(__name__)

REPAIR_MASS_WARN_FRACTION = 0.01
PAIRING_RESTARTS = 200
REQUEUE_ROUNDS = 60
SPLICE_ATTEMPTS = 500


@dataclass(frozen=True)
class ErdosRenyi:
    """Every pair is an edge independently with probability ``p``."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"edge probability must be in [0, 1], got {self.p}")


@dataclass(frozen=True)
class ExponentialDegree:
    """Degrees drawn as ceil(Exponential(rate)) - 1, capped at n - 1, then
    repaired to a graphical sequence and realized by stub pairing."""

    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"rate must be positive, got {self.rate}")


@dataclass(frozen=True)
class BlockMixing:
    """Typed variant: the first ``n_primary`` nodes are primary and each
    pair's edge probability depends on its type block."""

    n_primary: int
    p_pp: float
    p_ps: float
    p_ss: float

    def __post_init__(self):
        if self.n_primary < 1:
            raise DomainError("n_primary must be at least 1")
        for name in ("p_pp", "p_ps", "p_ss"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class DegreeMixingLogistic:
    """Exponential-degree base network rewired by degree-preserving double
    edge swaps toward cell weights sigmoid(c0 + c1*k + c2*l)."""

    rate: float
    coefficients: tuple[float, float, float]
    swap_factor: int = 10

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"rate must be positive, got {self.rate}")
        if len(self.coefficients) != 3:
            raise DomainError("coefficients must have exactly three entries")
        if self.swap_factor < 0:
            raise DomainError("swap_factor must be non-negative")


Mechanism = Union[ErdosRenyi, ExponentialDegree, BlockMixing, DegreeMixingLogistic]


@dataclass(frozen=True)
class SimConfig:
    n: int
    mechanism: Mechanism
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"a network needs at least two nodes, got n={self.n}")
        if isinstance(self.mechanism, BlockMixing) and self.mechanism.n_primary >= self.n:
            raise DomainError("n_primary must leave at least one specialty node")


def _node_ids(n: int) -> tuple[str, ...]:
    width = max(3, len(str(n - 1)))
    return tuple(f"v{i:0{width}d}" for i in range(n))


def _pair_probability_edges(n: int, probs: np.ndarray, rng: np.random.Generator):
    i_idx, j_idx = np.triu_indices(n, k=1)
    keep = rng.random(i_idx.size) < probs
    return [(int(a), int(b)) for a, b in zip(i_idx[keep], j_idx[keep])]


def _draw_degrees(n: int, rate: float, rng: np.random.Generator) -> np.ndarray:
    expected = 1.0 / (1.0 - math.exp(-rate)) - 1.0
    if expected >= n - 1:
        raise DomainError(
            f"rate {rate} implies mean degree {expected:.1f}, which cannot be "
            f"realized on {n} nodes"
        )
    draws = rng.exponential(scale=1.0 / rate, size=n)
    degrees = np.minimum(np.ceil(draws).astype(np.int64) - 1, n - 1)
    return degrees


def _repair_to_graphical(degrees: np.ndarray) -> np.ndarray:
    """Decrement the largest degree until the sequence is graphical.

    Terminates because the all-zero sequence is graphical and every step
    removes one unit of degree mass.
    """
    d = degrees.copy()
    before = int(d.sum())
    while True:
        ok, _ = erdos_gallai_check(d)
        if ok:
            break
        top = int(np.argmax(d))
        if d[top] == 0:
            raise NumericError("graphical repair reached an all-zero sequence that failed")
        d[top] -= 1
    removed = before - int(d.sum())
    if before > 0 and removed / before > REPAIR_MASS_WARN_FRACTION:
        logger.warning(
            "graphical repair removed %d of %d degree units (%.2f%%)",
            removed, before, 100.0 * removed / before,
        )
    return d


def _splice_leftover(
    leftover: list[int], edges: set[tuple[int, int]], rng: np.random.Generator
) -> bool:
    """Place stuck stub pairs by rewiring random existing edges.

    Consuming stubs a and b by replacing edge (c, d) with (a, c) and (b, d)
    keeps every other degree unchanged. Returns False when a pair cannot be
    placed within the attempt budget.
    """
    for a, b in zip(leftover[0::2], leftover[1::2]):
        edge_list = list(edges)
        placed = False
        for _ in range(SPLICE_ATTEMPTS):
            c, d = edge_list[int(rng.integers(len(edge_list)))]
            if rng.random() < 0.5:
                c, d = d, c
            if len({a, c}) < 2 or len({b, d}) < 2 or a == d or b == c:
                continue
            e1 = (a, c) if a < c else (c, a)
            e2 = (b, d) if b < d else (d, b)
            if e1 == e2 or e1 in edges or e2 in edges:
                continue
            edges.remove((c, d) if c < d else (d, c))
            edges.add(e1)
            edges.add(e2)
            placed = True
            break
        if not placed:
            return False
    return True


def _realize_by_stub_pairing(degrees: np.ndarray, rng: np.random.Generator):
    """Configuration-model pairing with clash requeue, edge splicing for
    stubs that cannot pair cleanly, and full restarts as a last resort."""
    base_stubs = np.repeat(np.arange(degrees.size), degrees)
    if base_stubs.size == 0:
        return []
    for _ in range(PAIRING_RESTARTS):
        stubs = base_stubs.copy()
        rng.shuffle(stubs)
        edges: set[tuple[int, int]] = set()
        pool = [int(s) for s in stubs]
        for _ in range(REQUEUE_ROUNDS):
            leftover: list[int] = []
            for a, b in zip(pool[0::2], pool[1::2]):
                if a != b:
                    e = (a, b) if a < b else (b, a)
                    if e not in edges:
                        edges.add(e)
                        continue
                leftover.extend((a, b))
            if not leftover:
                return sorted(edges)
            if len(leftover) == len(pool):
                # reshuffling can no longer help; splice into existing edges
                if edges and _splice_leftover(leftover, edges, rng):
                    return sorted(edges)
                break
            arr = np.asarray(leftover)
            rng.shuffle(arr)
            pool = [int(s) for s in arr]
    raise NumericError(
        "stub pairing failed to realize the degree sequence; the sequence is "
        "too constrained for random pairing"
    )


def _cell_log_weight(coefficients, k: int, l: int) -> float:
    if k > l:
        k, l = l, k
    c0, c1, c2 = coefficients
    eta = c0 + c1 * k + c2 * l
    return -math.log1p(math.exp(-eta)) if eta > -30 else eta


def _rewire_by_cell_weights(
    edges: list[tuple[int, int]],
    degrees: np.ndarray,
    coefficients: tuple[float, float, float],
    attempts: int,
    rng: np.random.Generator,
) -> list[tuple[int, int]]:
    """Metropolis double edge swaps; degrees are invariant, so cell weights
    fully determine the acceptance ratio."""
    if len(edges) < 2 or attempts == 0:
        return edges
    edge_list = list(edges)
    edge_set = set(edge_list)
    m = len(edge_list)

    def w(a: int, b: int) -> float:
        return _cell_log_weight(coefficients, int(degrees[a]), int(degrees[b]))

    pair_idx = rng.integers(0, m, size=(attempts, 2))
    side = rng.random(attempts) < 0.5
    log_u = np.log(rng.random(attempts))
    for t in range(attempts):
        i1, i2 = int(pair_idx[t, 0]), int(pair_idx[t, 1])
        if i1 == i2:
            continue
        a, b = edge_list[i1]
        c, d = edge_list[i2]
        if len({a, b, c, d}) < 4:
            continue
        if side[t]:
            new1, new2 = (a, d), (c, b)
        else:
            new1, new2 = (a, c), (b, d)
        new1 = (new1[0], new1[1]) if new1[0] < new1[1] else (new1[1], new1[0])
        new2 = (new2[0], new2[1]) if new2[0] < new2[1] else (new2[1], new2[0])
        if new1 in edge_set or new2 in edge_set or new1 == new2:
            continue
        log_ratio = w(*new1) + w(*new2) - w(a, b) - w(c, d)
        if log_u[t] < log_ratio:
            edge_set.discard((a, b))
            edge_set.discard((c, d))
            edge_set.add(new1)
            edge_set.add(new2)
            edge_list[i1] = new1
            edge_list[i2] = new2
    return sorted(edge_set)


def sample_network(config: SimConfig) -> Graph:
    """Draw one network. Deterministic for a fixed config."""
    rng = np.random.default_rng(np.random.Philox(config.seed))
    n = config.n
    ids = _node_ids(n)
    mech = config.mechanism

    if isinstance(mech, ErdosRenyi):
        edges = _pair_probability_edges(n, np.full(n * (n - 1) // 2, mech.p), rng)
        types = None
    elif isinstance(mech, BlockMixing):
        i_idx, j_idx = np.triu_indices(n, k=1)
        is_p_i = i_idx < mech.n_primary
        is_p_j = j_idx < mech.n_primary
        probs = np.where(
            is_p_i & is_p_j, mech.p_pp, np.where(is_p_i ^ is_p_j, mech.p_ps, mech.p_ss)
        )
        keep = rng.random(i_idx.size) < probs
        edges = [(int(a), int(b)) for a, b in zip(i_idx[keep], j_idx[keep])]
        types = tuple(
            NodeType.PRIMARY if i < mech.n_primary else NodeType.SPECIALTY for i in range(n)
        )
    elif isinstance(mech, ExponentialDegree):
        degrees = _repair_to_graphical(_draw_degrees(n, mech.rate, rng))
        edges = _realize_by_stub_pairing(degrees, rng)
        types = None
    elif isinstance(mech, DegreeMixingLogistic):
        degrees = _repair_to_graphical(_draw_degrees(n, mech.rate, rng))
        edges = _realize_by_stub_pairing(degrees, rng)
        edges = _rewire_by_cell_weights(
            edges, degrees, mech.coefficients, mech.swap_factor * len(edges), rng
        )
        types = None
    else:
        raise DomainError(f"unknown mechanism {type(mech).__name__}")

    return Graph.build(ids, edges, node_type=types)
