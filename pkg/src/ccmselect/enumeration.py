"""Congruence class sizes: exact closed forms, exact small-n counts, and
sequential importance sampling for the rest.

For the edge-count and type-mixing statistics the class size is a product of
binomial coefficients, computed exactly through log-gamma. Degree-based
classes have no closed form; they are counted exactly for small n and
otherwise estimated by building a random member of the class one edge at a
time. The inverse probability of the construction path is an unbiased
estimate of the class size: each step contributes the ratio between the
sizes of successively more constrained partial classes, and the product of
steps telescopes to the full count.

All counts are carried in the natural-log domain; see logdomain.LogValue.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb, lgamma, log
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, NonGraphicalSequenceError, OracleRefusalError
from .graph import (
    NodeType,
    StatisticKind,
    StatisticValue,
    representative_degree_sequence,
    statistic_key,
)
from .logdomain import LogValue

__all__ = [
    "VolumeMethod",
    "VolumeEstimate",
    "log_binomial",
    "erdos_gallai_check",
    "is_graphical",
    "count_degree_sequence_graphs",
    "log_volume_edges",
    "log_volume_type_mixing",
    "log_volume_degree_sequence",
    "log_volume_degree_distribution",
    "log_volume_degree_mixing",
    "volume_for_statistic",
    "oracle_class_table",
    "oracle_enumerate",
    "ORACLE_LIMIT_DEFAULT",
]

ORACLE_LIMIT_DEFAULT = 8
_CHUNK = 512
_MASK64 = (1 << 64) - 1


class VolumeMethod(enum.Enum):
    EXACT = "exact"
    IMPORTANCE_SAMPLING = "importance_sampling"
    ORACLE = "oracle"


@dataclass(frozen=True)
class VolumeEstimate:
    """Size of one congruence class, in log domain.

    std_error_log is the delta-method standard error of log_count; it is 0
    for exact methods. ``samples`` is 0 for exact methods.
    """

    log_count: LogValue
    std_error_log: float
    method: VolumeMethod
    samples: int = 0

    def __post_init__(self):
        if self.method is not VolumeMethod.IMPORTANCE_SAMPLING and self.std_error_log != 0.0:
            raise DomainError("exact methods must report std_error_log = 0")
        if self.std_error_log < 0:
            raise DomainError("std_error_log must be nonnegative")


def log_binomial(n: int, k: int) -> float:
    """log C(n, k) via log-gamma; exact domain checks."""
    if k < 0 or k > n or n < 0:
        raise DomainError(f"binomial coefficient C({n}, {k}) out of range")
    return lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)


# ---------------------------------------------------------------------------
# Graphicality


def _eg_slack(s: np.ndarray) -> np.ndarray:
    """Erdos-Gallai slack values for a descending-sorted degree array.

    slack[k-1] = k(k-1) + sum_{i>k} min(s_i, k) - sum_{i<=k} s_i for k=1..n;
    the sequence (with even sum) is graphical iff all slacks are >= 0.
    Computed for all k at once in O(n log n).
    """
    n = len(s)
    k = np.arange(1, n + 1)
    prefix = np.cumsum(s)
    # number of entries >= k (s sorted descending)
    ge = np.searchsorted(-s, -k, side="right")
    suffix = np.concatenate([np.cumsum(s[::-1])[::-1], [0]])
    cut = np.maximum(ge, k)
    rhs = k * (k - 1) + k * np.maximum(ge - k, 0) + suffix[np.minimum(cut, n)]
    return rhs - prefix


def erdos_gallai_check(degrees: Sequence[int]) -> tuple[bool, int | None]:
    """(graphical?, violated index). Index 0 flags an odd degree sum,
    otherwise the smallest 1-based k whose inequality fails; None if graphical."""
    d = np.asarray(degrees, dtype=np.int64)
    if d.size == 0:
        return True, None
    if (d < 0).any():
        raise DomainError("degrees must be nonnegative")
    if int(d.sum()) % 2 != 0:
        return False, 0
    s = np.sort(d)[::-1]
    slack = _eg_slack(s)
    bad = np.nonzero(slack < 0)[0]
    if bad.size:
        return False, int(bad[0]) + 1
    return True, None


def is_graphical(degrees: Sequence[int]) -> bool:
    ok, _ = erdos_gallai_check(degrees)
    return ok


def _require_graphical(degrees: Sequence[int]) -> None:
    ok, idx = erdos_gallai_check(degrees)
    if not ok:
        if idx == 0:
            raise NonGraphicalSequenceError(
                "degree sequence has odd sum, no simple graph realizes it", 0
            )
        raise NonGraphicalSequenceError(
            f"degree sequence is not graphical (condition violated at index {idx})", idx
        )


# ---------------------------------------------------------------------------
# Exact counting of labeled graphs with a fixed degree sequence


@lru_cache(maxsize=500_000)
def _realization_count(residuals: tuple[int, ...]) -> int:
    """Number of labeled simple graphs realizing the residual multiset.

    ``residuals`` is sorted descending with zeros stripped. The vertex with
    the largest residual is connected to a subset of the others and removed;
    subsets are enumerated per residual-value group with binomial
    multiplicities, so equal-residual vertices are never distinguished twice.
    """
    if not residuals:
        return 1
    r0 = residuals[0]
    rest = residuals[1:]
    if r0 > len(rest):
        return 0
    groups: list[tuple[int, int]] = []  # (value, multiplicity) over rest
    for value, count in sorted(Counter(rest).items(), reverse=True):
        groups.append((value, count))

    total = 0

    def assign(gi: int, remaining: int, factor: int, taken: list[tuple[int, int]]):
        nonlocal total
        if remaining == 0:
            nxt: list[int] = []
            taken_map = dict(taken)
            for value, count in groups:
                t = taken_map.get(value, 0)
                nxt.extend([value] * (count - t))
                nxt.extend([value - 1] * t)
            nxt = [v for v in nxt if v > 0]
            nxt.sort(reverse=True)
            total += factor * _realization_count(tuple(nxt))
            return
        if gi == len(groups):
            return
        value, count = groups[gi]
        avail = sum(c for _, c in groups[gi:])
        if avail < remaining:
            return
        for t in range(min(count, remaining), -1, -1):
            assign(gi + 1, remaining - t, factor * comb(count, t), taken + [(value, t)])

    assign(0, r0, 1, [])
    return total


def count_degree_sequence_graphs(degrees: Sequence[int]) -> int:
    """Exact number of labeled simple graphs with the given degree sequence."""
    _require_graphical(degrees)
    residuals = tuple(sorted((d for d in degrees if d > 0), reverse=True))
    return _realization_count(residuals)


def _count_realizations_matching_cells(
    degrees: tuple[int, ...], target: Mapping[tuple[int, int], int]
) -> int:
    """Exact number of labeled graphs with degree sequence ``degrees`` whose
    degree-mixing cells equal ``target``. Backtracking over neighborhoods of
    the highest-residual vertex; branches exceeding any target cell are cut.
    """
    n = len(degrees)
    target = {cell: c for cell, c in target.items() if c}

    def rec(residuals: tuple[int, ...], cells: tuple[tuple[tuple[int, int], int], ...]) -> int:
        live = [(r, i) for i, r in enumerate(residuals) if r > 0]
        if not live:
            return 1 if dict(cells) == target else 0
        r0, w = max(live)
        others = [i for r, i in live if i != w]
        if r0 > len(others):
            return 0
        total = 0
        for subset in itertools.combinations(others, r0):
            new_cells = Counter(dict(cells))
            ok = True
            for j in subset:
                k, l = sorted((degrees[w], degrees[j]))
                new_cells[(k, l)] += 1
                if new_cells[(k, l)] > target.get((k, l), 0):
                    ok = False
                    break
            if not ok:
                continue
            nxt = list(residuals)
            nxt[w] = 0
            for j in subset:
                nxt[j] -= 1
            total += rec(tuple(nxt), tuple(sorted(new_cells.items())))
        return total

    return rec(tuple(degrees), ())


# ---------------------------------------------------------------------------
# Sequential importance sampling for degree-sequence classes

def _feasible_decrement_values(s: np.ndarray) -> dict[int, bool]:
    """For the descending residual array ``s`` (one stub already removed
    from the working vertex), decide for each positive value v present
    whether removing one further stub from some vertex of residual v leaves
    a graphical multiset. Erdos-Gallai slacks are updated analytically per
    value instead of re-testing each candidate from scratch. Depends only
    on the residual multiset, so results can be memoized on it.
    """
    slack = _eg_slack(s)
    suffix_min = np.minimum.accumulate(slack[::-1])[::-1]
    prefix_min = np.minimum.accumulate(slack)
    out: dict[int, bool] = {}
    for v in np.unique(s[s > 0]):
        v = int(v)
        p = int(np.searchsorted(-s, -v, side="right"))  # last 1-based position of value v
        ok = suffix_min[p - 1] >= -1
        if ok and p - 1 >= v:
            ok = bool(slack[v - 1 : p - 1].min() >= 1)
        if ok:
            hi = min(v - 1, p - 1)
            if hi >= 1:
                ok = bool(prefix_min[hi - 1] >= 0)
        out[v] = bool(ok)
    return out


_FEASIBILITY_CACHE_MAX = 100_000


def _sample_degree_sequence_logweight(
    degrees: tuple[int, ...],
    rng: np.random.Generator,
    cache: dict | None = None,
) -> float:
    """One importance-sampling draw for the class of ``degrees``.

    Builds a uniform-supported random realization vertex by vertex: the
    working vertex is the one with the smallest positive residual (ties by
    index), and partners are drawn with probability proportional to their
    residual among partners that keep the remainder graphical. Returns the
    log importance weight; the mean of exp(weight) over draws is unbiased
    for the class size. ``cache`` memoizes feasibility tables keyed on the
    residual multiset; correctness does not depend on it.
    """
    n = len(degrees)
    r = list(degrees)
    groups: dict[int, set[int]] = {}
    for i, d in enumerate(r):
        groups.setdefault(d, set()).add(i)

    def move(i: int, frm: int):
        groups[frm].discard(i)
        if not groups[frm]:
            del groups[frm]
        groups.setdefault(frm - 1, set()).add(i)

    adjacency: list[set[int]] = [set() for _ in range(n)]
    log_sigma = 0.0
    log_order = 0.0

    while True:
        positive = [v for v in groups if v > 0]
        if not positive:
            break
        vmin = min(positive)
        i = min(groups[vmin])
        log_order += lgamma(r[i] + 1)
        while r[i] > 0:
            b = list(r)
            b[i] -= 1
            key = tuple(sorted(b, reverse=True))
            feasible = cache.get(key) if cache is not None else None
            if feasible is None:
                feasible = _feasible_decrement_values(np.asarray(key, dtype=np.int64))
                if cache is not None and len(cache) < _FEASIBILITY_CACHE_MAX:
                    cache[key] = feasible
            neighbor_count: Counter = Counter()
            for j in adjacency[i]:
                if r[j] > 0:
                    neighbor_count[r[j]] += 1
            values = []
            weights = []
            for v in sorted(groups):
                if v <= 0 or not feasible.get(v, False):
                    continue
                eligible = len(groups[v]) - neighbor_count.get(v, 0) - (1 if v == r[i] else 0)
                if eligible > 0:
                    values.append(v)
                    weights.append(v * eligible)
            total = float(sum(weights))
            if total <= 0:
                raise AssertionError("graphical invariant violated: no feasible partner")
            x = rng.random() * total
            acc = 0.0
            v = values[-1]
            for candidate_v, w in zip(values, weights):
                acc += w
                if x < acc:
                    v = candidate_v
                    break
            members = tuple(groups[v])
            while True:
                j = members[int(rng.integers(len(members)))]
                if j != i and j not in adjacency[i]:
                    break
            log_sigma += log(v) - log(total)
            adjacency[i].add(j)
            adjacency[j].add(i)
            move(i, r[i])
            move(j, r[j])
            r[i] -= 1
            r[j] -= 1
    return -(log_sigma + log_order)


# ---------------------------------------------------------------------------
# Sequential importance sampling for degree-mixing classes

def _dmm_cell_order(cells: Mapping[tuple[int, int], int]) -> list[tuple[int, int]]:
    """Deterministic processing order: highest-degree cells first."""
    return sorted((c for c in cells if cells[c]), key=lambda kl: (-(kl[0] + kl[1]), kl))


def _sample_degree_mixing_logweight(
    payload: tuple[tuple[int, ...], tuple[tuple[tuple[int, int], int], ...]],
    rng: np.random.Generator,
) -> float:
    """One importance-sampling draw for a degree-mixing class, conditional on
    a fixed labeled degree sequence. Cells are filled in a deterministic
    order; within a cell the next edge joins a vertex pair drawn with
    probability proportional to the product of residuals. Dead ends return
    log-weight -inf (weight zero); the per-cell edge orderings are divided
    out so the mean of weights estimates the number of matching graphs.
    """
    degrees, cell_items = payload
    cells = dict(cell_items)
    n = len(degrees)
    r = list(degrees)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(i)
    log_sigma = 0.0
    for k, l in _dmm_cell_order(cells):
        for _ in range(cells[(k, l)]):
            cand: list[tuple[int, int]] = []
            weights: list[float] = []
            if k == l:
                nodes = by_degree.get(k, ())
                for a in range(len(nodes)):
                    i = nodes[a]
                    if r[i] <= 0:
                        continue
                    for b in range(a + 1, len(nodes)):
                        j = nodes[b]
                        if r[j] > 0 and j not in adjacency[i]:
                            cand.append((i, j))
                            weights.append(float(r[i] * r[j]))
            else:
                for i in by_degree.get(k, ()):
                    if r[i] <= 0:
                        continue
                    for j in by_degree.get(l, ()):
                        if r[j] > 0 and j not in adjacency[i]:
                            cand.append((i, j))
                            weights.append(float(r[i] * r[j]))
            if not cand:
                return -math.inf
            total = float(sum(weights))
            x = rng.random() * total
            acc = 0.0
            idx = len(cand) - 1
            for pos, w in enumerate(weights):
                acc += w
                if x < acc:
                    idx = pos
                    break
            i, j = cand[idx]
            log_sigma += log(weights[idx] / total)
            adjacency[i].add(j)
            adjacency[j].add(i)
            r[i] -= 1
            r[j] -= 1
    if any(r):
        return -math.inf
    ordering = sum(lgamma(c + 1) for c in cells.values())
    return -(log_sigma + ordering)


# ---------------------------------------------------------------------------
# Chunked, worker-partitioned estimation

_SAMPLERS = {
    "degseq": _sample_degree_sequence_logweight,
    "degmix": _sample_degree_mixing_logweight,
}


def _run_chunk(task: tuple) -> np.ndarray:
    sampler_name, payload, seed, chunk_index, count = task
    rng = np.random.Generator(np.random.Philox(key=[seed & _MASK64, chunk_index]))
    sampler = _SAMPLERS[sampler_name]
    extra = {}
    if sampler_name == "degseq" and len(payload) <= 16:
        # small sequences revisit few residual multisets; share their
        # feasibility tables within the chunk
        extra["cache"] = {}
    return np.array([sampler(payload, rng, **extra) for _ in range(count)], dtype=float)


def _estimate_log_count(
    sampler_name: str, payload, samples: int, seed: int, jobs: int
) -> tuple[LogValue, float, int]:
    """Mean-of-weights estimate in log domain with delta-method standard
    error. Samples are drawn in fixed-size chunks, each on its own
    counter-based random stream keyed by (seed, chunk index), so the result
    is reproducible and independent of the worker count.
    """
    if samples < 2:
        raise DomainError("importance sampling needs at least 2 samples")
    if seed is None:
        raise DomainError("sampling estimators require an explicit seed")
    tasks = []
    start = 0
    chunk_index = 0
    while start < samples:
        count = min(_CHUNK, samples - start)
        tasks.append((sampler_name, payload, int(seed), chunk_index, count))
        start += count
        chunk_index += 1
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, tasks))
    else:
        parts = [_run_chunk(t) for t in tasks]
    lw = np.concatenate(parts)
    hi = float(np.max(lw))
    if hi == -math.inf:
        return LogValue.zero(), 0.0, samples
    a = np.exp(lw - hi)
    mean = float(a.mean())
    log_count = hi + math.log(mean)
    se_log = float(a.std(ddof=1) / mean / math.sqrt(samples))
    return LogValue.from_log(log_count), se_log, samples


# ---------------------------------------------------------------------------
# Public volume operations


def log_volume_edges(n: int, m: int) -> VolumeEstimate:
    """Class size for the edge-count statistic: C(n(n-1)/2, m). Exact."""
    if n < 1:
        raise DomainError("need at least one node")
    pairs = n * (n - 1) // 2
    if not (0 <= m <= pairs):
        raise DomainError(f"edge count {m} outside [0, {pairs}] for n={n}")
    return VolumeEstimate(LogValue.from_log(log_binomial(pairs, m)), 0.0, VolumeMethod.EXACT)


def log_volume_type_mixing(
    n_p: int, n_s: int, e_pp: int, e_ps: int, e_ss: int
) -> VolumeEstimate:
    """Class size for the type-mixing statistic: one binomial per block. Exact."""
    if n_p < 0 or n_s < 0 or n_p + n_s < 1:
        raise DomainError("type counts must be nonnegative with at least one node")
    caps = (n_p * (n_p - 1) // 2, n_p * n_s, n_s * (n_s - 1) // 2)
    counts = (e_pp, e_ps, e_ss)
    names = ("primary-primary", "primary-specialty", "specialty-specialty")
    total = 0.0
    for cap, cnt, name in zip(caps, counts, names):
        if not (0 <= cnt <= cap):
            raise DomainError(f"{name} block holds {cnt} edges but capacity is {cap}")
        total += log_binomial(cap, cnt)
    return VolumeEstimate(LogValue.from_log(total), 0.0, VolumeMethod.EXACT)


def log_volume_degree_sequence(
    degrees: Sequence[int],
    *,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
) -> VolumeEstimate:
    """Number of labeled graphs with exactly this degree sequence.

    Exact for n <= oracle_limit (and for the all-zero sequence at any n);
    otherwise an unbiased importance-sampling estimate with its standard
    error on the log scale. The sampling path requires an explicit seed.
    """
    _require_graphical(degrees)
    degrees = tuple(int(d) for d in degrees)
    n = len(degrees)
    if n <= oracle_limit or max(degrees, default=0) == 0:
        count = count_degree_sequence_graphs(degrees)
        return VolumeEstimate(LogValue.from_float(count), 0.0, VolumeMethod.ORACLE)
    log_count, se, used = _estimate_log_count("degseq", degrees, samples, seed, jobs)
    return VolumeEstimate(log_count, se, VolumeMethod.IMPORTANCE_SAMPLING, used)


def _multinomial_log(distribution: Sequence[int]) -> float:
    n = sum(distribution)
    out = lgamma(n + 1)
    for c in distribution:
        out -= lgamma(c + 1)
    return out


def _validate_distribution(distribution: Sequence[int]) -> tuple[int, ...]:
    dist = tuple(int(c) for c in distribution)
    if not dist or any(c < 0 for c in dist):
        raise DomainError("degree distribution must be nonempty with nonnegative counts")
    n = sum(dist)
    if n < 1:
        raise DomainError("degree distribution must cover at least one node")
    if any(k >= n and c > 0 for k, c in enumerate(dist)):
        raise DomainError("a degree of n or more is impossible in a simple graph")
    if sum(k * c for k, c in enumerate(dist)) % 2 != 0:
        raise DomainError("degree distribution has odd total degree")
    return dist


def log_volume_degree_distribution(
    distribution: Sequence[int],
    *,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
) -> VolumeEstimate:
    """Number of labeled graphs whose degree distribution equals D.

    Equals the multinomial count of degree assignments times the number of
    realizations of any one representative sequence; the latter is exact or
    sampled exactly as in log_volume_degree_sequence.
    """
    dist = _validate_distribution(distribution)
    rep = representative_degree_sequence(dist)
    base = log_volume_degree_sequence(
        rep, samples=samples, seed=seed, jobs=jobs, oracle_limit=oracle_limit
    )
    scaled = base.log_count * LogValue.from_log(_multinomial_log(dist))
    return VolumeEstimate(scaled, base.std_error_log, base.method, base.samples)


def _distribution_from_cells(
    cells: Mapping[tuple[int, int], int], n: int
) -> tuple[int, ...]:
    """Recover the degree distribution implied by degree-mixing cells.

    Each (k, l) edge contributes one endpoint of degree k and one of degree
    l, so summing per degree and dividing by k yields D[k]; degree-0 nodes
    are whatever remains of n.
    """
    endpoint: Counter = Counter()
    for (k, l), c in cells.items():
        if c < 0:
            raise DomainError("degree-mixing counts must be nonnegative")
        if c == 0:
            continue
        if not (1 <= k <= l):
            raise DomainError(f"degree-mixing cell ({k},{l}) must satisfy 1 <= k <= l")
        endpoint[k] += c
        endpoint[l] += c
    dist: dict[int, int] = {}
    for k, e in endpoint.items():
        if e % k != 0:
            raise DomainError(
                f"degree-mixing cells imply {e} endpoints of degree {k}, not divisible by {k}"
            )
        dist[k] = e // k
    typed = sum(dist.values())
    if typed > n:
        raise DomainError(f"degree-mixing cells need {typed} nodes but n={n}")
    top = max(dist, default=0)
    out = [0] * (top + 1)
    out[0] = n - typed
    for k, c in dist.items():
        out[k] = c
    return tuple(out)


def log_volume_degree_mixing(
    cells: Mapping[tuple[int, int], int],
    n: int,
    *,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
) -> VolumeEstimate:
    """Number of labeled graphs on n nodes whose degree-mixing matrix equals
    the given cells. The implied degree distribution is recovered first; the
    count is the multinomial assignment factor times the number of
    realizations of a representative sequence matching the cells, counted
    exactly for n <= oracle_limit and estimated by importance sampling
    otherwise.
    """
    dist = _distribution_from_cells(cells, n)
    _validate_distribution(dist)
    rep = representative_degree_sequence(dist)
    _require_graphical(rep)
    clean = {tuple(cell): int(c) for cell, c in cells.items() if c}
    for (k, l), c in clean.items():
        cap = comb(dist[k], 2) if k == l else dist[k] * dist[l]
        if c > cap:
            raise DomainError(
                f"degree-mixing cell ({k},{l}) holds {c} edges but only {cap} pairs exist"
            )
    log_multi = _multinomial_log(dist)
    if n <= oracle_limit:
        matching = _count_realizations_matching_cells(rep, clean)
        if matching == 0:
            return VolumeEstimate(LogValue.zero(), 0.0, VolumeMethod.ORACLE)
        return VolumeEstimate(
            LogValue.from_float(matching) * LogValue.from_log(log_multi),
            0.0,
            VolumeMethod.ORACLE,
        )
    payload = (rep, tuple(sorted(clean.items())))
    log_count, se, used = _estimate_log_count("degmix", payload, samples, seed, jobs)
    return VolumeEstimate(
        log_count * LogValue.from_log(log_multi), se, VolumeMethod.IMPORTANCE_SAMPLING, used
    )


def volume_for_statistic(
    sv: StatisticValue,
    *,
    type_counts: tuple[int, int] | None = None,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
) -> VolumeEstimate:
    """Dispatch a StatisticValue to the matching volume operation."""
    if sv.kind is StatisticKind.EDGE_COUNT:
        if sv.node_count is None:
            raise DomainError("edge-count volume needs the node count")
        return log_volume_edges(sv.node_count, sv.edge_count)
    if sv.kind is StatisticKind.TYPE_MIXING:
        counts = type_counts if type_counts is not None else sv.type_counts
        if counts is None:
            raise DomainError("type-mixing volume needs (n_primary, n_specialty)")
        return log_volume_type_mixing(counts[0], counts[1], *sv.type_mixing)
    if sv.kind is StatisticKind.DEGREE_DISTRIBUTION:
        return log_volume_degree_distribution(
            sv.degree_distribution, samples=samples, seed=seed, jobs=jobs, oracle_limit=oracle_limit
        )
    if sv.kind is StatisticKind.DEGREE_MIXING:
        if sv.node_count is None:
            raise DomainError("degree-mixing volume needs the node count")
        return log_volume_degree_mixing(
            dict(sv.degree_mixing),
            sv.node_count,
            samples=samples,
            seed=seed,
            jobs=jobs,
            oracle_limit=oracle_limit,
        )
    raise DomainError(f"unknown statistic kind: {sv.kind!r}")


# ---------------------------------------------------------------------------
# Exhaustive enumeration (small n)


def oracle_class_table(
    n: int, kind: StatisticKind, node_types: Sequence[NodeType] | None = None
) -> dict:
    """Exact class-size table for all statistic values realized on n nodes,
    by enumerating all 2^(n(n-1)/2) labeled graphs. Keys are canonical
    statistic keys (see graph.statistic_key)."""
    if n > ORACLE_LIMIT_DEFAULT:
        raise OracleRefusalError(
            f"exhaustive enumeration refused for n={n} > {ORACLE_LIMIT_DEFAULT}"
        )
    if n < 1:
        raise DomainError("need at least one node")
    pairs = list(itertools.combinations(range(n), 2))
    if kind is StatisticKind.TYPE_MIXING:
        if node_types is None or len(node_types) != n:
            raise DomainError("type-mixing enumeration needs one type per node")
        if any(t is NodeType.UNTYPED for t in node_types):
            raise DomainError("type-mixing enumeration needs every node typed")
        pair_block = []
        for i, j in pairs:
            a, b = node_types[i], node_types[j]
            if a is NodeType.PRIMARY and b is NodeType.PRIMARY:
                pair_block.append(0)
            elif a is NodeType.SPECIALTY and b is NodeType.SPECIALTY:
                pair_block.append(2)
            else:
                pair_block.append(1)
    table: Counter = Counter()
    for mask in range(1 << len(pairs)):
        if kind is StatisticKind.EDGE_COUNT:
            key = bin(mask).count("1")
        elif kind is StatisticKind.TYPE_MIXING:
            blocks = [0, 0, 0]
            m = mask
            b = 0
            while m:
                if m & 1:
                    blocks[pair_block[b]] += 1
                m >>= 1
                b += 1
            key = tuple(blocks)
        else:
            deg = [0] * n
            m = mask
            b = 0
            while m:
                if m & 1:
                    i, j = pairs[b]
                    deg[i] += 1
                    deg[j] += 1
                m >>= 1
                b += 1
            if kind is StatisticKind.DEGREE_DISTRIBUTION:
                dist = [0] * (max(deg) + 1)
                for d in deg:
                    dist[d] += 1
                while len(dist) > 1 and dist[-1] == 0:
                    dist.pop()
                key = tuple(dist)
            elif kind is StatisticKind.DEGREE_MIXING:
                cells: Counter = Counter()
                m = mask
                b = 0
                while m:
                    if m & 1:
                        i, j = pairs[b]
                        k, l = sorted((deg[i], deg[j]))
                        cells[(k, l)] += 1
                    m >>= 1
                    b += 1
                key = tuple(sorted((k, l, c) for (k, l), c in cells.items()))
            else:
                raise DomainError(f"unknown statistic kind: {kind!r}")
        table[key] += 1
    return dict(table)


def oracle_enumerate(
    n: int,
    kind: StatisticKind,
    x,
    node_types: Sequence[NodeType] | None = None,
) -> int:
    """Exact size of one congruence class on n <= 8 nodes by brute force.

    ``x`` may be a StatisticValue or a canonical key. Returns 0 for values
    never realized on n nodes.
    """
    key = statistic_key(x) if isinstance(x, StatisticValue) else x
    table = oracle_class_table(n, kind, node_types)
    return table.get(key, 0)
