"""Empirical prior elicitation from a collection of state networks,
leaving the analysis target out.

Each fit reduces every non-target state to one or a few summary scalars
(edge density, inverse mean degree, or logistic coefficients over
degree-mixing cells) and turns the spread of those summaries across states
into prior hyperparameters for the matching model.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from math import comb
from typing import Mapping

import numpy as np

from .errors import DegeneratePriorError, DomainError
from .evidence import ModelId, ModelSpec
from .graph import Graph, StatisticKind, compute_statistic

__all__ = [
    "PriorFitReport",
    "fit_beta_density",
    "fit_lambda_normal",
    "fit_block_beta_densities",
    "fit_mvn_degree_logistic",
    "fit_prior",
]

SIGMA_FLOOR = 1e-6
COVARIANCE_RIDGE = 1e-8
MAX_DEGREE_DEFAULT = 300


@dataclass(frozen=True)
class PriorFitReport:
    """Fitted hyperparameters plus the per-state summaries behind them."""

    target_state: str | None
    fitted: ModelSpec
    per_state_summaries: dict[str, dict[str, float]]

    def __post_init__(self):
        if self.target_state is not None and self.target_state in self.per_state_summaries:
            raise DomainError("the target state must not contribute to its own prior")


def _density(g: Graph) -> float:
    possible = g.n * (g.n - 1) // 2
    if possible == 0:
        raise DomainError("density undefined for a single-node network")
    return g.edge_count / possible


def _beta_moments(values: list[float], what: str) -> tuple[float, float]:
    if len(values) < 2:
        raise DomainError(f"fitting a beta prior needs at least two states ({what})")
    arr = np.asarray(values, dtype=float)
    if ((arr <= 0) | (arr >= 1)).any():
        raise DomainError(f"{what} values must lie strictly inside (0, 1)")
    mean = float(arr.mean())
    var = float(arr.var(ddof=1))
    if var == 0.0:
        raise DegeneratePriorError(
            f"{what} values are identical across states; the moment fit is "
            "degenerate (consider a variance floor)"
        )
    common = mean * (1.0 - mean) / var - 1.0
    if common <= 0:
        raise DegeneratePriorError(
            f"{what} variance {var:.3g} is too large for a beta fit at mean {mean:.3g}"
        )
    return mean * common, (1.0 - mean) * common


def fit_beta_density(states: Mapping[str, Graph]) -> tuple[float, float]:
    """Method-of-moments beta fit to per-state edge densities."""
    densities = [_density(g) for g in states.values()]
    return _beta_moments(densities, "edge density")


def fit_lambda_normal(states: Mapping[str, Graph]) -> tuple[float, float]:
    """Normal fit to per-state inverse mean degrees.

    The reciprocal of a state's mean degree is the maximum-likelihood rate
    for an exponential degree law. Zero-edge states carry no rate
    information and are excluded with a warning.
    """
    rates = []
    for name, g in sorted(states.items()):
        if g.edge_count == 0:
            warnings.warn(f"state {name!r} has no edges; excluded from the rate fit")
            continue
        rates.append(g.n / (2.0 * g.edge_count))
    if len(rates) < 2:
        raise DomainError("fitting a normal prior needs at least two states with edges")
    mu = float(np.mean(rates))
    sigma = float(np.std(rates, ddof=1))
    return mu, max(sigma, SIGMA_FLOOR)


def fit_block_beta_densities(
    states: Mapping[str, Graph],
) -> tuple[tuple[float, float], tuple[float, float], tuple[float, float]]:
    """Three beta fits, one per type block (pp, ps, ss), from per-state
    block densities."""
    per_block: list[list[float]] = [[], [], []]
    for g in states.values():
        sv = compute_statistic(g, StatisticKind.TYPE_MIXING)
        n_p, n_s = sv.type_counts
        caps = (n_p * (n_p - 1) // 2, n_p * n_s, n_s * (n_s - 1) // 2)
        for b in range(3):
            if caps[b] == 0:
                raise DomainError("a state has an empty type block; cannot fit a density")
            per_block[b].append(sv.type_mixing[b] / caps[b])
    names = ("primary-primary density", "primary-specialty density", "specialty-specialty density")
    return tuple(_beta_moments(vals, name) for vals, name in zip(per_block, names))  # type: ignore[return-value]


def _state_logistic_fit(
    distribution, cells: Mapping[tuple[int, int], int], max_degree: int
) -> np.ndarray | None:
    """Weighted logistic regression of cell occupancy on (1, k, l).

    Trials for cell (k, l) are the number of vertex pairs with those
    degrees; successes are the observed edge count in the cell. Returns the
    coefficient vector, or None when the IRLS loop fails to converge.
    """
    rows = []
    for k in range(1, min(len(distribution), max_degree + 1)):
        if distribution[k] < 1:
            continue
        for l in range(k, min(len(distribution), max_degree + 1)):
            if distribution[l] < 1:
                continue
            trials = comb(distribution[k], 2) if k == l else distribution[k] * distribution[l]
            if trials < 1:
                continue
            rows.append((k, l, trials, cells.get((k, l), 0)))
    if len(rows) < 3:
        return None
    x = np.array([[1.0, k, l] for k, l, _, _ in rows])
    t = np.array([float(r[2]) for r in rows])
    y = np.array([float(r[3]) for r in rows])

    beta = np.zeros(3)
    overall = max(min(y.sum() / t.sum(), 1.0 - 1e-9), 1e-9)
    beta[0] = math.log(overall / (1.0 - overall))
    for _ in range(100):
        eta = x @ beta
        mu = 1.0 / (1.0 + np.exp(-eta))
        w = np.maximum(t * mu * (1.0 - mu), 1e-12)
        z = eta + (y - t * mu) / w
        lhs = (x.T * w) @ x + COVARIANCE_RIDGE * np.eye(3)
        try:
            new_beta = np.linalg.solve(lhs, (x.T * w) @ z)
        except np.linalg.LinAlgError:
            return None
        delta = float(np.max(np.abs(new_beta - beta)))
        beta = new_beta
        if not np.isfinite(beta).all() or float(np.max(np.abs(beta))) > 1e3:
            return None
        if delta < 1e-10:
            return beta
    return None


def fit_mvn_degree_logistic(
    states: Mapping[str, Graph], max_degree: int = MAX_DEGREE_DEFAULT
) -> tuple[tuple[float, float, float], tuple[tuple[float, ...], ...]]:
    """Trivariate normal fit to per-state logistic coefficients over
    degree-mixing cells with degrees capped at ``max_degree``. States whose
    regression does not converge are excluded with a warning. The sample
    covariance receives a small ridge so it is always positive definite.
    """
    fits = []
    for name, g in sorted(states.items()):
        dist = compute_statistic(g, StatisticKind.DEGREE_DISTRIBUTION).degree_distribution
        cells = dict(compute_statistic(g, StatisticKind.DEGREE_MIXING).degree_mixing)
        coef = _state_logistic_fit(dist, cells, max_degree)
        if coef is None:
            warnings.warn(f"state {name!r}: logistic fit did not converge; excluded")
            continue
        fits.append(coef)
    if len(fits) < 2:
        raise DomainError("fitting the coefficient prior needs at least two usable states")
    arr = np.vstack(fits)
    mean = arr.mean(axis=0)
    cov = np.cov(arr, rowvar=False, ddof=1) + COVARIANCE_RIDGE * np.eye(3)
    return (
        tuple(float(v) for v in mean),
        tuple(tuple(float(c) for c in row) for row in cov),
    )


def _summaries_m2(states: Mapping[str, Graph]) -> dict:
    return {name: {"density": _density(g)} for name, g in sorted(states.items())}


def fit_prior(
    model: ModelId,
    graphs_by_state: Mapping[str, Graph],
    exclude: str | None = None,
    max_degree: int = MAX_DEGREE_DEFAULT,
) -> PriorFitReport:
    """Leave-one-state-out fit producing a ready ModelSpec for ``model``."""
    states = {
        name: g for name, g in graphs_by_state.items() if name != exclude
    }
    if not states:
        raise DomainError("no states remain after excluding the target")
    if model is ModelId.M2:
        alpha, beta = fit_beta_density(states)
        spec = ModelSpec(ModelId.M2, beta_prior=(alpha, beta))
        summaries = _summaries_m2(states)
    elif model is ModelId.M3:
        mu, sigma = fit_lambda_normal(states)
        spec = ModelSpec(ModelId.M3, lambda_prior=(mu, sigma))
        summaries = {}
        for name, g in sorted(states.items()):
            if g.edge_count == 0:
                summaries[name] = {"excluded_no_edges": 1.0}
            else:
                summaries[name] = {"rate": g.n / (2.0 * g.edge_count)}
    elif model is ModelId.M4:
        blocks = fit_block_beta_densities(states)
        spec = ModelSpec(ModelId.M4, beta_priors_blocks=blocks)
        summaries = {}
        for name, g in sorted(states.items()):
            sv = compute_statistic(g, StatisticKind.TYPE_MIXING)
            n_p, n_s = sv.type_counts
            caps = (n_p * (n_p - 1) // 2, n_p * n_s, n_s * (n_s - 1) // 2)
            summaries[name] = {
                "density_pp": sv.type_mixing[0] / caps[0],
                "density_ps": sv.type_mixing[1] / caps[1],
                "density_ss": sv.type_mixing[2] / caps[2],
            }
    elif model is ModelId.M5:
        mean, cov = fit_mvn_degree_logistic(states, max_degree=max_degree)
        spec = ModelSpec(ModelId.M5, mvn_prior=(mean, cov))
        summaries = {}
        for name, g in sorted(states.items()):
            dist = compute_statistic(g, StatisticKind.DEGREE_DISTRIBUTION).degree_distribution
            cells = dict(compute_statistic(g, StatisticKind.DEGREE_MIXING).degree_mixing)
            coef = _state_logistic_fit(dist, cells, max_degree)
            if coef is None:
                summaries[name] = {"excluded_no_fit": 1.0}
            else:
                summaries[name] = {
                    "coef_intercept": float(coef[0]),
                    "coef_k": float(coef[1]),
                    "coef_l": float(coef[2]),
                }
    else:
        raise DomainError(f"no prior fit is defined for model {model.value}")
    return PriorFitReport(exclude, spec, summaries)
