"""Log model evidence for the five generative models and posterior model
probabilities.

Every model factors the marginal likelihood of a graph into a parameter
integral over the statistic's sampling distribution divided by the size of
the graph's congruence class: the class size does not depend on the
parameter, so it comes outside the integral. Models m1/m2/m4 integrate in
closed form (beta-binomial conjugacy), m3 uses adaptive quadrature over its
scale parameter, and m5 uses a Laplace approximation around the posterior
mode of its three logistic coefficients.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from math import lgamma, log
from typing import Mapping, Sequence

import numpy as np
import scipy.optimize

from .enumeration import (
    ORACLE_LIMIT_DEFAULT,
    VolumeEstimate,
    log_binomial,
    log_volume_degree_distribution,
    log_volume_degree_mixing,
    log_volume_edges,
    log_volume_type_mixing,
)
from .errors import (
    DegeneratePosteriorError,
    DomainError,
    OptimizationError,
)
from .graph import Graph, NodeType, StatisticKind, compute_statistic
from .logdomain import LogValue, log_sum_exp
from .quadrature import log_integral_mode_window

__all__ = [
    "ModelId",
    "EvidenceMethod",
    "ModelSpec",
    "EvidenceResult",
    "evidence_m1",
    "evidence_m2",
    "evidence_m3",
    "evidence_m4",
    "evidence_m5",
    "evidence_for",
    "posterior_probabilities",
]


class ModelId(enum.Enum):
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"
    M4 = "m4"
    M5 = "m5"

    def describe(self) -> str:
        return {
            ModelId.M1: "uniform edge density",
            ModelId.M2: "beta-prior edge density",
            ModelId.M3: "exponential degree propensity",
            ModelId.M4: "type-mixing block densities",
            ModelId.M5: "degree-mixing logistic preference",
        }[self]


class EvidenceMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    LAPLACE = "laplace"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class ModelSpec:
    """A model identity plus its prior hyperparameters.

    Only the hyperparameters of the identified model need be present:
    beta_prior (alpha, beta) for M2; lambda_prior (mu, sigma) for M3;
    beta_priors_blocks, three (alpha, beta) pairs ordered (pp, ps, ss),
    for M4; mvn_prior (mean 3-vector, 3x3 covariance) for M5.
    prior_model_prob is this model's share of prior probability within a
    selection set; the set must sum to 1.
    """

    id: ModelId
    beta_prior: tuple[float, float] | None = None
    beta_priors_blocks: tuple[tuple[float, float], ...] | None = None
    lambda_prior: tuple[float, float] | None = None
    mvn_prior: tuple[tuple[float, ...], tuple[tuple[float, ...], ...]] | None = None
    prior_model_prob: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.prior_model_prob <= 1.0):
            raise DomainError("prior model probability must lie in (0, 1]")
        if self.id is ModelId.M2:
            _validate_beta_pair(self.beta_prior, "m2 beta prior")
        elif self.id is ModelId.M3:
            if self.lambda_prior is None:
                raise DomainError("m3 needs lambda_prior=(mu, sigma)")
            if self.lambda_prior[1] <= 0:
                raise DomainError("m3 prior sigma must be positive")
        elif self.id is ModelId.M4:
            if self.beta_priors_blocks is None or len(self.beta_priors_blocks) != 3:
                raise DomainError("m4 needs three (alpha, beta) pairs: pp, ps, ss")
            for pair, name in zip(self.beta_priors_blocks, ("pp", "ps", "ss")):
                _validate_beta_pair(pair, f"m4 {name} prior")
        elif self.id is ModelId.M5:
            if self.mvn_prior is None:
                raise DomainError("m5 needs mvn_prior=(mean, covariance)")
            mean, cov = self.mvn_prior
            arr = np.asarray(cov, dtype=float)
            if len(mean) != 3 or arr.shape != (3, 3):
                raise DomainError("m5 prior is a 3-vector mean and 3x3 covariance")
            if not np.allclose(arr, arr.T):
                raise DomainError("m5 prior covariance must be symmetric")
            try:
                np.linalg.cholesky(arr)
            except np.linalg.LinAlgError as exc:
                raise DomainError("m5 prior covariance must be positive definite") from exc


def _validate_beta_pair(pair, name: str) -> None:
    if pair is None:
        raise DomainError(f"{name} needs (alpha, beta)")
    if pair[0] <= 0 or pair[1] <= 0:
        raise DomainError(f"{name} hyperparameters must be positive")


@dataclass(frozen=True)
class EvidenceResult:
    """log evidence with its decomposition and estimator diagnostics.

    log_evidence is derived in the constructor as log_integral minus
    log_volume in log arithmetic, so the decomposition identity holds
    bit-for-bit by construction.
    """

    log_integral: LogValue
    log_volume: LogValue
    method: EvidenceMethod
    diagnostics: Mapping[str, float]
    log_evidence: LogValue = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "log_evidence", self.log_integral / self.log_volume)
        object.__setattr__(self, "diagnostics", dict(self.diagnostics))


def _lbeta(a: float, b: float) -> float:
    return lgamma(a) + lgamma(b) - lgamma(a + b)


def _volume_diagnostics(volume: VolumeEstimate) -> dict:
    return {
        "volume_method": volume.method.value,
        "volume_samples": volume.samples,
        "volume_std_error_log": volume.std_error_log,
    }


def evidence_m1(g: Graph, *, volume: VolumeEstimate | None = None) -> EvidenceResult:
    """Evidence under a single edge-density parameter with a uniform prior.

    The binomial likelihood of the edge count integrates in closed form to
    1/(N+1) over the N = n(n-1)/2 possible edge slots.
    """
    n_slots = g.n * (g.n - 1) // 2
    e = g.edge_count
    log_integral = log_binomial(n_slots, e) + _lbeta(e + 1, n_slots - e + 1)
    if volume is None:
        volume = log_volume_edges(g.n, e)
    return EvidenceResult(
        LogValue.from_log(log_integral),
        volume.log_count,
        EvidenceMethod.CLOSED_FORM,
        _volume_diagnostics(volume),
    )


def evidence_m2(
    g: Graph, prior: tuple[float, float], *, volume: VolumeEstimate | None = None
) -> EvidenceResult:
    """Evidence under a single edge density with a Beta(alpha, beta) prior;
    beta-binomial closed form. With (1, 1) this reduces exactly to m1."""
    _validate_beta_pair(prior, "m2 prior")
    alpha, beta = float(prior[0]), float(prior[1])
    n_slots = g.n * (g.n - 1) // 2
    e = g.edge_count
    log_integral = (
        log_binomial(n_slots, e)
        + _lbeta(e + alpha, n_slots - e + beta)
        - _lbeta(alpha, beta)
    )
    if volume is None:
        volume = log_volume_edges(g.n, e)
    return EvidenceResult(
        LogValue.from_log(log_integral),
        volume.log_count,
        EvidenceMethod.CLOSED_FORM,
        _volume_diagnostics(volume),
    )


def _m3_log_likelihood_terms(g: Graph, normalized_pmf: bool):
    """Returns h-likelihood pieces: callable L(lam), its derivative, and the
    second derivative, for the chosen degree-law interpretation."""
    n = g.n
    two_m = 2 * g.edge_count
    if normalized_pmf:
        # geometric law on integers: P(k) = (1 - e^-lam) e^(-lam k)
        def L(lam: float) -> float:
            return n * math.log(-math.expm1(-lam)) - two_m * lam

        def dL(lam: float) -> float:
            return n * math.exp(-lam) / (-math.expm1(-lam)) - two_m

        def d2L(lam: float) -> float:
            q = math.exp(-lam) / (-math.expm1(-lam))
            return -n * q * (1.0 + q)

    else:
        # one exponential density factor per vertex: lam e^(-lam d_i)
        def L(lam: float) -> float:
            return n * math.log(lam) - two_m * lam

        def dL(lam: float) -> float:
            return n / lam - two_m

        def d2L(lam: float) -> float:
            return -n / lam / lam

    return L, dL, d2L


def evidence_m3(
    g: Graph,
    prior: tuple[float, float],
    *,
    normalized_pmf: bool = False,
    volume: VolumeEstimate | None = None,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
    tol_log: float = 1e-8,
) -> EvidenceResult:
    """Evidence under per-vertex degree propensities drawn from an
    exponential law with rate lambda, with a normal prior on lambda
    restricted to the positive axis.

    The lambda integral is done by adaptive Gauss-Kronrod quadrature in log
    domain over a window centered on the integrand's mode. The class volume
    is that of the degree distribution, exact at small n and importance-
    sampled otherwise.
    """
    mu, sigma = float(prior[0]), float(prior[1])
    if sigma <= 0:
        raise DomainError("m3 prior sigma must be positive")
    L, dL, d2L = _m3_log_likelihood_terms(g, normalized_pmf)
    log_norm = -math.log(sigma) - 0.5 * math.log(2.0 * math.pi)

    def h(lam: float) -> float:
        if lam <= 0:
            return -math.inf
        z = (lam - mu) / sigma
        return L(lam) + log_norm - 0.5 * z * z

    def dh(lam: float) -> float:
        return dL(lam) - (lam - mu) / (sigma * sigma)

    # h is strictly concave on (0, inf): bracket the unique stationary point
    lo, hi = 1e-12, max(mu + 10.0 * sigma, 1.0)
    while dh(hi) > 0:
        hi *= 2.0
        if hi > 1e12:
            raise DomainError("m3 integrand has no interior mode; inputs out of range")
    while dh(lo) < 0:
        lo *= 0.5
        if lo < 1e-300:
            raise DomainError("m3 integrand has no interior mode; inputs out of range")
    mode = scipy.optimize.brentq(dh, lo, hi, xtol=1e-15, rtol=1e-15)
    curvature = -(d2L(mode) - 1.0 / (sigma * sigma))
    scale = 1.0 / math.sqrt(curvature)
    quad = log_integral_mode_window(h, mode, scale, tol_log=tol_log)

    if volume is None:
        dist = compute_statistic(g, StatisticKind.DEGREE_DISTRIBUTION).degree_distribution
        volume = log_volume_degree_distribution(
            dist, samples=samples, seed=seed, jobs=jobs, oracle_limit=oracle_limit
        )
    diagnostics = {
        "quadrature_error_log": quad.error_bound_log,
        "quadrature_evaluations": quad.evaluations,
        "quadrature_subintervals": quad.subintervals,
        "integrand_mode": mode,
        **_volume_diagnostics(volume),
    }
    return EvidenceResult(
        LogValue.from_log(quad.log_value),
        volume.log_count,
        EvidenceMethod.QUADRATURE,
        diagnostics,
    )


def evidence_m4(
    g: Graph,
    priors: Sequence[tuple[float, float]],
    *,
    volume: VolumeEstimate | None = None,
) -> EvidenceResult:
    """Evidence under three independent block densities (primary-primary,
    primary-specialty, specialty-specialty), each with its own beta prior;
    the product of three beta-binomial closed forms."""
    if len(priors) != 3:
        raise DomainError("m4 needs three (alpha, beta) pairs ordered pp, ps, ss")
    sv = compute_statistic(g, StatisticKind.TYPE_MIXING)
    n_p, n_s = sv.type_counts
    caps = (n_p * (n_p - 1) // 2, n_p * n_s, n_s * (n_s - 1) // 2)
    log_integral = 0.0
    for cap, e_block, pair, name in zip(caps, sv.type_mixing, priors, ("pp", "ps", "ss")):
        _validate_beta_pair(pair, f"m4 {name} prior")
        alpha, beta = float(pair[0]), float(pair[1])
        log_integral += (
            log_binomial(cap, e_block)
            + _lbeta(e_block + alpha, cap - e_block + beta)
            - _lbeta(alpha, beta)
        )
    if volume is None:
        volume = log_volume_type_mixing(n_p, n_s, *sv.type_mixing)
    return EvidenceResult(
        LogValue.from_log(log_integral),
        volume.log_count,
        EvidenceMethod.CLOSED_FORM,
        _volume_diagnostics(volume),
    )


# ---------------------------------------------------------------------------
# m5: multinomial over degree-mixing cells with logistic cell preferences


def realizable_cells(distribution: Sequence[int]) -> list[tuple[int, int]]:
    """Cells (k, l), k <= l, that can hold an edge under a fixed degree
    distribution: both degrees occur, and a diagonal cell needs two distinct
    vertices of that degree."""
    present = [k for k, c in enumerate(distribution) if k >= 1 and c >= 1]
    out = []
    for a in range(len(present)):
        for b in range(a, len(present)):
            k, l = present[a], present[b]
            if k == l and distribution[k] < 2:
                continue
            out.append((k, l))
    return out


class _M5Posterior:
    """Log posterior of the three logistic coefficients, with analytic
    gradient and Hessian, for the multinomial over degree-mixing cells."""

    def __init__(self, cells: Mapping[tuple[int, int], int], support: Sequence[tuple[int, int]],
                 prior_mean: np.ndarray, prior_cov: np.ndarray):
        self.support = list(support)
        self.u = np.array([[1.0, k, l] for k, l in self.support])
        self.counts = np.array([float(cells.get(c, 0)) for c in self.support])
        self.total = float(self.counts.sum())
        self.log_coef = lgamma(self.total + 1) - sum(
            lgamma(c + 1) for c in self.counts
        )
        self.mean = prior_mean
        chol = np.linalg.cholesky(prior_cov)
        self.prec = np.linalg.inv(prior_cov)
        self.log_prior_norm = -1.5 * math.log(2.0 * math.pi) - float(
            np.sum(np.log(np.diag(chol)))
        )

    def _parts(self, beta: np.ndarray):
        """Sigmoids, their logs, the log normalizer, and the normalized
        cell shares p = s / sum(s) computed without underflow."""
        eta = self.u @ beta
        log_s = -np.logaddexp(0.0, -eta)
        hi = float(np.max(log_s))
        shifted = np.exp(log_s - hi)
        log_z = hi + math.log(float(shifted.sum()))
        p = shifted / float(shifted.sum())
        return np.exp(log_s), log_s, log_z, p

    def log_posterior(self, beta: np.ndarray) -> float:
        _, log_s, log_z, _ = self._parts(beta)
        like = self.log_coef + float(self.counts @ log_s) - self.total * log_z
        d = beta - self.mean
        prior = self.log_prior_norm - 0.5 * float(d @ self.prec @ d)
        return like + prior

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        s, _, _, p = self._parts(beta)
        grad_like = (self.counts * (1.0 - s)) @ self.u - self.total * (
            (p * (1.0 - s)) @ self.u
        )
        return grad_like - self.prec @ (beta - self.mean)

    def hessian(self, beta: np.ndarray) -> np.ndarray:
        s, _, _, p = self._parts(beta)
        sv = s * (1.0 - s)
        q = (p * (1.0 - s)) @ self.u
        h_like = -(self.u.T * (self.counts * sv)) @ self.u
        h_z = (self.u.T * (p * (1.0 - s) * (1.0 - 2.0 * s))) @ self.u - np.outer(q, q)
        return h_like - self.total * h_z - self.prec


def evidence_m5(
    g: Graph,
    prior: tuple[Sequence[float], Sequence[Sequence[float]]],
    *,
    volume: VolumeEstimate | None = None,
    samples: int = 10_000,
    seed: int | None = None,
    jobs: int = 1,
    oracle_limit: int = ORACLE_LIMIT_DEFAULT,
    mc_check_samples: int = 0,
    mc_seed: int | None = None,
    max_iterations: int = 200,
) -> EvidenceResult:
    """Evidence under logistic degree-mixing preferences.

    Edges fall into degree-pair cells following a multinomial whose cell
    probabilities are logistic in (1, k, l), normalized over the cells
    realizable under the observed degree distribution. The three
    coefficients carry a trivariate normal prior; the integral uses a
    Laplace approximation at the posterior mode found by damped Newton
    ascent. Setting mc_check_samples adds an importance-sampling cross-check
    from the Laplace Gaussian, recorded in diagnostics.
    """
    if g.edge_count < 1:
        raise DomainError("m5 needs a graph with at least one edge")
    mean = np.asarray(prior[0], dtype=float)
    cov = np.asarray(prior[1], dtype=float)
    if mean.shape != (3,) or cov.shape != (3, 3):
        raise DomainError("m5 prior is a 3-vector mean and 3x3 covariance")
    try:
        np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise DomainError("m5 prior covariance must be positive definite") from exc

    dist = compute_statistic(g, StatisticKind.DEGREE_DISTRIBUTION).degree_distribution
    cells = dict(compute_statistic(g, StatisticKind.DEGREE_MIXING).degree_mixing)
    support = sorted(set(realizable_cells(dist)) | set(cells))
    post = _M5Posterior(cells, support, mean, cov)

    beta = mean.copy()
    value = post.log_posterior(beta)
    iterations = 0
    converged = False
    history = [value]
    eye = np.eye(3)
    for iterations in range(1, max_iterations + 1):
        grad = post.gradient(beta)
        neg_hess = -post.hessian(beta)
        # the likelihood is not globally concave, so damp the curvature
        # until it is positive definite before taking a Newton step
        tau = 0.0
        curvature_scale = max(float(np.trace(neg_hess)) / 3.0, 1.0)
        for _ in range(100):
            try:
                np.linalg.cholesky(neg_hess + tau * eye)
                break
            except np.linalg.LinAlgError:
                tau = 1e-6 * curvature_scale if tau == 0.0 else tau * 4.0
        else:
            raise DegeneratePosteriorError(
                "curvature could not be damped to positive definite",
                trace=history[-5:],
            )
        step = np.linalg.solve(neg_hess + tau * eye, grad)
        # expected increase of the step; below resolution at an undamped
        # point means a proper local maximum
        decrement = 0.5 * float(grad @ step)
        if decrement <= 1e-12 * (1.0 + abs(value)):
            if tau == 0.0:
                converged = True
                break
            # flat gradient at indefinite curvature is a saddle; escape
            # along the direction in which the surface still curves up
            evals, vecs = np.linalg.eigh(neg_hess)
            step = vecs[:, 0]
        # halve until the log posterior increases, trying both signs so a
        # saddle-escape direction works regardless of orientation
        t, candidate, cand_value = 1.0, None, None
        for _ in range(60):
            for sign in (1.0, -1.0):
                trial = beta + sign * t * step
                trial_value = post.log_posterior(trial)
                if trial_value > value:
                    candidate, cand_value = trial, trial_value
                    break
            if candidate is not None:
                break
            t *= 0.5
        else:
            # no measurable ascent in either direction: the increments
            # fell below floating point resolution
            converged = True
            break
        beta, value = candidate, cand_value
        history.append(value)
    if not converged:
        raise OptimizationError(
            f"Newton ascent did not converge in {max_iterations} iterations",
            trace=history[-10:],
        )
    neg_hess = -post.hessian(beta)
    try:
        chol = np.linalg.cholesky(neg_hess)
    except np.linalg.LinAlgError as exc:
        raise DegeneratePosteriorError(
            "curvature at the mode is not negative definite", trace=history[-5:]
        ) from exc
    log_det = 2.0 * float(np.sum(np.log(np.diag(chol))))
    log_integral = value + 1.5 * math.log(2.0 * math.pi) - 0.5 * log_det

    diagnostics: dict = {
        "map_iterations": iterations,
        "map_beta": tuple(float(x) for x in beta),
        "map_log_posterior": value,
        "log_det_curvature": log_det,
    }

    if mc_check_samples > 0:
        if mc_seed is None:
            raise DomainError("the Monte Carlo cross-check requires mc_seed")
        rng = np.random.Generator(np.random.Philox(key=[mc_seed & ((1 << 64) - 1), 0]))
        z = rng.standard_normal((mc_check_samples, 3))
        draws = beta + np.linalg.solve(chol.T, z.T).T
        log_q = (
            -1.5 * math.log(2.0 * math.pi)
            + 0.5 * log_det
            - 0.5 * np.sum(z * z, axis=1)
        )
        lw = np.array([post.log_posterior(x) for x in draws]) - log_q
        hi = float(np.max(lw))
        a = np.exp(lw - hi)
        mean_w = float(a.mean())
        diagnostics["mc_log_integral"] = hi + math.log(mean_w)
        diagnostics["mc_std_error_log"] = float(
            a.std(ddof=1) / mean_w / math.sqrt(mc_check_samples)
        )
        diagnostics["mc_samples"] = mc_check_samples

    if volume is None:
        volume = log_volume_degree_mixing(
            cells, g.n, samples=samples, seed=seed, jobs=jobs, oracle_limit=oracle_limit
        )
    diagnostics.update(_volume_diagnostics(volume))
    return EvidenceResult(
        LogValue.from_log(log_integral),
        volume.log_count,
        EvidenceMethod.LAPLACE,
        diagnostics,
    )


def evidence_for(g: Graph, spec: ModelSpec, **sampling) -> EvidenceResult:
    """Dispatch on the model id; sampling keywords flow to the volume
    estimators where relevant."""
    if spec.id is ModelId.M1:
        return evidence_m1(g)
    if spec.id is ModelId.M2:
        return evidence_m2(g, spec.beta_prior)
    if spec.id is ModelId.M3:
        return evidence_m3(g, spec.lambda_prior, **sampling)
    if spec.id is ModelId.M4:
        return evidence_m4(g, spec.beta_priors_blocks)
    if spec.id is ModelId.M5:
        return evidence_m5(g, spec.mvn_prior, **sampling)
    raise DomainError(f"unknown model id: {spec.id!r}")


def posterior_probabilities(
    results: Sequence[tuple[ModelSpec, EvidenceResult]],
) -> tuple[float, ...]:
    """Posterior probability of each model given its evidence and prior
    model probability. Invariant under any common shift of the log
    evidences; the output sums to 1."""
    if len(results) < 2:
        raise DomainError("model selection needs at least two models")
    prior_total = sum(spec.prior_model_prob for spec, _ in results)
    if abs(prior_total - 1.0) > 1e-9:
        raise DomainError(
            f"prior model probabilities must sum to 1, got {prior_total!r}"
        )
    scores = []
    for spec, res in results:
        if res.log_evidence.is_zero:
            scores.append(-math.inf)
        else:
            scores.append(res.log_evidence.log_magnitude + math.log(spec.prior_model_prob))
    denom = log_sum_exp(scores)
    probs = np.exp(np.asarray(scores) - denom)
    probs = probs / probs.sum()
    return tuple(float(p) for p in probs)
