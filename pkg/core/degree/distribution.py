import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core import PMF_TOLERANCE
from core.errors import DomainError


@dataclass(frozen=True, eq=False)
class DegreeDistribution:
    """Probability mass over degrees 0..k, stored densely and read-only."""
    k: int
    pmf: np.ndarray

    def __post_init__(self):
        pmf = np.array(self.pmf, dtype=float)
        if self.k < 1:
            raise DomainError(f'block length k must be positive, got {self.k}')
        if pmf.shape != (self.k + 1,):
            raise DomainError(f'pmf must have k + 1 = {self.k + 1} entries, got {pmf.shape}')
        if np.any(pmf < -PMF_TOLERANCE):
            raise DomainError('pmf has negative entries')
        pmf = np.clip(pmf, 0.0, None)
        if abs(pmf.sum() - 1.0) > PMF_TOLERANCE:
            raise DomainError(f'pmf sums to {pmf.sum():.12g}, not 1')
        pmf.flags.writeable = False
        object.__setattr__(self, 'pmf', pmf)

    @classmethod
    def from_weights(cls, k, weights):
        weights = np.asarray(weights, dtype=float)
        return cls(k, weights / weights.sum())

    @classmethod
    def point_mass(cls, k, degree):
        pmf = np.zeros(k + 1)
        pmf[degree] = 1.0
        return cls(k, pmf)

    @cached_property
    def cdf(self) -> np.ndarray:
        return np.cumsum(self.pmf)

    def sample(self, rng: np.random.Generator) -> int:
        return sample_degree(self, rng)

    def truncated(self, k_new: int) -> 'DegreeDistribution':
        """The distribution seen by an encoder limited to k_new symbols: degrees above k_new are clamped."""
        if k_new >= self.k:
            return self.padded(k_new)
        pmf = self.pmf[:k_new + 1].copy()
        pmf[k_new] += self.pmf[k_new + 1:].sum()
        return DegreeDistribution(k_new, pmf)

    def padded(self, k_new: int) -> 'DegreeDistribution':
        if k_new < self.k:
            raise DomainError(f'cannot pad a distribution over {self.k} down to {k_new}')
        pmf = np.zeros(k_new + 1)
        pmf[:self.k + 1] = self.pmf
        return DegreeDistribution(k_new, pmf)


def sample_degree(dist: DegreeDistribution, rng: np.random.Generator) -> int:
    """Inverse-CDF draw from the precomputed cumulative table."""
    return min(int(np.searchsorted(dist.cdf, rng.random(), side='right')), dist.k)


@dataclass(frozen=True)
class RsdParams:
    k: int
    c: float
    delta: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f'k must be a positive integer, got {self.k}')
        if not self.c > 0:
            raise DomainError(f'c must be positive, got {self.c}')
        if not 0 < self.delta <= 1:
            raise DomainError(f'delta must lie in (0, 1], got {self.delta}')
        if self.k > 1 and not 0 < self.ripple <= self.k:
            raise DomainError(f'S = c ln(k/delta) sqrt(k) = {self.ripple:.6g} must lie in (0, {self.k}]')

    @property
    def ripple(self) -> float:
        """Expected ripple size S."""
        return self.c * math.log(self.k / self.delta) * math.sqrt(self.k)

    @property
    def spike(self) -> int:
        return _spike(self.k, self.ripple)


def robust_soliton(params: RsdParams) -> DegreeDistribution:
    """Ideal Soliton plus the tau correction, normalised.

    The spike sits at ceil(k/S), clamped to k; a negative spike (S < delta) is dropped.
    """
    return _robust_soliton(params.k, params.ripple, params.delta)


def resized_robust_soliton(params: RsdParams, k: int) -> DegreeDistribution:
    """Robust Soliton with the c and delta of `params` over k symbols, as re-derived after ACKs shrink the block.

    For small k, S = c ln(k/delta) sqrt(k) can exceed k; S is then capped at k and the spike lands on degree 1.
    """
    if int(k) != k or k < 1:
        raise DomainError(f'k must be a positive integer, got {k}')
    ripple = params.c * math.log(k / params.delta) * math.sqrt(k)
    return _robust_soliton(k, min(ripple, k), params.delta)


def _robust_soliton(k: int, s: float, delta: float) -> DegreeDistribution:
    if k == 1:
        return DegreeDistribution.point_mass(1, 1)
    weights = _ideal_soliton_weights(k)
    spike = _spike(k, s)
    below = np.arange(1, spike)
    weights[below] += s / (below * k)
    weights[spike] += max(s * math.log(s / delta) / k, 0.0)
    return DegreeDistribution.from_weights(k, weights)


def _spike(k: int, s: float) -> int:
    return min(math.ceil(k / s), k)


def _ideal_soliton_weights(k: int) -> np.ndarray:
    weights = np.zeros(k + 1)
    weights[1] = 1.0 / k
    i = np.arange(2, k + 1)
    weights[2:] = 1.0 / (i * (i - 1))
    return weights
