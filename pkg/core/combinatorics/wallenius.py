"""
    Wallenius' noncentral hypergeometric distribution: the law of the group counts when items are drawn
    one at a time without replacement and every remaining item of group g is picked with weight w_g.

    The pmf is evaluated through the integral representation

        P(x) = prod_g C(m_g, x_g) * int_0^1 prod_g (1 - t^(w_g / D))^(x_g) dt,   D = sum_g w_g (m_g - x_g)

    rewritten with t = exp(-D u) as int_0^inf D exp(-D u) prod_g (1 - exp(-w_g u))^(x_g) du, which keeps the
    integrand smooth and puts its peak at a moderate u instead of an exponentially small t.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.integrate import quad_vec
from scipy.optimize import brentq

from core import QUAD_EPSABS, QUAD_EPSREL
from core.combinatorics.binomial import log_binomial
from core.errors import DomainError

log = logging.getLogger('fountain.wallenius')

# u beyond which the tail of every integrand is below exp(-TAIL_MARGIN)
TAIL_MARGIN = 45.0


@dataclass(frozen=True)
class WalleniusParams:
    group_sizes: Tuple[int, ...]
    weights: Tuple[float, ...]
    draws: int

    def __post_init__(self):
        object.__setattr__(self, 'group_sizes', tuple(int(m) for m in self.group_sizes))
        object.__setattr__(self, 'weights', tuple(float(w) for w in self.weights))
        if len(self.group_sizes) < 2:
            raise DomainError(f'at least two groups are required, got {len(self.group_sizes)}')
        if len(self.group_sizes) != len(self.weights):
            raise DomainError(f'{len(self.group_sizes)} group sizes but {len(self.weights)} weights')
        if any(m < 0 for m in self.group_sizes):
            raise DomainError(f'group sizes must be nonnegative: {self.group_sizes}')
        if not all(np.isfinite(w) and w > 0 for w in self.weights):
            raise DomainError(f'weights must be positive and finite: {self.weights}')
        if not 0 <= self.draws <= sum(self.group_sizes):
            raise DomainError(f'draws {self.draws} must lie in [0, {sum(self.group_sizes)}]')


def wallenius_pmf(counts: Sequence[int], params: WalleniusParams) -> float:
    """Probability that sequential weighted sampling without replacement yields exactly `counts` per group.

    :param counts: items drawn from each group
    :param params: group sizes, weights and number of draws
    :return: the probability
    """
    x = np.asarray(counts, dtype=int)
    if x.shape != (len(params.group_sizes),):
        raise DomainError(f'counts {tuple(counts)} do not match {len(params.group_sizes)} groups')
    if np.any(x < 0) or np.any(x > np.asarray(params.group_sizes)):
        raise DomainError(f'counts {tuple(counts)} exceed group sizes {params.group_sizes}')
    if x.sum() != params.draws:
        raise DomainError(f'counts {tuple(counts)} do not sum to draws {params.draws}')
    return float(wallenius_pmf_many(x[None, :], params.group_sizes, params.weights)[0])


def wallenius_two_group_pmf(marked_drawn, draws: int, marked: int, population: int, odds: float):
    """Univariate form: number of marked items among `draws`, with `marked` of `population` items
    carrying weight `odds` relative to the rest.

    :param marked_drawn: scalar or array of marked counts
    :return: probabilities, zero outside the support
    """
    params = WalleniusParams((marked, population - marked), (odds, 1.0), draws)
    x = np.atleast_1d(np.asarray(marked_drawn, dtype=int))
    rows = np.stack([x, draws - x], axis=1)
    valid = (x >= 0) & (x <= marked) & (draws - x >= 0) & (draws - x <= population - marked)
    out = np.zeros(len(x))
    if valid.any():
        out[valid] = wallenius_pmf_many(rows[valid], params.group_sizes, params.weights)
    return out.item() if np.ndim(marked_drawn) == 0 else out


def wallenius_pmf_many(counts: np.ndarray, group_sizes: Sequence[int], weights: Sequence[float]) -> np.ndarray:
    """Evaluates the pmf for every row of `counts` with one adaptive vector quadrature.

    Rows may have different totals. Rows must lie within the group sizes.
    """
    x = np.asarray(counts, dtype=float)
    m = np.asarray(group_sizes, dtype=float)
    w = np.asarray(weights, dtype=float)
    out = np.ones(len(x))
    remaining = ((m - x) * w).sum(axis=1)
    active = (x.sum(axis=1) > 0) & (remaining > 0)
    if not active.any():
        return out

    xa, da = x[active], remaining[active]
    log_front = log_binomial(m[None, :], xa).sum(axis=1) + np.log(da)
    mask = xa > 0
    upper = float(np.max((TAIL_MARGIN + np.maximum(log_front, 0.0)) / da))
    peaks = [_integrand_peak(row, w, d) for row, d in zip(xa, da)]
    points = sorted({p for p in (min(peaks), max(peaks)) if 0 < p < upper})

    def integrand(u):
        with np.errstate(divide='ignore', invalid='ignore'):
            logs = np.log(-np.expm1(-w * u))
            terms = np.where(mask, xa * logs[None, :], 0.0).sum(axis=1)
            return np.exp(log_front - da * u + terms)

    values, err = quad_vec(integrand, 0.0, upper, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL,
                           norm='max', points=points or None)
    if err > 1e-10:
        log.warning('Wallenius quadrature error estimate %.3g exceeds 1e-10', err)
    out[active] = values
    return out


def _integrand_peak(x, w, d):
    """Root of sum_g x_g w_g / (exp(w_g u) - 1) = D, the mode of the u-integrand."""
    def slope(u):
        return np.sum(np.where(x > 0, x * w / np.expm1(w * u), 0.0)) - d

    hi = x.sum() / d
    lo = hi * 1e-9
    if slope(hi) >= 0 or slope(lo) <= 0:
        return hi
    return brentq(slope, lo, hi, xtol=1e-14 * hi)
