"""
    Reduced degree distributions of a single-layer LT code: the degree a received symbol has left after
    its already decoded neighbors are stripped, with and without acknowledged symbols.
"""

import numpy as np

from core.combinatorics import log_binomial
from core.degree.distribution import DegreeDistribution
from core.errors import DomainError


def reduced_degree_dist(original: DegreeDistribution, L: int) -> DegreeDistribution:
    """Reduced degree distribution when L of the k input symbols remain undecoded.

    :param original: distribution applied by the encoder over k = original.k symbols
    :param L: number of undecoded input symbols
    :return: distribution over reduced degrees 0..k (zero above L)
    """
    _check_undecoded(original.k, L)
    return DegreeDistribution(original.k, _reduced_pmf(original.pmf, original.k, L))


def redundancy_prob_acked(original: DegreeDistribution, L: int, M: int) -> float:
    """Probability of a redundant (reduced degree zero) symbol when M decoded symbols are ACK'ed.

    The encoder works over k - M symbols, k - M - L of which are decoded but not ACK'ed.
    Degrees above k - M are clamped to k - M.
    """
    k = original.k
    _check_acked(k, L, M)
    kept = k - M
    if kept == 0:
        return float(original.pmf[0])
    pmf = original.truncated(kept).pmf
    i = np.arange(kept + 1)
    return float(pmf @ np.exp(log_binomial(kept - L, i) - log_binomial(kept, i)))


def reduced_degree_dist_acked(original: DegreeDistribution, L: int, M: int) -> DegreeDistribution:
    """Reduced degree distribution when M of the k - L decoded symbols have been ACK'ed.

    The encoder draws from `original` and clamps degrees above k - M to k - M, so with M = k - L
    the result is `original` with its mass above L folded onto degree L. It equals `original`
    exactly only when `original` puts no mass above L, e.g. a distribution re-derived over
    the k - M remaining symbols and padded to k.

    :return: distribution over reduced degrees 0..k
    """
    k = original.k
    _check_acked(k, L, M)
    kept = k - M
    if kept == 0:
        return DegreeDistribution(k, original.pmf)
    effective = original.truncated(kept)
    pmf = np.zeros(k + 1)
    pmf[:kept + 1] = _reduced_pmf(effective.pmf, kept, L)
    return DegreeDistribution(k, pmf)


def adaptive_degree_dist(original: DegreeDistribution, L: int) -> DegreeDistribution:
    """Feedback based adaptive distribution rho over the L undecoded symbols.

    The reduced distribution of `original` at L, with degree zero removed and renormalised. When every
    decoded symbol is ACK'ed an encoder applying rho reproduces the reduced degrees of the plain code
    without ever sending a redundant symbol.
    """
    if not 1 <= L <= original.k:
        raise DomainError(f'L must lie in [1, {original.k}] for the adaptive distribution, got {L}')
    reduced = _reduced_pmf(original.pmf, original.k, L)
    redundancy = reduced[0]
    if redundancy >= 1.0:
        raise DomainError(f'every reduced degree is zero at L={L}, nothing to renormalise')
    pmf = np.zeros(L + 1)
    pmf[1:] = reduced[1:L + 1] / (1.0 - redundancy)
    return DegreeDistribution(L, pmf)


def _reduced_pmf(pmf: np.ndarray, k: int, L: int) -> np.ndarray:
    """pi'(i') = sum_{i=i'}^{i'+k-L} pi(i) C(L, i') C(k-L, i-i') / C(k, i), over 0 <= i' <= k."""
    if L == k:
        return np.array(pmf, dtype=float)
    out = np.zeros(k + 1)
    kept = np.arange(L + 1)[:, None]
    lost = np.arange(k - L + 1)[None, :]
    degree = kept + lost
    log_split = log_binomial(L, kept) + log_binomial(k - L, lost) - log_binomial(k, degree)
    out[:L + 1] = (pmf[degree] * np.exp(log_split)).sum(axis=1)
    return out


def _check_undecoded(k, L):
    if not 0 <= L <= k:
        raise DomainError(f'L must lie in [0, {k}], got {L}')


def _check_acked(k, L, M):
    _check_undecoded(k, L)
    if not 0 <= M <= k - L:
        raise DomainError(f'M must lie in [0, k - L] = [0, {k - L}], got {M}')
