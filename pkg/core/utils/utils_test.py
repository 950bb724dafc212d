"""
    Independent oracles for the test suite: brute-force recursions and Monte-Carlo estimators that share no
    code with the closed forms they check.
"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import chisquare

from core.degree import DegreeDistribution, LayerConfig
from core.degree.distribution import _ideal_soliton_weights


def ideal_soliton(k: int) -> DegreeDistribution:
    return DegreeDistribution(k, _ideal_soliton_weights(k))


def total_variation(p, q) -> float:
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    size = max(len(p), len(q))
    p = np.pad(p, (0, size - len(p)))
    q = np.pad(q, (0, size - len(q)))
    return 0.5 * float(np.abs(p - q).sum())


def chi_square_pvalue(observed, expected_probs, min_expected: float = 5.0) -> float:
    """Goodness-of-fit p-value, pooling cells with fewer than `min_expected` expected counts.

    :param observed: histogram of counts
    :param expected_probs: hypothesised probabilities of the same cells
    """
    observed = np.asarray(observed, dtype=float)
    expected = np.asarray(expected_probs, dtype=float) * observed.sum()
    order = np.argsort(expected)
    pooled_obs, pooled_exp = [], []
    acc_obs = acc_exp = 0.0
    for i in order:
        acc_obs += observed[i]
        acc_exp += expected[i]
        if acc_exp >= min_expected:
            pooled_obs.append(acc_obs)
            pooled_exp.append(acc_exp)
            acc_obs = acc_exp = 0.0
    if acc_exp > 0 or acc_obs > 0:
        pooled_obs[-1] += acc_obs
        pooled_exp[-1] += acc_exp
    pooled_exp = np.asarray(pooled_exp)
    pooled_exp *= sum(pooled_obs) / pooled_exp.sum()
    return float(chisquare(pooled_obs, pooled_exp).pvalue)


def wallenius_recursive(counts: Sequence[int], group_sizes: Sequence[int], weights: Sequence[float]) -> float:
    """Exact pmf by recursing over the last draw of a sequential weighted urn; small populations only."""
    weights = tuple(float(w) for w in weights)
    sizes = tuple(int(m) for m in group_sizes)

    @lru_cache(maxsize=None)
    def prob(drawn: Tuple[int, ...]) -> float:
        if sum(drawn) == 0:
            return 1.0
        total = 0.0
        for g, x in enumerate(drawn):
            if x == 0:
                continue
            before = drawn[:g] + (x - 1,) + drawn[g + 1:]
            remaining = sum(w * (m - b) for w, m, b in zip(weights, sizes, before))
            total += prob(before) * weights[g] * (sizes[g] - before[g]) / remaining
        return total

    return prob(tuple(int(x) for x in counts))


def weighted_group_counts(group_sizes: Sequence[int], weights: Sequence[float], draws: int,
                          samples: int, rng: np.random.Generator) -> np.ndarray:
    """Group counts of `samples` sequential weighted urn draws, simulated draw by draw."""
    sizes = np.asarray(group_sizes, dtype=int)
    weights = np.asarray(weights, dtype=float)
    counts = np.zeros((samples, len(sizes)), dtype=int)
    for s in range(samples):
        left = sizes.copy()
        for _ in range(draws):
            mass = weights * left
            g = rng.choice(len(sizes), p=mass / mass.sum())
            left[g] -= 1
            counts[s, g] += 1
    return counts


def monte_carlo_reduced(original: DegreeDistribution, L: int, samples: int, rng: np.random.Generator,
                        acked: int = 0) -> np.ndarray:
    """Empirical reduced degree pmf over 0..k: clamp each sampled degree to the k - acked symbols the encoder
    may use, then count how many of its uniformly chosen neighbors are among the L undecoded ones."""
    k = original.k
    kept = k - acked
    degrees = np.minimum(rng.choice(k + 1, size=samples, p=original.pmf), kept)
    reduced = rng.hypergeometric(L, kept - L, degrees) if L < kept else degrees
    return np.bincount(reduced, minlength=k + 1) / samples


def monte_carlo_layered(original: DegreeDistribution, layers: LayerConfig, undecoded: Sequence[int],
                        samples: int, rng: np.random.Generator) -> np.ndarray:
    """Empirical per-layer reduced degree pmf; the first undecoded[n] symbols of layer n are undecoded.

    Neighbors are drawn one at a time from a sequential weighted urn over the input symbols.
    """
    k = original.k
    weights = layers.item_weights()
    is_undecoded = np.zeros(k, dtype=bool)
    for j, L in enumerate(undecoded):
        is_undecoded[layers.layer_indices(j)[:L]] = True
    layer_of = layers.layer_of()
    counts = np.zeros(tuple(L + 1 for L in undecoded))
    degrees = rng.choice(k + 1, size=samples, p=original.pmf)
    for degree in degrees:
        left = weights.copy()
        per_layer = np.zeros(layers.n_layers, dtype=int)
        for _ in range(degree):
            i = rng.choice(k, p=left / left.sum())
            left[i] = 0.0
            if is_undecoded[i]:
                per_layer[layer_of[i]] += 1
        counts[tuple(per_layer)] += 1
    return counts / samples
