"""
    Multi-layer (unequal error protection) LT codes: input symbols are split into contiguous layers and
    neighbors are drawn with per-layer weights, so the number of neighbors per layer follows Wallenius'
    noncentral hypergeometric distribution. Within a layer decoded and undecoded symbols are equally
    likely, which adds a central hypergeometric split per layer.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from core.combinatorics import log_binomial, wallenius_pmf_many, wallenius_two_group_pmf
from core.degree.distribution import DegreeDistribution
from core.errors import DomainError

LAYERED_TOLERANCE = 1e-8


@dataclass(frozen=True)
class LayerConfig:
    """Contiguous layers, most important first, with a relative selection weight per layer."""
    layer_sizes: Tuple[int, ...]
    weight_ratios: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'layer_sizes', tuple(int(m) for m in self.layer_sizes))
        object.__setattr__(self, 'weight_ratios', tuple(float(w) for w in self.weight_ratios))
        if not self.layer_sizes:
            raise DomainError('at least one layer is required')
        if len(self.layer_sizes) != len(self.weight_ratios):
            raise DomainError(f'{len(self.layer_sizes)} layer sizes but {len(self.weight_ratios)} weights')
        if any(m < 1 for m in self.layer_sizes):
            raise DomainError(f'layer sizes must be positive: {self.layer_sizes}')
        if not all(math.isfinite(w) and w > 0 for w in self.weight_ratios):
            raise DomainError(f'layer weights must be positive and finite: {self.weight_ratios}')

    @classmethod
    def two_layer(cls, k: int, alpha: float, beta: float) -> 'LayerConfig':
        """Base layer of alpha*k symbols selected beta times as often as refinement symbols."""
        if not 0 < alpha < 1:
            raise DomainError(f'alpha must lie in (0, 1), got {alpha}')
        if not (math.isfinite(beta) and beta > 0):
            raise DomainError(f'beta must be positive, got {beta}')
        return cls.from_fractions(k, (alpha, 1 - alpha), (beta, 1.0))

    @classmethod
    def from_fractions(cls, k: int, alphas: Sequence[float], weights: Sequence[float]) -> 'LayerConfig':
        sizes = [round(a * k) for a in alphas]
        if any(abs(a * k - m) > 1e-6 for a, m in zip(alphas, sizes)) or sum(sizes) != k:
            raise DomainError(f'layer fractions {tuple(alphas)} do not split k={k} into whole layers')
        return cls(tuple(sizes), tuple(weights))

    @classmethod
    def single(cls, k: int) -> 'LayerConfig':
        return cls((k,), (1.0,))

    @property
    def k(self) -> int:
        return sum(self.layer_sizes)

    @property
    def n_layers(self) -> int:
        return len(self.layer_sizes)

    @property
    def alphas(self) -> Tuple[float, ...]:
        return tuple(m / self.k for m in self.layer_sizes)

    @property
    def beta(self) -> float:
        return self.weight_ratios[0] / self.weight_ratios[1]

    @property
    def selection_probs(self) -> Tuple[float, ...]:
        """Per-symbol selection probability p_j with sum_j p_j * size_j = 1."""
        total = sum(w * m for w, m in zip(self.weight_ratios, self.layer_sizes))
        return tuple(w / total for w in self.weight_ratios)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weight_ratios)) == 1

    def boundaries(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.layer_sizes)])

    def layer_of(self) -> np.ndarray:
        return np.repeat(np.arange(self.n_layers), self.layer_sizes)

    def item_weights(self) -> np.ndarray:
        return np.repeat(np.asarray(self.weight_ratios), self.layer_sizes)

    def layer_indices(self, layer: int) -> np.ndarray:
        start, stop = self.boundaries()[layer:layer + 2]
        return np.arange(start, stop)


@dataclass(frozen=True, eq=False)
class LayeredReducedDist:
    """pmf over per-layer reduced degrees, axis n indexed 0..undecoded[n]."""
    undecoded: Tuple[int, ...]
    pmf: np.ndarray

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.shape != tuple(L + 1 for L in self.undecoded):
            raise DomainError(f'pmf shape {pmf.shape} does not match undecoded counts {self.undecoded}')
        if np.any(pmf < -LAYERED_TOLERANCE) or abs(pmf.sum() - 1.0) > LAYERED_TOLERANCE:
            raise DomainError(f'layered reduced pmf is not a distribution (sum {pmf.sum():.12g})')
        object.__setattr__(self, 'pmf', np.clip(pmf, 0.0, None))

    @property
    def redundancy(self) -> float:
        """Probability that every neighbor is already decoded."""
        return float(self.pmf[(0,) * self.pmf.ndim])

    def marginal(self, k: int) -> DegreeDistribution:
        """Distribution of the total reduced degree, indexed 0..k."""
        totals = np.indices(self.pmf.shape).sum(axis=0).ravel()
        pmf = np.bincount(totals, weights=self.pmf.ravel(), minlength=k + 1)
        return DegreeDistribution(k, pmf / pmf.sum())


class TwoLayerReducedDist(LayeredReducedDist):

    @property
    def base_undecoded(self) -> int:
        return self.undecoded[0]

    @property
    def refinement_undecoded(self) -> int:
        return self.undecoded[1]


def two_layer_reduced_dist(original: DegreeDistribution, layers: LayerConfig,
                           L_B: int, L_R: int) -> TwoLayerReducedDist:
    """Joint distribution of the reduced degrees (i_B', i_R') of a two-layer code.

    pi'(i_B', i_R') = sum_i pi(i) sum_j Phi(j; i) HB(i_B' | j) HR(i_R' | i - j), where Phi is the number of
    base-layer neighbors among i weighted draws and HB, HR split each layer's neighbors into undecoded ones.
    """
    if layers.n_layers != 2:
        raise DomainError(f'two-layer reduction needs 2 layers, got {layers.n_layers}')
    _check_layered(original, layers, (L_B, L_R))
    mass = _two_layer_degree_mass(original, layers)
    split_b = split_matrix(L_B, layers.layer_sizes[0])
    split_r = split_matrix(L_R, layers.layer_sizes[1])
    return TwoLayerReducedDist((L_B, L_R), split_b @ mass @ split_r.T)


def n_layer_reduced_dist(original: DegreeDistribution, layers: LayerConfig,
                         undecoded: Sequence[int]) -> LayeredReducedDist:
    """N-dimensional reduced degree distribution, using the multivariate Wallenius law for the layer split.

    Nonzero for 0 <= i_n' <= L_n; the inner sum runs over every neighbor split j with sum(j) = i and j_n >= i_n'.
    """
    undecoded = tuple(int(L) for L in undecoded)
    if len(undecoded) != layers.n_layers:
        raise DomainError(f'{len(undecoded)} undecoded counts for {layers.n_layers} layers')
    _check_layered(original, layers, undecoded)
    reduced = layered_degree_mass(original, layers)
    for axis, (L, size) in enumerate(zip(undecoded, layers.layer_sizes)):
        reduced = np.moveaxis(np.tensordot(split_matrix(L, size), reduced, axes=([1], [axis])), 0, axis)
    return LayeredReducedDist(undecoded, reduced)


def redundancy_surface(original: DegreeDistribution, layers: LayerConfig,
                       base_grid: Sequence[int], refinement_grid: Sequence[int]) -> np.ndarray:
    """pi'(0, 0) for every (L_B, L_R) of the grid; rows follow base_grid, columns refinement_grid."""
    if layers.n_layers != 2:
        raise DomainError(f'redundancy surface needs 2 layers, got {layers.n_layers}')
    m_b, m_r = layers.layer_sizes
    for L_B in base_grid:
        for L_R in refinement_grid:
            _check_layered(original, layers, (L_B, L_R))
    mass = _two_layer_degree_mass(original, layers)
    none_b = np.stack([split_matrix(L, m_b)[0] for L in base_grid])
    none_r = np.stack([split_matrix(L, m_r)[0] for L in refinement_grid])
    return none_b @ mass @ none_r.T


def split_matrix(undecoded: int, size: int) -> np.ndarray:
    """H[i', j] = C(L, i') C(size - L, j - i') / C(size, j): i' of j neighbors in a layer are undecoded."""
    kept = np.arange(undecoded + 1)[:, None]
    drawn = np.arange(size + 1)[None, :]
    log_h = log_binomial(undecoded, kept) + log_binomial(size - undecoded, drawn - kept) \
        - log_binomial(size, drawn)
    return np.exp(log_h)


def layered_degree_mass(original: DegreeDistribution, layers: LayerConfig) -> np.ndarray:
    """A[j] = pi(sum j) * Phi(j; sum j) over every per-layer neighbor count vector j."""
    return _layered_degree_mass(original.pmf.tobytes(), original.k, layers)


@lru_cache(maxsize=16)
def _layered_degree_mass(pmf_key: bytes, k: int, layers: LayerConfig) -> np.ndarray:
    pmf = np.frombuffer(pmf_key)
    shape = tuple(m + 1 for m in layers.layer_sizes)
    counts = np.indices(shape).reshape(len(shape), -1).T
    totals = counts.sum(axis=1)
    mass = np.zeros(len(counts))
    for degree in np.flatnonzero(pmf):
        rows = totals == degree
        if layers.n_layers == 1:
            mass[rows] = pmf[degree]
        else:
            mass[rows] = pmf[degree] * wallenius_pmf_many(counts[rows], layers.layer_sizes, layers.weight_ratios)
    mass = mass.reshape(shape)
    mass.flags.writeable = False
    return mass


def _two_layer_degree_mass(original: DegreeDistribution, layers: LayerConfig) -> np.ndarray:
    return _two_layer_degree_mass_cached(original.pmf.tobytes(), layers)


@lru_cache(maxsize=16)
def _two_layer_degree_mass_cached(pmf_key: bytes, layers: LayerConfig) -> np.ndarray:
    """For every degree i, base-layer counts j run over max(0, i - m_R)..min(i, m_B)."""
    pmf = np.frombuffer(pmf_key)
    m_b, m_r = layers.layer_sizes
    mass = np.zeros((m_b + 1, m_r + 1))
    for degree in np.flatnonzero(pmf):
        base = np.arange(max(0, degree - m_r), min(degree, m_b) + 1)
        phi = wallenius_two_group_pmf(base, degree, m_b, layers.k, layers.beta)
        mass[base, degree - base] = pmf[degree] * phi
    mass.flags.writeable = False
    return mass


def _check_layered(original, layers, undecoded):
    if original.k != layers.k:
        raise DomainError(f'distribution is over k={original.k} but layers cover k={layers.k}')
    for n, (L, size) in enumerate(zip(undecoded, layers.layer_sizes)):
        if not 0 <= L <= size:
            raise DomainError(f'undecoded count {L} of layer {n} must lie in [0, {size}]')
