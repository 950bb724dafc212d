import numpy as np

from core.codec.symbols import InputBlock, OutputSymbol
from core.combinatorics import weighted_sample_without_replacement
from core.degree import DegreeDistribution, RsdParams, robust_soliton
from core.errors import DomainError, StateError


class Encoder:
    """LT encoder over the eligible (not yet ACK'ed) input symbols of a block.

    Neighbors are drawn uniformly, or with the per-layer weights of a layered block.
    """

    def __init__(self,
                 block: InputBlock,
                 rng: np.random.Generator,
                 rsd: RsdParams = None,
                 distribution: DegreeDistribution = None):
        if distribution is None:
            if rsd is None:
                raise DomainError('an encoder needs a degree distribution or Robust Soliton parameters')
            distribution = robust_soliton(rsd)
        self.block = block
        self.rng = rng
        self.rsd = rsd
        self.sequence_number = 0
        self.feedback_messages = 0
        layers = block.layer_config
        weights = None if layers.is_uniform else layers.item_weights()
        self.restrict(np.arange(block.k), distribution, weights)

    @property
    def acked(self) -> int:
        """Number of input symbols excluded from encoding (M)."""
        return self.block.k - len(self.eligible)

    def restrict(self, eligible, distribution: DegreeDistribution, weights=None):
        """Limits encoding to `eligible` with a new degree distribution and optional per-index weights."""
        eligible = np.unique(np.asarray(eligible, dtype=np.int64))
        if len(eligible) and (eligible[0] < 0 or eligible[-1] >= self.block.k):
            raise DomainError(f'eligible indices must lie in [0, {self.block.k})')
        if distribution.pmf[0] != 0:
            raise DomainError('an encoder distribution must not emit degree zero')
        self.eligible = eligible
        self.distribution = distribution
        self.weights = None if weights is None else np.asarray(weights, dtype=float)
        self._eligible_weights = None if weights is None else self.weights[eligible]

    def encode_next(self) -> OutputSymbol:
        """Samples a degree, draws that many eligible neighbors and XORs their payloads.

        A degree above the number of eligible symbols is clamped.
        """
        if len(self.eligible) == 0:
            raise StateError('no eligible input symbols left to encode')
        degree = min(self.distribution.sample(self.rng), len(self.eligible))
        if self._eligible_weights is None:
            picks = self.rng.choice(len(self.eligible), size=degree, replace=False)
        else:
            picks = weighted_sample_without_replacement(self._eligible_weights, degree, self.rng)
        neighbors = self.eligible[picks]
        symbol = OutputSymbol(frozenset(neighbors.tolist()), self.block.xor(neighbors), self.sequence_number)
        self.sequence_number += 1
        return symbol
