"""
    Acknowledgment feedback. ACK state is synchronised before every encoded symbol with zero latency and
    zero cost, so results with feedback are upper bounds on what a real return channel achieves.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core import ADAPTIVE, LAYER_ACK, NONE, ORIGINAL, PER_SYMBOL_ACK
from core.codec import DecoderSnapshot, Encoder
from core.degree import DegreeDistribution, RsdParams, adaptive_degree_dist, resized_robust_soliton, robust_soliton
from core.errors import DomainError

log = logging.getLogger('fountain.feedback')

KINDS = (NONE, PER_SYMBOL_ACK, LAYER_ACK)
MODES = (ORIGINAL, ADAPTIVE)


@dataclass(frozen=True)
class FeedbackPolicy:
    kind: str = NONE
    distribution_mode: str = ORIGINAL
    reparameterize: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f'unknown feedback policy {self.kind}, expected one of {KINDS}')
        if self.distribution_mode not in MODES:
            raise DomainError(f'unknown distribution mode {self.distribution_mode}, expected one of {MODES}')

    @property
    def label(self) -> str:
        if self.kind == PER_SYMBOL_ACK:
            return f'ack_{self.distribution_mode}'
        return self.kind

    def check_block(self, encoder: Encoder):
        if self.kind == LAYER_ACK and encoder.block.layer_config.n_layers < 2:
            raise DomainError('layer ACK needs a block with at least two layers')
        if self.kind != NONE and encoder.rsd is None:
            raise DomainError('ACK policies re-derive the distribution and need the Robust Soliton parameters')


def apply_feedback(encoder: Encoder, snapshot: DecoderSnapshot, policy: FeedbackPolicy) -> Encoder:
    """Excludes the input symbols acknowledged in `snapshot` from future encoding.

    :param encoder: encoder to update in place
    :param snapshot: decoder state as seen by the feedback channel
    :param policy: which ACKs are sent and how the encoder adapts its distribution
    :return: the updated encoder
    """
    if len(snapshot.known) != encoder.block.k:
        raise DomainError(f'snapshot covers {len(snapshot.known)} symbols but the block has {encoder.block.k}')
    if policy.kind == NONE:
        return encoder
    policy.check_block(encoder)
    if policy.kind == PER_SYMBOL_ACK:
        _ack_symbols(encoder, snapshot, policy)
    else:
        _ack_layers(encoder, snapshot, policy)
    return encoder


def _ack_symbols(encoder: Encoder, snapshot: DecoderSnapshot, policy: FeedbackPolicy):
    if snapshot.decoded_count == encoder.acked:
        return
    undecoded = np.flatnonzero(~snapshot.known)
    if len(undecoded) == 0:
        return
    if policy.distribution_mode == ORIGINAL:
        distribution = resized_soliton(encoder.rsd, len(undecoded))
    else:
        distribution = adaptive_soliton(encoder.rsd, len(undecoded))
    encoder.restrict(undecoded, distribution, encoder.weights)
    encoder.feedback_messages += 1


def _ack_layers(encoder: Encoder, snapshot: DecoderSnapshot, policy: FeedbackPolicy):
    layers = encoder.block.layer_config
    eligible = np.zeros(encoder.block.k, dtype=bool)
    eligible[encoder.eligible] = True
    newly = [j for j, done in enumerate(snapshot.layers_complete)
             if done and eligible[layers.layer_indices(j)].any()]
    if not newly:
        return
    for j in newly:
        eligible[layers.layer_indices(j)] = False
    remaining = np.flatnonzero(eligible)
    if len(remaining) == 0:
        return
    layers_left = len(np.unique(layers.layer_of()[remaining]))
    weights = encoder.weights if layers_left > 1 else None
    if policy.reparameterize:
        distribution = resized_soliton(encoder.rsd, len(remaining))
    else:
        distribution = encoder.distribution
    encoder.restrict(remaining, distribution, weights)
    encoder.feedback_messages += 1
    log.debug('layer ACK for layers %s, %d symbols left eligible', newly, len(remaining))


@lru_cache(maxsize=4096)
def resized_soliton(rsd: RsdParams, size: int) -> DegreeDistribution:
    return resized_robust_soliton(rsd, size)


@lru_cache(maxsize=4096)
def adaptive_soliton(rsd: RsdParams, undecoded: int) -> DegreeDistribution:
    """rho over the undecoded symbols, assuming every decoded symbol has been ACK'ed."""
    return adaptive_degree_dist(robust_soliton(rsd), undecoded)
