import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core import DEFAULT_WIDTH, NONE, RECEIVED, SENT
from core.codec import Decoder, Encoder, InputBlock, OutputSymbol
from core.degree import LayerConfig, RsdParams
from core.errors import DomainError
from core.feedback import FeedbackPolicy, apply_feedback
from core.simulator.channel import ChannelParams, ErasureChannel
from core.simulator.trace import TransmissionTrace

log = logging.getLogger('fountain.trial')


@dataclass(frozen=True)
class TrialConfig:
    rsd: RsdParams
    policy: FeedbackPolicy = field(default_factory=FeedbackPolicy)
    layers: Optional[LayerConfig] = None
    channel: ChannelParams = field(default_factory=ChannelParams)
    width: int = DEFAULT_WIDTH
    deadline: Optional[int] = None
    deadline_basis: str = SENT
    seed: int = 0
    stream: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.layers is not None and self.layers.k != self.k:
            raise DomainError(f'layers cover {self.layers.k} symbols but the code has k={self.k}')
        if self.width < 1:
            raise DomainError(f'symbol width must be positive, got {self.width}')
        if self.deadline_basis not in (SENT, RECEIVED):
            raise DomainError(f'deadline basis must be {SENT} or {RECEIVED}, got {self.deadline_basis}')
        if self.deadline is not None and self.deadline < 0:
            raise DomainError(f'deadline must be nonnegative, got {self.deadline}')
        if self.channel.ser >= 1.0 and self.deadline is None:
            raise DomainError('a channel erasing every symbol needs a deadline')

    @property
    def k(self) -> int:
        return self.rsd.k

    def rngs(self) -> Tuple[np.random.Generator, ...]:
        """Independent data, encoder and channel streams derived from (seed, stream)."""
        root = np.random.SeedSequence(self.seed, spawn_key=self.stream)
        return tuple(np.random.default_rng(s) for s in root.spawn(3))


def run_trial(config: TrialConfig) -> TransmissionTrace:
    """Encodes, erases and decodes until the block is recovered or the deadline passes.

    Feedback is synchronised before every encoded symbol.
    """
    data_rng, encoder_rng, channel_rng = config.rngs()
    block = InputBlock.random(config.k, config.width, data_rng, config.layers)
    encoder = Encoder(block, encoder_rng, rsd=config.rsd)
    config.policy.check_block(encoder)
    decoder = Decoder.for_block(block)
    channel = ErasureChannel(config.channel, channel_rng)
    trace = TransmissionTrace(block.layer_config.layer_sizes)

    # nothing can arrive to count a received-symbol deadline against
    starved = config.channel.ser >= 1.0 and config.deadline_basis == RECEIVED
    while not starved and not decoder.is_complete():
        if config.deadline is not None:
            spent = channel.sent if config.deadline_basis == SENT else trace.total_received
            if spent >= config.deadline:
                break
        if config.policy.kind != NONE:
            apply_feedback(encoder, decoder.snapshot(), config.policy)
        symbol = channel.transmit(encoder.encode_next())
        if symbol is None:
            continue
        reception = decoder.receive(symbol)
        trace.record(channel.sent, reception, decoder.per_layer_undecoded)

    trace.total_sent = channel.sent
    trace.feedback_messages = encoder.feedback_messages
    trace.corrupted = decoder.mismatches(block)
    log.debug('trial %s: %d sent, %d received, %d of %d decoded',
              config.stream, trace.total_sent, trace.total_received, decoder.decoded_count, config.k)
    return trace


def run_trials(configs: Sequence[TrialConfig], threads: int = None) -> List[TransmissionTrace]:
    """Runs independent trials, in parallel when threads > 1; results keep the order of `configs`."""
    threads = threads or os.cpu_count() or 1
    if threads <= 1 or len(configs) <= 1:
        return [run_trial(c) for c in configs]
    chunksize = max(1, len(configs) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run_trial, configs, chunksize=chunksize))


def estimate_reduced_degrees(rsd: RsdParams,
                             layers: LayerConfig,
                             undecoded: Sequence[int],
                             samples: int,
                             seed: int = 0,
                             stream: Tuple[int, ...] = ()) -> np.ndarray:
    """Monte-Carlo estimate of the per-layer reduced degree distribution at a frozen decoder state.

    The first `undecoded[n]` symbols of layer n stay undecoded, the rest are decoded before sampling.
    The encoder runs without feedback.

    :return: frequencies with shape (undecoded[0] + 1, ..., undecoded[N-1] + 1)
    """
    if samples < 1:
        raise DomainError(f'samples must be positive, got {samples}')
    undecoded = tuple(int(L) for L in undecoded)
    if len(undecoded) != layers.n_layers or layers.k != rsd.k:
        raise DomainError(f'undecoded counts {undecoded} do not match the layers {layers.layer_sizes}')
    if any(not 0 <= L <= m for L, m in zip(undecoded, layers.layer_sizes)):
        raise DomainError(f'undecoded counts {undecoded} must lie within the layer sizes {layers.layer_sizes}')
    data_rng, encoder_rng, _ = TrialConfig(rsd, layers=layers, seed=seed, stream=stream).rngs()
    block = InputBlock.random(rsd.k, 1, data_rng, layers)
    encoder = Encoder(block, encoder_rng, rsd=rsd)
    decoder = Decoder.for_block(block)
    for j, L in enumerate(undecoded):
        for index in layers.layer_indices(j)[L:]:
            decoder.receive(OutputSymbol(frozenset((int(index),)), block.symbols[index]))

    counts = np.zeros(tuple(L + 1 for L in undecoded))
    for _ in range(samples):
        counts[tuple(decoder.reduced_degrees_by_layer(encoder.encode_next()))] += 1
    return counts / samples
