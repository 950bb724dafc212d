from dataclasses import dataclass

import numpy as np

from core.errors import DomainError


@dataclass(frozen=True)
class ChannelParams:
    ser: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.ser <= 1.0:
            raise DomainError(f'symbol erasure rate must lie in [0, 1], got {self.ser}')


class ErasureChannel:
    """Memoryless symbol erasure channel."""

    def __init__(self, params: ChannelParams, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        self.sent = 0

    def transmit(self, symbol):
        """Returns `symbol`, or None when it is erased."""
        self.sent += 1
        if self.rng.random() < self.params.ser:
            return None
        return symbol
