from dataclasses import dataclass
from typing import FrozenSet, Optional

import numpy as np

from core.degree import LayerConfig
from core.errors import DomainError


@dataclass(frozen=True, eq=False)
class InputBlock:
    """k source symbols of W bytes each, optionally split into contiguous layers (base layer first)."""
    symbols: np.ndarray
    layers: Optional[LayerConfig] = None

    def __post_init__(self):
        symbols = np.asarray(self.symbols, dtype=np.uint8)
        if symbols.ndim != 2 or symbols.shape[0] < 1 or symbols.shape[1] < 1:
            raise DomainError(f'input block must be a k x W byte matrix with k, W >= 1, got {symbols.shape}')
        if self.layers is not None and self.layers.k != symbols.shape[0]:
            raise DomainError(f'layers cover {self.layers.k} symbols but the block has {symbols.shape[0]}')
        symbols.flags.writeable = False
        object.__setattr__(self, 'symbols', symbols)

    @classmethod
    def random(cls, k: int, width: int, rng: np.random.Generator, layers: LayerConfig = None) -> 'InputBlock':
        return cls(rng.integers(0, 256, size=(k, width), dtype=np.uint8), layers)

    @classmethod
    def from_bytes(cls, data: bytes, width: int, layers: LayerConfig = None) -> 'InputBlock':
        """Splits data into symbols of `width` bytes, zero padding the last one."""
        if width < 1:
            raise DomainError(f'symbol width must be positive, got {width}')
        padded = data + bytes(-len(data) % width)
        return cls(np.frombuffer(padded, dtype=np.uint8).reshape(-1, width), layers)

    @property
    def k(self) -> int:
        return self.symbols.shape[0]

    @property
    def width(self) -> int:
        return self.symbols.shape[1]

    @property
    def layer_config(self) -> LayerConfig:
        return self.layers if self.layers is not None else LayerConfig.single(self.k)

    def xor(self, indices) -> np.ndarray:
        return np.bitwise_xor.reduce(self.symbols[np.asarray(indices, dtype=np.int64)], axis=0)


@dataclass(frozen=True, eq=False)
class OutputSymbol:
    neighbors: FrozenSet[int]
    payload: np.ndarray
    sequence_number: int = 0

    @property
    def degree(self) -> int:
        return len(self.neighbors)

    def __repr__(self):
        return f'OutputSymbol(#{self.sequence_number}, neighbors={sorted(self.neighbors)}, ' \
               f'payload={self.payload.tobytes().hex()})'
