import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, Set, Tuple

import numpy as np

from core.codec.symbols import InputBlock, OutputSymbol
from core.degree import LayerConfig
from core.errors import DomainError

log = logging.getLogger('fountain.decoder')


@dataclass(frozen=True)
class Reception:
    """Outcome of receiving one output symbol."""
    reduced_degree: int
    decoded: int

    @property
    def redundant(self) -> bool:
        return self.reduced_degree == 0


@dataclass(frozen=True, eq=False)
class DecoderSnapshot:
    """Read-only view of the decoder, as carried back to the encoder by feedback."""
    known: np.ndarray
    decoded_count: int
    layers_complete: Tuple[bool, ...]


class _Pending:
    __slots__ = ('neighbors', 'payload')

    def __init__(self, neighbors: Set[int], payload: np.ndarray):
        self.neighbors = neighbors
        self.payload = payload


class Decoder:
    """Peeling (belief propagation) decoder.

    Buffered symbols never reference a decoded input symbol, and the ripple is processed to
    exhaustion on every reception.
    """

    def __init__(self, k: int, width: int, layers: LayerConfig = None):
        if k < 1 or width < 1:
            raise DomainError(f'decoder needs k >= 1 and width >= 1, got k={k}, width={width}')
        self.k = k
        self.width = width
        self.layers = layers if layers is not None else LayerConfig.single(k)
        if self.layers.k != k:
            raise DomainError(f'layers cover {self.layers.k} symbols but the decoder has k={k}')
        self._layer_of = self.layers.layer_of()
        self.known = np.zeros(k, dtype=bool)
        self.values = np.zeros((k, width), dtype=np.uint8)
        self.per_layer_undecoded = list(self.layers.layer_sizes)
        self.decoded_count = 0
        self.received = 0
        self.redundant = 0
        self.buffer: Dict[int, _Pending] = {}
        self._waiting: Dict[int, Set[int]] = defaultdict(set)
        self._next_id = 0
        self.ripple = deque()

    @classmethod
    def for_block(cls, block: InputBlock) -> 'Decoder':
        return cls(block.k, block.width, block.layer_config)

    @property
    def undecoded(self) -> int:
        return self.k - self.decoded_count

    @property
    def buffered(self) -> int:
        return len(self.buffer)

    def is_complete(self) -> bool:
        return self.decoded_count == self.k

    def layers_complete(self) -> Tuple[bool, ...]:
        return tuple(u == 0 for u in self.per_layer_undecoded)

    def snapshot(self) -> DecoderSnapshot:
        known = self.known.view()
        known.flags.writeable = False
        return DecoderSnapshot(known, self.decoded_count, self.layers_complete())

    def decoded(self) -> Dict[int, bytes]:
        return {int(i): self.values[i].tobytes() for i in np.flatnonzero(self.known)}

    def reduced_degree_of(self, symbol: OutputSymbol) -> int:
        return sum(1 for n in symbol.neighbors if not self.known[n])

    def reduced_degrees_by_layer(self, symbol: OutputSymbol) -> np.ndarray:
        """Undecoded neighbors of `symbol` per layer, without touching the decoder state."""
        neighbors = np.fromiter(symbol.neighbors, dtype=np.int64, count=len(symbol.neighbors))
        undecoded = neighbors[~self.known[neighbors]]
        return np.bincount(self._layer_of[undecoded], minlength=self.layers.n_layers)

    def receive(self, symbol: OutputSymbol) -> Reception:
        """Strips decoded neighbors from `symbol`, then buffers it or releases it into the ripple.

        :param symbol: received output symbol
        :return: its reduced degree on arrival and the number of input symbols decoded as a result
        """
        if len(symbol.payload) != self.width:
            raise DomainError(f'payload of {len(symbol.payload)} bytes on a decoder of width {self.width}')
        payload = np.array(symbol.payload, dtype=np.uint8)
        remaining = set()
        for n in symbol.neighbors:
            if not 0 <= n < self.k:
                raise DomainError(f'neighbor {n} outside [0, {self.k})')
            if self.known[n]:
                payload ^= self.values[n]
            else:
                remaining.add(n)
        self.received += 1

        if not remaining:
            self.redundant += 1
            return Reception(0, 0)
        if len(remaining) == 1:
            self.ripple.append((remaining.pop(), payload))
            return Reception(1, self._process_ripple())

        pending_id = self._next_id
        self._next_id += 1
        self.buffer[pending_id] = _Pending(remaining, payload)
        for n in remaining:
            self._waiting[n].add(pending_id)
        return Reception(len(remaining), 0)

    def _process_ripple(self) -> int:
        decoded = 0
        while self.ripple:
            index, payload = self.ripple.popleft()
            if self.known[index]:
                continue
            self.known[index] = True
            self.values[index] = payload
            self.decoded_count += 1
            self.per_layer_undecoded[self._layer_of[index]] -= 1
            decoded += 1
            for pending_id in self._waiting.pop(index, ()):
                pending = self.buffer[pending_id]
                pending.payload ^= payload
                pending.neighbors.discard(index)
                if len(pending.neighbors) == 1:
                    last = next(iter(pending.neighbors))
                    self._waiting[last].discard(pending_id)
                    del self.buffer[pending_id]
                    self.ripple.append((last, pending.payload))
        return decoded

    def mismatches(self, block: InputBlock) -> int:
        """Number of decoded symbols that differ from the source block."""
        known = self.known
        wrong = np.any(self.values[known] != block.symbols[known], axis=1)
        count = int(np.count_nonzero(wrong))
        if count:
            log.error('%d of %d decoded symbols do not match the source block', count, self.decoded_count)
        return count
