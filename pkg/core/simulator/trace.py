from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.codec import Reception


@dataclass
class TransmissionTrace:
    """Per-reception record of one transmission, plus the completion point of every layer."""
    layer_sizes: Tuple[int, ...]
    sent: List[int] = field(default_factory=list)
    received: List[int] = field(default_factory=list)
    undecoded: List[Tuple[int, ...]] = field(default_factory=list)
    redundant: List[bool] = field(default_factory=list)
    reduced_degrees: List[int] = field(default_factory=list)
    completion_received: List[Optional[int]] = None
    completion_sent: List[Optional[int]] = None
    total_sent: int = 0
    feedback_messages: int = 0
    corrupted: int = 0

    def __post_init__(self):
        self.layer_sizes = tuple(self.layer_sizes)
        if self.completion_received is None:
            self.completion_received = [None] * len(self.layer_sizes)
        if self.completion_sent is None:
            self.completion_sent = [None] * len(self.layer_sizes)

    @property
    def k(self) -> int:
        return sum(self.layer_sizes)

    @property
    def total_received(self) -> int:
        return len(self.received)

    @property
    def redundant_count(self) -> int:
        return sum(self.redundant)

    def record(self, sent: int, reception: Reception, per_layer_undecoded: Sequence[int]):
        received = self.total_received + 1
        self.sent.append(sent)
        self.received.append(received)
        self.undecoded.append(tuple(per_layer_undecoded))
        self.redundant.append(reception.redundant)
        self.reduced_degrees.append(reception.reduced_degree)
        for j, left in enumerate(per_layer_undecoded):
            if left == 0 and self.completion_received[j] is None:
                self.completion_received[j] = received
                self.completion_sent[j] = sent

    @property
    def complete(self) -> bool:
        return all(c is not None for c in self.completion_received)

    @property
    def received_at_completion(self) -> Optional[int]:
        return max(self.completion_received) if self.complete else None

    @property
    def overhead(self) -> float:
        """epsilon = received at completion / k - 1, NaN if decoding never finished."""
        if not self.complete:
            return float('nan')
        return self.received_at_completion / self.k - 1.0

    @property
    def layers_decoded(self) -> int:
        """Number of leading layers that are fully decoded."""
        z = 0
        for c in self.completion_received:
            if c is None:
                break
            z += 1
        return z

    def base_first(self) -> bool:
        base, rest = self.completion_received[0], self.completion_received[1:]
        return base is not None and all(c is None or base < c for c in rest)

    def undecoded_curve(self, length: int, layer: int = None) -> np.ndarray:
        """Undecoded fraction after r = 0..length receptions, held at its last value past the end."""
        if layer is None:
            size = self.k
            counts = [sum(u) for u in self.undecoded]
        else:
            size = self.layer_sizes[layer]
            counts = [u[layer] for u in self.undecoded]
        curve = np.empty(length + 1)
        curve[0] = 1.0
        n = min(len(counts), length)
        curve[1:n + 1] = np.asarray(counts[:n], dtype=float) / size
        curve[n + 1:] = curve[n]
        return curve
