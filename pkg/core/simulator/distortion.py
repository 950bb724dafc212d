from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core import BITRATE, DEADLINE_FACTOR, FPS, FRAME_HEIGHT, FRAME_WIDTH
from core.errors import DomainError
from core.simulator.trace import TransmissionTrace


@dataclass(frozen=True)
class RateDistortionModel:
    """Gaussian distortion-rate bound d(r) = 2^(-2r) of a layered video stream.

    The rate r_z of z decoded layers is the cumulative share of the bitrate per pixel and frame.
    """
    alpha: float = 0.5
    bitrate: float = BITRATE
    width: int = FRAME_WIDTH
    height: int = FRAME_HEIGHT
    fps: int = FPS
    deadline_factor: int = DEADLINE_FACTOR
    layer_fractions: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError(f'alpha must lie in (0, 1), got {self.alpha}')
        if self.bitrate <= 0 or self.width < 1 or self.height < 1 or self.fps < 1:
            raise DomainError('bitrate and video geometry must be positive')
        if self.layer_fractions is not None:
            fractions = np.asarray(self.layer_fractions, dtype=float)
            if np.any(fractions <= 0) or abs(fractions.sum() - 1.0) > 1e-9:
                raise DomainError(f'layer fractions must be positive and sum to 1: {self.layer_fractions}')

    @property
    def full_rate(self) -> float:
        return self.bitrate / (self.width * self.height * self.fps)

    def deadline(self, k: int) -> int:
        return self.deadline_factor * k

    def rates(self, n_layers: int) -> np.ndarray:
        """r_0..r_N for an N-layer stream."""
        if n_layers == 1:
            fractions = np.array([1.0])
        elif self.layer_fractions is not None:
            if len(self.layer_fractions) != n_layers:
                raise DomainError(f'{len(self.layer_fractions)} layer fractions for {n_layers} layers')
            fractions = np.asarray(self.layer_fractions, dtype=float)
        elif n_layers == 2:
            fractions = np.array([self.alpha, 1.0 - self.alpha])
        else:
            raise DomainError(f'layer fractions are needed for a {n_layers}-layer stream')
        return np.concatenate([[0.0], np.cumsum(fractions)]) * self.full_rate

    def rate(self, z: int, n_layers: int) -> float:
        return float(self.rates(n_layers)[z])

    def distortion(self, z: int, n_layers: int) -> float:
        return float(2.0 ** (-2.0 * self.rate(z, n_layers)))


def distortion_of_trace(trace: TransmissionTrace, model: RateDistortionModel) -> float:
    """Distortion reached by the layers decoded in `trace`; a layer counts only if every layer before it decoded."""
    return model.distortion(trace.layers_decoded, len(trace.layer_sizes))
