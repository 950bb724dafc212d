"""
    Experiment drivers: single-layer feedback schemes, two-layer codes with and without a layer ACK, and
    the distortion of a layered stream over an erasure channel with a deadline.
    Curves are averaged per received-symbol count; a trial that finished early holds its final value.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core import (
    ADAPTIVE,
    DEFAULT_C,
    DEFAULT_DELTA,
    DEFAULT_WIDTH,
    LAYER_ACK,
    NONE,
    ORIGINAL,
    PER_SYMBOL_ACK,
    SENT,
)
from core.degree import LayerConfig, RsdParams
from core.errors import DomainError
from core.feedback import FeedbackPolicy
from core.simulator.channel import ChannelParams
from core.simulator.distortion import RateDistortionModel, distortion_of_trace
from core.simulator.trace import TransmissionTrace
from core.simulator.trial import TrialConfig, run_trials

log = logging.getLogger('fountain.experiments')

NO_FEEDBACK = 'no_feedback'
ACK_ORIGINAL = 'ack_original'
ACK_ADAPTIVE = 'ack_adaptive'
TWO_LAYER_ACK = 'two_layer_ack'
TWO_LAYER = 'two_layer'
SINGLE_LAYER = 'single_layer'

"""Which two-layer schemes run for each --ack choice
"""
ACK_CHOICES = {
    'both': (TWO_LAYER_ACK, TWO_LAYER),
    'layer': (TWO_LAYER_ACK,),
    'none': (TWO_LAYER,),
}


@dataclass
class SchemeSummary:
    name: str
    curves: Dict[str, np.ndarray]
    overheads: np.ndarray
    base_first: Optional[np.ndarray] = None
    base_completion: Optional[np.ndarray] = None
    corrupted: int = 0
    feedback_messages: float = 0.0

    @property
    def runs(self) -> int:
        return len(self.overheads)

    @property
    def mean_overhead(self) -> float:
        return float(np.mean(self.overheads))

    @property
    def overhead_stderr(self) -> float:
        return _stderr(self.overheads)

    @property
    def base_first_fraction(self) -> float:
        return float(np.mean(self.base_first)) if self.base_first is not None else float('nan')

    @property
    def mean_base_completion(self) -> float:
        """Mean received count at which the base layer finished, relative to k."""
        return float(np.mean(self.base_completion)) if self.base_completion is not None else float('nan')


@dataclass
class ExperimentResult:
    name: str
    schemes: Dict[str, SchemeSummary] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return max(len(c) for s in self.schemes.values() for c in s.curves.values()) - 1

    def curve_rows(self) -> Tuple[List[str], List[list]]:
        """One row per received count: the mean undecoded fraction of every scheme and curve."""
        header = ['received']
        columns = []
        for scheme in self.schemes.values():
            for curve_name, curve in scheme.curves.items():
                header.append(scheme.name if curve_name == 'total' else f'{scheme.name}_{curve_name}')
                columns.append(_hold(curve, self.length))
        rows = [[r] + [c[r] for c in columns] for r in range(self.length + 1)]
        return header, rows

    def summary_rows(self) -> Tuple[List[str], List[list]]:
        header = ['scheme', 'runs', 'mean_overhead', 'overhead_stderr', 'base_first_fraction',
                  'mean_base_completion', 'feedback_messages', 'corrupted']
        rows = [[s.name, s.runs, s.mean_overhead, s.overhead_stderr, s.base_first_fraction,
                 s.mean_base_completion, s.feedback_messages, s.corrupted] for s in self.schemes.values()]
        return header, rows


@dataclass
class DistortionResult:
    ser_grid: Sequence[float]
    means: Dict[str, np.ndarray] = field(default_factory=dict)
    stderrs: Dict[str, np.ndarray] = field(default_factory=dict)
    corrupted: Dict[str, int] = field(default_factory=dict)

    def rows(self) -> Tuple[List[str], List[list]]:
        header = ['ser']
        for name in self.means:
            header += [name, f'{name}_stderr']
        rows = []
        for i, ser in enumerate(self.ser_grid):
            row = [ser]
            for name in self.means:
                row += [self.means[name][i], self.stderrs[name][i]]
            rows.append(row)
        return header, rows


def summarize(name: str, traces: Sequence[TransmissionTrace]) -> SchemeSummary:
    """Averages the undecoded curves of `traces` (total and per layer) and collects completion statistics."""
    if not traces:
        raise DomainError(f'scheme {name} has no trials to summarize')
    length = max(t.total_received for t in traces)
    curves = {'total': np.mean([t.undecoded_curve(length) for t in traces], axis=0)}
    n_layers = len(traces[0].layer_sizes)
    base_first = base_completion = None
    if n_layers > 1:
        for j in range(n_layers):
            curves[_layer_name(j, n_layers)] = np.mean([t.undecoded_curve(length, j) for t in traces], axis=0)
        base_first = np.array([t.base_first() for t in traces])
        base_completion = np.array([t.completion_received[0] / t.k if t.completion_received[0] else np.nan
                                    for t in traces])
    summary = SchemeSummary(name=name,
                            curves=curves,
                            overheads=np.array([t.overhead for t in traces]),
                            base_first=base_first,
                            base_completion=base_completion,
                            corrupted=sum(t.corrupted for t in traces),
                            feedback_messages=float(np.mean([t.feedback_messages for t in traces])))
    if summary.corrupted:
        log.error('scheme %s: %d decoded symbols differ from the source data', name, summary.corrupted)
    return summary


def single_layer_schemes() -> Dict[str, FeedbackPolicy]:
    return {
        NO_FEEDBACK: FeedbackPolicy(NONE),
        ACK_ORIGINAL: FeedbackPolicy(PER_SYMBOL_ACK, ORIGINAL),
        ACK_ADAPTIVE: FeedbackPolicy(PER_SYMBOL_ACK, ADAPTIVE),
    }


def two_layer_schemes(layers: LayerConfig, ack: str = 'both',
                      reparameterize: bool = True) -> Dict[str, Tuple[FeedbackPolicy, Optional[LayerConfig]]]:
    if ack not in ACK_CHOICES:
        raise DomainError(f'unknown ack choice {ack}, expected one of {tuple(ACK_CHOICES)}')
    available = {
        TWO_LAYER_ACK: (FeedbackPolicy(LAYER_ACK, reparameterize=reparameterize), layers),
        TWO_LAYER: (FeedbackPolicy(NONE), layers),
    }
    schemes = {name: available[name] for name in ACK_CHOICES[ack]}
    schemes[SINGLE_LAYER] = (FeedbackPolicy(NONE), None)
    return schemes


def experiment_single_layer(k: int, runs: int, seed: int,
                            c: float = DEFAULT_C,
                            delta: float = DEFAULT_DELTA,
                            width: int = DEFAULT_WIDTH,
                            threads: int = None) -> ExperimentResult:
    """No feedback vs per-symbol ACK with the Robust Soliton or the adaptive distribution."""
    _check_runs(runs)
    rsd = RsdParams(k, c, delta)
    result = ExperimentResult('single')
    for name, policy in single_layer_schemes().items():
        configs = [TrialConfig(rsd, policy, width=width, seed=seed, stream=(trial,)) for trial in range(runs)]
        result.schemes[name] = summarize(name, run_trials(configs, threads))
        log.info('%s: mean overhead %.4f over %d runs', name, result.schemes[name].mean_overhead, runs)
    return result


def experiment_two_layer(k: int, alpha: float, beta: float, runs: int, seed: int,
                         c: float = DEFAULT_C,
                         delta: float = DEFAULT_DELTA,
                         width: int = DEFAULT_WIDTH,
                         ack: str = 'both',
                         reparameterize: bool = True,
                         threads: int = None) -> ExperimentResult:
    """Two-layer code with and without a base-layer ACK, next to the single-layer code."""
    _check_runs(runs)
    rsd = RsdParams(k, c, delta)
    layers = LayerConfig.two_layer(k, alpha, beta)
    result = ExperimentResult('two_layer')
    for name, (policy, scheme_layers) in two_layer_schemes(layers, ack, reparameterize).items():
        configs = [TrialConfig(rsd, policy, scheme_layers, width=width, seed=seed, stream=(trial,))
                   for trial in range(runs)]
        summary = summarize(name, run_trials(configs, threads))
        result.schemes[name] = summary
        log.info('%s: mean overhead %.4f, base layer first in %.3f of %d runs',
                 name, summary.mean_overhead, summary.base_first_fraction, runs)
    return result


def experiment_distortion(k: int, alpha: float, beta: float, ser_grid: Sequence[float], seconds: int, seed: int,
                          c: float = DEFAULT_C,
                          delta: float = DEFAULT_DELTA,
                          width: int = DEFAULT_WIDTH,
                          ack: str = 'both',
                          reparameterize: bool = True,
                          deadline_basis: str = SENT,
                          model: RateDistortionModel = None,
                          threads: int = None) -> DistortionResult:
    """Mean distortion per symbol erasure rate, one trial per second of video, each with a 2k deadline."""
    _check_runs(seconds)
    rsd = RsdParams(k, c, delta)
    layers = LayerConfig.two_layer(k, alpha, beta)
    model = model if model is not None else RateDistortionModel(alpha)
    channels = [ChannelParams(ser) for ser in ser_grid]
    result = DistortionResult(list(ser_grid))
    for name, (policy, scheme_layers) in two_layer_schemes(layers, ack, reparameterize).items():
        configs = [TrialConfig(rsd, policy, scheme_layers, channel, width=width,
                               deadline=model.deadline(k), deadline_basis=deadline_basis,
                               seed=seed, stream=(i, trial))
                   for i, channel in enumerate(channels) for trial in range(seconds)]
        traces = run_trials(configs, threads)
        distortion = np.array([distortion_of_trace(t, model) for t in traces]).reshape(len(channels), seconds)
        result.means[name] = distortion.mean(axis=1)
        result.stderrs[name] = np.array([_stderr(row) for row in distortion])
        result.corrupted[name] = sum(t.corrupted for t in traces)
        log.info('%s: mean distortion %.4f across the SER grid', name, result.means[name].mean())
    return result


def _layer_name(j: int, n_layers: int) -> str:
    if n_layers == 2:
        return ('base', 'refinement')[j]
    return f'layer_{j}'


def _hold(curve: np.ndarray, length: int) -> np.ndarray:
    if len(curve) > length:
        return curve
    return np.concatenate([curve, np.full(length + 1 - len(curve), curve[-1])])


def _stderr(values) -> float:
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return 0.0
    return float(values.std(ddof=1) / np.sqrt(len(values)))


def _check_runs(runs):
    if runs < 1:
        raise DomainError(f'number of runs must be positive, got {runs}')
