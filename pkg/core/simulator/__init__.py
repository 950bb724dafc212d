from .channel import ChannelParams, ErasureChannel
from .distortion import RateDistortionModel, distortion_of_trace
from .experiments import (
    ACK_CHOICES,
    DistortionResult,
    ExperimentResult,
    SchemeSummary,
    experiment_distortion,
    experiment_single_layer,
    experiment_two_layer,
    summarize,
)
from .trace import TransmissionTrace
from .trial import TrialConfig, estimate_reduced_degrees, run_trial, run_trials
