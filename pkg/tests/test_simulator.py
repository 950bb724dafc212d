import math

import numpy as np
import pytest

from core import ADAPTIVE, LAYER_ACK, PER_SYMBOL_ACK, RECEIVED
from core.codec import Reception
from core.degree import LayerConfig, RsdParams, reduced_degree_dist, robust_soliton
from core.errors import DomainError
from core.feedback import FeedbackPolicy
from core.simulator import (
    ChannelParams,
    RateDistortionModel,
    TransmissionTrace,
    TrialConfig,
    distortion_of_trace,
    estimate_reduced_degrees,
    experiment_distortion,
    experiment_single_layer,
    experiment_two_layer,
    run_trial,
    run_trials,
)
from core.simulator.experiments import ACK_ADAPTIVE, ACK_ORIGINAL, NO_FEEDBACK, SINGLE_LAYER, TWO_LAYER, \
    TWO_LAYER_ACK

RSD100 = RsdParams(100, 0.1, 1.0)
D_FULL = 2 ** (-2 * 1e6 / (480 * 320 * 30))


class TestChannel:

    @pytest.mark.parametrize('ser', [-0.1, 1.1])
    def test_rejects_bad_rate(self, ser):
        with pytest.raises(DomainError):
            ChannelParams(ser)


class TestTrial:

    def test_everything_erased(self):
        trace = run_trial(TrialConfig(RSD100, channel=ChannelParams(1.0), deadline=200))
        assert trace.total_received == 0 and trace.total_sent == 200
        assert trace.layers_decoded == 0 and not trace.complete

    def test_everything_erased_received_deadline(self):
        trace = run_trial(TrialConfig(RSD100, channel=ChannelParams(1.0), deadline=200, deadline_basis=RECEIVED))
        assert trace.total_received == 0

    def test_single_symbol(self):
        trace = run_trial(TrialConfig(RsdParams(1, 0.1, 1.0), seed=9))
        assert trace.total_received == 1 and trace.overhead == 0.0

    def test_deterministic(self):
        config = TrialConfig(RSD100, channel=ChannelParams(0.2), seed=42, stream=(3,))
        first, second = run_trial(config), run_trial(config)
        assert first.sent == second.sent
        assert first.reduced_degrees == second.reduced_degrees

    def test_trace_invariants(self):
        for trial in range(5):
            trace = run_trial(TrialConfig(RSD100, channel=ChannelParams(0.3), seed=1, stream=(trial,)))
            assert trace.complete and trace.corrupted == 0
            assert trace.overhead >= 0
            assert np.all(np.diff(trace.received) == 1)
            assert np.all(np.diff(trace.sent) >= 1)
            totals = [sum(u) for u in trace.undecoded]
            assert np.all(np.diff(totals) <= 0) and totals[-1] == 0
            assert trace.total_sent >= trace.total_received

    def test_deadline_on_sent_symbols(self):
        trace = run_trial(TrialConfig(RSD100, channel=ChannelParams(0.5), deadline=80, seed=5))
        assert trace.total_sent == 80 and not trace.complete

    def test_deadline_on_received_symbols(self):
        trace = run_trial(TrialConfig(RSD100, channel=ChannelParams(0.5), deadline=80, deadline_basis=RECEIVED,
                                      seed=5))
        assert trace.total_received == 80 and trace.total_sent > 80

    def test_rejects_unbounded_erasure(self):
        with pytest.raises(DomainError):
            TrialConfig(RSD100, channel=ChannelParams(1.0))

    def test_rejects_mismatched_layers(self):
        with pytest.raises(DomainError):
            TrialConfig(RSD100, layers=LayerConfig.two_layer(50, 0.5, 9.0))

    def test_layer_ack_needs_layers(self):
        with pytest.raises(DomainError):
            run_trial(TrialConfig(RSD100, FeedbackPolicy(LAYER_ACK)))

    def test_parallel_matches_serial(self):
        configs = [TrialConfig(RSD100, seed=8, stream=(t,)) for t in range(6)]
        serial = [t.overhead for t in run_trials(configs, threads=1)]
        parallel = [t.overhead for t in run_trials(configs, threads=2)]
        assert serial == parallel

    def test_redundancy_at_frozen_state_matches_closed_form(self):
        samples = 20000
        for L in (30, 70):
            estimate = estimate_reduced_degrees(RSD100, LayerConfig.single(100), (L,), samples, seed=L)
            p = reduced_degree_dist(robust_soliton(RSD100), L).pmf[0]
            assert abs(estimate[0] - p) < 3 * math.sqrt(p * (1 - p) / samples) + 1e-3


class TestTrace:

    def test_completion_points(self):
        trace = TransmissionTrace((2, 3))
        trace.record(1, Reception(1, 1), (1, 3))
        trace.record(3, Reception(2, 0), (1, 3))
        trace.record(4, Reception(1, 3), (0, 1))
        assert trace.completion_received == [3, None] and trace.completion_sent == [4, None]
        assert trace.layers_decoded == 1 and not trace.complete and math.isnan(trace.overhead)
        trace.record(6, Reception(1, 1), (0, 0))
        assert trace.received_at_completion == 4 and trace.overhead == pytest.approx(4 / 5 - 1)
        assert trace.base_first()

    def test_curve_holds_last_value(self):
        trace = TransmissionTrace((4,))
        trace.record(1, Reception(2, 0), (4,))
        trace.record(2, Reception(1, 4), (0,))
        np.testing.assert_allclose(trace.undecoded_curve(4), [1.0, 1.0, 0.0, 0.0, 0.0])
        np.testing.assert_allclose(trace.undecoded_curve(1), [1.0, 1.0])


class TestDistortion:

    def test_rates(self):
        model = RateDistortionModel(alpha=0.5)
        np.testing.assert_allclose(model.rates(2), [0.0, 0.108507, 0.217014], atol=1e-6)
        assert model.distortion(0, 2) == 1.0
        assert model.distortion(2, 2) == pytest.approx(0.7402, abs=1e-4)
        assert model.distortion(1, 2) == pytest.approx(0.8604, abs=1e-4)
        assert model.distortion(1, 1) == pytest.approx(D_FULL)
        assert model.deadline(100) == 200

    def test_refinement_without_base_counts_nothing(self):
        trace = TransmissionTrace((2, 2), completion_received=[None, 3], completion_sent=[None, 3])
        assert distortion_of_trace(trace, RateDistortionModel()) == 1.0

    def test_rejects_bad_model(self):
        with pytest.raises(DomainError):
            RateDistortionModel(alpha=1.0)
        with pytest.raises(DomainError):
            RateDistortionModel().rates(3)
        assert len(RateDistortionModel(layer_fractions=(0.2, 0.3, 0.5)).rates(3)) == 4


class TestExperiments:

    def test_single_layer(self):
        first = experiment_single_layer(40, 4, seed=7, threads=1)
        second = experiment_single_layer(40, 4, seed=7, threads=1)
        assert list(first.schemes) == [NO_FEEDBACK, ACK_ORIGINAL, ACK_ADAPTIVE]
        for name, summary in first.schemes.items():
            curve = summary.curves['total']
            assert curve[0] == 1.0 and curve[-1] == 0.0
            assert summary.corrupted == 0
            np.testing.assert_array_equal(summary.overheads, second.schemes[name].overheads)
        header, rows = first.curve_rows()
        assert header == ['received', NO_FEEDBACK, ACK_ORIGINAL, ACK_ADAPTIVE]
        assert len(rows) == first.length + 1

    def test_two_layer(self):
        result = experiment_two_layer(40, 0.5, 9.0, 4, seed=2, threads=1)
        assert list(result.schemes) == [TWO_LAYER_ACK, TWO_LAYER, SINGLE_LAYER]
        header, _ = result.curve_rows()
        assert f'{TWO_LAYER_ACK}_base' in header and f'{TWO_LAYER}_refinement' in header
        assert 0.0 <= result.schemes[TWO_LAYER_ACK].base_first_fraction <= 1.0
        assert math.isnan(result.schemes[SINGLE_LAYER].base_first_fraction)
        layer_only = experiment_two_layer(40, 0.5, 9.0, 2, seed=2, ack='layer', threads=1)
        assert list(layer_only.schemes) == [TWO_LAYER_ACK, SINGLE_LAYER]

    def test_rejects_bad_layers(self):
        with pytest.raises(DomainError):
            experiment_two_layer(40, 0.5, -1.0, 2, seed=2, threads=1)

    def test_distortion(self):
        result = experiment_distortion(20, 0.5, 9.0, [0.0, 0.5, 1.0], 4, seed=3, threads=1)
        for name, means in result.means.items():
            assert means[-1] == 1.0
            assert np.all((means >= D_FULL - 1e-12) & (means <= 1.0))
            assert result.corrupted[name] == 0
        header, rows = result.rows()
        assert header[0] == 'ser' and len(rows) == 3

    def test_distortion_grows_with_erasure_rate(self):
        result = experiment_distortion(20, 0.5, 9.0, [0.0, 0.3, 0.6, 1.0], 40, seed=6, threads=1)
        for name, means in result.means.items():
            stderrs = result.stderrs[name]
            for i in range(len(means) - 1):
                tolerance = 2 * math.hypot(stderrs[i], stderrs[i + 1]) + 1e-12
                assert means[i + 1] >= means[i] - tolerance, name


@pytest.mark.slow
class TestAcceptance:

    def test_single_layer_ordering(self):
        result = experiment_single_layer(1000, 200, seed=1)
        none = result.schemes[NO_FEEDBACK].mean_overhead
        original = result.schemes[ACK_ORIGINAL].mean_overhead
        adaptive = result.schemes[ACK_ADAPTIVE].mean_overhead
        assert adaptive < none < original
        assert original - none > 5 * (none - adaptive)

    def test_two_layer_recovery(self):
        result = experiment_two_layer(1000, 0.5, 9.0, 200, seed=1)
        ack, plain = result.schemes[TWO_LAYER_ACK], result.schemes[TWO_LAYER]
        assert plain.base_first_fraction > 0.99
        gap = plain.mean_overhead - ack.mean_overhead
        assert gap > 1.96 * math.hypot(plain.overhead_stderr, ack.overhead_stderr)

    def test_distortion_curve(self):
        grid = [round(0.05 * i, 2) for i in range(21)]
        result = experiment_distortion(100, 0.5, 9.0, grid, 100, seed=1)
        for means in result.means.values():
            assert means[-1] == pytest.approx(1.0)
        middle = [i for i, ser in enumerate(grid) if 0.35 <= ser <= 0.55]
        for i in middle:
            assert result.means[TWO_LAYER][i] < result.means[SINGLE_LAYER][i]
            assert result.means[TWO_LAYER_ACK][i] < result.means[SINGLE_LAYER][i]
        for i, ser in enumerate(grid):
            if ser <= 0.2:
                assert result.means[TWO_LAYER_ACK][i] <= result.means[TWO_LAYER][i]

    def test_adaptive_ack_is_never_redundant(self):
        policy = FeedbackPolicy(PER_SYMBOL_ACK, ADAPTIVE)
        configs = [TrialConfig(RsdParams(1000, 0.1, 1.0), policy, seed=4, stream=(t,)) for t in range(100)]
        traces = run_trials(configs)
        assert sum(t.total_received for t in traces) >= 10 ** 5
        assert sum(t.redundant_count for t in traces) == 0
        assert all(t.complete and t.corrupted == 0 for t in traces)
