import math

import numpy as np
import pytest

from turboqkd import (
    AttackParams,
    ProtocolError,
    QberEstimate,
    SiftedPair,
    TurboConfig,
    estimate_qber,
    measure_ber,
    reconcile,
    run_bb84_session,
)
from turboqkd.rng import stream


def _pair(x_a, x_b):
    x_a = np.asarray(x_a, dtype=np.uint8)
    return SiftedPair(x_a, np.asarray(x_b, dtype=np.uint8), np.arange(len(x_a)), len(x_a))


class TestMeasureBer:
    def test_identical(self):
        assert measure_ber([0, 1, 1], [0, 1, 1]) == 0

    def test_one_of_eight(self):
        assert measure_ber([0] * 8, [0] * 7 + [1]) == 0.125

    def test_complement(self):
        a = np.array([0, 1, 1, 0, 1])
        assert measure_ber(a, 1 - a) == 1.0

    def test_errors(self):
        with pytest.raises(ValueError):
            measure_ber([0, 1], [0])
        with pytest.raises(ValueError):
            measure_ber([], [])


class TestEstimate:
    def test_identical_keys(self, rng):
        x = rng.integers(0, 2, 1000)
        est, trimmed = estimate_qber(_pair(x, x), 0.1, rng)
        assert est.estimate == 0
        assert est.crossover == pytest.approx(1e-3)
        assert len(trimmed) == 1000 - est.sample_size

    def test_full_attack(self):
        pair = run_bb84_session(220_000, AttackParams(1.0), 2)
        pair = SiftedPair(pair.x_a[:100_000], pair.x_b[:100_000],
                          pair.kept_positions[:100_000], pair.raw_length)
        est, trimmed = estimate_qber(pair, 0.1, stream(2, "estimate"))
        assert est.sample_size == 10_000
        assert abs(est.estimate - 0.25) <= 3 * math.sqrt(0.25 * 0.75 / 10_000)
        assert len(trimmed) == 90_000

    def test_sampled_positions_removed(self, rng):
        pair = run_bb84_session(2000, AttackParams(0.5), 9)
        est, trimmed = estimate_qber(pair, 0.2, rng)
        removed = set(pair.kept_positions[est.sacrificed_positions].tolist())
        assert removed.isdisjoint(trimmed.kept_positions.tolist())
        assert len(removed) + len(trimmed) == len(pair)

    def test_too_short(self, rng):
        with pytest.raises(ProtocolError):
            estimate_qber(_pair([0] * 99, [0] * 99), 0.1, rng)

    @pytest.mark.parametrize("f", [0.0, 1.0, 1.5])
    def test_bad_fraction(self, f, rng):
        with pytest.raises(ValueError):
            estimate_qber(_pair([0] * 200, [0] * 200), f, rng)


def _no_sample(estimate):
    return QberEstimate(estimate, 0, np.array([], dtype=np.int64))


class TestReconcile:
    def test_zero_errors_reconcile_exactly(self):
        pair = run_bb84_session(10_000, AttackParams(0.0), 4)
        cfg = TurboConfig(block_length=512)
        est, trimmed = estimate_qber(pair, 0.1, stream(4, "estimate"))
        report = reconcile(trimmed, cfg, est)
        assert report.post_ber == 0
        assert np.array_equal(report.x_hat_a, trimmed.x_a)

    def test_disclosed_accounting(self):
        pair = run_bb84_session(10_000, AttackParams(0.5), 5)
        cfg = TurboConfig(block_length=512)
        est, trimmed = estimate_qber(pair, 0.1, stream(5, "estimate"))
        report = reconcile(trimmed, cfg, est)
        blocks = -(-len(trimmed) // 512)
        per_block = (512 + cfg.memory) + cfg.memory + 512
        assert report.num_blocks == blocks
        assert report.disclosed_bits == blocks * per_block + est.sample_size

    def test_pad_positions_excluded(self):
        # 700 bits with one error, block 512: 324 pad bits must not dilute the BER
        x_a = np.zeros(700, dtype=np.uint8)
        x_b = x_a.copy()
        x_b[10] = 1
        report = reconcile(_pair(x_a, x_b), TurboConfig(block_length=512), _no_sample(1 / 700))
        assert report.pad_bits == 324
        assert report.pre_ber == pytest.approx(1 / 700)
        assert len(report.x_hat_a) == 700

    def test_deterministic(self):
        pair = run_bb84_session(8000, AttackParams(0.7), 6)
        cfg = TurboConfig(block_length=256, iterations=4)
        est = _no_sample(pair.qber)
        a, b = reconcile(pair, cfg, est), reconcile(pair, cfg, est)
        assert np.array_equal(a.x_hat_a, b.x_hat_a)
        assert a.iteration_ber == b.iteration_ber

    def test_s08_gain(self):
        pair = run_bb84_session(240_000, AttackParams(0.8), 8)
        est, trimmed = estimate_qber(pair, 0.1, stream(8, "estimate"))
        report = reconcile(trimmed, TurboConfig(), est)
        n = len(trimmed)
        assert n >= 100 * 1024
        assert abs(report.pre_ber - 0.2) <= 3 * math.sqrt(0.2 * 0.8 / n)
        assert report.post_ber < report.pre_ber / 2

    def test_short_key(self):
        with pytest.raises(ProtocolError):
            reconcile(_pair([0] * 100, [0] * 100), TurboConfig(block_length=128), _no_sample(0.0))

    def test_unusable_channel(self):
        with pytest.raises(ProtocolError):
            reconcile(_pair([0] * 200, [1] * 200), TurboConfig(block_length=128), _no_sample(0.5))

    @pytest.mark.parametrize("s", [round(0.1 * i, 1) for i in range(1, 11)])
    def test_post_not_above_pre(self, s):
        pair = run_bb84_session(240_000, AttackParams(s), 12)
        est, trimmed = estimate_qber(pair, 0.1, stream(12, "estimate"))
        report = reconcile(trimmed, TurboConfig(), est)
        n = len(trimmed)
        sigma = math.sqrt(report.pre_ber * (1 - report.pre_ber) / n)
        assert report.post_ber <= report.pre_ber + 3 * sigma
