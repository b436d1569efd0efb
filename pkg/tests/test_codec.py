import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import register_encode
from turboqkd import (
    ConfigError,
    TurboConfig,
    bsc_llr,
    build_trellis,
    deinterleave,
    interleave,
    rsc_encode,
    turbo_decode,
    turbo_encode,
)


class TestTrellis:
    def test_size(self):
        t = build_trellis(TurboConfig())
        assert t.num_states == 4
        assert len(list(t.transitions())) == 8

    def test_zero_fixed_point(self):
        t = build_trellis(TurboConfig())
        assert t.next_state[0, 0] == 0 and t.parity[0, 0] == 0

    def test_state0_input1(self):
        # hand trace: feedback node = 1 ^ 0 ^ 0, shifted into the top register bit
        t = build_trellis(TurboConfig())
        assert t.next_state[0, 1] == 2 and t.parity[0, 1] == 1

    @pytest.mark.parametrize("polys", [(0o7, 0o5, 3), (0o37, 0o21, 5), (0o13, 0o15, 4)])
    def test_two_in_two_out(self, polys):
        fb, fw, k = polys
        t = build_trellis(feedback_poly=fb, forward_poly=fw, constraint_length=k)
        incoming = np.bincount(t.next_state.reshape(-1), minlength=t.num_states)
        assert (incoming == 2).all()

    @pytest.mark.parametrize("fb,fw", [(0, 0o5), (0o6, 0o5), (0o7, 0o3), (0o17, 0o5)])
    def test_degenerate_polynomials(self, fb, fw):
        with pytest.raises(ConfigError):
            TurboConfig(feedback_poly=fb, forward_poly=fw)


class TestRscEncode:
    def test_all_zero(self):
        parity, tail = rsc_encode(np.zeros(16, dtype=int), build_trellis(TurboConfig()))
        assert not parity.any() and not tail.any()

    def test_impulse_response(self):
        parity, _ = rsc_encode([1] + [0] * 9, build_trellis(TurboConfig()))
        assert parity.tolist() == [1, 1, 1, 0, 1, 1, 0, 1, 1, 0]

    @pytest.mark.parametrize("polys", [(0o7, 0o5, 3), (0o37, 0o21, 5)])
    def test_matches_shift_register(self, polys, rng):
        fb, fw, k = polys
        trellis = build_trellis(feedback_poly=fb, forward_poly=fw, constraint_length=k)
        for _ in range(20):
            msg = rng.integers(0, 2, 40)
            parity, tail = rsc_encode(msg, trellis)
            ref_p, ref_tu, ref_tp = register_encode(msg, fb, fw, k)
            assert parity.tolist() == ref_p
            assert tail[:, 0].tolist() == ref_tu
            assert tail[:, 1].tolist() == ref_tp

    def test_termination_returns_to_zero(self, rng):
        trellis = build_trellis(TurboConfig())
        for _ in range(100):
            msg = rng.integers(0, 2, 64)
            _, tail = rsc_encode(msg, trellis)
            state = 0
            for u in list(msg) + tail[:, 0].tolist():
                state = trellis.next_state[state, u]
            assert state == 0

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            rsc_encode([0, 1, 1], build_trellis(TurboConfig()), block_length=4)


class TestTurboEncode:
    def test_all_zero(self):
        cw = turbo_encode(np.zeros(64, dtype=int), TurboConfig(block_length=64))
        for part in (cw.systematic, cw.parity1, cw.tail, cw.parity2):
            assert not part.any()

    def test_rate_one_third(self):
        cfg = TurboConfig(block_length=128)
        cw = turbo_encode(np.ones(128, dtype=int), cfg)
        total = cw.systematic.size + cw.parity1.size + cw.tail.size + cw.parity2.size
        assert total == 3 * 128 + 2 * cfg.memory
        assert cw.disclosed_bits == 2 * 128 + 2 * cfg.memory

    def test_codeword_invariants(self, rng):
        cfg = TurboConfig(block_length=50)
        trellis = build_trellis(cfg)
        msg = rng.integers(0, 2, 50)
        cw = turbo_encode(msg, cfg)
        p1, tail = rsc_encode(msg, trellis)
        p2, _ = rsc_encode(interleave(msg, cfg.perm), trellis, terminate=False)
        assert np.array_equal(cw.systematic, msg)
        assert np.array_equal(cw.parity1[:50], p1)
        assert np.array_equal(cw.parity1[50:], tail[:, 1])
        assert np.array_equal(cw.parity2, p2)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            turbo_encode(np.zeros(10, dtype=int), TurboConfig(block_length=12))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=32, max_size=32),
           st.lists(st.integers(0, 1), min_size=32, max_size=32))
    def test_linearity(self, a, b):
        cfg = TurboConfig(block_length=32)
        a, b = np.array(a), np.array(b)
        ca, cb, cx = turbo_encode(a, cfg), turbo_encode(b, cfg), turbo_encode(a ^ b, cfg)
        assert np.array_equal(ca.parity1[:32] ^ cb.parity1[:32], cx.parity1[:32])
        assert np.array_equal(ca.parity2 ^ cb.parity2, cx.parity2)


class TestInterleaver:
    def test_identity(self):
        assert interleave(["a", "b", "c"], [0, 1, 2]) == ["a", "b", "c"]

    def test_example(self):
        assert interleave(["a", "b", "c"], [2, 0, 1]) == ["c", "a", "b"]
        assert deinterleave(["c", "a", "b"], [2, 0, 1]) == ["a", "b", "c"]

    def test_random_roundtrip(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 64))
            perm = rng.permutation(n)
            seq = rng.normal(size=n)
            assert np.array_equal(deinterleave(interleave(seq, perm), perm), seq)
            assert sorted(perm.tolist()) == list(range(n))

    def test_batched_last_axis(self, rng):
        perm = rng.permutation(7)
        x = rng.normal(size=(3, 7))
        assert np.array_equal(interleave(x, perm)[1], interleave(x[1], perm))
        assert np.array_equal(deinterleave(interleave(x, perm), perm), x)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            interleave([1, 2], [0])
        with pytest.raises(ValueError):
            deinterleave(np.zeros(3), [1, 0])

    def test_config_interleaver_is_bijection(self):
        cfg = TurboConfig()
        assert np.array_equal(np.sort(cfg.perm), np.arange(cfg.block_length))

    def test_config_rejects_non_permutation(self):
        with pytest.raises(ConfigError):
            TurboConfig(block_length=4, interleaver=[0, 1, 1, 3])


class TestBscLlr:
    def test_quarter(self):
        assert bsc_llr([0], 0.25) == pytest.approx([math.log(3)], abs=1e-12)
        assert math.log(3) == pytest.approx(1.0986, abs=1e-4)

    def test_sign_convention(self):
        assert bsc_llr([1, 0], 0.1) == pytest.approx([-math.log(9), math.log(9)], abs=1e-12)

    def test_uninformative_limit(self):
        mags = [abs(bsc_llr([0], p)[0]) for p in (0.4, 0.49, 0.4999)]
        assert mags == sorted(mags, reverse=True) and mags[-1] < 1e-3

    @pytest.mark.parametrize("p", [0.0, 0.5, 0.7, -0.1])
    def test_out_of_range(self, p):
        with pytest.raises(ValueError):
            bsc_llr([0], p)
