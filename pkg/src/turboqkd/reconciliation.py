"""Parameter estimation and turbo-code reconciliation of sifted keys.

Alice encodes her sifted key block by block and publishes only the parity
streams (and termination bits). Bob treats his own sifted key as a noisy
copy of Alice's systematic bits and decodes with the published parity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from turboqkd.bb84 import SiftedPair
from turboqkd.errors import ProtocolError
from turboqkd.turbo import LLR_CLAMP, TurboConfig, bsc_llr, build_trellis, turbo_decode, turbo_encode

#: Decoder crossover is kept inside (EPS, 0.5 - EPS).
QBER_EPS = 1e-3
MIN_KEY_LENGTH = 100


@dataclass(frozen=True, eq=False)
class QberEstimate:
    estimate: float
    sample_size: int
    sacrificed_positions: np.ndarray

    @property
    def crossover(self) -> float:
        """The estimate clamped into the open interval the LLR formula needs."""
        return float(np.clip(self.estimate, QBER_EPS, 0.5 - QBER_EPS))


@dataclass(eq=False)
class ReconciliationReport:
    x_hat_a: np.ndarray
    pre_ber: float
    post_ber: float
    disclosed_bits: int
    iterations_used: int
    # post-reconciliation BER after each decoder round
    iteration_ber: list[float] = field(default_factory=list)
    elapsed: dict[str, float] = field(default_factory=dict)
    num_blocks: int = 0
    pad_bits: int = 0


def measure_ber(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        raise ValueError("cannot measure BER of empty strings")
    return float(np.count_nonzero(a != b)) / a.size


def estimate_qber(pair: SiftedPair, sample_fraction: float,
                  rng: np.random.Generator) -> tuple[QberEstimate, SiftedPair]:
    """Publicly compare a random sample of the sifted key and discard it."""
    if not 0.0 < sample_fraction < 1.0:
        raise ValueError("sample_fraction must lie in (0, 1)")
    n = len(pair)
    if n < MIN_KEY_LENGTH:
        raise ProtocolError(f"sifted key of {n} bits is too short to estimate (need {MIN_KEY_LENGTH})")
    size = min(max(1, round(sample_fraction * n)), n - 1)
    sampled = np.sort(rng.choice(n, size=size, replace=False))
    estimate = float(np.count_nonzero(pair.x_a[sampled] != pair.x_b[sampled])) / size
    keep = np.ones(n, dtype=bool)
    keep[sampled] = False
    trimmed = SiftedPair(pair.x_a[keep], pair.x_b[keep], pair.kept_positions[keep], pair.raw_length)
    return QberEstimate(estimate, size, sampled), trimmed


def reconcile(pair: SiftedPair, config: TurboConfig, qber: QberEstimate) -> ReconciliationReport:
    """Correct Bob's key towards Alice's using published turbo parity.

    The final partial block is padded with zeros known to both sides; pad
    positions enter the decoder as certain and are dropped before any BER is
    computed. Deterministic: no randomness is drawn here.
    """
    n = len(pair)
    N = config.block_length
    if n < N:
        raise ProtocolError(f"key of {n} bits is shorter than one {N}-bit block")
    if qber.estimate >= 0.5:
        raise ProtocolError(f"estimated QBER {qber.estimate:.3f} leaves no usable correlation")

    trellis = build_trellis(config)
    blocks = -(-n // N)
    pad = blocks * N - n
    x_a = np.concatenate([pair.x_a, np.zeros(pad, dtype=np.uint8)]).reshape(blocks, N)
    x_b = np.concatenate([pair.x_b, np.zeros(pad, dtype=np.uint8)]).reshape(blocks, N)

    t0 = time.perf_counter()
    cw = turbo_encode(x_a, config, trellis)
    t1 = time.perf_counter()

    # Public channel is error-free: published bits enter at the clamp bound.
    def public(bits):
        return LLR_CLAMP * (1.0 - 2.0 * bits)

    sys_llr = bsc_llr(x_b, qber.crossover)
    sys_llr.reshape(-1)[n:] = LLR_CLAMP
    decoded, trace = turbo_decode(
        sys_llr, public(cw.parity1), public(cw.parity2), config,
        tail_llr=public(cw.tail), trellis=trellis,
    )
    t2 = time.perf_counter()

    x_hat = decoded.reshape(-1)[:n]
    return ReconciliationReport(
        x_hat_a=x_hat,
        pre_ber=measure_ber(pair.x_a, pair.x_b),
        post_ber=measure_ber(pair.x_a, x_hat),
        disclosed_bits=blocks * cw.disclosed_bits + qber.sample_size,
        iterations_used=config.iterations,
        iteration_ber=[measure_ber(pair.x_a, step.reshape(-1)[:n]) for step in trace],
        elapsed={"encode": t1 - t0, "decode": t2 - t1},
        num_blocks=blocks,
        pad_bits=pad,
    )
