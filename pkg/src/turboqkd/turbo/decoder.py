from __future__ import annotations

import numpy as np

from turboqkd.turbo.config import TurboConfig
from turboqkd.turbo.interleaver import deinterleave, interleave
from turboqkd.turbo.siso import bcjr_decode
from turboqkd.turbo.trellis import Trellis, build_trellis


def bsc_llr(observed, crossover: float) -> np.ndarray:
    """Channel LLRs for bits seen through a binary symmetric channel."""
    if not 0.0 < crossover < 0.5:
        raise ValueError(f"crossover must lie in (0, 0.5), got {crossover}")
    bits = np.asarray(observed)
    return (1.0 - 2.0 * bits) * np.log((1.0 - crossover) / crossover)


def hard_decision(llr) -> np.ndarray:
    # positive LLR => 0; ties resolve to 0
    return (np.asarray(llr) < 0).astype(np.uint8)


def turbo_decode(sys_llr, parity1_llr, parity2_llr, config: TurboConfig,
                 tail_llr=None, trellis: Trellis | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Iterative decoding with extrinsic exchange between the two SISO decoders.

    Returns ``(decoded, iteration_trace)``; ``iteration_trace[k]`` is the hard
    decision after round ``k + 1``, so ``decoded == iteration_trace[-1]``.
    Batched inputs ``(B, N)`` give a trace of shape ``(iterations, B, N)``.
    """
    trellis = trellis or build_trellis(config)
    sys_llr = np.asarray(sys_llr, dtype=np.float64)
    parity2_llr = np.asarray(parity2_llr, dtype=np.float64)
    if sys_llr.shape[-1] != config.block_length:
        raise ValueError(f"sys_llr length {sys_llr.shape[-1]} != block length {config.block_length}")
    if parity2_llr.shape != sys_llr.shape:
        raise ValueError("parity2_llr must match sys_llr in shape")
    perm = config.perm
    sys_interleaved = interleave(sys_llr, perm)
    apriori1 = np.zeros_like(sys_llr)
    trace = []
    for _ in range(config.iterations):
        ext1, _ = bcjr_decode(sys_llr, parity1_llr, apriori1, trellis,
                              config.decoder_variant, tail_llr=tail_llr)
        ext2, post2 = bcjr_decode(sys_interleaved, parity2_llr, interleave(ext1, perm),
                                  trellis, config.decoder_variant)
        apriori1 = deinterleave(ext2, perm)
        trace.append(hard_decision(deinterleave(post2, perm)))
    trace = np.stack(trace)
    return trace[-1], trace
