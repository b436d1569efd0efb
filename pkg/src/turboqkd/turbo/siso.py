"""Soft-in soft-out decoding of one RSC constituent code (BCJR forward/backward).

LLRs are ``log P(bit=0) / P(bit=1)`` throughout: positive means 0.
Branch metrics use the symmetric form ``+L/2`` for a 0 and ``-L/2`` for a 1.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from turboqkd.turbo.config import LLR_CLAMP, DecoderVariant
from turboqkd.turbo.trellis import Trellis

_NEG_INF = -np.inf


@njit(cache=True)
def _max_star(a, b, maxlog):
    if a == _NEG_INF:
        return b
    if b == _NEG_INF:
        return a
    m = a if a > b else b
    if maxlog:
        return m
    return m + math.log1p(math.exp(-abs(a - b)))


@njit(cache=True)
def _siso_kernel(lin, lp, lt, next_state, parity, tail_input, terminated, maxlog):
    n_blocks, n = lin.shape
    n_tail = lt.shape[1]
    total = n + n_tail
    n_states = next_state.shape[0]
    ext = np.empty((n_blocks, n))
    alpha = np.empty((total + 1, n_states))
    beta = np.empty((total + 1, n_states))

    for b in range(n_blocks):
        alpha[0, :] = _NEG_INF
        alpha[0, 0] = 0.0
        for t in range(total):
            for s in range(n_states):
                alpha[t + 1, s] = _NEG_INF
            for s in range(n_states):
                a = alpha[t, s]
                if a == _NEG_INF:
                    continue
                if t < n:
                    for u in range(2):
                        g = 0.5 * (1 - 2 * u) * lin[b, t] + 0.5 * (1 - 2 * parity[s, u]) * lp[b, t]
                        ns = next_state[s, u]
                        alpha[t + 1, ns] = _max_star(alpha[t + 1, ns], a + g, maxlog)
                else:
                    u = tail_input[s]
                    g = 0.5 * (1 - 2 * u) * lt[b, t - n] + 0.5 * (1 - 2 * parity[s, u]) * lp[b, t]
                    ns = next_state[s, u]
                    alpha[t + 1, ns] = _max_star(alpha[t + 1, ns], a + g, maxlog)
            top = _NEG_INF
            for s in range(n_states):
                if alpha[t + 1, s] > top:
                    top = alpha[t + 1, s]
            for s in range(n_states):
                alpha[t + 1, s] -= top

        for s in range(n_states):
            beta[total, s] = _NEG_INF if terminated and s != 0 else 0.0
        for t in range(total - 1, -1, -1):
            top = _NEG_INF
            for s in range(n_states):
                acc = _NEG_INF
                if t < n:
                    for u in range(2):
                        g = 0.5 * (1 - 2 * u) * lin[b, t] + 0.5 * (1 - 2 * parity[s, u]) * lp[b, t]
                        nb = beta[t + 1, next_state[s, u]]
                        if nb != _NEG_INF:
                            acc = _max_star(acc, nb + g, maxlog)
                else:
                    u = tail_input[s]
                    g = 0.5 * (1 - 2 * u) * lt[b, t - n] + 0.5 * (1 - 2 * parity[s, u]) * lp[b, t]
                    nb = beta[t + 1, next_state[s, u]]
                    if nb != _NEG_INF:
                        acc = nb + g
                beta[t, s] = acc
                if acc > top:
                    top = acc
            for s in range(n_states):
                beta[t, s] -= top

        for t in range(n):
            num0 = _NEG_INF
            num1 = _NEG_INF
            for s in range(n_states):
                a = alpha[t, s]
                if a == _NEG_INF:
                    continue
                for u in range(2):
                    nb = beta[t + 1, next_state[s, u]]
                    if nb == _NEG_INF:
                        continue
                    m = a + 0.5 * (1 - 2 * parity[s, u]) * lp[b, t] + nb
                    if u == 0:
                        num0 = _max_star(num0, m, maxlog)
                    else:
                        num1 = _max_star(num1, m, maxlog)
            ext[b, t] = num0 - num1
    return ext


def _soft(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite values")
    return np.clip(arr, -LLR_CLAMP, LLR_CLAMP)


def bcjr_decode(sys_llr, parity_llr, apriori, trellis: Trellis,
                variant: DecoderVariant | str = DecoderVariant.LOG_MAP,
                tail_llr=None) -> tuple[np.ndarray, np.ndarray]:
    """SISO decode of one constituent code; returns ``(extrinsic, posterior)``.

    The trellis is treated as terminated when ``parity_llr`` is ``memory``
    positions longer than ``sys_llr``; ``tail_llr`` then carries the
    termination input bits (zeros if omitted). Inputs of shape ``(B, N)``
    decode ``B`` blocks at once. All inputs are clipped to +/-LLR_CLAMP and
    the extrinsic output is clipped likewise, so
    ``posterior == apriori + sys + extrinsic`` on the clipped values.
    """
    variant = DecoderVariant(variant)
    sys_llr = _soft(sys_llr, "sys_llr")
    parity_llr = _soft(parity_llr, "parity_llr")
    apriori = _soft(apriori, "apriori")
    if sys_llr.shape != apriori.shape:
        raise ValueError(f"sys_llr shape {sys_llr.shape} != apriori shape {apriori.shape}")
    if sys_llr.ndim not in (1, 2) or parity_llr.shape[:-1] != sys_llr.shape[:-1]:
        raise ValueError("inputs must be 1-D or matching 2-D batches")
    n = sys_llr.shape[-1]
    extra = parity_llr.shape[-1] - n
    if extra == trellis.memory:
        terminated = True
    elif extra == 0:
        terminated = False
    else:
        raise ValueError(
            f"parity_llr length {parity_llr.shape[-1]} must be {n} or {n + trellis.memory}"
        )
    if tail_llr is None:
        tail_llr = np.zeros(sys_llr.shape[:-1] + (extra,))
    tail_llr = _soft(tail_llr, "tail_llr")
    if tail_llr.shape != sys_llr.shape[:-1] + (extra,):
        raise ValueError(f"tail_llr must have {extra} entries per block")

    single = sys_llr.ndim == 1
    lin = np.atleast_2d(sys_llr + apriori)
    ext = _siso_kernel(
        np.ascontiguousarray(lin),
        np.ascontiguousarray(np.atleast_2d(parity_llr)),
        np.ascontiguousarray(tail_llr.reshape(lin.shape[0], extra)),
        np.ascontiguousarray(trellis.next_state),
        np.ascontiguousarray(trellis.parity),
        np.ascontiguousarray(trellis.tail_input),
        terminated,
        variant is DecoderVariant.MAX_LOG_MAP,
    )
    if single:
        ext = ext[0]
    ext = np.clip(ext, -LLR_CLAMP, LLR_CLAMP)
    return ext, apriori + sys_llr + ext
