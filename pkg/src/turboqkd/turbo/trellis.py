from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from turboqkd.turbo.config import TurboConfig, check_polynomial


@dataclass(frozen=True, eq=False)
class Trellis:
    """State machine of one RSC constituent encoder.

    State bits hold the last ``memory`` feedback-register values, most recent
    in the highest bit. ``next_state[s, u]`` and ``parity[s, u]`` give the
    transition for input bit ``u``; ``tail_input[s]`` is the input that zeroes
    the feedback node, used to drive the register back to state 0.
    """

    memory: int
    next_state: np.ndarray
    parity: np.ndarray
    tail_input: np.ndarray

    @property
    def num_states(self) -> int:
        return 1 << self.memory

    def transitions(self):
        for s in range(self.num_states):
            for u in (0, 1):
                yield s, u, int(self.next_state[s, u]), int(self.parity[s, u])


def _xor_bits(x: int) -> int:
    return bin(x).count("1") & 1


def build_trellis(config: TurboConfig | None = None, *, feedback_poly: int | None = None,
                  forward_poly: int | None = None, constraint_length: int | None = None) -> Trellis:
    if config is not None:
        feedback_poly = config.feedback_poly
        forward_poly = config.forward_poly
        constraint_length = config.constraint_length
    check_polynomial(feedback_poly, constraint_length, "feedback")
    check_polynomial(forward_poly, constraint_length, "forward")

    m = constraint_length - 1
    mask = (1 << m) - 1
    fwd_lead = (forward_poly >> m) & 1
    n = 1 << m
    next_state = np.zeros((n, 2), dtype=np.int64)
    parity = np.zeros((n, 2), dtype=np.int64)
    tail_input = np.zeros(n, dtype=np.int64)
    for s in range(n):
        fb = _xor_bits(feedback_poly & mask & s)
        tail_input[s] = fb
        for u in (0, 1):
            a = u ^ fb
            next_state[s, u] = (a << (m - 1)) | (s >> 1)
            parity[s, u] = (fwd_lead & a) ^ _xor_bits(forward_poly & mask & s)
    for arr in (next_state, parity, tail_input):
        arr.setflags(write=False)
    return Trellis(m, next_state, parity, tail_input)
