from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from turboqkd.turbo.config import TurboConfig
from turboqkd.turbo.interleaver import interleave
from turboqkd.turbo.trellis import Trellis, build_trellis


@dataclass(frozen=True, eq=False)
class Codeword:
    """Output of the turbo encoder for one block (or a batch of blocks).

    ``parity1`` includes the termination parity of encoder 1, ``tail`` holds
    the matching termination input bits; encoder 2 runs unterminated.
    """

    systematic: np.ndarray
    parity1: np.ndarray
    tail: np.ndarray
    parity2: np.ndarray

    @property
    def disclosed_bits(self) -> int:
        """Bits of one block that go over the public channel (everything but the systematic part)."""
        return self.parity1.shape[-1] + self.tail.shape[-1] + self.parity2.shape[-1]

    def __eq__(self, other):
        if not isinstance(other, Codeword):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("systematic", "parity1", "tail", "parity2")
        )


def _as_message(message, block_length: int | None) -> np.ndarray:
    msg = np.asarray(message)
    if msg.ndim == 0:
        raise ValueError("message must be a bit sequence")
    if block_length is not None and msg.shape[-1] != block_length:
        raise ValueError(f"message length {msg.shape[-1]} != block length {block_length}")
    if msg.size and not np.isin(msg, (0, 1)).all():
        raise ValueError("message must contain only 0/1")
    return msg.astype(np.int64)


def rsc_encode(message, trellis: Trellis, *, block_length: int | None = None,
               terminate: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Run the RSC encoder over ``message`` (last axis is time).

    Returns ``(parity, tail)`` where ``tail[..., k, :]`` is the
    ``(input bit, parity bit)`` pair of termination step ``k``. With
    ``terminate=False`` the tail has zero steps.
    """
    msg = _as_message(message, block_length)
    state = np.zeros(msg.shape[:-1], dtype=np.int64)
    parity = np.empty_like(msg)
    for t in range(msg.shape[-1]):
        u = msg[..., t]
        parity[..., t] = trellis.parity[state, u]
        state = trellis.next_state[state, u]

    steps = trellis.memory if terminate else 0
    tail = np.empty(msg.shape[:-1] + (steps, 2), dtype=np.int64)
    for k in range(steps):
        u = trellis.tail_input[state]
        tail[..., k, 0] = u
        tail[..., k, 1] = trellis.parity[state, u]
        state = trellis.next_state[state, u]
    return parity.astype(np.uint8), tail.astype(np.uint8)


def turbo_encode(message, config: TurboConfig, trellis: Trellis | None = None) -> Codeword:
    """Rate-1/3 parallel concatenation: systematic, parity of the message, parity of its interleaving.

    A 2-D ``message`` encodes a batch of blocks (one per row).
    """
    trellis = trellis or build_trellis(config)
    msg = _as_message(message, config.block_length)
    p1, tail = rsc_encode(msg, trellis)
    p2, _ = rsc_encode(interleave(msg, config.perm), trellis, terminate=False)
    return Codeword(
        systematic=msg.astype(np.uint8),
        parity1=np.concatenate([p1, tail[..., 1]], axis=-1),
        tail=tail[..., 0],
        parity2=p2,
    )
