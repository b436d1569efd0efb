from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from turboqkd.errors import ConfigError

#: Bound on every LLR fed into or exchanged between the constituent decoders.
#: Channel inputs and extrinsic outputs are clipped to +/-LLR_CLAMP, so a
#: posterior (a-priori + systematic + extrinsic) never exceeds 3 * LLR_CLAMP.
LLR_CLAMP = 50.0


class DecoderVariant(str, Enum):
    LOG_MAP = "log-map"
    MAX_LOG_MAP = "max-log-map"


def check_polynomial(poly: int, constraint_length: int, name: str) -> None:
    """Generators are written MSB-first: the leading bit taps the register input (D^0)."""
    if poly <= 0:
        raise ConfigError(f"{name} polynomial must be nonzero")
    if poly.bit_length() != constraint_length or not poly & 1:
        raise ConfigError(
            f"{name} polynomial {poly:o} (octal) must have degree {constraint_length - 1} "
            "and a nonzero constant term"
        )


@dataclass(frozen=True, eq=False)
class TurboConfig:
    """Parameters of the parallel-concatenated code.

    Defaults: (7, 5) octal constituents, N = 1024, 18 iterations, Log-MAP.
    When no interleaver is given, one is drawn by shuffling with
    ``interleaver_seed``. ``crossover_estimate`` is the BSC crossover used
    to form channel reliabilities when the caller has no better estimate.
    """

    feedback_poly: int = 0o7
    forward_poly: int = 0o5
    constraint_length: int = 3
    block_length: int = 1024
    interleaver: np.ndarray | None = None
    iterations: int = 18
    decoder_variant: DecoderVariant = DecoderVariant.LOG_MAP
    crossover_estimate: float = 0.05
    interleaver_seed: int = 0x7E1B0
    _perm: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.constraint_length < 2:
            raise ConfigError("constraint_length must be at least 2")
        check_polynomial(self.feedback_poly, self.constraint_length, "feedback")
        check_polynomial(self.forward_poly, self.constraint_length, "forward")
        if self.block_length < 1:
            raise ConfigError("block_length must be positive")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if not 0.0 < self.crossover_estimate < 0.5:
            raise ConfigError("crossover_estimate must lie in (0, 0.5)")
        try:
            variant = DecoderVariant(self.decoder_variant)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        object.__setattr__(self, "decoder_variant", variant)

        if self.interleaver is None:
            perm = np.random.default_rng(self.interleaver_seed).permutation(self.block_length)
        else:
            perm = np.asarray(self.interleaver, dtype=np.int64).reshape(-1)
            if len(perm) != self.block_length or not np.array_equal(
                np.sort(perm), np.arange(self.block_length)
            ):
                raise ConfigError("interleaver must be a permutation of range(block_length)")
        perm.setflags(write=False)
        object.__setattr__(self, "_perm", perm)

    @property
    def perm(self) -> np.ndarray:
        return self._perm

    @property
    def memory(self) -> int:
        return self.constraint_length - 1
