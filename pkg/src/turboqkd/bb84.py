"""BB84 quantum transmission, intercept-resend eavesdropping and sifting.

Bases and bits are carried as uint8 numpy arrays (0 = rectilinear, 1 = diagonal)
so that sessions of 10^5+ states stay vectorised. ``PolarizedState`` is the
scalar view of one element.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, Sequence

import numpy as np

from turboqkd.rng import stream


class Basis(IntEnum):
    RECTILINEAR = 0
    DIAGONAL = 1


# (basis, bit) -> polarization angle in degrees
_ANGLES = {
    (Basis.RECTILINEAR, 0): 0,
    (Basis.RECTILINEAR, 1): 90,
    (Basis.DIAGONAL, 0): 45,
    (Basis.DIAGONAL, 1): 135,
}


@dataclass(frozen=True)
class PolarizedState:
    basis: Basis
    bit: int

    def __post_init__(self):
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.bit not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {self.bit!r}")

    @property
    def angle(self) -> int:
        return _ANGLES[(self.basis, self.bit)]


@dataclass(frozen=True, eq=False)
class States:
    """A sequence of polarized states stored column-wise."""

    bases: np.ndarray
    bits: np.ndarray

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> PolarizedState:
        return PolarizedState(Basis(int(self.bases[i])), int(self.bits[i]))

    def __iter__(self) -> Iterator[PolarizedState]:
        return (self[i] for i in range(len(self)))

    def __eq__(self, other) -> bool:
        if isinstance(other, States):
            return np.array_equal(self.bases, other.bases) and np.array_equal(self.bits, other.bits)
        if isinstance(other, Sequence):
            return list(self) == list(other)
        return NotImplemented

    @classmethod
    def from_states(cls, states: Sequence[PolarizedState]) -> States:
        if isinstance(states, States):
            return states
        return cls(
            np.array([int(s.basis) for s in states], dtype=np.uint8),
            np.array([s.bit for s in states], dtype=np.uint8),
        )


@dataclass(frozen=True, eq=False)
class SiftedPair:
    x_a: np.ndarray
    x_b: np.ndarray
    kept_positions: np.ndarray
    raw_length: int

    def __post_init__(self):
        n = len(self.x_a)
        if len(self.x_b) != n or len(self.kept_positions) != n:
            raise ValueError("x_a, x_b and kept_positions must have equal length")

    def __len__(self) -> int:
        return len(self.x_a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SiftedPair):
            return NotImplemented
        return (
            self.raw_length == other.raw_length
            and np.array_equal(self.x_a, other.x_a)
            and np.array_equal(self.x_b, other.x_b)
            and np.array_equal(self.kept_positions, other.kept_positions)
        )

    @property
    def qber(self) -> float:
        """True mismatch rate (simulation ground truth)."""
        if len(self) == 0:
            return 0.0
        return float(np.count_nonzero(self.x_a != self.x_b)) / len(self)


@dataclass(frozen=True)
class AttackParams:
    s: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"interception probability must lie in [0, 1], got {self.s}")


def _as_bits(bits, name: str) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError(f"{name} must contain only 0/1")
    return arr.astype(np.uint8)


def prepare_states(bits, bases) -> States:
    """Alice's encoding of ``bits`` in ``bases``."""
    bits = _as_bits(bits, "bits")
    bases = _as_bits(bases, "bases")
    if len(bits) != len(bases):
        raise ValueError(f"got {len(bits)} bits but {len(bases)} bases")
    return States(bases, bits)


def measure(states, bases, rng: np.random.Generator) -> np.ndarray:
    """Measure each state in the given basis.

    A matching basis returns the encoded bit; a mismatched one returns a fair
    coin. One coin is drawn per state regardless of the outcome, so the amount
    of randomness consumed depends only on the number of states.
    """
    states = States.from_states(states)
    bases = _as_bits(bases, "bases")
    if len(states) != len(bases):
        raise ValueError(f"got {len(states)} states but {len(bases)} bases")
    coins = rng.integers(0, 2, size=len(states), dtype=np.uint8)
    return np.where(bases == states.bases, states.bits, coins).astype(np.uint8)


def intercept_resend(states, attack: AttackParams, rng: np.random.Generator) -> States:
    """Eve intercepts each state with probability ``attack.s``.

    An intercepted state is measured in a uniformly guessed basis and replaced
    by Eve's result prepared in that basis.
    """
    states = States.from_states(states)
    n = len(states)
    hit = rng.random(n) < attack.s
    eve_bases = rng.integers(0, 2, size=n, dtype=np.uint8)
    eve_bits = measure(states, eve_bases, rng)
    return States(
        np.where(hit, eve_bases, states.bases).astype(np.uint8),
        np.where(hit, eve_bits, states.bits).astype(np.uint8),
    )


def sift(alice_bases, bob_bases, alice_bits, bob_bits) -> SiftedPair:
    alice_bases = _as_bits(alice_bases, "alice_bases")
    bob_bases = _as_bits(bob_bases, "bob_bases")
    alice_bits = _as_bits(alice_bits, "alice_bits")
    bob_bits = _as_bits(bob_bits, "bob_bits")
    n = len(alice_bases)
    if not (len(bob_bases) == len(alice_bits) == len(bob_bits) == n):
        raise ValueError("sift inputs must all have the same length")
    kept = np.flatnonzero(alice_bases == bob_bases)
    return SiftedPair(alice_bits[kept], bob_bits[kept], kept, n)


def run_bb84_session(n_states: int, attack: AttackParams, seed: int) -> SiftedPair:
    """One full quantum phase: preparation, attack, measurement, sifting.

    Alice, Bob and Eve each draw from their own stream derived from ``seed``,
    so varying ``attack.s`` leaves Alice's and Bob's choices untouched.
    """
    if n_states <= 0:
        raise ValueError("n_states must be positive")
    alice = stream(seed, "alice")
    bob = stream(seed, "bob")
    eve = stream(seed, "eve")

    alice_bits = alice.integers(0, 2, size=n_states, dtype=np.uint8)
    alice_bases = alice.integers(0, 2, size=n_states, dtype=np.uint8)
    bob_bases = bob.integers(0, 2, size=n_states, dtype=np.uint8)

    sent = prepare_states(alice_bits, alice_bases)
    received = intercept_resend(sent, attack, eve)
    bob_bits = measure(received, bob_bases, bob)
    return sift(alice_bases, bob_bases, alice_bits, bob_bits)


def theoretical_ber(attack: AttackParams) -> float:
    """Sifted-key error rate induced by intercept-resend: s/4."""
    return attack.s / 4
