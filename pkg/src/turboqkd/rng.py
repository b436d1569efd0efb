"""Labelled, seed-derived random streams.

Every party (Alice, Bob, Eve, the estimator) gets its own generator derived
from one session seed and a fixed label, so draws made by one party never
shift another party's stream.
"""

import zlib

import numpy as np


def label_key(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def stream(seed: int, *labels: str | int) -> np.random.Generator:
    """Generator for ``seed`` namespaced by ``labels`` (strings or ints)."""
    key = [int(seed)] + [label_key(x) if isinstance(x, str) else int(x) for x in labels]
    return np.random.default_rng(np.random.SeedSequence(key))
