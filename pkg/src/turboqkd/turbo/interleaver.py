import numpy as np


def _check(n: int, perm) -> None:
    if n != len(perm):
        raise ValueError(f"sequence length {n} != permutation length {len(perm)}")


def interleave(seq, perm):
    """``out[i] = seq[perm[i]]``; arrays are permuted along their last axis."""
    if isinstance(seq, np.ndarray):
        _check(seq.shape[-1], perm)
        return seq[..., np.asarray(perm)]
    _check(len(seq), perm)
    return [seq[p] for p in perm]


def deinterleave(seq, perm):
    """Inverse of :func:`interleave`."""
    if isinstance(seq, np.ndarray):
        _check(seq.shape[-1], perm)
        out = np.empty_like(seq)
        out[..., np.asarray(perm)] = seq
        return out
    _check(len(seq), perm)
    out = [None] * len(seq)
    for i, p in enumerate(perm):
        out[p] = seq[i]
    return out
