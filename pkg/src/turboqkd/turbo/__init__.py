"""Parallel-concatenated RSC (turbo) code with Log-MAP / Max-Log-MAP iterative decoding."""

from turboqkd.turbo.config import LLR_CLAMP, DecoderVariant, TurboConfig
from turboqkd.turbo.decoder import bsc_llr, hard_decision, turbo_decode
from turboqkd.turbo.encoder import Codeword, rsc_encode, turbo_encode
from turboqkd.turbo.interleaver import deinterleave, interleave
from turboqkd.turbo.siso import bcjr_decode
from turboqkd.turbo.trellis import Trellis, build_trellis

__all__ = [
    "Codeword",
    "DecoderVariant",
    "LLR_CLAMP",
    "Trellis",
    "TurboConfig",
    "bcjr_decode",
    "bsc_llr",
    "build_trellis",
    "deinterleave",
    "hard_decision",
    "interleave",
    "rsc_encode",
    "turbo_decode",
    "turbo_encode",
]
