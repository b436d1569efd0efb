"""BB84 simulation under intercept-resend attack with turbo-code reconciliation."""

from turboqkd.bb84 import (
    AttackParams,
    Basis,
    PolarizedState,
    SiftedPair,
    intercept_resend,
    measure,
    prepare_states,
    run_bb84_session,
    sift,
    theoretical_ber,
)
from turboqkd.errors import ConfigError, ProtocolError
from turboqkd.reconciliation import (
    QberEstimate,
    ReconciliationReport,
    estimate_qber,
    measure_ber,
    reconcile,
)
from turboqkd.turbo import (
    Codeword,
    DecoderVariant,
    LLR_CLAMP,
    Trellis,
    TurboConfig,
    bcjr_decode,
    bsc_llr,
    build_trellis,
    deinterleave,
    interleave,
    rsc_encode,
    turbo_decode,
    turbo_encode,
)

__version__ = "0.1.0"

__all__ = [
    "AttackParams",
    "Basis",
    "Codeword",
    "ConfigError",
    "DecoderVariant",
    "LLR_CLAMP",
    "PolarizedState",
    "ProtocolError",
    "QberEstimate",
    "ReconciliationReport",
    "SiftedPair",
    "Trellis",
    "TurboConfig",
    "bcjr_decode",
    "bsc_llr",
    "build_trellis",
    "deinterleave",
    "estimate_qber",
    "intercept_resend",
    "interleave",
    "measure",
    "measure_ber",
    "prepare_states",
    "reconcile",
    "rsc_encode",
    "run_bb84_session",
    "sift",
    "theoretical_ber",
    "turbo_decode",
    "turbo_encode",
]
