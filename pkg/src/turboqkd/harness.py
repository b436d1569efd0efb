"""Monte-Carlo sweep over the interception probability.

For every ``s`` and every trial a BB84 session is simulated, the QBER is
estimated on a sacrificed sample, and the remaining key is reconciled once
per iteration setting. Trial ``k`` uses the same session seed for every
``s`` (common random numbers), so curves across ``s`` differ only through
Eve's actions.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from turboqkd.bb84 import AttackParams, run_bb84_session
from turboqkd.errors import ConfigError
from turboqkd.reconciliation import estimate_qber, reconcile
from turboqkd.rng import stream
from turboqkd.turbo import TurboConfig

DEFAULT_S_VALUES = tuple(round(0.1 * i, 1) for i in range(11))

COLUMNS = (
    "s",
    "iterations",
    "theoretical_ber",
    "pre_ber",
    "pre_ber_stderr",
    "post_ber",
    "post_ber_stderr",
    "disclosed_bits",
    "session_seconds",
    "reconcile_seconds",
)
#: Value of the ``s`` column on grid-averaged summary rows.
SUMMARY_LABEL = "mean"


@dataclass
class SweepConfig:
    s_values: Sequence[float] = DEFAULT_S_VALUES
    n_states: int = 20_000
    trials: int = 10
    turbo: TurboConfig = field(default_factory=TurboConfig)
    iteration_settings: Sequence[int] = (1, 18)
    seed: int = 0
    sample_fraction: float = 0.1
    out: str | os.PathLike | None = None
    # wall-clock columns are zeroed when False, making output byte-reproducible
    timings: bool = True

    def __post_init__(self):
        self.s_values = tuple(float(s) for s in self.s_values)
        self.iteration_settings = tuple(int(i) for i in self.iteration_settings)
        if not self.s_values:
            raise ConfigError("s_values must not be empty")
        if any(not 0.0 <= s <= 1.0 for s in self.s_values):
            raise ConfigError("every s must lie in [0, 1]")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.n_states < 1:
            raise ConfigError("n_states must be positive")
        if not self.iteration_settings or min(self.iteration_settings) < 1:
            raise ConfigError("iteration_settings must be a nonempty list of positive counts")
        if not 0.0 < self.sample_fraction < 1.0:
            raise ConfigError("sample_fraction must lie in (0, 1)")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")


@dataclass(frozen=True)
class SweepRow:
    s: float | None  # None on summary rows
    iterations: int
    theoretical_ber: float
    pre_ber: float
    pre_ber_stderr: float
    post_ber: float
    post_ber_stderr: float
    disclosed_bits: float
    session_seconds: float
    reconcile_seconds: float

    @property
    def is_summary(self) -> bool:
        return self.s is None


def _mean_stderr(values) -> tuple[float, float]:
    arr = np.asarray(values, dtype=np.float64)
    if len(arr) < 2:
        return float(arr.mean()), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(len(arr)))


def _summary(rows: list[SweepRow], iterations: int) -> SweepRow:
    rows = [r for r in rows if r.iterations == iterations]
    k = len(rows)
    return SweepRow(
        s=None,
        iterations=iterations,
        theoretical_ber=sum(r.theoretical_ber for r in rows) / k,
        pre_ber=sum(r.pre_ber for r in rows) / k,
        pre_ber_stderr=math.sqrt(sum(r.pre_ber_stderr**2 for r in rows)) / k,
        post_ber=sum(r.post_ber for r in rows) / k,
        post_ber_stderr=math.sqrt(sum(r.post_ber_stderr**2 for r in rows)) / k,
        disclosed_bits=sum(r.disclosed_bits for r in rows) / k,
        session_seconds=sum(r.session_seconds for r in rows) / k,
        reconcile_seconds=sum(r.reconcile_seconds for r in rows) / k,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per (s, iteration setting), then one summary row per setting.

    Writes the CSV to ``config.out`` when set.
    """
    if config.out is not None:
        parent = Path(config.out).resolve().parent
        if not parent.is_dir() or not os.access(parent, os.W_OK):
            raise OSError(f"cannot write output to {config.out}")

    clock = time.perf_counter if config.timings else (lambda: 0.0)
    turbo_by_iters = {
        it: dataclasses.replace(config.turbo, iterations=it, interleaver=config.turbo.perm)
        for it in config.iteration_settings
    }
    rows = []
    for s in config.s_values:
        attack = AttackParams(s)
        pre = []
        post = {it: [] for it in config.iteration_settings}
        disclosed = {it: [] for it in config.iteration_settings}
        session_t = []
        reconcile_t = {it: [] for it in config.iteration_settings}
        for trial in range(config.trials):
            trial_seed = int(stream(config.seed, "trial", trial).integers(2**63))
            t0 = clock()
            pair = run_bb84_session(config.n_states, attack, trial_seed)
            session_t.append(clock() - t0)
            qber, trimmed = estimate_qber(pair, config.sample_fraction, stream(trial_seed, "estimate"))
            for it, turbo in turbo_by_iters.items():
                t0 = clock()
                report = reconcile(trimmed, turbo, qber)
                reconcile_t[it].append(clock() - t0)
                post[it].append(report.post_ber)
                disclosed[it].append(report.disclosed_bits)
            pre.append(report.pre_ber)
        pre_mean, pre_err = _mean_stderr(pre)
        for it in config.iteration_settings:
            post_mean, post_err = _mean_stderr(post[it])
            rows.append(SweepRow(
                s=s,
                iterations=it,
                theoretical_ber=s / 4,
                pre_ber=pre_mean,
                pre_ber_stderr=pre_err,
                post_ber=post_mean,
                post_ber_stderr=post_err,
                disclosed_bits=float(np.mean(disclosed[it])),
                session_seconds=float(np.mean(session_t)),
                reconcile_seconds=float(np.mean(reconcile_t[it])),
            ))
    rows.extend(_summary(rows, it) for it in config.iteration_settings)
    if config.out is not None:
        emit_csv(rows, config.out)
    return rows


def error_removal(rows: Sequence[SweepRow], iterations: int) -> float:
    """Mean over the s grid of ``1 - post/pre``; rows with no initial errors are skipped."""
    ratios = [
        1.0 - r.post_ber / r.pre_ber
        for r in rows
        if not r.is_summary and r.iterations == iterations and r.pre_ber > 0
    ]
    if not ratios:
        raise ValueError(f"no rows with nonzero pre-reconciliation BER at {iterations} iterations")
    return sum(ratios) / len(ratios)


def _fmt(x) -> str:
    if x is None:
        return SUMMARY_LABEL
    if isinstance(x, int):
        return str(x)
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def format_csv(rows: Sequence[SweepRow]) -> str:
    if not rows:
        raise ValueError("no rows to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(_fmt(getattr(row, c)) for c in COLUMNS)
    return buf.getvalue()


def emit_csv(rows: Sequence[SweepRow], path) -> None:
    text = format_csv(rows)
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(text)


def parse_csv(text: str) -> list[SweepRow]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    rows = []
    for rec in reader:
        rows.append(SweepRow(
            s=None if rec["s"] == SUMMARY_LABEL else float(rec["s"]),
            iterations=int(rec["iterations"]),
            **{c: float(rec[c]) for c in COLUMNS[2:]},
        ))
    return rows


def read_csv(path) -> list[SweepRow]:
    with open(path, encoding="ascii") as fh:
        return parse_csv(fh.read())
