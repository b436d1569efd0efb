"""Command-line driver for the s-sweep.

    turboqkd --s-values 0,0.1,0.5,1 --trials 5 --out sweep.csv
"""

from __future__ import annotations

import argparse
import logging
import sys

from turboqkd.errors import ConfigError, ProtocolError
from turboqkd.harness import SweepConfig, error_removal, format_csv, run_sweep
from turboqkd.turbo import DecoderVariant, TurboConfig

log = logging.getLogger("turboqkd")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="turboqkd",
        description="Sweep the intercept-resend probability s and report BER before/after "
                    "turbo-code reconciliation as CSV.",
    )
    p.add_argument("--s-values", type=_floats, default=None,
                   help="comma list of interception probabilities (default 0,0.1,...,1)")
    p.add_argument("--n-states", type=int, default=20_000, help="states sent per session")
    p.add_argument("--trials", type=int, default=10, help="sessions per s value")
    p.add_argument("--iterations", type=_ints, default=[1, 18],
                   help="comma list of decoder iteration counts (default 1,18)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample-fraction", type=float, default=0.1,
                   help="fraction of the sifted key sacrificed for QBER estimation")
    p.add_argument("--block-length", type=int, default=1024, help="turbo block length N")
    p.add_argument("--decoder", choices=[v.value for v in DecoderVariant], default="log-map")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--no-timings", action="store_true",
                   help="write 0 in the timing columns so output is byte-reproducible")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        turbo = TurboConfig(block_length=args.block_length, decoder_variant=args.decoder)
        kwargs = {} if args.s_values is None else {"s_values": args.s_values}
        config = SweepConfig(
            n_states=args.n_states,
            trials=args.trials,
            turbo=turbo,
            iteration_settings=args.iterations,
            seed=args.seed,
            sample_fraction=args.sample_fraction,
            out=args.out,
            timings=not args.no_timings,
            **kwargs,
        )
        rows = run_sweep(config)
    except (ConfigError, ProtocolError, ValueError, OSError) as exc:
        print(f"turboqkd: error: {exc}", file=sys.stderr)
        return 1

    if args.out is None:
        sys.stdout.write(format_csv(rows))
    for it in config.iteration_settings:
        try:
            log.info("iterations=%d: mean error removal %.1f%%", it, 100 * error_removal(rows, it))
        except ValueError:
            pass
    return 0


if __name__ == "__main__":
    sys.exit(main())
