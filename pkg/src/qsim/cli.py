"""Command-line front end.

Subcommands: run an experiment file, sweep the two-photon dip, decode a
joint-detection message, validate a file, or start the HTTP service. The
QSIM_CUTOFF environment variable (or --cutoff) replaces the default Fock
dimension; a cutoff written in the experiment file always wins.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import QsimError
from .experiments.graph_io import load_experiment, validate_graph_dict
from .experiments.hom import HOM_DEFAULT_CUTOFF_DIM, run_hom_sweep
from .experiments.jdr_run import JDR_DEFAULT_CUTOFF_DIM, run_jdr
from .experiments.results import ResultSet, export_results
from .experiments.runner import run_experiment
from .experiments.server import DEFAULT_BIND, serve
from .fock.operators import FockCutoff


def _parse_delays(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("range form is start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise argparse.ArgumentTypeError("count must be >= 1")
        return [float(x) for x in np.linspace(start, stop, count)]
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _export(rs: ResultSet, out: str | None) -> None:
    out_dir = Path(out) if out else Path("results") / rs.run_id
    paths = export_results(rs, out_dir)
    print(f"run {rs.run_id}: wrote {len(paths)} files to {out_dir}")


def _cmd_run(args) -> int:
    spec = load_experiment(args.file)
    if spec.sim.cutoff is None and args.cutoff is not None:
        spec.sim.cutoff = args.cutoff
    rs = run_experiment(spec)
    for name, table in rs.tables.items():
        print(f"table {name}: {len(table.rows)} rows")
    for name in rs.grids:
        print(f"grid {name}")
    for warning in rs.metadata.get("warnings", []):
        print(f"warning: {warning}", file=sys.stderr)
    _export(rs, args.out)
    return 0


def _cmd_hom_sweep(args) -> int:
    rs = run_hom_sweep(args.delays, sigma=args.sigma, omega=args.omega, cutoff=args.cutoff)
    print("delay        lambda       p_coincidence")
    for delay, lam, p in rs.tables["hom_sweep"].rows:
        print(f"{delay:+.6f}  {lam:.9f}  {p:.9f}")
    if args.out:
        _export(rs, args.out)
    return 0


def _cmd_jdr(args) -> int:
    mode = "sample" if args.sample is not None else "probability"
    rs = run_jdr(
        args.message,
        pulses=args.pulses,
        alpha=args.alpha,
        cutoff=FockCutoff(args.cutoff),
        mode=mode,
        seed=args.sample,
        start_index=args.start_index,
        wigner=not args.no_wigner,
    )
    print("round  guess  p_yes        mismatches  outcome")
    for rnd, guess, p_yes, mism, outcome in rs.tables["jdr_transcript"].rows:
        print(f"{rnd:>5}  {guess}  {p_yes:.9f}  {mism:>10}  {outcome}")
    declared = rs.metadata["declared_bits"]
    print(f"declared: {declared if declared is not None else 'none'} "
          f"after {rs.metadata['rounds']} rounds")
    if args.out:
        _export(rs, args.out)
    return 0


def _cmd_validate(args) -> int:
    try:
        obj = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    errors = validate_graph_dict(obj)
    for err in errors:
        print(f"{err['pointer'] or '/'}: {err['error']}", file=sys.stderr)
    if errors:
        return 1
    print("ok")
    return 0


def _cmd_serve(args) -> int:
    serve(args.bind)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment file and export results")
    p_run.add_argument("file", help="experiment JSON file")
    p_run.add_argument("--out", help="output directory (default results/<run_id>)")
    p_run.add_argument("--cutoff", type=int, help="Fock dimension when the file sets none")
    p_run.set_defaults(func=_cmd_run)

    p_hom = sub.add_parser("hom-sweep", help="two-photon dip over envelope delays")
    p_hom.add_argument("--delays", type=_parse_delays, required=True,
                       help="start:stop:count or comma list, e.g. -5:5:11")
    p_hom.add_argument("--sigma", type=float, default=1.0, help="envelope width")
    p_hom.add_argument("--omega", type=float, default=0.0, help="carrier frequency")
    p_hom.add_argument("--cutoff", type=int, default=HOM_DEFAULT_CUTOFF_DIM)
    p_hom.add_argument("--out", help="export directory")
    p_hom.set_defaults(func=_cmd_hom_sweep)

    p_jdr = sub.add_parser("jdr", help="sequential joint-detection decoding")
    p_jdr.add_argument("--message", type=int, required=True, help="codeword index to send")
    p_jdr.add_argument("--pulses", type=int, default=3)
    p_jdr.add_argument("--alpha", type=float, default=0.4)
    p_jdr.add_argument("--cutoff", type=int, default=JDR_DEFAULT_CUTOFF_DIM)
    p_jdr.add_argument("--sample", type=int, metavar="SEED",
                       help="draw outcomes with this seed instead of exact probabilities")
    p_jdr.add_argument("--start-index", type=int, default=0,
                       help="first guess in the wrap-around enumeration")
    p_jdr.add_argument("--no-wigner", action="store_true", help="skip phase-space grids")
    p_jdr.add_argument("--out", help="export directory")
    p_jdr.set_defaults(func=_cmd_jdr)

    p_val = sub.add_parser("validate", help="check an experiment file, print pointered errors")
    p_val.add_argument("file")
    p_val.set_defaults(func=_cmd_validate)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--bind", default=DEFAULT_BIND, help="host:port")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
