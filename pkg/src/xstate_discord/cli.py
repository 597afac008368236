"""Command-line driver: ``compute``, ``sweep``, ``figure`` and ``verify``.

Exit codes: 0 success, 1 invalid input, 2 nonphysical state without
``--unchecked``, 3 numerical failure (including a failed ``verify``).
"""
import argparse
import json
import re
import sys
import warnings

import numpy as np

from .correlations import MEASURES
from .errors import InvalidInputError, NonphysicalStateError, NumericalFailureError
from .experiments import (
    ORDERS, SWEEP_VARIABLES, PipelineConfig, SweepSpec, curve_csv, evaluate, figure, report_json,
    sweep,
)
from .noise import ChannelSpec
from .states import PRESETS, XStateParams
from .thermal import ThermalParams

EXIT_OK, EXIT_INVALID, EXIT_NONPHYSICAL, EXIT_NUMERICAL = 0, 1, 2, 3

_PI_RE = re.compile(r"^\s*(?P<k>\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(?P<d>\d*\.?\d+))?\s*$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def parse_number(text):
    """Float, or a multiple of pi such as ``pi/4`` or ``0.5pi``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    k = float(m.group("k")) if m.group("k") else 1.0
    d = float(m.group("d")) if m.group("d") else 1.0
    return k * np.pi / d


def parse_state(text):
    if text in PRESETS:
        return PRESETS[text], text
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidInputError(f"state must be a preset {sorted(PRESETS)} or c1,c2,c3")
    try:
        return XStateParams(*(float(p) for p in parts)), "custom"
    except ValueError:
        raise InvalidInputError(f"cannot parse state {text!r}") from None


def parse_measures(text):
    items = [m.strip() for m in text.split(",") if m.strip()]
    if not items:
        raise InvalidInputError("empty --measure list")
    for m in items:
        if m not in MEASURES:
            raise InvalidInputError(f"unknown measure {m!r}; choose from {MEASURES}")
    return tuple(items)


def _add_pipeline_flags(p):
    p.add_argument("--state", default="bell", help="preset name or c1,c2,c3")
    p.add_argument("--r", type=parse_number, default=0.0, help="acceleration angle in [0, pi/4]")
    p.add_argument("--channel", choices=("ad", "dep", "pf"))
    p.add_argument("--p", type=parse_number, default=None, help="decoherence parameter")
    p.add_argument("--nbar", type=parse_number, default=None, help="reservoir mean photon number")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--X", type=parse_number, default=None, help="monitor parameter in [0, 1]")
    g.add_argument("--t", type=parse_number, default=None, help="time (needs --nbar)")
    p.add_argument("--gamma", type=parse_number, default=1.0, help="spontaneous emission rate")
    p.add_argument("--order", choices=ORDERS, default="cn-th")
    p.add_argument("--measure", default="gmqd,min", help="comma list of gmqd,min,discord")
    p.add_argument("--unchecked", action="store_true", help="allow nonphysical initial states")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--grid", type=int, default=90, help="grid density for the discord search")


def config_from_args(args, sweep_var=None):
    state, label = parse_state(args.state)
    if sweep_var == "c":
        label = "werner-like"
    channel = None
    if args.channel:
        if args.p is None and sweep_var != "p":
            raise InvalidInputError("--channel needs --p")
        channel = ChannelSpec(args.channel, args.p if args.p is not None else 0.0)
    elif args.p is not None:
        raise InvalidInputError("--p needs --channel")
    thermal = None
    if args.nbar is not None or sweep_var == "nbar":
        nbar = args.nbar if args.nbar is not None else 0.0
        if args.t is not None:
            thermal = ThermalParams(nbar, args.gamma, time=args.t)
        elif args.X is not None:
            thermal = ThermalParams(nbar, args.gamma, monitor=args.X)
        elif sweep_var == "X":
            thermal = ThermalParams(nbar, args.gamma, monitor=1.0)
        else:
            raise InvalidInputError("--nbar needs --X or --t")
    elif args.X is not None or args.t is not None:
        raise InvalidInputError("--X/--t need --nbar")
    if sweep_var == "X" and thermal is None:
        raise InvalidInputError("an X sweep needs --nbar")
    return PipelineConfig(state=state, r=args.r, channel=channel, thermal=thermal,
                          order=args.order, measures=parse_measures(args.measure),
                          unchecked=args.unchecked, label=label, grid_density=args.grid)


def _warn_nonphysical(cfg):
    if cfg.unchecked and not cfg.state.physical:
        print(f"WARNING: nonphysical initial state {cfg.state.c.tolist()} "
              f"(min eigenvalue {cfg.state.min_eigenvalue:.6g})", file=sys.stderr)


def cmd_compute(args):
    cfg = config_from_args(args)
    _warn_nonphysical(cfg)
    rep = evaluate(cfg)
    if args.format == "json":
        print(report_json(cfg, rep))
    else:
        vals = rep.as_dict()
        sys.stdout.write(curve_csv(cfg, "point", [(0.0, vals)], cfg.measures))
    return EXIT_OK


def cmd_sweep(args):
    cfg = config_from_args(args, sweep_var=args.var)
    _warn_nonphysical(cfg)
    spec = SweepSpec(args.var, args.start, args.stop, args.steps, cfg)
    rows = sweep(spec, workers=args.workers)
    if args.format == "json":
        text = json.dumps({"config": cfg.describe(), "variable": args.var,
                           "rows": [dict(res, **{args.var: v}) for v, res in rows]},
                          sort_keys=True, indent=2) + "\n"
    else:
        text = curve_csv(cfg, args.var, rows, cfg.measures)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_figure(args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        paths = figure(args.n, args.out, workers=args.workers, points=args.points,
                       surface_points=args.surface_points)
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_verify(args):
    from .verification import CHECKS

    results = []
    for check in CHECKS:
        res = check()
        print(res.line(), flush=True)
        results.append(res)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_NUMERICAL


def build_parser():
    parser = _Parser(prog="xstate-discord", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate one pipeline configuration")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="sweep one parameter")
    p.add_argument("--var", choices=SWEEP_VARIABLES, required=True)
    p.add_argument("--from", dest="start", type=parse_number, required=True)
    p.add_argument("--to", dest="stop", type=parse_number, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="output file (default stdout)")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="regenerate the data of one figure")
    p.add_argument("n", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--surface-points", type=int, default=51)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run the oracle and invariant checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonphysicalStateError as exc:
        print(f"error: {exc} (pass --unchecked to proceed)", file=sys.stderr)
        return EXIT_NONPHYSICAL
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
