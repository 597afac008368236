"""Pipeline evaluation, one-parameter sweeps and figure data regeneration.

The pipeline is: Bell-diagonal initial state, Unruh transform of Bob's qubit,
then the local Kraus channel and the thermal reservoir in the configured
order (``cn-th`` by default), then the correlation measures.
"""
import csv
import io
import json
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .correlations import MEASURES, correlation_report
from .errors import InvalidInputError
from .noise import ChannelSpec, apply_two_qubit_channel
from .relativistic import R_MAX, check_r, unruh_transform_closed
from .states import XStateParams, make_x_state, preset, werner_like
from .thermal import ThermalParams, thermal_evolve_closed

ORDERS = ("cn-th", "th-cn")
SWEEP_VARIABLES = ("r", "p", "X", "c", "nbar")
CHANNEL_TAGS = {"amplitude-damping": "ad", "depolarizing": "dep", "phase-flip": "pf"}


@dataclass(frozen=True)
class PipelineConfig:
    state: XStateParams
    r: float = 0.0
    channel: Optional[ChannelSpec] = None
    thermal: Optional[ThermalParams] = None
    order: str = "cn-th"
    measures: tuple = ("gmqd", "min")
    unchecked: bool = False
    label: str = ""
    grid_density: int = 90

    def __post_init__(self):
        if not isinstance(self.state, XStateParams):
            object.__setattr__(self, "state", XStateParams(*self.state))
        object.__setattr__(self, "r", check_r(self.r))
        if self.order not in ORDERS:
            raise InvalidInputError(f"order must be one of {ORDERS}, got {self.order!r}")
        measures = tuple(self.measures)
        if not measures:
            raise InvalidInputError("request at least one measure")
        bad = [m for m in measures if m not in MEASURES]
        if bad:
            raise InvalidInputError(f"unknown measures {bad}; choose from {MEASURES}")
        object.__setattr__(self, "measures", measures)

    @classmethod
    def from_preset(cls, name, **kwargs):
        kwargs.setdefault("label", name)
        return cls(state=preset(name), **kwargs)

    def describe(self):
        """JSON-serialisable summary used in output headers."""
        d = {
            "state": self.label or "custom",
            "c": [self.state.c1, self.state.c2, self.state.c3],
            "r": self.r,
            "channel": asdict(self.channel) if self.channel else None,
            "thermal": asdict(self.thermal) if self.thermal else None,
            "order": self.order,
            "measures": list(self.measures),
            "unchecked": self.unchecked,
        }
        return d


def pipeline_state(cfg):
    """Final two-qubit density matrix for ``cfg``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        make_x_state(cfg.state, unchecked=cfg.unchecked)
    rho = unruh_transform_closed(cfg.state, cfg.r)

    def channel(m):
        return apply_two_qubit_channel(m, cfg.channel) if cfg.channel else m

    def thermal(m):
        return thermal_evolve_closed(m, cfg.thermal) if cfg.thermal else m

    if cfg.order == "cn-th":
        return thermal(channel(rho))
    return channel(thermal(rho))


def evaluate(cfg):
    """Run the pipeline and the requested measures. Deterministic."""
    return correlation_report(pipeline_state(cfg), cfg.measures, cfg.grid_density)


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    fixed: PipelineConfig

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise InvalidInputError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if not self.start <= self.stop:
            raise InvalidInputError("sweep needs start <= stop")
        if int(self.steps) < 1:
            raise InvalidInputError("steps must be a positive integer")
        lo, hi = _DOMAINS[self.variable]
        if self.start < lo or self.stop > hi:
            raise InvalidInputError(f"{self.variable} range [{self.start}, {self.stop}] "
                                    f"outside its domain [{lo}, {hi}]")
        if self.variable == "p" and self.fixed.channel is None:
            raise InvalidInputError("a p sweep needs a channel in the fixed configuration")
        if self.variable in ("X", "nbar") and self.fixed.thermal is None:
            raise InvalidInputError(f"an {self.variable} sweep needs thermal parameters")

    def values(self):
        v = np.linspace(self.start, self.stop, int(self.steps) + 1)
        # linspace endpoints are exact; pin them anyway
        v[0], v[-1] = self.start, self.stop
        return v


_DOMAINS = {"r": (0.0, R_MAX + 1e-15), "p": (0.0, 1.0), "X": (0.0, 1.0),
            "c": (0.0, 1.0), "nbar": (0.0, np.inf)}


def with_variable(cfg, variable, value):
    """Copy of ``cfg`` with one sweep variable replaced."""
    value = float(value)
    if variable == "r":
        return replace(cfg, r=min(value, R_MAX))
    if variable == "p":
        return replace(cfg, channel=ChannelSpec(cfg.channel.kind, value))
    if variable == "X":
        th = cfg.thermal
        return replace(cfg, thermal=ThermalParams(th.nbar, th.gamma, monitor=value))
    if variable == "nbar":
        th = cfg.thermal
        return replace(cfg, thermal=ThermalParams(value, th.gamma, th.time, th.monitor))
    if variable == "c":
        return replace(cfg, state=werner_like(value))
    raise InvalidInputError(f"unknown sweep variable {variable!r}")


def _evaluate_row(cfg):
    return evaluate(cfg).as_dict()


def _map(fn, items, workers):
    if workers and workers > 1 and len(items) > 1:
        chunk = max(1, len(items) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items, chunksize=chunk))
    return [fn(it) for it in items]


def sweep(spec, workers=1):
    """Evaluate the pipeline at ``steps + 1`` evenly spaced values.

    Returns a list of ``(value, {measure: result})`` in ascending order.
    """
    values = spec.values()
    cfgs = [with_variable(spec.fixed, spec.variable, v) for v in values]
    results = _map(_evaluate_row, cfgs, workers)
    return [(float(v), res) for v, res in zip(values, results)]


def sweep_grid(fixed, row_var, row_values, col_var, col_values, measure, workers=1):
    """2D table of one measure; rows follow ``row_var``, columns ``col_var``."""
    cfgs = [with_variable(with_variable(replace(fixed, measures=(measure,)), row_var, a),
                          col_var, b)
            for a in row_values for b in col_values]
    flat = _map(_evaluate_row, cfgs, workers)
    return np.array([d[measure] for d in flat]).reshape(len(row_values), len(col_values))


def has_kink(values, factor=10.0, floor=1e-9):
    """True if some discrete second difference exceeds ``factor`` times their median.

    Differences below ``floor`` never count, so round-off on a straight
    line is not reported as a kink.
    """
    d2 = np.abs(np.diff(np.asarray(values, dtype=float), 2))
    if d2.size == 0:
        return False
    med = float(np.median(d2))
    return bool(np.any((d2 > factor * med) & (d2 > floor)))


def _fmt(v):
    return repr(float(v))


def header_lines(cfg, extra=None):
    lines = [f"# xstate_discord {__version__}",
             f"# order: {cfg.order}",
             "# config: " + json.dumps(cfg.describe(), sort_keys=True)]
    if extra:
        lines += [f"# {k}: {v}" for k, v in extra.items()]
    if not cfg.state.physical:
        lines.append(f"# WARNING: nonphysical initial state {cfg.state.c.tolist()} "
                     f"(min eigenvalue {cfg.state.min_eigenvalue:.6g}); built unchecked")
    return lines


def curve_csv(cfg, variable, rows, measures, extra=None):
    buf = io.StringIO()
    for line in header_lines(cfg, extra):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([variable] + list(measures))
    for v, res in rows:
        w.writerow([_fmt(v)] + [_fmt(res[m]) for m in measures])
    return buf.getvalue()


def grid_csv(cfg, row_var, row_values, col_var, col_values, table, measure, extra=None):
    buf = io.StringIO()
    extra = dict(extra or {})
    extra["surface"] = f"{measure} over rows {row_var} x columns {col_var}"
    for line in header_lines(cfg, extra):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"{row_var}\\{col_var}"] + [_fmt(c) for c in col_values])
    for a, row in zip(row_values, table):
        w.writerow([_fmt(a)] + [_fmt(v) for v in row])
    return buf.getvalue()


def _write(outdir, name, text):
    path = Path(outdir) / name
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


_PLOT_TEMPLATE = '''"""Plot the CSV files written for figure {n}. Requires matplotlib."""
import csv
import glob
import os

import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))


def read(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


curves = sorted(glob.glob(os.path.join(HERE, "fig{n}_*.csv")))
surfaces = [p for p in curves if "_surface_" in os.path.basename(p)]
curves = [p for p in curves if p not in surfaces]

if curves:
    fig, ax = plt.subplots()
    for path in curves:
        head, data = read(path)
        ax.plot([d[0] for d in data], [d[1] for d in data],
                label=os.path.basename(path)[:-4])
    ax.set_xlabel(head[0])
    ax.legend(fontsize="x-small")
    fig.savefig(os.path.join(HERE, "fig{n}_curves.png"), dpi=150)

for path in surfaces:
    head, data = read(path)
    cols = [float(v) for v in head[1:]]
    rows = [d[0] for d in data]
    z = [d[1:] for d in data]
    fig, ax = plt.subplots()
    mesh = ax.pcolormesh(cols, rows, z, shading="auto")
    fig.colorbar(mesh)
    row_var, col_var = head[0].split("\\\\")
    ax.set_xlabel(col_var)
    ax.set_ylabel(row_var)
    ax.set_title(os.path.basename(path)[:-4])
    fig.savefig(path[:-4] + ".png", dpi=150)
'''

FIGURE_PRESETS = ("bell", "werner", "general")
FIG5_FIXED = {"r": 0.0, "p": 0.3, "X": 0.5}


def _rtag(r):
    return "r0" if r == 0 else "rpi4"


def _curve_files(outdir, prefix, cfg, variable, start, stop, steps, measures, workers, extra=None):
    rows = sweep(SweepSpec(variable, start, stop, steps, replace(cfg, measures=tuple(measures))),
                 workers)
    paths = []
    for m in measures:
        paths.append(_write(outdir, f"{prefix}_{m}.csv",
                            curve_csv(cfg, variable, rows, (m,), extra)))
    return paths


def _surface_file(outdir, name, cfg, row_var, col_var, npts, measure, workers, extra=None):
    rows = np.linspace(0, 1, npts)
    col_hi = R_MAX if col_var == "r" else 1.0
    cols = np.linspace(0, col_hi, npts)
    cols[-1] = col_hi
    table = sweep_grid(cfg, row_var, rows, col_var, cols, measure, workers)
    return _write(outdir, name, grid_csv(replace(cfg, measures=(measure,)),
                                         row_var, rows, col_var, cols, table, measure, extra))


def figure(n, outdir, workers=1, points=101, surface_points=51):
    """Write the data behind figure ``n`` (1-6) plus a plotting script.

    Returns the list of written paths.
    """
    if n not in range(1, 7):
        raise InvalidInputError(f"figure index must be 1..6, got {n!r}")
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InvalidInputError(f"cannot create output directory {outdir}: {exc}") from exc
    if not os.access(outdir, os.W_OK):
        raise InvalidInputError(f"output directory {outdir} is not writable")

    steps = points - 1
    both = ("gmqd", "min")
    paths = []
    if n == 1:
        for name in FIGURE_PRESETS:
            cfg = PipelineConfig.from_preset(name, unchecked=True)
            paths += _curve_files(outdir, f"fig1_{name}", cfg, "r", 0.0, R_MAX, steps, both, workers)
    elif n == 2:
        # the text also discusses depolarizing noise next to this figure, so both are written
        for kind in ("amplitude-damping", "depolarizing"):
            for r in (0.0, R_MAX):
                for name in FIGURE_PRESETS:
                    cfg = PipelineConfig.from_preset(name, r=r, channel=ChannelSpec(kind, 0.0),
                                                     unchecked=True)
                    prefix = f"fig2_{CHANNEL_TAGS[kind]}_{_rtag(r)}_{name}"
                    paths += _curve_files(outdir, prefix, cfg, "p", 0.0, 1.0, steps, both, workers)
    elif n == 3:
        for r in (0.0, R_MAX):
            for name in FIGURE_PRESETS:
                cfg = PipelineConfig.from_preset(name, r=r, channel=ChannelSpec("phase-flip", 0.0),
                                                 unchecked=True)
                paths += _curve_files(outdir, f"fig3_pf_{_rtag(r)}_{name}", cfg, "p", 0.0, 1.0,
                                      steps, both, workers)
        cfg = PipelineConfig.from_preset("werner", channel=ChannelSpec("phase-flip", 0.0))
        for m in both:
            paths.append(_surface_file(outdir, f"fig3_pf_surface_werner_{m}.csv", cfg, "p", "r",
                                       surface_points, m, workers))
    elif n == 4:
        for r in (0.0, R_MAX):
            for nbar in (0.01, 0.1, 0.3):
                cfg = PipelineConfig.from_preset("general-fig4", r=r,
                                                 thermal=ThermalParams(nbar, monitor=1.0))
                paths += _curve_files(outdir, f"fig4_{_rtag(r)}_nbar{nbar}", cfg, "X", 0.0, 1.0,
                                      steps, both, workers)
    elif n == 5:
        for kind in ("depolarizing", "amplitude-damping", "phase-flip"):
            for nbar in (0.01, 0.1):
                cfg = PipelineConfig(state=werner_like(0.0), r=FIG5_FIXED["r"],
                                     channel=ChannelSpec(kind, FIG5_FIXED["p"]),
                                     thermal=ThermalParams(nbar, monitor=FIG5_FIXED["X"]),
                                     label="werner-like")
                paths += _curve_files(outdir, f"fig5_{CHANNEL_TAGS[kind]}_nbar{nbar}", cfg, "c",
                                      0.0, 1.0, steps, ("gmqd",), workers)
    else:
        for kind in ("amplitude-damping", "depolarizing", "phase-flip"):
            tag = CHANNEL_TAGS[kind]
            for nbar in (0.01, 0.1):
                cfg = PipelineConfig.from_preset("general-fig4", channel=ChannelSpec(kind, 0.5),
                                                 thermal=ThermalParams(nbar, monitor=1.0))
                paths.append(_surface_file(outdir, f"fig6_{tag}_nbar{nbar}_surface_gmqd.csv",
                                           cfg, "X", "r", surface_points, "gmqd", workers))
                cfg = replace(cfg, r=R_MAX)
                paths.append(_surface_file(outdir, f"fig6_{tag}_nbar{nbar}_surface_min.csv",
                                           cfg, "X", "p", surface_points, "min", workers))
    paths.append(_write(outdir, f"fig{n}_plot.py", _PLOT_TEMPLATE.format(n=n)))
    return paths


def report_json(cfg, report):
    return json.dumps({"config": cfg.describe(), "version": __version__,
                       "measures": report.as_dict(), "diagnostics": report.diagnostics},
                      sort_keys=True, indent=2)
