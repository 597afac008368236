"""Acceptance checks shared by the ``verify`` command and the test-suite.

Each check returns a :class:`CheckResult`; none of them raise on failure.
"""
import filecmp
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .correlations import (
    gmqd_bruteforce, gmqd_closed, min_bruteforce, min_closed, quantum_discord,
)
from .experiments import (
    PipelineConfig, SweepSpec, evaluate, figure, has_kink, pipeline_state, sweep,
)
from .linalg import fano_decompose
from .noise import KINDS, ChannelSpec, apply_two_qubit_channel, completeness_residue, kraus_set
from .relativistic import R_MAX, rindler_embed_and_trace, unruh_transform_closed
from .states import PRESETS, XStateParams, is_x_form, make_x_state, preset
from .thermal import (
    ThermalParams, integrate_lindblad, lindblad_rhs, thermal_evolve_closed, thermal_state,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def random_x_params(rng):
    while True:
        c = rng.uniform(-1, 1, size=3)
        p = XStateParams(*c)
        if p.physical:
            return p


def random_density_matrix(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pipeline(rng, channel_kind=None):
    kind = channel_kind or KINDS[rng.integers(3)]
    return PipelineConfig(
        state=random_x_params(rng),
        r=rng.uniform(0, R_MAX),
        channel=ChannelSpec(kind, rng.uniform(0, 1)),
        thermal=ThermalParams(rng.uniform(0, 1.5), monitor=rng.uniform(0, 1)),
        order=("cn-th", "th-cn")[rng.integers(2)],
    )


def check_kraus_completeness():
    worst = 0.0
    for kind in KINDS:
        for p in np.linspace(0, 1, 101):
            worst = max(worst, completeness_residue(kraus_set(ChannelSpec(kind, p))))
    return CheckResult("1 Kraus completeness", worst <= 1e-12, f"max residue {worst:.2e} (tol 1e-12)")


def check_cptp(n=1000, seed=2024):
    rng = np.random.default_rng(seed)
    tr_dev = herm = xres = 0.0
    min_eig = np.inf
    for _ in range(n):
        rho = pipeline_state(random_pipeline(rng))
        tr_dev = max(tr_dev, abs(np.trace(rho) - 1))
        herm = max(herm, float(np.max(np.abs(rho - rho.conj().T))))
        min_eig = min(min_eig, float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]))
        if not is_x_form(rho, tol=0.0):
            xres = max(xres, 1.0)
    ok = tr_dev <= 1e-10 and herm <= 1e-10 and min_eig >= -1e-9 and xres == 0
    return CheckResult("2 CPTP sanity", ok,
                       f"{n} pipelines: trace dev {tr_dev:.1e}, herm {herm:.1e}, "
                       f"min eig {min_eig:.2e}, X-form {'ok' if xres == 0 else 'broken'}")


def check_unruh_oracle():
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name, params in PRESETS.items():
            rho0 = make_x_state(params, unchecked=True)
            for r in np.linspace(0, R_MAX, 21):
                d = unruh_transform_closed(params, r) - rindler_embed_and_trace(rho0, r)
                worst = max(worst, float(np.max(np.abs(d))))
    return CheckResult("3 Unruh oracle", worst <= 1e-12,
                       f"max |closed - embed/trace| {worst:.2e} over 4 presets x 21 r (tol 1e-12)")


def check_thermal_oracle(step=5e-3):
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for params in PRESETS.values():
            for r in (0.0, np.pi / 8, R_MAX):
                rho0 = unruh_transform_closed(params, r)
                for nbar in (0.01, 0.1, 0.3, 1.0):
                    for t in (0.1, 0.5, 1.0, 3.0):
                        tp = ThermalParams(nbar, gamma=1.0, time=t)
                        d = thermal_evolve_closed(rho0, tp) - integrate_lindblad(rho0, tp, step)
                        worst = max(worst, float(np.max(np.abs(d))))
    fixed = max(float(np.max(np.abs(lindblad_rhs(thermal_state(n), n)))) for n in (0.01, 0.1, 0.3, 1.0))
    fixed_closed = max(
        float(np.max(np.abs(lindblad_rhs(thermal_evolve_closed(make_x_state(preset("werner")),
                                                                ThermalParams(n, monitor=0.0)), n))))
        for n in (0.01, 0.1, 0.3, 1.0))
    fixed = max(fixed, fixed_closed)
    ok = worst <= 1e-6 and fixed <= 1e-12
    return CheckResult("4 Thermal oracle", ok,
                       f"max |closed - RK4| {worst:.2e} (tol 1e-6); fixed-point residual {fixed:.1e} (tol 1e-12)")


def oracle_states(n=200, seed=7):
    """Mix of Bell-diagonal, amplitude-damped pipeline and generic random states."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        kind = i % 3
        if kind == 0:
            out.append(make_x_state(random_x_params(rng)))
        elif kind == 1:
            out.append(pipeline_state(random_pipeline(rng, "amplitude-damping")))
        else:
            out.append(random_density_matrix(rng, rank=int(rng.integers(1, 5))))
    return out


def check_measure_oracles(n=200, grid_density=180):
    dg = dm = 0.0
    n_x = 0
    for rho in oracle_states(n):
        if np.linalg.norm(fano_decompose(rho).x) > 1e-9:
            n_x += 1
        dg = max(dg, abs(gmqd_closed(rho) - gmqd_bruteforce(rho, grid_density)))
        dm = max(dm, abs(min_closed(rho) - min_bruteforce(rho, grid_density)))
    ok = dg <= 1e-4 and dm <= 1e-4
    return CheckResult("5 Measure oracles", ok,
                       f"{n} states ({n_x} with x != 0): max |GMQD diff| {dg:.1e}, "
                       f"max |MIN diff| {dm:.1e} (tol 1e-4)")


def check_anchor_values():
    problems = []

    def expect(label, value, target, tol):
        if abs(value - target) > tol:
            problems.append(f"{label}={value:.12g} (want {target})")

    bell = make_x_state(preset("bell"))
    werner = make_x_state(preset("werner"))
    bell_r = unruh_transform_closed(preset("bell"), R_MAX)
    for label, rho, g, m in (("bell", bell, 0.5, 0.5), ("werner", werner, 0.32, 0.32),
                             ("bell r=pi/4", bell_r, 0.1875, 0.25)):
        expect(f"{label} gmqd", gmqd_closed(rho), g, 1e-9)
        expect(f"{label} min", min_closed(rho), m, 1e-9)
        expect(f"{label} gmqd oracle", gmqd_bruteforce(rho), g, 1e-4)
        expect(f"{label} min oracle", min_bruteforce(rho), m, 1e-4)
    expect("bell discord", quantum_discord(bell), 1.0, 1e-4)

    rng = np.random.default_rng(3)
    dep = ChannelSpec("depolarizing", 1.0)
    for i in range(20):
        rho = apply_two_qubit_channel(random_density_matrix(rng), dep)
        expect(f"dep p=1 #{i} gmqd", gmqd_closed(rho), 0.0, 1e-9)
        expect(f"dep p=1 #{i} min", min_closed(rho), 0.0, 1e-9)
        if i < 3:
            expect(f"dep p=1 #{i} gmqd oracle", gmqd_bruteforce(rho), 0.0, 1e-4)
            expect(f"dep p=1 #{i} min oracle", min_bruteforce(rho), 0.0, 1e-4)
            expect(f"dep p=1 #{i} discord", quantum_discord(rho), 0.0, 1e-4)
    detail = "all anchors within tolerance" if not problems else "; ".join(problems[:5])
    return CheckResult("6 Derived anchor values", not problems, detail)


def check_phase_flip_palindrome():
    worst = 0.0
    ps = np.linspace(0, 1, 21)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in PRESETS:
            for r in (0.0, R_MAX):
                for nbar in (0.01, 0.1):
                    for X in (0.3, 0.7):
                        for p in ps:
                            vals = []
                            for q in (p, 1 - p):
                                cfg = PipelineConfig.from_preset(
                                    name, r=r, unchecked=True,
                                    channel=ChannelSpec("phase-flip", q),
                                    thermal=ThermalParams(nbar, monitor=X))
                                rep = evaluate(cfg)
                                vals.append((rep.gmqd, rep.min_nl))
                            worst = max(worst, abs(vals[0][0] - vals[1][0]),
                                        abs(vals[0][1] - vals[1][1]))
    return CheckResult("7 Phase-flip palindrome", worst <= 1e-12,
                       f"max |f(p) - f(1-p)| {worst:.1e} (tol 1e-12)")


def _gmqd_column(cfg, variable, start, stop, steps=100):
    return np.array([row[1]["gmqd"] for row in sweep(SweepSpec(variable, start, stop, steps, cfg))])


def check_fig1_monotone():
    worst = -np.inf
    for name in PRESETS:
        col = _gmqd_column(PipelineConfig.from_preset(name, unchecked=True), "r", 0.0, R_MAX)
        worst = max(worst, float(np.max(np.diff(col))))
    return CheckResult("8a GMQD(r) non-increasing", worst <= 1e-12,
                       f"largest step increase {worst:.1e} over {len(PRESETS)} presets")


def check_kink_vs_nbar():
    fired = {}
    for nbar in (0.01, 0.5):
        cfg = PipelineConfig.from_preset("general-fig4", r=0.0,
                                         thermal=ThermalParams(nbar, monitor=1.0))
        fired[nbar] = has_kink(_gmqd_column(cfg, "X", 0.0, 1.0))
    ok = fired[0.01] and not fired[0.5]
    return CheckResult("8b kink at nbar=0.01, none at nbar=0.5", ok,
                       f"kink detected: nbar=0.01 -> {fired[0.01]}, nbar=0.5 -> {fired[0.5]}")


def check_depolarizing_smooth():
    fired = []
    for r in (0.0, R_MAX):
        for nbar in (0.01, 0.1):
            cfg = PipelineConfig.from_preset("general-fig4", r=r,
                                             channel=ChannelSpec("depolarizing", 0.5),
                                             thermal=ThermalParams(nbar, monitor=1.0))
            if has_kink(_gmqd_column(cfg, "X", 0.0, 1.0)):
                fired.append(f"r={r:.3f} nbar={nbar}")
    return CheckResult("8c no kink under depolarizing noise", not fired,
                       "no kinks" if not fired else "kinks at " + ", ".join(fired))


def check_werner_robust():
    rows = []
    ok = True
    for kind in KINDS:
        vals = [evaluate(PipelineConfig.from_preset(
            name, r=R_MAX, channel=ChannelSpec(kind, 0.5),
            thermal=ThermalParams(0.1, monitor=0.5))).gmqd for name in ("werner", "general-fig4")]
        ok = ok and vals[0] >= vals[1]
        rows.append(f"{kind}: {vals[0]:.4g} vs {vals[1]:.4g}")
    return CheckResult("8d werner GMQD >= general-fig4 GMQD", ok, "; ".join(rows))


def _tree_identical(a, b):
    cmp = filecmp.dircmp(a, b)
    if cmp.left_only or cmp.right_only:
        return False
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    return not mismatch and not errors


def check_determinism(workers=None):
    # at least 4 processes so chunking and pool scheduling are exercised even on one core
    workers = workers or max(4, os.cpu_count() or 1)
    with tempfile.TemporaryDirectory() as tmp:
        serial, parallel = Path(tmp, "serial"), Path(tmp, "parallel")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for n in range(1, 7):
                figure(n, serial, workers=1)
                figure(n, parallel, workers=workers)
        count = len(list(serial.iterdir()))
        ok = _tree_identical(serial, parallel)
    return CheckResult("9 Determinism", ok,
                       f"{count} files byte-identical between 1 and {workers} workers" if ok
                       else "outputs differ")


CHECKS = (
    check_kraus_completeness, check_cptp, check_unruh_oracle, check_thermal_oracle,
    check_measure_oracles, check_anchor_values, check_phase_flip_palindrome,
    check_fig1_monotone, check_kink_vs_nbar, check_depolarizing_smooth, check_werner_robust,
    check_determinism,
)


def run_all(checks=CHECKS):
    return [check() for check in checks]
