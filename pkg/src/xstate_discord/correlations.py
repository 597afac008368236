"""Geometric discord, measurement-induced nonlocality and entropic discord.

Every measure concerns projective measurements on Alice's qubit. Closed
forms work in the Fano (Bloch/correlation) representation; the brute-force
routines scan measurement axes on the Bloch sphere and refine the best grid
cell by golden-section search, touching only density matrices.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    I2, PAULIS, as_matrix, binary_spectrum_entropy, eigenvalues_hermitian, fano_decompose,
    partial_trace, von_neumann_entropy,
)

X_ZERO_TOL = 1e-9
CLAMP_TOL = 1e-12
DEFAULT_GRID = 180
GOLDEN = (np.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class MeasurementDirection:
    """Projector axis ``n = (sin t cos f, sin t sin f, cos t)`` on Alice's Bloch sphere."""

    theta: float
    phi: float

    @property
    def vector(self):
        return _unit_vectors(np.atleast_1d(self.theta), np.atleast_1d(self.phi))[0]

    @classmethod
    def from_vector(cls, n):
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(float(np.arccos(np.clip(n[2], -1, 1))),
                   float(np.mod(np.arctan2(n[1], n[0]), 2 * np.pi)))


def _clamp(v):
    v = float(v)
    return 0.0 if -CLAMP_TOL <= v < 0 else v


def _unit_vectors(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _projectors(n):
    """Alice projectors ``(I +/- n.sigma)/2 (x) I`` for a stack of axes, shape (N, 2, 4, 4)."""
    ns = np.einsum("...k,kij->...ij", n, np.array(PAULIS))
    plus = (I2 + ns) / 2
    minus = (I2 - ns) / 2
    pm = np.stack([plus, minus], axis=-3)
    return np.einsum("...ij,kl->...ikjl", pm, I2).reshape(pm.shape[:-2] + (4, 4))


def post_measurement_state(rho, d):
    """Non-selective von Neumann measurement of Alice along ``d``.

    ``d`` is a :class:`MeasurementDirection` or any nonzero 3-vector.
    """
    rho = as_matrix(rho, dims=(4,))
    n = d.vector if isinstance(d, MeasurementDirection) else np.asarray(d, dtype=float)
    n = n / np.linalg.norm(n)
    P = _projectors(n[None, :])[0]
    return P[0] @ rho @ P[0] + P[1] @ rho @ P[1]


_A_PAULIS = [np.kron(s, I2) for s in PAULIS]


def _disturbance_objective(rho):
    """Vectorised ``n -> ||rho - Pi_n(rho)||^2`` over rows of ``n``.

    Uses ``Pi_n(rho) = (rho + N rho N) / 2`` with ``N = n.sigma (x) I``, so
    ``N rho N`` is a quadratic form in ``n`` over nine fixed matrices.
    """
    sandwiches = np.array([(a @ rho @ b).ravel() for a in _A_PAULIS for b in _A_PAULIS])
    flat = rho.ravel()[None, :]

    def objective(n):
        nn = (n[:, :, None] * n[:, None, :]).reshape(-1, 9)
        diff = (flat - nn @ sandwiches) / 2
        return np.sum(diff.real ** 2 + diff.imag ** 2, axis=-1)

    return objective


def _conditional_entropy_objective(rho):
    """Vectorised ``n -> sum_k p_k S(rho_k)`` in bits."""
    rho_b = partial_trace(rho, keep=1).ravel()
    parts = np.array([partial_trace(a @ rho, keep=1).ravel() for a in _A_PAULIS])

    def objective(n):
        shift = n @ parts
        total = 0.0
        for sign in (1, -1):
            # unnormalised conditional state of Bob: tr_A[(Pi_k (x) I) rho]
            bob = (rho_b[None, :] + sign * shift) / 2
            a, b, dd = bob[:, 0].real, bob[:, 1], bob[:, 3].real
            pk = a + dd
            disc = np.sqrt((a - dd) ** 2 + 4 * np.abs(b) ** 2)
            lam = np.stack([(pk + disc) / 2, (pk - disc) / 2], axis=-1)
            ok = pk > 1e-12
            safe_p = np.where(ok, pk, 1.0)
            h = binary_spectrum_entropy(lam / safe_p[:, None])
            total = total + np.where(ok, pk * h, 0.0)
        return total

    return objective


def _golden_section(f, lo, hi, iters=50):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def sphere_search(objective, grid_density=DEFAULT_GRID, maximize=False, rounds=4):
    """Optimise ``objective(n)`` over unit vectors ``n`` (rows of an (N, 3) array).

    Scans ``grid_density`` polar by ``2 * grid_density`` azimuthal angles,
    then alternates golden-section searches in theta and phi inside the
    best grid cell.

    Returns
    -------
    value : float
    direction : MeasurementDirection
    grid_residual : float
        Improvement of the refined value over the best grid value.
    """
    if grid_density < 2:
        raise ValueError("grid_density must be at least 2")
    sign = -1.0 if maximize else 1.0
    thetas = np.linspace(0, np.pi, grid_density)
    phis = np.linspace(0, 2 * np.pi, 2 * grid_density, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = sign * objective(_unit_vectors(tt.ravel(), pp.ravel()))
    best = int(np.argmin(vals))
    grid_best = float(vals[best])
    th, ph = float(tt.ravel()[best]), float(pp.ravel()[best])
    dth, dph = thetas[1] - thetas[0], phis[1] - phis[0]

    def f(t, p):
        return float(sign * objective(_unit_vectors(np.array([t]), np.array([p])))[0])

    cur = grid_best
    for _ in range(rounds):
        t_new, v = _golden_section(lambda t: f(t, ph), max(0.0, th - dth), min(np.pi, th + dth))
        if v < cur:
            th, cur = t_new, v
        p_new, v = _golden_section(lambda p: f(th, p), ph - dph, ph + dph)
        if v < cur:
            ph, cur = p_new, v
    return sign * cur, MeasurementDirection(th, float(np.mod(ph, 2 * np.pi))), grid_best - cur


def _gmqd_from_fano(x, T):
    K = np.outer(x, x) + T @ T.T
    k_max = eigenvalues_hermitian(K)[-1]
    return max(0.0, _clamp((x @ x + np.sum(T ** 2) - k_max) / 4))


def gmqd_closed(rho):
    """Geometric discord ``(|x|^2 + |T|^2 - k_max) / 4`` with ``K = x x^T + T T^T``."""
    x, _, T = fano_decompose(rho)
    return _gmqd_from_fano(x, T)


def _gmqd_axis(x, T):
    _, vecs = np.linalg.eigh(np.outer(x, x) + T @ T.T)
    return vecs[:, -1]


def gmqd_optimal_direction(rho):
    """Measurement axis attaining the geometric discord."""
    x, _, T = fano_decompose(rho)
    return MeasurementDirection.from_vector(_gmqd_axis(x, T))


def gmqd_bruteforce(rho, grid_density=DEFAULT_GRID, full=False):
    """Minimal measurement disturbance ``min_n ||rho - Pi_n(rho)||^2``."""
    rho = as_matrix(rho, dims=(4,))
    value, d, res = sphere_search(_disturbance_objective(rho), grid_density)
    value = _clamp(value)
    return (value, d, res) if full else value


def _min_axis(x, T):
    nx = np.linalg.norm(x)
    if nx > X_ZERO_TOL:
        return x / nx, "x-aligned"
    _, vecs = np.linalg.eigh(T @ T.T)
    return vecs[:, 0], "unconstrained"


def _min_from_fano(x, T):
    TT = T @ T.T
    nx2 = x @ x
    if np.sqrt(nx2) > X_ZERO_TOL:
        val = (np.trace(TT) - x @ TT @ x / nx2) / 4
    else:
        val = (np.trace(TT) - eigenvalues_hermitian(TT)[0]) / 4
    return max(0.0, _clamp(val))


def min_closed(rho):
    """Measurement-induced nonlocality of a two-qubit state.

    With a nonzero Bloch vector only measurements along it leave Alice's
    marginal invariant; otherwise the smallest eigenvalue of ``T T^T`` is
    discarded.
    """
    x, _, T = fano_decompose(rho)
    return _min_from_fano(x, T)


def min_bruteforce(rho, grid_density=DEFAULT_GRID, full=False):
    """Maximal disturbance over measurements that keep Alice's marginal fixed."""
    rho = as_matrix(rho, dims=(4,))
    rho_a = partial_trace(rho, keep=0)
    x = np.array([np.trace(rho_a @ s).real for s in PAULIS])
    nx = np.linalg.norm(x)
    if nx > X_ZERO_TOL:
        n = x / nx
        value = float(_disturbance_objective(rho)(n[None, :])[0])
        out = (_clamp(value), MeasurementDirection.from_vector(n), 0.0)
    else:
        value, d, res = sphere_search(_disturbance_objective(rho), grid_density, maximize=True)
        out = (_clamp(value), d, -res)
    return out if full else out[0]


def quantum_discord(rho, grid_density=DEFAULT_GRID, full=False):
    """Entropic discord with Alice measured, in bits.

    ``S(rho_A) - S(rho) + min_n sum_k p_k S(rho_k)``, minimised numerically.
    """
    rho = as_matrix(rho, dims=(4,))
    base = von_neumann_entropy(partial_trace(rho, keep=0)) - von_neumann_entropy(rho)
    cond, d, res = sphere_search(_conditional_entropy_objective(rho), grid_density)
    value = _clamp(base + cond)
    return (value, d, res) if full else value


MEASURES = ("gmqd", "min", "discord")


@dataclass
class CorrelationReport:
    gmqd: float = None
    min_nl: float = None
    discord: float = None
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self):
        out = {"gmqd": self.gmqd, "min": self.min_nl, "discord": self.discord}
        return {k: v for k, v in out.items() if v is not None}


def correlation_report(rho, measures=MEASURES, grid_density=90):
    """Bundle the requested measures with the optimiser's directions."""
    rho = as_matrix(rho, dims=(4,))
    rep = CorrelationReport()
    diag = rep.diagnostics
    x, _, T = fano_decompose(rho)
    if "gmqd" in measures:
        rep.gmqd = _gmqd_from_fano(x, T)
        d = MeasurementDirection.from_vector(_gmqd_axis(x, T))
        diag["gmqd_direction"] = (d.theta, d.phi)
    if "min" in measures:
        rep.min_nl = _min_from_fano(x, T)
        n, branch = _min_axis(x, T)
        d = MeasurementDirection.from_vector(n)
        diag["min_direction"] = (d.theta, d.phi)
        diag["min_branch"] = branch
    if "discord" in measures:
        rep.discord, d, res = quantum_discord(rho, grid_density, full=True)
        diag["discord_direction"] = (d.theta, d.phi)
        diag["discord_grid_residual"] = res
    return rep
