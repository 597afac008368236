"""Two qubits relaxing in independent thermal reservoirs.

The closed-form populations are written in the excitation-ordered basis
``|11>, |10>, |01>, |00>`` (index 4 is the ground-ground level); the rest of
the package uses ``|00>, ..., |11>``. :func:`to_thermal_order` and
:func:`from_thermal_order` convert between the two.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidInputError, NumericalFailureError
from .linalg import I2, as_matrix
from .states import is_x_form

SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|

_LOWER = [np.kron(SIGMA_MINUS, I2), np.kron(I2, SIGMA_MINUS)]
_RAISE = [np.kron(SIGMA_PLUS, I2), np.kron(I2, SIGMA_PLUS)]

_REVERSE = np.arange(4)[::-1]


@dataclass(frozen=True)
class ThermalParams:
    """Reservoir occupation, decay rate and elapsed time.

    Give exactly one of ``time`` or ``monitor``; they are tied by
    ``monitor = exp(-gamma (2 nbar + 1) time)``.
    """

    nbar: float
    gamma: float = 1.0
    time: Optional[float] = None
    monitor: Optional[float] = None

    def __post_init__(self):
        if not np.isfinite(self.nbar) or self.nbar < 0:
            raise InvalidInputError(f"nbar={self.nbar} must be >= 0")
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidInputError(f"gamma={self.gamma} must be > 0")
        if (self.time is None) == (self.monitor is None):
            raise InvalidInputError("give exactly one of time or monitor")
        if self.time is not None and not (self.time >= 0):
            raise InvalidInputError(f"time={self.time} must be >= 0")
        if self.monitor is not None and not (0 <= self.monitor <= 1):
            raise InvalidInputError(f"monitor X={self.monitor} outside [0, 1]")

    @property
    def rate(self):
        return self.gamma * (2 * self.nbar + 1)

    @property
    def X(self):
        if self.monitor is not None:
            return float(self.monitor)
        return float(np.exp(-self.rate * self.time))

    @property
    def t(self):
        if self.time is not None:
            return float(self.time)
        if self.monitor == 0:
            return np.inf
        return float(-np.log(self.monitor) / self.rate)


def to_thermal_order(rho):
    return np.asarray(rho)[np.ix_(_REVERSE, _REVERSE)]


def from_thermal_order(rho):
    # the permutation is an involution
    return to_thermal_order(rho)


def thermal_state(nbar):
    """Stationary product state of both reservoirs, global ordering."""
    d = (2 * nbar + 1) ** 2
    pops = np.array([(nbar + 1) ** 2, nbar * (nbar + 1), nbar * (nbar + 1), nbar ** 2]) / d
    return np.diag(pops).astype(complex)


def thermal_evolve_closed(rho0, tp):
    """Evolve an X-form state under the thermal master equation in closed form."""
    rho0 = as_matrix(rho0, dims=(4,))
    if not is_x_form(rho0):
        raise InvalidInputError("closed-form thermal evolution needs an X-form input")
    n, X = tp.nbar, tp.X
    q = to_thermal_order(rho0)
    r11, r33, r44 = q[0, 0].real, q[2, 2].real, q[3, 3].real
    d = (2 * n + 1) ** 2

    quad = ((2 * r11 + 2 * r44 - 1) * n ** 2 + (3 * r11 + r44 - 1) * n + r11) * X ** 2
    mix = 2 * (r11 + 2 * r33 + r44 - 1) * n ** 2

    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = (n ** 2 + (2 * (r11 - r44) * n ** 2 + (r11 - r44 + 1) * n) * X + quad) / d
    out[1, 1] = (n * (n + 1)
                 - (mix + (r11 + 4 * r33 + 3 * r44 - 2) * n + (r33 + r44 - 1)) * X
                 - quad) / d
    out[2, 2] = (n * (n + 1)
                 + (mix + (3 * r11 + 4 * r33 + r44 - 2) * n + (r11 + r33)) * X
                 - quad) / d
    out[3, 3] = ((n + 1) ** 2
                 - (n + 1) * (2 * n * (r11 - r44) + (r11 - r44 + 1)) * X
                 + quad) / d
    out[0, 3] = q[0, 3] * X
    out[3, 0] = q[3, 0] * X
    out[1, 2] = q[1, 2] * X
    out[2, 1] = q[2, 1] * X
    return from_thermal_order(out)


def lindblad_rhs(rho, nbar, gamma=1.0):
    """Time derivative of ``rho`` under emission (n+1) and absorption (n) on each qubit."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(rho)
    for sm, sp in zip(_LOWER, _RAISE):
        out += 0.5 * (nbar + 1) * gamma * (
            (sm @ (rho @ sp) - (rho @ sp) @ sm) + ((sm @ rho) @ sp - sp @ (sm @ rho)))
        out += 0.5 * nbar * gamma * (
            (sp @ (rho @ sm) - (rho @ sm) @ sp) + ((sp @ rho) @ sm - sm @ (sp @ rho)))
    return out


def liouvillian(nbar, gamma=1.0):
    """16x16 matrix of :func:`lindblad_rhs` acting on row-major ``vec(rho)``."""
    cols = []
    for k in range(16):
        e = np.zeros(16, dtype=complex)
        e[k] = 1
        cols.append(lindblad_rhs(e.reshape(4, 4), nbar, gamma).ravel())
    return np.array(cols).T


def integrate_lindblad(rho0, tp, step=1e-2):
    """Classical RK4 integration of the master equation up to time ``tp.t``.

    The step is shrunk so that an integer number of steps lands exactly on
    the final time.
    """
    rho0 = as_matrix(rho0, dims=(4,))
    if step <= 0:
        raise InvalidInputError("step must be positive")
    t = tp.t
    if not np.isfinite(t):
        raise InvalidInputError("cannot integrate to t = infinity (X = 0)")
    if t == 0:
        return rho0.copy()
    nsteps = int(np.ceil(t / step))
    h = t / nsteps
    L = liouvillian(tp.nbar, tp.gamma)
    v = rho0.ravel().copy()
    tr0 = np.trace(rho0)
    for _ in range(nsteps):
        k1 = L @ v
        k2 = L @ (v + 0.5 * h * k1)
        k3 = L @ (v + 0.5 * h * k2)
        k4 = L @ (v + h * k3)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    rho = v.reshape(4, 4)
    drift = abs(np.trace(rho) - tr0)
    if not np.all(np.isfinite(rho)) or drift > 1e-6:
        raise NumericalFailureError(f"RK4 integration diverged (trace drift {drift:.3g})")
    return rho
