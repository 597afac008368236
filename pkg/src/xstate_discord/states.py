"""Bell-diagonal X-type initial states and named presets."""
import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NonphysicalStateError
from .linalg import as_matrix, hermiticity_residue

PHYSICAL_TOL = 1e-12
XFORM_TOL = 1e-12

# sign patterns (e1, e2, e3) with e1*e2*e3 = -1 index the Bell-basis eigenvalues
_SIGN_PATTERNS = [s for s in itertools.product((1, -1), repeat=3) if s[0] * s[1] * s[2] == -1]

# True on the diagonal and anti-diagonal of a 4x4 matrix
X_MASK = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))


@dataclass(frozen=True)
class XStateParams:
    """Correlation coefficients of ``(I + sum_i c_i sigma_i (x) sigma_i) / 4``."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 1:
                raise InvalidInputError(f"{name}={v} outside [-1, 1]")
            object.__setattr__(self, name, v)

    @property
    def c(self):
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def bell_eigenvalues(self):
        c = self.c
        return np.array([(1 + np.dot(s, c)) / 4 for s in _SIGN_PATTERNS])

    @property
    def min_eigenvalue(self):
        return float(np.min(self.bell_eigenvalues()))

    @property
    def physical(self):
        return self.min_eigenvalue >= -PHYSICAL_TOL


PRESETS = {
    "bell": XStateParams(1.0, -1.0, 1.0),
    "werner": XStateParams(-0.8, -0.8, -0.8),
    "general": XStateParams(0.7, 0.9, 0.4),
    "general-fig4": XStateParams(0.2, -0.3, 0.3),
}


def preset(name):
    """Parameters of a named initial state.

    ``"general"`` is nonphysical for every sign choice and can only be turned
    into a matrix with ``unchecked=True``.
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def werner_like(c):
    """``|c1| = |c2| = |c3| = c`` with the singlet sign pattern."""
    return XStateParams(-c, -c, -c)


def make_x_state(params, unchecked=False):
    """Density matrix of the Bell-diagonal state with coefficients ``params``.

    Raises
    ------
    NonphysicalStateError
        If the matrix has a negative eigenvalue and ``unchecked`` is false.
    """
    if not isinstance(params, XStateParams):
        params = XStateParams(*params)
    lam = params.min_eigenvalue
    if lam < -PHYSICAL_TOL:
        if not unchecked:
            raise NonphysicalStateError(
                f"coefficients {params.c.tolist()} give eigenvalue {lam:.6g} < 0", lam)
        warnings.warn(f"building nonphysical X-state {params.c.tolist()} (min eigenvalue {lam:.6g})",
                      stacklevel=2)
    c1, c2, c3 = params.c
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = (1 + c3) / 4
    rho[1, 1] = rho[2, 2] = (1 - c3) / 4
    rho[0, 3] = rho[3, 0] = (c1 - c2) / 4
    rho[1, 2] = rho[2, 1] = (c1 + c2) / 4
    return rho


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_residue: float
    trace_deviation: float
    min_eigenvalue: float
    x_form_residue: float

    @property
    def hermitian(self):
        return self.hermiticity_residue <= 1e-12

    @property
    def unit_trace(self):
        return self.trace_deviation <= 1e-12

    @property
    def positive(self):
        return self.min_eigenvalue >= -1e-10

    @property
    def x_form(self):
        return self.x_form_residue <= XFORM_TOL

    @property
    def valid(self):
        return self.hermitian and self.unit_trace and self.positive


def validate_density_matrix(rho):
    """Diagnostics for a candidate 4x4 density matrix. Never raises on bad physics."""
    rho = as_matrix(rho, dims=(4,))
    herm = hermiticity_residue(rho)
    tr_dev = abs(np.trace(rho) - 1)
    lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    off = rho[~X_MASK]
    return ValidationReport(
        hermiticity_residue=herm,
        trace_deviation=float(tr_dev),
        min_eigenvalue=float(lam[0]),
        x_form_residue=float(np.max(np.abs(off))) if off.size else 0.0,
    )


def is_x_form(rho, tol=XFORM_TOL):
    return float(np.max(np.abs(np.asarray(rho)[~X_MASK]))) <= tol
