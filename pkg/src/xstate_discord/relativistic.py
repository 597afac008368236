"""Bob's qubit as seen from Rindler region I under uniform acceleration.

The acceleration enters only through the mixing angle ``r`` with
``cos r = (exp(-2 pi omega c / a) + 1) ** -0.5``; ``r = pi/4`` is the
infinite-acceleration limit.
"""
import numpy as np

from .errors import InvalidInputError
from .linalg import as_matrix, partial_trace
from .states import XStateParams

R_MAX = np.pi / 4


def check_r(r):
    r = float(r)
    # allow round-off from linspace endpoints
    if not np.isfinite(r) or r < 0 or r > R_MAX + 1e-15:
        raise InvalidInputError(f"acceleration parameter r={r} outside [0, pi/4]")
    return min(r, R_MAX)


def unruh_transform_closed(params, r):
    """Alice-Rindler-I state for a Bell-diagonal input, in closed form.

    Parameters
    ----------
    params : XStateParams or 3-sequence
        Correlation coefficients of the inertial initial state. No physicality
        check is made; the map is linear.
    r : float
        Mixing angle in ``[0, pi/4]``.
    """
    if not isinstance(params, XStateParams):
        params = XStateParams(*params)
    r = check_r(r)
    c1, c2, c3 = params.c
    cp, cm = c1 + c2, c1 - c2
    cos, sin2 = np.cos(r), np.sin(r) ** 2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = (1 + c3) * (1 - sin2)
    rho[1, 1] = (1 + c3) * sin2 + (1 - c3)
    rho[2, 2] = (1 - c3) * (1 - sin2)
    rho[3, 3] = (1 + c3) + (1 - c3) * sin2
    rho[0, 3] = rho[3, 0] = cm * cos
    rho[1, 2] = rho[2, 1] = cp * cos
    return rho / 4


def rindler_isometry(r):
    """8x4 map ``I_A (x) V`` sending Bob's Unruh qubit into modes I (x) II."""
    r = check_r(r)
    v = np.zeros((4, 2), dtype=complex)
    # rows index |n_I n_II>
    v[0b00, 0] = np.cos(r)
    v[0b11, 0] = np.sin(r)
    v[0b10, 1] = 1.0
    return np.kron(np.eye(2), v)


def rindler_embed_and_trace(rho, r):
    """Generic Unruh map: embed Bob into both Rindler wedges, then drop region II."""
    rho = as_matrix(rho, dims=(4,))
    w = rindler_isometry(r)
    big = w @ rho @ w.conj().T
    return partial_trace(big, keep=(0, 1))
