"""Single-qubit Kraus channels applied locally to one or both qubits."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError
from .linalg import I2, SX, SY, SZ, as_matrix

KINDS = ("amplitude-damping", "depolarizing", "phase-flip")
ALIASES = {"ad": "amplitude-damping", "dep": "depolarizing", "pf": "phase-flip"}


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    p: float

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise InvalidInputError(f"unknown channel {self.kind!r}; choose from {KINDS}")
        object.__setattr__(self, "kind", kind)
        p = float(self.p)
        if not np.isfinite(p) or p < 0 or p > 1:
            raise InvalidInputError(f"decoherence parameter p={self.p} outside [0, 1]")
        object.__setattr__(self, "p", p)


def kraus_set(spec):
    """List of 2x2 Kraus operators for ``spec``."""
    p = spec.p
    if spec.kind == "amplitude-damping":
        return [np.array([[1, 0], [0, np.sqrt(1 - p)]], dtype=complex),
                np.array([[0, np.sqrt(p)], [0, 0]], dtype=complex)]
    if spec.kind == "depolarizing":
        w = np.sqrt(p / 4)
        return [np.sqrt(1 - 3 * p / 4) * I2, w * SX, w * SY, w * SZ]
    return [np.sqrt(1 - p) * I2, np.sqrt(p) * SZ]


def completeness_residue(ops):
    """Hilbert-Schmidt norm of ``sum M^dagger M - I``."""
    s = sum(m.conj().T @ m for m in ops)
    return float(np.linalg.norm(s - np.eye(s.shape[0])))


def _apply(rho, ops):
    out = np.zeros_like(rho)
    for k in ops:
        out += k @ rho @ k.conj().T
    return out


def apply_single_qubit_channel(rho, spec, which):
    """Apply ``spec`` to qubit ``which`` (0 = Alice, 1 = Bob) only."""
    rho = as_matrix(rho, dims=(4,))
    if which not in (0, 1):
        raise InvalidInputError(f"qubit selector must be 0 or 1, got {which!r}")
    ops = kraus_set(spec)
    lifted = [np.kron(k, I2) if which == 0 else np.kron(I2, k) for k in ops]
    return _apply(rho, lifted)


@lru_cache(maxsize=256)
def _product_kraus(spec):
    ops = kraus_set(spec)
    return np.array([np.kron(a, b) for a in ops for b in ops])


def apply_two_qubit_channel(rho, spec):
    """Independent copies of ``spec`` on both qubits, summed over all Kraus pairs."""
    rho = as_matrix(rho, dims=(4,))
    K = _product_kraus(spec)
    return np.sum(K @ rho @ K.conj().transpose(0, 2, 1), axis=0)
