"""
Local noise on both qubits
==========================

Amplitude damping, depolarizing and phase-flip channels act identically and
independently on Alice's and Bob's qubits after the Unruh transform.
"""

import numpy as np

from xstate_discord import ChannelSpec, apply_two_qubit_channel, gmqd_closed, unruh_transform_closed
from xstate_discord.noise import KINDS, completeness_residue, kraus_set

###############################################################################
# Every Kraus set is complete.

for kind in KINDS:
    worst = max(completeness_residue(kraus_set(ChannelSpec(kind, p)))
                for p in np.linspace(0, 1, 101))
    print(f"{kind:>18}: max completeness residue {worst:.1e}")

###############################################################################
# GMQD against the decoherence parameter for a moderately accelerated
# Werner state.  The phase-flip column is symmetric about p = 1/2, because
# the coherences are multiplied by (1 - 2p)^2.

rho0 = unruh_transform_closed((-0.8, -0.8, -0.8), np.pi / 8)
ps = np.linspace(0, 1, 11)
print(f"{'p':>5}" + "".join(f"{k:>20}" for k in KINDS))
for p in ps:
    vals = [gmqd_closed(apply_two_qubit_channel(rho0, ChannelSpec(k, p))) for k in KINDS]
    print(f"{p:5.1f}" + "".join(f"{v:20.6f}" for v in vals))
