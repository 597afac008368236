"""
Closed forms against brute-force measurement search
===================================================

The geometric discord and the measurement-induced nonlocality have closed
forms in terms of the Bloch vector x and correlation matrix T.  Here they
are checked against a direct search over Alice's projective measurements.
"""

import numpy as np

from xstate_discord import (
    ChannelSpec, apply_two_qubit_channel, gmqd_bruteforce, gmqd_closed, make_x_state,
    min_bruteforce, min_closed, preset, quantum_discord, unruh_transform_closed,
)

rng = np.random.default_rng(0)


def random_state(rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


###############################################################################
# A few general states, including an amplitude-damped one with x != 0.

states = {
    "bell": make_x_state(preset("bell")),
    "werner": make_x_state(preset("werner")),
    "damped": apply_two_qubit_channel(unruh_transform_closed(preset("bell"), np.pi / 5),
                                      ChannelSpec("ad", 0.3)),
    "random rank 2": random_state(2),
    "random rank 4": random_state(4),
}
print(f"{'state':>14} {'GMQD':>10} {'search':>10} {'MIN':>10} {'search':>10} {'discord':>9}")
for name, rho in states.items():
    print(f"{name:>14} {gmqd_closed(rho):10.6f} {gmqd_bruteforce(rho):10.6f} "
          f"{min_closed(rho):10.6f} {min_bruteforce(rho):10.6f} {quantum_discord(rho):9.5f}")
