"""Physical constants and unit helpers.

Internal computations use angular frequencies (rad/s) throughout; user-facing
I/O quotes ordinary frequencies nu = omega/2pi (GHz for mode frequencies, MHz
for linewidths, couplings and drive) and temperatures in Kelvin.  The
constants below are the single source for regression values.
"""

import math

TWO_PI = 2.0 * math.pi

# CODATA 2018. hbar derived from the exact h; k_B exact by definition.
HBAR = 1.054571817e-34   # J s
K_B = 1.380649e-23       # J / K

# Angular-frequency unit multipliers: kappa = 10 * MHZ means kappa/2pi = 10 MHz.
KHZ = TWO_PI * 1e3
MHZ = TWO_PI * 1e6
GHZ = TWO_PI * 1e9

# Stability margin is tol_stab = STABILITY_TOL_FACTOR * max(kappa); spectral
# abscissae inside the band count as marginal, not stable.
STABILITY_TOL_FACTOR = 1e-6

# Hermitian spectrum of V + i*Omega may dip this far below zero from round-off
# before a state is declared unphysical.
PHYSICALITY_TOL = 1e-10

# Intermediate negatives up to this size (relative) are treated as exact zeros
# inside the entanglement/steering formulas; anything larger is a domain error.
CLAMP_TOL = 1e-12

# Thermal occupations: every bath, including the skyrmion's, is evaluated at
# its own mode frequency (the skyrmion bath at omega_r).
