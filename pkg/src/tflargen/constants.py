"""Physical constants and default trap parameters (SI units).

These are pinned literals rather than imports from scipy.constants so the
benchmark table output is reproducible bit for bit.
"""

import math

HBAR = 1.054571817e-34            # J s
ATOMIC_MASS_KG = 1.66053906660e-27  # kg per amu

# Cs-133 trap used by the built-in benchmark table.
CS133_MASS_AMU = 133.0
DEFAULT_TRAP_OMEGA = 20.0 * math.pi       # rad/s
DEFAULT_SCATTERING_LENGTH_M = 3.0e-9      # m
