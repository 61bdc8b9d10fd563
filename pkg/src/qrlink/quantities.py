"""Physical constants and dB/linear conversions.

Constants are the exact 2019 SI values. All computation elsewhere in the
package is done in linear SI units; dB appears only at I/O boundaries.
"""

from dataclasses import dataclass
from typing import NewType

import numpy as np

from .errors import DomainError

Decibel = NewType("Decibel", float)


@dataclass(frozen=True)
class PhysicalConstants:
    h: float = 6.62607015e-34  # J s
    k_B: float = 1.380649e-23  # J/K
    c: float = 2.99792458e8  # m/s


SI = PhysicalConstants()

H = SI.h
K_B = SI.k_B
C = SI.c

# Rounded Boltzmann constant that appears in some literature (1.38065e-23).
# Kept only so its effect can be quantified; never used in computation.
K_B_ROUNDED = 1.38065e-23

T0_IEEE = 290.0  # K, standard reference temperature


def db_to_linear(x):
    """Power ratio from decibels, ``10**(x/10)``. Accepts scalars or arrays."""
    if np.ndim(x) == 0:
        return 10.0 ** (float(x) / 10.0)
    return np.power(10.0, np.asarray(x, dtype=float) / 10.0)


def linear_to_db(x):
    """Decibels from a positive power ratio, ``10*log10(x)``."""
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"linear_to_db needs positive input, got {x!r}")
    if arr.ndim == 0:
        return 10.0 * float(np.log10(arr))
    return 10.0 * np.log10(arr)


def wavelength(f):
    """Free-space wavelength in metres for a frequency in Hz."""
    if not f > 0:
        raise DomainError(f"frequency must be positive, got {f!r}")
    return C / f
