"""System noise temperature referred to the antenna output.

``T_s = T_a + T_RF + T_LNA`` with a lossy RF line at reference temperature
``t_0`` followed by a single low-noise amplifier.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quantities import T0_IEEE, db_to_linear

# X-band sky-noise exemplar: (angle from zenith in degrees, T_a in kelvin).
# A coarse three-point stand-in for published sky-noise charts; supply a
# measured T_a for real analyses.
ANTENNA_EXEMPLAR_POINTS = ((0.0, 10.0), (30.0, 30.0), (90.0, 100.0))


@dataclass(frozen=True)
class NoiseTemperatureBudget:
    t_a: float
    l_rf: float
    f_lna: float
    t_0: float
    t_rf: float
    t_lna: float
    t_s: float


def budget(t_a, l_rf_db, nf_db, t_0=T0_IEEE):
    """Noise temperature budget from antenna temperature, line loss and LNA NF.

    Args:
        t_a: antenna temperature, K
        l_rf_db: RF line loss in dB (positive number, e.g. 0.5)
        nf_db: LNA noise figure in dB
        t_0: physical / reference temperature of the line, K
    """
    if t_a < 0:
        raise DomainError(f"antenna temperature must be >= 0 K, got {t_a!r}")
    if l_rf_db < 0:
        raise DomainError(f"RF loss must be >= 0 dB, got {l_rf_db!r}")
    if nf_db < 0:
        raise DomainError(f"noise figure must be >= 0 dB, got {nf_db!r}")
    if not t_0 > 0:
        raise DomainError(f"reference temperature must be > 0 K, got {t_0!r}")
    l_rf = db_to_linear(l_rf_db)
    f_lna = db_to_linear(nf_db)
    t_rf = (l_rf - 1.0) * t_0
    t_lna = (f_lna - 1.0) * l_rf * t_0
    return NoiseTemperatureBudget(
        t_a=float(t_a),
        l_rf=l_rf,
        f_lna=f_lna,
        t_0=float(t_0),
        t_rf=t_rf,
        t_lna=t_lna,
        t_s=t_a + t_rf + t_lna,
    )


def noise_figure_for_lna_temperature(t_lna, l_rf_db, t_0=T0_IEEE):
    """Inverse of the LNA term: the NF (dB) that yields ``t_lna`` behind the line."""
    l_rf = db_to_linear(l_rf_db)
    return 10.0 * np.log10(1.0 + t_lna / (l_rf * t_0))


def antenna_temperature_exemplar(pointing_deg):
    """Piecewise-linear X-band antenna temperature vs angle from zenith."""
    if not 0.0 <= pointing_deg <= 90.0:
        raise DomainError(f"pointing angle must be in [0, 90] deg, got {pointing_deg!r}")
    angles, temps = zip(*ANTENNA_EXEMPLAR_POINTS)
    return float(np.interp(pointing_deg, angles, temps))
