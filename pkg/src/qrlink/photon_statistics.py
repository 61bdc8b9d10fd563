"""Bose-Einstein photon occupancy per mode and thermal noise power."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .quantities import H, K_B
from .sweep import SweepResult, base_metadata

OPTIMAL_MAX_PHOTONS = 1.0
CLASSICAL_MIN_PHOTONS = 5.0

FIG4_TEMPERATURES = (0.005, 0.01, 0.1, 1.0, 10.0, 100.0, 290.0, 400.0, 800.0)
FIG4_F_RANGE = (1e8, 1e14)
# X-band carrier used in the worked QR example; always present on the grid.
FIG4_ANCHORS = (9.37e9,)


@dataclass(frozen=True)
class PhotonStats:
    n_b: float
    n_b_classical: float
    x: float


class Regime(str, enum.Enum):
    OPTIMAL = "optimal"
    MARGINAL = "marginal"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class QuantumRegime:
    label: Regime
    n_s: float


def reduced_energy(f, t_s):
    """Dimensionless ``h f / (k_B T)``."""
    return H * np.asarray(f, dtype=float) / (K_B * np.asarray(t_s, dtype=float))


def bose_einstein(f, t_s):
    """Mean photons per mode ``1/(exp(hf/kT) - 1)``, vectorised.

    Uses ``expm1`` so microwave frequencies at room temperature (x ~ 1e-3
    and far below) keep full precision. Overflow at x > ~709 yields 0.
    """
    f = np.asarray(f, dtype=float)
    t_s = np.asarray(t_s, dtype=float)
    if np.any(~(f > 0)) or np.any(~(t_s > 0)):
        raise DomainError("frequency and temperature must be positive")
    with np.errstate(over="ignore"):
        n = 1.0 / np.expm1(reduced_energy(f, t_s))
    return float(n) if n.ndim == 0 else n


def classical_occupancy(f, t_s):
    """First-order (Rayleigh-Jeans) occupancy ``k_B T / (h f)``."""
    f = np.asarray(f, dtype=float)
    t_s = np.asarray(t_s, dtype=float)
    if np.any(~(f > 0)) or np.any(~(t_s > 0)):
        raise DomainError("frequency and temperature must be positive")
    n = K_B * t_s / (H * f)
    return float(n) if n.ndim == 0 else n


def occupancy(f, t_s):
    if not (f > 0 and t_s > 0):
        raise DomainError(f"need f > 0 and t_s > 0, got f={f!r}, t_s={t_s!r}")
    return PhotonStats(
        n_b=bose_einstein(f, t_s),
        n_b_classical=classical_occupancy(f, t_s),
        x=float(reduced_energy(f, t_s)),
    )


def noise_power(f, t_s, b, classical=False):
    """Thermal noise power in bandwidth ``b``.

    The exact form is ``n_b h f b``; ``classical=True`` gives ``k_B T b``.
    """
    if b < 0:
        raise DomainError(f"bandwidth must be non-negative, got {b!r}")
    if classical:
        if not t_s > 0:
            raise DomainError(f"temperature must be positive, got {t_s!r}")
        return K_B * t_s * b
    return bose_einstein(f, t_s) * H * f * b


def classify_regime(n_s):
    """Label a signal occupancy: < 1 optimal, > 5 classical, else marginal."""
    if n_s < 0:
        raise DomainError(f"photon number must be non-negative, got {n_s!r}")
    if n_s < OPTIMAL_MAX_PHOTONS:
        label = Regime.OPTIMAL
    elif n_s > CLASSICAL_MIN_PHOTONS:
        label = Regime.CLASSICAL
    else:
        label = Regime.MARGINAL
    return QuantumRegime(label, float(n_s))


def log_grid(lo, hi, points_per_decade, anchors=()):
    """Log-spaced grid from ``lo`` to ``hi`` inclusive, merged with ``anchors``."""
    if not (0 < lo < hi):
        raise ConfigurationError(f"bad grid range [{lo}, {hi}]")
    if points_per_decade < 1:
        raise ConfigurationError("points_per_decade must be >= 1")
    lo_e, hi_e = np.log10(lo), np.log10(hi)
    n = int(round((hi_e - lo_e) * points_per_decade)) + 1
    grid = np.logspace(lo_e, hi_e, max(n, 2))
    extra = [a for a in anchors if lo <= a <= hi]
    return np.unique(np.concatenate([grid, np.asarray(extra, dtype=float)]))


def fig4_dataset(
    f_range=FIG4_F_RANGE,
    temperatures=FIG4_TEMPERATURES,
    points_per_decade=50,
    anchors=FIG4_ANCHORS,
):
    """Occupancy vs frequency for a set of system temperatures.

    Rows are ``(f_hz, t_k, n_b, n_b_classical)`` ordered by frequency, then
    by temperature in the order given.
    """
    temperatures = list(temperatures)
    if not temperatures:
        raise ConfigurationError("at least one temperature is required")
    lo, hi = f_range
    if lo < FIG4_F_RANGE[0] or hi > FIG4_F_RANGE[1]:
        raise ConfigurationError(
            f"frequency range must lie within {FIG4_F_RANGE[0]:g}..{FIG4_F_RANGE[1]:g} Hz"
        )
    freqs = log_grid(lo, hi, points_per_decade, anchors)
    temps = np.asarray(temperatures, dtype=float)
    ff, tt = np.meshgrid(freqs, temps, indexing="ij")
    exact = bose_einstein(ff, tt)
    approx = classical_occupancy(ff, tt)
    rows = np.column_stack([ff.ravel(), tt.ravel(), exact.ravel(), approx.ravel()])
    config = {
        "dataset": "fig4",
        "f_range": [float(lo), float(hi)],
        "temperatures": [float(t) for t in temperatures],
        "points_per_decade": int(points_per_decade),
        "anchors": [float(a) for a in anchors],
    }
    return SweepResult(
        ["f_hz", "t_k", "n_b", "n_b_classical"],
        rows.tolist(),
        base_metadata(config),
    )
