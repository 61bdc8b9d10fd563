"""Range equations for quantum radar (QR) and continuous-emission noise radar (NR).

Conventions
-----------
* ``loss`` is the total loss as a linear factor in (0, 1]; -4 dB -> 0.398.
  It multiplies the received signal in every QR and NR expression, so the
  round trip ``snr(r_max) == snr_min`` holds for any loss. With ``loss=1``
  the QR expressions reduce to the lossless textbook forms.
* ``ns_eta`` is the product of signal photons per mode and quantum advantage,
  used only as a single number.
* QR noise uses the exact Bose-Einstein occupancy unless ``classical_nb``.
  NR noise is always ``k_B T_s B``.
* NR coherent integration gain is ``B * t_dwell``.
"""

import dataclasses
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigurationError, DomainError, ScenarioWarning
from .photon_statistics import bose_einstein, classical_occupancy, log_grid
from .quantities import H, K_B, db_to_linear, wavelength
from .sweep import SweepResult, base_metadata

FOUR_PI_CUBED = (4.0 * math.pi) ** 3
MAX_FRACTIONAL_BANDWIDTH = 0.1


@dataclass(frozen=True)
class Scenario:
    """One radar configuration, all quantities linear SI."""

    f0: float
    b: float
    t_dwell: float
    g: float
    sigma: float
    t_s: float
    loss: float = 1.0
    snr_min: float = 1.0
    ns_eta: float = 1.0
    p_t: Optional[float] = None

    def __post_init__(self):
        for name in ("f0", "b", "t_dwell", "g", "sigma", "t_s", "snr_min"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not 0.0 < self.loss <= 1.0:
            raise DomainError(f"loss must be in (0, 1], got {self.loss!r}")
        if not (self.ns_eta >= 0 and math.isfinite(self.ns_eta)):
            raise DomainError(f"ns_eta must be >= 0, got {self.ns_eta!r}")
        if self.p_t is not None and not (self.p_t > 0 and math.isfinite(self.p_t)):
            raise DomainError(f"p_t must be positive, got {self.p_t!r}")
        if self.b > self.f0:
            raise DomainError(f"b = {self.b:g} Hz exceeds the carrier f0 = {self.f0:g} Hz")
        if self.b > MAX_FRACTIONAL_BANDWIDTH * self.f0:
            warnings.warn(
                f"fractional bandwidth {self.b / self.f0:.3g} exceeds "
                f"{MAX_FRACTIONAL_BANDWIDTH:g}",
                ScenarioWarning,
                stacklevel=3,
            )
        if self.modes < 1:
            warnings.warn(
                f"time-bandwidth product {self.modes:.3g} is below one mode",
                ScenarioWarning,
                stacklevel=3,
            )

    @property
    def modes(self):
        return self.b * self.t_dwell

    @property
    def wavelength(self):
        return wavelength(self.f0)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def as_dict(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class RangeResult:
    r_max: float
    achieved_snr_at_r: float
    inputs_echo: Scenario


def background_occupancy(s, classical_nb=False):
    """Background photons per mode at the scenario's carrier and T_s."""
    if classical_nb:
        return classical_occupancy(s.f0, s.t_s)
    return bose_einstein(s.f0, s.t_s)


def _photon_contrast(s, classical_nb):
    """``ns_eta / n_b``; infinite once the background occupancy underflows to zero."""
    n_b = background_occupancy(s, classical_nb)
    if n_b == 0:
        return math.inf if s.ns_eta > 0 else 0.0
    return s.ns_eta / n_b


def _require_pt(s):
    if s.p_t is None:
        raise ConfigurationError("scenario has no transmit power p_t (needed for NR)")
    return s.p_t


def free_space_attenuation(g, lam, sigma, r):
    """Two-way monostatic attenuation ``g^2 lam^2 sigma / ((4 pi)^3 r^4)``."""
    if not (g > 0 and lam > 0 and sigma > 0):
        raise DomainError("gain, wavelength and RCS must be positive")
    if not r > 0:
        raise DomainError(f"range must be positive, got {r!r}")
    return g * g * lam * lam * sigma / (FOUR_PI_CUBED * r**4)


def attenuation(s, r):
    return free_space_attenuation(s.g, s.wavelength, s.sigma, r)


def qr_received_power(s, r):
    """Echo power in W: ``M * ns_eta * h f0 B * a_R * L`` with ``M = B T``."""
    return s.modes * s.ns_eta * H * s.f0 * s.b * attenuation(s, r) * s.loss


def qr_snr(s, r, classical_nb=False):
    """QR signal-to-noise ratio ``B T (ns_eta / n_b) a_R L``."""
    return s.modes * _photon_contrast(s, classical_nb) * attenuation(s, r) * s.loss


def qr_required_dwell(s, r, target_snr=1.0, classical_nb=False):
    """Signal duration in seconds giving ``target_snr`` at range ``r``."""
    if not target_snr > 0:
        raise DomainError(f"target SNR must be positive, got {target_snr!r}")
    if s.ns_eta == 0:
        raise DomainError("ns_eta = 0 never reaches a positive SNR")
    n_b = background_occupancy(s, classical_nb)
    return target_snr * n_b / (s.ns_eta * s.b * attenuation(s, r) * s.loss)


def qr_max_range(s, classical_nb=False):
    """Range at which the QR SNR equals ``snr_min``; infinite with no background."""
    lam = s.wavelength
    core = s.g**2 * lam**2 * s.loss * s.sigma / (FOUR_PI_CUBED * s.snr_min)
    r = (core * _photon_contrast(s, classical_nb) * s.modes) ** 0.25
    snr = qr_snr(s, r, classical_nb) if 0 < r < math.inf else r
    return RangeResult(r, snr, s)


def integration_gain(s):
    return s.modes


def nr_snr(s, r):
    """NR output SNR after coherent integration over ``t_dwell``."""
    p_t = _require_pt(s)
    signal = p_t * attenuation(s, r) * s.loss * integration_gain(s)
    return signal / (K_B * s.t_s * s.b)


def nr_max_range(s):
    p_t = _require_pt(s)
    lam = s.wavelength
    num = p_t * s.g**2 * lam**2 * s.loss * integration_gain(s) * s.sigma
    den = FOUR_PI_CUBED * s.snr_min * K_B * s.t_s * s.b
    r = (num / den) ** 0.25
    return RangeResult(r, nr_snr(s, r), s)


def range_ratio(s, classical_nb=False):
    """NR-to-QR maximum range ratio ``[p_t/(k T B) * n_b/ns_eta]^(1/4)``."""
    p_t = _require_pt(s)
    if s.ns_eta == 0:
        raise DomainError("ns_eta = 0 gives zero QR range; ratio undefined")
    n_b = background_occupancy(s, classical_nb)
    return (p_t / (K_B * s.t_s * s.b) * n_b / s.ns_eta) ** 0.25


def range_ratio_simplified(p_t, f, b):
    """Room-temperature, ``ns_eta = 1`` form ``[p_t / (h f B)]^(1/4)``."""
    if not (p_t > 0 and f > 0 and b > 0):
        raise DomainError("p_t, f and b must be positive")
    return (p_t / (H * f * b)) ** 0.25


def photons_transmitted(p_t, f, t):
    """Number of photons ``p_t t / (h f)`` emitted in time ``t``."""
    if not (p_t >= 0 and f > 0 and t >= 0):
        raise DomainError("need p_t >= 0, f > 0, t >= 0")
    return p_t * t / (H * f)


def equality_bandwidth(p_t, f):
    """Bandwidth for which the mode count ``B T`` equals the photon count."""
    if not (p_t > 0 and f > 0):
        raise DomainError("p_t and f must be positive")
    return p_t / (H * f)


def crossover_frequency(p_t, a):
    """Carrier at which the simplified range ratio is 1 when ``B = a f``."""
    if not p_t > 0:
        raise DomainError(f"p_t must be positive, got {p_t!r}")
    if not 0 < a < 1:
        raise DomainError(f"fractional bandwidth must be in (0, 1), got {a!r}")
    return math.sqrt(p_t / (H * a))


FIG5_DEFAULTS = dict(
    f0=9.37e9,
    b=1e9,
    t_dwell=1.0,
    g=db_to_linear(30.0),
    sigma=1.0,
    t_s=290.0,
    loss=db_to_linear(-4.0),
    snr_min=db_to_linear(13.2),
    ns_eta=1.0,
    p_t=0.1,
)
FIG5_NR_TEMPS = (100.0, 290.0, 800.0)


def fig5_scenario(**overrides):
    params = dict(FIG5_DEFAULTS)
    params.update(overrides)
    return Scenario(**params)


def _temp_label(t):
    return f"{t:g}K"


def fig5_dataset(
    t_dwell_range=(1e-3, 1.0),
    nr_temps=FIG5_NR_TEMPS,
    config=None,
    points_per_decade=40,
    qr_t_s=290.0,
    classical_nb=False,
):
    """Maximum range vs dwell for QR (at ``qr_t_s``) and NR at several T_s.

    Columns: ``t_dwell_s, r_qr_m, r_nr_m@<T>K...``.
    """
    nr_temps = list(nr_temps)
    if not nr_temps:
        raise ConfigurationError("at least one NR temperature is required")
    base = config if config is not None else fig5_scenario()
    _require_pt(base)
    grid = log_grid(t_dwell_range[0], t_dwell_range[1], points_per_decade)
    columns = ["t_dwell_s", "r_qr_m"] + [f"r_nr_m@{_temp_label(t)}" for t in nr_temps]
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScenarioWarning)
        for t in grid:
            s = base.replace(t_dwell=float(t))
            r_qr = qr_max_range(s.replace(t_s=qr_t_s), classical_nb).r_max
            r_nr = [nr_max_range(s.replace(t_s=float(ts))).r_max for ts in nr_temps]
            rows.append((float(t), r_qr, *r_nr))
    cfg = {
        "dataset": "fig5",
        "scenario": base.as_dict(),
        "t_dwell_range": [float(v) for v in t_dwell_range],
        "nr_temps": [float(v) for v in nr_temps],
        "points_per_decade": int(points_per_decade),
        "qr_t_s": float(qr_t_s),
        "classical_nb": bool(classical_nb),
    }
    meta = base_metadata(cfg)
    meta["qr_t_s"] = f"{qr_t_s:g}"
    return SweepResult(columns, rows, meta)


SWEEPABLE = tuple(f.name for f in dataclasses.fields(Scenario))


def parameter_sweep(
    base,
    var,
    start,
    stop,
    points,
    log=True,
    fractional_bandwidth=None,
    classical_nb=False,
):
    """Sweep one numeric Scenario field, evaluating QR range, NR range and ratios.

    With ``fractional_bandwidth`` set, the bandwidth tracks ``a * f0`` at
    every point (used for carrier sweeps).
    """
    if var not in SWEEPABLE:
        raise ConfigurationError(
            f"cannot sweep {var!r}; numeric scenario fields are {', '.join(SWEEPABLE)}"
        )
    if points < 1:
        raise ConfigurationError("points must be >= 1")
    if log:
        if not (start > 0 and stop > 0):
            raise ConfigurationError("log sweep needs positive bounds")
        values = np.logspace(np.log10(start), np.log10(stop), points)
    else:
        values = np.linspace(start, stop, points)
    values = np.sort(values)
    if var != "p_t":
        _require_pt(base)
    columns = [var, "r_qr_m", "r_nr_m", "range_ratio", "range_ratio_simplified"]
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScenarioWarning)
        for v in values:
            changes = {var: float(v)}
            if fractional_bandwidth is not None:
                f0 = float(v) if var == "f0" else base.f0
                changes["b"] = fractional_bandwidth * f0
            s = base.replace(**changes)
            rows.append(
                (
                    float(v),
                    qr_max_range(s, classical_nb).r_max,
                    nr_max_range(s).r_max,
                    range_ratio(s, classical_nb),
                    range_ratio_simplified(s.p_t, s.f0, s.b),
                )
            )
    cfg = {
        "dataset": "sweep",
        "scenario": base.as_dict(),
        "var": var,
        "start": float(start),
        "stop": float(stop),
        "points": int(points),
        "log": bool(log),
        "fractional_bandwidth": fractional_bandwidth,
        "classical_nb": bool(classical_nb),
    }
    return SweepResult(columns, rows, base_metadata(cfg))
