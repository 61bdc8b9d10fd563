"""Golden-value table: published worked numbers recomputed from the formulas.

Checks marked ``flagged`` are published values that the formulas do not
reproduce (internal inconsistencies in the source material). They are always
printed, with their error, but never fail the run.
"""

import warnings
from dataclasses import dataclass, field

from . import link_budget as lb
from .errors import ScenarioWarning
from .noise_temperature import budget, noise_figure_for_lna_temperature
from .photon_statistics import bose_einstein
from .quantities import linear_to_db, wavelength

PASS, FAIL, FLAGGED = "pass", "fail", "flagged"
HOUR = 3600.0


@dataclass(frozen=True)
class Check:
    name: str
    published_value: float
    computed_value: float
    tolerance: float
    flagged: bool = False
    note: str = ""

    @property
    def relative_error(self):
        return abs(self.computed_value - self.published_value) / abs(self.published_value)

    @property
    def status(self):
        if self.flagged:
            return FLAGGED
        return PASS if self.relative_error <= self.tolerance else FAIL


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.status != FAIL for c in self.checks)

    def by_name(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self):
        head = f"{'check':<24} {'published':>12} {'computed':>12} {'rel.err':>9} {'tol':>8}  status"
        lines = [head, "-" * len(head)]
        for c in self.checks:
            lines.append(
                f"{c.name:<24} {c.published_value:>12.4g} {c.computed_value:>12.4g} "
                f"{c.relative_error:>9.2e} {c.tolerance:>8.1e}  {c.status.upper()}"
            )
            if c.note and c.status != PASS:
                lines.append(f"{'':<24} note: {c.note}")
        n_fail = sum(c.status == FAIL for c in self.checks)
        n_flag = sum(c.status == FLAGGED for c in self.checks)
        lines.append(
            f"{len(self.checks)} checks: {len(self.checks) - n_fail - n_flag} pass, "
            f"{n_fail} fail, {n_flag} flagged"
        )
        return "\n".join(lines)

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "published_value": c.published_value,
                    "computed_value": c.computed_value,
                    "relative_error": c.relative_error,
                    "tolerance": c.tolerance,
                    "status": c.status,
                    "note": c.note,
                }
                for c in self.checks
            ],
        }


def xband_scenario(t_s=400.0):
    """X-band QR example: 9.37 GHz, 1 GHz, G = 30 dB, 1 m^2, ns_eta = 1, lossless."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ScenarioWarning)
        return lb.Scenario(f0=9.37e9, b=1e9, t_dwell=1.0, g=1000.0, sigma=1.0, t_s=t_s)


def golden_checks():
    s400 = xband_scenario(400.0)
    a_r = lb.attenuation(s400, 1000.0)
    dwell = {t: lb.qr_required_dwell(xband_scenario(t), 1000.0) for t in (400.0, 290.0, 255.0)}
    snr_gain_10m = lb.qr_snr(s400, 10.0) / lb.qr_snr(s400, 1000.0)
    exemplar = budget(30.0, 0.5, 1.0)

    return [
        Check("lambda@9.37GHz", 0.032, wavelength(9.37e9), 5e-3),
        Check("N_B@9.37GHz,400K", 889.0, bose_einstein(9.37e9, 400.0), 1.0 / 889.0),
        Check("a_R@1km", 5.16e-13, a_r, 5e-3),
        Check("a_R_dB@1km", -123.0, linear_to_db(a_r), 5e-3),
        Check("dwell@400K", 479.0, dwell[400.0] / HOUR, 1e-2, note="hours"),
        Check("snr_gain_10m_vs_1km", 1e8, snr_gain_10m, 1e-12),
        Check("dwell@10m", 17e-3, lb.qr_required_dwell(s400, 10.0), 0.10, note="seconds"),
        Check("N_T@100mW,10GHz", 1.51e22, lb.photons_transmitted(0.1, 10e9, 1.0), 5e-3,
              note="photons per second"),
        Check("B_eq@100mW,10GHz", 1.51e13, lb.equality_bandwidth(0.1, 10e9) / 1e9, 5e-3,
              note="GHz"),
        Check("PAPR1.5_loss_dB", 1.76, linear_to_db(1.5), 5e-3),
        Check("T_RF@0.5dB", 35.0, exemplar.t_rf, 2e-2),
        Check("dwell@290K", 367.0, dwell[290.0] / HOUR, 1e-2, flagged=True,
              note="n_b scaling from the 400 K case gives ~347 h"),
        Check("dwell@255K", 323.0, dwell[255.0] / HOUR, 1e-2, flagged=True,
              note="n_b scaling from the 400 K case gives ~305 h"),
        Check("T_LNA@NF1dB", 190.0, exemplar.t_lna, 2e-2, flagged=True,
              note=f"formula gives ~84 K; 190 K needs NF = "
                   f"{noise_figure_for_lna_temperature(190.0, 0.5):.2f} dB"),
        Check("T_s@NF1dB", 255.0, exemplar.t_s, 2e-2, flagged=True,
              note=f"with NF = 2 dB the sum is {budget(30.0, 0.5, 2.0).t_s:.1f} K"),
        Check("N_B@540THz,3000K", 3e-4, bose_einstein(5.4e14, 3000.0), 0.5, flagged=True,
              note="published only as an order of magnitude"),
    ]


def run_verification():
    return VerificationReport(golden_checks())

