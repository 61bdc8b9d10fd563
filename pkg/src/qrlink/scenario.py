"""Scenario files: a flat ``key = value`` format with explicit unit suffixes.

Grammar::

    file    := { line }
    line    := blank | comment | entry
    comment := "#" text
    entry   := key "=" number [ "#" text ]

Every key carries its unit in the suffix (``_hz``, ``_s``, ``_db``, ``_k``,
``_w``, ``_m2``, ...), so a bare ``gain = 30`` is rejected instead of being
guessed at. dB keys are converted to linear on load. Loss follows the
"negative dB" convention: ``loss_db = -4``.

Noise temperature is given either directly (``t_s_k``) or as the budget
triple ``t_a_k``, ``l_rf_db``, ``nf_db`` (plus optional ``t_0_k``). If both
are present the direct value wins and a :class:`ScenarioWarning` is issued.
"""

import math
import warnings
from importlib import resources
from pathlib import Path

from .errors import DomainError, ScenarioError, ScenarioWarning
from .link_budget import Scenario
from .noise_temperature import budget
from .quantities import T0_IEEE, db_to_linear


def _lin(x):
    return x


def _dbm_to_w(x):
    return db_to_linear(x - 30.0)


# file key -> (Scenario field, converter)
SCENARIO_KEYS = {
    "f0_hz": ("f0", _lin),
    "b_hz": ("b", _lin),
    "t_dwell_s": ("t_dwell", _lin),
    "g_db": ("g", db_to_linear),
    "g_lin": ("g", _lin),
    "sigma_m2": ("sigma", _lin),
    "sigma_dbsm": ("sigma", db_to_linear),
    "t_s_k": ("t_s", _lin),
    "loss_db": ("loss", db_to_linear),
    "loss_lin": ("loss", _lin),
    "snr_min_db": ("snr_min", db_to_linear),
    "snr_min_lin": ("snr_min", _lin),
    "ns_eta": ("ns_eta", _lin),
    "ns_eta_db": ("ns_eta", db_to_linear),
    "p_t_w": ("p_t", _lin),
    "p_t_dbw": ("p_t", db_to_linear),
    "p_t_dbm": ("p_t", _dbm_to_w),
}
BUDGET_KEYS = ("t_a_k", "l_rf_db", "nf_db", "t_0_k")
REQUIRED_FIELDS = ("f0", "b", "t_dwell", "g", "sigma")


def _parse_entries(text):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ScenarioError("expected 'key = value'", line=lineno)
        if key not in SCENARIO_KEYS and key not in BUDGET_KEYS:
            raise ScenarioError("unknown key (keys need a unit suffix, e.g. _hz, _db)",
                                field=key, line=lineno)
        if key in entries:
            raise ScenarioError("duplicate key", field=key, line=lineno)
        try:
            number = float(value.strip())
        except ValueError:
            raise ScenarioError(f"not a number: {value.strip()!r}", field=key, line=lineno) from None
        if not math.isfinite(number):
            raise ScenarioError("value must be finite", field=key, line=lineno)
        entries[key] = (number, lineno)
    return entries


def parse_scenario(text, source="<string>"):
    """Build a validated :class:`Scenario` from scenario-file text."""
    entries = _parse_entries(text)
    fields = {}
    origin = {}
    for key, (number, lineno) in entries.items():
        if key in BUDGET_KEYS:
            continue
        name, convert = SCENARIO_KEYS[key]
        if name in fields:
            raise ScenarioError(f"{name} given twice ({origin[name]} and {key})",
                                field=key, line=lineno)
        if key == "loss_db" and number > 0:
            raise ScenarioError("loss must be <= 0 dB (e.g. loss_db = -4)", field=key, line=lineno)
        fields[name] = convert(number)
        origin[name] = key

    triple = [k for k in BUDGET_KEYS[:3] if k in entries]
    if "t_s" in fields:
        if triple:
            warnings.warn(
                f"{source}: both t_s_k and {', '.join(triple)} given; using t_s_k",
                ScenarioWarning,
                stacklevel=2,
            )
    elif triple:
        missing = [k for k in BUDGET_KEYS[:3] if k not in entries]
        if missing:
            raise ScenarioError("incomplete noise budget; need t_a_k, l_rf_db and nf_db",
                                field=missing[0])
        t_0 = entries["t_0_k"][0] if "t_0_k" in entries else T0_IEEE
        try:
            nb = budget(entries["t_a_k"][0], entries["l_rf_db"][0], entries["nf_db"][0], t_0)
        except DomainError as exc:
            raise ScenarioError(str(exc), field="t_a_k/l_rf_db/nf_db") from None
        fields["t_s"] = nb.t_s
        origin["t_s"] = "t_a_k/l_rf_db/nf_db"
    else:
        raise ScenarioError("missing noise temperature (t_s_k or t_a_k/l_rf_db/nf_db)",
                            field="t_s_k")

    for name in REQUIRED_FIELDS:
        if name not in fields:
            key = next(k for k, (f, _) in SCENARIO_KEYS.items() if f == name)
            raise ScenarioError("required", field=key)

    try:
        return Scenario(**fields)
    except DomainError as exc:
        name = str(exc).split(" ", 1)[0]
        raise ScenarioError(str(exc), field=origin.get(name, name)) from None


def load_scenario(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenario(text, source=str(path))


def builtin_scenario_path(name):
    """Path of a bundled scenario file, e.g. ``fig5`` or ``xband_400k``."""
    ref = resources.files("qrlink") / "data" / f"{name}.scn"
    if not ref.is_file():
        raise ScenarioError(f"no bundled scenario named {name!r}")
    return Path(str(ref))


def resolve_scenario(name_or_path):
    """Load a scenario from a file path, or a bundled one by name."""
    if name_or_path is None:
        return None
    p = Path(name_or_path)
    if p.exists():
        return load_scenario(p)
    return load_scenario(builtin_scenario_path(name_or_path))


def scenario_to_text(s):
    """Serialise a scenario back to the file format (linear keys, full precision)."""
    lines = [
        f"f0_hz = {s.f0!r}",
        f"b_hz = {s.b!r}",
        f"t_dwell_s = {s.t_dwell!r}",
        f"g_lin = {s.g!r}",
        f"sigma_m2 = {s.sigma!r}",
        f"t_s_k = {s.t_s!r}",
        f"loss_lin = {s.loss!r}",
        f"snr_min_lin = {s.snr_min!r}",
        f"ns_eta = {s.ns_eta!r}",
    ]
    if s.p_t is not None:
        lines.append(f"p_t_w = {s.p_t!r}")
    return "\n".join(lines) + "\n"
