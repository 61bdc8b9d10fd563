"""Quantum radar vs. noise radar link-budget toolkit.

The numerical core lives in four modules:

* :mod:`qrlink.photon_statistics` - Bose-Einstein occupancy per mode
* :mod:`qrlink.noise_temperature` - antenna + RF line + LNA noise temperature
* :mod:`qrlink.link_budget` - range equations for both radar types
* :mod:`qrlink.waveform` - seeded waveform generation, PAPR and sidelobes

Everything is SI and linear internally; decibels only appear at the edges.
"""

__version__ = "0.1.0"

from .errors import ConfigurationError, DomainError, ScenarioError, ScenarioWarning  # noqa: E402

__all__ = [
    "__version__",
    "ConfigurationError",
    "DomainError",
    "ScenarioError",
    "ScenarioWarning",
]
