"""Tabular sweep results and their CSV / JSON serialisation.

CSV layout::

    # tool=qrlink
    # version=0.1.0
    # scenario_sha256=...
    # seed=none
    f_hz,t_k,n_b,n_b_classical
    1.0000000000000000e+08,0.005,...

Metadata lines start with ``# `` and hold ``key=value``. Numbers are written
with 17 significant digits by default so that a parse/write cycle is exact.
"""

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigurationError

FULL_PRECISION = 17


def canonical_hash(obj):
    """Short SHA-256 of a JSON-serialisable object with sorted keys."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=repr)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def base_metadata(config, seed=None):
    """Metadata block common to every emitted table."""
    return {
        "tool": "qrlink",
        "version": __version__,
        "scenario_sha256": canonical_hash(config),
        "seed": "none" if seed is None else str(int(seed)),
    }


def _fmt(value, precision):
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{precision}g}"


@dataclass
class SweepResult:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = [str(c) for c in self.columns]
        if len(set(self.columns)) != len(self.columns):
            raise ConfigurationError(f"duplicate column names in {self.columns}")
        width = len(self.columns)
        self.rows = [tuple(float(v) for v in r) for r in self.rows]
        for i, r in enumerate(self.rows):
            if len(r) != width:
                raise ConfigurationError(
                    f"row {i} has {len(r)} values for {width} columns"
                )

    def column(self, name):
        idx = self.columns.index(name)
        return np.array([r[idx] for r in self.rows], dtype=float)

    def as_array(self):
        return np.array(self.rows, dtype=float).reshape(len(self.rows), len(self.columns))

    # -- CSV ---------------------------------------------------------------

    def to_csv(self, dest=None, precision=FULL_PRECISION):
        """Write CSV to a path or text stream; returns the text if ``dest`` is None."""
        buf = io.StringIO()
        for key, value in self.metadata.items():
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for r in self.rows:
            writer.writerow([_fmt(v, precision) for v in r])
        text = buf.getvalue()
        _emit(text, dest)
        return text if dest is None else None

    @classmethod
    def from_csv(cls, source):
        text = _slurp(source)
        meta = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
            elif line.strip():
                body.append(line)
        if not body:
            raise ConfigurationError("CSV has no header row")
        reader = csv.reader(body)
        columns = next(reader)
        rows = [tuple(float(v) for v in r) for r in reader]
        return cls(columns, rows, meta)

    # -- JSON --------------------------------------------------------------

    def to_json(self, dest=None):
        obj = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [[_json_num(v) for v in r] for r in self.rows],
        }
        text = json.dumps(obj, indent=1) + "\n"
        _emit(text, dest)
        return text if dest is None else None

    @classmethod
    def from_json(cls, source):
        obj = json.loads(_slurp(source))
        rows = [tuple(float(v) for v in r) for r in obj["rows"]]
        return cls(obj["columns"], rows, obj.get("metadata", {}))

    def write(self, path, fmt=None, precision=FULL_PRECISION):
        """Write to ``path`` choosing CSV or JSON from ``fmt`` or the suffix."""
        fmt = fmt or ("json" if str(path).lower().endswith(".json") else "csv")
        if fmt == "json":
            self.to_json(path)
        elif fmt == "csv":
            self.to_csv(path, precision=precision)
        else:
            raise ConfigurationError(f"unknown output format {fmt!r}")

    @classmethod
    def read(cls, path):
        if str(path).lower().endswith(".json"):
            return cls.from_json(path)
        return cls.from_csv(path)


def _json_num(v):
    # JSON has no inf/nan; keep them as strings so float() restores them.
    if math.isfinite(v):
        return v
    return _fmt(v, FULL_PRECISION)


def _emit(text, dest):
    if dest is None:
        return
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(Path(dest), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _slurp(source):
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")
