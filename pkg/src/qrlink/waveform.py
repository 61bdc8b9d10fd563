"""Seeded noise-radar waveforms: generation, PAPR tailoring, correlation metrics.

Waveforms are complex baseband sequences normalised to unit mean power.
Three kinds are generated:

``gaussian``
    i.i.d. circular complex normal samples, the statistics of a thermal or
    quantum-generated emission that cannot be shaped.
``constant_modulus``
    unit amplitude, i.i.d. uniform phase (a phase-only noise code).
``tailored``
    a Gaussian start pushed to a target PAPR by alternating an envelope clip
    with a band-limiting spectral mask.

Sidelobe statistics use circular (periodic) correlation by default, which is
what continuous-emission processing sees.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigurationError, DomainError
from .prng import CounterRNG
from .quantities import linear_to_db
from .sweep import SweepResult, base_metadata

KINDS = ("gaussian", "constant_modulus", "tailored")
MIN_SAMPLES = 16
DEFAULT_SAMPLE_RATE = 1e9
IQ_MAGIC = "QRLINK-IQ/1"


@dataclass(frozen=True, eq=False)
class Waveform:
    samples: np.ndarray
    sample_rate: float
    seed: int
    kind: str
    params: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.samples)

    @property
    def energy(self):
        return math.fsum(np.abs(self.samples) ** 2)

    @property
    def band_fraction(self):
        return float(self.params.get("band_fraction", 1.0))

    @classmethod
    def from_samples(cls, samples, sample_rate=DEFAULT_SAMPLE_RATE, kind="external", **params):
        """Wrap user-supplied samples without normalising them."""
        return cls(np.asarray(samples, dtype=complex), float(sample_rate), 0, kind, dict(params))


@dataclass(frozen=True)
class WaveformMetrics:
    papr: float
    papr_db: float
    psl_db: float
    mean_sidelobe_db: float
    energy: float
    zero_lag: float
    mainlobe_halfwidth: int


def normalize_power(x):
    """Scale to unit mean power."""
    p = float(np.mean(np.abs(x) ** 2))
    if not p > 0:
        raise DomainError("cannot normalise an all-zero waveform")
    return x / math.sqrt(p)


def band_mask(m, band_fraction):
    """Boolean FFT-bin mask keeping the lowest ``band_fraction`` of the bins."""
    if not 0.0 < band_fraction <= 1.0:
        raise DomainError(f"band_fraction must be in (0, 1], got {band_fraction!r}")
    keep = max(1, int(round(band_fraction * m)))
    mask = np.zeros(m, dtype=bool)
    mask[:keep] = True
    return mask


def project_band(x, mask):
    if mask.all():
        return x
    spec = np.fft.fft(x)
    spec[~mask] = 0.0
    return np.fft.ifft(spec)


def clip_envelope(x, amplitude):
    """Zero-memory nonlinearity: limit ``|x|`` to ``amplitude``, keep phase."""
    mag = np.abs(x)
    over = mag > amplitude
    if not over.any():
        return x
    out = x.copy()
    out[over] *= amplitude / mag[over]
    return out


def papr(x):
    """Peak-to-average power ratio; exactly 1.0 for a constant envelope.

    An envelope whose power spread is within a few ulp of its peak counts as
    constant, so rounding in ``cos``/``sin`` does not report 1 + 2e-16.
    """
    p = np.abs(x) ** 2
    peak = p.max()
    if peak - p.min() <= 8.0 * np.finfo(float).eps * peak:
        return 1.0
    return float(peak / np.mean(p))


def generate(kind, m, seed, sample_rate=DEFAULT_SAMPLE_RATE, **params):
    """Generate a unit-power waveform of ``m`` samples, reproducible from ``seed``.

    Keyword parameters by kind:

    * gaussian: ``truncation`` (envelope limit in rms units, default none),
      ``band_fraction`` (default 1).
    * tailored: ``papr_target``, ``band_fraction``, ``iterations``; the
      Gaussian start uses the same seed.
    """
    if kind not in KINDS:
        raise ConfigurationError(f"unknown waveform kind {kind!r}; choose from {KINDS}")
    m = int(m)
    if m < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} samples, got {m}")
    rng = CounterRNG(seed)

    if kind == "constant_modulus":
        if params:
            raise ConfigurationError(f"constant_modulus takes no parameters, got {sorted(params)}")
        # Exactly unit modulus already; rescaling would only add rounding.
        return Waveform(rng.phases(m), float(sample_rate), int(seed), kind, {})

    if kind == "gaussian":
        unknown = set(params) - {"truncation", "band_fraction"}
        if unknown:
            raise ConfigurationError(f"unknown gaussian parameters {sorted(unknown)}")
        x = rng.complex_normal(m)
        truncation = params.get("truncation")
        if truncation is not None:
            if not truncation > 0:
                raise DomainError("truncation must be positive")
            x = clip_envelope(x, truncation)
        band = float(params.get("band_fraction", 1.0))
        x = project_band(x, band_mask(m, band))
        return Waveform(normalize_power(x), float(sample_rate), int(seed), kind, dict(params))

    unknown = set(params) - {"papr_target", "band_fraction", "iterations"}
    if unknown:
        raise ConfigurationError(f"unknown tailored parameters {sorted(unknown)}")
    start = generate("gaussian", m, seed, sample_rate)
    return tailor(
        start,
        params.get("papr_target", 1.5),
        params.get("band_fraction", 0.5),
        params.get("iterations", 200),
    )


def tailor(start, papr_target, band_fraction=1.0, iterations=200):
    """Lower the PAPR of a Gaussian waveform by clip-and-filter projection.

    Each iteration clips the envelope at ``sqrt(papr_target * mean power)``
    and then zeroes every FFT bin outside the band. The iterate with the
    lowest PAPR after the band projection (the projected start included) is
    returned, renormalised.
    ``params["converged"]`` reports whether it lies within 10 % of the target;
    failing to get there is not an error.
    """
    if start.kind != "gaussian":
        raise ConfigurationError(f"tailoring starts from a gaussian waveform, got {start.kind!r}")
    if not papr_target >= 1.0:
        raise DomainError(f"PAPR target must be >= 1, got {papr_target!r}")
    iterations = int(iterations)
    if iterations < 1:
        raise ConfigurationError("iterations must be >= 1")
    mask = band_mask(len(start), band_fraction)

    # The band-limited start is itself feasible; counting it as iteration 0
    # means the result never has a higher PAPR than an in-band start.
    y = project_band(start.samples, mask)
    best, best_papr, best_iter = y, papr(y), 0
    for it in range(1, iterations + 1):
        if math.isfinite(papr_target):
            power = float(np.mean(np.abs(y) ** 2))
            y = clip_envelope(y, math.sqrt(papr_target * power))
        y = project_band(y, mask)
        current = papr(y)
        if current < best_papr:
            best, best_papr, best_iter = y, current, it
        if not math.isfinite(papr_target):
            break  # both projections are idempotent without a clip

    params = {
        "papr_target": float(papr_target),
        "band_fraction": float(band_fraction),
        "iterations": iterations,
        "best_iteration": best_iter,
        "converged": bool(best_papr <= 1.1 * papr_target),
    }
    return replace(start, samples=normalize_power(best), kind="tailored", params=params)


def _correlate(rx, ref, mode):
    """Complex cross-correlation ``c[l] = sum_n rx[n + l] conj(ref[n])``."""
    n, m = len(rx), len(ref)
    if mode == "circular":
        size = n
        c = np.fft.ifft(np.fft.fft(rx, size) * np.conj(np.fft.fft(ref, size)))
        return c
    if mode == "linear":
        size = 1 << (n + m - 1 - 1).bit_length()
        c = np.fft.ifft(np.fft.fft(rx, size) * np.conj(np.fft.fft(ref, size)))
        return c[: n - m + 1]
    raise ConfigurationError(f"unknown correlation mode {mode!r}")


def matched_filter(rx, reference, mode="linear"):
    """Correlation magnitude of ``rx`` against a reference, indexed by delay.

    ``linear`` returns the ``len(rx) - len(ref) + 1`` fully-overlapping lags;
    ``circular`` treats ``rx`` as periodic and returns ``len(rx)`` lags.
    """
    ref = reference.samples if isinstance(reference, Waveform) else np.asarray(reference)
    rx = np.asarray(rx, dtype=complex)
    if len(rx) < len(ref):
        raise DomainError(f"rx has {len(rx)} samples, shorter than reference ({len(ref)})")
    return np.abs(_correlate(rx, ref, mode))


def autocorrelation(x, mode="circular"):
    """Complex autocorrelation; index 0 is the zero lag.

    In ``linear`` mode negative lags follow the positive ones, FFT-style.
    """
    x = np.asarray(x, dtype=complex)
    m = len(x)
    if mode == "circular":
        spec = np.fft.fft(x)
        return np.fft.ifft(np.abs(spec) ** 2)
    if mode == "linear":
        spec = np.fft.fft(x, 2 * m)
        r = np.fft.ifft(np.abs(spec) ** 2)
        return np.concatenate([r[:m], r[m + 1 :]])
    raise ConfigurationError(f"unknown correlation mode {mode!r}")


def default_mainlobe_halfwidth(band_fraction):
    """Lags on each side of zero treated as main lobe for a band-limited code.

    A flat band occupying ``band_fraction`` of the bins has its first
    autocorrelation null at lag ``1 / band_fraction``.
    """
    return max(0, math.ceil(1.0 / band_fraction - 1e-12) - 1)


def measure(w, mode="circular", mainlobe_halfwidth=None):
    """PAPR and range-sidelobe statistics of a waveform."""
    x = w.samples if isinstance(w, Waveform) else np.asarray(w, dtype=complex)
    if mainlobe_halfwidth is None:
        bf = w.band_fraction if isinstance(w, Waveform) else 1.0
        mainlobe_halfwidth = default_mainlobe_halfwidth(bf)
    value = papr(x)
    r = np.abs(autocorrelation(x, mode)) ** 2
    m = len(x)
    lags = np.arange(len(r))
    if mode == "circular":
        lag_abs = np.minimum(lags, m - lags)
    else:
        lag_abs = np.where(lags < m, lags, len(r) - lags)
    side = r[lag_abs > mainlobe_halfwidth]
    peak = r[0]
    energy = math.fsum(np.abs(x) ** 2)
    if side.size:
        psl = 10.0 * math.log10(side.max() / peak)
        mean_side = 10.0 * math.log10(math.fsum(side) / side.size / peak)
    else:
        psl = mean_side = -math.inf
    return WaveformMetrics(
        papr=value,
        papr_db=linear_to_db(value),
        psl_db=psl,
        mean_sidelobe_db=mean_side,
        energy=energy,
        zero_lag=math.sqrt(peak),
        mainlobe_halfwidth=int(mainlobe_halfwidth),
    )


def integration_gain_experiment(m, snr_in_db, trials, seed):
    """Monte Carlo coherent integration gain of a noise-code matched filter, dB.

    Each trial draws a unit-power Gaussian code ``s`` and white noise ``n`` at
    the requested per-sample SNR, correlates ``rx = s + n`` against ``s``
    circularly, and splits the output into its signal part (``m`` at zero
    lag) and noise part (output minus the noise-free autocorrelation). The
    noise output power is pooled over all lags and trials with compensated
    summation; the gain is output SNR minus input SNR.
    """
    m = int(m)
    trials = int(trials)
    if m < 1 or trials < 1:
        raise DomainError("need m >= 1 and trials >= 1")
    noise_var = 10.0 ** (-snr_in_db / 10.0)
    root = CounterRNG(seed)
    noise_terms = []
    signal_peak = None
    for t in range(trials):
        rng = root.spawn(t)
        s = normalize_power(rng.complex_normal(m))
        n = rng.complex_normal(m) * math.sqrt(noise_var)
        out = _correlate(s + n, s, "circular")
        clean = _correlate(s, s, "circular")
        noise_terms.append(math.fsum(np.abs(out - clean) ** 2) / m)
        signal_peak = abs(clean[0]) ** 2
    noise_out = math.fsum(noise_terms) / trials
    snr_out_db = 10.0 * math.log10(signal_peak / noise_out)
    return snr_out_db - snr_in_db


# -- I/Q export ---------------------------------------------------------------


def _waveform_metadata(w):
    cfg = {"kind": w.kind, "m": len(w), "sample_rate": w.sample_rate, "params": w.params}
    meta = base_metadata(cfg, seed=w.seed)
    meta["kind"] = w.kind
    meta["sample_rate"] = repr(float(w.sample_rate))
    return meta


def waveform_table(w):
    x = w.samples
    rows = np.column_stack([np.arange(len(x), dtype=float), x.real, x.imag])
    return SweepResult(["index", "re", "im"], rows.tolist(), _waveform_metadata(w))


def write_iq_csv(w, path, precision=17):
    waveform_table(w).to_csv(path, precision=precision)


def read_iq_csv(path):
    table = SweepResult.from_csv(path)
    meta = table.metadata
    seed = meta.get("seed", "none")
    x = table.column("re") + 1j * table.column("im")
    return Waveform(
        x,
        float(meta.get("sample_rate", DEFAULT_SAMPLE_RATE)),
        0 if seed == "none" else int(seed),
        meta.get("kind", "external"),
    )


def write_iq_f64le(w, path):
    """Raw interleaved I/Q, little-endian float64, after one ASCII header line.

    Header: ``QRLINK-IQ/1 f64le m=<n> sample_rate=<Hz> seed=<u64> kind=<kind>\\n``
    followed by ``2 * n`` doubles ``re0, im0, re1, im1, ...``.
    """
    header = (
        f"{IQ_MAGIC} f64le m={len(w)} sample_rate={float(w.sample_rate)!r} "
        f"seed={w.seed} kind={w.kind}\n"
    )
    data = np.empty(2 * len(w), dtype="<f8")
    data[0::2] = w.samples.real
    data[1::2] = w.samples.imag
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(data.tobytes())


def read_iq_f64le(path):
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii").split()
        payload = fh.read()
    if not header or header[0] != IQ_MAGIC or header[1] != "f64le":
        raise ConfigurationError(f"{path}: not a {IQ_MAGIC} f64le file")
    fields = dict(item.split("=", 1) for item in header[2:])
    data = np.frombuffer(payload, dtype="<f8")
    m = int(fields["m"])
    if data.size != 2 * m:
        raise ConfigurationError(f"{path}: expected {2 * m} doubles, found {data.size}")
    x = data[0::2] + 1j * data[1::2]
    return Waveform(x, float(fields["sample_rate"]), int(fields["seed"]), fields["kind"])
