"""Information matrix, heat-current noise, signal power and tone detection.

Conventions
-----------
* Noise spectra are one-sided densities per Hz. ``noise_psd`` takes an
  angular frequency; a bin at ``f`` Hz is evaluated at ``omega = 2 pi f``.
* A tone carrying information ``Z_k`` at temperature ``T`` has energy
  ``E_k = Z_k kB T`` and amplitude ``a_k = sqrt(2 E_k rate_scale)``, so its
  mean power ``a_k**2 / 2`` equals ``E_k * rate_scale``. Detection inverts
  the same map.
* Welch estimates use window-power normalisation: a unit-variance white
  input integrates to 1 over ``[0, fs/2]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import signal as _sps
from scipy import stats

from .errors import DomainError, ShapeError, ValidationError
from .infocore import PhysicalConstants, information_energy
from .stochastic import RandomSource

__all__ = [
    "InformationMatrixInputs",
    "NoiseModel",
    "Damping",
    "Tone",
    "SignalModel",
    "TimeSeries",
    "PsdEstimate",
    "Detection",
    "DetectionReport",
    "MIN_SAMPLES",
    "information_matrix_Z",
    "noise_psd",
    "signal_power_rate",
    "measured_power",
    "tone_amplitude",
    "synthesize_noise",
    "inject_tones",
    "welch_psd",
    "tone_peak_density",
    "analytic_floor",
    "detect_excess_power",
    "invert_information",
]

MIN_SAMPLES = 64


def _natural(constants):
    return constants if constants is not None else PhysicalConstants.natural()


@dataclass(frozen=True)
class InformationMatrixInputs:
    omega_k: float
    T: float
    S: float
    coupling: float
    Pi: float
    zeta: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def __post_init__(self):
        if not self.omega_k > 0:
            raise DomainError(f"omega_k must be positive, got {self.omega_k!r}")
        if self.T == 0:
            raise DomainError("information matrix divides by T; T = 0 is undefined")
        if not self.T > 0:
            raise DomainError(f"temperature must be positive, got {self.T!r}")
        if not 0.0 <= self.Pi <= 1.0:
            raise DomainError(f"word probability outside [0, 1]: {self.Pi!r}")
        if not self.S >= 0:
            raise DomainError(f"entropy must be non-negative, got {self.S!r}")


def information_matrix_Z(inputs: InformationMatrixInputs) -> float:
    """``h T^-1 S lambda omega_k Pi zeta``, evaluated as written.

    In SI units the product is not dimensionless; natural units are the
    intended setting.
    """
    c = inputs.constants
    return c.h / inputs.T * inputs.S * inputs.coupling * inputs.omega_k * inputs.Pi * inputs.zeta


@dataclass(frozen=True)
class NoiseModel:
    K: float = 1.0
    T: float = 1.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def __post_init__(self):
        if not self.K > 0:
            raise ValidationError(f"channel constant K must be positive, got {self.K!r}")
        if not self.T >= 0:
            raise ValidationError(f"temperature must be non-negative, got {self.T!r}")


def noise_psd(omega, model: NoiseModel):
    """Heat-current noise ``(K/pi) [hbar w / 2 + hbar w / (exp(hbar w / kB T) - 1)]``.

    At ``T = 0`` the Bose term is zero and only the zero-point floor
    ``K hbar w / (2 pi)`` remains. Accepts scalars or arrays.
    """
    w = np.asarray(omega, dtype=float)
    if not np.all(w > 0):
        raise DomainError("noise_psd needs positive angular frequencies")
    c = model.constants
    hw = c.hbar * w
    if model.T == 0:
        out = model.K * hw / (2.0 * math.pi)
    else:
        x = hw / (c.kB * model.T)
        with np.errstate(over="ignore"):
            bose = hw / np.expm1(x)
        out = model.K / math.pi * (0.5 * hw + bose)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Damping:
    """Loss term: constant ``gamma0`` or ``gamma0 exp(-t / tau)`` when ``tau`` is set."""

    gamma0: float = 0.0
    tau: float | None = None

    def __post_init__(self):
        if not self.gamma0 >= 0:
            raise ValidationError(f"gamma0 must be non-negative, got {self.gamma0!r}")
        if self.tau is not None and not self.tau > 0:
            raise ValidationError(f"tau must be positive, got {self.tau!r}")

    @property
    def kind(self) -> str:
        return "constant" if self.tau is None else "exponential"

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self.gamma0 * (np.ones_like(t) if self.tau is None else np.exp(-t / self.tau))
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Tone:
    omega: float
    Z: float


@dataclass(frozen=True)
class SignalModel:
    """Everything needed to turn information words into a detector signal.

    ``noise.T`` is the temperature used for the information-energy map.
    ``phase_seed`` fixes the tone phases.
    """

    tones: tuple = ()
    M: float = 1.0
    damping: Damping = field(default_factory=Damping)
    noise: NoiseModel = field(default_factory=NoiseModel)
    rate_scale: float = 1.0
    phase_seed: int = 0

    def __post_init__(self):
        tones = tuple(t if isinstance(t, Tone) else Tone(*t) for t in self.tones)
        freqs = [t.omega for t in tones]
        if any(not w > 0 for w in freqs):
            raise ValidationError("tone frequencies must be positive")
        if len(set(freqs)) != len(freqs):
            raise ValidationError("tone frequencies must be distinct")
        if any(not t.Z >= 0 for t in tones):
            raise ValidationError("tone information content must be non-negative")
        if not self.M >= 0:
            raise ValidationError(f"noise amplitude M must be non-negative, got {self.M!r}")
        if not self.rate_scale > 0:
            raise ValidationError("rate_scale must be positive")
        object.__setattr__(self, "tones", tones)

    @property
    def T(self) -> float:
        return self.noise.T

    @property
    def constants(self) -> PhysicalConstants:
        return self.noise.constants


def signal_power_rate(Z_dot: float, T: float, model: SignalModel, omega: float, t: float) -> float:
    """Instantaneous power ``Zdot T + M X(omega) - Gamma(t)``."""
    if t < 0:
        raise DomainError(f"time must be non-negative, got {t!r}")
    noise = model.M * noise_psd(omega, model.noise) if model.M else 0.0
    return Z_dot * T + noise - model.damping(t)


def measured_power(Z: float, T: float, t, model: SignalModel, omega: float):
    """Detector-side power ``Z T / t + M X(omega) - Gamma(t)``.

    Negative results are returned as they are. ``t`` may be an array.
    """
    tt = np.asarray(t, dtype=float)
    if np.any(tt <= 0):
        raise DomainError("measured power is undefined for t <= 0")
    noise = model.M * noise_psd(omega, model.noise) if model.M else 0.0
    out = Z * T / tt + noise - model.damping(tt)
    return float(out) if np.ndim(out) == 0 else out


def tone_amplitude(Z: float, T: float, constants: PhysicalConstants | None = None,
                   rate_scale: float = 1.0) -> float:
    return math.sqrt(2.0 * information_energy(Z, T, _natural(constants)) * rate_scale)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    sample_rate: float
    samples: np.ndarray
    start_time: float = 0.0

    def __post_init__(self):
        x = np.array(self.samples, dtype=float).ravel()
        if not self.sample_rate > 0:
            raise ValidationError(f"sample rate must be positive, got {self.sample_rate!r}")
        if x.size < 2:
            raise ValidationError("a time series needs at least 2 samples")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)

    def __len__(self):
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.samples.size) / self.sample_rate

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def synthesize_noise(model: NoiseModel, M: float, duration: float, sample_rate: float,
                     source: RandomSource,
                     psd: Callable[[np.ndarray], np.ndarray] | None = None) -> TimeSeries:
    """Gaussian noise whose one-sided PSD is ``M X(2 pi f)``.

    White Gaussian Fourier coefficients are scaled bin by bin with the square
    root of the target density and transformed back. The DC bin is left
    empty, so the series has zero mean. ``psd``, if given, replaces ``X`` as
    a function of frequency in Hz.
    """
    if not sample_rate > 0 or not duration > 0:
        raise ValidationError("duration and sample rate must be positive")
    n = int(round(duration * sample_rate))
    if n < MIN_SAMPLES:
        raise ValidationError(f"series of {n} samples is shorter than {MIN_SAMPLES}")
    if M < 0:
        raise ValidationError(f"noise amplitude M must be non-negative, got {M!r}")
    nbins = n // 2 + 1
    df = sample_rate / n
    freqs = np.arange(nbins) * df
    target = np.zeros(nbins)
    if psd is not None:
        target[1:] = M * np.asarray(psd(freqs[1:]), dtype=float)
    elif M > 0:
        target[1:] = M * noise_psd(2.0 * np.pi * freqs[1:], model)
    if np.any(target < 0):
        raise ValidationError("target PSD must be non-negative")
    g = source.normal((2, nbins))
    coeffs = n * np.sqrt(target * df / 4.0) * (g[0] + 1j * g[1])
    if n % 2 == 0:
        coeffs[-1] = n * np.sqrt(target[-1] * df) * g[0, -1]
    x = np.fft.irfft(coeffs, n=n)
    if M == 0:
        x = np.zeros(n)
    return TimeSeries(float(sample_rate), x)


def inject_tones(series: TimeSeries, model: SignalModel) -> TimeSeries:
    """Add one sinusoid per tone; phases are drawn from ``model.phase_seed``."""
    nyquist = 0.5 * series.sample_rate
    for tone in model.tones:
        if tone.omega / (2.0 * math.pi) >= nyquist:
            raise DomainError(f"tone at {tone.omega / (2 * math.pi):g} Hz is not below Nyquist {nyquist:g} Hz")
    if not model.tones:
        return series
    phases = RandomSource(model.phase_seed).uniform(len(model.tones)) * 2.0 * math.pi
    t = series.times
    x = series.samples.copy()
    for tone, phi in zip(model.tones, phases):
        a = tone_amplitude(tone.Z, model.T, model.constants, model.rate_scale)
        x += a * np.sin(tone.omega * t + phi)
    return TimeSeries(series.sample_rate, x, series.start_time)


@dataclass(frozen=True, eq=False)
class PsdEstimate:
    frequencies: np.ndarray
    densities: np.ndarray
    segment_length: int
    overlap: float
    window: str
    n_segments: int
    sample_rate: float

    @property
    def resolution(self) -> float:
        return self.sample_rate / self.segment_length


def welch_psd(series: TimeSeries, segment_length: int = 256, overlap: float = 0.5,
              window: str = "hann") -> PsdEstimate:
    """One-sided Welch estimate averaged over equal-length segments.

    Parameters
    ----------
    series : TimeSeries
    segment_length : int
        Power of two, at most ``len(series)``.
    overlap : float
        Fraction of a segment shared with its neighbour, in ``[0, 0.9]``.
    window : str
        Any name understood by ``scipy.signal.get_window``.
    """
    L = int(segment_length)
    if L != segment_length or L < 2 or L & (L - 1):
        raise ValidationError(f"segment length must be a power of two, got {segment_length!r}")
    x = series.samples
    if L > x.size:
        raise ValidationError(f"segment length {L} exceeds series length {x.size}")
    if not 0.0 <= overlap <= 0.9:
        raise ValidationError(f"overlap must lie in [0, 0.9], got {overlap!r}")
    step = L - int(round(overlap * L))
    if step < 1:
        raise ValidationError("overlap leaves no step between segments")
    try:
        w = _sps.get_window(window, L)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"unknown window {window!r}") from exc
    n_seg = 1 + (x.size - L) // step
    segs = np.lib.stride_tricks.sliding_window_view(x, L)[::step][:n_seg]
    periodogram = np.abs(np.fft.rfft(segs * w, axis=1)) ** 2
    periodogram /= series.sample_rate * np.sum(w * w)
    periodogram[:, 1:L // 2] *= 2.0
    dens = np.zeros(periodogram.shape[1])
    # fixed accumulation order keeps the estimate bit-stable
    for row in periodogram:
        dens += row
    dens /= n_seg
    freqs = np.arange(L // 2 + 1) * (series.sample_rate / L)
    return PsdEstimate(freqs, dens, L, float(overlap), str(window), int(n_seg), float(series.sample_rate))


def tone_peak_density(power: float, segment_length: int, sample_rate: float,
                      window: str = "hann") -> float:
    """Expected Welch density in the peak bin for a bin-centred tone of mean power ``power``."""
    w = _sps.get_window(window, int(segment_length))
    return power * np.sum(w) ** 2 / (sample_rate * np.sum(w * w))


def analytic_floor(psd: PsdEstimate, noise: NoiseModel, M: float = 1.0) -> np.ndarray:
    """Expected PSD ``M X(2 pi f)`` on the estimate's grid (DC set to 0)."""
    floor = np.zeros_like(psd.frequencies)
    if M:
        floor[1:] = M * noise_psd(2.0 * np.pi * psd.frequencies[1:], noise)
    return floor


@dataclass(frozen=True)
class Detection:
    bin: int
    freq_hz: float
    power: float
    floor: float
    snr: float
    energy_est: float
    z_est: float | None

    def to_dict(self) -> dict:
        return {"bin": self.bin, "freq_hz": self.freq_hz, "power": self.power, "floor": self.floor,
                "snr": self.snr, "energy_est": self.energy_est, "z_est": self.z_est}


@dataclass(frozen=True)
class DetectionReport:
    detections: tuple
    threshold_sigma: float
    n_segments: int
    false_alarm_probability: float

    def to_dict(self) -> dict:
        return {
            "threshold_sigma": self.threshold_sigma,
            "n_segments": self.n_segments,
            "false_alarm_probability": self.false_alarm_probability,
            "detections": [d.to_dict() for d in self.detections],
        }


def _contiguous_runs(mask: np.ndarray):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([idx[0]], idx[breaks + 1]))
    stops = np.concatenate((idx[breaks], [idx[-1]]))
    return list(zip(starts.tolist(), stops.tolist()))


def detect_excess_power(psd: PsdEstimate, noise_floor, threshold_sigma: float = 5.0,
                        T: float | None = None, constants: PhysicalConstants | None = None,
                        rate_scale: float = 1.0, guard: int = 1) -> DetectionReport:
    """Flag bins whose excess over the noise floor reaches ``threshold_sigma``.

    The floor's standard deviation is taken as ``floor / sqrt(n_segments)``,
    the spread of a periodogram averaged over ``n_segments`` segments.
    Neighbouring flagged bins merge into one detection reported at its
    highest-SNR bin; the excess power summed over the merged run (widened
    by ``guard`` bins each side) gives the tone energy, and ``z_est`` follows
    from ``E = Z kB T`` when ``T`` is given. DC and Nyquist bins are skipped
    because their statistics differ.

    Parameters
    ----------
    psd : PsdEstimate
    noise_floor : PsdEstimate or array_like
        Reference spectrum on the same grid, e.g. from :func:`analytic_floor`.
    threshold_sigma : float
    T : float, optional
        Temperature for the information inversion.
    """
    if not threshold_sigma > 0:
        raise DomainError(f"threshold must be positive, got {threshold_sigma!r}")
    if isinstance(noise_floor, PsdEstimate):
        if noise_floor.frequencies.shape != psd.frequencies.shape or not np.allclose(
                noise_floor.frequencies, psd.frequencies, rtol=1e-12, atol=0):
            raise ShapeError("noise floor frequency grid does not match the PSD")
        floor = noise_floor.densities
    else:
        floor = np.asarray(noise_floor, dtype=float)
        if floor.shape != psd.densities.shape:
            raise ShapeError(f"noise floor shape {floor.shape} does not match PSD {psd.densities.shape}")
    if np.any(floor < 0):
        raise ValidationError("noise floor must be non-negative")
    constants = _natural(constants)
    measured = psd.densities
    excess = measured - floor
    sigma = floor / math.sqrt(psd.n_segments)
    with np.errstate(divide="ignore", invalid="ignore"):
        snr = np.where(sigma > 0, excess / sigma, np.where(excess > 0, np.inf, 0.0))
    mask = snr >= threshold_sigma
    mask[0] = False
    if psd.segment_length % 2 == 0:
        mask[-1] = False
    df = psd.resolution
    last = measured.size - 1
    found = []
    for lo, hi in _contiguous_runs(mask):
        k = lo + int(np.argmax(snr[lo:hi + 1]))
        a, b = max(lo - guard, 1), min(hi + guard, last)
        tone_power = float(np.sum(excess[a:b + 1]) * df)
        energy = tone_power / rate_scale
        z = invert_information(energy, T, constants) if T else None
        found.append(Detection(k, float(psd.frequencies[k]), float(measured[k]), float(floor[k]),
                               float(snr[k]), energy, z))
    dof = 2 * psd.n_segments
    pfa = float(stats.chi2.sf(dof * (1.0 + threshold_sigma / math.sqrt(psd.n_segments)), dof))
    return DetectionReport(tuple(found), float(threshold_sigma), int(psd.n_segments), pfa)


def invert_information(E_k: float, T: float, constants: PhysicalConstants | None = None) -> float:
    """Information content ``E / (kB T)`` behind an energy ``E``."""
    if T is None or not T > 0:
        raise DomainError(f"temperature must be positive to invert, got {T!r}")
    return E_k / (_natural(constants).kB * T)
