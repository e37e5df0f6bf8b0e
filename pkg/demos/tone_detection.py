"""
Finding an information tone in heat noise
=========================================

Synthesize noise with the heat-current spectrum, add a tone carrying a
known amount of information, estimate the spectrum with Welch's method and
recover both the frequency and the information content.
"""

import math

import numpy as np

from infoquanta import NoiseModel, RandomSource, SignalModel, detect_excess_power, inject_tones, measured_power
from infoquanta.signal import Tone, analytic_floor, synthesize_noise, welch_psd

fs, duration = 1024.0, 64.0
noise = NoiseModel(K=1.0, T=1.0)

series = synthesize_noise(noise, 1.0, duration, fs, RandomSource(2024))
print("noise rms:", series.samples.std())

Z = 300.0
tone = Tone(2 * math.pi * 100.0, Z)
signal = inject_tones(series, SignalModel(tones=[tone], noise=noise, phase_seed=7))

psd = welch_psd(signal, 256)
report = detect_excess_power(psd, analytic_floor(psd, noise), 5.0, T=noise.T)
print(f"{report.n_segments} segments, per-bin false-alarm probability {report.false_alarm_probability:.2e}")
for d in report.detections:
    print(f"tone at {d.freq_hz:.1f} Hz, SNR {d.snr:.1f}, recovered Z = {d.z_est:.1f} (true {Z})")

# without the tone nothing should stand out
quiet = detect_excess_power(welch_psd(series, 256), analytic_floor(psd, noise), 5.0)
print("detections in pure noise:", len(quiet.detections))

# the averaged power of a burst of information falls off as 1/t
model = SignalModel(M=0.0, noise=noise)
t = np.array([1.0, 2.0, 4.0, 8.0])
print("\nmeasured power after a unit word:", measured_power(1.0, noise.T, t, model, 1.0))
