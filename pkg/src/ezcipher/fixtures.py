"""Deterministic synthetic test signals.

Three analogues of the usual evaluation recordings, hermetic and seedless
in effect (the noise generator is a fixed-constant LCG, so the corpus is
byte-identical across runs, platforms and NumPy versions):

* sine    -- tonal: a pure 440 Hz tone.
* chirp   -- transient: a 100->2000 Hz linear sweep.
* speech  -- broadband-modulated: low-passed noise under a syllable-rate
             envelope, mimicking the adjacent-sample correlation of voice.

All fixtures are emitted on the PCM16 grid (exact multiples of 1/32768) so
writing them to 16-bit WAV is lossless.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ezcipher.audio_io import AudioSignal, SampleFormat, quantize_pcm16, write_wav

__all__ = [
    "FIXTURE_NAMES",
    "sine_fixture",
    "chirp_fixture",
    "speech_fixture",
    "make_fixture",
    "write_fixtures",
]

FIXTURE_NAMES = ("sine", "chirp", "speech")

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1
_SPEECH_SEED = 0x5EED_C0DE


def _pcm16_grid(samples: np.ndarray, sample_rate: int, channels: int = 1) -> AudioSignal:
    quantized = quantize_pcm16(samples).astype(np.float64) / 32768.0
    return AudioSignal(samples=quantized, sample_rate=sample_rate,
                       channels=channels, source_format=SampleFormat.PCM16)


def sine_fixture(n: int = 100_000, sample_rate: int = 44100,
                 freq: float = 440.0, amplitude: float = 0.8) -> AudioSignal:
    t = np.arange(n, dtype=np.float64) / sample_rate
    return _pcm16_grid(amplitude * np.sin(2.0 * np.pi * freq * t), sample_rate)


def chirp_fixture(n: int = 100_000, sample_rate: int = 44100,
                  f0: float = 100.0, f1: float = 2000.0,
                  amplitude: float = 0.8) -> AudioSignal:
    t = np.arange(n, dtype=np.float64) / sample_rate
    duration = n / sample_rate
    phase = 2.0 * np.pi * (f0 * t + (f1 - f0) / (2.0 * duration) * t * t)
    return _pcm16_grid(amplitude * np.sin(phase), sample_rate)


def _lcg_uniform(n: int, seed: int) -> np.ndarray:
    """n pseudo-random floats in [-1, 1) from a 64-bit LCG (Knuth constants)."""
    out = np.empty(n, dtype=np.float64)
    state = seed & _LCG_MASK
    for i in range(n):
        state = (state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        out[i] = (state >> 11) / float(1 << 53) * 2.0 - 1.0
    return out


def speech_fixture(n: int = 100_000, sample_rate: int = 44100,
                   seed: int = _SPEECH_SEED, amplitude: float = 0.8) -> AudioSignal:
    noise = _lcg_uniform(n, seed)
    # One-pole low-pass: adjacent-sample correlation ~ the pole (0.95).
    voiced = np.empty(n, dtype=np.float64)
    acc = 0.0
    for i in range(n):
        acc = 0.95 * acc + 0.05 * noise[i]
        voiced[i] = acc
    t = np.arange(n, dtype=np.float64) / sample_rate
    envelope = 0.55 + 0.45 * np.sin(2.0 * np.pi * 2.5 * t)
    shaped = voiced * envelope
    shaped *= amplitude / np.max(np.abs(shaped))
    return _pcm16_grid(shaped, sample_rate)


def make_fixture(name: str, n: int = 100_000, sample_rate: int = 44100) -> AudioSignal:
    if name == "sine":
        return sine_fixture(n, sample_rate)
    if name == "chirp":
        return chirp_fixture(n, sample_rate)
    if name == "speech":
        return speech_fixture(n, sample_rate)
    raise ValueError(f"unknown fixture {name!r} (expected one of {FIXTURE_NAMES})")


def write_fixtures(outdir, n: int = 100_000, sample_rate: int = 44100) -> list[Path]:
    """Write the corpus as <name>.wav files; byte-identical on every run."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in FIXTURE_NAMES:
        path = outdir / f"{name}.wav"
        write_wav(path, make_fixture(name, n, sample_rate))
        paths.append(path)
    return paths
