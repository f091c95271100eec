"""RIFF/WAVE decode and encode.

Only the two codecs the cipher needs are accepted: 16-bit PCM and 32-bit
IEEE float, little-endian, optionally wrapped in an extensible (0xFFFE)
header.  Anything else fails loudly instead of guessing.

PCM16 normalisation divides by 32768 (the asymmetric convention), which is
exact in binary floating point and makes write(read(f)) bit-identical: the
decoded amplitudes are exact multiples of 1/32768, and quantisation is the
identity on its own image.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ezcipher.errors import (
    MalformedWavError,
    ParameterError,
    UnsupportedFormatError,
    WavWriteError,
)

__all__ = ["SampleFormat", "AudioSignal", "read_wav", "write_wav"]

_TAG_PCM = 0x0001
_TAG_FLOAT = 0x0003
_TAG_EXTENSIBLE = 0xFFFE


class SampleFormat(Enum):
    PCM16 = "pcm16"
    FLOAT32 = "float32"


@dataclass(frozen=True)
class AudioSignal:
    """Decoded audio: interleaved amplitudes in [-1, 1] plus layout metadata.

    Channel c of frame f sits at samples[f * channels + c]; the cipher treats
    the interleaved vector as a single stream.
    """

    samples: np.ndarray
    sample_rate: int
    channels: int
    source_format: SampleFormat

    def __post_init__(self):
        if self.samples.ndim != 1:
            raise ParameterError(f"samples must be 1-D, got shape {self.samples.shape}")
        if self.channels < 1:
            raise ParameterError(f"channels must be >= 1, got {self.channels}")
        if self.sample_rate <= 0:
            raise ParameterError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.samples.shape[0] % self.channels != 0:
            raise ParameterError(
                f"{self.samples.shape[0]} samples do not divide into {self.channels} channels"
            )

    @property
    def frames(self) -> int:
        return self.samples.shape[0] // self.channels


def _parse_fmt(body: bytes, offset: int):
    if len(body) < 16:
        raise MalformedWavError(f"fmt chunk too short ({len(body)} bytes)", offset)
    tag, channels, sample_rate, _byte_rate, _block_align, bits = struct.unpack_from(
        "<HHIIHH", body, 0
    )
    if tag == _TAG_EXTENSIBLE:
        # Extensible layout: cbSize, valid bits, channel mask, then a 16-byte
        # sub-format GUID whose first two bytes are the real format code.
        if len(body) < 40:
            raise MalformedWavError(
                f"extensible fmt chunk too short ({len(body)} bytes)", offset
            )
        (tag,) = struct.unpack_from("<H", body, 24)
    return tag, channels, sample_rate, bits


def read_wav(path) -> AudioSignal:
    """Decode a RIFF/WAVE file into an AudioSignal.

    PCM16 values map to amplitude v/32768; Float32 passes through.  Raises
    MalformedWavError (with the byte offset) for structural problems and
    UnsupportedFormatError for any codec other than PCM16/Float32.
    """
    with open(path, "rb") as fh:
        blob = fh.read()

    if len(blob) < 12:
        raise MalformedWavError("file too short for a RIFF header", len(blob))
    if blob[0:4] != b"RIFF":
        raise MalformedWavError("missing RIFF magic", 0)
    if blob[8:12] != b"WAVE":
        raise MalformedWavError("missing WAVE form type", 8)

    fmt = None
    fmt_offset = 12
    data: bytes | None = None
    data_offset = 12
    pos = 12
    while pos + 8 <= len(blob):
        cid = blob[pos:pos + 4]
        (size,) = struct.unpack_from("<I", blob, pos + 4)
        body_start = pos + 8
        if body_start + size > len(blob):
            raise MalformedWavError(
                f"chunk {cid!r} declares {size} bytes but the file ends early", pos
            )
        if cid == b"fmt ":
            fmt = _parse_fmt(blob[body_start:body_start + size], pos)
            fmt_offset = pos
        elif cid == b"data":
            data = blob[body_start:body_start + size]
            data_offset = pos
        pos = body_start + size + (size & 1)  # chunks are word-aligned
    if pos < len(blob):
        raise MalformedWavError("trailing bytes do not form a chunk header", pos)

    if fmt is None:
        raise MalformedWavError("no fmt chunk found", len(blob))
    if data is None:
        raise MalformedWavError("no data chunk found", len(blob))

    tag, channels, sample_rate, bits = fmt
    if channels < 1:
        raise MalformedWavError("fmt declares zero channels", fmt_offset)
    if sample_rate == 0:
        raise MalformedWavError("fmt declares zero sample rate", fmt_offset)

    if tag == _TAG_PCM and bits == 16:
        if len(data) % 2:
            raise MalformedWavError("PCM16 data chunk has an odd byte count", data_offset)
        raw = np.frombuffer(data, dtype="<i2")
        samples = raw.astype(np.float64) / 32768.0
        source = SampleFormat.PCM16
    elif tag == _TAG_FLOAT and bits == 32:
        if len(data) % 4:
            raise MalformedWavError(
                "Float32 data chunk size is not a multiple of 4", data_offset
            )
        samples = np.frombuffer(data, dtype="<f4").astype(np.float64)
        source = SampleFormat.FLOAT32
    else:
        raise UnsupportedFormatError(
            f"unsupported codec: format tag 0x{tag:04X} with {bits}-bit samples "
            "(only PCM16 and Float32 are readable)"
        )

    if samples.shape[0] % channels:
        raise MalformedWavError(
            f"{samples.shape[0]} samples do not divide into {channels} channels",
            data_offset,
        )
    return AudioSignal(samples=samples, sample_rate=int(sample_rate),
                       channels=int(channels), source_format=source)


def quantize_pcm16(samples: np.ndarray) -> np.ndarray:
    """Map amplitudes to int16 codes: round half away from zero, then clamp."""
    scaled = samples * 32768.0
    rounded = np.floor(np.abs(scaled) + 0.5) * np.sign(scaled)
    return np.clip(rounded, -32768, 32767).astype("<i2")


def write_wav(path, signal: AudioSignal) -> None:
    """Write a canonical 44-byte-header RIFF/WAVE file in the signal's format."""
    if not np.isfinite(signal.samples).all():
        raise ParameterError("cannot encode non-finite samples")

    if signal.source_format is SampleFormat.PCM16:
        payload = quantize_pcm16(signal.samples).tobytes()
        tag, bits = _TAG_PCM, 16
    else:
        payload = signal.samples.astype("<f4").tobytes()
        tag, bits = _TAG_FLOAT, 32
    frame_bytes = signal.channels * bits // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, tag, signal.channels, signal.sample_rate,
        signal.sample_rate * frame_bytes, frame_bytes, bits,
        b"data", len(payload),
    )
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(payload)
    except OSError as exc:
        raise WavWriteError(f"cannot write {path}: {exc}") from exc
