import struct

import numpy as np
import pytest

from ezcipher.audio_io import (
    AudioSignal,
    SampleFormat,
    quantize_pcm16,
    read_wav,
    write_wav,
)
from ezcipher.errors import MalformedWavError, ParameterError, UnsupportedFormatError


def build_wav(fmt_tag=1, channels=1, rate=8000, bits=16, data=b"",
              fmt_body=None, include_fmt=True, include_data=True,
              riff=b"RIFF", wave=b"WAVE"):
    """Assemble arbitrary (including broken) WAV bytes for parser tests."""
    chunks = b""
    if include_fmt:
        if fmt_body is None:
            frame = channels * bits // 8
            fmt_body = struct.pack("<HHIIHH", fmt_tag, channels, rate,
                                   rate * frame, frame, bits)
        chunks += b"fmt " + struct.pack("<I", len(fmt_body)) + fmt_body
        if len(fmt_body) % 2:
            chunks += b"\x00"
    if include_data:
        chunks += b"data" + struct.pack("<I", len(data)) + data
        if len(data) % 2:
            chunks += b"\x00"
    return riff + struct.pack("<I", 4 + len(chunks)) + wave + chunks


class TestReadPcm16:
    def test_sample_mapping(self, tmp_path):
        raw = struct.pack("<4h", 0, -32768, 32767, 16384)
        path = tmp_path / "a.wav"
        path.write_bytes(build_wav(data=raw))
        sig = read_wav(path)
        assert sig.source_format is SampleFormat.PCM16
        assert sig.samples.tolist() == [0.0, -1.0, 32767 / 32768, 0.5]
        assert sig.samples[2] == 0.999969482421875  # exact in binary

    def test_decoded_range(self, tmp_path):
        raw = np.arange(-32768, 32768, 257, dtype="<i2").tobytes()
        path = tmp_path / "b.wav"
        path.write_bytes(build_wav(data=raw))
        sig = read_wav(path)
        assert sig.samples.min() >= -1.0
        assert sig.samples.max() <= 1.0

    def test_extensible_header_accepted(self, tmp_path):
        guid_suffix = b"\x00\x00\x00\x00\x10\x00\x80\x00\x00\xaa\x00\x38\x9b\x71"
        body = struct.pack("<HHIIHH", 0xFFFE, 1, 8000, 16000, 2, 16)
        body += struct.pack("<HHI", 22, 16, 0x4) + struct.pack("<H", 1) + guid_suffix
        raw = struct.pack("<2h", 100, -100)
        path = tmp_path / "ext.wav"
        path.write_bytes(build_wav(fmt_body=body, data=raw))
        sig = read_wav(path)
        assert sig.source_format is SampleFormat.PCM16
        assert sig.samples.tolist() == [100 / 32768, -100 / 32768]


class TestReadErrors:
    def test_not_riff(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(riff=b"JUNK"))
        with pytest.raises(MalformedWavError) as e:
            read_wav(path)
        assert e.value.offset == 0

    def test_not_wave(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(wave=b"AVI "))
        with pytest.raises(MalformedWavError) as e:
            read_wav(path)
        assert e.value.offset == 8

    def test_too_short(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(b"RIFF\x00\x00")
        with pytest.raises(MalformedWavError):
            read_wav(path)

    def test_truncated_chunk(self, tmp_path):
        blob = build_wav(data=struct.pack("<4h", 1, 2, 3, 4))
        path = tmp_path / "x.wav"
        path.write_bytes(blob[:-5])
        with pytest.raises(MalformedWavError) as e:
            read_wav(path)
        assert "ends early" in str(e.value)

    def test_missing_fmt(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(include_fmt=False, data=b"\x00\x00"))
        with pytest.raises(MalformedWavError) as e:
            read_wav(path)
        assert "fmt" in str(e.value)

    def test_missing_data(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(include_data=False))
        with pytest.raises(MalformedWavError) as e:
            read_wav(path)
        assert "data" in str(e.value)

    def test_unsupported_codec_names_tag(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(fmt_tag=2, data=b"\x00\x00"))
        with pytest.raises(UnsupportedFormatError) as e:
            read_wav(path)
        assert "0x0002" in str(e.value)

    def test_unsupported_bit_depth(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(fmt_tag=1, bits=8, data=b"\x00"))
        with pytest.raises(UnsupportedFormatError) as e:
            read_wav(path)
        assert "8-bit" in str(e.value)

    def test_partial_frame(self, tmp_path):
        path = tmp_path / "x.wav"
        path.write_bytes(build_wav(channels=2, data=struct.pack("<3h", 1, 2, 3)))
        with pytest.raises(MalformedWavError):
            read_wav(path)

    def test_unknown_chunks_are_skipped(self, tmp_path):
        # odd-sized junk chunk before fmt/data, word-aligned per RIFF
        junk = b"LIST" + struct.pack("<I", 3) + b"abc\x00"
        base = build_wav(data=struct.pack("<h", 7))
        blob = base[:12] + junk + base[12:]
        blob = blob[:4] + struct.pack("<I", len(blob) - 8) + blob[8:]
        path = tmp_path / "x.wav"
        path.write_bytes(blob)
        assert read_wav(path).samples.tolist() == [7 / 32768]


class TestWrite:
    def test_pcm16_round_trip_bit_identical(self, tmp_path):
        values = np.array([0, 1, -1, 32767, -32768, 12345], dtype=np.int64)
        sig = AudioSignal(samples=values / 32768.0, sample_rate=44100,
                          channels=2, source_format=SampleFormat.PCM16)
        path = tmp_path / "rt.wav"
        write_wav(path, sig)
        back = read_wav(path)
        assert np.array_equal(back.samples, sig.samples)
        assert back.channels == 2
        assert back.sample_rate == 44100
        assert back.source_format is SampleFormat.PCM16

    def test_float32_round_trip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(42)
        samples = rng.uniform(-1, 1, 128).astype(np.float32).astype(np.float64)
        sig = AudioSignal(samples=samples, sample_rate=48000, channels=1,
                          source_format=SampleFormat.FLOAT32)
        path = tmp_path / "f32.wav"
        write_wav(path, sig)
        back = read_wav(path)
        assert np.array_equal(back.samples, samples)
        assert back.source_format is SampleFormat.FLOAT32

    def test_header_is_canonical_44_bytes(self, tmp_path):
        sig = AudioSignal(samples=np.zeros(4), sample_rate=8000, channels=1,
                          source_format=SampleFormat.PCM16)
        path = tmp_path / "h.wav"
        write_wav(path, sig)
        blob = path.read_bytes()
        assert len(blob) == 44 + 8
        assert blob[:4] == b"RIFF" and blob[36:40] == b"data"

    def test_clamping(self):
        assert quantize_pcm16(np.array([1.5])).tolist() == [32767]
        assert quantize_pcm16(np.array([-1.5])).tolist() == [-32768]
        assert quantize_pcm16(np.array([-1.0])).tolist() == [-32768]

    def test_round_half_away_from_zero(self):
        assert quantize_pcm16(np.array([1.5 / 32768])).tolist() == [2]
        assert quantize_pcm16(np.array([-1.5 / 32768])).tolist() == [-2]
        assert quantize_pcm16(np.array([0.5 / 32768])).tolist() == [1]
        assert quantize_pcm16(np.array([-0.5 / 32768])).tolist() == [-1]

    def test_frame_order_preserved(self, tmp_path):
        # channel c of frame f must stay at index f*channels + c
        frames, channels = 10, 3
        samples = np.arange(frames * channels, dtype=np.float64) / 32768.0
        sig = AudioSignal(samples=samples, sample_rate=8000, channels=channels,
                          source_format=SampleFormat.PCM16)
        path = tmp_path / "order.wav"
        write_wav(path, sig)
        back = read_wav(path)
        for f in range(frames):
            for ch in range(channels):
                assert back.samples[f * channels + ch] == samples[f * channels + ch]

    def test_rejects_non_finite(self, tmp_path):
        sig = AudioSignal(samples=np.array([0.0, np.nan]), sample_rate=8000,
                          channels=1, source_format=SampleFormat.PCM16)
        with pytest.raises(ParameterError):
            write_wav(tmp_path / "nan.wav", sig)


class TestSignalValidation:
    def test_bad_layout(self):
        with pytest.raises(ParameterError):
            AudioSignal(samples=np.zeros(5), sample_rate=8000, channels=2,
                        source_format=SampleFormat.PCM16)
        with pytest.raises(ParameterError):
            AudioSignal(samples=np.zeros(4), sample_rate=0, channels=1,
                        source_format=SampleFormat.PCM16)
        with pytest.raises(ParameterError):
            AudioSignal(samples=np.zeros(4), sample_rate=8000, channels=0,
                        source_format=SampleFormat.PCM16)
