"""Binary cipher (.ezc) and key (.ezk) file formats.

Both formats are little-endian and bit-exact: the key's eight float64
parameters seed the chaotic keystream, so any decimal text round-trip would
risk a one-ulp change and with it total decryption failure.

Cipher file:  magic "EZC1" | version u8 | sample_rate u32 | channels u16 |
              reserved u16 | length u64 | block_size u32 | length x float64

Key file:     magic "EZK1" | version u8 | sigma rho beta dt x0 y0 z0 scale
              (8 x float64) | skip u32 | component u8 (0=x 1=y 2=z) |
              modulus float64 | block_size u32 | length u64 | length x int64
"""
from __future__ import annotations

import struct
import warnings

import numpy as np

from ezcipher.elzaki import CipherAudio, EncryptionKey
from ezcipher.errors import KeyfileFormatError, LengthMismatchError, ParameterError
from ezcipher.lorenz import Component, LorenzConfig, LorenzParams, LorenzState

__all__ = [
    "CIPHER_MAGIC",
    "KEY_MAGIC",
    "FORMAT_VERSION",
    "TrailingDataWarning",
    "write_cipher",
    "read_cipher",
    "write_key",
    "read_key",
]

CIPHER_MAGIC = b"EZC1"
KEY_MAGIC = b"EZK1"
FORMAT_VERSION = 1

_CIPHER_HEADER = struct.Struct("<4sBIHHQI")   # 25 bytes
_KEY_HEADER = struct.Struct("<4sB8dIBdIQ")    # 94 bytes


class TrailingDataWarning(UserWarning):
    """A cipher/key file carries bytes beyond its declared payload."""


def _read_header(blob: bytes, header: struct.Struct, magic: bytes, kind: str):
    if len(blob) < header.size:
        raise LengthMismatchError(
            f"{kind} file is {len(blob)} bytes, shorter than the {header.size}-byte header"
        )
    fields = header.unpack_from(blob, 0)
    if fields[0] != magic:
        raise KeyfileFormatError(f"bad {kind} magic {fields[0]!r} (expected {magic!r})")
    if fields[1] != FORMAT_VERSION:
        raise KeyfileFormatError(f"unsupported {kind} version {fields[1]}")
    return fields


def _read_payload(blob: bytes, start: int, count: int, dtype: str, path, kind: str) -> np.ndarray:
    end = start + 8 * count
    if len(blob) < end:
        raise LengthMismatchError(
            f"{kind} file {path} declares {count} values but holds "
            f"{(len(blob) - start) // 8}"
        )
    if len(blob) > end:
        warnings.warn(
            f"{kind} file {path} has {len(blob) - end} trailing bytes beyond "
            "the declared payload; ignoring them",
            TrailingDataWarning,
            stacklevel=3,
        )
    return np.frombuffer(blob[start:end], dtype=dtype).copy()


def write_cipher(path, cipher: CipherAudio) -> None:
    """Serialise a CipherAudio; write_cipher/read_cipher round-trip bit-exactly."""
    header = _CIPHER_HEADER.pack(
        CIPHER_MAGIC, FORMAT_VERSION,
        cipher.sample_rate, cipher.channels, 0,
        cipher.length, cipher.block_size,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(cipher.c, dtype="<f8").tobytes())


def read_cipher(path) -> CipherAudio:
    with open(path, "rb") as fh:
        blob = fh.read()
    _, _, sample_rate, channels, _reserved, length, block_size = _read_header(
        blob, _CIPHER_HEADER, CIPHER_MAGIC, "cipher"
    )
    c = _read_payload(blob, _CIPHER_HEADER.size, length, "<f8", path, "cipher")
    return CipherAudio(c=c, block_size=block_size,
                       sample_rate=sample_rate, channels=channels)


def write_key(path, key: EncryptionKey) -> None:
    """Serialise an EncryptionKey; all float fields survive bit-exactly."""
    if key.modulus <= 0.0:
        raise ParameterError(f"refusing to write key with modulus {key.modulus!r}")
    cfg = key.lorenz
    p = cfg.params
    ini = cfg.initial
    header = _KEY_HEADER.pack(
        KEY_MAGIC, FORMAT_VERSION,
        p.sigma, p.rho, p.beta, p.dt, ini.x, ini.y, ini.z, cfg.scale,
        cfg.skip, int(cfg.component),
        key.modulus, key.block_size, key.length,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(key.k, dtype="<i8").tobytes())


def read_key(path) -> EncryptionKey:
    with open(path, "rb") as fh:
        blob = fh.read()
    (_, _, sigma, rho, beta, dt, x0, y0, z0, scale,
     skip, component, modulus, block_size, length) = _read_header(
        blob, _KEY_HEADER, KEY_MAGIC, "key"
    )
    if component > 2:
        raise KeyfileFormatError(f"component byte must be 0..2, got {component}")
    k = _read_payload(blob, _KEY_HEADER.size, length, "<i8", path, "key")
    cfg = LorenzConfig(
        params=LorenzParams(sigma=sigma, rho=rho, beta=beta, dt=dt),
        initial=LorenzState(x0, y0, z0),
        component=Component(component),
        skip=int(skip),
        scale=scale,
    )
    return EncryptionKey(lorenz=cfg, modulus=modulus, k=k, block_size=int(block_size))
