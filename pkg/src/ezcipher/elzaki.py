"""The coefficient-substitution codec.

Treating the pre-encoded samples y[n] as Maclaurin coefficients of y*t^2*e^t
and pushing that series through the Elzaki transform E[f](s) = s * integral
f(t)exp(-t/s)dt turns each coefficient into (n+1)(n+2) * y[n]: the transform
of t^m is m! * s^(m+2), so the n-th term's coefficient picks up the factor
(n+2)!/n!.  The formal s/t variables cancel analytically and never exist at
runtime; ``elzaki_of_monomial_oracle`` recomputes the defining integral by
quadrature so tests can pin the multiplier law to the transform itself.

The transformed values are reduced modulo N = max|y| with floored division,
producing the cipher residues c and the quotient key k.  Multiplier indices
restart every block_size samples: past n ~ 6.7e7 the product (n+1)(n+2)*y[n]
would exceed 2^53 and the quotient would no longer be an exact integer,
destroying lossless inversion.  The default block of 65536 keeps the
multiplier below ~4.3e9 with enormous headroom.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ezcipher import _backend
from ezcipher.errors import (
    EmptyInputError,
    InvalidModulusError,
    InvalidSampleError,
    KeyMismatchError,
    OracleFailureError,
    ParameterError,
)
from ezcipher.lorenz import LorenzConfig, keystream

__all__ = [
    "DEFAULT_BLOCK_SIZE",
    "CipherAudio",
    "EncryptionKey",
    "elzaki_multiplier",
    "elzaki_of_monomial_oracle",
    "real_mod",
    "encrypt",
    "decrypt",
]

DEFAULT_BLOCK_SIZE = 65536

# Digital silence: below this peak, N = max|y| would be numerically useless
# as a modulus, so encryption substitutes 1.0.
SILENCE_THRESHOLD = 1e-12
SILENCE_FALLBACK_MODULUS = 1.0


@dataclass(frozen=True)
class CipherAudio:
    """Encrypted coefficient vector plus the framing needed to re-emit audio."""

    c: np.ndarray
    block_size: int
    sample_rate: int
    channels: int

    @property
    def length(self) -> int:
        return int(self.c.shape[0])


@dataclass(frozen=True)
class EncryptionKey:
    """Everything decryption needs: chaotic config, modulus, quotient key.

    k[n] is the floored quotient of the transformed sample by the modulus;
    together with the residues it reconstructs the transformed value exactly,
    so the key vector is as long as the message.
    """

    lorenz: LorenzConfig
    modulus: float
    k: np.ndarray
    block_size: int

    @property
    def length(self) -> int:
        return int(self.k.shape[0])


def elzaki_multiplier(n: int) -> int:
    """Per-index coefficient factor (n+1)(n+2), exactly.

    n is the position within a block (0 <= n < block_size).
    """
    if n < 0:
        raise ParameterError(f"index must be >= 0, got {n}")
    return (n + 1) * (n + 2)


def elzaki_of_monomial_oracle(m: int, s: float) -> float:
    """Transform of t^m at s, evaluated by adaptive quadrature.

    Computes s * integral_0^inf t^m exp(-t/s) dt with the upper limit
    truncated at 60*s*(m+1), where the integrand tail is far below the
    1e-9 relative tolerance.  Exists purely as a test oracle: the closed
    form is m! * s^(m+2), and matching the two ties the multiplier law to
    the transform definition without trusting either transcription.
    """
    if not 0 <= m <= 12:
        raise ParameterError(f"monomial exponent must be 0..12, got {m}")
    if not 0.0 < s <= 1.0:
        raise ParameterError(f"s must be in (0, 1], got {s!r}")
    upper = 60.0 * s * (m + 1)
    result = quad(lambda t: t ** m * math.exp(-t / s), 0.0, upper,
                  epsabs=0.0, epsrel=1e-9, limit=200, full_output=1)
    if len(result) > 3:  # quad appends an explanation on non-convergence
        raise OracleFailureError(str(result[3]))
    return s * float(result[0])


def real_mod(q: float, modulus: float) -> tuple[float, int]:
    """Floored-division reduction of a real value: q = c + modulus*k.

    Returns (c, k) with k = floor(q/modulus) as an exact signed integer and
    0 <= c < modulus.  Floored (not truncated) division is what keeps the
    residue non-negative for negative q.
    """
    if modulus <= 0.0 or not math.isfinite(modulus):
        raise InvalidModulusError(f"modulus must be positive and finite, got {modulus!r}")
    if not math.isfinite(q):
        raise ParameterError(f"value must be finite, got {q!r}")
    div = q / modulus
    if not math.isfinite(div):
        raise ParameterError(f"quotient {q!r}/{modulus!r} overflows")
    k = math.floor(div)
    c = q - modulus * k
    # floor() can land a step off when the division rounds across an integer;
    # walk back into range.
    while c < 0.0:
        k -= 1
        c = q - modulus * k
    while c >= modulus:
        k += 1
        nc = q - modulus * k
        if nc < 0.0:
            # The true residue sits within one rounding of the modulus, so no
            # representable c in [0, N) pairs with any k.  Wrap to exactly 0:
            # reconstruction stays within 1 ulp at the dominant magnitude.
            c = 0.0
            break
        c = nc
    return c, k


def _as_sample_vector(samples) -> np.ndarray:
    x = np.ascontiguousarray(samples, dtype=np.float64)
    if x.ndim != 1:
        raise ParameterError(f"expected a 1-D sample vector, got shape {x.shape}")
    return x


def encrypt(samples, lorenz: LorenzConfig = LorenzConfig(),
            block_size: int = DEFAULT_BLOCK_SIZE,
            sample_rate: int = 44100, channels: int = 1,
            ) -> tuple[CipherAudio, EncryptionKey]:
    """Encrypt a sample vector.

    Pipeline: add the chaotic keystream (y = x + ks), take N = max|y|,
    multiply each sample by its in-block factor (j+1)(j+2), and reduce
    modulo N.  Returns the cipher residues and the key (chaotic config,
    N, quotient vector, block size) needed to invert exactly.
    """
    x = _as_sample_vector(samples)
    if x.shape[0] == 0:
        raise EmptyInputError("cannot encrypt an empty sample vector")
    finite = np.isfinite(x)
    if not finite.all():
        raise InvalidSampleError(int(np.flatnonzero(~finite)[0]))
    if block_size < 1:
        raise ParameterError(f"block_size must be >= 1, got {block_size}")

    ks = keystream(lorenz, x.shape[0])
    y = x + ks
    modulus = float(np.max(np.abs(y)))
    if modulus < SILENCE_THRESHOLD:
        modulus = SILENCE_FALLBACK_MODULUS
    c, k = _backend.encode_blocks(y, modulus, block_size)
    cipher = CipherAudio(c=c, block_size=block_size,
                         sample_rate=sample_rate, channels=channels)
    key = EncryptionKey(lorenz=lorenz, modulus=modulus, k=k, block_size=block_size)
    return cipher, key


def decrypt(cipher: CipherAudio, key: EncryptionKey) -> np.ndarray:
    """Invert encrypt: rebuild q = c + N*k, divide out the multiplier,
    subtract the regenerated keystream."""
    if cipher.length != key.length or cipher.block_size != key.block_size:
        raise KeyMismatchError(
            f"cipher (length={cipher.length}, block={cipher.block_size}) does not "
            f"pair with key (length={key.length}, block={key.block_size})"
        )
    if key.modulus <= 0.0 or not math.isfinite(key.modulus):
        raise InvalidModulusError(f"key modulus must be positive, got {key.modulus!r}")
    c = np.ascontiguousarray(cipher.c, dtype=np.float64)
    k = np.ascontiguousarray(key.k, dtype=np.int64)
    y = _backend.decode_blocks(c, k, key.modulus, key.block_size)
    ks = keystream(key.lorenz, cipher.length)
    return y - ks
