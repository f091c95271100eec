"""ezcipher: a chaotic-keystream audio cipher and its evaluation suite.

The cipher adds a Lorenz-trajectory keystream to the samples, multiplies
each sample by its Elzaki-transform coefficient factor (n+1)(n+2), and
reduces modulo the signal peak; the quotients become the modular key.
Decryption inverts each stage exactly.
"""
from ezcipher._backend import backend
from ezcipher.audio_io import AudioSignal, SampleFormat, read_wav, write_wav
from ezcipher.elzaki import (
    DEFAULT_BLOCK_SIZE,
    CipherAudio,
    EncryptionKey,
    decrypt,
    elzaki_multiplier,
    elzaki_of_monomial_oracle,
    encrypt,
    real_mod,
)
from ezcipher.keyfile import read_cipher, read_key, write_cipher, write_key
from ezcipher.lorenz import (
    Component,
    LorenzConfig,
    LorenzParams,
    LorenzState,
    bifurcation_scan,
    euler_step,
    keystream,
    simulate,
)
from ezcipher.metrics import (
    MetricsReport,
    correlation,
    entropy,
    histogram,
    lag_correlation,
    mse,
    psnr,
    report_pair,
    report_single,
    spectrogram,
)

__version__ = "0.1.0"

__all__ = [
    "AudioSignal",
    "CipherAudio",
    "Component",
    "DEFAULT_BLOCK_SIZE",
    "EncryptionKey",
    "LorenzConfig",
    "LorenzParams",
    "LorenzState",
    "MetricsReport",
    "SampleFormat",
    "backend",
    "bifurcation_scan",
    "correlation",
    "decrypt",
    "elzaki_multiplier",
    "elzaki_of_monomial_oracle",
    "encrypt",
    "entropy",
    "euler_step",
    "histogram",
    "keystream",
    "lag_correlation",
    "mse",
    "psnr",
    "read_cipher",
    "read_key",
    "read_wav",
    "report_pair",
    "report_single",
    "real_mod",
    "simulate",
    "spectrogram",
    "write_cipher",
    "write_key",
    "write_wav",
]
