"""Exception types raised across the package.

Everything derives from CipherError so callers (notably the CLI) can map
failures to a stage without string matching.
"""


class CipherError(Exception):
    """Base class for all ezcipher errors."""


class ParameterError(CipherError):
    """An argument violates an operation's stated preconditions."""


class IntegrationOverflowError(CipherError):
    """The trajectory left the representable range (non-finite state)."""

    def __init__(self, step: int, message: str | None = None):
        self.step = step
        super().__init__(message or f"non-finite state after integration step {step}")


class EmptyInputError(CipherError):
    """Encryption was asked to process an empty sample vector."""


class InvalidSampleError(CipherError):
    """A sample vector contains a NaN or infinity."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"non-finite sample at index {index}")


class InvalidModulusError(CipherError):
    """Modular reduction with a non-positive modulus."""


class KeyMismatchError(CipherError):
    """Cipher and key disagree on length or block size."""


class OracleFailureError(CipherError):
    """The quadrature oracle failed to converge."""


class MalformedWavError(CipherError):
    """A RIFF/WAVE file is structurally broken."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")


class UnsupportedFormatError(CipherError):
    """The WAV codec is not PCM16 or Float32."""


class WavWriteError(CipherError):
    """Writing a WAV file failed."""


class KeyfileFormatError(CipherError):
    """A cipher/key file has a bad magic, version, or field value."""


class LengthMismatchError(CipherError):
    """A cipher/key file payload is shorter than its declared length."""


class UndefinedCorrelationError(CipherError):
    """Correlation of a zero-variance sequence is undefined."""


class UndefinedPsnrError(CipherError):
    """PSNR with zero peak amplitude and nonzero error is undefined."""
