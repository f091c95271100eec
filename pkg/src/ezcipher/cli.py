"""Command-line front end.

Subcommands wire the pipeline together for batch use:

  encrypt      WAV -> cipher (.ezc) + key (.ezk)
  decrypt      cipher + key -> WAV, with optional round-trip verification
  analyze      metrics report (and histogram/spectrogram CSVs) for one or
               two inputs; inputs may be WAV or cipher files
  keystream    chaotic keystream / trajectory CSV
  bifurcation  parameter-sweep extrema CSV
  fixtures     write the deterministic test corpus

Every command is deterministic given its flags: repeated runs produce
byte-identical output files.  Errors map to stage-specific exit codes
(see _STAGES) with messages naming the failing stage.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from ezcipher import audio_io, elzaki, fixtures, keyfile, lorenz, metrics
from ezcipher.errors import (
    CipherError,
    EmptyInputError,
    IntegrationOverflowError,
    InvalidModulusError,
    InvalidSampleError,
    KeyfileFormatError,
    KeyMismatchError,
    LengthMismatchError,
    MalformedWavError,
    OracleFailureError,
    ParameterError,
    UndefinedCorrelationError,
    UndefinedPsnrError,
    UnsupportedFormatError,
    WavWriteError,
)

VERIFY_TOLERANCE = 1e-9

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_AUDIO = 3
EXIT_KEYFILE = 4
EXIT_CODEC = 5
EXIT_DYNAMICS = 6
EXIT_METRICS = 7
EXIT_VERIFY = 8

_STAGES: list[tuple[tuple[type, ...], str, int]] = [
    ((MalformedWavError, UnsupportedFormatError, WavWriteError), "audio-io", EXIT_AUDIO),
    ((KeyfileFormatError, LengthMismatchError), "key/cipher file", EXIT_KEYFILE),
    ((EmptyInputError, InvalidSampleError, InvalidModulusError, KeyMismatchError,
      OracleFailureError), "codec", EXIT_CODEC),
    ((IntegrationOverflowError,), "dynamics", EXIT_DYNAMICS),
    ((UndefinedCorrelationError, UndefinedPsnrError), "metrics", EXIT_METRICS),
    ((ParameterError,), "parameters", EXIT_PARAMS),
    ((OSError,), "io", EXIT_AUDIO),
]


def _classify(exc: BaseException) -> tuple[str, int]:
    for types, stage, code in _STAGES:
        if isinstance(exc, types):
            return stage, code
    return "internal", 1


def _add_lorenz_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("chaotic key")
    g.add_argument("--sigma", type=float, default=10.0)
    g.add_argument("--rho", type=float, default=28.0)
    g.add_argument("--beta", type=float, default=8.0 / 3.0)
    g.add_argument("--dt", type=float, default=0.01)
    g.add_argument("--x0", type=float, default=0.02)
    g.add_argument("--y0", type=float, default=0.02)
    g.add_argument("--z0", type=float, default=0.02)
    g.add_argument("--component", choices=["x", "y", "z"], default="x")
    g.add_argument("--skip", type=int, default=0,
                   help="initial keystream steps to discard")
    g.add_argument("--scale", type=float, default=1.0,
                   help="multiplier applied to the emitted component")


def _lorenz_config(args: argparse.Namespace) -> lorenz.LorenzConfig:
    return lorenz.LorenzConfig(
        params=lorenz.LorenzParams(sigma=args.sigma, rho=args.rho,
                                   beta=args.beta, dt=args.dt),
        initial=lorenz.LorenzState(args.x0, args.y0, args.z0),
        component=lorenz.Component.parse(args.component),
        skip=args.skip,
        scale=args.scale,
    )


def _load_signal(path) -> tuple[np.ndarray, int]:
    """Read samples from a WAV or cipher file, sniffing by magic."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
    if magic == b"RIFF":
        sig = audio_io.read_wav(path)
        return sig.samples, sig.sample_rate
    if magic == keyfile.CIPHER_MAGIC:
        cipher = keyfile.read_cipher(path)
        return cipher.c, cipher.sample_rate
    raise UnsupportedFormatError(
        f"{path}: neither a RIFF/WAVE nor a cipher file (magic {magic!r})"
    )


def _run_encrypt(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    signal = audio_io.read_wav(args.input)
    cipher, key = elzaki.encrypt(
        signal.samples, _lorenz_config(args), block_size=args.block_size,
        sample_rate=signal.sample_rate, channels=signal.channels,
    )
    keyfile.write_cipher(args.output, cipher)
    keyfile.write_key(args.key, key)
    blocks = -(-cipher.length // cipher.block_size)
    elapsed = time.perf_counter() - started
    print(f"N={key.modulus!r}")
    print(f"blocks={blocks}")
    print(f"elapsed_s={elapsed:.3f}")
    return EXIT_OK


def _run_decrypt(args: argparse.Namespace) -> int:
    cipher = keyfile.read_cipher(args.input)
    key = keyfile.read_key(args.key)
    decrypted = elzaki.decrypt(cipher, key)
    fmt = (audio_io.SampleFormat.FLOAT32 if args.format == "float32"
           else audio_io.SampleFormat.PCM16)
    signal = audio_io.AudioSignal(
        samples=decrypted, sample_rate=cipher.sample_rate,
        channels=cipher.channels, source_format=fmt,
    )
    audio_io.write_wav(args.output, signal)
    print(f"wrote {args.output}")
    if args.verify is not None:
        original = audio_io.read_wav(args.verify)
        if original.samples.shape[0] != decrypted.shape[0]:
            raise KeyMismatchError(
                f"verify reference has {original.samples.shape[0]} samples, "
                f"decrypted output has {decrypted.shape[0]}"
            )
        residual = float(np.max(np.abs(decrypted - original.samples)))
        rho = metrics.correlation(original.samples, decrypted)
        print(f"max_residual={residual!r}")
        print(f"verify_correlation={rho!r}")
        if residual > VERIFY_TOLERANCE:
            print(
                f"error [verify]: round-trip residual {residual!r} exceeds "
                f"{VERIFY_TOLERANCE!r}",
                file=sys.stderr,
            )
            return EXIT_VERIFY
    return EXIT_OK


def _run_analyze(args: argparse.Namespace) -> int:
    subject_path = args.compare if args.compare is not None else args.input
    first, rate = _load_signal(args.input)
    if args.compare is not None:
        second, _ = _load_signal(args.compare)
        report = metrics.report_pair(first, second, bins=args.bins, lag=args.lag)
        subject = second
    else:
        report = metrics.report_single(first, bins=args.bins, lag=args.lag)
        subject = first
    print(report.to_json() if args.json else report.to_text())

    if args.histogram is not None:
        hist = metrics.histogram(subject, args.bins)
        with open(args.histogram, "w") as fh:
            metrics.write_histogram_csv(fh, hist)
        print(f"histogram[{subject_path}] -> {args.histogram}")
    if args.spectrogram is not None:
        spec = metrics.spectrogram(subject, window_len=args.window,
                                   hop=args.hop, sample_rate=rate)
        with open(args.spectrogram, "w") as fh:
            metrics.write_spectrogram_csv(fh, spec)
        print(f"spectrogram[{subject_path}] -> {args.spectrogram}")
    return EXIT_OK


def _run_keystream(args: argparse.Namespace) -> int:
    config = _lorenz_config(args)
    if args.length < 0:
        raise ParameterError(f"--length must be >= 0, got {args.length}")
    if args.length == 0:
        rows = np.empty((0, 3))
    else:
        states = lorenz.simulate(config, config.skip + args.length - 1)
        rows = config.scale * states[config.skip:]
    with open(args.output, "w") as fh:
        lorenz.write_trajectory_csv(fh, rows)
    print(f"wrote {args.length} keystream rows -> {args.output}")
    return EXIT_OK


def _run_bifurcation(args: argparse.Namespace) -> int:
    fixed = lorenz.LorenzParams(sigma=args.sigma, rho=args.rho,
                                beta=args.beta, dt=args.dt)
    points = lorenz.bifurcation_scan(
        args.sweep, args.lo, args.hi, args.grid, fixed=fixed,
        transient=args.transient, record=args.record,
    )
    with open(args.output, "w") as fh:
        lorenz.write_bifurcation_csv(fh, points)
    diverged = sum(1 for p in points if p.overflow_step is not None)
    print(f"wrote {len(points)} sweep points -> {args.output}")
    if diverged:
        print(f"{diverged} point(s) diverged and were recorded without maxima")
    return EXIT_OK


def _run_fixtures(args: argparse.Namespace) -> int:
    paths = fixtures.write_fixtures(args.output, n=args.samples,
                                    sample_rate=args.rate)
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ezcipher",
        description="Chaotic-keystream audio cipher and its evaluation suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a WAV into cipher + key files")
    p.add_argument("--in", dest="input", required=True, metavar="WAV")
    p.add_argument("--out", dest="output", required=True, metavar="EZC")
    p.add_argument("--key", required=True, metavar="EZK")
    p.add_argument("--block-size", type=int, default=elzaki.DEFAULT_BLOCK_SIZE)
    _add_lorenz_flags(p)
    p.set_defaults(func=_run_encrypt)

    p = sub.add_parser("decrypt", help="decrypt cipher + key files into a WAV")
    p.add_argument("--in", dest="input", required=True, metavar="EZC")
    p.add_argument("--key", required=True, metavar="EZK")
    p.add_argument("--out", dest="output", required=True, metavar="WAV")
    p.add_argument("--format", choices=["pcm16", "float32"], default="pcm16",
                   help="sample format for the decrypted WAV")
    p.add_argument("--verify", metavar="WAV",
                   help="original WAV to check the round-trip against")
    p.set_defaults(func=_run_decrypt)

    p = sub.add_parser("analyze", help="metrics report for one or two signals")
    p.add_argument("--in", dest="input", required=True, metavar="FILE",
                   help="WAV or cipher file (the original, for pair metrics)")
    p.add_argument("--compare", metavar="FILE",
                   help="second WAV or cipher file (the analysis subject)")
    p.add_argument("--bins", type=int, default=metrics.DEFAULT_ENTROPY_BINS)
    p.add_argument("--lag", type=int, default=1)
    p.add_argument("--histogram", metavar="CSV",
                   help="write the subject's histogram here")
    p.add_argument("--spectrogram", metavar="CSV",
                   help="write the subject's spectrogram here")
    p.add_argument("--window", type=int, default=metrics.DEFAULT_WINDOW_LEN)
    p.add_argument("--hop", type=int, default=metrics.DEFAULT_HOP)
    p.add_argument("--json", action="store_true",
                   help="emit the report as JSON instead of key=value lines")
    p.set_defaults(func=_run_analyze)

    p = sub.add_parser("keystream", help="dump keystream states as CSV")
    p.add_argument("--out", dest="output", required=True, metavar="CSV")
    p.add_argument("--length", type=int, required=True)
    _add_lorenz_flags(p)
    p.set_defaults(func=_run_keystream)

    p = sub.add_parser("bifurcation", help="parameter-sweep extrema CSV")
    p.add_argument("--out", dest="output", required=True, metavar="CSV")
    p.add_argument("--sweep", choices=list(lorenz.SWEEPABLE), required=True)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--transient", type=int, default=5000)
    p.add_argument("--record", type=int, default=20000)
    g = p.add_argument_group("fixed parameters")
    g.add_argument("--sigma", type=float, default=10.0)
    g.add_argument("--rho", type=float, default=28.0)
    g.add_argument("--beta", type=float, default=8.0 / 3.0)
    g.add_argument("--dt", type=float, default=0.01)
    p.set_defaults(func=_run_bifurcation)

    p = sub.add_parser("fixtures", help="write the deterministic test corpus")
    p.add_argument("--out", dest="output", required=True, metavar="DIR")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--rate", type=int, default=44100)
    p.set_defaults(func=_run_fixtures)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CipherError, OSError) as exc:
        stage, code = _classify(exc)
        print(f"error [{stage}]: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
