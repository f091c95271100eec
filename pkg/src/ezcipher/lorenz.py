"""Lorenz dynamics: fixed-step Euler integration, keystreams, bifurcation scans.

The integrator is deliberately plain forward Euler in 64-bit floats.  Both
ends of the cipher must regenerate the identical keystream, which makes the
integrator part of the key contract: a more accurate scheme (or the same
scheme with fused multiply-adds) would round differently and be a different
cipher.  Determinism beats ODE accuracy here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import IO, Iterable, Sequence

import numpy as np

from ezcipher import _backend
from ezcipher.errors import IntegrationOverflowError, ParameterError

__all__ = [
    "Component",
    "LorenzParams",
    "LorenzState",
    "LorenzConfig",
    "BifurcationPoint",
    "DEFAULT_INITIAL",
    "euler_step",
    "simulate",
    "keystream",
    "bifurcation_scan",
    "write_trajectory_csv",
    "write_bifurcation_csv",
]

SWEEPABLE = ("sigma", "rho", "beta")


class Component(IntEnum):
    """Which state variable feeds the keystream.  Values match the key file."""

    X = 0
    Y = 1
    Z = 2

    @classmethod
    def parse(cls, name: "str | int | Component") -> "Component":
        if isinstance(name, Component):
            return name
        if isinstance(name, int):
            try:
                return cls(name)
            except ValueError:
                raise ParameterError(f"component code must be 0..2, got {name}") from None
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise ParameterError(f"unknown component {name!r} (expected x, y or z)") from None


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class LorenzParams:
    """System rates and the Euler time step."""

    sigma: float = 10.0
    rho: float = 28.0
    beta: float = 8.0 / 3.0
    dt: float = 0.01

    def __post_init__(self):
        for name in ("sigma", "rho", "beta", "dt"):
            _require_finite(name, getattr(self, name))
        if self.dt <= 0.0:
            raise ParameterError(f"dt must be positive, got {self.dt!r}")


@dataclass(frozen=True)
class LorenzState:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            _require_finite(name, getattr(self, name))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)


DEFAULT_INITIAL = LorenzState(0.02, 0.02, 0.02)


@dataclass(frozen=True)
class LorenzConfig:
    """Everything that determines a keystream.

    skip discards initial transient steps and scale multiplies the emitted
    component; the defaults (0 and 1.0) emit the raw trajectory values.
    """

    params: LorenzParams = LorenzParams()
    initial: LorenzState = DEFAULT_INITIAL
    component: Component = Component.X
    skip: int = 0
    scale: float = 1.0

    def __post_init__(self):
        if self.skip < 0:
            raise ParameterError(f"skip must be >= 0, got {self.skip}")
        _require_finite("scale", self.scale)


def euler_step(state: LorenzState, params: LorenzParams) -> LorenzState:
    """One explicit forward Euler step: state + dt * f(state).

    The right-hand side is evaluated once at the input state.  Raises
    IntegrationOverflowError when the result is non-finite.
    """
    row = _backend.trajectory(
        state.x, state.y, state.z,
        params.sigma, params.rho, params.beta, params.dt, 1,
    )[1]
    return LorenzState(float(row[0]), float(row[1]), float(row[2]))


def simulate(config: LorenzConfig, steps: int) -> np.ndarray:
    """Integrate ``steps`` Euler steps from the configured initial state.

    Returns a (steps+1, 3) float64 array of states; row 0 is the initial
    condition and row i+1 is euler_step applied to row i.
    """
    if steps < 0:
        raise ParameterError(f"steps must be >= 0, got {steps}")
    p = config.params
    ini = config.initial
    return _backend.trajectory(ini.x, ini.y, ini.z, p.sigma, p.rho, p.beta, p.dt, steps)


def keystream(config: LorenzConfig, length: int) -> np.ndarray:
    """The additive keystream: scale * selected component of the trajectory.

    Element i is the state after skip+i Euler steps, so with skip=0 element 0
    comes straight from the initial condition.  Output length always equals
    ``length``.
    """
    if length < 0:
        raise ParameterError(f"length must be >= 0, got {length}")
    p = config.params
    ini = config.initial
    return _backend.keystream(
        ini.x, ini.y, ini.z, p.sigma, p.rho, p.beta, p.dt,
        config.skip, length, int(config.component), config.scale,
    )


@dataclass
class BifurcationPoint:
    """Attractor extrema recorded at one swept parameter value.

    overflow_step is None for a clean run; otherwise it names the Euler step
    at which the trajectory diverged (and maxima is empty).
    """

    param: float
    maxima: np.ndarray
    overflow_step: int | None = None


def bifurcation_scan(sweep: str, lo: float, hi: float, grid: int,
                     fixed: LorenzParams = LorenzParams(),
                     transient: int = 5000, record: int = 20000,
                     initial: LorenzState = DEFAULT_INITIAL) -> list[BifurcationPoint]:
    """Sweep one parameter and collect the z local maxima after a transient.

    For each of ``grid`` evenly spaced values in [lo, hi] the system is
    integrated transient+record steps; the first ``transient`` states are
    dropped and the strict local maxima of z in the remaining window are
    reported.  Divergent parameter values are recorded per point, not fatal.
    """
    if sweep not in SWEEPABLE:
        raise ParameterError(f"sweep must be one of {SWEEPABLE}, got {sweep!r}")
    if not lo < hi:
        raise ParameterError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    if grid < 2:
        raise ParameterError(f"grid must be >= 2, got {grid}")
    if transient < 0 or record < 0:
        raise ParameterError("transient and record must be >= 0")

    points: list[BifurcationPoint] = []
    for value in np.linspace(lo, hi, grid):
        params = replace(fixed, **{sweep: float(value)})
        try:
            states = _backend.trajectory(
                initial.x, initial.y, initial.z,
                params.sigma, params.rho, params.beta, params.dt,
                transient + record,
            )
        except IntegrationOverflowError as exc:
            points.append(BifurcationPoint(float(value), np.empty(0), exc.step))
            continue
        z = np.ascontiguousarray(states[transient:, 2])
        points.append(BifurcationPoint(float(value), _backend.local_maxima(z)))
    return points


def _fmt(value: float) -> str:
    # repr() of a Python float is the shortest round-tripping decimal form.
    return repr(float(value))


def write_trajectory_csv(out: IO[str], states: Sequence[Sequence[float]] | np.ndarray) -> None:
    """Dump states as ``step,x,y,z`` rows with round-trip-exact floats."""
    out.write("step,x,y,z\n")
    for i, row in enumerate(states):
        out.write(f"{i},{_fmt(row[0])},{_fmt(row[1])},{_fmt(row[2])}\n")


def write_bifurcation_csv(out: IO[str], points: Iterable[BifurcationPoint]) -> None:
    """Dump scan results as ``param,zmax`` rows, one row per recorded maximum."""
    out.write("param,zmax\n")
    for point in points:
        for zmax in point.maxima:
            out.write(f"{_fmt(point.param)},{_fmt(zmax)}\n")
