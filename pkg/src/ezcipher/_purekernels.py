"""Pure NumPy/Python kernels: fallback for the compiled extension.

Every function here must stay bit-for-bit interchangeable with its twin in
``_kernels.pyx``: identical expressions, identical evaluation order, 64-bit
IEEE-754 throughout.  Keystreams are part of the key material, so a single
differently-rounded operation between the two backends breaks decryption.
Do not "optimise" by reassociating arithmetic.
"""
from __future__ import annotations

import math

import numpy as np

from ezcipher.errors import IntegrationOverflowError


def trajectory(x: float, y: float, z: float,
               sigma: float, rho: float, beta: float, dt: float,
               steps: int) -> np.ndarray:
    """Integrate the three coupled rate equations with explicit forward Euler.

    Returns a (steps+1, 3) float64 array whose row 0 is the initial state.
    Raises IntegrationOverflowError naming the first step that produced a
    non-finite component.
    """
    out = np.empty((steps + 1, 3), dtype=np.float64)
    out[0, 0] = x
    out[0, 1] = y
    out[0, 2] = z
    for i in range(steps):
        dx = sigma * (y - x)
        dy = x * (rho - z) - y
        dz = x * y - beta * z
        x = x + dt * dx
        y = y + dt * dy
        z = z + dt * dz
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise IntegrationOverflowError(i + 1)
        out[i + 1, 0] = x
        out[i + 1, 1] = y
        out[i + 1, 2] = z
    return out


def keystream(x: float, y: float, z: float,
              sigma: float, rho: float, beta: float, dt: float,
              skip: int, length: int, component: int, scale: float) -> np.ndarray:
    """Emit ``scale * component`` of the post-skip states.

    Element 0 is the state reached after exactly ``skip`` Euler steps, so
    with skip=0 it is the initial condition itself.  The scale multiply is
    the final operation applied to each emitted value.
    """
    out = np.empty(length, dtype=np.float64)
    step = 0
    for _ in range(skip):
        dx = sigma * (y - x)
        dy = x * (rho - z) - y
        dz = x * y - beta * z
        x = x + dt * dx
        y = y + dt * dy
        z = z + dt * dz
        step += 1
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise IntegrationOverflowError(step)
    for i in range(length):
        if component == 0:
            out[i] = scale * x
        elif component == 1:
            out[i] = scale * y
        else:
            out[i] = scale * z
        if i + 1 < length:
            dx = sigma * (y - x)
            dy = x * (rho - z) - y
            dz = x * y - beta * z
            x = x + dt * dx
            y = y + dt * dy
            z = z + dt * dz
            step += 1
            if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
                raise IntegrationOverflowError(step)
    return out


def encode_blocks(y: np.ndarray, modulus: float, block_size: int):
    """Per-index multiply and floored-division reduction.

    For sample n with j = n mod block_size: q = (j+1)(j+2) * y[n], then
    k = floor(q / modulus) and c = q - modulus*k, nudged so c lands in
    [0, modulus) despite rounding.  Returns (c float64, k int64).
    """
    n = y.shape[0]
    j = np.arange(n, dtype=np.int64) % block_size
    mult = ((j + 1) * (j + 2)).astype(np.float64)
    q = mult * y
    k = np.floor(q / modulus)
    c = q - modulus * k
    # Rounding in the division can put floor() a step off; walk each element
    # back into [0, modulus).  A residue pinned to the modulus by rounding
    # (no representable c in range for any k) wraps to exactly 0 with the
    # incremented quotient -- keep in lockstep with _kernels.pyx.
    while True:
        low = c < 0.0
        if not low.any():
            break
        k[low] -= 1.0
        c[low] = q[low] - modulus * k[low]
    while True:
        high = c >= modulus
        if not high.any():
            break
        k[high] += 1.0
        nc = q[high] - modulus * k[high]
        nc[nc < 0.0] = 0.0
        c[high] = nc
    return c, k.astype(np.int64)


def decode_blocks(c: np.ndarray, k: np.ndarray, modulus: float,
                  block_size: int) -> np.ndarray:
    """Invert encode_blocks: q = c + modulus*k, then divide out the multiplier."""
    n = c.shape[0]
    j = np.arange(n, dtype=np.int64) % block_size
    mult = ((j + 1) * (j + 2)).astype(np.float64)
    q = c + modulus * k.astype(np.float64)
    return q / mult


def local_maxima(z: np.ndarray) -> np.ndarray:
    """Values z[i] with z[i-1] < z[i] > z[i+1], in order of occurrence."""
    if z.shape[0] < 3:
        return np.empty(0, dtype=np.float64)
    mid = z[1:-1]
    mask = (mid > z[:-2]) & (mid > z[2:])
    return np.ascontiguousarray(mid[mask], dtype=np.float64)
