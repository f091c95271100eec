# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Euler integration, keystream fill, block codec.

Bit-identical twin of ``_purekernels``.  Built with -ffp-contract=off so the
C compiler cannot fuse multiply-adds; fused rounding would desynchronise the
two backends and corrupt decryption.  Keep expressions and their evaluation
order in lockstep with the fallback module.
"""
import numpy as np

from libc.math cimport floor, isfinite

from ezcipher.errors import IntegrationOverflowError


def trajectory(double x, double y, double z,
               double sigma, double rho, double beta, double dt,
               Py_ssize_t steps):
    out = np.empty((steps + 1, 3), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double dx, dy, dz
    cdef Py_ssize_t i
    o[0, 0] = x
    o[0, 1] = y
    o[0, 2] = z
    for i in range(steps):
        dx = sigma * (y - x)
        dy = x * (rho - z) - y
        dz = x * y - beta * z
        x = x + dt * dx
        y = y + dt * dy
        z = z + dt * dz
        if not (isfinite(x) and isfinite(y) and isfinite(z)):
            raise IntegrationOverflowError(i + 1)
        o[i + 1, 0] = x
        o[i + 1, 1] = y
        o[i + 1, 2] = z
    return out


def keystream(double x, double y, double z,
              double sigma, double rho, double beta, double dt,
              Py_ssize_t skip, Py_ssize_t length, int component, double scale):
    out = np.empty(length, dtype=np.float64)
    cdef double[::1] o = out
    cdef double dx, dy, dz
    cdef Py_ssize_t i, step = 0
    for i in range(skip):
        dx = sigma * (y - x)
        dy = x * (rho - z) - y
        dz = x * y - beta * z
        x = x + dt * dx
        y = y + dt * dy
        z = z + dt * dz
        step += 1
        if not (isfinite(x) and isfinite(y) and isfinite(z)):
            raise IntegrationOverflowError(step)
    for i in range(length):
        if component == 0:
            o[i] = scale * x
        elif component == 1:
            o[i] = scale * y
        else:
            o[i] = scale * z
        if i + 1 < length:
            dx = sigma * (y - x)
            dy = x * (rho - z) - y
            dz = x * y - beta * z
            x = x + dt * dx
            y = y + dt * dy
            z = z + dt * dz
            step += 1
            if not (isfinite(x) and isfinite(y) and isfinite(z)):
                raise IntegrationOverflowError(step)
    return out


def encode_blocks(double[::1] y, double modulus, Py_ssize_t block_size):
    cdef Py_ssize_t n = y.shape[0]
    c_arr = np.empty(n, dtype=np.float64)
    k_arr = np.empty(n, dtype=np.int64)
    cdef double[::1] c = c_arr
    cdef long long[::1] k = k_arr
    cdef Py_ssize_t i, j = 0
    cdef double mult, q, ci, ki, nc
    for i in range(n):
        mult = <double> ((j + 1) * (j + 2))
        q = mult * y[i]
        ki = floor(q / modulus)
        ci = q - modulus * ki
        while ci < 0.0:
            ki -= 1.0
            ci = q - modulus * ki
        while ci >= modulus:
            ki += 1.0
            nc = q - modulus * ki
            if nc < 0.0:
                # residue pinned to the modulus by rounding: wrap to 0
                ci = 0.0
                break
            ci = nc
        c[i] = ci
        k[i] = <long long> ki
        j += 1
        if j == block_size:
            j = 0
    return c_arr, k_arr


def decode_blocks(double[::1] c, long long[::1] k, double modulus,
                  Py_ssize_t block_size):
    cdef Py_ssize_t n = c.shape[0]
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef Py_ssize_t i, j = 0
    cdef double mult, q
    for i in range(n):
        mult = <double> ((j + 1) * (j + 2))
        q = c[i] + modulus * (<double> k[i])
        y[i] = q / mult
        j += 1
        if j == block_size:
            j = 0
    return y_arr


def local_maxima(double[::1] z):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t i, count = 0
    if n < 3:
        return np.empty(0, dtype=np.float64)
    for i in range(1, n - 1):
        if z[i] > z[i - 1] and z[i] > z[i + 1]:
            count += 1
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] o = out
    count = 0
    for i in range(1, n - 1):
        if z[i] > z[i - 1] and z[i] > z[i + 1]:
            o[count] = z[i]
            count += 1
    return out
