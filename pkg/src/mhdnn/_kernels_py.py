"""Pure-Python kernels, API-compatible with the compiled `_kernels` module.

Selected automatically when the extension is unavailable (or forced via
MHDNN_BACKEND=python). Expression order matches the native code so orbits
are bit-identical across backends; the sequential XOR diffusion chains are
vectorized as prefix-XOR scans, everything else is a plain loop.
"""

import math

import numpy as np

_BOUND = 1e8
_EXP_MAX = 709.782712893384  # log(DBL_MAX); C exp() overflows to inf past this
_MIN_NORM = 5e-324
_E10 = 10**10
_E12 = 10**12


def _exp(arg):
    # mirror C exp(): saturate to inf instead of raising OverflowError
    return math.exp(arg) if arg <= _EXP_MAX else math.inf


def _ok(x, y, z):
    return abs(x) <= _BOUND and abs(y) <= _BOUND and abs(z) <= _BOUND


def orbit(a, b, c, h, m, k, x, y, z, n_transient, out):
    n = out.shape[0]
    t = 0
    for i in range(n_transient + n):
        w = m * math.tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * _exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _ok(x, y, z):
            return t
        if i >= n_transient:
            out[i - n_transient, 0] = x
            out[i - n_transient, 1] = y
            out[i - n_transient, 2] = z
    return -1


def orbit_coord(a, b, c, h, m, k, x, y, z, n_transient, coord, out):
    n = out.shape[0]
    t = 0
    for i in range(n_transient + n):
        w = m * math.tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * _exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _ok(x, y, z):
            return t
        if i >= n_transient:
            out[i - n_transient] = x if coord == 0 else (y if coord == 1 else z)
    return -1


def lyapunov(a, b, c, h, m, k, x, y, z, n_transient, n_iter, lam):
    t = 0
    for _ in range(n_transient):
        w = m * math.tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * _exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _ok(x, y, z):
            return t

    q0 = (1.0, 0.0, 0.0)
    q1 = (0.0, 1.0, 0.0)
    q2 = (0.0, 0.0, 1.0)
    acc0 = acc1 = acc2 = 0.0
    for _ in range(n_iter):
        tz = math.tanh(z)
        s2 = 1.0 - tz * tz
        d = y - x
        ey = _exp(b - y)
        j00 = -2.0 * a * x / ((1.0 + x * x) * (1.0 + x * x)) - m * tz
        j01 = m * tz
        j02 = m * s2 * d
        j10 = -m * tz
        j11 = c * ey * (2.0 * y - y * y) + m * tz
        j12 = m * s2 * d
        v0 = (j00 * q0[0] + j01 * q0[1] + j02 * q0[2],
              j10 * q0[0] + j11 * q0[1] + j12 * q0[2],
              -q0[0] + q0[1] + q0[2])
        v1 = (j00 * q1[0] + j01 * q1[1] + j02 * q1[2],
              j10 * q1[0] + j11 * q1[1] + j12 * q1[2],
              -q1[0] + q1[1] + q1[2])
        v2 = (j00 * q2[0] + j01 * q2[1] + j02 * q2[2],
              j10 * q2[0] + j11 * q2[1] + j12 * q2[2],
              -q2[0] + q2[1] + q2[2])
        r0 = math.sqrt(v0[0] * v0[0] + v0[1] * v0[1] + v0[2] * v0[2])
        if r0 < _MIN_NORM:
            r0 = _MIN_NORM
        q0 = (v0[0] / r0, v0[1] / r0, v0[2] / r0)
        r01 = q0[0] * v1[0] + q0[1] * v1[1] + q0[2] * v1[2]
        v1 = (v1[0] - r01 * q0[0], v1[1] - r01 * q0[1], v1[2] - r01 * q0[2])
        r1 = math.sqrt(v1[0] * v1[0] + v1[1] * v1[1] + v1[2] * v1[2])
        if r1 < _MIN_NORM:
            r1 = _MIN_NORM
        q1 = (v1[0] / r1, v1[1] / r1, v1[2] / r1)
        r02 = q0[0] * v2[0] + q0[1] * v2[1] + q0[2] * v2[2]
        r12 = q1[0] * v2[0] + q1[1] * v2[1] + q1[2] * v2[2]
        v2 = (v2[0] - r02 * q0[0], v2[1] - r02 * q0[1], v2[2] - r02 * q0[2])
        v2 = (v2[0] - r12 * q1[0], v2[1] - r12 * q1[1], v2[2] - r12 * q1[2])
        r2 = math.sqrt(v2[0] * v2[0] + v2[1] * v2[1] + v2[2] * v2[2])
        if r2 < _MIN_NORM:
            r2 = _MIN_NORM
        q2 = (v2[0] / r2, v2[1] / r2, v2[2] / r2)
        acc0 += math.log(r0); acc1 += math.log(r1); acc2 += math.log(r2)
        w = m * tz
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * ey + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _ok(x, y, z):
            return t

    vals = sorted((acc0 / n_iter, acc1 / n_iter, acc2 / n_iter), reverse=True)
    lam[0], lam[1], lam[2] = vals
    return -1


def quantize_one(s, modulus):
    """Exact floor((s+100)*1e10) mod modulus, shifted to a 1-based index."""
    n, d = float(s).as_integer_ratio()
    v = (n * _E10) // d + _E12
    return v % modulus + 1


def quantize_block(s, modulus, out):
    for i in range(s.shape[0]):
        v = s[i]
        if not abs(v) < 1e7:
            return i
        out[i] = quantize_one(v, modulus)
    return -1


def swap_pass(buf, idx0, reverse):
    t = idx0.shape[0]
    half = t // 2
    rng = range(half - 1, -1, -1) if reverse else range(half)
    for i in rng:
        p = idx0[i]
        q = idx0[t - 1 - i]
        buf[p], buf[q] = buf[q], buf[p]


def forward_diffuse(src, sbt0, sx, dst):
    # B(i) = A(i) ^ B(i-1) ^ sx[SBT(i)]  ==  prefix-XOR of keyed samples
    u = src.copy()
    u[1:] ^= sx[sbt0[1:]]
    np.bitwise_xor.accumulate(u, out=dst)


def backward_diffuse(src, sbt0, sx, dst):
    u = src.copy()
    u[:-1] ^= sx[sbt0[:-1]]
    dst[:] = np.bitwise_xor.accumulate(u[::-1])[::-1]


def invert_backward_diffuse(src, sbt0, sx, dst):
    dst[-1] = src[-1]
    dst[:-1] = src[:-1] ^ src[1:] ^ sx[sbt0[:-1]]


def invert_forward_diffuse(src, sbt0, sx, dst):
    dst[0] = src[0]
    dst[1:] = src[1:] ^ src[:-1] ^ sx[sbt0[1:]]
