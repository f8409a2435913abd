# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native kernels for the hot inner loops: map iteration, tangent-space
Lyapunov accumulation, exact keystream quantization, and the cipher's
sequential swap/diffusion passes.

Semantics must stay bit-identical with `_kernels_py` (same expression
order, same libm calls, no FMA contraction); `tests/test_backends.py`
enforces this.
"""

from libc.math cimport tanh, exp, log, sqrt, fabs, frexp, ldexp

cdef extern from *:
    ctypedef long long int128 "__int128"

# divergence bound 1e8; norm floor 5e-324 (smallest subnormal) keeps log()
# finite on tangent-frame rank collapse

cdef inline bint _finite3(double x, double y, double z) nogil:
    # False for NaN as well as for out-of-bound values
    return fabs(x) <= 1e8 and fabs(y) <= 1e8 and fabs(z) <= 1e8


cdef inline long long _orbit_impl(double a, double b, double c, double h,
                                  double m, double k,
                                  double x, double y, double z,
                                  long long n_transient,
                                  double[:, ::1] out) nogil:
    cdef long long i, t = 0
    cdef long long n = out.shape[0]
    cdef double w, d, xn, yn, zn
    for i in range(n_transient + n):
        w = m * tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _finite3(x, y, z):
            return t
        if i >= n_transient:
            out[i - n_transient, 0] = x
            out[i - n_transient, 1] = y
            out[i - n_transient, 2] = z
    return -1


def orbit(double a, double b, double c, double h, double m, double k,
          double x0, double y0, double z0, long long n_transient,
          double[:, ::1] out):
    """Fill out[(n,3)] with post-transient states; return divergence step or -1."""
    cdef long long ret
    with nogil:
        ret = _orbit_impl(a, b, c, h, m, k, x0, y0, z0, n_transient, out)
    return ret


cdef inline long long _orbit_coord_impl(double a, double b, double c, double h,
                                        double m, double k,
                                        double x, double y, double z,
                                        long long n_transient, int coord,
                                        double[::1] out) nogil:
    cdef long long i, t = 0
    cdef long long n = out.shape[0]
    cdef double w, d, xn, yn, zn
    for i in range(n_transient + n):
        w = m * tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _finite3(x, y, z):
            return t
        if i >= n_transient:
            out[i - n_transient] = x if coord == 0 else (y if coord == 1 else z)
    return -1


def orbit_coord(double a, double b, double c, double h, double m, double k,
                double x0, double y0, double z0, long long n_transient,
                int coord, double[::1] out):
    """Record one coordinate (0=x, 1=y, 2=z) per post-transient step."""
    cdef long long ret
    with nogil:
        ret = _orbit_coord_impl(a, b, c, h, m, k, x0, y0, z0,
                                n_transient, coord, out)
    return ret


cdef inline long long _lyapunov_impl(double a, double b, double c, double h,
                                     double m, double k,
                                     double x, double y, double z,
                                     long long n_transient, long long n_iter,
                                     double[::1] lam) nogil:
    cdef long long i, t = 0
    cdef double w, d, xn, yn, zn
    cdef double tz, s2, ey, j00, j01, j02, j10, j11, j12
    # orthonormal frame columns
    cdef double q0x = 1, q0y = 0, q0z = 0
    cdef double q1x = 0, q1y = 1, q1z = 0
    cdef double q2x = 0, q2y = 0, q2z = 1
    cdef double v0x, v0y, v0z, v1x, v1y, v1z, v2x, v2y, v2z
    cdef double r0, r1, r2, r01, r02, r12
    cdef double acc0 = 0, acc1 = 0, acc2 = 0, tmp

    for i in range(n_transient):
        w = m * tanh(z)
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * exp(b - y) + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _finite3(x, y, z):
            return t

    for i in range(n_iter):
        # analytic Jacobian at the current state (sech^2 = 1 - tanh^2)
        tz = tanh(z)
        s2 = 1.0 - tz * tz
        d = y - x
        ey = exp(b - y)
        j00 = -2.0 * a * x / ((1.0 + x * x) * (1.0 + x * x)) - m * tz
        j01 = m * tz
        j02 = m * s2 * d
        j10 = -m * tz
        j11 = c * ey * (2.0 * y - y * y) + m * tz
        j12 = m * s2 * d
        # propagate frame: v_j = J q_j  (third row is (-1, 1, 1))
        v0x = j00 * q0x + j01 * q0y + j02 * q0z
        v0y = j10 * q0x + j11 * q0y + j12 * q0z
        v0z = -q0x + q0y + q0z
        v1x = j00 * q1x + j01 * q1y + j02 * q1z
        v1y = j10 * q1x + j11 * q1y + j12 * q1z
        v1z = -q1x + q1y + q1z
        v2x = j00 * q2x + j01 * q2y + j02 * q2z
        v2y = j10 * q2x + j11 * q2y + j12 * q2z
        v2z = -q2x + q2y + q2z
        # Gram-Schmidt, re-orthonormalizing every step
        r0 = sqrt(v0x * v0x + v0y * v0y + v0z * v0z)
        if r0 < 5e-324:
            r0 = 5e-324
        q0x = v0x / r0; q0y = v0y / r0; q0z = v0z / r0
        r01 = q0x * v1x + q0y * v1y + q0z * v1z
        v1x = v1x - r01 * q0x; v1y = v1y - r01 * q0y; v1z = v1z - r01 * q0z
        r1 = sqrt(v1x * v1x + v1y * v1y + v1z * v1z)
        if r1 < 5e-324:
            r1 = 5e-324
        q1x = v1x / r1; q1y = v1y / r1; q1z = v1z / r1
        r02 = q0x * v2x + q0y * v2y + q0z * v2z
        r12 = q1x * v2x + q1y * v2y + q1z * v2z
        v2x = v2x - r02 * q0x; v2y = v2y - r02 * q0y; v2z = v2z - r02 * q0z
        v2x = v2x - r12 * q1x; v2y = v2y - r12 * q1y; v2z = v2z - r12 * q1z
        r2 = sqrt(v2x * v2x + v2y * v2y + v2z * v2z)
        if r2 < 5e-324:
            r2 = 5e-324
        q2x = v2x / r2; q2y = v2y / r2; q2z = v2z / r2
        acc0 += log(r0); acc1 += log(r1); acc2 += log(r2)
        # advance the orbit
        w = m * tz
        d = y - x
        xn = a / (1.0 + x * x) + w * d + h
        yn = c * y * y * ey + w * d + k
        zn = z + d
        x = xn; y = yn; z = zn
        t += 1
        if not _finite3(x, y, z):
            return t

    lam[0] = acc0 / n_iter
    lam[1] = acc1 / n_iter
    lam[2] = acc2 / n_iter
    # sort descending (3 elements)
    if lam[0] < lam[1]:
        tmp = lam[0]; lam[0] = lam[1]; lam[1] = tmp
    if lam[1] < lam[2]:
        tmp = lam[1]; lam[1] = lam[2]; lam[2] = tmp
    if lam[0] < lam[1]:
        tmp = lam[0]; lam[0] = lam[1]; lam[1] = tmp
    return -1


def lyapunov(double a, double b, double c, double h, double m, double k,
             double x0, double y0, double z0,
             long long n_transient, long long n_iter, double[::1] lam):
    """QR/Gram-Schmidt tangent-space spectrum into lam[3] (sorted descending).

    Reuses tanh/exp evaluations between the Jacobian and the step, which
    keeps the per-iteration cost at one tanh and one exp.
    """
    cdef long long ret
    with nogil:
        ret = _lyapunov_impl(a, b, c, h, m, k, x0, y0, z0,
                             n_transient, n_iter, lam)
    return ret


cdef inline long long _quantize_one(double s, long long modulus) nogil:
    # exact floor((s+100)*1e10) mod modulus, +1: the double is decomposed
    # into integer mantissa times power of two, so no rounding occurs
    cdef int e
    cdef double man = frexp(s, &e)
    cdef long long ms = <long long> ldexp(man, 53)
    cdef int sh = e - 53
    cdef int128 p = (<int128> ms) * <int128> 10000000000LL
    cdef int128 v
    if sh >= 0:
        v = p << sh
    elif sh <= -127:
        v = -1 if p < 0 else 0
    else:
        v = p >> (-sh)  # arithmetic shift == floor division
    v += <int128> 1000000000000LL
    cdef long long r = <long long> (v % (<int128> modulus))
    if r < 0:
        r += modulus
    return r + 1


def quantize_block(double[::1] s, long long modulus, long long[::1] out):
    """1-based keystream indices for a block of samples; -1 ok, else the
    offset of the first sample violating the |s| < 1e7 guard."""
    cdef long long i, n = s.shape[0]
    with nogil:
        for i in range(n):
            if not fabs(s[i]) < 1e7:
                return i
            out[i] = _quantize_one(s[i], modulus)
    return -1


def swap_pass(unsigned char[::1] buf, long long[::1] idx0, bint reverse):
    """Apply the swap sequence swap(buf, idx[i], idx[T-1-i]) for i over the
    first half, ascending (reverse=False) or descending (its inverse)."""
    cdef long long t = idx0.shape[0]
    cdef long long half = t // 2
    cdef long long i, p, q
    cdef unsigned char tmp
    with nogil:
        if not reverse:
            for i in range(half):
                p = idx0[i]; q = idx0[t - 1 - i]
                tmp = buf[p]; buf[p] = buf[q]; buf[q] = tmp
        else:
            for i in range(half - 1, -1, -1):
                p = idx0[i]; q = idx0[t - 1 - i]
                tmp = buf[p]; buf[p] = buf[q]; buf[q] = tmp


def forward_diffuse(unsigned char[::1] src, long long[::1] sbt0,
                    unsigned char[::1] sx, unsigned char[::1] dst):
    cdef long long i, t = src.shape[0]
    with nogil:
        dst[0] = src[0]
        for i in range(1, t):
            dst[i] = src[i] ^ dst[i - 1] ^ sx[sbt0[i]]


def backward_diffuse(unsigned char[::1] src, long long[::1] sbt0,
                     unsigned char[::1] sx, unsigned char[::1] dst):
    cdef long long i, t = src.shape[0]
    with nogil:
        dst[t - 1] = src[t - 1]
        for i in range(t - 2, -1, -1):
            dst[i] = src[i] ^ dst[i + 1] ^ sx[sbt0[i]]


def invert_backward_diffuse(unsigned char[::1] src, long long[::1] sbt0,
                            unsigned char[::1] sx, unsigned char[::1] dst):
    cdef long long i, t = src.shape[0]
    with nogil:
        dst[t - 1] = src[t - 1]
        for i in range(t - 2, -1, -1):
            dst[i] = src[i] ^ src[i + 1] ^ sx[sbt0[i]]


def invert_forward_diffuse(unsigned char[::1] src, long long[::1] sbt0,
                           unsigned char[::1] sx, unsigned char[::1] dst):
    cdef long long i, t = src.shape[0]
    with nogil:
        dst[0] = src[0]
        for i in range(1, t):
            dst[i] = src[i] ^ src[i - 1] ^ sx[sbt0[i]]
