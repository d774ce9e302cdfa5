# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sequential kernels; same contracts as ``_pykernels``."""

from libc.math cimport sqrt, INFINITY

ctypedef double complex cplx


cdef inline double cabs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cabs(cplx z) noexcept nogil:
    return sqrt(cabs2(z))


def cauchy_sweep(const cplx[::1] a, const cplx[::1] b, const cplx[::1] f, cplx[::1] out):
    cdef Py_ssize_t j, n = out.shape[0]
    with nogil:
        for j in range(1, n - 1):
            out[j + 1] = f[j] - a[j] * out[j] - b[j] * out[j - 1]


cdef inline double cond2(cplx m11, cplx m12, cplx m21, cplx m22) noexcept nogil:
    cdef double fro = cabs2(m11) + cabs2(m12) + cabs2(m21) + cabs2(m22)
    cdef double det = cabs(m11 * m22 - m12 * m21)
    cdef double disc
    if det == 0.0:
        return INFINITY
    disc = fro * fro - 4.0 * det * det
    if disc < 0.0:
        disc = 0.0
    return 0.5 * (fro + sqrt(disc)) / det


def transfer_sweep(const cplx[::1] t11, const cplx[::1] t12, const cplx[::1] t21,
                   const cplx[::1] t22, const cplx[::1] forcing,
                   cplx[::1] out1, cplx[::1] out2, double limit, double cond_limit):
    cdef Py_ssize_t j, n = out1.shape[0]
    cdef Py_ssize_t written = n, overflow_at = -1, ill_at = -1
    cdef cplx u, v, p11, p12, p21, p22
    cdef cplx m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0
    cdef double scale, c, max_cond = 1.0
    with nogil:
        for j in range(n - 1):
            u = t11[j] * out1[j] + t12[j] * out2[j] + forcing[j]
            v = t21[j] * out1[j] + t22[j] * out2[j] - forcing[j]
            if not (cabs(u) <= limit and cabs(v) <= limit):
                overflow_at = j + 1
                written = j + 1
                break
            out1[j + 1] = u
            out2[j + 1] = v
            p11 = t11[j] * m11 + t12[j] * m21
            p12 = t11[j] * m12 + t12[j] * m22
            p21 = t21[j] * m11 + t22[j] * m21
            p22 = t21[j] * m12 + t22[j] * m22
            scale = max(max(cabs(p11), cabs(p12)), max(cabs(p21), cabs(p22)))
            if scale > 0.0:
                p11 = p11 / scale
                p12 = p12 / scale
                p21 = p21 / scale
                p22 = p22 / scale
            m11 = p11
            m12 = p12
            m21 = p21
            m22 = p22
            c = cond2(m11, m12, m21, m22)
            if c > max_cond:
                max_cond = c
            if ill_at < 0 and c > cond_limit:
                ill_at = j + 1
    return written, overflow_at, ill_at, max_cond


def riccati_forward_sweep(const cplx[::1] a, const cplx[::1] b, cplx[::1] out,
                          double upper, double lower):
    cdef Py_ssize_t j, n = out.shape[0], stop = -1
    cdef cplx nxt
    cdef double m
    with nogil:
        for j in range(n - 1):
            nxt = -b[j + 1] / out[j] - a[j + 1]
            out[j + 1] = nxt
            m = cabs(nxt)
            if not (lower <= m <= upper):
                stop = j + 1
                break
    return stop


def riccati_inverse_sweep(const cplx[::1] a, const cplx[::1] b, cplx[::1] out,
                          double upper, double lower, double pole):
    cdef Py_ssize_t j, n = out.shape[0], stop = -1, pole_at = -1
    cdef cplx den, nxt
    cdef double m
    with nogil:
        for j in range(n - 2, -1, -1):
            den = out[j + 1] + a[j + 1]
            if cabs(den) < pole:
                pole_at = j
                break
            nxt = -b[j + 1] / den
            out[j] = nxt
            m = cabs(nxt)
            if not (lower <= m <= upper):
                stop = j
                break
    return stop, pole_at


def cascade_prefix(const cplx[::1] s11, const cplx[::1] s12, const cplx[::1] s21,
                   const cplx[::1] s22, const cplx[::1] o1, const cplx[::1] o2,
                   cplx[::1] p11, cplx[::1] p12, cplx[::1] p21, cplx[::1] p22,
                   cplx[::1] q1, cplx[::1] q2, double eps):
    cdef Py_ssize_t j, n = s11.shape[0], bad = -1
    cdef cplx x11 = 0.0, x12 = 1.0, x21 = 1.0, x22 = 0.0, g1 = 0.0, g2 = 0.0
    cdef cplx d, inv, n11, n12, n21, n22, h1, h2
    with nogil:
        p11[0] = x11
        p12[0] = x12
        p21[0] = x21
        p22[0] = x22
        q1[0] = g1
        q2[0] = g2
        for j in range(1, n + 1):
            p11[j] = 0.0
            p12[j] = 0.0
            p21[j] = 0.0
            p22[j] = 0.0
            q1[j] = 0.0
            q2[j] = 0.0
        for j in range(n):
            d = 1.0 - x22 * s11[j]
            if cabs(d) < eps:
                bad = j
                break
            inv = 1.0 / d
            n11 = x11 + x12 * s11[j] * x21 * inv
            n12 = x12 * s12[j] * inv
            n21 = s21[j] * x21 * inv
            n22 = s22[j] + s21[j] * x22 * s12[j] * inv
            h1 = g1 + x12 * (o1[j] + s11[j] * g2) * inv
            h2 = o2[j] + s21[j] * (g2 + x22 * o1[j]) * inv
            x11 = n11
            x12 = n12
            x21 = n21
            x22 = n22
            g1 = h1
            g2 = h2
            p11[j + 1] = x11
            p12[j + 1] = x12
            p21[j + 1] = x21
            p22[j + 1] = x22
            q1[j + 1] = g1
            q2[j + 1] = g2
    return bad


def scatter_backsub(const cplx[::1] s11, const cplx[::1] s12, const cplx[::1] o1,
                    const cplx[::1] p21, const cplx[::1] p22, const cplx[::1] q2,
                    cplx left_in, cplx right_in, cplx[::1] y1, cplx[::1] y2):
    cdef Py_ssize_t j, n = s11.shape[0]
    cdef cplx fwd
    with nogil:
        y2[n] = right_in
        y1[n] = p21[n] * left_in + p22[n] * right_in + q2[n]
        for j in range(n - 1, -1, -1):
            fwd = p21[j] * left_in + q2[j]
            y2[j] = (s11[j] * fwd + s12[j] * y2[j + 1] + o1[j]) / (1.0 - s11[j] * p22[j])
            y1[j] = fwd + p22[j] * y2[j]
