"""Pure-Python sequential kernels.

Reference implementation of the inner loops; ``_ckernels.pyx`` mirrors every
function here with the same signature and semantics.  All array arguments are
1-D ``complex128`` numpy arrays.  Outputs are written in place and status is
returned as plain integers (``-1`` meaning "did not happen").
"""

import math


def cauchy_sweep(a, b, f, out):
    """Forward three-term sweep ``out[j+1] = f[j] - a[j]*out[j] - b[j]*out[j-1]``.

    ``out[0]`` and ``out[1]`` carry the Cauchy data.
    """
    av, bv, fv = a.tolist(), b.tolist(), f.tolist()
    y = out.tolist()
    for j in range(1, len(y) - 1):
        y[j + 1] = fv[j] - av[j] * y[j] - bv[j] * y[j - 1]
    out[:] = y


def _cond2(m11, m12, m21, m22):
    fro = abs(m11) ** 2 + abs(m12) ** 2 + abs(m21) ** 2 + abs(m22) ** 2
    det = abs(m11 * m22 - m12 * m21)
    if det == 0.0:
        return math.inf
    # sigma_max / sigma_min from trace and determinant of M^H M
    disc = max(fro * fro - 4.0 * det * det, 0.0)
    smax2 = 0.5 * (fro + math.sqrt(disc))
    return smax2 / det


def transfer_sweep(t11, t12, t21, t22, forcing, out1, out2, limit, cond_limit):
    """Propagate ``s_{j+1} = T_j s_j + (F_j, -F_j)``.

    ``out1[0]``, ``out2[0]`` hold the initial state.  Stops before writing the
    first state whose magnitude exceeds ``limit``.  Tracks the condition number
    of the accumulated (renormalized) transfer product.

    Returns ``(written, overflow_at, ill_at, max_cond)`` where ``written`` is
    the number of valid states, ``overflow_at`` the first offending state index
    and ``ill_at`` the first state at which the condition number passed
    ``cond_limit``.
    """
    a11, a12, a21, a22 = t11.tolist(), t12.tolist(), t21.tolist(), t22.tolist()
    fv = forcing.tolist()
    n = len(out1)
    y1 = out1.tolist()
    y2 = out2.tolist()
    m11, m12, m21, m22 = 1.0 + 0j, 0j, 0j, 1.0 + 0j
    max_cond = 1.0
    ill_at = -1
    overflow_at = -1
    written = n
    for j in range(n - 1):
        u = a11[j] * y1[j] + a12[j] * y2[j] + fv[j]
        v = a21[j] * y1[j] + a22[j] * y2[j] - fv[j]
        if not (abs(u) <= limit and abs(v) <= limit):
            overflow_at = j + 1
            written = j + 1
            break
        y1[j + 1] = u
        y2[j + 1] = v
        p11 = a11[j] * m11 + a12[j] * m21
        p12 = a11[j] * m12 + a12[j] * m22
        p21 = a21[j] * m11 + a22[j] * m21
        p22 = a21[j] * m12 + a22[j] * m22
        scale = max(abs(p11), abs(p12), abs(p21), abs(p22))
        if scale > 0.0:
            p11, p12, p21, p22 = p11 / scale, p12 / scale, p21 / scale, p22 / scale
        m11, m12, m21, m22 = p11, p12, p21, p22
        c = _cond2(m11, m12, m21, m22)
        if c > max_cond:
            max_cond = c
        if ill_at < 0 and c > cond_limit:
            ill_at = j + 1
    out1[:written] = y1[:written]
    out2[:written] = y2[:written]
    return written, overflow_at, ill_at, max_cond


def riccati_forward_sweep(a, b, out, upper, lower):
    """``out[j+1] = -b[j+1]/out[j] - a[j+1]`` from the seed in ``out[0]``.

    Returns the index of the first value outside ``[lower, upper]`` in
    modulus (that value is written), or -1.
    """
    av, bv = a.tolist(), b.tolist()
    r = out.tolist()
    n = len(r)
    stop = -1
    for j in range(n - 1):
        nxt = -bv[j + 1] / r[j] - av[j + 1]
        r[j + 1] = nxt
        m = abs(nxt)
        if not (lower <= m <= upper):
            stop = j + 1
            break
    out[:] = r
    return stop


def riccati_inverse_sweep(a, b, out, upper, lower, pole):
    """``out[j] = -b[j+1]/(out[j+1] + a[j+1])`` downward from ``out[-1]``.

    Returns ``(stop, pole_at)``: ``stop`` is the lowest index written when a
    value left ``[lower, upper]`` (else -1); ``pole_at`` is the index ``j``
    whose denominator fell below ``pole`` (else -1).
    """
    av, bv = a.tolist(), b.tolist()
    r = out.tolist()
    n = len(r)
    stop = -1
    pole_at = -1
    for j in range(n - 2, -1, -1):
        den = r[j + 1] + av[j + 1]
        if abs(den) < pole:
            pole_at = j
            break
        nxt = -bv[j + 1] / den
        r[j] = nxt
        m = abs(nxt)
        if not (lower <= m <= upper):
            stop = j
            break
    out[:] = r
    return stop, pole_at


def cascade_prefix(s11, s12, s21, s22, o1, o2, p11, p12, p21, p22, q1, q2, eps):
    """Left-to-right star-product accumulation of scatter steps.

    Step ``j`` maps ``(x_j, w_{j+1}) -> (w_j, x_{j+1})`` with offsets
    ``(o1[j], o2[j])``.  Prefix ``j`` (arrays of length ``n+1``) is the
    composite of steps ``0..j-1``; prefix 0 is the identity.  Returns the index
    of the first step whose coupling denominator ``|1 - A22*B11|`` is below
    ``eps``, or -1.
    """
    b11, b12, b21, b22 = s11.tolist(), s12.tolist(), s21.tolist(), s22.tolist()
    c1, c2 = o1.tolist(), o2.tolist()
    n = len(b11)
    r11 = [0j] * (n + 1)
    r12 = [0j] * (n + 1)
    r21 = [0j] * (n + 1)
    r22 = [0j] * (n + 1)
    e1 = [0j] * (n + 1)
    e2 = [0j] * (n + 1)
    x11, x12, x21, x22, g1, g2 = 0j, 1.0 + 0j, 1.0 + 0j, 0j, 0j, 0j
    r12[0] = x12
    r21[0] = x21
    bad = -1
    for j in range(n):
        d = 1.0 - x22 * b11[j]
        if abs(d) < eps:
            bad = j
            break
        inv = 1.0 / d
        n11 = x11 + x12 * b11[j] * x21 * inv
        n12 = x12 * b12[j] * inv
        n21 = b21[j] * x21 * inv
        n22 = b22[j] + b21[j] * x22 * b12[j] * inv
        h1 = g1 + x12 * (c1[j] + b11[j] * g2) * inv
        h2 = c2[j] + b21[j] * (g2 + x22 * c1[j]) * inv
        x11, x12, x21, x22, g1, g2 = n11, n12, n21, n22, h1, h2
        r11[j + 1], r12[j + 1], r21[j + 1], r22[j + 1] = x11, x12, x21, x22
        e1[j + 1], e2[j + 1] = g1, g2
    p11[:] = r11
    p12[:] = r12
    p21[:] = r21
    p22[:] = r22
    q1[:] = e1
    q2[:] = e2
    return bad


def scatter_backsub(s11, s12, o1, p21, p22, q2, left_in, right_in, y1, y2):
    """Recover node states from prefix composites by a backward sweep.

    ``y1``/``y2`` have length ``n+1`` (nodes); ``y2[n] = right_in`` and
    ``y1[0] = left_in`` on exit.
    """
    b11, b12, c1 = s11.tolist(), s12.tolist(), o1.tolist()
    r21, r22, e2 = p21.tolist(), p22.tolist(), q2.tolist()
    n = len(b11)
    w = [0j] * (n + 1)
    x = [0j] * (n + 1)
    w[n] = right_in
    x[n] = r21[n] * left_in + r22[n] * right_in + e2[n]
    for j in range(n - 1, -1, -1):
        fwd = r21[j] * left_in + e2[j]
        w[j] = (b11[j] * fwd + b12[j] * w[j + 1] + c1[j]) / (1.0 - b11[j] * r22[j])
        x[j] = fwd + r22[j] * w[j]
    y1[:] = x
    y2[:] = w
