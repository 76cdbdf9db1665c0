# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core; semantics identical to ``_pure.py``.

Scalar kernels over the skew-quaternionic coordinates of real 2x2 matrices.
The pure module is the reference; keep the two in lockstep.
"""

from libc.math cimport acos, acosh, cos, cosh, exp, hypot, log, sin, sinh, sqrt

BACKEND = "cython"

cdef double _SIN_EPS = 1e-8
cdef double _AC_SERIES_BAND = 0.05


cdef inline double _cos_big(double x) nogil:
    if x > _SIN_EPS:
        return cos(sqrt(x))
    if x < -_SIN_EPS:
        return cosh(sqrt(-x))
    return 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0


cdef inline double _sin_big(double x) nogil:
    cdef double r
    if x > _SIN_EPS:
        r = sqrt(x)
        return sin(r) / r
    if x < -_SIN_EPS:
        r = sqrt(-x)
        return sinh(r) / r
    return 1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0


cdef double _ac(double x) except? -1e308:
    cdef double w, acc, term
    cdef int n
    if x <= -1.0 + 1e-14:
        raise ValueError("AC argument on the cut (-inf, -1]")
    w = x - 1.0
    if w < _AC_SERIES_BAND and w > -_AC_SERIES_BAND:
        acc = 0.0
        term = 1.0
        for n in range(1, 14):
            acc += term
            term *= -w * n / (2 * n + 1.0)
        return acc + term
    if x < 1.0:
        return acos(x) / sqrt(1.0 - x * x)
    return acosh(x) / sqrt(x * x - 1.0)


def cos_big(double x):
    """Cos(x) = cos(sqrt x), hyperbolic for x < 0."""
    return _cos_big(x)


def sin_big(double x):
    """Sin(x) = sin(sqrt x)/sqrt x, hyperbolic for x < 0."""
    return _sin_big(x)


def ac(double x):
    """AC(x) = arccos(x)/sqrt(1-x^2) continued across 1; errors on the cut."""
    return _ac(x)


def op_norm(double a, double b, double c, double d):
    return hypot(a, b) + hypot(c, d)


def signed_conorm(double a, double b, double c, double d):
    if a == 0.0 and b == 0.0 and c == 0.0 and d == 0.0:
        return 0.0
    return hypot(a, b) - hypot(c, d)


def mul(double a1, double b1, double c1, double d1,
        double a2, double b2, double c2, double d2):
    """Product in skew-quaternionic coordinates."""
    return (
        a1 * a2 - b1 * b2 + c1 * c2 + d1 * d2,
        a1 * b2 + b1 * a2 - c1 * d2 + d1 * c2,
        a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2,
        a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
    )


def exp2(double a, double b, double c, double d):
    """exp(A) = e^a (Cos(D) Id + Sin(D) (A - a Id)), D = b^2 - c^2 - d^2."""
    cdef double s = exp(a)
    cdef double disc = b * b - c * c - d * d
    cdef double co = s * _cos_big(disc)
    cdef double si = s * _sin_big(disc)
    return (co, si * b, si * c, si * d)


def log2(double a, double b, double c, double d):
    """Principal log; raises ValueError when not log-able."""
    cdef double det = a * a + b * b - c * c - d * d
    cdef double sq, arg, f
    if det <= 0.0:
        raise ValueError("matrix is not log-able: det <= 0")
    sq = sqrt(det)
    arg = a / sq
    if arg <= -1.0 + 1e-14:
        raise ValueError("matrix is not log-able: negative spectrum")
    f = _ac(arg) / sq
    return (log(sq), f * b, f * c, f * d)


def log2_norm(double a, double b, double c, double d):
    """||log A||_2 without building the coordinates."""
    cdef double det = a * a + b * b - c * c - d * d
    cdef double sq, arg, f
    if det <= 0.0:
        raise ValueError("matrix is not log-able: det <= 0")
    sq = sqrt(det)
    arg = a / sq
    if arg <= -1.0 + 1e-14:
        raise ValueError("matrix is not log-able: negative spectrum")
    f = _ac(arg) / sq
    return hypot(log(sq), f * b) + f * hypot(c, d)


def bch_log_norm(double a1, double b1, double c1, double d1,
                 double a2, double b2, double c2, double d2):
    """||log(exp(A) exp(B))||_2, the hot kernel of the critical-BCH search."""
    cdef double s1 = exp(a1), s2 = exp(a2)
    cdef double co1 = s1 * _cos_big(b1 * b1 - c1 * c1 - d1 * d1)
    cdef double si1 = s1 * _sin_big(b1 * b1 - c1 * c1 - d1 * d1)
    cdef double co2 = s2 * _cos_big(b2 * b2 - c2 * c2 - d2 * d2)
    cdef double si2 = s2 * _sin_big(b2 * b2 - c2 * c2 - d2 * d2)
    cdef double ea = co1, eb = si1 * b1, ec = si1 * c1, ed = si1 * d1
    cdef double fa = co2, fb = si2 * b2, fc = si2 * c2, fd = si2 * d2
    cdef double pa = ea * fa - eb * fb + ec * fc + ed * fd
    cdef double pb = ea * fb + eb * fa - ec * fd + ed * fc
    cdef double pc = ea * fc + ec * fa - eb * fd + ed * fb
    cdef double pd = ea * fd + ed * fa + eb * fc - ec * fb
    return log2_norm(pa, pb, pc, pd)


def lexp_product(steps):
    """Ordered product of step exponentials; later steps multiply on the left.

    ``steps`` is a flat sequence [a0,b0,c0,d0,len0, a1,...]; the result is
    exp(A_{n-1} len_{n-1}) ... exp(A_0 len_0).
    """
    cdef double ra = 1.0, rb = 0.0, rc = 0.0, rd = 0.0
    cdef double a, b, c, d, ln, s, disc, co, si, ea, eb, ec, ed
    cdef double na, nb, nc, nd
    cdef Py_ssize_t i, n = len(steps) // 5
    cdef double[::1] view
    try:
        view = steps
    except (TypeError, ValueError):
        view = None
    if view is not None:
        for i in range(n):
            a = view[5 * i] * view[5 * i + 4]
            b = view[5 * i + 1] * view[5 * i + 4]
            c = view[5 * i + 2] * view[5 * i + 4]
            d = view[5 * i + 3] * view[5 * i + 4]
            s = exp(a)
            disc = b * b - c * c - d * d
            co = s * _cos_big(disc)
            si = s * _sin_big(disc)
            ea = co
            eb = si * b
            ec = si * c
            ed = si * d
            na = ea * ra - eb * rb + ec * rc + ed * rd
            nb = ea * rb + eb * ra - ec * rd + ed * rc
            nc = ea * rc + ec * ra - eb * rd + ed * rb
            nd = ea * rd + ed * ra + eb * rc - ec * rb
            ra, rb, rc, rd = na, nb, nc, nd
        return (ra, rb, rc, rd)
    for i in range(n):
        a = steps[5 * i] * steps[5 * i + 4]
        b = steps[5 * i + 1] * steps[5 * i + 4]
        c = steps[5 * i + 2] * steps[5 * i + 4]
        d = steps[5 * i + 3] * steps[5 * i + 4]
        ea, eb, ec, ed = exp2(a, b, c, d)
        na = ea * ra - eb * rb + ec * rc + ed * rd
        nb = ea * rb + eb * ra - ec * rd + ed * rc
        nc = ea * rc + ec * ra - eb * rd + ed * rb
        nd = ea * rd + ed * ra + eb * rc - ec * rb
        ra, rb, rc, rd = na, nb, nc, nd
    return (ra, rb, rc, rd)
