"""Pure-Python twin of the compiled kernel core.

Every function here operates on the four skew-quaternionic coordinates of a
real 2x2 matrix, A = a*Id + b*I~ + c*J~ + d*K~, passed as plain floats, and
mirrors ``_core.pyx`` exactly.  The backend selector imports one of the two
modules; higher layers never know which.
"""

import math

BACKEND = "pure"

_SIN_EPS = 1e-8          # |x| below this uses the series of Sin/Cos
_AC_SERIES_BAND = 0.05   # |x-1| below this uses the Taylor series of AC
_PARABOLIC_EPS = 1e-12   # |D| below this * scale^2 uses the D=0 route


def cos_big(x):
    """Cos(x) = cos(sqrt x), hyperbolic for x < 0."""
    if x > _SIN_EPS:
        return math.cos(math.sqrt(x))
    if x < -_SIN_EPS:
        return math.cosh(math.sqrt(-x))
    return 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0


def sin_big(x):
    """Sin(x) = sin(sqrt x)/sqrt x, hyperbolic for x < 0."""
    if x > _SIN_EPS:
        r = math.sqrt(x)
        return math.sin(r) / r
    if x < -_SIN_EPS:
        r = math.sqrt(-x)
        return math.sinh(r) / r
    return 1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0


def ac(x):
    """AC(x) = arccos(x)/sqrt(1-x^2) on (-1,1), 1 at 1, arcosh-based above 1.

    Near x = 1 the quotient cancels; a Taylor series (coefficients from the
    recurrence a_n = -a_{n-1} * n/(2n+1)) takes over inside a 0.05 band.
    Raises ValueError on the cut (-inf, -1].
    """
    if x <= -1.0 + 1e-14:
        raise ValueError("AC argument on the cut (-inf, -1]")
    w = x - 1.0
    if abs(w) < _AC_SERIES_BAND:
        acc = 0.0
        term = 1.0
        for n in range(1, 14):
            acc += term
            term *= -w * n / (2 * n + 1.0)
        return acc + term
    if x < 1.0:
        return math.acos(x) / math.sqrt(1.0 - x * x)
    return math.acosh(x) / math.sqrt(x * x - 1.0)


def op_norm(a, b, c, d):
    return math.hypot(a, b) + math.hypot(c, d)


def signed_conorm(a, b, c, d):
    if a == 0.0 and b == 0.0 and c == 0.0 and d == 0.0:
        return 0.0
    return math.hypot(a, b) - math.hypot(c, d)


def mul(a1, b1, c1, d1, a2, b2, c2, d2):
    """Product in skew-quaternionic coordinates."""
    return (
        a1 * a2 - b1 * b2 + c1 * c2 + d1 * d2,
        a1 * b2 + b1 * a2 - c1 * d2 + d1 * c2,
        a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2,
        a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
    )


def exp2(a, b, c, d):
    """exp(A) = e^a (Cos(D) Id + Sin(D) (A - a Id)), D = b^2 - c^2 - d^2."""
    s = math.exp(a)
    disc = b * b - c * c - d * d
    co = s * cos_big(disc)
    si = s * sin_big(disc)
    return (co, si * b, si * c, si * d)


def log2(a, b, c, d):
    """Principal log via (log sqrt det) Id + AC(tr/(2 sqrt det))/sqrt det * (A - a Id).

    Raises ValueError when A is not log-able (det <= 0 or the AC argument
    falls on the cut).
    """
    det = a * a + b * b - c * c - d * d
    if det <= 0.0:
        raise ValueError("matrix is not log-able: det <= 0")
    sq = math.sqrt(det)
    arg = a / sq
    if arg <= -1.0 + 1e-14:
        raise ValueError("matrix is not log-able: negative spectrum")
    f = ac(arg) / sq
    return (math.log(sq), f * b, f * c, f * d)


def log2_norm(a, b, c, d):
    """||log A||_2 without building the coordinates."""
    det = a * a + b * b - c * c - d * d
    if det <= 0.0:
        raise ValueError("matrix is not log-able: det <= 0")
    sq = math.sqrt(det)
    arg = a / sq
    if arg <= -1.0 + 1e-14:
        raise ValueError("matrix is not log-able: negative spectrum")
    f = ac(arg) / sq
    return math.hypot(math.log(sq), f * b) + f * math.hypot(c, d)


def bch_log_norm(a1, b1, c1, d1, a2, b2, c2, d2):
    """||log(exp(A) exp(B))||_2, the hot kernel of the critical-BCH search."""
    ea = exp2(a1, b1, c1, d1)
    eb = exp2(a2, b2, c2, d2)
    p = mul(ea[0], ea[1], ea[2], ea[3], eb[0], eb[1], eb[2], eb[3])
    return log2_norm(p[0], p[1], p[2], p[3])


def lexp_product(steps):
    """Ordered product of step exponentials; later steps multiply on the left.

    ``steps`` is a flat sequence [a0,b0,c0,d0,len0, a1,...]; the result is
    exp(A_{n-1} len_{n-1}) ... exp(A_0 len_0), the time-ordered exponential
    of the piecewise-constant measure.
    """
    ra, rb, rc, rd = 1.0, 0.0, 0.0, 0.0
    n = len(steps) // 5
    for i in range(n):
        a = steps[5 * i]
        b = steps[5 * i + 1]
        c = steps[5 * i + 2]
        d = steps[5 * i + 3]
        ln = steps[5 * i + 4]
        ea, eb, ec, ed = exp2(a * ln, b * ln, c * ln, d * ln)
        ra, rb, rc, rd = mul(ea, eb, ec, ed, ra, rb, rc, rd)
    return (ra, rb, rc, rd)
