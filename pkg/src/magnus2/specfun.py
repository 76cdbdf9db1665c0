"""Scalar special functions behind the closed forms.

Cos/Sin are the entire functions with Cos(x) = cos(sqrt x) etc.; AC is the
analytic continuation of arccos(x)/sqrt(1-x^2); the Cot-rational family
C, D, W, P, G, L, X carries the coefficients of the Schur and moment
formulas; E and F are the analytic extensions of 1/sqrt(D) and C/sqrt(D).

Removable singularities are evaluated by Taylor series inside a radius-0.05
band of the singular point.  Series coefficients come from exact recurrences
evaluated at import time (AC, AS) or from a once-derived table (the rest);
each table states its defining expression.
"""

from __future__ import annotations

import cmath
import math
from enum import Enum
from fractions import Fraction

from . import config
from . import _backend as _k

__all__ = [
    "cos_big",
    "sin_big",
    "ac",
    "as_at",
    "ReFamily",
    "re_family",
    "script_ef",
    "ell",
    "jj_integrand",
    "j_upper",
    "g_loxo",
    "j_pi_constant",
    "quad_gk",
]

_PI2 = math.pi ** 2
_SERIES_BAND = 0.05


def cos_big(z):
    """Cos(z): cos(sqrt z) for z > 0, cosh(sqrt -z) for z < 0, entire."""
    if isinstance(z, complex):
        return cmath.cos(cmath.sqrt(z))
    return _k.cos_big(z)


def sin_big(z):
    """Sin(z): sin(sqrt z)/sqrt z continued over the removable zero at 0."""
    if isinstance(z, complex):
        if abs(z) < 1e-8:
            return 1.0 - z / 6.0 + z * z / 120.0
        w = cmath.sqrt(z)
        return cmath.sin(w) / w
    return _k.sin_big(z)


# --- AC and friends --------------------------------------------------------

# Taylor coefficients of AC at z=1 follow a_0 = 1, a_n = -a_{n-1} n/(2n+1)
# (plug the series into (1-z^2) AC' = z AC - 1 and match powers).
_AC1 = [Fraction(1)]
for _n in range(1, 16):
    _AC1.append(-_AC1[-1] * _n / (2 * _n + 1))
_AC1_F = [float(c) for c in _AC1]


def _horner(coeffs, w):
    acc = 0.0 if not isinstance(w, complex) else 0j
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


def ac(z):
    """AC(z), analytic on C minus the cut (-inf, -1].

    Real axis: arccos(x)/sqrt(1-x^2) on (-1,1), 1 at 1, arcosh above 1.
    Raises ValueError within 1e-14 of the cut.
    """
    if not isinstance(z, complex):
        return _k.ac(z)
    if abs(z.imag) < 1e-14 and z.real <= -1.0 + 1e-14:
        raise ValueError("AC argument on the cut (-inf, -1]")
    if z.imag == 0.0:
        return complex(_k.ac(z.real))
    w = z - 1.0
    if abs(w) < _SERIES_BAND:
        return _horner(_AC1_F, w)
    if z.real < 1.0:
        return cmath.acos(z) / cmath.sqrt(1.0 - z * z)
    return cmath.acosh(z) / (cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0))


# Series of AS at z=1 from AS^2 = (AC^2-1)/(1-z^2): divide the AC^2-1 series
# by -w(2+w), then take the power-series square root.
def _as_series():
    n = len(_AC1)
    ac2 = [Fraction(0)] * n
    for i, a in enumerate(_AC1):
        for j, b in enumerate(_AC1):
            if i + j < n:
                ac2[i + j] += a * b
    ac2[0] -= 1                      # AC^2 - 1, vanishes at w=0
    num = ac2[1:] + [Fraction(0)]    # divide by w
    q = [Fraction(0)] * n            # divide by -(2+w)
    for i in range(n):
        s = num[i] + (q[i - 1] if i else 0)
        q[i] = -s / 2
    s = [math.sqrt(float(q[0]))] + [0.0] * (n - 1)
    for m in range(1, n):
        acc = float(q[m]) - sum(s[i] * s[m - i] for i in range(1, m))
        s[m] = acc / (2 * s[0])
    return s


_AS1_F = _as_series()


def as_at(z):
    """(AS(z), AT(z)) with AS = sqrt((AC^2-1)/(1-z^2)) and AT = (AC-1)/AS.

    The removable singularity of both quotients at z=1 is handled by the
    series; AS(1) = sqrt(3)/3 and AT(1) = 0.
    """
    iscomplex = isinstance(z, complex)
    w = z - 1.0
    if abs(w) < _SERIES_BAND:
        as_val = _horner(_AS1_F, w)
        # AC - 1 without cancellation: skip the constant term
        acm1 = _horner([0.0] + _AC1_F[1:], w)
        return as_val, acm1 / as_val
    a = ac(z)
    if iscomplex:
        as_val = cmath.sqrt((a * a - 1.0) / (1.0 - z * z))
    else:
        as_val = math.sqrt((a * a - 1.0) / (1.0 - z * z))
    return as_val, (a - 1.0) / as_val


# --- the Cot-rational family ----------------------------------------------


class ReFamily(Enum):
    """Tags of the auxiliary meromorphic functions, with pole order at (k pi)^2."""

    C = ("C", 1)
    D = ("D", 2)
    W = ("W", 2)
    P = ("P", 1)
    G = ("G", 3)
    L = ("L", 3)
    X = ("X", 3)

    def __init__(self, tag, pole_order):
        self.tag = tag
        self.pole_order = pole_order


# Taylor coefficients at 0, exact rationals from the Cot expansion
# (derive once: Cot = Cos/Sin as series, then the rational displays below).
_FAM_SERIES = {
    "C": [Fraction(1, 3), Fraction(1, 45), Fraction(2, 945), Fraction(1, 4725), Fraction(2, 93555), Fraction(1382, 638512875), Fraction(4, 18243225), Fraction(3617, 162820783125), Fraction(87734, 38979295480125), Fraction(349222, 1531329465290625), Fraction(310732, 13447856940643125), Fraction(472728182, 201919571963756521875), Fraction(2631724, 11094481976030578125), Fraction(13571120588, 564653660170076273671875)],
    "D": [Fraction(1, 3), Fraction(1, 15), Fraction(2, 189), Fraction(1, 675), Fraction(2, 10395), Fraction(1382, 58046625), Fraction(4, 1403325), Fraction(3617, 10854718875), Fraction(87734, 2292899734125), Fraction(349222, 80596287646875), Fraction(310732, 640374140030625), Fraction(472728182, 8779111824511153125), Fraction(2631724, 443779279041223125), Fraction(13571120588, 20913098524817639765625)],
    "W": [Fraction(2, 45), Fraction(8, 945), Fraction(2, 1575), Fraction(16, 93555), Fraction(2764, 127702575), Fraction(16, 6081075), Fraction(7234, 23260111875), Fraction(1403744, 38979295480125), Fraction(698444, 170147718365625), Fraction(1242928, 2689571388128625), Fraction(945456364, 18356324723977865625), Fraction(21053792, 3698160658676859375), Fraction(27142241176, 43434896936159713359375), Fraction(55141384166432, 808696972095583239152859375)],
    "P": [Fraction(1, 15), Fraction(2, 315), Fraction(1, 1575), Fraction(2, 31185), Fraction(1382, 212837625), Fraction(4, 6081075), Fraction(3617, 54273594375), Fraction(87734, 12993098493375), Fraction(349222, 510443155096875), Fraction(310732, 4482618980214375), Fraction(472728182, 67306523987918840625), Fraction(2631724, 3698160658676859375), Fraction(13571120588, 188217886723358757890625), Fraction(13785346041608, 1886959601556360891356671875)],
    "G": [Fraction(1, 15), Fraction(4, 189), Fraction(1, 225), Fraction(8, 10395), Fraction(1382, 11609325), Fraction(8, 467775), Fraction(3617, 1550674125), Fraction(701872, 2292899734125), Fraction(349222, 8955143071875), Fraction(621464, 128074828006125), Fraction(472728182, 798101074955559375), Fraction(10526896, 147926426347074375), Fraction(13571120588, 1608699886524433828125), Fraction(27570692083216, 27886102486054594453546875)],
    "L": [Fraction(1, 135), Fraction(13, 4725), Fraction(1, 1575), Fraction(5752, 49116375), Fraction(12098, 638512875), Fraction(599, 212837625), Fraction(161573, 410308373475), Fraction(565220596, 10719306257034375), Fraction(268078, 39264858084375), Fraction(107641018, 125027598739168125), Fraction(21457981154, 201919571963756521875), Fraction(442598528, 34340063259142265625), Fraction(1406373622281668, 913044968495013334527421875), Fraction(437366537774885707, 2405873491984360136479756640625)],
    "X": [Fraction(16, 2835), Fraction(8, 4725), Fraction(32, 93555), Fraction(22112, 383107725), Fraction(32, 3648645), Fraction(28936, 23260111875), Fraction(2807488, 16705412348625), Fraction(11175104, 510443155096875), Fraction(2485856, 896523796042875), Fraction(3781825456, 11013794834386719375), Fraction(42107584, 1008589270548234375), Fraction(217137929408, 43434896936159713359375), Fraction(110282768332864, 186622378175903824419890625), Fraction(61674568329736, 892717436728890588675234375)],
}
_FAM_SERIES_F = {k: [float(c) for c in v] for k, v in _FAM_SERIES.items()}


def _cot_big(x):
    """Cot(x) = Cos(x)/Sin(x); caller keeps clear of the poles."""
    return cos_big(x) / sin_big(x)


def _pole_distance(x):
    if x < 0.5:
        return float("inf")
    k = max(1, round(math.sqrt(x) / math.pi))
    return min(abs(x - (k * math.pi) ** 2), abs(x - ((k + 1) * math.pi) ** 2))


def re_family(tag, x):
    """Evaluate one of C, D, W, P, G, L, X at real x.

    Primary domain is x < pi^2 where all seven are positive and increasing;
    evaluation beyond is allowed away from the poles at (k pi)^2.  Within
    1e-8 of a pole raises ValueError.  The Cot-rational forms cancel
    catastrophically near 0 (the /x^3 members lose ~7 digits at |x| = 0.05),
    so the series band is widened to |x| < 0.25 with 14 exact terms.
    """
    if isinstance(tag, str):
        tag = ReFamily[tag]
    if _pole_distance(x) < 1e-8:
        raise ValueError(f"{tag.tag} evaluated within 1e-8 of a pole")
    if abs(x) < 0.25:
        return _horner(_FAM_SERIES_F[tag.tag], x)
    t = _cot_big(x)
    if tag is ReFamily.C:
        return (1.0 - t) / x
    if tag is ReFamily.D:
        return (t * t + x - 1.0) / x
    if tag is ReFamily.W:
        return (t * t + t + x - 2.0) / (x * x)
    if tag is ReFamily.P:
        return (-3.0 * t - x + 3.0) / (x * x)
    if tag is ReFamily.G:
        return (-t ** 3 - x * t + 1.0) / (x * x)
    if tag is ReFamily.L:
        return (-2.0 * t ** 3 - x * t * t + 3.0 * t * t - 2.0 * x * t
                - x * x + 3.0 * x - 1.0) / (x ** 3)
    if tag is ReFamily.X:
        return (-2.0 * t ** 3 - 3.0 * t * t - 2.0 * x * t - 3.0 * t
                - 3.0 * x + 8.0) / (3.0 * x ** 3)
    raise ValueError(f"unknown family tag {tag!r}")


# Series at 0 of h(z) = (1 - Sin^2)/z and g(z) = (Sin - Cos)/z (both entire;
# E = Sin/sqrt(h) and F = g/sqrt(h) then have no poles left to cancel).
_H_SERIES = [1 / 3, -2 / 45, 1 / 315, -2 / 14175, 2 / 467775, -4 / 42567525,
             1 / 638512875, -2 / 97692469875, 2 / 9280784638125,
             -4 / 2143861251406875, 2 / 147926426347074375,
             -4 / 48076088562799171875, 4 / 9086380738369043484375]
_G_SERIES = [1 / 3, -1 / 30, 1 / 840, -1 / 45360, 1 / 3991680, -1 / 518918400,
             1 / 93405312000, -1 / 22230464256000, 1 / 6758061133824000,
             -1 / 2554547108585472000, 1 / 1175091669949317120000,
             -1 / 646300418472124416000000, 1 / 418802671169936621568000000]


def script_ef(x):
    """(E(x), F(x)): analytic extensions of 1/sqrt(D) and C/sqrt(D) to all of R.

    E = Sin/sqrt(h), F = (Sin-Cos)/(z sqrt(h)) with h = (1-Sin^2)/z > 0 on R;
    this bakes in the sign flip sgn(sin sqrt x) beyond pi^2.  E(0) = sqrt(3),
    F(0) = 1/sqrt(3), E(pi^2) = 0, F(pi^2) = 1/pi; both strictly decreasing
    up to pi^2.
    """
    if abs(x) < 0.5:
        h = _horner(_H_SERIES, x)
        g = _horner(_G_SERIES, x)
    else:
        s = sin_big(x)
        h = (1.0 - s * s) / x
        g = (s - cos_big(x)) / x
    rh = math.sqrt(h)
    return sin_big(x) / rh, g / rh


# --- adaptive Gauss-Kronrod quadrature -------------------------------------

_K15_NODES = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_K15_WEIGHTS = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_G7_WEIGHTS = {
    1: 0.129484966168869693270611432679082,
    3: 0.279705391489276667901467771423780,
    5: 0.381830050505118944950369775488975,
    7: 0.417959183673469387755102040816327,
}


def _gk15(f, a, b):
    h = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    k = 0.0
    g = 0.0
    for i, x in enumerate(_K15_NODES):
        if x == 0.0:
            fv = f(mid)
            k += _K15_WEIGHTS[i] * fv
            g += _G7_WEIGHTS[7] * fv
        else:
            f1 = f(mid - h * x)
            f2 = f(mid + h * x)
            k += _K15_WEIGHTS[i] * (f1 + f2)
            if i in _G7_WEIGHTS:
                g += _G7_WEIGHTS[i] * (f1 + f2)
    k *= h
    g *= h
    err = abs(k - g)
    return k, (200.0 * err) ** 1.5 if err < 1.0 else err


def quad_gk(f, a, b, abs_tol=None, rel_tol=None, max_splits=2000):
    """Adaptive Gauss7/Kronrod15 integral of f over [a, b].

    Globally adaptive: the interval with the largest error estimate is
    bisected until the summed estimate meets max(abs_tol, rel_tol*|I|).
    """
    if abs_tol is None:
        abs_tol = config.QUAD_ABS_TOL
    if rel_tol is None:
        rel_tol = config.QUAD_REL_TOL
    if a == b:
        return 0.0
    val, err = _gk15(f, a, b)
    segments = [(err, a, b, val)]
    for _ in range(max_splits):
        total = sum(s[3] for s in segments)
        total_err = sum(s[0] for s in segments)
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return total
        segments.sort(key=lambda s: s[0])
        _, sa, sb, _ = segments.pop()
        smid = 0.5 * (sa + sb)
        v1, e1 = _gk15(f, sa, smid)
        v2, e2 = _gk15(f, smid, sb)
        segments.append((e1, sa, smid, v1))
        segments.append((e2, smid, sb, v2))
    raise RuntimeError("quadrature did not converge")


# --- growth-estimate functions ---------------------------------------------


def ell(p):
    """Solve ell + p sin(ell) = pi/2 on (0, pi/2); decreasing in p."""
    if p <= 0:
        raise ValueError("ell requires p > 0")
    target = math.pi / 2

    def f(x):
        return x + p * math.sin(x) - target

    lo, hi = 0.0, target
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    for _ in range(60):
        step = f(x) / (1.0 + p * math.cos(x))
        x -= step
        if abs(step) < 1e-15:
            break
    return x


def jj_integrand(p, t):
    """JJ(p,t) = (p + sin(p sin t) - cos(p sin t) p sin t) / (2 sin(p sin t))."""
    s = p * math.sin(t)
    return (p + math.sin(s) - math.cos(s) * s) / (2.0 * math.sin(s))


def j_upper(p):
    """J(p): the norm bound for log of conformal ranges inside exp D(0,p)."""
    if not 0.0 < p < math.pi:
        raise ValueError("j_upper requires 0 < p < pi")
    lp = ell(p)
    return quad_gk(lambda t: jj_integrand(p, t), lp, math.pi - lp,
                   abs_tol=1e-10, rel_tol=1e-9)


def g_loxo(p):
    """G(p) = AC(cosh(pi-p) cos p) (sinh(pi-p) + cosh(pi-p) sin p) on [pi/2, pi).

    Near p = pi the AC argument is -1 + eta with eta = (pi-p)^4/6 - ...;
    both eta and AC(-1 + eta) are then evaluated from series to dodge the
    double-precision cliff next to the cut.
    """
    if not math.pi / 2 <= p < math.pi:
        raise ValueError("g_loxo requires pi/2 <= p < pi")
    a = math.pi - p
    scale = math.sinh(a) + math.cosh(a) * math.sin(p)
    if a > 0.05:
        return ac(math.cosh(a) * math.cos(p)) * scale
    # cosh(x) cos(x) = sum (-4)^k x^{4k}/(4k)!; eta = 1 - cosh(a) cos(a)
    eta = a ** 4 / 6.0 - a ** 8 / 2520.0 + a ** 12 / 7484400.0
    # AC(-1+eta) = (pi - acos(1-eta)) / sqrt(eta (2-eta))
    root = math.sqrt(2.0 * eta) * (1.0 + eta / 12.0 + 3.0 * eta * eta / 160.0)
    return (math.pi - root) / math.sqrt(eta * (2.0 - eta)) * scale


# Taylor series (even powers of u = t - pi/2) of JJ(pi, t) - 2/cos(t)^2;
# derived once at 60-digit precision from the defining expression.
_JPI_SERIES = [-0.5, -0.5362335167120566091, 0.4246696431047279932,
               -0.0895439241918350152, 0.0766494200822885206,
               -0.0243141608337040491, 0.0199172253163122081]


def _jpi_integrand(t):
    u = t - math.pi / 2
    if abs(u) < _SERIES_BAND:
        return _horner(_JPI_SERIES, u * u)
    return jj_integrand(math.pi, t) - 2.0 / math.cos(t) ** 2


def j_pi_constant():
    """J_pi = -4 tan(ell(pi)) + int (JJ(pi,t) - 2/cos^2 t) dt; about -3.0222."""
    lp = ell(math.pi)
    integral = quad_gk(_jpi_integrand, lp, math.pi - lp,
                       abs_tol=1e-10, rel_tol=1e-9)
    return -4.0 * math.tan(lp) + integral
