"""Closed-form Schur derivatives, the 2x2 BCH formula, commutator-coefficient
extraction, and the moment matrices of the norm-of-log functionals.

Conventions: D_A and T_{A,v} are the scalar invariants from ``m2``;
C(x), D(x), W(x), P(x) are the Cot-rational functions from ``specfun``.
The first Schur derivatives are

    d/dt log(exp(A) exp(t v))|_0 = v + [A,v]/2 + C(D_A)/4 [A,[A,v]]

and its left mirror with -1/2; everything else in this module is built
from those and the exp/log closed forms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import config
from .m2 import M2C, M2R, d_disc, op_norm, t_polar
from .specfun import (ReFamily, _FAM_SERIES_F, _horner, ac, cos_big,
                      quad_gk, re_family, script_ef, sin_big)
from .explog import exp2, log2

__all__ = [
    "schur_right",
    "schur_left",
    "schur_second_right",
    "schur_second_left",
    "bch_closed",
    "BchCoeffs",
    "bch_coeffs",
    "MomentVector",
    "moment_mr",
    "moment_ml",
    "moment_mr_matrix",
    "moment_ml_matrix",
    "moment_mrl_complex",
    "x_plus",
    "moment_nr",
    "moment_atlas",
    "moment_jacobian_hp",
    "moment_jacobian_ahp",
    "cogradient_second_derivative",
    "moment_degenerate",
]


def _fam(tag, z):
    """Family member at a possibly complex argument (complex Cot-rational)."""
    if not isinstance(z, complex):
        return re_family(tag, z)
    if abs(z) < 0.25:
        return _horner(_FAM_SERIES_F[tag], z)
    t = cos_big(z) / sin_big(z)
    if tag == "C":
        return (1.0 - t) / z
    if tag == "D":
        return (t * t + z - 1.0) / z
    if tag == "W":
        return (t * t + t + z - 2.0) / (z * z)
    if tag == "P":
        return (-3.0 * t - z + 3.0) / (z * z)
    raise ValueError(tag)


def _check_strip(A):
    """spec(A) inside {|Im z| < pi}, i.e. D_A off [pi^2, inf) for real A."""
    dA = d_disc(A)
    if isinstance(A, M2R):
        if dA >= math.pi ** 2:
            raise ValueError("spectral strip violated: D_A >= pi^2")
    else:
        root = cmath.sqrt(-dA)
        if abs(root.imag) >= math.pi:
            raise ValueError("spectral strip violated")
    return dA


def schur_right(A, v):
    """d/dt log(exp(A) exp(t v)) at t = 0."""
    dA = _check_strip(A)
    com = A.commutator(v)
    return v + 0.5 * com + (_fam("C", dA) / 4.0) * A.commutator(com)


def schur_left(A, v):
    """d/dt log(exp(t v) exp(A)) at t = 0."""
    dA = _check_strip(A)
    com = A.commutator(v)
    return v + (-0.5) * com + (_fam("C", dA) / 4.0) * A.commutator(com)


def schur_second_right(A, v):
    """Second t-derivative of log(exp(A) exp(t v)) at t = 0.

    The tri-bracket absorptions [A,[v,[v,A]]] = -4 T [A,v] and
    [A,[A,[v,[v,A]]]] = -4 T [A,[A,v]] keep every coefficient finite.
    """
    return _schur_second(A, v, +1.0)


def schur_second_left(A, v):
    """Second t-derivative of log(exp(t v) exp(A)) at t = 0."""
    return _schur_second(A, v, -1.0)


def _schur_second(A, v, sign):
    dA = _check_strip(A)
    T = t_polar(A, v)
    cc = _fam("C", dA)
    dd = _fam("D", dA)
    ww = _fam("W", dA)
    pp = _fam("P", dA)
    com = A.commutator(v)
    e2 = A.commutator(com)
    e3 = v.commutator(v.commutator(A))
    out = ((cc + dd) / 4.0) * e3
    out = out + (sign * cc * (-T)) * com            # sign * C/4 * (-4T)[A,v]
    out = out + (-(2.0 * pp + 3.0 * ww) * T / 4.0) * e2
    return out


def bch_closed(A, B):
    """log(exp(A) exp(B)) in closed form (trace split + AC kernel).

    Requires exp(A^) exp(B^) log-able for the detraced parts, equivalently
    Cos(D_A)Cos(D_B) + Sin(D_A)Sin(D_B) T off the cut (-inf, -1].
    """
    dA = d_disc(A)
    dB = d_disc(B)
    T = t_polar(A, B)
    iscomplex = isinstance(A, M2C) or isinstance(B, M2C)
    if iscomplex:
        A, B = A.as_complex() if isinstance(A, M2R) else A, \
               B.as_complex() if isinstance(B, M2R) else B
        dA, dB, T = complex(dA), complex(dB), complex(T)
    ca, sa = cos_big(dA), sin_big(dA)
    cb, sb = cos_big(dB), sin_big(dB)
    arg = ca * cb + sa * sb * T
    kernel = ac(arg)  # raises on the cut: product not log-able
    combo = (cb * sa) * A.detraced() + (ca * sb) * B.detraced() \
        + (0.5 * sa * sb) * A.commutator(B)
    half_tr = (A.trace + B.trace) / 2.0
    ident = M2C(1 + 0j, 0j, 0j, 0j) if iscomplex else M2R.ID
    return half_tr * ident + kernel * combo


@dataclass(frozen=True, slots=True)
class BchCoeffs:
    """Coefficients of [A,v], [A,[A,v]], [v,[v,A]] in the BCH expansion."""

    f1: complex
    f2: complex
    f3: complex

    def reconstruct(self, A, B):
        com = A.commutator(B)
        return (A + B + self.f1 * com + self.f2 * A.commutator(com)
                + self.f3 * B.commutator(B.commutator(A)))


def _delta(dA, T, dB, t):
    return 1.0 + 2.0 * t * (1.0 - t) * (sin_big(dA) * sin_big(dB) * T
                                        + cos_big(dA) * cos_big(dB) - 1.0)


def _bch_coeffs_quad(dA, T, dB):
    ca, sa = cos_big(dA), sin_big(dA)
    cb, sb = cos_big(dB), sin_big(dB)

    def eta(t):
        return 1.0 - 4.0 * t * (1.0 - t) * (
            1.0 - (t * ca + (1.0 - t) * cb) * (t * cb + (1.0 - t) * ca))

    def xi2(t):
        kappa = cb + 2.0 * t * (1.0 - t) * (ca - cb)
        return t * (1.0 - t) * kappa * 0.5 * sa * sa * sb

    def xi3(t):
        kappa = ca + 2.0 * t * (1.0 - t) * (cb - ca)
        return t * (1.0 - t) * kappa * 0.5 * sb * sb * sa

    f1 = 0.5 * sa * sb * quad_gk(lambda t: 1.0 / _delta(dA, T, dB, t), 0, 1)
    f2 = quad_gk(lambda t: xi2(t) / (eta(t) * _delta(dA, T, dB, t)), 0, 1)
    f3 = quad_gk(lambda t: xi3(t) / (eta(t) * _delta(dA, T, dB, t)), 0, 1)
    return BchCoeffs(f1, f2, f3)


def _bch_coeffs_solve(dA, T, dB):
    ca, sa = cos_big(dA), sin_big(dA)
    cb, sb = cos_big(dB), sin_big(dB)
    kernel = ac(ca * cb + sa * sb * T)
    g1 = kernel * cb * sa - 1.0
    g2 = kernel * ca * sb - 1.0
    den = 4.0 * (dA * dB - T * T)
    f1 = 0.5 * kernel * sa * sb
    return BchCoeffs(f1, (T * g1 - dB * g2) / den, (-dA * g1 + T * g2) / den)


def bch_coeffs(dA, t_av, dB):
    """Commutator-basis coefficients (f1, f2, f3) of BCH from the scalars.

    Primary route solves the linear system from the AC-kernel expansion;
    where D_A D_B - T^2 degenerates the t-quadratures of the xi/eta
    closed form take over.  The quadrature route requires |.| < 1 scalars.
    """
    den = dA * dB - t_av * t_av
    if abs(den) > 1e-8:
        out = _bch_coeffs_solve(dA, t_av, dB)
        if max(abs(dA), abs(dB), abs(t_av)) < 1.0:
            chk = _bch_coeffs_quad(dA, t_av, dB)
            if abs(chk.f2 - out.f2) > 1e-6 or abs(chk.f3 - out.f3) > 1e-6:
                raise ArithmeticError("bch coefficient routes disagree")
        return out
    if max(abs(dA), abs(dB), abs(t_av)) >= 1.0:
        raise ValueError("degenerate scalars outside the quadrature region")
    return _bch_coeffs_quad(dA, t_av, dB)


def _rho(u, x, y):
    """Internal helper of the BCH coefficient theorem; two closed forms.

    rho(u,x,y) = [arctan(u tan((sx+sy)/2)) + arctan(u tan((sx-sy)/2))]/sx
    with sx = sqrt(x); also expressible through AC.  rho(+-1,x,y) = +-1.
    """
    sx = math.sqrt(x) if x > 0 else None
    if sx is None:
        raise ValueError("rho helper defined here for x > 0")
    sy = math.sqrt(y) if y >= 0 else None
    if sy is None:
        raise ValueError("rho helper defined here for y >= 0")
    return (math.atan(u * math.tan((sx + sy) / 2.0))
            + math.atan(u * math.tan((sx - sy) / 2.0))) / sx


def _rho_ac(u, x, y):
    den = cos_big(x) + cos_big(y) + u * u * cos_big(x) - u * u * cos_big(y)
    root = math.sqrt(den * den + 4.0 * u * u * (1.0 - cos_big(x) ** 2))
    return 2.0 * u * sin_big(x) * ac(den / root) / root


# ---------------------------------------------------------------------------
# moments of ||log(exp A exp(t v))|| at t = 0


@dataclass(frozen=True, slots=True)
class MomentVector:
    """Coordinates of the MR/ML moment matrices of a real A.

    For A = a Id + b I~ + (r cos psi) J~ + (r sin psi) K~ the moments are
    MR = a^ Id + b^ I~ + R_psi (c` J~ + d` K~) and ML with (c` J~ - d` K~),
    where R_psi rotates the (J~, K~) block by psi.
    """

    a_hat: float
    b_hat: float
    c_breve: float
    d_breve: float
    psi: float

    def matrix(self, side="right"):
        s = 1.0 if side == "right" else -1.0
        rot = M2R(math.cos(self.psi), math.sin(self.psi), 0.0, 0.0)
        block = rot @ M2R(0.0, 0.0, self.c_breve, s * self.d_breve)
        return M2R(self.a_hat, self.b_hat, 0.0, 0.0) + block

    @property
    def hyperbolic_excess(self):
        """a^2 + b^2 - c`^2 - d`^2 <= 0, zero only for b = 0."""
        return (self.a_hat ** 2 + self.b_hat ** 2
                - self.c_breve ** 2 - self.d_breve ** 2)

    def ckb(self):
        """Normalized image (a^, b^)/sqrt(c`^2 + d`^2) in the closed CKB disk."""
        s = math.hypot(self.c_breve, self.d_breve)
        return (self.a_hat / s, self.b_hat / s)


def _crux(a, b, r):
    """The (a^, b^, c`, d`) display of the moment lemma."""
    s = math.hypot(a, b)
    cc = re_family("C", b * b - r * r)
    a_hat = a / s
    b_hat = (b / s) * (1.0 + (s + r) * r * cc)
    c_breve = 1.0 - (b / s) * (s + r) * b * cc
    d_breve = -(b / s) * (s + r)
    return a_hat, b_hat, c_breve, d_breve


def _moment_domain(A):
    a, b = A.ta, A.tb
    r = math.hypot(A.tc, A.td)
    if a * a + b * b <= 0.0:
        raise ValueError("moment undefined: a^2 + b^2 = 0")
    if r <= 0.0:
        raise ValueError("moment undefined: r = 0 (conform-rotation)")
    x = b * b - r * r
    k = round(math.sqrt(abs(x)) / math.pi) if x > 0 else 0
    if k >= 1 and abs(x - (k * math.pi) ** 2) < 1e-10:
        raise ValueError("moment undefined: b^2 - r^2 at a pole")
    return a, b, r, math.atan2(A.td, A.tc)


def moment_mr(A):
    """Moment vector of v -> D_v ||log(exp(A) exp(M))|| at M = Id (right)."""
    a, b, r, psi = _moment_domain(A)
    return MomentVector(*_crux(a, b, r), psi)


moment_ml = moment_mr  # same coordinates; the side enters in .matrix()


def moment_mr_matrix(A):
    return moment_mr(A).matrix("right")


def moment_ml_matrix(A):
    return moment_mr(A).matrix("left")


def moment_mrl_complex(A, side="right"):
    """MR/ML for complex A through the norm moment MN and the Schur adjoint.

    MR(A) = MN + [A*, MN]/2 + conj(C(D_A)) [A*,[A*, MN]]/4 (the adjoint of
    the right Schur map applied to the norm gradient); ML flips the middle
    sign.
    """
    from .m2 import moment_mn

    A = A.as_complex() if isinstance(A, M2R) else A
    mn = moment_mn(A)
    dA = _check_strip(A)
    s = 1.0 if side == "right" else -1.0
    com = A.H.commutator(mn)
    cc = _fam("C", complex(dA))
    return mn + (0.5 * s) * com \
        + (cc.conjugate() / 4.0) * A.H.commutator(A.H.commutator(mn))


def x_plus(A):
    """The chiral orthogonal-complement operation X+	(A)."""
    a, b, c, d = A.ta, A.tb, A.tc, A.td
    return M2R(a * b, c * c + d * d - a * a, -b * c, -b * d)


def moment_nr(A, side="right"):
    """NR(A) = X+(MR(A))/det MR(A): the norm-neutral direction at A."""
    m = moment_mr(A).matrix(side)
    return (1.0 / m.det) * x_plus(m)


# ---------------------------------------------------------------------------
# the blown-up moment atlas


def moment_atlas(s, r, theta, sigma=1, model="CKB"):
    """Image of the blown-up moment map at (s, r, theta) in a chart.

    Charts: CKB (everywhere), HP (undefined at s+r = 0 or sin theta = 0),
    ACKB and AHP (the sigma = +-1 sheets; AHP needs s + r > 0).
    """
    if s < 0 or r < 0:
        raise ValueError("s, r must be nonnegative")
    if sigma not in (1, -1):
        raise ValueError("sigma must be +-1")
    x = (s * math.sin(theta)) ** 2 - r * r
    ee, ff = script_ef(x)
    aa = math.cos(theta) * ee
    b0 = ee + r * (s + r) * ff
    bb = math.sin(theta) * b0
    g0 = s + r
    gg = math.sin(theta) * g0
    if model == "CKB":
        n = math.sqrt(aa * aa + bb * bb + gg * gg)
        return (aa / n, bb / n)
    if model == "HP":
        if g0 == 0.0 or math.sin(theta) == 0.0:
            raise ValueError("HP chart undefined: s + r = 0 or sin theta = 0")
        return (aa / abs(gg), math.copysign(1.0, math.sin(theta)) * b0 / g0)
    if model == "ACKB":
        n = math.sqrt(aa * aa + bb * bb + gg * gg)
        return (math.asin(aa / n), sigma * b0 / math.hypot(b0, g0))
    if model == "AHP":
        if g0 == 0.0:
            raise ValueError("AHP chart undefined at s + r = 0")
        return (math.atan2(aa, abs(gg)) if gg != 0.0 else math.copysign(math.pi / 2, aa),
                sigma * b0 / g0)
    raise ValueError(f"unknown model {model!r}")


def moment_jacobian_hp(t, theta, nn):
    """Jacobian of the HP-chart moment map in (t, theta); strictly negative.

    Coordinates: a = t nn cos(theta), b = t nn sin(theta), r = nn (1-t),
    0 < t < 1, sin(theta) != 0; the family arguments sit at b^2 - r^2.
    """
    if not 0.0 < t < 1.0 or math.sin(theta) == 0.0:
        raise ValueError("interior chart coordinates required")
    x = (t * nn * math.sin(theta)) ** 2 - ((1.0 - t) * nn) ** 2
    cc = re_family("C", x)
    dd = re_family("D", x)
    gg = re_family("G", x)
    ll = re_family("L", x)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    return (-cc / (s2 * dd)
            - (1.0 - t * c2) / s2 * gg / dd ** 2
            - (1.0 - t * c2) / s2 * (1.0 - t) * nn * nn * ll / dd ** 2
            - nn * nn * t * t * c2 * cc * gg / dd ** 2)


def moment_jacobian_ahp(t, theta, nn):
    """AHP-chart Jacobian; extends smoothly through sin(theta) = 0."""
    x = (t * nn * math.sin(theta)) ** 2 - ((1.0 - t) * nn) ** 2
    cc = re_family("C", x)
    dd = re_family("D", x)
    gg = re_family("G", x)
    ll = re_family("L", x)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    pref = -1.0 / (c2 / (nn * nn * dd) + s2)
    return pref * (cc / dd
                   + (1.0 - t * c2) * gg / dd ** 2
                   + (1.0 - t * c2) * (1.0 - t) * nn * nn * ll / dd ** 2
                   + nn * nn * t * t * c2 * s2 * cc * gg / dd ** 2)


def cogradient_second_derivative(t, theta, nn):
    """d^2/dt^2 ||log(exp A exp(t NR(A)))|| at 0; always < -1/nn."""
    x = (nn * t * math.sin(theta)) ** 2 - (nn * (1.0 - t)) ** 2
    cc = re_family("C", x)
    dd = re_family("D", x)
    gg = re_family("G", x)
    ll = re_family("L", x)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    return (-1.0 / nn
            - (1.0 / nn) * (1.0 - t * c2) * gg / dd ** 2
            - nn * 2.0 * (1.0 - t) * (1.0 - t * c2) * gg * cc / dd ** 2
            - nn * 2.0 * t * s2 * gg / dd
            - nn * (1.0 - t) * cc * cc / dd
            - nn ** 3 * (1.0 - t) ** 2 * (1.0 - t * c2) * cc * ll / dd ** 2
            - nn ** 3 * t * (1.0 - t) * s2 * ll / dd)


# ---------------------------------------------------------------------------
# degenerate (boundary-stratum) moment forms


def moment_degenerate(A, v, side="right"):
    """Directional norm-of-log derivative on the boundary strata.

    Conform-rotation A = a Id + b I~ (|b| < pi): the shared MR = ML form.
    Conform-reflection A = c J~ + d K~: the right/left hyperbolic forms.
    Degenerate-elliptic A = a Id +- pi I~: defined for v in span{Id, I~}.
    Raises ValueError off these strata.
    """
    tol = config.DEGENERACY_TOL * max(1.0, op_norm(A))
    a, b, c, d = A.ta, A.tb, A.tc, A.td
    v1, v2, v3, v4 = v.ta, v.tb, v.tc, v.td
    if math.hypot(c, d) <= tol and abs(b) < math.pi - tol:
        if a == 0.0 and b == 0.0:
            raise ValueError("zero matrix is its own stratum")
        s = math.hypot(a, b)
        stretch = b / math.sin(b) if abs(b) > 1e-12 else 1.0
        return (a * v1 + b * v2) / s + stretch * math.hypot(v3, v4)
    if math.hypot(c, d) <= tol and abs(abs(b) - math.pi) <= tol:
        if math.hypot(v3, v4) > tol:
            raise ValueError("degenerate-elliptic form needs v in span{Id, I~}")
        return (a * v1 - math.pi * abs(v2)) / math.hypot(a, math.pi)
    if math.hypot(a, b) <= tol and math.hypot(c, d) > tol:
        n = math.hypot(c, d)
        cothn = math.cosh(n) / math.sinh(n)
        s = 1.0 if side == "right" else -1.0
        twist = n * cothn * v2 + s * (-c * v4 + d * v3)
        return (c * v3 + d * v4) / n + math.hypot(v1, twist)
    raise ValueError("matrix not on a degenerate moment stratum")
