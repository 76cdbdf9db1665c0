"""BCH minimality machinery and the balanced critical case.

Stratification of the norm-of-log domain, alignment predicates, cone-dual
feasibility, partner conditions on the boundary strata, the SE/SH pair
maps with their Jacobians, the near-critical norm bound, and the canonical
parametrizations of the wedge-cap boundary surface of the critical BCH
ball.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import config
from .explog import exp2, is_logable, log2
from .geometry import PHPoint, xi_ph
from .m2 import M2C, M2R, d_disc, norm_disc, op_norm, t_polar
from .magnus import PiecewiseMeasure
from .schur_bch import moment_mr
from .specfun import ac, cos_big, g_loxo, re_family, sin_big

__all__ = [
    "Stratum",
    "stratum_of_params",
    "stratum",
    "alignment",
    "cone_dual_feasible",
    "min_pair_condition",
    "minrr_condition",
    "discont_limsup",
    "sup_bch_norm_bound",
    "critical_bch_search",
    "WedgeCapPoint",
    "wedge_cap",
    "wedge_cap_patches",
    "se_map",
    "sh_map",
    "se_mdist",
    "sh_mdist",
    "se_logable",
    "sh_logable",
    "se_jacobian",
    "sh_jacobian",
    "mbch_min_necessary",
    "sehc_probe",
]

_PI2 = math.pi ** 2


class Stratum(Enum):
    """Strata of the blown-up (s, r, theta) domain of the moment maps."""

    NN = "nn"
    PAR = "par"
    ELL1 = "ell1"
    ELL_STAR = "ell*"
    DELL0 = "dell0"
    DELL_STAR = "dell*"
    DNN0 = "dnn0"
    DNN_STAR = "dnn*"
    HYP1 = "hyp1"
    HYP_STAR = "hyp*"
    ZERO = "zero"
    ELLEXT = "ellext"
    NNEXT = "nnext"


def stratum_of_params(s, r, theta, tol=1e-10):
    """Classify (s, r, theta): a partition of the closed parameter domain."""
    if s < 0 or r < 0:
        raise ValueError("s, r must be nonnegative")
    sin_t = math.sin(theta)
    cos_t = math.cos(theta)
    x = (s * sin_t) ** 2 - r * r
    if s <= tol and r <= tol:
        return Stratum.ZERO
    if x > _PI2 + tol:
        return Stratum.ELLEXT if r <= tol else Stratum.NNEXT
    if abs(x - _PI2) <= tol:
        if r <= tol:
            return Stratum.DELL0 if abs(cos_t) <= tol else Stratum.DELL_STAR
        return Stratum.DNN0 if abs(cos_t) <= tol else Stratum.DNN_STAR
    if s <= tol:
        return Stratum.HYP1 if abs(sin_t) <= tol else Stratum.HYP_STAR
    if r <= tol:
        return Stratum.ELL1 if abs(sin_t) <= tol else Stratum.ELL_STAR
    if abs(sin_t) <= tol:
        return Stratum.PAR
    return Stratum.NN


def stratum(A, tol=1e-10):
    """Stratum of a real matrix through its rotation-orbit parameters."""
    s = math.hypot(A.ta, A.tb)
    r = math.hypot(A.tc, A.td)
    theta = math.atan2(A.tb, A.ta) if s > tol else 0.0
    return stratum_of_params(s, r, theta, tol)


def _is_normal(A, tol):
    if isinstance(A, M2R):
        return abs(A.tb) * math.hypot(A.tc, A.td) <= tol
    com = A.commutator(A.H)
    return op_norm(com) <= tol


def alignment(A, B, tol=1e-10):
    """'aligned', 'skew-aligned' or 'neither' for nonzero normal A, B.

    Norm additivity ||A+B|| = ||A|| + ||B|| holds exactly for the two
    aligned classes; commuting separates them.
    """
    nA, nB = op_norm(A), op_norm(B)
    if nA == 0.0 or nB == 0.0:
        raise ValueError("alignment needs nonzero matrices")
    scale = max(nA, nB)
    if not (_is_normal(A, tol * scale) and _is_normal(B, tol * scale)):
        raise ValueError("alignment is defined for normal matrices")
    if op_norm(A + B) < nA + nB - tol * scale:
        return "neither"
    com = A.commutator(B)
    if op_norm(com) <= tol * scale * scale:
        return "aligned"
    return "skew-aligned"


def cone_dual_feasible(beta1, beta2, beta3, beta4):
    """Witness (t1..t4) with alpha(v) < 0 and beta(-v) < 0, or None.

    alpha(v) = t1 + sqrt(t3^2 + t4^2); no witness exists exactly on the
    closed cone beta2 = 0, beta1 >= sqrt(beta3^2 + beta4^2).
    """
    s = math.hypot(beta3, beta4)
    if beta2 != 0.0:
        return (-1.0, (beta1 + 1.0) / beta2, 0.0, 0.0)
    if beta1 < 0.0:
        return (-1.0, 0.0, 0.0, 0.0)
    if beta1 >= s:
        return None
    if beta1 == 0.0:
        return (-2.0, 0.0, beta3 / s, beta4 / s)
    return (-(beta1 + s) / (2.0 * beta1), 0.0, beta3 / s, beta4 / s)


def _x_minus_sin(x):
    """x - sin(x) without the cancellation for small x."""
    if abs(x) > 0.1:
        return x - math.sin(x)
    x2 = x * x
    return x ** 3 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))


def discont_limsup(alpha0):
    """Radial limit of near-critical BCH norms at the singular pairs:

        pi sqrt((pi - |a0| + 2 cos(a0/2)) / (pi - |a0| - 2 cos(a0/2))).
    """
    if not -math.pi < alpha0 < math.pi:
        raise ValueError("alpha0 must lie in (-pi, pi)")
    # with d = pi - |a0|: 2 cos(a0/2) = 2 sin(d/2); the denominator
    # d - 2 sin(d/2) cancels catastrophically near |a0| = pi
    d = math.pi - abs(alpha0)
    den = 2.0 * _x_minus_sin(d / 2.0)
    return math.pi * math.sqrt((d + 2.0 * math.sin(d / 2.0)) / den)


def sup_bch_norm_bound(p):
    """Sandwich data for the balanced critical sup at mass split p, pi - p.

    Returns (limsup_value, crude_middle, g_lower) with
    limsup = pi sqrt((pi-p+sin p)/(pi-p-sin p)) < 2 pi sqrt(3)/(pi-p) < G(p);
    the sup itself lies in [G(p), +inf) and equals G(p) at p = pi/2.
    """
    if not math.pi / 2 <= p < math.pi:
        raise ValueError("p must lie in [pi/2, pi)")
    eps = math.pi - p
    lim = math.pi * math.sqrt((eps + math.sin(eps)) / _x_minus_sin(eps))
    middle = 2.0 * math.pi * math.sqrt(3.0) / eps
    return lim, middle, g_loxo(p)


def critical_bch_search(n_samples=10_000, seed=20260809, alpha0=0.0):
    """Randomized near-critical BCH norm search (the limsup witness hunt).

    Samples pairs approaching +-(pi/2) I~ along the singular scaling and
    returns the largest ||log(exp((pi-a)/2 A) exp((pi+a)/2 B))||; approaches
    discont_limsup(alpha0) from below.
    """
    from ._backend import bch_log_norm

    rng = np.random.default_rng(seed)
    best = 0.0
    half = math.pi / 2.0
    for _ in range(n_samples):
        xi = 10.0 ** rng.uniform(-4.0, -0.7)
        t = rng.uniform(-0.2, 0.2)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        eps = rng.uniform(0.0, 0.2)
        u1, u2 = math.cos(phi), math.sin(phi)
        w1 = (1.0 + t) / 2.0 * xi
        w2 = (1.0 - t) / 2.0 * xi
        s1, s2 = u1, u2
        r1, r2 = -u1 * (1.0 - eps), -u2 * (1.0 - eps)
        a = (math.pi - alpha0) / 2.0
        b = (math.pi + alpha0) / 2.0
        try:
            val = bch_log_norm(
                0.0, a * (1.0 - w1), a * w1 * s1, a * w1 * s2,
                0.0, b * (1.0 - w2), b * w2 * r1, b * w2 * r2)
        except ValueError:
            continue
        if val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# partner conditions on the boundary strata


def min_pair_condition(A, partner, partner_norm):
    """Necessary condition and certified partner for (A, B1) minimality.

    ``A`` sits in the smooth interior (canonical rotated form a Id + b I~ +
    c J~ with c > 0); ``partner`` is 'ell' (conform-rotation partner) or
    'hyp' (conform-reflection partner) of norm ``partner_norm``.  Returns
    (condition_holds, B1).
    """
    if abs(A.td) > 1e-12 or A.tc <= 0.0:
        raise ValueError("canonical rotated form a Id + b I~ + c J~, c > 0 "
                         "required")
    mv = moment_mr(A)
    a_hat, b_hat = mv.a_hat, mv.b_hat
    c2d2 = mv.c_breve ** 2 + mv.d_breve ** 2
    nn = float(partner_norm)
    s_hat = math.hypot(a_hat, b_hat)
    if partner == "ell":
        if abs(b_hat) * nn >= math.pi * s_hat:
            raise ValueError("partner angle leaves the conform-rotation "
                             "stratum")
        B1 = (nn / s_hat) * M2R(a_hat, b_hat, 0.0, 0.0)
        if b_hat == 0.0:
            return True, B1
        lhs = b_hat * nn / math.sin(b_hat * nn / s_hat)
        return lhs >= math.sqrt(c2d2), B1
    if partner == "hyp":
        S = math.tanh(nn)
        inner = c2d2 - (S * b_hat) ** 2
        if inner < 0.0:
            return False, None
        rot = M2R(math.sqrt(inner), -S * b_hat, 0.0, 0.0)
        B1 = rot @ ((nn / c2d2) * M2R(mv.c_breve, mv.d_breve, 0.0, 0.0)) @ M2R.J
        cond = c2d2 >= a_hat ** 2 + (S * b_hat) ** 2 * (nn * nn + 1.0) / (nn * nn)
        return cond, B1
    raise ValueError("partner must be 'ell' or 'hyp'")


def minrr_condition(A1, A2):
    """Necessary condition for a conform-reflection pair; witness on failure.

    For A_i = c_i J~ + d_i K~ with angle psi between (c_1, d_1), (c_2, d_2):
    tan(psi/2) <= (coth N1 + coth N2) N1 N2 / (N1 coth N1 + N2 coth N2).
    Returns (condition_holds, witness_v_or_None).
    """
    for A in (A1, A2):
        if math.hypot(A.ta, A.tb) > 1e-12:
            raise ValueError("conform-reflection inputs required")
    n1 = math.hypot(A1.tc, A1.td)
    n2 = math.hypot(A2.tc, A2.td)
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("nonzero reflections required")
    psi = abs(math.atan2(A1.tc * A2.td - A1.td * A2.tc,
                         A1.tc * A2.tc + A1.td * A2.td))
    ct1 = math.cosh(n1) / math.sinh(n1)
    ct2 = math.cosh(n2) / math.sinh(n2)
    bound = (ct1 + ct2) * n1 * n2 / (n1 * ct1 + n2 * ct2)
    if math.tan(psi / 2.0) <= bound:
        return True, None
    v = (1.0 / n1) * A1 - (1.0 / n2) * A2 \
        + ((n1 - n2) / (n1 * ct1 + n2 * ct2) / (2.0 * n1 * n2)) \
        * A1.commutator(A2)
    return False, v


# ---------------------------------------------------------------------------
# SE / SH maps


def _crux_hats(a, b, r):
    mv = moment_mr(M2R(a, b, r, 0.0))
    return mv.a_hat, mv.b_hat, mv.c_breve, mv.d_breve


def se_map(nn, nn2, a, b, r):
    """SE: exp(a Id + b I~ + r J~) exp(nn2 (a^ Id + b^ I~)/|(a^,b^)|)."""
    a_hat, b_hat, _, _ = _crux_hats(a, b, r)
    s_hat = math.hypot(a_hat, b_hat)
    first = exp2(M2R(a, b, r, 0.0))
    second = exp2((nn2 / s_hat) * M2R(a_hat, b_hat, 0.0, 0.0))
    return first @ second


def sh_map(nn, nn2, a, b, r):
    """SH: exp(a Id + b I~ + r J~) times the conform-reflection partner."""
    a_hat, b_hat, c_b, d_b = _crux_hats(a, b, r)
    P = c_b * c_b + d_b * d_b
    S = math.tanh(nn2)
    inner = P - (S * b_hat) ** 2
    if inner < 0.0:
        raise ValueError("SH partner undefined: P < (S b^)^2")
    rot = M2R(math.sqrt(inner), -S * b_hat, 0.0, 0.0)
    B1 = rot @ ((nn2 / P) * M2R(c_b, d_b, 0.0, 0.0)) @ M2R.J
    return exp2(M2R(a, b, r, 0.0)) @ exp2(B1)


def _mdist(M):
    det = M.det
    if det <= 0.0:
        raise ValueError("m-distortion needs det > 0")
    return math.hypot(M.tc, M.td) / math.sqrt(det)


def se_mdist(nn, nn2, a, b, r):
    """Closed form r Sin(b^2 - r^2) of the SE image's m-distortion."""
    return r * sin_big(b * b - r * r)


def sh_mdist(nn, nn2, a, b, r):
    """Closed form of the SH image's m-distortion (positive on the domain)."""
    a_hat, b_hat, c_b, d_b = _crux_hats(a, b, r)
    P = c_b * c_b + d_b * d_b
    S = math.tanh(nn2)
    Z = math.sqrt(P - (S * b_hat) ** 2)
    s = math.hypot(a, b)
    t = s / (s + r)
    x = b * b - r * r
    H = 1.0 + (1.0 - t) * (1.0 - t * (a / s) ** 2) * (s + r) ** 2 * re_family("C", x) \
        + t * (b / s) ** 2 * (s + r) ** 2 * re_family("D", x)
    return math.cosh(nn2) * sin_big(x) * (r * Z + S * H) / math.sqrt(P)


def se_logable(nn, nn2, a, b, r):
    """Log-ability margin of SE: the AC argument plus 1 (positive = log-able)."""
    a_hat, b_hat, _, _ = _crux_hats(a, b, r)
    s_hat = math.hypot(a_hat, b_hat)
    ang = b_hat * nn2 / s_hat
    x = b * b - r * r
    return cos_big(x) * math.cos(ang) - b * sin_big(x) * math.sin(ang) + 1.0


def sh_logable(nn, nn2, a, b, r):
    """Log-ability margin of SH (positive = log-able)."""
    a_hat, b_hat, c_b, d_b = _crux_hats(a, b, r)
    P = c_b * c_b + d_b * d_b
    S = math.tanh(nn2)
    Z = math.sqrt(P - (S * b_hat) ** 2)
    x = b * b - r * r
    return (math.cosh(nn2) * cos_big(x)
            + math.sinh(nn2) * r * sin_big(x) * (b_hat * d_b * S + c_b * Z) / P ** 2
            + 1.0)


def se_jacobian(t, theta, nn, nn2):
    """Jacobian of (t, theta) -> (y, z) of the PH-image of log SE.

    Sign follows sign(cos theta); the remaining factors are positive on
    the smooth interior.
    """
    a = nn * t * math.cos(theta)
    b = nn * t * math.sin(theta)
    r = nn * (1.0 - t)
    a_hat, b_hat, _, _ = _crux_hats(a, b, r)
    s_hat = math.hypot(a_hat, b_hat)
    x = b * b - r * r
    arg = cos_big(x) * math.cos(b_hat * nn2 / s_hat) \
        - b * sin_big(x) * math.sin(b_hat * nn2 / s_hat)
    cc = re_family("C", x)
    ww = re_family("W", x)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    inner = (1.0
             + (1.0 - t) * (2.0 - t * c2) * nn * nn * cc
             + t * t * (1.0 - t) * s2 * c2 * nn ** 4 * ww
             + (1.0 - t) * ((1.0 - t) * s2 + (1.0 - t) ** 2 * c2
                            + t * t * s2 * c2) * nn ** 4 * cc * cc)
    return (math.cos(theta) * ac(arg) * sin_big(x)
            * (nn * nn * t + nn * nn2 / s_hat ** 3 * inner))


def sh_jacobian(t, theta, nn, nn2):
    """Jacobian of (t, theta) -> (y, z) of the PH-image of log SH."""
    a = nn * t * math.cos(theta)
    b = nn * t * math.sin(theta)
    r = nn * (1.0 - t)
    a_hat, b_hat, c_b, d_b = _crux_hats(a, b, r)
    x = b * b - r * r
    P = c_b * c_b + d_b * d_b
    S = math.tanh(nn2)
    Z = math.sqrt(P - (S * b_hat) ** 2)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    cc = re_family("C", x)
    dd = re_family("D", x)
    ww = re_family("W", x)
    H = 1.0 + (1.0 - t) * (1.0 - t * c2) * nn * nn * cc + t * s2 * nn * nn * dd
    F = c2 + t * s2 * nn * nn * cc + t * t * s2 * s2 * nn ** 4 * ww
    arg = (math.cosh(nn2) * cos_big(x)
           + math.sinh(nn2) * r * sin_big(x) * (b_hat * d_b * S + c_b * Z) / P ** 2)
    return (math.cos(theta) * ac(arg) * sin_big(x)
            * nn * nn * math.cosh(nn2) / (P * math.sqrt(P))
            * (r * S * F + (S * S * F * H + t * (1.0 - S * S) * P * P) / Z))


# ---------------------------------------------------------------------------
# mBCH minimality report


@dataclass(frozen=True)
class MbchReport:
    """Necessary-condition flags for a mass-normalized mBCH measure."""

    non_normal_steps: tuple
    non_additive_pairs: tuple
    skew_aligned_pairs: tuple
    shape: str  # 'hyperbolic', 'elliptic', or 'mixed'

    @property
    def passes(self):
        return (not self.non_normal_steps and not self.non_additive_pairs
                and not self.skew_aligned_pairs and self.shape != "mixed")


def mbch_min_necessary(phi, tol=1e-10):
    """Necessary conditions for Magnus minimality of an mBCH measure.

    Any non-normal step, any non-norm-additive adjacent pair, and any
    skew-aligned adjacent pair each rule minimality out; the survivors must
    look like a constant-orthogonal measure (elliptic case) or a common
    eigenframe family with a +-1 eigenvalue branch (hyperbolic case).
    """
    if not phi.is_steps:
        raise ValueError("mBCH report needs a step measure")
    steps = [(m, l) for m, l in phi.steps if l > 0 and op_norm(m) > 0]
    non_normal = tuple(i for i, (m, _) in enumerate(steps)
                       if not _is_normal(m, tol * op_norm(m)))
    non_additive = []
    skew = []
    for i in range(len(steps) - 1):
        A, B = steps[i][0], steps[i + 1][0]
        if not (_is_normal(A, tol * op_norm(A)) and _is_normal(B, tol * op_norm(B))):
            continue
        kind = alignment(A, B, tol)
        if kind == "neither":
            non_additive.append(i)
        elif kind == "skew-aligned":
            skew.append(i)
    shape = "mixed"
    if not non_normal and not non_additive and not skew:
        rotations = [abs(m.tb) > tol * op_norm(m) for m, _ in steps]
        if all(rotations):
            shape = "elliptic"
        elif not any(rotations):
            shape = "hyperbolic"
    return MbchReport(non_normal, tuple(non_additive), tuple(skew), shape)


# ---------------------------------------------------------------------------
# wedge cap


@dataclass(frozen=True)
class WedgeCapPoint:
    """A point of the critical BCH boundary surface in the PH chart."""

    source: str
    params: tuple
    image: PHPoint

    @property
    def norm(self):
        return math.hypot(self.image.x, self.image.y) + self.image.z


_PATCH_NAMES = ("bihyperbolic", "parabolic", "ell*-hyp", "closure",
                "bielliptic", "smooth-hyp", "smooth-ell")


def wedge_cap(name, args, nn=math.pi / 2):
    """Evaluate one canonical parametrization of the wedge cap at ``args``.

    Patches: bihyperbolic(psi), parabolic(sigma, t), ell*-hyp(psi),
    closure(sigma, r) [only at nn = pi/2], bielliptic(psi),
    smooth-hyp(t, theta), smooth-ell(t, theta).
    Raises ValueError with the offending arguments when a logarithm inside
    a parametrization fails.
    """
    if name == "bihyperbolic":
        (psi,) = args
        lim = 2.0 * math.atan(nn)
        if not -lim <= psi <= lim:
            raise ValueError(f"bihyperbolic angle out of range: {psi}")
        M = exp2(nn * M2R.J) @ exp2(nn * M2R(0, 0, math.cos(psi), math.sin(psi)))
        return WedgeCapPoint(name, tuple(args), xi_ph(_safe_log(M, name, args)))
    if name == "parabolic":
        sigma, t = args
        if not -1.0 < t < 1.0:
            raise ValueError(f"parabolic parameter out of range: {t}")
        M = (2.0 * sigma * nn) * M2R((1.0 + t) / 2.0, 0.0, (1.0 - t) / 2.0, 0.0)
        return WedgeCapPoint(name, tuple(args), xi_ph(M))
    if name == "ell*-hyp":
        (psi,) = args
        E = exp2(nn * M2R(math.cos(psi), math.sin(psi), 0.0, 0.0))
        M = E @ exp2(nn * M2R.J)
        return WedgeCapPoint(name, tuple(args), xi_ph(_safe_log(M, name, args)))
    if name == "closure":
        sigma, r = args
        if abs(nn - math.pi / 2) > 1e-12:
            raise ValueError("closure patch exists only at nn = pi/2")
        rmax = 2.0 * math.pi / math.sqrt(_PI2 - 4.0)
        if not 0.0 <= r <= rmax + 1e-12:
            raise ValueError(f"closure radius out of range: {r}")
        return WedgeCapPoint(name, tuple(args),
                             PHPoint(0.0, sigma * math.sqrt(_PI2 + r * r), r))
    if name == "bielliptic":
        (psi,) = args
        M = (2.0 * nn) * M2R(math.cos(psi), math.sin(psi), 0.0, 0.0)
        return WedgeCapPoint(name, tuple(args), xi_ph(M))
    if name in ("smooth-hyp", "smooth-ell"):
        t, theta = args
        a = nn * t * math.cos(theta)
        b = nn * t * math.sin(theta)
        r = nn * (1.0 - t)
        M = sh_map(nn, nn, a, b, r) if name == "smooth-hyp" \
            else se_map(nn, nn, a, b, r)
        return WedgeCapPoint(name, tuple(args), xi_ph(_safe_log(M, name, args)))
    raise ValueError(f"unknown wedge-cap patch {name!r}")


def _safe_log(M, name, args):
    try:
        return log2(M)
    except ValueError as exc:
        raise ValueError(f"log failed on patch {name} at {args}: {exc}") from None


def wedge_cap_patches(nn=math.pi / 2, grid=200):
    """Sample every patch; yields (name, u, v, point) rows in grid order.

    One-dimensional patches use a grid^2-point parameter line so their
    sampling density matches the surface patches.
    """
    lim = 2.0 * math.atan(nn)
    dense = grid * grid
    for i in range(dense + 1):
        psi = -lim + 2.0 * lim * i / dense
        yield ("bihyperbolic", psi, 0.0, wedge_cap("bihyperbolic", (psi,), nn))
    for sigma in (1.0, -1.0):
        for i in range(1, dense):
            t = -1.0 + 2.0 * i / dense
            yield ("parabolic", sigma, t, wedge_cap("parabolic", (sigma, t), nn))
    for i in range(1, dense):
        psi = 2.0 * math.pi * i / dense
        if abs(psi - math.pi) < 1e-12:
            continue
        yield ("ell*-hyp", psi, 0.0, wedge_cap("ell*-hyp", (psi,), nn))
    if abs(nn - math.pi / 2) <= 1e-12:
        rmax = 2.0 * math.pi / math.sqrt(_PI2 - 4.0)
        for sigma in (1.0, -1.0):
            for i in range(dense + 1):
                r = rmax * i / dense
                yield ("closure", sigma, r, wedge_cap("closure", (sigma, r), nn))
    for i in range(dense):
        psi = -math.pi / 2 + 2.0 * math.pi * i / dense
        if abs(abs(psi) - math.pi / 2) < 1e-12 or abs(psi - 3 * math.pi / 2) < 1e-12:
            continue
        yield ("bielliptic", psi, 0.0, wedge_cap("bielliptic", (psi,), nn))
    for name in ("smooth-hyp", "smooth-ell"):
        for i in range(1, grid):
            t = i / grid
            for j in range(1, 2 * grid):
                theta = math.pi * j / grid
                if abs(math.sin(theta)) < 1e-12:
                    continue
                try:
                    yield (name, t, theta, wedge_cap(name, (t, theta), nn))
                except ValueError:
                    continue


def sehc_probe(nn, nn2, grid=40):
    """Empirical min/max of the SE/SH Jacobian-positivity ratios.

    Probes the conjectured two-sided bounds (never asserted): the SE ratio
    J / [sin(theta) cos(theta) (1-t) AC(arg)^2] and the SH ratio
    J sqrt(t^2+sin^2) / [sin cos (t^2+cos^2)].  Returns a dict of ranges.
    """
    out = {}
    for name, jac in (("SE", se_jacobian), ("SH", sh_jacobian)):
        lo, hi = math.inf, -math.inf
        for i in range(1, grid):
            t = i / grid
            for j in range(1, grid):
                theta = math.pi * j / (2.0 * grid)  # first quadrant
                try:
                    J = jac(t, theta, nn, nn2)
                except ValueError:
                    continue
                st, ct = math.sin(theta), math.cos(theta)
                if name == "SE":
                    a = nn * t * ct
                    b = nn * t * st
                    r = nn * (1.0 - t)
                    a_hat, b_hat, _, _ = _crux_hats(a, b, r)
                    s_hat = math.hypot(a_hat, b_hat)
                    arg = (cos_big(b * b - r * r) * math.cos(b_hat * nn2 / s_hat)
                           - b * sin_big(b * b - r * r) * math.sin(b_hat * nn2 / s_hat))
                    denom = st * ct * (1.0 - t) * ac(arg) ** 2
                else:
                    denom = st * ct * (t * t + ct * ct) \
                        / math.sqrt(t * t + st * st)
                if abs(denom) < 1e-14:
                    continue
                ratio = J / denom
                lo = min(lo, ratio)
                hi = max(hi, ratio)
        out[name] = (lo, hi)
    return out
