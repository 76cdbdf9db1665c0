"""Time-ordered exponentials, canonical developments, Magnus exponents,
and minimal normal forms for real 2x2 matrices.

The time-ordered exponential follows the left-invariant convention: for a
measure with steps (A_1, l_1), ..., (A_n, l_n) in time order,

    lexp = exp(A_n l_n) ... exp(A_1 l_1),

the solution at the right endpoint of X' = A(t) X, X(start) = Id.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from . import config
from . import _backend as _k
from .explog import exp2, is_logable, log2
from .geometry import Disk, chiral_disk
from .m2 import M2C, M2R, d_disc, op_norm

__all__ = [
    "PiecewiseMeasure",
    "lexp",
    "magnus_terms",
    "dev_f",
    "dev_w",
    "parabolic_density",
    "hyperbolic_density",
    "elliptic_density",
    "maximal_disk",
    "magnus_exponent",
    "magnus_exponent_lifted",
    "MagnusClass",
    "classify_magnus",
    "NormalForm",
    "normal_form",
    "nw_eval",
    "nw_measure",
    "optimal_ridge",
]


@dataclass(frozen=True)
class PiecewiseMeasure:
    """Matrix-valued measure: finite steps or a sampled density.

    ``steps`` is a time-ordered tuple of (matrix, length >= 0); ``density``
    is a callable t -> matrix on ``interval``.  Exactly one of the two is
    set.
    """

    steps: tuple = ()
    density: object = None
    interval: tuple = ()

    @classmethod
    def from_steps(cls, steps):
        steps = tuple((m, float(l)) for m, l in steps)
        if any(l < 0 for _, l in steps):
            raise ValueError("step lengths must be nonnegative")
        return cls(steps=steps)

    @classmethod
    def from_density(cls, fn, interval):
        a, b = interval
        if not b >= a:
            raise ValueError("empty interval")
        return cls(density=fn, interval=(float(a), float(b)))

    @property
    def is_steps(self):
        return self.density is None

    def cumulative_norm(self, samples=512):
        if self.is_steps:
            return sum(op_norm(m) * l for m, l in self.steps)
        a, b = self.interval
        h = (b - a) / samples
        # midpoint rule; densities here are smooth
        return sum(op_norm(self.density(a + (i + 0.5) * h)) * h
                   for i in range(samples))

    def scaled(self, c):
        if self.is_steps:
            return PiecewiseMeasure(steps=tuple((c * m, l) for m, l in self.steps))
        fn = self.density
        return PiecewiseMeasure(density=lambda t, fn=fn, c=c: c * fn(t),
                                interval=self.interval)

    def concat(self, other):
        """This measure first, then ``other`` (so lexp(out) = lexp(other) lexp(self))."""
        if not (self.is_steps and other.is_steps):
            raise ValueError("concat is defined for step measures")
        return PiecewiseMeasure(steps=self.steps + other.steps)


def _lexp_steps(steps):
    if any(isinstance(m, M2C) for m, _ in steps):
        out = M2C(1 + 0j, 0j, 0j, 0j)
        for m, l in steps:
            out = exp2(l * m) @ out
        return out
    flat = []
    for m, l in steps:
        flat.extend((m.ta, m.tb, m.tc, m.td, l))
    return M2R(*_k.lexp_product(np.asarray(flat, dtype=float)))


def _lexp_cells(fn, a, b, n, fourth_order=True):
    """Product of per-cell propagators on a uniform n-cell grid.

    Fourth order uses the two-point Gauss rule with the commutator
    correction Omega = h(A1+A2)/2 + sqrt(3) h^2 [A2, A1]/12; the plain
    midpoint product is the second-order fallback oracle.
    """
    h = (b - a) / n
    out = None
    off = h / (2.0 * math.sqrt(3.0))
    for i in range(n):
        lo = a + i * h
        mid = lo + 0.5 * h
        if fourth_order:
            a1 = fn(mid - off)
            a2 = fn(mid + off)
            omega = (0.5 * h) * (a1 + a2) \
                + (math.sqrt(3.0) * h * h / 12.0) * a2.commutator(a1)
        else:
            omega = h * fn(mid)
        prop = exp2(omega)
        out = prop if out is None else prop @ out
    return out if out is not None else M2R.ID


def lexp(phi, rel_tol=1e-11, fourth_order=True):
    """Time-ordered exponential of a piecewise measure.

    Step measures are exact products of closed-form exponentials.  Density
    measures are integrated on dyadically refined grids with Richardson
    acceleration until successive refinements agree to ``rel_tol``.
    """
    if phi.is_steps:
        return _lexp_steps(phi.steps)
    a, b = phi.interval
    if b == a:
        return M2R.ID
    n = 8
    prev = _lexp_cells(phi.density, a, b, n, fourth_order)
    while n <= 2 ** 20:
        n *= 2
        cur = _lexp_cells(phi.density, a, b, n, fourth_order)
        diff = op_norm(cur - prev)
        scale = max(1.0, op_norm(cur))
        if diff <= rel_tol * scale:
            gain = 15.0 if fourth_order else 3.0
            return cur + (1.0 / gain) * (cur - prev)
        prev = cur
    raise RuntimeError("lexp refinement did not converge within budget")


def magnus_terms(phi, k_max):
    """First Magnus terms mu_1..mu_k of the measure, k_max <= 8.

    Extracted as Taylor coefficients of t -> log(lexp(t phi)) at t = 0 via
    a Chebyshev fit on a safe disk (the series converges for
    |t| int||phi|| < pi).
    """
    if not 1 <= k_max <= 8:
        raise ValueError("k_max must be in 1..8")
    total = phi.cumulative_norm()
    h = min(0.5, 2.2 / max(total, 1e-9))
    deg = k_max + 8
    nodes = np.cos(np.pi * (np.arange(2 * deg + 2) + 0.5) / (2 * deg + 2)) * h
    vals = []
    for t in nodes:
        m = log2(lexp(phi.scaled(float(t))))
        vals.append([m.ta, m.tb, m.tc, m.td])
    vals = np.array(vals)
    coeffs = []
    for j in range(4):
        cfit = _cheb.chebfit(nodes / h, vals[:, j], deg)
        p = _cheb.cheb2poly(cfit)
        coeffs.append(p)
    out = []
    for k in range(1, k_max + 1):
        c = [coeffs[j][k] / h ** k if k < len(coeffs[j]) else 0.0
             for j in range(4)]
        out.append(M2R(*c))
    return out


# ---------------------------------------------------------------------------
# canonical developments


def dev_f(s, p, w):
    """F(s,p,w) = exp(w I~) exp(-(w-s) I~ + p K~)."""
    return exp2(M2R(0.0, w, 0.0, 0.0)) @ exp2(M2R(0.0, -(w - s), 0.0, p))


def dev_w(p, w):
    """W(p,w) = F(0,p,w), the canonical development matrix."""
    return dev_f(0.0, p, w)


def parabolic_density(t):
    """Density of the parabolic development: exp(t I~) K~ exp(-t I~)."""
    return M2R(0.0, 0.0, -math.sin(2.0 * t), math.cos(2.0 * t))


def hyperbolic_density(sin_t):
    """Density factory of the hyperbolic development with speed sin_t."""
    def fn(theta):
        return M2R(0.0, 0.0, -math.sin(2.0 * theta * sin_t),
                   math.cos(2.0 * theta * sin_t))
    return fn


def elliptic_density(h):
    """Density of the elliptic development: (1-h) I~ + h parabolic."""
    def fn(theta):
        return M2R(0.0, 1.0 - h, -h * math.sin(2.0 * theta),
                   h * math.cos(2.0 * theta))
    return fn


def maximal_disk(p, t):
    """The maximal disk of exp D(0,p) tangent at e^{p cos t + i p sin t}.

    Center Omega_p(t), radius sinh(p cos t)/cos t (limit p at t = +-pi/2);
    equals CD(W(p, p sin t)).
    """
    if not 0.0 < p < math.pi:
        raise ValueError("maximal_disk requires p in (0, pi)")
    c = math.cos(t)
    s = math.sin(t)
    if abs(c) < 1e-8:
        center = complex(math.cos(p) + p * math.sin(p),
                         math.copysign(1.0, s) * (math.sin(p) - p * math.cos(p)))
        return Disk(center, p)
    ratio = math.sinh(p * c) / c
    center = cmath.exp(1j * p * s) * (math.cosh(p * c) - 1j * ratio * s)
    return Disk(center, ratio)


# ---------------------------------------------------------------------------
# Magnus exponent from the chiral disk


def _log_abs(z):
    return math.hypot(math.log(abs(z)), cmath.phase(z))


def _boundary_sup_log(disk, n_grid=256):
    """sup of |log z| over the boundary circle, golden-polished."""
    c, r = disk.center, disk.radius

    def g(phi):
        return _log_abs(c + r * cmath.exp(1j * phi))

    if r < 1e-12:
        return _log_abs(c), cmath.phase(c + r)
    vals = [(g(2 * math.pi * i / n_grid), 2 * math.pi * i / n_grid)
            for i in range(n_grid)]
    vals.sort(reverse=True)
    width = 2 * math.pi / n_grid
    out_val, out_phi = -1.0, 0.0
    for v, phi in vals[:6]:
        lo, hi = phi - width, phi + width
        gr = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - gr * (hi - lo)
        x2 = lo + gr * (hi - lo)
        f1, f2 = g(x1), g(x2)
        for _ in range(80):
            if f1 < f2:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + gr * (hi - lo)
                f2 = g(x2)
            else:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - gr * (hi - lo)
                f1 = g(x1)
        phi_star = 0.5 * (lo + hi)
        v_star = g(phi_star)
        if v_star > out_val:
            out_val, out_phi = v_star, phi_star
    return out_val, out_phi


def magnus_exponent(A):
    """M(A) = sup{|log z| : z in CD(A)} for CD(A) inside exp int D(0, pi).

    Raises ValueError when the disk touches the cut or the sup reaches pi.
    """
    disk = chiral_disk(A)
    if not disk.avoids_cut():
        raise ValueError("chiral disk touches (-inf, 0]: outside the "
                         "principal Magnus domain")
    if disk.radius < 1e-12:
        return _log_abs(disk.center)
    sup, _ = _boundary_sup_log(disk)
    if sup >= math.pi - 1e-12:
        raise ValueError("Magnus exponent at or beyond pi: outside the "
                         "principal domain")
    return sup


def magnus_exponent_lifted(A, lifts=range(-2, 3)):
    """Magnus exponent through the universal cover.

    For disks that may cross the cut (but not contain 0) the principal-arg
    sup is not meaningful; instead, each continuous branch of arg on the
    boundary circle gives a candidate sup of sqrt(log|z|^2 + arg^2), and
    the exponent is the smallest candidate over the offered 2 pi k lifts.
    """
    disk = chiral_disk(A)
    c, r = disk.center, disk.radius
    if abs(c) <= r + 1e-15:
        raise ValueError("disk contains 0: no lift")
    n = 4096
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    pts = c + r * np.exp(1j * phis)
    args = np.unwrap(np.angle(pts))
    mods = np.log(np.abs(pts))
    best = math.inf
    for k in lifts:
        sup = float(np.max(np.hypot(mods, args + 2.0 * math.pi * k)))
        best = min(best, sup)
    return best


class MagnusClass(Enum):
    """How CD(A) touches the boundary of exp D(0, M(A))."""

    IDENTITY = "identity"
    QUASICOMPLEX = "quasicomplex"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


def classify_magnus(A):
    """Magnus classification (valid on the principal domain).

    det = 1 splits by the arctan test 2 atan((r+|b|)/(a+1)) vs r; other
    determinants touch the boundary asymmetrically (loxodromic); point
    disks are quasicomplex.
    """
    p = magnus_exponent(A)  # also validates the domain
    disk = chiral_disk(A)
    if A.close_to(M2R.ID, 1e-14):
        return MagnusClass.IDENTITY
    if disk.radius < 1e-12:
        return MagnusClass.QUASICOMPLEX
    det = A.det
    if abs(det - 1.0) > config.DEGENERACY_TOL * max(1.0, det):
        return MagnusClass.LOXODROMIC
    a, b = disk.center.real, disk.center.imag
    r = disk.radius
    test = 2.0 * math.atan((r + abs(b)) / (a + 1.0))
    if abs(test - r) <= config.DEGENERACY_TOL:
        return MagnusClass.PARABOLIC
    return MagnusClass.HYPERBOLIC if test < r else MagnusClass.ELLIPTIC


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class NormalForm:
    """Magnus-minimal presentation data NW(p1, p2, t, beta).

    p1: mass of the complex-exponential part; p2: mass of the rotated
    development; t: Magnus direction angle; beta: phase of the reflection
    F~ = -sin(beta) J~ + cos(beta) K~.  ``degenerate_direction`` flags the
    t <-> pi - t ambiguity of Magnus hyperbolic matrices.
    """

    p1: float
    p2: float
    t: float
    beta: float
    degenerate_direction: bool = False

    @property
    def exponent(self):
        return self.p1 + self.p2

    @property
    def elliptic_part(self):
        """ellip(A) = p1 (cos t + i sin t)."""
        return self.p1 * cmath.exp(1j * self.t)

    @property
    def hyperbolic_length(self):
        return self.p2


def _f_tilde(beta):
    return M2R(0.0, 0.0, -math.sin(beta), math.cos(beta))


def _sinhc(x):
    return math.sinh(x) / x if abs(x) > 1e-8 else 1.0 + x * x / 6.0


def nw_eval(nf):
    """Evaluate NW(p1, p2, t, beta) as a matrix.

    Closed form: with c = cos t, s = sin t, p = p1 + p2, rho = sinh(p2 c)/c,
    NW = e^{p1 c} R(p s) (cosh(p2 c) Id - rho s I~) + e^{p1 c} rho F~(beta).
    """
    p1, p2, t, beta = nf.p1, nf.p2, nf.t, nf.beta
    c, s = math.cos(t), math.sin(t)
    p = p1 + p2
    rho = p2 * _sinhc(p2 * c)
    scal = math.exp(p1 * c)
    rot = M2R(math.cos(p * s), math.sin(p * s), 0.0, 0.0)
    core = rot @ M2R(math.cosh(p2 * c), -rho * s, 0.0, 0.0)
    return scal * core + (scal * rho) * _f_tilde(beta)


def nw_measure(nf, layout="uniform"):
    """A Magnus-minimal measure presenting nw_eval(nf).

    layout 'uniform': norm density p on a unit interval (elliptic and
    development parts superposed); 'left'/'right': the elliptic exponential
    as the left/right factor of the product, concatenated at density 1.
    """
    p1, p2, t, beta = nf.p1, nf.p2, nf.t, nf.beta
    s = math.sin(t)
    p = p1 + p2
    ell_dir = M2R(math.cos(t), math.sin(t), 0.0, 0.0)
    f_t = _f_tilde(beta)

    def rotated(phase):
        rot = M2R(math.cos(phase), math.sin(phase), 0.0, 0.0)
        return rot @ f_t

    if layout == "uniform":
        def fn(theta):
            return p1 * ell_dir + p2 * rotated(2.0 * p * theta * s)
        return PiecewiseMeasure.from_density(fn, (-0.5, 0.5))
    if layout == "left":
        dev = PiecewiseMeasure.from_density(
            lambda th: rotated((2.0 * th - p1 - p2) * s), (0.0, p2))
        ell = PiecewiseMeasure.from_steps([(ell_dir, p1)])
        return dev, ell
    if layout == "right":
        dev = PiecewiseMeasure.from_density(
            lambda th: rotated((2.0 * th + p1 - p2) * s), (0.0, p2))
        ell = PiecewiseMeasure.from_steps([(ell_dir, p1)])
        return ell, dev
    raise ValueError(f"unknown layout {layout!r}")


def _radius_of_p2(p, t, p2):
    c = math.cos(t)
    return math.exp((p - p2) * c) * p2 * _sinhc(p2 * c)


def normal_form(A):
    """Decompose A (principal Magnus domain, A != Id) as NW(p1, p2, t, beta).

    p = p1 + p2 is the Magnus exponent; t the touching direction of CD(A)
    on the boundary of exp D(0, p); p2 solves the chiral-disk radius
    relation; beta is the residual reflection phase.  For Magnus hyperbolic
    A the canonical representative has cos t >= 0 and the +- degeneracy is
    flagged.
    """
    if A.close_to(M2R.ID, 1e-14):
        raise ValueError("identity has the empty presentation")
    disk = chiral_disk(A)
    if disk.radius < 1e-12:
        # quasicomplex: pure complex exponential
        w = cmath.log(disk.center)
        p1 = abs(w)
        return NormalForm(p1, 0.0, cmath.phase(w), 0.0)
    p, phi_star = _boundary_sup_log(disk)
    if not disk.avoids_cut() or p >= math.pi - 1e-12:
        raise ValueError("outside the principal Magnus domain")
    z_star = disk.center + disk.radius * cmath.exp(1j * phi_star)
    w = cmath.log(z_star)
    t = cmath.phase(w)
    degenerate = classify_magnus(A) is MagnusClass.HYPERBOLIC
    if degenerate and math.cos(t) < 0.0:
        t = math.copysign(math.pi, t) - t  # reflect to cos t >= 0
    # solve the radius relation for p2 in [0, p] (monotone increasing)
    r = disk.radius
    lo, hi = 0.0, p
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _radius_of_p2(p, t, mid) < r:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15 * max(1.0, p):
            break
    p2 = 0.5 * (lo + hi)
    p1 = p - p2
    # residual reflection phase from the (J~, K~) block
    rho = math.exp(p1 * math.cos(t)) * p2 * _sinhc(p2 * math.cos(t))
    if rho > 1e-14:
        beta = math.atan2(-A.tc / rho, A.td / rho)
    else:
        beta = 0.0
    p1, p2, t, beta = _polish_nf(A, p1, p2, t, beta)
    return NormalForm(p1, p2, t, beta, degenerate_direction=degenerate)


def _polish_nf(A, p1, p2, t, beta):
    """Gauss-Newton refinement of the four parameters against nw_eval.

    The geometric construction is exact in exact arithmetic but the touching
    angle is ill-conditioned at flat maxima of |log z|; a few Newton steps
    restore machine-precision round trips.  Skipped near the degenerate
    parameter strata (p1 ~ 0 or p2 ~ 0) where the Jacobian drops rank.
    """
    if p1 < 1e-9 or p2 < 1e-9:
        return p1, p2, t, beta
    target = np.array([A.ta, A.tb, A.tc, A.td])

    def residual(x):
        m = nw_eval(NormalForm(x[0], x[1], x[2], x[3]))
        return np.array([m.ta, m.tb, m.tc, m.td]) - target

    x = np.array([p1, p2, t, beta])
    res = residual(x)
    for _ in range(8):
        if np.max(np.abs(res)) < 1e-13 * max(1.0, op_norm(A)):
            break
        h = 1e-7
        jac = np.empty((4, 4))
        for j in range(4):
            step = np.zeros(4)
            step[j] = h
            jac[:, j] = (residual(x + step) - residual(x - step)) / (2.0 * h)
        try:
            delta = np.linalg.solve(jac, res)
        except np.linalg.LinAlgError:
            break
        xn = x - delta
        if xn[0] < 0.0 or xn[1] < 0.0:
            break
        rn = residual(xn)
        if np.max(np.abs(rn)) >= np.max(np.abs(res)):
            break
        x, res = xn, rn
    return float(x[0]), float(x[1]), float(x[2]), float(x[3])


# ---------------------------------------------------------------------------
# optimal ridge


def _ridge_value(p, s):
    return op_norm(log2(dev_w(p, p * s)))


def optimal_ridge(p):
    """(s(p), max_s ||log W(p, p s)||) over s in [0, 1].

    Golden-section with a parabolic polish; the window (0.1, pi) covers
    the ridge between the parabolic (s = 1) and hyperbolic regimes.
    """
    if not 0.0 < p < math.pi:
        raise ValueError("optimal_ridge requires p in (0, pi)")
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = 0.0, 1.0
    x1 = hi - gr * (hi - lo)
    x2 = lo + gr * (hi - lo)
    f1, f2 = _ridge_value(p, x1), _ridge_value(p, x2)
    for _ in range(120):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + gr * (hi - lo)
            f2 = _ridge_value(p, x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - gr * (hi - lo)
            f1 = _ridge_value(p, x1)
    s = 0.5 * (lo + hi)
    # quadratic polish on a tiny stencil (guards the s -> 1 boundary)
    h = 1e-5
    if s + h <= 1.0 and s - h >= 0.0:
        f0, fp, fm = _ridge_value(p, s), _ridge_value(p, s + h), _ridge_value(p, s - h)
        denom = fp - 2.0 * f0 + fm
        if denom < 0.0:
            step = 0.5 * h * (fm - fp) / denom
            if abs(step) < h:
                s = min(1.0, max(0.0, s + step))
    val = _ridge_value(p, s)
    end = _ridge_value(p, 1.0)
    if end >= val:
        return 1.0, end
    return s, val
