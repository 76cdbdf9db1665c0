"""The complex 2x2 counterexample machinery.

The Magnus range S_p is the CKB image of exp of the upper-half disk of
radius p; its boundary curve, the tangent-line coefficients, and the
ellipse tritangent to it at parameters (t, pi/2, pi - t) drive an automated
verification that conformal-range containment does not control the complex
Magnus exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "boundary_curve",
    "tangent_coeffs",
    "EllipseQuadric",
    "ellipse",
    "s_region_distance",
    "verify_count22",
    "Count22Report",
]


def boundary_curve(p, t):
    """Boundary point s_p(t) = (cos(p sin t)/cosh(p cos t), tanh(p cos t))."""
    if not 0.0 < p < math.pi:
        raise ValueError("p must lie in (0, pi)")
    return (math.cos(p * math.sin(t)) / math.cosh(p * math.cos(t)),
            math.tanh(p * math.cos(t)))


def tangent_coeffs(p, t):
    """(A, B, C) of the tangent line A x + B y + C = 0 to s_p at t."""
    st, ct = math.sin(t), math.cos(t)
    sh, ch = math.sinh(p * ct), math.cosh(p * ct)
    sp, cp = math.sin(p * st), math.cos(p * st)
    a = st
    b = st * sh * cp - ct * ch * sp
    c = -st * ch * cp + ct * sh * sp
    return a, b, c


@dataclass(frozen=True)
class EllipseQuadric:
    """Coefficients of E(x, y) = cxx x^2 + cyy y^2 + cx x + c0 (no xy, y terms).

    The tritangent ellipses here are symmetric in y, so the quadric has
    only these four coefficients; cyy >= 0 by normalization.
    """

    cxx: float
    cyy: float
    cx: float
    c0: float

    def __call__(self, x, y):
        return self.cxx * x * x + self.cyy * y * y + self.cx * x + self.c0

    def gradient(self, x, y):
        return (2.0 * self.cxx * x + self.cx, 2.0 * self.cyy * y)

    def axes(self):
        """(center_x, semi_axis_x, semi_axis_y); requires an actual ellipse."""
        if self.cxx <= 0.0 or self.cyy <= 0.0:
            raise ValueError("degenerate quadric")
        xc = -self.cx / (2.0 * self.cxx)
        disc = self.cx ** 2 / (4.0 * self.cxx) - self.c0
        if disc <= 0.0:
            raise ValueError("degenerate quadric: empty interior")
        return xc, math.sqrt(disc / self.cxx), math.sqrt(disc / self.cyy)

    def boundary_point(self, phi):
        xc, ax, ay = self.axes()
        return (xc + ax * math.cos(phi), ay * math.sin(phi))


def ellipse(p, t):
    """The ellipse tangent to s_p at the parameters t, pi/2, pi - t (t < pi/2).

    E(x,y) = (cos(p sin t) - cosh(p cos t) x)^2 (A cos p + C)^2
             - (cos(p sin t) - cosh(p cos t) cos p)^2 ((A x + C)^2 - (B y)^2)
    expanded into quadric coefficients.
    """
    if not 0.0 < t < math.pi / 2:
        raise ValueError("tangency parameter must lie in (0, pi/2)")
    a, b, c = tangent_coeffs(p, t)
    ch = math.cosh(p * math.cos(t))
    cs = math.cos(p * math.sin(t))
    k1 = a * math.cos(p) + c
    k2 = cs - ch * math.cos(p)
    cxx = ch * ch * k1 * k1 - k2 * k2 * a * a
    cx = -2.0 * cs * ch * k1 * k1 - 2.0 * k2 * k2 * a * c
    c0 = cs * cs * k1 * k1 - k2 * k2 * c * c
    cyy = k2 * k2 * b * b
    quad = EllipseQuadric(cxx, cyy, cx, c0)
    quad.axes()  # raises on degeneracy
    return quad


def s_region_distance(x, y, p):
    """Signed distance proxy p - |log w| of a CKB point to the region S_p.

    Positive inside.  w is the half-plane preimage u + i v with
    u = x/(1-y), v^2 = (1+y)/(1-y) - u^2; points outside the unit disk have
    no preimage and raise ValueError.
    """
    if y >= 1.0 or x * x + y * y > 1.0:
        raise ValueError("point outside the CKB disk")
    u = x / (1.0 - y)
    v2 = (1.0 + y) / (1.0 - y) - u * u
    v = math.sqrt(max(v2, 0.0))
    w = complex(u, v)
    return p - abs(complex(math.log(abs(w)), math.atan2(v, u)))


@dataclass(frozen=True)
class Count22Report:
    """Outcome of the automated counterexample verification.

    in_unit_disk: the tritangent ellipse at (p0, t0) lies inside the open
    unit disk (margin: 1 - max |z|).  inside_region: it lies in S_{p0},
    touching the boundary only at the three tangency parameters (margin:
    most negative signed distance; touch_count: near-zero clusters;
    curvature_ok: second-derivative sign at the touch points).
    half_mass_escapes: the (p0/2, t0) ellipse leaves the unit disk
    (margin: max |z| - 1, witness point attached).
    """

    in_unit_disk: bool
    disk_margin: float
    inside_region: bool
    region_margin: float
    touch_count: int
    curvature_ok: bool
    half_mass_escapes: bool
    escape_margin: float
    escape_witness: tuple

    @property
    def all_hold(self):
        return self.in_unit_disk and self.inside_region and self.half_mass_escapes


def _max_radius_on_ellipse(quad, n=100_000):
    """max of sqrt(x^2+y^2) over the ellipse boundary, Newton-polished."""
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    xc, ax, ay = quad.axes()
    x = xc + ax * np.cos(phis)
    y = ay * np.sin(phis)
    r2 = x * x + y * y
    i = int(np.argmax(r2))
    phi = float(phis[i])

    def f(u):
        xx = xc + ax * math.cos(u)
        yy = ay * math.sin(u)
        return xx * xx + yy * yy

    h = 2.0 * math.pi / n
    lo, hi = phi - h, phi + h
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - gr * (hi - lo)
    x2 = lo + gr * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(90):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + gr * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - gr * (hi - lo)
            f1 = f(x1)
    phi = 0.5 * (lo + hi)
    best = math.sqrt(f(phi))
    return best, quad.boundary_point(phi)


def verify_count22(p0=14.0 * math.pi / 15.0, t0=7.0 * math.pi / 15.0,
                   n_boundary=10_000):
    """Run the three checks of the counterexample at (p0, t0).

    (i) the tritangent ellipse lies in the open unit disk; (ii) it lies in
    S_{p0} with tangency exactly at the three construction parameters
    (signed-distance sampling plus second-derivative sign checks); (iii)
    the half-mass ellipse at (p0/2, t0) leaves the unit disk.
    """
    quad = ellipse(p0, t0)
    rmax, _ = _max_radius_on_ellipse(quad)
    disk_margin = 1.0 - rmax

    phis = np.linspace(0.0, 2.0 * math.pi, n_boundary, endpoint=False)
    dists = np.array([s_region_distance(*quad.boundary_point(float(u)), p0)
                      for u in phis])
    region_margin = float(np.min(dists))
    inside = region_margin >= -1e-9

    # near-zero clusters of the signed distance = tangency points
    # (1e-6 separates the three dips; the saddle between them sits ~1e-5)
    near = dists < 1e-6
    touches = 0
    prev = bool(near[-1])
    for flag in near:
        if flag and not prev:
            touches += 1
        prev = bool(flag)

    # second-derivative (curvature) check near each tangency parameter:
    # the distance along the ellipse has a strict local minimum ~ 0
    curvature_ok = True
    xc, ax, ay = quad.axes()
    for ttouch in (t0, math.pi / 2.0, math.pi - t0):
        x, y = boundary_curve(p0, ttouch)
        phi = math.atan2(y / ay, (x - xc) / ax)
        h = 1e-3

        def dist(u):
            return s_region_distance(*quad.boundary_point(u), p0)

        d0, dp, dm = dist(phi), dist(phi + h), dist(phi - h)
        if not (dp - 2.0 * d0 + dm > 0.0 and abs(d0) < 1e-7):
            curvature_ok = False

    quad_half = ellipse(p0 / 2.0, t0)
    rmax_half, witness = _max_radius_on_ellipse(quad_half)
    escape_margin = rmax_half - 1.0

    return Count22Report(
        in_unit_disk=disk_margin > 0.0,
        disk_margin=disk_margin,
        inside_region=inside,
        region_margin=region_margin,
        touch_count=touches,
        curvature_ok=curvature_ok,
        half_mass_escapes=escape_margin > 0.0,
        escape_margin=escape_margin,
        escape_witness=witness,
    )
