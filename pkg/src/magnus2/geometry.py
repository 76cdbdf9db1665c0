"""Disks, conformal-range circles, log-norm from disk data, and the
hyperbolic-plane charts (CKB / HP / AHP / ACKB).

The chiral disk CD(A) = D((a, b), sqrt(c^2+d^2)) encodes the rotation-
conjugation orbit of a real 2x2 matrix; the principal disk folds the
chirality sign into the upper half plane.  Everything downstream
(log-norm monotonicity, Magnus exponents) reads off these disks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .m2 import M2R
from .specfun import ac, as_at

__all__ = [
    "Disk",
    "PHPoint",
    "chiral_disk",
    "principal_disk",
    "matrix_of_disk",
    "conformal_range_circles",
    "log_norm_from_disk",
    "xi_ph",
    "model_convert",
    "disk_inclusion",
]


@dataclass(frozen=True, slots=True)
class Disk:
    """Closed disk in C: center and radius >= 0."""

    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("negative radius")

    def distance_to_negative_axis(self):
        """Distance from the disk center to the cut (-inf, 0]."""
        x, y = self.center.real, self.center.imag
        if x <= 0.0:
            return abs(y)
        return math.hypot(x, y)

    def avoids_cut(self, slack=0.0):
        return self.distance_to_negative_axis() > self.radius + slack


@dataclass(frozen=True, slots=True)
class PHPoint:
    """Image point of the rotation-invariant chart (a, b, sqrt(c^2+d^2))."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.z < 0:
            raise ValueError("negative z")


def chiral_disk(A):
    """CD(A) = D(a + b i, sqrt(c^2 + d^2)); keeps the chirality sign of b."""
    return Disk(complex(A.ta, A.tb), math.hypot(A.tc, A.td))


def principal_disk(A):
    """PD(A) = CD(A) folded to Im(center) >= 0."""
    return Disk(complex(A.ta, abs(A.tb)), math.hypot(A.tc, A.td))


def matrix_of_disk(d):
    """A representative matrix with CD = d: a Id + b I~ + r J~."""
    return M2R(d.center.real, d.center.imag, d.radius, 0.0)


def conformal_range_circles(A):
    """The two circles whose union is the conformal range of A on R^2.

    Returned as disks; the range is their boundaries, mirror images of the
    chiral disk and its conjugate.
    """
    r = math.hypot(A.tc, A.td)
    return (Disk(complex(A.ta, A.tb), r), Disk(complex(A.ta, -A.tb), r))


def log_norm_from_disk(d):
    """(||log A||, floor(log A)) for any A with principal disk ``d``.

    Splits into the center part f_CA = |log center-spectrum| and the radius
    part f_RD = r AC(.)/sqrt(det); norm = f_CA + f_RD, co-norm = f_CA - f_RD.
    Raises ValueError when the disk meets the cut (-inf, 0].
    """
    a, b = d.center.real, d.center.imag
    r = d.radius
    det = a * a + b * b - r * r
    if det <= 0.0 or not d.avoids_cut():
        raise ValueError("disk touches the cut: no logarithm")
    sq = math.sqrt(det)
    f = ac(a / sq) / sq
    f_ca = math.hypot(math.log(sq), b * f)
    f_rd = r * f
    return f_ca + f_rd, f_ca - f_rd


def conical_defect(d):
    """RHS of the gradient identity for f = ||log|| as a function of (a,b,r):

        (df/dr)^2 - (df/da)^2 - (df/db)^2 = ((f/f_CA) b AS(.)/(det))^2.

    Evaluated here as the right-hand side; tests compare against finite
    differences of ``log_norm_from_disk``.
    """
    a, b = d.center.real, d.center.imag
    r = d.radius
    det = a * a + b * b - r * r
    sq = math.sqrt(det)
    f = ac(a / sq) / sq
    f_ca = math.hypot(math.log(sq), b * f)
    f_val = f_ca + r * f
    asv, _ = as_at(a / sq)
    return (f_val / f_ca * b * asv / det) ** 2


def xi_ph(A):
    """Rotation-invariant chart: A -> (a, b, sqrt(c^2 + d^2))."""
    return PHPoint(A.ta, A.tb, math.hypot(A.tc, A.td))


_MODELS = ("CKB", "HP", "AHP", "ACKB")


def _to_ckb(p, model):
    x, y = p
    if model == "CKB":
        if x * x + y * y >= 1.0:
            raise ValueError("point outside the open CKB disk")
        return x, y
    if model == "HP":
        s = math.sqrt(1.0 + x * x + y * y)
        return x / s, y / s
    if model == "AHP":
        if abs(x) >= math.pi / 2:
            raise ValueError("AHP first coordinate out of (-pi/2, pi/2)")
        return _to_ckb((math.tan(x), y), "HP")
    if model == "ACKB":
        if abs(x) > math.pi / 2 or abs(y) >= 1.0:
            raise ValueError("ACKB point out of range")
        xc = math.sin(x)
        return xc, y * math.sqrt(1.0 - xc * xc)
    raise ValueError(f"unknown model {model!r}")


def _from_ckb(xc, yc, model):
    if model == "CKB":
        return xc, yc
    if model == "HP":
        s = 1.0 - xc * xc - yc * yc
        if s <= 0.0:
            raise ValueError("asymptotic point has no HP image")
        return xc / math.sqrt(s), yc / math.sqrt(s)
    if model == "AHP":
        xh, yh = _from_ckb(xc, yc, "HP")
        return math.atan(xh), yh
    if model == "ACKB":
        # accepts |x_CKB| = 1 with y = 0 (the blown-up asymptotic points)
        s = 1.0 - xc * xc
        if s <= 0.0:
            if abs(abs(xc) - 1.0) < 1e-15 and yc == 0.0:
                return math.copysign(math.pi / 2, xc), 0.0
            raise ValueError("ACKB image undefined here")
        return math.asin(xc), yc / math.sqrt(s)
    raise ValueError(f"unknown model {model!r}")


def model_convert(point, src, dst):
    """Convert a hyperbolic-plane point between CKB, HP, AHP and ACKB."""
    if src not in _MODELS or dst not in _MODELS:
        raise ValueError("model must be one of CKB, HP, AHP, ACKB")
    if src == dst:
        return tuple(point)
    xc, yc = _to_ckb(tuple(point), src)
    return _from_ckb(xc, yc, dst)


def disk_inclusion(d1, d2, tol=1e-12):
    """d1 subseteq d2 via the exact center-distance criterion."""
    return abs(d1.center - d2.center) + d1.radius <= d2.radius + tol
