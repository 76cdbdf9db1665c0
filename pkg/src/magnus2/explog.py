"""Closed-form exponential and logarithm of 2x2 matrices.

exp(A) = e^{tr A/2} (Cos(D_A) Id + Sin(D_A) (A - (tr A/2) Id)) and the
matching AC-based logarithm; plus log-ability predicates, sqrt-dett, and
the enumeration of all real logarithms of a real matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import config
from . import _backend as _k
from .m2 import M2C, M2R, d_disc
from .specfun import ac, cos_big, sin_big

__all__ = [
    "exp2",
    "is_logable",
    "sqrt_dett",
    "log2",
    "eigenvalues",
    "RealLogSet",
    "real_log_set",
    "skew_involution",
]


def exp2(m):
    """Matrix exponential via trace split and the Cos/Sin closed form."""
    if isinstance(m, M2R):
        return M2R(*_k.exp2(m.ta, m.tb, m.tc, m.td))
    s = cmath.exp(m.ta)
    disc = d_disc(m)
    co = s * cos_big(complex(disc))
    si = s * sin_big(complex(disc))
    return M2C(co, si * m.tb, si * m.tc, si * m.td)


def eigenvalues(m):
    """The two eigenvalues tr A/2 +- sqrt(-D_A)."""
    if isinstance(m, M2R):
        m = m.as_complex()
    root = cmath.sqrt(-d_disc(m))
    return m.ta + root, m.ta - root


def is_logable(m):
    """Spectrum disjoint from (-inf, 0].

    Real case short-circuit: det > 0 and tr/(2 sqrt(det)) > -1.
    """
    if isinstance(m, M2R):
        det = m.det
        return det > 0.0 and m.ta / math.sqrt(det) > -1.0
    band = config.DEGENERACY_TOL * max(1.0, abs(m.ta))
    for lam in eigenvalues(m):
        if abs(lam.imag) <= band and lam.real <= band:
            return False
    return True


def sqrt_dett(m):
    """Product of the principal square roots of the eigenvalues.

    For log-able real input this is just sqrt(det); the complex value obeys
    sqrt-dett = exp(tr log A / 2) and stays off (-inf, 0].
    """
    if not is_logable(m):
        raise ValueError("sqrt_dett: matrix is not log-able")
    if isinstance(m, M2R):
        return math.sqrt(m.det)
    l1, l2 = eigenvalues(m)
    return cmath.sqrt(l1) * cmath.sqrt(l2)


def log2(m):
    """Principal logarithm, inverse of exp2 on the log-able set."""
    if isinstance(m, M2R):
        try:
            return M2R(*_k.log2(m.ta, m.tb, m.tc, m.td))
        except ValueError as exc:
            raise ValueError(f"log2: {exc}") from None
    sq = sqrt_dett(m)
    f = ac(m.ta / sq) / sq
    return M2C(cmath.log(sq), f * m.tb, f * m.tc, f * m.td)


# ---------------------------------------------------------------------------
# all real logarithms


def skew_involution(b, c, d):
    """The matrix b I~ + c J~ + d K~ with b^2 - c^2 - d^2 = 1 (so L^2 = -Id)."""
    if abs(b * b - c * c - d * d - 1.0) > 1e-9:
        raise ValueError("not a skew-involution parameterization")
    return M2R(0.0, b, c, d)


@dataclass(frozen=True)
class RealLogSet:
    """All real solutions of exp(M) = A, as a closed-form description.

    kind is one of 'unique', 'empty', 'scalar-family',
    'negative-scalar-family', 'elliptic-family'.  ``principal`` is the
    lowest-norm element when unique; ``lowest_norm`` lists the minimizers
    (two of them for negative scalars).  Families are reported through
    ``base`` (the Id-part), ``involution`` (fixed I_A for the elliptic
    family, None when the skew-involution itself is free), ``angles``:
    member = base + (angle + 2 k pi) L.
    """

    kind: str
    principal: M2R | None = None
    lowest_norm: tuple = ()
    base: float = 0.0
    involution: M2R | None = None
    angle: float = 0.0

    def member(self, k=0, involution=None):
        """Concrete member of the family for index k (and a chosen L)."""
        if self.kind == "unique":
            if k != 0:
                raise ValueError("unique log has no family index")
            return self.principal
        if self.kind == "empty":
            raise ValueError("empty log set")
        L = self.involution if self.involution is not None else involution
        if L is None:
            raise ValueError("family needs a skew-involution choice")
        return M2R(self.base, 0, 0, 0) + (self.angle + 2.0 * math.pi * k) * L


def real_log_set(A):
    """Enumerate Log^R(A) = {M real : exp M = A} per spectral case."""
    dA = d_disc(A)
    scale = max(A.norm(), 1.0)
    band = config.DEGENERACY_TOL * scale * scale
    if dA < -band:
        # hyperbolic: log exists iff both eigenvalues are positive
        root = math.sqrt(-dA)
        l1, l2 = A.ta + root, A.ta - root
        if l1 > 0.0 and l2 > 0.0:
            return RealLogSet(kind="unique", principal=log2(A),
                              lowest_norm=(log2(A),))
        return RealLogSet(kind="empty")
    if dA > band:
        # elliptic: A = r cos(phi) Id + r sin(phi) I_A
        root = math.sqrt(dA)
        I_A = (1.0 / root) * A.detraced()
        r = math.sqrt(A.det)
        phi = math.atan2(root, A.ta)
        principal = M2R(math.log(r), 0, 0, 0) + phi * I_A
        return RealLogSet(kind="elliptic-family", principal=principal,
                          lowest_norm=(principal,), base=math.log(r),
                          involution=I_A, angle=phi)
    # parabolic: only scalar matrices have real logs
    if max(abs(A.tb), abs(A.tc), abs(A.td)) <= config.DEGENERACY_TOL * scale:
        a = A.ta
        if a > 0.0:
            principal = M2R(math.log(a), 0, 0, 0)
            return RealLogSet(kind="scalar-family", principal=principal,
                              lowest_norm=(principal,), base=math.log(a),
                              involution=None, angle=0.0)
        if a < 0.0:
            base = math.log(-a)
            lo = (M2R(base, math.pi, 0, 0), M2R(base, -math.pi, 0, 0))
            return RealLogSet(kind="negative-scalar-family", principal=None,
                              lowest_norm=lo, base=base, involution=None,
                              angle=math.pi)
    return RealLogSet(kind="empty")
