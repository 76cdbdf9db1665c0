"""Core 2x2 matrix values in skew-quaternionic coordinates.

A matrix is stored as the coefficients (ta, tb, tc, td) over the basis
Id, I~, J~, K~ with

    I~ = [[0,-1],[1,0]],   J~ = [[1,0],[0,-1]],   K~ = [[0,1],[1,0]],

so the entry form is [[ta+tc, -tb+td], [tb+td, ta-tc]].  Every closed form
of the calculus is shortest in this basis; the entry form is a view.

Values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import config
from . import _backend as _k

__all__ = [
    "M2R",
    "M2C",
    "Discriminants",
    "skew_of_entries",
    "entries_of_skew",
    "op_norm",
    "conorm",
    "signed_conorm",
    "d_disc",
    "t_polar",
    "norm_disc",
    "discriminants",
    "is_conform_unitary",
    "norm_directional_derivative",
    "conorm_directional_derivative",
    "moment_mn",
    "commutator_reduce",
    "evaluate_word",
]


@dataclass(frozen=True, slots=True)
class M2R:
    """Real 2x2 matrix, coefficients of Id, I~, J~, K~."""

    ta: float
    tb: float
    tc: float
    td: float

    def __add__(self, other):
        return M2R(self.ta + other.ta, self.tb + other.tb,
                   self.tc + other.tc, self.td + other.td)

    def __sub__(self, other):
        return M2R(self.ta - other.ta, self.tb - other.tb,
                   self.tc - other.tc, self.td - other.td)

    def __neg__(self):
        return M2R(-self.ta, -self.tb, -self.tc, -self.td)

    def __rmul__(self, s):
        return M2R(s * self.ta, s * self.tb, s * self.tc, s * self.td)

    def __matmul__(self, other):
        if isinstance(other, M2C):
            return self.as_complex() @ other
        return M2R(*_k.mul(self.ta, self.tb, self.tc, self.td,
                           other.ta, other.tb, other.tc, other.td))

    @property
    def trace(self):
        return 2.0 * self.ta

    @property
    def det(self):
        return self.ta ** 2 + self.tb ** 2 - self.tc ** 2 - self.td ** 2

    @property
    def T(self):
        """Transpose (= adjoint for real matrices)."""
        return M2R(self.ta, -self.tb, self.tc, self.td)

    adj = T

    def detraced(self):
        return M2R(0.0, self.tb, self.tc, self.td)

    def commutator(self, other):
        return self @ other - other @ self

    def entries(self):
        return entries_of_skew(self)

    def as_complex(self):
        return M2C(complex(self.ta), complex(self.tb),
                   complex(self.tc), complex(self.td))

    def norm(self):
        return _k.op_norm(self.ta, self.tb, self.tc, self.td)

    def close_to(self, other, tol=1e-12):
        """Coordinate-wise max-norm comparison."""
        return max(abs(self.ta - other.ta), abs(self.tb - other.tb),
                   abs(self.tc - other.tc), abs(self.td - other.td)) <= tol


@dataclass(frozen=True, slots=True)
class M2C:
    """Complex 2x2 matrix over the same basis."""

    ta: complex
    tb: complex
    tc: complex
    td: complex

    def __add__(self, other):
        other = _lift(other)
        return M2C(self.ta + other.ta, self.tb + other.tb,
                   self.tc + other.tc, self.td + other.td)

    def __sub__(self, other):
        other = _lift(other)
        return M2C(self.ta - other.ta, self.tb - other.tb,
                   self.tc - other.tc, self.td - other.td)

    def __neg__(self):
        return M2C(-self.ta, -self.tb, -self.tc, -self.td)

    def __rmul__(self, s):
        return M2C(s * self.ta, s * self.tb, s * self.tc, s * self.td)

    def __matmul__(self, other):
        other = _lift(other)
        a1, b1, c1, d1 = self.ta, self.tb, self.tc, self.td
        a2, b2, c2, d2 = other.ta, other.tb, other.tc, other.td
        return M2C(a1 * a2 - b1 * b2 + c1 * c2 + d1 * d2,
                   a1 * b2 + b1 * a2 - c1 * d2 + d1 * c2,
                   a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2,
                   a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2)

    @property
    def trace(self):
        return 2.0 * self.ta

    @property
    def det(self):
        return self.ta ** 2 + self.tb ** 2 - self.tc ** 2 - self.td ** 2

    @property
    def H(self):
        """Conjugate transpose."""
        return M2C(self.ta.conjugate(), -self.tb.conjugate(),
                   self.tc.conjugate(), self.td.conjugate())

    @property
    def T(self):
        return M2C(self.ta, -self.tb, self.tc, self.td)

    def detraced(self):
        return M2C(0j, self.tb, self.tc, self.td)

    def commutator(self, other):
        return self @ other - other @ self

    def entries(self):
        return entries_of_skew(self)

    def norm(self):
        return op_norm(self)

    def close_to(self, other, tol=1e-12):
        other = _lift(other)
        return max(abs(self.ta - other.ta), abs(self.tb - other.tb),
                   abs(self.tc - other.tc), abs(self.td - other.td)) <= tol


def _lift(m):
    return m.as_complex() if isinstance(m, M2R) else m


M2R.ZERO = M2R(0.0, 0.0, 0.0, 0.0)
M2R.ID = M2R(1.0, 0.0, 0.0, 0.0)
M2R.I = M2R(0.0, 1.0, 0.0, 0.0)
M2R.J = M2R(0.0, 0.0, 1.0, 0.0)
M2R.K = M2R(0.0, 0.0, 0.0, 1.0)
M2C.ID = M2C(1 + 0j, 0j, 0j, 0j)


def skew_of_entries(m11, m12, m21, m22):
    """Entries -> coordinates; returns M2R for real input, M2C otherwise."""
    ta = (m11 + m22) / 2.0
    tb = (m21 - m12) / 2.0
    tc = (m11 - m22) / 2.0
    td = (m21 + m12) / 2.0
    if any(isinstance(v, complex) for v in (m11, m12, m21, m22)):
        return M2C(complex(ta), complex(tb), complex(tc), complex(td))
    return M2R(float(ta), float(tb), float(tc), float(td))


def entries_of_skew(m):
    """Coordinates -> entries (m11, m12, m21, m22)."""
    return (m.ta + m.tc, -m.tb + m.td, m.tb + m.td, m.ta - m.tc)


# ---------------------------------------------------------------------------
# scalar invariants


def d_disc(m):
    """D_A = det(A - (tr A/2) Id) = tb^2 - tc^2 - td^2."""
    return m.tb ** 2 - m.tc ** 2 - m.td ** 2


def t_polar(m, v):
    """T_{A,v} = (1/2) tr of the product of the detraced factors."""
    return -m.tb * v.tb + m.tc * v.tc + m.td * v.td


def norm_disc(m):
    """-D_{A*A} >= 0; zero exactly for conform-unitary or zero matrices."""
    if isinstance(m, M2R):
        return 4.0 * (m.ta ** 2 + m.tb ** 2) * (m.tc ** 2 + m.td ** 2)
    g = m.H @ m
    # A*A is self-adjoint: its D is real and <= 0
    return -d_disc(g).real


@dataclass(frozen=True, slots=True)
class Discriminants:
    """Bundle of the discriminant-like scalars of a matrix (pair)."""

    d_a: complex
    norm_disc: float
    t_av: complex | None = None


def discriminants(m, v=None):
    return Discriminants(d_a=d_disc(m), norm_disc=norm_disc(m),
                         t_av=None if v is None else t_polar(m, v))


def op_norm(m):
    """Operator norm; real case in coordinates, complex via tr(A*A), D_{A*A}."""
    if isinstance(m, M2R):
        return _k.op_norm(m.ta, m.tb, m.tc, m.td)
    g = m.H @ m
    half_tr = g.ta.real
    nd = norm_disc(m)
    return math.sqrt(max(half_tr + math.sqrt(max(nd, 0.0)), 0.0))


def conorm(m):
    """Co-norm ||A||^- = 1/||A^{-1}||."""
    if isinstance(m, M2R):
        return abs(_k.signed_conorm(m.ta, m.tb, m.tc, m.td))
    g = m.H @ m
    half_tr = g.ta.real
    nd = norm_disc(m)
    return math.sqrt(max(half_tr - math.sqrt(max(nd, 0.0)), 0.0))


def signed_conorm(m):
    """0 for the zero matrix, det A / ||A|| otherwise (real only)."""
    return _k.signed_conorm(m.ta, m.tb, m.tc, m.td)


def is_conform_unitary(m, tol=None):
    """Scalar multiple of a unitary (real: orthogonal) matrix, nonzero."""
    if tol is None:
        tol = config.DEGENERACY_TOL
    n = op_norm(m)
    if n == 0.0:
        return False
    return norm_disc(m) <= (tol * n * n) ** 2


# ---------------------------------------------------------------------------
# directional derivatives of the norm (and real signed co-norm)


def _s_upper(v):
    va, vb, vc, vd = v.ta, v.tb, v.tc, v.td
    if isinstance(v, M2R):
        return va + math.hypot(vc, vd)
    return va.real + math.sqrt(vb.imag ** 2 + vc.real ** 2 + vd.real ** 2)


def _s_lower(v):
    va, vb, vc, vd = v.ta, v.tb, v.tc, v.td
    if isinstance(v, M2R):
        return va - math.hypot(vc, vd)
    return va.real - math.sqrt(vb.imag ** 2 + vc.real ** 2 + vd.real ** 2)


def _inverse(m):
    det = m.det
    if isinstance(m, M2R):
        return (1.0 / det) * M2R(m.ta, -m.tb, -m.tc, -m.td)
    return (1.0 / det) * M2C(m.ta, -m.tb, -m.tc, -m.td)


def norm_directional_derivative(A, v):
    """D_v ||M||_2 at M = A, along smooth curves.

    Case dispatch: zero matrix, conform-unitary, generic -D_{A*A} > 0.
    When the norm discriminant is numerically indistinct from zero
    (relative band DEGENERACY_TOL) without A being conform-unitary within
    the same band, neither closed form is trustworthy: ValueError.
    """
    A = _match(A, v)
    v = _match(v, A)
    nA = op_norm(A)
    if nA == 0.0:
        return op_norm(v)
    nd = norm_disc(A)
    if nd <= config.DEGENERACY_TOL * nA ** 4:
        if is_conform_unitary(A):
            return nA * _s_upper(_inverse(A) @ v)
        raise ValueError("norm not smooth: -D_{A*A} ~ 0 but A is not "
                         "conform-unitary")
    if isinstance(A, M2R):
        tr_av = (A.T @ v).trace
        mixed = A.trace * v.trace - (A @ v).trace
        return (nA * tr_av - signed_conorm(A) * mixed) / (2.0 * math.sqrt(nd))
    tr_av = (A.H @ v).trace
    mixed = A.trace * v.trace - (A @ v).trace
    num = nA * tr_av.real - (A.det.conjugate() * mixed).real / nA
    return num / (2.0 * math.sqrt(nd))


def conorm_directional_derivative(A, v):
    """D_v of the signed co-norm at M = A (real matrices)."""
    nA = op_norm(A)
    if nA == 0.0:
        return signed_conorm(v)
    nd = norm_disc(A)
    if nd <= config.DEGENERACY_TOL * nA ** 4:
        if is_conform_unitary(A):
            return signed_conorm(A) * _s_lower(_inverse(A) @ v)
        raise ValueError("co-norm not smooth: -D_{A*A} ~ 0 but A is not "
                         "conform-unitary")
    tr_av = (A.T @ v).trace
    mixed = A.trace * v.trace - (A @ v).trace
    return (nA * mixed - signed_conorm(A) * tr_av) / (2.0 * math.sqrt(nd))


def moment_mn(A):
    """Moment of the norm gradient: D_v||M|| at A equals (1/2) Re tr(MN(A)* v).

    Defined away from the degenerate locus -D_{A*A} = 0.
    """
    A = _lift(A)
    nd = norm_disc(A)
    if nd < 1e-12:
        raise ValueError("moment undefined: -D_{A*A} ~ 0")
    nA = op_norm(A)
    g = A @ A.H @ A
    half_tr = (A.H @ A).ta
    corr = (1.0 / math.sqrt(nd)) * (g - half_tr * A)
    return (1.0 / nA) * (A + corr)


def _match(x, other):
    if isinstance(x, M2R) and isinstance(other, M2C):
        return x.as_complex()
    return x


# ---------------------------------------------------------------------------
# commutator-word reduction
#
# Pure commutator words in A, v live in the module spanned by
#   e1 = [A,v],  e2 = [A,[A,v]],  e3 = [v,[v,A]]
# over polynomials in (D_A, T_{A,v}, D_v).  The bracket closes on the span
# {A^, v^, e1, e2, e3} (detraced atoms), via the absorption rules
#   [A,[A,[A,v]]] = -4 D_A [A,v]   and its polarizations.

_DA = (1, 0, 0)
_T = (0, 1, 0)
_DV = (0, 0, 1)


class _Poly(dict):
    """Polynomial in (D_A, T, D_v): monomial exponent tuple -> Fraction."""

    def __missing__(self, key):
        return Fraction(0)

    def __add__(self, other):
        out = _Poly(self)
        for k, c in other.items():
            out[k] = out[k] + c
            if out[k] == 0:
                del out[k]
        return out

    def scale(self, c):
        return _Poly({k: v * c for k, v in self.items()}) if c else _Poly()

    def mono_mul(self, mono, c=Fraction(1)):
        return _Poly({tuple(a + b for a, b in zip(k, mono)): v * c
                      for k, v in self.items()})

    def eval(self, da, t, dv):
        return sum(float(c) * da ** i * t ** j * dv ** k
                   for (i, j, k), c in self.items())


def _poly_const(c):
    return _Poly({(0, 0, 0): Fraction(c)})


# generators indexed 0..4: A^, v^, e1, e2, e3
_GEN_A, _GEN_V, _E1, _E2, _E3 = range(5)

# bracket table [gen_i, gen_j] -> list of (gen, monomial, coefficient),
# e.g. [A,[A,[A,v]]] = -4 D_A [A,v] and [e2,e3] = (16 T^2 - 16 D_A D_v) e1
_BRACKET = {
    (_GEN_A, _GEN_V): [(_E1, (0, 0, 0), 1)],
    (_GEN_A, _E1): [(_E2, (0, 0, 0), 1)],
    (_GEN_A, _E2): [(_E1, _DA, -4)],
    (_GEN_A, _E3): [(_E1, _T, -4)],
    (_GEN_V, _E1): [(_E3, (0, 0, 0), -1)],
    (_GEN_V, _E2): [(_E1, _T, 4)],
    (_GEN_V, _E3): [(_E1, _DV, 4)],
    (_E1, _E2): [(_E2, _T, 4), (_E3, _DA, -4)],
    (_E1, _E3): [(_E2, _DV, 4), (_E3, _T, -4)],
    (_E2, _E3): [(_E1, (0, 2, 0), 16), (_E1, (1, 0, 1), -16)],
}


def _vec_bracket(u, w):
    out = [_Poly() for _ in range(5)]
    for i in range(5):
        if not u[i]:
            continue
        for j in range(5):
            if not w[j] or i == j:
                continue
            if (i, j) in _BRACKET:
                rules, sign = _BRACKET[(i, j)], 1
            else:
                rules, sign = _BRACKET[(j, i)], -1
            for gen, mono, coeff in rules:
                prod = _Poly()
                for ka, ca in u[i].items():
                    for kb, cb in w[j].items():
                        key = tuple(x + y + m for x, y, m in zip(ka, kb, mono))
                        prod[key] = prod[key] + ca * cb * coeff * sign
                out[gen] = out[gen] + prod
    return out


def _reduce_word(word):
    if word == "A":
        vec = [_Poly() for _ in range(5)]
        vec[_GEN_A] = _poly_const(1)
        return vec
    if word == "v":
        vec = [_Poly() for _ in range(5)]
        vec[_GEN_V] = _poly_const(1)
        return vec
    if isinstance(word, (tuple, list)) and len(word) == 2:
        return _vec_bracket(_reduce_word(word[0]), _reduce_word(word[1]))
    raise ValueError(f"malformed commutator word: {word!r}")


def commutator_reduce(word):
    """Reduce a nested-bracket word in A, v to the basis ([A,v], [A,[A,v]], [v,[v,A]]).

    ``word`` is 'A', 'v', or a pair (x, y) denoting [x, y]; the top level must
    be a bracket.  Returns three polynomial coefficient maps
    {(i,j,k): Fraction} in the scalars (D_A, T_{A,v}, D_v).

    >>> commutator_reduce(('A', ('A', ('A', 'v'))))[1]
    {(1, 0, 0): Fraction(-4, 1)}
    """
    if word in ("A", "v"):
        raise ValueError("word has an uncommutatored term")
    vec = _reduce_word(word)
    if vec[_GEN_A] or vec[_GEN_V]:
        raise ValueError("word has an uncommutatored term")
    return ({k: c for k, c in vec[_E1].items() if c},
            {k: c for k, c in vec[_E2].items() if c},
            {k: c for k, c in vec[_E3].items() if c})


def evaluate_word(word, A, v):
    """Evaluate a bracket word directly on concrete matrices (test oracle)."""
    if word == "A":
        return A
    if word == "v":
        return v
    return evaluate_word(word[0], A, v).commutator(evaluate_word(word[1], A, v))


def evaluate_reduction(coeffs, A, v):
    """Evaluate a commutator_reduce result on concrete matrices."""
    p1, p2, p3 = coeffs
    da, t, dv = d_disc(A), t_polar(A, v), d_disc(v)
    e1 = A.commutator(v)
    e2 = A.commutator(e1)
    e3 = v.commutator(v.commutator(A))
    out = _Poly(p1).eval(da, t, dv) * e1
    out = out + _Poly(p2).eval(da, t, dv) * e2
    out = out + _Poly(p3).eval(da, t, dv) * e3
    return out
