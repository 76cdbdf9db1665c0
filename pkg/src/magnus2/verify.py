"""Self-verification suites with printed margins.

Each suite runs a handful of closed-form-vs-oracle checks at fixed seeds
and returns (name, passed, margin) triples; the CLI's ``verify`` command
prints them and exits nonzero on any failure.  Tolerances are the library
contract, not calibration knobs.
"""

from __future__ import annotations

import math

import numpy as np

from .explog import exp2, is_logable, log2
from .geometry import chiral_disk, log_norm_from_disk, principal_disk, xi_ph
from .m2 import M2R, d_disc, op_norm, signed_conorm, t_polar
from .magnus import (PiecewiseMeasure, dev_w, lexp, magnus_exponent,
                     magnus_exponent_lifted, normal_form, nw_eval,
                     optimal_ridge, parabolic_density)
from .bch_min import (critical_bch_search, discont_limsup, sup_bch_norm_bound,
                      wedge_cap_patches)
from .counterexample import verify_count22
from .schur_bch import bch_closed, schur_left, schur_right
from .specfun import (ReFamily, ell, g_loxo, j_pi_constant, j_upper,
                      re_family, script_ef)

__all__ = ["run_suite", "SUITES"]


class Check:
    def __init__(self):
        self.rows = []

    def add(self, name, margin, tol):
        self.rows.append((name, margin <= tol, margin, tol))


def _rand_m2r(rng, s=1.0):
    return M2R(*(s * rng.standard_normal(4)))


def _suite_specfun():
    ck = Check()
    ck.add("ell(pi) = 0.386519539", abs(ell(math.pi) - 0.386519539), 1e-8)
    ck.add("J_pi = -3.0222", abs(j_pi_constant() - (-3.0222)), 5e-4)
    ck.add("G(pi/2) = (pi/2) e^{pi/2}",
           abs(g_loxo(math.pi / 2) - math.pi / 2 * math.exp(math.pi / 2)), 1e-12)
    worst = 0.0
    for x in (-10.0, -1.0, 0.3, 5.0, 9.0):
        c = re_family("C", x)
        w = re_family("W", x)
        p = re_family("P", x)
        worst = max(worst, abs(c * c - w - p))
    ck.add("C^2 = W + P on grid", worst, 1e-12)
    e0, f0 = script_ef(0.0)
    ck.add("E(0), F(0)", max(abs(e0 - math.sqrt(3)), abs(f0 - 1 / math.sqrt(3))),
           1e-13)
    small = max(abs(j_upper(p) - (p + p ** 3 / 6 - p ** 5 / 72)
                    - 211.0 / 15120.0 * p ** 7) / p ** 7
                for p in (0.05, 0.1))
    ck.add("J(p) small-p series (p^7 coefficient)", small, 211.0 / 15120.0 * 0.05)
    return ck


def _suite_explog():
    ck = Check()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(200):
        X = _rand_m2r(rng, 0.6)
        if d_disc(X) >= math.pi ** 2 or op_norm(X) >= math.pi:
            continue
        Y = log2(exp2(X))
        worst = max(worst, op_norm(Y - X) / max(1.0, op_norm(X)))
    ck.add("log(exp(X)) = X", worst, 1e-9)
    worst = 0.0
    for _ in range(200):
        A = exp2(_rand_m2r(rng, 0.8))
        worst = max(worst, op_norm(exp2(log2(A)) - A) / max(1.0, op_norm(A)))
    ck.add("exp(log(A)) = A", worst, 1e-9)
    worst = 0.0
    for _ in range(100):
        A = _rand_m2r(rng)
        worst = max(worst, abs(exp2(A).det - math.exp(A.trace)))
    ck.add("det exp = exp tr", worst, 1e-10)
    return ck


def _suite_bch():
    ck = Check()
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(200):
        A, B = _rand_m2r(rng, 0.8), _rand_m2r(rng, 0.8)
        P = exp2(A) @ exp2(B)
        if not is_logable(P):
            continue
        worst = max(worst, op_norm(bch_closed(A, B) - log2(P))
                    / max(1.0, op_norm(P)))
    ck.add("bch_closed = log(exp exp)", worst, 1e-10)
    worst = 0.0
    for _ in range(50):
        A, v = _rand_m2r(rng), _rand_m2r(rng)
        if d_disc(A) >= math.pi ** 2 - 0.3:
            continue
        diff = schur_right(A, v) - schur_left(A, v) - A.commutator(v)
        worst = max(worst, op_norm(diff))
    ck.add("right - left Schur = [A,v]", worst, 1e-12)
    bound = discont_limsup(0.0)
    best = critical_bch_search(2000)
    ck.add("critical search <= bound", max(0.0, best - bound), 1e-6)
    ck.add("critical search >= 98% bound", max(0.0, 0.98 * bound - best), 0.0)
    return ck


def _suite_magnus():
    ck = Check()
    worst = 0.0
    for p in (1.0, 2.0, 3.0):
        phi = PiecewiseMeasure.from_density(parabolic_density,
                                            (0.0, math.pi)).scaled(p / math.pi)
        val = op_norm(log2(lexp(phi)))
        ref = math.pi * math.sqrt((math.pi + p) / (math.pi - p)) - math.pi - p
        worst = max(worst, abs(val - ref))
    ck.add("critical closed form", worst, 1e-7)
    worst = 0.0
    for p in (0.5, 2.0, 3.0):
        worst = max(worst, abs(magnus_exponent(dev_w(p, p)) - p))
    ck.add("M(W(p,p)) = p", worst, 1e-9)
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(100):
        A = _rand_m2r(rng, 0.8)
        try:
            nf = normal_form(A)
        except ValueError:
            continue
        worst = max(worst, op_norm(nw_eval(nf) - A) / max(1.0, op_norm(A)))
    ck.add("normal form round trip", worst, 1e-8)
    z = 4.493409457909064
    Z = M2R(-math.sqrt(1 + z * z), 0.0, -z, 0.0)
    ck.add("lifted exponent of Z = 4.4934",
           abs(magnus_exponent_lifted(Z) - z), 1e-4)
    worst = 0.0
    for p in np.linspace(0.4, 3.0, 6):
        s, v = optimal_ridge(float(p))
        low = op_norm(log2(dev_w(p, p)))
        high = j_upper(float(p))
        worst = max(worst, low - v, v - high)
    ck.add("parabolic <= ridge <= J(p)", max(worst, 0.0), 1e-9)
    return ck


def _suite_bchmin():
    ck = Check()
    target = math.pi / 2 * math.exp(math.pi / 2)
    best = 0.0
    for _, _, _, wp in wedge_cap_patches(grid=48):
        best = max(best, wp.norm)
    ck.add("wedge-cap sup = G(pi/2)", abs(best - target), 1e-3)
    worst = 0.0
    for p in np.linspace(math.pi / 2, math.pi - 1e-3, 25):
        lim, mid, g = sup_bch_norm_bound(float(p))
        worst = max(worst, lim - mid, mid - g)
    ck.add("limsup < 2 pi sqrt3/(pi-p) < G(p)", max(worst, 0.0), 0.0)
    return ck


def _suite_count22():
    ck = Check()
    rep = verify_count22()
    ck.add("(i) ellipse in unit disk", 0.0 if rep.in_unit_disk else 1.0, 0.0)
    ck.add("(i) margin > 1e-4", max(0.0, 1e-4 - rep.disk_margin), 0.0)
    ck.add("(ii) ellipse inside S_p0", 0.0 if rep.inside_region else 1.0, 0.0)
    ck.add("(ii) exactly 3 tangencies", abs(rep.touch_count - 3), 0.0)
    ck.add("(ii) curvature signs", 0.0 if rep.curvature_ok else 1.0, 0.0)
    ck.add("(iii) half-mass ellipse escapes",
           0.0 if rep.half_mass_escapes else 1.0, 0.0)
    ck.add("(iii) margin > 1e-4", max(0.0, 1e-4 - rep.escape_margin), 0.0)
    return ck


SUITES = {
    "specfun": _suite_specfun,
    "explog": _suite_explog,
    "bch": _suite_bch,
    "magnus": _suite_magnus,
    "bchmin": _suite_bchmin,
    "count22": _suite_count22,
}


def run_suite(name):
    """Run one suite (or 'all'); returns list of (label, ok, margin, tol)."""
    if name == "all":
        rows = []
        for key in SUITES:
            for label, ok, margin, tol in run_suite(key):
                rows.append((f"{key}: {label}", ok, margin, tol))
        return rows
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]().rows
