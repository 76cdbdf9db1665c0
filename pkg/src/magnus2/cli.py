"""Command-line front end.

Subcommands: ``eval`` (exp/log/norm/conorm/bch), ``magnus`` (exponent /
classify / normal-form), ``sweep`` (CSV parameter sweeps), ``verify``
(self-check suites).  Matrices are given as ``a,b,c,d`` in the skew basis
by default (``--basis entry`` for entries, ``--complex`` for re:im pairs).

Exit codes: 0 success, 2 domain error, 64 parse error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import config
from .explog import exp2, log2
from .m2 import M2C, M2R, entries_of_skew, op_norm, signed_conorm, skew_of_entries
from .magnus import (MagnusClass, classify_magnus, dev_w, magnus_exponent,
                     magnus_exponent_lifted, normal_form, optimal_ridge)
from .bch_min import discont_limsup, wedge_cap_patches
from .schur_bch import bch_closed, moment_atlas
from .specfun import g_loxo, j_upper
from .verify import run_suite

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PARSE = 64
EXIT_IO = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


class DomainError(Exception):
    pass


def _parse_scalar(tok, want_complex):
    try:
        if want_complex:
            if ":" in tok:
                re_s, im_s = tok.split(":")
                return complex(float(re_s), float(im_s))
            return complex(float(tok), 0.0)
        return float(tok)
    except ValueError:
        raise SystemExit(EXIT_PARSE)


def parse_matrix(text, basis="skew", want_complex=False):
    toks = text.split(",")
    if len(toks) != 4:
        print(f"error: matrix needs 4 comma-separated scalars, got {text!r}",
              file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    vals = [_parse_scalar(t, want_complex) for t in toks]
    if basis == "skew":
        return M2C(*vals) if want_complex else M2R(*vals)
    if basis == "entry":
        return skew_of_entries(*vals)
    print(f"error: unknown basis {basis!r}", file=sys.stderr)
    raise SystemExit(EXIT_PARSE)


def _fmt(v):
    if isinstance(v, complex):
        return f"{v.real:.15g}:{v.imag:.15g}"
    return f"{v:.15g}"


def format_matrix(m, basis="skew"):
    vals = (m.ta, m.tb, m.tc, m.td) if basis == "skew" else entries_of_skew(m)
    return ",".join(_fmt(v) for v in vals)


def _max_workers():
    try:
        return max(1, int(os.environ.get("MAGNUS2_THREADS", "1")))
    except ValueError:
        return 1


def _sweep_map(fn, items):
    workers = _max_workers()
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _float_repr(v):
    return repr(float(v))


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(s if isinstance(s, str) else _float_repr(s)
                              for s in row))
    text = "\n".join(lines) + "\n"
    try:
        if path is None or path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eval(args):
    want_c = args.complex
    A = parse_matrix(args.matrix[0], args.basis, want_c)
    if args.op in ("exp", "log", "norm", "conorm"):
        if len(args.matrix) != 1:
            print("error: one matrix expected", file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
        if args.op == "exp":
            print(format_matrix(exp2(A), args.basis))
        elif args.op == "log":
            print(format_matrix(log2(A), args.basis))
        elif args.op == "norm":
            print(_fmt(op_norm(A)))
        else:
            if isinstance(A, M2C):
                raise DomainError("signed co-norm is defined for real matrices")
            print(_fmt(signed_conorm(A)))
        return
    if args.op == "bch":
        if len(args.matrix) != 2:
            print("error: bch expects two matrices", file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
        B = parse_matrix(args.matrix[1], args.basis, want_c)
        print(format_matrix(bch_closed(A, B), args.basis))
        return
    raise SystemExit(EXIT_PARSE)


def _cmd_magnus(args):
    A = parse_matrix(args.matrix, args.basis, False)
    if args.sub == "exponent":
        if args.lifted:
            print(_fmt(magnus_exponent_lifted(A)))
        else:
            print(_fmt(magnus_exponent(A)))
        return
    if args.sub == "classify":
        print(classify_magnus(A).value)
        return
    if args.sub == "normal-form":
        nf = normal_form(A)
        cls = classify_magnus(A)
        print(f"exponent {_fmt(nf.exponent)}")
        print(f"class {cls.value}")
        print(f"p1 {_fmt(nf.p1)}")
        print(f"p2 {_fmt(nf.p2)}")
        print(f"t {_fmt(nf.t)}")
        print(f"beta {_fmt(nf.beta)}")
        if nf.degenerate_direction:
            print("direction degenerate: t and pi - t present equally")
        p = nf.exponent
        print(f"layout uniform: density p1*R(t) + p2*R(2p theta sin t)F "
              f"on [-1/2,1/2], p = {_fmt(p)}")
        print(f"layout left: development[0,{_fmt(nf.p2)}] then "
              f"elliptic[0,{_fmt(nf.p1)}]")
        print(f"layout right: elliptic[0,{_fmt(nf.p1)}] then "
              f"development[0,{_fmt(nf.p2)}]")
        return
    raise SystemExit(EXIT_PARSE)


def _cmd_sweep(args):
    target = args.target
    if target == "ridge":
        ps = np.linspace(args.pmin, args.pmax, args.n)
        rows = _sweep_map(
            lambda p: (float(p),) + tuple(optimal_ridge(float(p))), ps)
        _write_csv(args.out, ["p", "s", "norm"], rows)
        return
    if target == "j-curve":
        ps = np.linspace(args.pmin, args.pmax, args.n)
        rows = _sweep_map(lambda p: (float(p), j_upper(float(p))), ps)
        _write_csv(args.out, ["p", "j"], rows)
        return
    if target == "g-curve":
        ps = np.linspace(max(args.pmin, math.pi / 2),
                         min(args.pmax, math.pi - 1e-3), args.n)
        rows = _sweep_map(lambda p: (float(p), g_loxo(float(p))), ps)
        _write_csv(args.out, ["p", "g"], rows)
        return
    if target == "discont":
        alphas = np.linspace(-math.pi + 1e-6, math.pi - 1e-6, args.n)
        rows = _sweep_map(lambda a: (float(a), discont_limsup(float(a))), alphas)
        _write_csv(args.out, ["alpha0", "bound"], rows)
        return
    if target == "wedge-cap":
        rows = [(name, u, v, wp.image.x, wp.image.y, wp.image.z)
                for name, u, v, wp in wedge_cap_patches(nn=args.N, grid=args.grid)]
        _write_csv(args.out, ["patch", "u", "v", "x", "y", "z"], rows)
        return
    if target == "moment-atlas":
        nn = args.N
        cells = []
        for i in range(args.grid + 1):
            t = i / args.grid
            for j in range(args.grid + 1):
                theta = 2.0 * math.pi * j / args.grid
                cells.append((nn * t, nn * (1.0 - t), theta))
        def one(cell):
            s, r, theta = cell
            try:
                x, y = moment_atlas(s, r, theta, model=args.model)
            except ValueError:
                return None
            return (s, r, theta, x, y)
        rows = [r for r in _sweep_map(one, cells) if r is not None]
        _write_csv(args.out, ["s", "r", "theta", "x", "y"], rows)
        return
    raise SystemExit(EXIT_PARSE)


def _cmd_verify(args):
    rows = run_suite(args.suite)
    failed = 0
    for label, ok, margin, tol in rows:
        status = "pass" if ok else "FAIL"
        print(f"[{status}] {label}: margin {margin:.3g} (tol {tol:.3g})")
        if not ok:
            failed += 1
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    if failed:
        raise SystemExit(1)


def build_parser():
    parser = _Parser(prog="magnus2",
                     description="closed-form 2x2 exp/log/BCH/Magnus calculus")
    parser.add_argument("--tol", type=float, default=None,
                        help="override the degeneracy tolerance band")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a matrix operation")
    p_eval.add_argument("op", choices=["exp", "log", "norm", "conorm", "bch"])
    p_eval.add_argument("matrix", nargs="+")
    p_eval.add_argument("--basis", choices=["skew", "entry"], default="skew")
    p_eval.add_argument("--complex", action="store_true")
    p_eval.set_defaults(fn=_cmd_eval)

    p_mag = sub.add_parser("magnus", help="Magnus exponent machinery")
    p_mag.add_argument("sub", choices=["exponent", "classify", "normal-form"])
    p_mag.add_argument("matrix")
    p_mag.add_argument("--basis", choices=["skew", "entry"], default="skew")
    p_mag.add_argument("--lifted", action="store_true")
    p_mag.set_defaults(fn=_cmd_magnus)

    p_sweep = sub.add_parser("sweep", help="write a CSV parameter sweep")
    p_sweep.add_argument("target", choices=["wedge-cap", "moment-atlas",
                                            "ridge", "j-curve", "g-curve",
                                            "discont"])
    p_sweep.add_argument("--pmin", type=float, default=0.1)
    p_sweep.add_argument("--pmax", type=float, default=3.1)
    p_sweep.add_argument("--n", type=int, default=100)
    p_sweep.add_argument("--N", type=float, default=math.pi / 2)
    p_sweep.add_argument("--grid", type=int, default=100)
    p_sweep.add_argument("--model", choices=["CKB", "HP", "ACKB", "AHP"],
                         default="CKB")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=["all", "specfun", "explog", "bch",
                                         "magnus", "bchmin", "count22"])
    p_ver.set_defaults(fn=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None:
        try:
            config.set_degeneracy_tol(args.tol)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    try:
        args.fn(args)
    except (ValueError, DomainError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:
        return exc.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
