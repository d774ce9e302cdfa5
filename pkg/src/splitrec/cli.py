"""Command-line drivers for the slab and cavity experiments.

Every command writes a JSON summary of scalar results and one or more data
series.  With ``--output-dir`` the series go to ``<name>.csv`` files next to
``summary.json`` (or into a single ``result.json`` with ``--format json``);
without it the JSON document goes to stdout.
"""

import argparse
import cmath
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import cavity, slab
from .errors import SplitRecError

FIGURES = """\
figure data:
  Fig. 1   slab-ramp                     (S and T sweeps, local and 0.9 splittings)
  Fig. 2   slab-ramp                     (series s_local, s_const)
  Fig. 3   slab-smatrix --defaults-paper (series Y)
  Fig. 4   slab-pair --defaults-paper    (series y1, y2: abs column)
  Fig. 5   slab-pair --defaults-paper    (series y1, y2: phase_rad column)
  Fig. 6   slab-pair --defaults-paper    (series y1_plus_Ry2, Y)
  Fig. 7   slab-inverse --defaults-paper [--terminal-polar 0.531,1.9865]
  Fig. 8   cavity-design --u1 0.1 | 0.05 | 0.02   (series u)
  Fig. 9   cavity-design --u1 0.1 | 0.05 | 0.02   (series g)
  Fig. 10  cavity-backward --u1 0.1 | 0.05 | 0.02 (series amplitude)
  Fig. 11  cavity-backward --u1 0.1 | 0.05 | 0.02 (series phase_deviation)
  Fig. 12  cavity-design --u1 0.001 --cells 8
  Fig. 13  cavity-backward --u1 0.001 --cells 8   (series amplitude)
  Fig. 14  cavity-backward --u1 0.001 --cells 8   (series phase_deviation)
exit codes: 0 success, 1 domain error, 2 usage error
"""


def parse_complex(text):
    """Parse ``a``, ``a+bi``, ``a-bi`` or ``bi`` (no spaces)."""
    s = text.strip()
    if " " in s or not s:
        raise argparse.ArgumentTypeError(f"invalid complex literal {text!r}")
    try:
        if s.endswith("i"):
            body = s[:-1]
            # split at the last sign that is not part of an exponent
            for pos in range(len(body) - 1, 0, -1):
                if body[pos] in "+-" and body[pos - 1] not in "eE":
                    re_part, im_part = body[:pos], body[pos:]
                    break
            else:
                re_part, im_part = "0", body
            if im_part in ("+", "-", ""):
                im_part += "1"
            z = complex(float(re_part), float(im_part))
        else:
            z = complex(float(s), 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex literal {text!r}") from None
    if not cmath.isfinite(z):
        raise argparse.ArgumentTypeError(f"complex literal must be finite: {text!r}")
    return z


def _finite(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return x


def _q_factor(text):
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    x = _finite(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("q must be positive")
    return x


def _polar(text):
    try:
        mag, ph = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MAG,PHASE, got {text!r}") from None
    return cmath.rect(mag, ph)


def _rho(text):
    if text == "local":
        return "local"
    return parse_complex(text)


def fmt(x):
    """17 significant digits, negative zero folded to zero."""
    x = float(x)
    return "{:.17g}".format(x + 0.0 if x == 0 else x)


def complex_json(z):
    z = complex(z)
    return {"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0, "abs": abs(z), "phase_rad": cmath.phase(z) + 0.0}


def series_csv(k, values):
    """CSV text for one series: complex as ``k,re,im,abs,phase_rad``, real as ``k,value``."""
    values = np.asarray(values)
    if values.size == 0:
        raise ValueError("empty series")
    lines = []
    if np.iscomplexobj(values):
        lines.append("k,re,im,abs,phase_rad")
        for kk, z in zip(k, values):
            lines.append(",".join([str(int(kk)), fmt(z.real), fmt(z.imag), fmt(abs(z)), fmt(cmath.phase(z))]))
    else:
        lines.append("k,value")
        for kk, v in zip(k, values):
            lines.append(f"{int(kk)},{fmt(v)}")
    return "\n".join(lines) + "\n"


def _series_json(k, values):
    values = np.asarray(values)
    if values.size == 0:
        raise ValueError("empty series")
    out = {"k": [int(x) for x in k]}
    if np.iscomplexobj(values):
        out["re"] = [float(z.real) + 0.0 for z in values]
        out["im"] = [float(z.imag) + 0.0 for z in values]
    else:
        out["value"] = [float(v) + 0.0 for v in values]
    return out


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def emit(summary, series, fmt_name="csv", output_dir=None, stream=None):
    """Write a run's scalars and series.  ``series`` maps name -> (k, values)."""
    for name, (k, v) in series.items():
        if len(v) == 0:
            raise ValueError(f"empty series: {name}")
    if output_dir is None:
        doc = summary if fmt_name == "csv" else {
            "summary": summary, "series": {n: _series_json(*kv) for n, kv in series.items()}
        }
        (stream or sys.stdout).write(_dumps(doc))
        return []
    out = Path(output_dir)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        if fmt_name == "json":
            doc = {"summary": summary, "series": {n: _series_json(*kv) for n, kv in series.items()}}
            written.append(_write(out / "result.json", _dumps(doc)))
        else:
            written.append(_write(out / "summary.json", _dumps(summary)))
            for name, (k, v) in series.items():
                written.append(_write(out / f"{name}.csv", series_csv(k, v)))
    except OSError as exc:
        raise OSError(f"cannot write {exc.filename or out}: {exc.strerror}") from exc
    return written


def _write(path, text):
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _profile(args):
    if args.defaults_paper:
        return slab.paper_slab()
    n1 = args.n1 if args.n1 is not None else slab.PAPER_N1
    n2 = args.n2 if args.n2 is not None else slab.PAPER_N2
    n3 = args.n3 if args.n3 is not None else slab.PAPER_N3
    return slab.SlabProfile.homogeneous(args.eps2, args.h, n1, n2, n3)


def _grid(g):
    return g.indices, g.values


def cmd_slab_exact(args):
    r, t = slab.analytic_slab_rt(args.eps2, args.xi1, args.xi2)
    return {"R": complex_json(r), "T": complex_json(t)}, {}


def cmd_slab_smatrix(args):
    res = slab.solve_forward_smatrix(_profile(args), args.rho)
    summary = {"R": complex_json(res.R), "T": complex_json(res.T)}
    return summary, {"Y": _grid(res.field), "y1": _grid(res.y1), "y2": _grid(res.y2)}


def cmd_slab_pair(args):
    profile = _profile(args)
    pair = slab.solve_independent_pair(profile)
    s = slab.solve_forward_smatrix(profile)
    combo = pair.y1.values + s.R * pair.y2.values
    y = s.field.values[: len(combo)]
    summary = {
        "R": complex_json(s.R),
        "max_relation_deviation": float(np.max(np.abs(combo - y)) / np.max(np.abs(y))),
        "diverged_at": [pair.trace1.diverged_at, pair.trace2.diverged_at],
    }
    return summary, {
        "y1": _grid(pair.y1),
        "y2": _grid(pair.y2),
        "y1_plus_Ry2": (pair.y1.indices, combo),
        "Y": (pair.y1.indices, y),
    }


def cmd_slab_inverse(args):
    inv = slab.solve_inverse_scheme(_profile(args), args.terminal)
    summary = {"R_inv": complex_json(inv.R), "T_inv": complex_json(inv.T), "terminal": complex_json(args.terminal)}
    return summary, {"y1": _grid(inv.y1)}


def cmd_slab_ramp(args):
    ramp = slab.SlabProfile.ramp(args.h, args.n1, args.n2, args.n3)
    summary = {}
    series = {}
    for tag, choice in (("local", "local"), ("const", args.rho_const)):
        s = slab.solve_forward_smatrix(ramp, choice)
        t = slab.solve_forward_tmatrix(ramp, choice)
        summary[f"s_{tag}"] = {"R": complex_json(s.R), "T": complex_json(s.T)}
        summary[f"t_{tag}"] = {
            "overflow": t.overflow,
            "overflow_at": t.overflow_at,
            "ill_conditioned_at": t.ill_conditioned_at,
            "max_condition": t.max_condition,
        }
        series[f"s_{tag}"] = _grid(s.field)
        series[f"t_{tag}"] = _grid(t.total)
    return summary, series


def cmd_cavity_design(args):
    d = cavity.design_constant_gradient(args.u1, args.phi, args.q, args.cells)
    res = cavity.forward_condition_residual(d)
    y = cavity.forward_field(d).y1
    summary = {
        "u1": args.u1, "phi": args.phi, "Q": args.q, "cells": d.cells,
        "g1": float(d.g[0]),
        "max_residual_over_Z": float(np.max(np.abs(res) / np.abs(d.Z))),
    }
    k = np.arange(1, d.cells + 1)
    return summary, {
        "g": (k, d.g),
        "u": (np.arange(1, d.cells + 2), d.u),
        "forward_field": _grid(y),
    }


def cmd_cavity_backward(args):
    d = cavity.design_constant_gradient(args.u1, args.phi, args.q, args.cells)
    bf = cavity.backward_field(d, args.ratio_exponent)
    summary = {
        "u1": args.u1, "phi": args.phi, "Q": args.q, "cells": d.cells,
        "ratio_exponent": args.ratio_exponent,
        "amplitude_ratio": float(bf.amplitude[-1] / bf.amplitude[0]),
        "max_phase_deviation": float(np.max(np.abs(bf.phase_deviation))),
        "diverged_at": bf.trace.diverged_at,
    }
    k = bf.y2.indices
    return summary, {"y2": _grid(bf.y2), "amplitude": (k, bf.amplitude), "phase_deviation": (k, bf.phase_deviation)}


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all(print)
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return failed


def _add_output(p):
    p.add_argument("--output-dir", help="directory for summary and series files")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_slab(p):
    p.add_argument("--defaults-paper", action="store_true",
                   help="h=2pi/100, N1=100, N2=1100, N3=1200, eps2=3+0.03i")
    p.add_argument("--eps2", type=parse_complex, default=slab.PAPER_EPS2, help="slab permittivity, a+bi")
    p.add_argument("--h", type=_finite, default=slab.PAPER_H)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--n3", type=int)


def _add_cavity(p):
    p.add_argument("--u1", type=_finite, default=0.03)
    p.add_argument("--phi", type=_finite, default=cavity.PAPER_PHI)
    p.add_argument("--q", type=_q_factor, default=cavity.PAPER_Q, help="quality factor, or inf")
    p.add_argument("--cells", type=int, default=100)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="splitrec",
        description="Split three-term recurrences: slab diffraction and coupled-cavity design.",
        epilog=FIGURES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("slab-exact", help="closed-form slab R and T")
    p.add_argument("--eps2", type=parse_complex, default=slab.PAPER_EPS2)
    p.add_argument("--xi1", type=_finite, default=2 * math.pi)
    p.add_argument("--xi2", type=_finite, default=22 * math.pi)
    _add_output(p)
    p.set_defaults(func=cmd_slab_exact)

    p = sub.add_parser("slab-smatrix", help="scatter-form solve, field Y_k (Fig. 3)")
    _add_slab(p)
    p.add_argument("--rho", type=_rho, default="local", help="'local' or a constant a+bi")
    _add_output(p)
    p.set_defaults(func=cmd_slab_smatrix)

    p = sub.add_parser("slab-pair", help="Riccati independent pair (Figs. 4-6)")
    _add_slab(p)
    _add_output(p)
    p.set_defaults(func=cmd_slab_pair)

    p = sub.add_parser("slab-inverse", help="inverse scheme from the far end (Fig. 7)")
    _add_slab(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--terminal", type=parse_complex, default=1.0 + 0j, help="terminal value a+bi")
    g.add_argument("--terminal-polar", type=_polar, dest="terminal", help="terminal value MAG,PHASE")
    _add_output(p)
    p.set_defaults(func=cmd_slab_inverse)

    p = sub.add_parser("slab-ramp", help="ramp profile, S versus T sweeps (Figs. 1-2)")
    p.add_argument("--h", type=_finite, default=slab.PAPER_H)
    p.add_argument("--n1", type=int, default=slab.PAPER_N1)
    p.add_argument("--n2", type=int, default=slab.PAPER_N2)
    p.add_argument("--n3", type=int, default=slab.PAPER_N3)
    p.add_argument("--rho-const", type=parse_complex, default=0.9 + 0j, help="constant rho1 (rho2 = 1/rho1)")
    _add_output(p)
    p.set_defaults(func=cmd_slab_ramp)

    p = sub.add_parser("cavity-design", help="constant-gradient chain (Figs. 8, 9, 12)")
    _add_cavity(p)
    _add_output(p)
    p.set_defaults(func=cmd_cavity_design)

    p = sub.add_parser("cavity-backward", help="backward field (Figs. 10, 11, 13, 14)")
    _add_cavity(p)
    p.add_argument("--ratio-exponent", type=int, choices=(1, 3), default=1)
    _add_output(p)
    p.set_defaults(func=cmd_cavity_backward)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "selftest":
        return 1 if args.func(args) else 0
    try:
        summary, series = args.func(args)
        emit(summary, series, args.format, args.output_dir)
    except (SplitRecError, ValueError, OSError) as exc:
        print(f"splitrec {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())
