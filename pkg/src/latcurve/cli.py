"""Command-line experiment driver: ``latcurve <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import contfrac, equidist, girth, jarnik, synth
from .affine import affine_deficit_probe
from .errors import LatticeError, SearchExhausted
from .exact import Frame


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv(rows, header, out=None):
    w = csv.writer(out or sys.stdout, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])


def _json(obj, out=None):
    json.dump(obj, out or sys.stdout, indent=2, sort_keys=True)
    (out or sys.stdout).write("\n")


def parse_frame(text: str) -> Frame:
    parts = [Fraction(p) for p in text.split(",")]
    if len(parts) != 6:
        raise UsageError("--frame needs Ax,Ay,Bx,By,Cx,Cy")
    return Frame.from_points(parts[0:2], parts[2:4], parts[4:6])


def parse_int_list(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v]


def parse_series(text: str, stages: int) -> List[Fraction]:
    kind, _, body = text.partition(":")
    if kind == "geometric":
        r = Fraction(body)
        if not 0 < r < 1:
            raise UsageError("geometric ratio must lie in (0, 1)")
        return [r ** k for k in range(1, stages + 1)]
    if kind == "list":
        vals = [Fraction(v) for v in body.split(",")]
        if len(vals) < stages:
            raise UsageError("series list shorter than --stages")
        return vals
    raise UsageError(f"unknown series {text!r}")


def parse_admissible(text: str):
    if text == "all":
        return None
    kind, _, body = text.partition(":")
    if kind == "list":
        return parse_int_list(body)
    raise UsageError(f"unknown admissible set {text!r}")


def _rat(x):
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _pt(p):
    return [_rat(p[0]), _rat(p[1])]


def _frame_json(f: Frame):
    return {"A": _pt(f.A), "B": _pt(f.B), "C": _pt(f.C)}


# --- subcommands -----------------------------------------------------------

def cmd_girth_sum(a):
    f = parse_frame(a.frame)
    sums = girth.girth_prefix_sums(f, a.k)
    ks, k = [], 1
    while k < a.k:
        ks.append(k)
        k *= 2
    ks.append(a.k)
    rows = []
    for k in ks:
        s = sums[k - 1]
        b = girth.girth_sum_bound(f.S, k)
        rows.append((k, s, b, float(s) / b))
    _csv(rows, ["k", "sum", "bound", "ratio"])


def cmd_jarnik(a):
    f = parse_frame(a.frame)
    line = jarnik.build_chain(f, a.n, Fraction(a.c))
    cert = {"k": line.k, "target": jarnik.chain_target(f.S, a.n, Fraction(a.c)),
            "ceiling": jarnik.max_vertex_bound(f.S, a.n)}
    if a.verify:
        v = jarnik.verify_abc_broken_line(line)
        cert["verified"] = v.ok
        cert["violation"] = v.violation
        if not v.ok:
            raise LatticeError(f"verification failed: {v.violation}")
    _json({"schema": "latcurve/broken-line", "version": 1, "frame": _frame_json(f),
           "n": a.n, "vertices": [_pt(p) for p in line.vertices], "certificate": cert})


def cmd_equidist(a):
    d1 = equidist.StarDomain.parse(a.domain1)
    d2 = equidist.StarDomain.parse(a.domain2)
    if a.oracle and a.n > 60:
        raise UsageError("--oracle requires n <= 60")
    pc = equidist.pair_count(d1, d2, a.m, a.n)
    row = [pc.n, pc.count, pc.prediction, pc.ratio]
    header = ["n", "count", "prediction", "ratio"]
    if a.oracle:
        brute = equidist.count_pairs_bruteforce(d1, d2, a.m, a.n)
        if brute != pc.count:
            raise LatticeError(f"oracle mismatch: fast {pc.count}, brute force {brute}")
        header.append("oracle")
        row.append(brute)
    _csv([row], header)


def cmd_special_points(a):
    f = parse_frame(a.frame)
    om = equidist.StarDomain.parse(a.omega)
    pc = equidist.special_point_count(f, a.m, a.N, om)
    _csv([(pc.m, pc.n, pc.count, pc.prediction, pc.ratio)],
         ["m", "N", "count", "prediction", "ratio"])


def cmd_cf_suitable(a):
    alpha = Fraction(a.alpha)
    tri = contfrac.find_suitable(alpha, a.eps, a.bound)
    out = {"schema": "latcurve/suitable", "version": 1, "alpha": _rat(alpha),
           "eps": a.eps, "bound": a.bound, "found": tri is not None}
    if tri is not None:
        out.update({"A": list(tri.A), "B": list(tri.B),
                    "side_ratio": tri.side_ratio(), "apex_angle": tri.apex_angle()})
    _json(out)


def cmd_synth(a):
    series = parse_series(a.series, a.stages)
    curve = synth.synthesize(series, parse_admissible(a.admissible), a.stages,
                             max_attempts=a.max_attempts, q_min=a.q_min)
    with open(a.out, "w") as fh:
        _json(synth.to_json(curve), fh)
    rows = [(i, st.q, st.c, st.certified_count, synth.required_count(st.c, st.q),
             synth.count_on_curve(curve, st.q))
            for i, st in enumerate(curve.stages, start=1)]
    _csv(rows, ["stage", "q", "c", "certified_count", "required", "count_on_curve"])


def cmd_count(a):
    with open(a.curve) as fh:
        curve = synth.from_json(json.load(fh))
    ns = parse_int_list(a.n)
    if len(ns) == 1:
        print(synth.count_on_curve(curve, ns[0]))
        return
    _csv([(n, c, c / n ** (2 / 3)) for n in ns for c in (synth.count_on_curve(curve, n),)],
         ["n", "count", "count_over_n23"])


def cmd_deficit(a):
    f = parse_frame(a.frame)
    rows = []
    for n in parse_int_list(a.n):
        p = affine_deficit_probe(f, n, Fraction(a.c), threads=a.threads)
        rows.append((p.n, p.k, p.l_a, p.deficit))
    _csv(rows, ["n", "k", "l_A", "deficit"])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latcurve", description="Lattice points on convex curves: experiments.")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker bound (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("girth-sum", help="least girth sums on a doubling schedule")
    s.add_argument("--frame", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_girth_sum)

    s = sub.add_parser("jarnik", help="least-girth broken line with certificate")
    s.add_argument("--frame", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--c", default="1/100")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_jarnik)

    s = sub.add_parser("equidist", help="pairs with fixed pseudoscalar product")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--domain1", required=True)
    s.add_argument("--domain2", required=True)
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_equidist)

    s = sub.add_parser("special-points", help="special points in girth coordinates")
    s.add_argument("--frame", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--omega", required=True)
    s.set_defaults(func=cmd_special_points)

    s = sub.add_parser("cf-suitable", help="eps-suitable basic triangle along a ray")
    s.add_argument("--alpha", required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(func=cmd_cf_suitable)

    s = sub.add_parser("synth", help="synthesize a curve with certified lattice counts")
    s.add_argument("--series", required=True)
    s.add_argument("--stages", type=int, required=True)
    s.add_argument("--admissible", default="all")
    s.add_argument("--q-min", type=int, default=1)
    s.add_argument("--max-attempts", type=int, default=10_000)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("count", help="lattice points of a saved curve")
    s.add_argument("--curve", required=True)
    s.add_argument("--n", required=True, help="one n, or a comma list for a decay table")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("deficit", help="affine-length deficit of least-girth chains")
    s.add_argument("--frame", required=True)
    s.add_argument("--n", required=True, help="one n or a comma list")
    s.add_argument("--c", default="1/100")
    s.set_defaults(func=cmd_deficit)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"latcurve: error: {e}\n")
        return 1
    except LatticeError as e:
        err = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, SearchExhausted) and e.attempted is not None:
            err["attempted"] = list(e.attempted)
        _json(err, sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
