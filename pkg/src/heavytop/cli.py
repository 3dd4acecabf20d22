"""Batch command line front end.

Subcommands: analyze, kovacic, riemann-p, lame, simulate, monodromy,
scan. Every subcommand supports --json for canonical machine output
(sorted keys, compact separators, trailing newline), so identical inputs
produce byte-identical files. Exact rationals cross this boundary as
strings like "12/25"; floats are accepted only where the underlying
quantity is genuinely transcendental (the modulus k, tolerances).

Verbosity: set the environment variable HEAVYTOP_LOG to DEBUG/INFO/...
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import verdict as verdict_mod
from .body import BodyParameters, State, euler_poisson_rhs
from .galois import kimura_classify, kovacic_case2, lame_classify
from .numerics import Loop, elliptic_K, integrate, numerical_monodromy
from .solutions import FIRST, SECOND, PendulumSolution, periods_and_poles
from .variational import (FuchsianEquation, lame_from_second,
                          reduced_equation_from_dF, riemann_p_equation,
                          riemann_p_from_L3zero)

log = logging.getLogger("heavytop")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(args, obj, human_lines):
    if args.json:
        sys.stdout.write(canonical_json(obj))
    else:
        for line in human_lines:
            print(line)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(f"error: malformed rational {text!r}: {exc}")


def _body_from_args(args) -> BodyParameters:
    if args.params_file:
        with open(args.params_file) as fh:
            return BodyParameters.from_json(fh.read())
    if args.A is None or args.B is None or args.C is None:
        raise SystemExit("error: provide --A --B --C (and --L) or --params-file")
    L = tuple(_parse_fraction(x) for x in args.L.split(","))
    if len(L) != 3:
        raise SystemExit("error: --L needs three comma-separated rationals")
    return BodyParameters(_parse_fraction(args.A), _parse_fraction(args.B),
                          _parse_fraction(args.C), L,
                          gravity_on=(args.gravity == "on"))


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    body = _body_from_args(args)
    result = verdict_mod.analyze(body)
    obj = result.to_jsonable()
    lines = [f"conclusion: {result.conclusion}"]
    if result.case:
        lines.append(f"case: {result.case}")
    lines.append("trail:")
    for entry in result.trail:
        lines.append("  - " + json.dumps(entry, sort_keys=True))
    _emit(args, obj, lines)
    return 0


def cmd_kovacic(args) -> int:
    if args.equation:
        with open(args.equation) as fh:
            eq = FuchsianEquation.from_json(fh.read())
    elif args.d is not None and args.F is not None:
        eq = reduced_equation_from_dF(_parse_fraction(args.d), _parse_fraction(args.F),
                                      _parse_fraction(args.s))
    else:
        raise SystemExit("error: provide --equation FILE or --d and --F")
    data = kovacic_case2(eq)
    obj = data.to_jsonable()
    lines = ["E sets:"]
    for key, val in sorted(obj["e_sets"].items()):
        lines.append(f"  {key}: {val}")
    lines.append(f"candidates with nonnegative integer degree: {len(obj['candidates'])}")
    for c in obj["candidates"]:
        lines.append(f"  e = {c['e']}, degree {c['degree']}, "
                     f"polynomial: {c['polynomial']}")
    lines.append(f"found polynomial: {obj['found_polynomial']}")
    _emit(args, obj, lines)
    return 0


def cmd_riemann_p(args) -> int:
    c = _parse_fraction(args.c)
    data = riemann_p_from_L3zero(c)
    kim = kimura_classify(data)
    obj = {
        "c": str(c),
        "differences": {"at_zero": str(data.lam), "at_one": str(data.nu),
                        "at_infinity": str(data.mu)},
        "mu_squared": str(data.mu.radicand),
        "galois": kim.to_jsonable(),
    }
    lines = [
        f"c = {c}",
        f"exponent differences: 3/4 at 0, 1/2 at 1, {data.mu} at infinity",
        f"mu^2 = {data.mu.radicand}",
        f"verdict: {kim.conclusion}",
    ]
    _emit(args, obj, lines)
    return 0


def cmd_lame(args) -> int:
    C = _parse_fraction(args.C)
    e = _parse_fraction(args.e)
    data = lame_from_second(C, e)
    cls = lame_classify(data)
    obj = {
        "C": str(C), "e": str(e),
        "alpha": str(data.alpha), "beta": str(data.beta), "n": str(data.n),
        "g2": str(data.g2), "g3": str(data.g3),
        "discriminant": str(data.discriminant),
        "classification": {"tag": cls.tag, "detail": cls.detail,
                           "abelian_possible": cls.abelian_possible},
    }
    lines = [
        f"C = {C}, e = {e}",
        f"alpha = {data.alpha} (n = {data.n}), beta = {data.beta}",
        f"g2 = {data.g2}, g3 = {data.g3}, discriminant = {data.discriminant}",
        f"classification: {cls.tag}",
        f"detail: {json.dumps(cls.detail, sort_keys=True)}",
    ]
    _emit(args, obj, lines)
    return 0


def _simulate_family(args):
    k = float(args.k)
    c = _parse_fraction(args.c)
    family = FIRST if args.family == "first" else SECOND
    sol = PendulumSolution(family, k, c)
    if args.T == "one-period":
        w = math.sqrt(float(c)) if family == SECOND else 1.0
        T = 4 * elliptic_K(k) / w
    else:
        T = float(args.T)
    st = sol.state(0.0)
    y0 = [v.real if isinstance(v, complex) else float(v) for v in st.as_vector()]
    if family == FIRST:
        def rhs(t, y):
            M2, N1, N3 = y[1].real, y[3].real, y[5].real
            return np.array([0.0, N3, 0.0, -M2 * N3, 0.0, M2 * N1])
    else:
        cf = float(c)

        def rhs(t, y):
            M3, N1, N2 = y[2].real, y[3].real, y[4].real
            return np.array([0.0, 0.0, -N2, cf * M3 * N2, -cf * M3 * N1, 0.0])
    traj = integrate(rhs, y0, (0.0, T))
    labels = ["M1", "M2", "M3", "N1", "N2", "N3"]
    return traj, labels, {"family": args.family, "k": k, "c": str(c), "T": T}


def _simulate_full(args):
    body = _body_from_args(args)
    J = [[1 / float(body.A), 0, 0], [0, 1 / float(body.B), 0], [0, 0, 1 / float(body.C)]]
    L = [float(x) for x in body.L]
    mu = 1.0 if body.gravity_on else 0.0
    M0 = [float(Fraction(x)) for x in args.M0.split(",")]
    N0 = [float(Fraction(x)) for x in args.N0.split(",")]
    if args.T == "one-period":
        raise SystemExit("error: --T one-period applies to family simulations only")
    T = float(args.T)

    def rhs(t, y):
        st = State(tuple(y[:3]), tuple(y[3:6]))
        d = euler_poisson_rhs((J, L), st, mu=mu)
        return np.array(d.M + d.N)

    traj = integrate(rhs, M0 + N0, (0.0, T))
    labels = ["M1", "M2", "M3", "N1", "N2", "N3"]
    return traj, labels, {"family": "full", "T": T, "gravity": body.gravity_on}


def cmd_simulate(args) -> int:
    if args.family in ("first", "second"):
        traj, labels, meta = _simulate_family(args)
    else:
        traj, labels, meta = _simulate_full(args)
    csv_text = traj.to_csv(["t"] + labels)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
        log.info("wrote %s", args.out)
    if args.plot:
        from .plots import plot_trajectory
        plot_trajectory(traj, labels, args.plot,
                        title=f"trajectory ({meta['family']})")
    obj = {
        "meta": meta,
        "rows": len(traj.times),
        "complete": traj.complete,
        "final_time": float(traj.times[-1]),
        "out": args.out, "plot": args.plot,
    }
    if args.json:
        sys.stdout.write(canonical_json(obj))
    elif not args.out:
        sys.stdout.write(csv_text)
    else:
        print(f"wrote {obj['rows']} rows to {args.out}"
              + (f" and figure to {args.plot}" if args.plot else ""))
    return 0


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise SystemExit("error: complex values are 'x' or 'x,y'")


def cmd_monodromy(args) -> int:
    singular = []
    if args.equation == "riemannp":
        c = _parse_fraction(args.c)
        p, q = riemann_p_equation(c)
        system = (lambda z: p(z), lambda z: q(z))
        singular = [0j, 1 + 0j]
        desc = {"equation": "riemannp", "c": str(c)}
    elif args.equation == "reduced":
        if args.d is None or args.F is None:
            raise SystemExit("error: reduced equation needs --d and --F")
        eq = reduced_equation_from_dF(_parse_fraction(args.d), _parse_fraction(args.F),
                                      _parse_fraction(args.s))
        system = eq.r_callable()
        singular = [complex(s.location) for s in eq.singularities]
        desc = {"equation": "reduced", "d": args.d, "F": args.F, "s": args.s}
    else:
        with open(args.equation) as fh:
            eq = FuchsianEquation.from_json(fh.read())
        system = eq.r_callable()
        singular = [complex(s.location) for s in eq.singularities]
        desc = {"equation": args.equation}

    loop = Loop(_parse_complex(args.center), float(args.radius),
                1 if args.orientation >= 0 else -1)
    mat = numerical_monodromy(system, loop, singular_points=singular)
    eig = sorted(mat.eigenvalues(), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    obj = json.loads(mat.to_json())
    obj["meta"] = desc
    obj["eigenvalues"] = [[z.real, z.imag] for z in eig]
    lines = [
        f"loop: center {loop.center}, radius {loop.radius}, orientation {loop.orientation}",
        f"matrix: {mat.entries.tolist()}",
        f"det defect: {mat.det_defect:.3e}",
        f"eigenvalues: {eig}",
    ]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(canonical_json(obj))
        lines.append(f"wrote {args.out}")
    if args.plot:
        from .plots import plot_monodromy
        plot_monodromy(mat, singular, args.plot)
        lines.append(f"figure {args.plot}")
    _emit(args, obj, lines)
    return 0


def cmd_scan(args) -> int:
    grid = [Fraction(x) for x in args.s_grid.split(",")]
    report = verdict_mod.parameter_scan(_parse_fraction(args.d),
                                        _parse_fraction(args.F), grid)
    obj = {"d": args.d, "F": args.F, "report": report}
    lines = [f"scan at d = {args.d}, F = {args.F}"]
    for row in report:
        lines.append("  " + json.dumps(row, sort_keys=True))
    _emit(args, obj, lines)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="heavytop",
        description="Exact non-integrability analysis of the heavy top")
    sub = top.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="integrability verdict for a body")
    pa.add_argument("--A")
    pa.add_argument("--B")
    pa.add_argument("--C")
    pa.add_argument("--L", default="1,0,0")
    pa.add_argument("--gravity", choices=("on", "off"), default="on")
    pa.add_argument("--params-file")
    pa.add_argument("--json", action="store_true")
    pa.set_defaults(func=cmd_analyze)

    pk = sub.add_parser("kovacic", help="case 2 algorithm on a reduced equation")
    pk.add_argument("--equation", help="equation JSON file")
    pk.add_argument("--d")
    pk.add_argument("--F")
    pk.add_argument("--s", default="1")
    pk.add_argument("--json", action="store_true")
    pk.set_defaults(func=cmd_kovacic)

    pr = sub.add_parser("riemann-p", help="equatorial-case exponent data and solvability")
    pr.add_argument("--c", required=True)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_riemann_p)

    pl = sub.add_parser("lame", help="second-family classification data")
    pl.add_argument("--C", required=True)
    pl.add_argument("--e", default="0")
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(func=cmd_lame)

    ps = sub.add_parser("simulate", help="trajectory artifact (CSV, optional figure)")
    ps.add_argument("--family", choices=("first", "second", "full"), required=True)
    ps.add_argument("--k", default="0.6")
    ps.add_argument("--c", default="1")
    ps.add_argument("--T", default="one-period")
    ps.add_argument("--A")
    ps.add_argument("--B")
    ps.add_argument("--C")
    ps.add_argument("--L", default="1,0,0")
    ps.add_argument("--gravity", choices=("on", "off"), default="on")
    ps.add_argument("--params-file")
    ps.add_argument("--M0", default="0.1,0.2,0.3")
    ps.add_argument("--N0", default="1,0,0")
    ps.add_argument("--out")
    ps.add_argument("--plot")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_simulate)

    pm = sub.add_parser("monodromy", help="numerical monodromy along a loop")
    pm.add_argument("--equation", default="riemannp",
                    help="riemannp, reduced, or an equation JSON file")
    pm.add_argument("--c", default="2")
    pm.add_argument("--d")
    pm.add_argument("--F")
    pm.add_argument("--s", default="1")
    pm.add_argument("--center", default="0")
    pm.add_argument("--radius", required=True)
    pm.add_argument("--orientation", type=int, default=1)
    pm.add_argument("--out")
    pm.add_argument("--plot")
    pm.add_argument("--json", action="store_true")
    pm.set_defaults(func=cmd_monodromy)

    pc = sub.add_parser("scan", help="exclusion stability over an s grid")
    pc.add_argument("--d", required=True)
    pc.add_argument("--F", required=True)
    pc.add_argument("--s-grid", dest="s_grid", default="1/2,1,3/2,2,3")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_scan)
    return top


def main(argv=None) -> int:
    level = os.environ.get("HEAVYTOP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
