"""Command-line front end.

Exit codes: 0 success, 2 usage or invalid input, 3 verification failure,
4 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import io as pio
from .boundaries import KINDS, boundary, comparison_inclusions
from .cutproject import (
    FibonacciZphi,
    IntCyclic,
    almost_periods,
    density_formula_check,
    model_set_patch,
)
from .density import Periodic, density_report, leptin_probe, tb_witness
from .errors import LeptinError, NoCertificate, NoWindowFound
from .folner import comb_R1, cubes_Rd, cubes_Zd, heisenberg_boxes, ratio, thicken
from .group_core import parse_group
from .lattices import HeisenbergGamma, IntSublattice, lattice_density
from .qphi import parse_number
from .set_algebra import GSet, measure
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(Exception):
    pass


# --- parsing helpers ----------------------------------------------------


def _num(text: str):
    try:
        return parse_number(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad number {text!r}") from exc


def parse_set(ctx, text: str) -> GSet:
    """A set given as a file path, ``box:lo:hi`` (comma-separated corners)
    or inline items separated by ``;`` (points, or ``lo hi ...`` boxes)."""
    if Path(text).is_file():
        obj = pio.read(text)
        if not isinstance(obj, GSet) or obj.ctx != ctx:
            raise UsageError(f"{text}: file does not hold a set in {ctx.name}")
        return obj
    if text.startswith("box:"):
        try:
            _, lo, hi = text.split(":")
            lo = [Fraction(x) for x in lo.split(",")]
            hi = [Fraction(x) for x in hi.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad box set {text!r}; expected box:lo1,lo2:hi1,hi2") from exc
        if len(lo) != ctx.dim or len(hi) != ctx.dim:
            raise UsageError(f"box set needs {ctx.dim} coordinates per corner")
        if ctx.discrete:
            return GSet.box(ctx, [int(x) for x in lo], [int(x) for x in hi])
        return GSet.box(ctx, lo, hi)
    items = [it.split() for it in text.split(";") if it.strip()]
    if not items:
        raise UsageError("empty set")
    if ctx.discrete:
        return GSet.points(ctx, [tuple(Fraction(v) for v in it) for it in items])
    boxes = []
    for it in items:
        vals = [Fraction(v) for v in it]
        if len(vals) != 2 * ctx.dim:
            raise UsageError(f"box {' '.join(it)!r} needs {2 * ctx.dim} numbers")
        boxes.append(tuple(zip(vals[0::2], vals[1::2])))
    return GSet.boxes(ctx, boxes)


def _pairs(values: List[str]):
    if len(values) % 2:
        raise UsageError("window needs an even number of endpoints")
    nums = [_num(v) for v in values]
    return list(zip(nums[0::2], nums[1::2]))


def _scheme_and_window(args):
    if args.scheme == "fib":
        scheme = FibonacciZphi()
        W = scheme.window(*_pairs(args.window))
        if W.is_empty():
            raise UsageError("window is empty")
        return scheme, W
    if args.modulus is None:
        raise UsageError("--modulus is required for the cyclic scheme")
    scheme = IntCyclic(args.modulus)
    return scheme, scheme.window(int(_num(v)) for v in args.window)


def _emit(payload: dict, out=None) -> None:
    (out or sys.stdout).write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")


def _echo(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and v is not None}


# --- subcommands --------------------------------------------------------


def cmd_gen_modelset(args) -> int:
    scheme, W = _scheme_and_window(args)
    lo, hi = _num(args.range[0]), _num(args.range[1])
    if args.scheme == "fib":
        patch = model_set_patch(scheme, W, [(lo, hi)])
    else:
        region = GSet.box(scheme.ctx, (int(lo),), (int(hi),))
        patch = model_set_patch(scheme, W, region)
    text = pio.dumps(patch)
    if args.out:
        Path(args.out).write_text(text)
        _emit({"input": _echo(args), "count": len(patch), "out": args.out, "scheme": scheme.describe()})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _sequence(args):
    fam = args.family
    if fam == "cubes":
        ctx = parse_group(args.group)
        if ctx.kind == "H3":
            seq = heisenberg_boxes()
        else:
            seq = cubes_Zd(ctx.dim) if ctx.discrete else cubes_Rd(ctx.dim)
    elif fam == "heisenberg":
        seq = heisenberg_boxes()
    elif fam == "comb":
        seq = comb_R1(_num(args.eps))
    else:
        raise UsageError(f"unknown family {fam!r}")
    if getattr(args, "thicken", None):
        seq = thicken(seq.ctx, seq, parse_set(seq.ctx, args.thicken))
    return seq


def cmd_density(args) -> int:
    t0 = time.perf_counter()
    if args.scheme:
        scheme, W = _scheme_and_window(args)
        nu = scheme.measure(W)
        ctx = scheme.ctx
    else:
        ctx = parse_group(args.group)
        lat = _lattice(ctx, args.basis)
        residues = [tuple(int(_num(v)) for v in r.split()) for r in (args.residues or "").split(";") if r.strip()]
        from .measures import PeriodicComb

        nu = PeriodicComb(lat, residues or None)
    seq = cubes_Zd(ctx.dim) if ctx.discrete else cubes_Rd(ctx.dim)
    if ctx.kind == "H3":
        seq = heisenberg_boxes()
    period = getattr(nu, "period", None)
    if period is not None:
        shifts = Periodic(period)
    elif ctx.discrete:
        rng = random.Random(args.seed)
        shifts = [tuple(rng.randint(-10**6, 10**6) for _ in range(ctx.dim)) for _ in range(args.samples)]
    else:
        rng = random.Random(args.seed)
        shifts = [(Fraction(rng.randint(-10**8, 10**8), 100),) for _ in range(args.samples)]
    rep = density_report(nu, seq, args.n, shifts)
    payload = {"input": _echo(args), "haar": ctx.haar_norm, "report": rep.to_json()}
    if ctx.discrete:
        B = GSet.box(ctx, (-1,) * ctx.dim, (2,) * ctx.dim)
        A_family = [seq(k) for k in range(1, min(args.n, 8) + 1)]
        lep = leptin_probe(nu, [B], A_family, periodic=True)
        payload["leptin"] = lep.to_json()
        w = tb_witness(nu, B, seq(min(args.n, 4)))
        payload["tb_witness"] = w.to_json()
    payload["flags"] = rep.flags
    payload["runtime"] = round(time.perf_counter() - t0, 6)
    _emit(payload)
    return EXIT_OK


def cmd_density_formula(args) -> int:
    scheme, W = _scheme_and_window(args)
    seq = cubes_Rd(1) if args.scheme == "fib" else cubes_Zd(1)
    rec = density_formula_check(scheme, W, seq, args.n)
    payload = rec.to_json()
    payload.update(input=_echo(args), haar=scheme.ctx.haar_norm, scheme=scheme.describe())
    payload["flags"] = {"empirical": "exact", "target": "exact" if rec.target_lo == rec.target_hi else "enclosure"}
    if args.figure:
        from .plotting import density_figure

        steps = sorted({max(1, args.n * k // 40) for k in range(1, 41)})
        emp = [scheme.count(W, seq(t)) / t for t in steps]
        density_figure(args.figure, steps, emp, float(rec.target_lo), float(rec.target_hi), f"{scheme.kind} window {W}")
        payload["figure"] = args.figure
    _emit(payload)
    return EXIT_OK


def cmd_boundary(args) -> int:
    ctx = parse_group(args.group)
    K = parse_set(ctx, args.K)
    A = parse_set(ctx, args.A)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    out = {}
    for kind in kinds:
        b = boundary(ctx, K, A, kind)
        out[kind] = {
            "measure": str(measure(ctx, b)),
            "set": [list(map(str, p)) for p in b.elements()] if ctx.discrete else [[[str(lo), str(hi)] for lo, hi in box] for box in b.box_list()],
        }
    payload = {"input": _echo(args), "haar": ctx.haar_norm, "boundaries": out, "m(A)": str(measure(ctx, A))}
    if args.inclusions:
        payload["inclusions"] = comparison_inclusions(ctx, K, A)
    _emit(payload)
    return EXIT_OK


def _index_list(text: str) -> List[int]:
    out = []
    for part in text.split(","):
        if ":" in part:
            a, b, *step = (int(x) for x in part.split(":"))
            out.extend(range(a, b + 1, step[0] if step else 1))
        elif part.strip():
            out.append(int(part))
    if not out or min(out) < 1:
        raise UsageError("indices must be positive")
    return out


def cmd_folner_ratio(args) -> int:
    seq = _sequence(args)
    if args.K is not None:
        K = parse_set(seq.ctx, args.K)
    elif args.family == "comb":
        eps = _num(args.eps)
        K = GSet.interval(seq.ctx, -eps, eps)
    else:
        raise UsageError("--K is required except for the comb family")
    ns = _index_list(args.n)
    w = sys.stdout
    w.write("n,ratio\n")
    values = []
    for n in ns:
        r = ratio(seq.ctx, seq, n, K, args.kind)
        values.append(float(r))
        w.write(f"{n},{r}\n")
    if args.figure:
        from .plotting import folner_ratio_figure

        folner_ratio_figure(args.figure, ns, values, f"{args.kind} ratio, {seq.tag}")
    return EXIT_OK


def _lattice(ctx, basis: Optional[str]):
    if basis is None:
        raise UsageError("--basis is required")
    vals = [int(_num(v)) for v in basis.replace(",", " ").replace(";", " ").split()]
    if ctx.kind == "H3":
        if len(vals) != 1:
            raise UsageError("for H3Z pass the single scale n of Gamma_n")
        return HeisenbergGamma(vals[0])
    d = ctx.dim
    if len(vals) != d * d:
        raise UsageError(f"basis for {ctx.name} needs {d * d} integers")
    return IntSublattice([vals[i * d:(i + 1) * d] for i in range(d)])


def cmd_lattice(args) -> int:
    ctx = parse_group(args.group)
    if not ctx.discrete:
        raise UsageError("lattices are built in Z^d and H3Z")
    lat = _lattice(ctx, args.basis)
    if args.op == "covol":
        print(lat.covolume())
    elif args.op == "fd":
        sys.stdout.write(pio.dumps(lat.fundamental_domain()))
    else:
        seq = heisenberg_boxes() if ctx.kind == "H3" else cubes_Zd(ctx.dim)
        _emit(
            {
                "input": _echo(args),
                "haar": ctx.haar_norm,
                "density": str(lattice_density(lat, seq, args.n)),
                "covolume": str(lat.covolume()),
                "flags": {"density": "exact"},
            }
        )
    return EXIT_OK


def cmd_almost_periods(args) -> int:
    t0 = time.perf_counter()
    scheme, W = _scheme_and_window(args)
    lo, hi = _num(args.range[0]), _num(args.range[1])
    region = [(lo, hi)] if args.scheme == "fib" else GSet.box(scheme.ctx, (int(lo),), (int(hi),))
    rec = almost_periods(scheme, W, _num(args.eps), region)
    payload = rec.to_json()
    payload.update(input=_echo(args), haar=scheme.ctx.haar_norm, flags={"bound": "exact"})
    if args.figure:
        from .plotting import almost_periods_figure

        if args.scheme == "fib":
            pts = model_set_patch(scheme, W, region).floats()
            per = rec.periods.floats()
        else:
            pts = [p[0] for p in model_set_patch(scheme, W, region).elements()]
            per = [p[0] for p in rec.periods.elements()]
        view = (float(lo), float(min(hi, lo + 200)))
        almost_periods_figure(args.figure, pts, per, view, f"almost periods, bound {float(rec.bound_hi):.4g}")
        payload["figure"] = args.figure
    payload["runtime"] = round(time.perf_counter() - t0, 6)
    _emit(payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    t0 = time.perf_counter()
    reports = [run_suite(n, args.cases, args.seed, args.jobs) for n in names]
    # runtime goes to stderr so that the report is byte-identical per seed
    print(f"verify: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    _emit({"input": _echo(args), "suites": [r.to_json() for r in reports]})
    failed = [r for r in reports if not r.passed]
    if failed:
        r = failed[0]
        print(f"FAIL {r.suite} case {r.first_failure['case']} (seed {r.seed}): {r.first_failure['detail']}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# --- parser -------------------------------------------------------------


_NEGATIVE = re.compile(r"^-(\d|\.\d|phi)")


def _add_scheme(p, window_required=True):
    p.add_argument("--scheme", choices=("fib", "cyclic"), default=None if not window_required else "fib")
    p.add_argument("--modulus", type=int, help="N for the cyclic scheme")
    p.add_argument("--window", nargs="+", required=window_required, metavar="X",
                   help="interval endpoints a b [a b ...] (fib) or residues (cyclic)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leptin", description="Exact densities, boundaries, lattices and model sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-modelset", help="write a model-set patch in the point-set format")
    _add_scheme(p)
    p.add_argument("--range", nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_modelset)

    p = sub.add_parser("density", help="density report with certification flags")
    _add_scheme(p, window_required=False)
    p.add_argument("--group", default="Z1")
    p.add_argument("--basis", help="lattice basis rows, row-major; n for H3Z")
    p.add_argument("--residues", help="periodic comb residues, ';'-separated")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("density-formula", help="empirical density against m_H(W)/covolume")
    _add_scheme(p)
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--figure", help="PNG path for the running-density plot")
    p.set_defaults(func=cmd_density_formula)

    p = sub.add_parser("boundary", help="Folner, strong and van Hove boundaries")
    p.add_argument("--group", required=True)
    p.add_argument("--K", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--kind", choices=KINDS + ("all",), default="all")
    p.add_argument("--inclusions", action="store_true", help="also test the five comparison inclusions")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("folner-ratio", help="CSV of boundary ratios along a sequence")
    p.add_argument("--family", choices=("cubes", "heisenberg", "comb"), default="cubes")
    p.add_argument("--group", default="Z1")
    p.add_argument("--eps", default="1/10")
    p.add_argument("--thicken", help="symmetric set L for n -> L A_n")
    p.add_argument("--K", help="default for the comb: [-eps, eps]")
    p.add_argument("--kind", choices=KINDS, default="strong")
    p.add_argument("--n", default="1:10", help="indices: '10,100' or 'a:b[:step]'")
    p.add_argument("--figure", help="PNG path for the ratio plot")
    p.set_defaults(func=cmd_folner_ratio)

    p = sub.add_parser("lattice", help="covolume, canonical domain or lattice density")
    p.add_argument("--group", required=True)
    p.add_argument("--basis", required=True)
    p.add_argument("--op", choices=("covol", "fd", "density"), default="covol")
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("almost-periods", help="almost periods of a model set")
    _add_scheme(p)
    p.add_argument("--eps", default="1/10")
    p.add_argument("--range", nargs=2, default=["0", "10000"], metavar=("LO", "HI"))
    p.add_argument("--figure", help="PNG path for the points/periods plot")
    p.set_defaults(func=cmd_almost_periods)

    p = sub.add_parser("verify", help="randomized exact verification suites")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), required=True)
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, help="worker processes (default $LEPTIN_JOBS or 1)")
    p.set_defaults(func=cmd_verify)
    # let values such as -1/2, -3 4 or -1+2*phi through as arguments
    for parser in (ap, *sub.choices.values()):
        parser._negative_number_matcher = _NEGATIVE
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError, LeptinError) as exc:
        if isinstance(exc, (NoWindowFound, NoCertificate)):
            best = getattr(exc, "best_bound", getattr(exc, "best_eps", None))
            print(f"leptin: {exc} (best reached: {best})", file=sys.stderr)
        else:
            print(f"leptin: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - safety net
        print(f"leptin: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
