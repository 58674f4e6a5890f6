"""Command-line front end: ``period``, ``sweep``, ``asymptote`` and ``coeffs``.

Exit codes: 0 success, 2 domain or root-finding failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from oscperiod.ansatz import solve_coefficients
from oscperiod.errors import DomainError, OscPeriodError
from oscperiod.forces import ABSQUAD, DUFFING, ForceModel, family_model, parse_force_spec
from oscperiod.oracle import asymptotic_constant, exact_family_period
from oscperiod.solver import DEFAULT_TOL, find_period, t_infinity_method
from oscperiod.taylor_init import derivative_sequence

EXIT_DOMAIN = 2
EXIT_IO = 3

SWEEP_HEADER = ("rho", "t_exact", "t_n1", "t_n2", "err_n1", "err_n2")


@dataclass(frozen=True)
class SweepRow:
    rho: float
    t_exact: float
    t_n1: float
    t_n2: float
    err_n1: float
    err_n2: float

    def as_csv(self) -> list[str]:
        return [f"{getattr(self, k):.17g}" for k in SWEEP_HEADER]


def _fmt(x: float) -> str:
    return repr(float(x))


def _family(model: ForceModel) -> str:
    fam = model.family
    if fam is None:
        raise DomainError("this command needs a duffing:EPS or absquad:EPS force")
    return fam


def _resolve(args) -> tuple[ForceModel, float]:
    model = parse_force_spec(args.force)
    if args.rho is not None:
        return family_model(_family(model), args.rho)
    if args.epsilon is not None:
        fam = _family(model)
        model = family_model(fam, args.epsilon)[0]
    return model, args.amplitude


def sweep_row(family: str, rho: float, tol: float = DEFAULT_TOL) -> SweepRow:
    """Exact, first- and second-order periods at one value of ``rho``."""
    model, a = family_model(family, rho)
    t_exact = exact_family_period(family, rho)
    t1 = find_period(model, 1, a, tol).period
    t2 = find_period(model, 2, a, tol).period
    return SweepRow(rho, t_exact, t1, t2, t1 - t_exact, t2 - t_exact)


def sweep(
    family: str,
    rho_min: float,
    rho_max: float,
    points: int,
    scale: str = "linear",
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> list[SweepRow]:
    """Rows in ascending ``rho``; identical for any ``workers``."""
    if points < 2:
        raise DomainError(f"points must be >= 2, got {points}")
    if rho_min < 0 or rho_max < rho_min:
        raise DomainError(f"need 0 <= rho-min <= rho-max, got {rho_min}, {rho_max}")
    if scale == "log":
        if rho_min <= 0:
            raise DomainError("log scale needs rho-min > 0")
        grid = np.geomspace(rho_min, rho_max, points)
    elif scale == "linear":
        grid = np.linspace(rho_min, rho_max, points)
    else:
        raise DomainError(f"scale must be linear or log, got {scale!r}")
    rhos = sorted(float(r) for r in grid)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(sweep_row, [family] * len(rhos), rhos, [tol] * len(rhos)))
    return [sweep_row(family, r, tol) for r in rhos]


def write_sweep_csv(rows: Sequence[SweepRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow(row.as_csv())


def cmd_period(args) -> int:
    model, a = _resolve(args)
    res = find_period(model, args.order, a, args.tol)
    print(f"order={res.order}")
    print(f"amplitude={_fmt(res.amplitude)}")
    print(f"rho={_fmt(res.rho) if res.rho is not None else 'none'}")
    print(f"omega={_fmt(res.omega)}")
    print(f"T={_fmt(res.period)}")
    print(f"residual={_fmt(res.residual)}")
    print(f"bracket={_fmt(res.bracket[0])},{_fmt(res.bracket[1])}")
    print(f"positivity_flag={'true' if res.positivity_flag else 'false'}")
    return 0


def cmd_sweep(args) -> int:
    family = _family(parse_force_spec(args.force))
    rows = sweep(family, args.rho_min, args.rho_max, args.points, args.scale, args.tol, args.workers)
    buf = io.StringIO()
    write_sweep_csv(rows, buf)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
        return 0
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def cmd_asymptote(args) -> int:
    family = _family(parse_force_spec(args.force))
    if args.exact:
        value, err = asymptotic_constant(lambda r: exact_family_period(family, r))
        print(f"T_inf={_fmt(value)} +/- {err:.2g}")
        return 0
    order = args.order

    def period(r: float) -> float:
        model, a = family_model(family, r)
        return find_period(model, order, a, args.tol).period

    value, err = asymptotic_constant(period)
    print(f"T_inf={_fmt(value)} +/- {err:.2g}")
    if order in (1, 2):
        print(f"closed_form={_fmt(t_infinity_method(family, order))}")
    return 0


def cmd_coeffs(args) -> int:
    model, a = _resolve(args)
    g = derivative_sequence(model, a, args.order)
    sol = solve_coefficients(g, args.order, args.omega)
    print("n\tG_n")
    for n, v in enumerate(g.values):
        print(f"{n}\t{_fmt(v)}")
    print("j\tA_j")
    for j, v in enumerate(sol.coefficients, start=1):
        print(f"{j}\t{_fmt(v)}")
    return 0


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("force", help="duffing:EPS, absquad:EPS or poly:c1,c3,...")
    p.add_argument("--order", "-N", type=int, default=1)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--rho", type=float, help="family parameter; uses A=1 and eps=rho")
    group.add_argument("--amplitude", "-A", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, help="override the family's eps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscperiod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", help="solve for the approximate period")
    _add_model_args(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("sweep", help="CSV of exact and approximate periods over a rho grid")
    p.add_argument("force", help="duffing or absquad")
    p.add_argument("--rho-min", type=float, default=0.0)
    p.add_argument("--rho-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("asymptote", help="large-rho constant lim sqrt(rho) T(rho)")
    p.add_argument("force", help="duffing or absquad")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", "-N", type=int)
    group.add_argument("--exact", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_asymptote)

    p = sub.add_parser("coeffs", help="print G_n and the ansatz coefficients A_j")
    _add_model_args(p)
    p.add_argument("--omega", type=float, default=1.0)
    p.set_defaults(func=cmd_coeffs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OscPeriodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
