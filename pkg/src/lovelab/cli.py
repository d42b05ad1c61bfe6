"""Command-line driver: parameter scans, the weak-coupling fit, the
identity-verification suite, and capacitance comparison tables.

Output is deterministic and machine readable (CSV or JSON, every numeric
cell printed with 17 significant digits), independent of the worker count.
Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from . import asymptotics, conjectures, love
from .errors import LoveLabError

_MIN_KAPPA = 0.01     # below this the dense solve is refused; use asymptotics
_TOL_RANGE = (1e-14, 1e-4)

_DIGIT_THRESHOLDS = {
    "gamma0": 8, "gamma1": 8,
    "gamma2_tilde_via_integral4": 9, "gamma2_tilde_direct": 9,
    "integral4": 9,
    "polylog_n1": 9, "polylog_n2": 9, "polylog_n3": 9, "polylog_n4": 9,
    "residue_k1": 8, "residue_k2": 8, "residue_k3": 8, "residue_k4": 8,
}


def _fmt(value) -> str:
    """One cell: floats at 17 significant digits, ints/str verbatim."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.16e}"
    if value is None:
        return ""
    return str(value)


def _write_rows(columns: Sequence[str], rows: Iterable[dict], fmt: str,
                path: str | None) -> None:
    lines: list[str] = []
    if fmt == "csv":
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(row.get(c)) for c in columns))
    else:
        body = []
        for row in rows:
            cells = []
            for c in columns:
                v = row.get(c)
                if v is None:
                    cells.append(f'"{c}": null')
                elif isinstance(v, str):
                    cells.append(f'"{c}": "{v}"')
                else:
                    cells.append(f'"{c}": {_fmt(v)}')
            body.append("  {" + ", ".join(cells) + "}")
        lines.append("[")
        lines.append(",\n".join(body))
        lines.append("]")
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args: argparse.Namespace, key: str, default, cast):
    """Option precedence: command-line flag > config file > default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in args._config:
        return cast(args._config[key])
    return default


def _workers(args: argparse.Namespace) -> int:
    env = os.environ.get("LOVE_LAB_THREADS")
    default = int(env) if env else 1
    return max(1, _resolve(args, "workers", default, int))


def _kappa_grid(args: argparse.Namespace) -> list[float]:
    kappa = _resolve(args, "kappa", None, float)
    if kappa is not None:
        if kappa <= 0:
            raise ValueError(f"kappa must be positive, got {kappa:g}")
        return [float(kappa)]
    kmin = _resolve(args, "kappa_min", None, float)
    kmax = _resolve(args, "kappa_max", None, float)
    points = _resolve(args, "kappa_points", 5, int)
    if kmin is None or kmax is None:
        raise ValueError("provide --kappa or both --kappa-min and --kappa-max")
    if not 0 < kmin <= kmax:
        raise ValueError("need 0 < kappa-min <= kappa-max")
    if points < 1:
        raise ValueError("kappa-points must be >= 1")
    return [float(v) for v in np.geomspace(kmin, kmax, points)]


def _check_tol(tol: float) -> float:
    lo, hi = _TOL_RANGE
    if not lo <= tol <= hi:
        raise ValueError(f"tol must lie in [{lo:g}, {hi:g}], got {tol:g}")
    return tol


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------

def _solve_row(kappa: float, nodes: int | None) -> dict:
    row = {"kappa": kappa, "gamma": None, "capacitance": None,
           "energy": None, "residual": None, "error": None}
    try:
        sol = love.solve_love(love.LoveProblem(kappa=kappa), n=nodes)
        point = love.observables(sol)
        row.update(gamma=point.gamma, capacitance=point.capacitance,
                   energy=point.energy, residual=sol.residual)
    except LoveLabError as exc:
        row["error"] = str(exc)
    return row


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        grid = _kappa_grid(args)
        nodes = _resolve(args, "nodes", None, int)
        if any(k < _MIN_KAPPA for k in grid):
            raise ValueError(
                f"kappa < {_MIN_KAPPA} is refused by the direct solver; "
                "use the asymptotic expansions (compare-asymptotics, "
                "third-moment machinery) in that regime")
    except ValueError as exc:
        return _usage_error(str(exc))
    workers = _workers(args)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda k: _solve_row(k, nodes), grid))
    _write_rows(["kappa", "gamma", "capacitance", "energy", "residual", "error"],
                rows, args.format, args.output)
    return 1 if any(r["error"] for r in rows) else 0


# ----------------------------------------------------------------------
# fit-weak
# ----------------------------------------------------------------------

def cmd_fit_weak(args: argparse.Namespace) -> int:
    try:
        gmin = _resolve(args, "gamma_min", 2e-3, float)
        gmax = _resolve(args, "gamma_max", 5e-2, float)
        points = _resolve(args, "gamma_points", 9, int)
        if not 1e-3 <= gmin <= gmax <= 5e-2:
            raise ValueError("gamma grid must lie inside [1e-3, 5e-2]")
        if points < 5:
            raise ValueError("need at least 5 gamma points")
        nodes = _resolve(args, "nodes", None, int)
        synthetic = _resolve(args, "synthetic", None, str)
        if synthetic is not None and synthetic not in (
                "takahashi", "kaminaka_wadati", "bogoliubov"):
            raise ValueError(f"unknown synthetic source {synthetic!r}")
    except ValueError as exc:
        return _usage_error(str(exc))

    grid = np.geomspace(gmin, gmax, points)
    if synthetic:
        pts = [love.EnergyPoint(kappa=math.nan, gamma=g,
                                capacitance=math.nan,
                                energy=asymptotics.energy_series(synthetic, g))
               for g in grid]
    else:
        def solve_point(gamma_target: float) -> love.EnergyPoint:
            kappa = 2.0 * asymptotics.epsilon_of_gamma(gamma_target)
            sol = love.solve_love(love.LoveProblem(kappa=kappa), n=nodes)
            return love.observables(sol)

        with ThreadPoolExecutor(max_workers=_workers(args)) as pool:
            pts = list(pool.map(solve_point, grid))
    try:
        c2, residual = love.weak_coupling_fit(pts)
    except LoveLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    dist_tak = abs(c2 - asymptotics.ENERGY_GAMMA2)
    dist_kw = abs(c2 - asymptotics.ENERGY_GAMMA2_RIVAL)
    verdict = "takahashi" if dist_tak < dist_kw else "kaminaka_wadati"
    row = {"c2": c2, "fit_residual": residual,
           "dist_takahashi": dist_tak, "dist_kaminaka_wadati": dist_kw,
           "verdict": verdict}
    _write_rows(["c2", "fit_residual", "dist_takahashi", "dist_kaminaka_wadati",
                 "verdict"], [row], args.format, args.output)
    return 0


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _verify_tasks(which: str) -> list:
    """Independent report producers, merged in deterministic order."""
    tasks = {
        "gamma0": [conjectures.verify_gamma0],
        "gamma1": [conjectures.verify_gamma1],
        "gamma2": [conjectures.verify_gamma2],
        "integral4": [conjectures.verify_integral4],
        "polylog": [lambda n=n: conjectures.verify_polylog_claim(n)
                    for n in range(1, 5)],
        "residue": [lambda k=k: conjectures.residue_identity(k)
                    for k in range(1, 5)],
    }
    if which == "all":
        return [t for group in tasks.values() for t in group]
    if which not in tasks:
        raise ValueError(f"unknown conjecture {which!r}; expected one of "
                         "all, gamma0, gamma1, gamma2, integral4, polylog, residue")
    return tasks[which]


def cmd_verify(args: argparse.Namespace) -> int:
    which = _resolve(args, "which", "all", str)
    try:
        tasks = _verify_tasks(which)
    except ValueError as exc:
        return _usage_error(str(exc))
    with ThreadPoolExecutor(max_workers=_workers(args)) as pool:
        produced = list(pool.map(lambda task: task(), tasks))
    reports = []
    for item in produced:
        reports.extend(item if isinstance(item, list) else [item])
    rows = [{"name": r.name, "computed": r.computed, "target": r.target,
             "abs_error": r.abs_error, "digits": r.digits, "method": r.method}
            for r in reports]
    _write_rows(["name", "computed", "target", "abs_error", "digits", "method"],
                rows, args.format, args.output)
    ok = all(r.digits >= _DIGIT_THRESHOLDS.get(r.name, 8) for r in reports)
    return 0 if ok else 1


# ----------------------------------------------------------------------
# compare-asymptotics
# ----------------------------------------------------------------------

def cmd_compare(args: argparse.Namespace) -> int:
    try:
        grid = _kappa_grid(args)
        if not grid:
            raise ValueError("empty kappa grid")
        if any(k > 0.3 for k in grid):
            raise ValueError("capacitance expansions need kappa <= 0.3")
        if any(k < _MIN_KAPPA for k in grid):
            raise ValueError(f"kappa < {_MIN_KAPPA} is refused by the direct solver")
        nodes = _resolve(args, "nodes", None, int)
    except ValueError as exc:
        return _usage_error(str(exc))

    def row(kappa: float) -> dict:
        out = {"kappa": kappa, "c_numeric": None, "c_kirchhoff": None,
               "c_extended": None, "err_kirchhoff": None, "err_extended": None,
               "error": None}
        try:
            sol = love.solve_love(love.LoveProblem(kappa=kappa), n=nodes)
            c = love.observables(sol).capacitance
            ck = asymptotics.capacitance_series("kirchhoff", kappa)
            ce = asymptotics.capacitance_series("extended", kappa)
            out.update(c_numeric=c, c_kirchhoff=ck, c_extended=ce,
                       err_kirchhoff=abs(c - ck), err_extended=abs(c - ce))
        except LoveLabError as exc:
            out["error"] = str(exc)
        return out

    with ThreadPoolExecutor(max_workers=_workers(args)) as pool:
        rows = list(pool.map(row, grid))
    _write_rows(["kappa", "c_numeric", "c_kirchhoff", "c_extended",
                 "err_kirchhoff", "err_extended", "error"],
                rows, args.format, args.output)
    return 1 if any(r["error"] for r in rows) else 0


# ----------------------------------------------------------------------
# Entry point.
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lovelab",
        description="Love/Lieb-Liniger equation solver and asymptotics toolkit")
    parser.add_argument("--config", help="flat key = value option file")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write table here instead of stdout")
        p.add_argument("--workers", type=int,
                       help="worker threads (default: LOVE_LAB_THREADS or 1)")
        p.add_argument("--tol", type=float, help="numerical tolerance")

    p_solve = sub.add_parser("solve", help="solve the Love equation on a kappa grid")
    p_solve.add_argument("--kappa", type=float)
    p_solve.add_argument("--kappa-min", type=float, dest="kappa_min")
    p_solve.add_argument("--kappa-max", type=float, dest="kappa_max")
    p_solve.add_argument("--kappa-points", type=int, dest="kappa_points")
    p_solve.add_argument("--nodes", type=int)
    common(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_fit = sub.add_parser("fit-weak", help="extract the gamma^2 energy coefficient")
    p_fit.add_argument("--gamma-min", type=float, dest="gamma_min")
    p_fit.add_argument("--gamma-max", type=float, dest="gamma_max")
    p_fit.add_argument("--gamma-points", type=int, dest="gamma_points")
    p_fit.add_argument("--nodes", type=int)
    p_fit.add_argument("--synthetic",
                       help="fit series-generated energies instead of solver output")
    common(p_fit)
    p_fit.set_defaults(func=cmd_fit_weak)

    p_verify = sub.add_parser("verify", help="run the integral-identity suite")
    p_verify.add_argument("--which")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_cmp = sub.add_parser("compare-asymptotics",
                           help="numeric capacitance vs truncated expansions")
    p_cmp.add_argument("--kappa", type=float)
    p_cmp.add_argument("--kappa-min", type=float, dest="kappa_min")
    p_cmp.add_argument("--kappa-max", type=float, dest="kappa_max")
    p_cmp.add_argument("--kappa-points", type=int, dest="kappa_points")
    p_cmp.add_argument("--nodes", type=int)
    common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args._config = _read_config(args.config) if args.config else {}
    except (OSError, ValueError) as exc:
        return _usage_error(str(exc))
    try:
        tol = _resolve(args, "tol", 1e-10, float)
        _check_tol(tol)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        return args.func(args)
    except LoveLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
