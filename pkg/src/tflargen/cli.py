"""Command-line front end.

Subcommands: ``largen`` (two-term large-dimension oscillator energies),
``gpe1d`` (1D condensate energies at one coupling), ``gpend`` (combined
large-N + Thomas-Fermi solution), ``table1`` (the 13-row Cs-133 benchmark
table), and ``sweep`` (coupling sweeps for plotting).

Every subcommand accepts --output, --format {csv,json}, --precision and
--config (a flat ``key = value`` file whose keys mirror the long flag
names; flags override the file).  Exit codes: 0 success, 2 usage or
validation error, 3 numerical failure.  Output is deterministic: no
locale, no environment lookups, stable field order.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, gpe1d, gpend, largen
from .constants import ATOMIC_MASS_KG, HBAR
from .errors import Diverged, DomainError, Error, GridTooNarrow, NoBracket, NoConvergence
from .numerics import DEFAULT_TOL, Grid1D

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_GPE1D_METHODS = {
    "tf": "tf",
    "variational": "variational",
    "tf-wkb": "tf_wkb_closed",
    "tf-wkb-numeric": "tf_wkb_numeric",
    "exact": "exact",
}
_GAMMA_METHODS = ("tf-largen", "oracle3d")


def _bool_of(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# Config keys mirror the long flag names of the output, tolerance, grid and
# flow settings; primary physics inputs (couplings, dimensions, methods)
# stay on the command line.
_CONFIG_KEYS = {
    "output": str,
    "format": str,
    "precision": int,
    "keep-going": _bool_of,
    "oracle": _bool_of,
    "grid-points": int,
    "grid-halfwidth": float,
    "grid-rmin": float,
    "grid-rmax": float,
    "time-step": float,
    "mu-tol": float,
    "max-steps": int,
}


def _dest_of(key: str) -> str:
    return key.replace("-", "_")


def _load_config(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise DomainError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _CONFIG_KEYS:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            parsed = _CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: bad value for {key!r}: {exc}")
        if key == "format" and parsed not in ("csv", "json"):
            raise DomainError(f"{path}:{lineno}: format must be csv or json")
        if key == "precision" and not 3 <= parsed <= 17:
            raise DomainError(f"{path}:{lineno}: precision must be in [3, 17]")
        out[_dest_of(key)] = parsed
    return out


def _prescan_config(argv: list[str]) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def _precision(text: str) -> int:
    value = int(text)
    if not 3 <= value <= 17:
        raise argparse.ArgumentTypeError("precision must be in [3, 17]")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range must be min:max:points, got {text!r}")
    try:
        lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be min:max:points, got {text!r}")
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"range needs min < max, got {text!r}")
    if pts < 2:
        raise argparse.ArgumentTypeError(f"range needs at least 2 points, got {text!r}")
    return lo, hi, pts


def _format_cell(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, f".{precision}g")
    return str(value)


def _json_value(value, precision: int):
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format(value, f".{precision}g"))
    return value


def _emit(columns: list[str], rows: list[dict], meta: dict, args) -> None:
    if args.format == "json":
        payload = {
            "rows": [
                {c: _json_value(r.get(c), args.precision) for c in columns}
                for r in rows
            ],
            "meta": {k: _json_value(v, 17) for k, v in meta.items()},
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(columns)]
        for row in rows:
            lines.append(
                ",".join(_format_cell(row.get(c), args.precision) for c in columns)
            )
        text = "\n".join(lines) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


def _base_meta(args) -> dict:
    return {
        "version": __version__,
        "precision": args.precision,
        "abs_tol": DEFAULT_TOL.abs_tol,
        "rel_tol": DEFAULT_TOL.rel_tol,
    }


def _split_methods(text: str, allowed: dict | tuple) -> list[str] | None:
    names = [m.strip() for m in text.split(",") if m.strip()]
    if not names:
        return None
    for name in names:
        if name not in allowed:
            return None
    return names


def _rows_failure_code(errors: list[str]) -> int:
    kind = errors[0].split(":", 1)[0]
    return EXIT_USAGE if kind == "DomainError" else EXIT_NUMERIC


def _resolve_grid_1d(args, lam: float) -> Grid1D:
    from . import oracle

    grid = oracle.default_grid_1d(lam)
    half = getattr(args, "grid_halfwidth", None)
    pts = getattr(args, "grid_points", None)
    if half is not None or pts is not None:
        grid = Grid1D(
            -(half if half is not None else grid.x_max),
            half if half is not None else grid.x_max,
            pts if pts is not None else grid.n_points,
        )
    return grid


def _resolve_grid_radial(args, gamma: float) -> Grid1D:
    from . import oracle

    grid = oracle.default_grid_radial(gamma)
    rmin = getattr(args, "grid_rmin", None)
    rmax = getattr(args, "grid_rmax", None)
    pts = getattr(args, "grid_points", None)
    if rmin is not None or rmax is not None or pts is not None:
        grid = Grid1D(
            rmin if rmin is not None else grid.x_min,
            rmax if rmax is not None else grid.x_max,
            pts if pts is not None else grid.n_points,
        )
    return grid


def _resolve_flow(args, grid: Grid1D):
    from . import oracle

    flow = oracle.default_flow(grid)
    if any(
        getattr(args, name, None) is not None
        for name in ("time_step", "mu_tol", "max_steps")
    ):
        flow = oracle.FlowParams(
            time_step=args.time_step if args.time_step is not None else flow.time_step,
            max_steps=args.max_steps if args.max_steps is not None else flow.max_steps,
            mu_tol=args.mu_tol if args.mu_tol is not None else flow.mu_tol,
        )
    return flow


def _grid_flow_meta(grid: Grid1D, flow) -> dict:
    return {
        "grid_x_min": grid.x_min,
        "grid_x_max": grid.x_max,
        "grid_points": grid.n_points,
        "time_step": flow.time_step,
        "mu_tol": flow.mu_tol,
        "max_steps": flow.max_steps,
    }


def _cmd_largen(args) -> int:
    kind = largen.Harmonic() if args.kind == "harmonic" else largen.Quartic()
    estimate = largen.two_term_energy(
        kind, args.dimension, largen.CurvatureMode(args.mode)
    )
    rows = [
        {
            "kind": args.kind,
            "dimension": args.dimension,
            "mode": args.mode,
            "leading": estimate.leading,
            "correction": estimate.correction,
            "total": estimate.value,
        }
    ]
    meta = _base_meta(args)
    meta["energy_unit"] = estimate.metadata["energy_unit"]
    _emit(
        ["kind", "dimension", "mode", "leading", "correction", "total"],
        rows,
        meta,
        args,
    )
    return EXIT_OK


def _cmd_gpe1d(args) -> int:
    names = _split_methods(args.methods, _GPE1D_METHODS)
    if names is None:
        print(
            f"error: --methods must name at least one of {sorted(_GPE1D_METHODS)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    grid = flow = None
    if "exact" in names:  # only then pay for the compiled-solver import
        grid = _resolve_grid_1d(args, args.lam)
        flow = _resolve_flow(args, grid)
    tags = [_GPE1D_METHODS[n] for n in names]
    sweep_rows = gpe1d.sweep_methods([args.lam], tags, grid=grid, flow=flow)
    errors = [r.error for r in sweep_rows if r.error]
    if errors and not args.keep_going:
        print(f"error: {errors[0]}", file=sys.stderr)
        return _rows_failure_code(errors)
    rows = [
        {"lambda": r.lam, "method": name, "energy": r.energy, "error": r.error}
        for name, r in zip(names, sweep_rows)
    ]
    meta = _base_meta(args)
    if "exact" in names:
        meta.update(_grid_flow_meta(grid, flow))
    _emit(["lambda", "method", "energy", "error"], rows, meta, args)
    return EXIT_OK


def _cmd_gpend(args) -> int:
    physical = (args.atoms, args.mass_amu, args.omega, args.scattering_length_m)
    has_gamma = args.gamma is not None
    has_physical = any(v is not None for v in physical)
    if has_gamma == has_physical:
        print(
            "error: give exactly one of --gamma or the physical group "
            "(--atoms --mass-amu --omega --scattering-length-m)",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if has_physical and any(v is None for v in physical):
        print(
            "error: the physical group needs all of --atoms --mass-amu "
            "--omega --scattering-length-m",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if not args.dimension > 2.0:
        print(
            f"error: dimension must exceed 2 (got {args.dimension}); the "
            "normalization bracket is singular at N = 2",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if has_physical and args.dimension != 3.0:
        print(
            "error: physical flags define gamma = n a / a_osc, which is the "
            "3D conversion; use --gamma for other dimensions",
            file=sys.stderr,
        )
        return EXIT_USAGE
    meta = _base_meta(args)
    if has_physical:
        trap = gpend.PhysicalTrap(
            mass=args.mass_amu * ATOMIC_MASS_KG,
            omega=args.omega,
            scattering_length=args.scattering_length_m,
            particle_count=args.atoms,
        )
        gamma = trap.gamma
        meta.update(
            {
                "hbar": HBAR,
                "amu": ATOMIC_MASS_KG,
                "mass_amu": args.mass_amu,
                "omega": args.omega,
                "scattering_length_m": args.scattering_length_m,
                "a_osc": trap.a_osc,
            }
        )
    else:
        gamma = args.gamma
    if args.dimension == 3.0:
        solution = gpend.solve_ebar_3d(gamma)
    else:
        solution = gpend.solve_eps_general(
            args.dimension, gpend.solid_angle(args.dimension) * gamma
        )
    rows = [
        {
            "dimension": args.dimension,
            "gamma": gamma,
            "eps": solution.eps,
            "e_bar": solution.e_bar,
            "r1": solution.r1,
            "r2": solution.r2,
            "residual": solution.residual,
        }
    ]
    _emit(
        ["dimension", "gamma", "eps", "e_bar", "r1", "r2", "residual"],
        rows,
        meta,
        args,
    )
    return EXIT_OK


def _cmd_table1(args) -> int:
    trap = gpend.cs133_trap()
    grid = flow = None
    meta = _base_meta(args)
    meta.update(
        {
            "hbar": HBAR,
            "amu": ATOMIC_MASS_KG,
            "mass_amu": trap.mass / ATOMIC_MASS_KG,
            "omega": trap.omega,
            "scattering_length_m": trap.scattering_length,
            "a_osc": trap.a_osc,
        }
    )
    if args.oracle:
        gamma_max = max(gpend.TABLE1_N_VALUES) * trap.scattering_length / trap.a_osc
        grid = _resolve_grid_radial(args, gamma_max)
        flow = _resolve_flow(args, grid)
        meta.update(_grid_flow_meta(grid, flow))
    table_rows = gpend.table1(
        trap,
        gpend.TABLE1_N_VALUES,
        include_oracle=args.oracle,
        oracle_grid=grid,
        oracle_flow=flow,
    )
    errors = [r.error for r in table_rows if r.error]
    if errors and not args.keep_going:
        print(f"error: {errors[0]}", file=sys.stderr)
        return _rows_failure_code(errors)
    columns = ["n", "gamma", "e_bar_tf_largen"]
    if args.oracle:
        columns.append("mu_oracle")
    columns.append("error")
    rows = [
        {
            "n": r.n,
            "gamma": r.gamma,
            "e_bar_tf_largen": r.e_bar_tf_largen,
            "mu_oracle": r.mu_oracle,
            "error": r.error,
        }
        for r in table_rows
    ]
    _emit(columns, rows, meta, args)
    return EXIT_OK


def _sweep_values(bounds: tuple[float, float, int], log: bool):
    lo, hi, pts = bounds
    if log:
        if lo <= 0.0:
            return None
        return np.geomspace(lo, hi, pts)
    return np.linspace(lo, hi, pts)


def _cmd_sweep(args) -> int:
    has_lam = args.lam is not None
    has_gamma = args.gamma is not None
    if has_lam == has_gamma:
        print("error: give exactly one of --lambda or --gamma", file=sys.stderr)
        return EXIT_USAGE
    bounds = args.lam if has_lam else args.gamma
    values = _sweep_values(bounds, args.log)
    if values is None:
        print("error: --log needs a strictly positive range minimum", file=sys.stderr)
        return EXIT_USAGE
    meta = _base_meta(args)

    if has_lam:
        names = _split_methods(args.methods, _GPE1D_METHODS)
        if names is None:
            print(
                f"error: --methods must name at least one of {sorted(_GPE1D_METHODS)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        grid = flow = None
        if "exact" in names:
            grid = _resolve_grid_1d(args, float(values[-1]))
            flow = _resolve_flow(args, grid)
        tags = [_GPE1D_METHODS[n] for n in names]
        tag_to_name = dict(zip(tags, names))
        sweep_rows = gpe1d.sweep_methods([float(v) for v in values], tags, grid=grid, flow=flow)
        rows = [
            {
                "lambda": r.lam,
                "method": tag_to_name[r.method],
                "energy": r.energy,
                "error": r.error,
            }
            for r in sweep_rows
        ]
        if "exact" in names:
            meta.update(_grid_flow_meta(grid, flow))
        columns = ["lambda", "method", "energy", "error"]
    else:
        names = _split_methods(args.methods, _GAMMA_METHODS)
        if names is None:
            print(
                f"error: --methods must name at least one of {sorted(_GAMMA_METHODS)}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        grid = flow = None
        if "oracle3d" in names:
            grid = _resolve_grid_radial(args, float(values[-1]))
            flow = _resolve_flow(args, grid)
            meta.update(_grid_flow_meta(grid, flow))
        rows = []
        for value in values:
            gamma = float(value)
            for name in names:
                try:
                    if name == "tf-largen":
                        energy = gpend.solve_ebar_3d(gamma).e_bar
                    else:
                        from . import oracle

                        energy = oracle.gpe_ground_radial3d(
                            gamma, grid=grid, flow=flow
                        ).energy
                except Error as exc:
                    rows.append(
                        {
                            "gamma": gamma,
                            "method": name,
                            "energy": float("nan"),
                            "error": f"{type(exc).__name__}: {exc}",
                        }
                    )
                else:
                    rows.append(
                        {"gamma": gamma, "method": name, "energy": energy, "error": None}
                    )
        columns = ["gamma", "method", "energy", "error"]

    errors = [r["error"] for r in rows if r["error"]]
    if errors and not args.keep_going:
        print(f"error: {errors[0]}", file=sys.stderr)
        return _rows_failure_code(errors)
    _emit(columns, rows, meta, args)
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default="-", help="output path, or - for stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--precision", type=_precision, default=9,
                        help="significant digits for floats (3..17)")
    parser.add_argument("--config", default=None,
                        help="flat key = value file; keys mirror long flag names")


def _add_flow_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--time-step", type=float, default=None)
    parser.add_argument("--mu-tol", type=float, default=None)
    parser.add_argument("--max-steps", type=int, default=None)


def _build_parser(config_defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tflargen",
        description="Trapped-gas ground-state energies from effective-potential "
        "and Thomas-Fermi approximations, with exact reference solvers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("largen", help="two-term large-dimension oscillator energy")
    p.add_argument("kind", choices=("harmonic", "quartic"))
    p.add_argument("--dimension", type=_positive_int, required=True)
    p.add_argument("--mode", choices=("paper", "derived"), default="paper")
    _add_common(p)
    p.set_defaults(handler=_cmd_largen)

    p = sub.add_parser("gpe1d", help="1D condensate energies at one coupling")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--methods", required=True,
                   help=f"comma list of {sorted(_GPE1D_METHODS)}")
    p.add_argument("--keep-going", action="store_true")
    p.add_argument("--grid-points", type=_positive_int, default=None)
    p.add_argument("--grid-halfwidth", type=float, default=None)
    _add_flow_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_gpe1d)

    p = sub.add_parser("gpend", help="combined large-N + Thomas-Fermi solution")
    p.add_argument("--dimension", type=float, required=True)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--atoms", type=_positive_int, default=None)
    p.add_argument("--mass-amu", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--scattering-length-m", type=float, default=None)
    _add_common(p)
    p.set_defaults(handler=_cmd_gpend)

    p = sub.add_parser("table1", help="13-row Cs-133 benchmark table")
    p.add_argument("--oracle", action="store_true",
                   help="add the reference chemical potential column")
    p.add_argument("--keep-going", action="store_true")
    p.add_argument("--grid-points", type=_positive_int, default=None)
    p.add_argument("--grid-rmin", type=float, default=None)
    p.add_argument("--grid-rmax", type=float, default=None)
    _add_flow_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("sweep", help="coupling sweep as plot-ready rows")
    p.add_argument("--lambda", dest="lam", type=_parse_range, default=None,
                   metavar="MIN:MAX:POINTS")
    p.add_argument("--gamma", type=_parse_range, default=None, metavar="MIN:MAX:POINTS")
    p.add_argument("--log", action="store_true", help="geometric spacing")
    p.add_argument(
        "--methods",
        required=True,
        help=f"comma list; lambda sweeps accept {sorted(_GPE1D_METHODS)}, "
        f"gamma sweeps accept {list(_GAMMA_METHODS)}",
    )
    p.add_argument("--keep-going", action="store_true")
    p.add_argument("--grid-points", type=_positive_int, default=None)
    p.add_argument("--grid-halfwidth", type=float, default=None)
    p.add_argument("--grid-rmin", type=float, default=None)
    p.add_argument("--grid-rmax", type=float, default=None)
    _add_flow_flags(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    if config_defaults:
        for sp in sub.choices.values():
            sp.set_defaults(**config_defaults)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    config_path = _prescan_config(argv)
    try:
        config_defaults = _load_config(config_path) if config_path else {}
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = _build_parser(config_defaults)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, NoBracket, Diverged, GridTooNarrow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
