"""Command-line front end.

Exit codes: 0 success, 2 usage error (bad flag, unknown material, unwritable
output), 3 quadrature did not converge.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import materials, scenarios
from .lifshitz import ConvergenceError, LayeredStack, QuadratureSpec, casimir_force
from .materials import DrudeSmith, RegistryError, epsilon_iw
from .units import OMEGA0, per_s_to_internal, tau_fs_to_gamma

EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

COMMANDS = ("epsilon", "force", "eta", "sweep-separation", "sweep-thickness", "delta", "table1")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    args: argparse.Namespace
    materials: dict
    spec: QuadratureSpec | None
    out: Path | None


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text!r}")
    return value


def _float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _add_materials(p):
    g = p.add_argument_group("materials")
    g.add_argument("--materials", metavar="PATH", help="JSON file adding/overriding named materials")
    g.add_argument("--half-space", default="au_bulk", metavar="NAME",
                   help="material of the half-space body (default: au_bulk, Drude gold)")
    g.add_argument("--substrate", default="si", metavar="NAME",
                   help="substrate under the film (default: si, Lorentz oscillator)")
    g.add_argument("--film", metavar="NAME", help="named film material instead of the tabulated one for --film-nm")
    g.add_argument("--wp", type=_positive_float, metavar="S^-1",
                   help="inline Drude-Smith film: plasma frequency in s^-1 (needs --tau-fs)")
    g.add_argument("--tau-fs", type=_positive_float, metavar="FS", help="inline film relaxation time in fs")
    g.add_argument("--c1", type=_float, default=0.0, metavar="C1",
                   help="inline film backscattering coefficient in [-1, 0] (default 0)")


def _add_quadrature(p):
    g = p.add_argument_group("quadrature")
    g.add_argument("--rel-tol", type=_positive_float, default=1e-6, help="relative tolerance (default 1e-6)")
    g.add_argument("--max-refinements", type=_count, default=20, help="bisection rounds (default 20)")
    g.add_argument("--threads", type=_count, help="worker threads for sweeps (default: $CASIMIR_FILM_THREADS or CPUs)")


def _add_out(p, what):
    p.add_argument("--out", metavar="DIR", help=f"directory for {what} CSV files (default: print to stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-film",
        description="Casimir pressure between a gold half-space and a thin gold film on silicon.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("table1", help="print the tabulated Drude-Smith film parameters")

    p = sub.add_parser("epsilon", help="permittivity eps(i xi) of a film or named material")
    p.add_argument("--film-nm", type=_positive_float, metavar="NM", help="tabulated film thickness in nm")
    p.add_argument("--material", metavar="NAME", help="named material instead of a tabulated film")
    xi = p.add_mutually_exclusive_group()
    xi.add_argument("--xi", type=_positive_float, metavar="S^-1", help="imaginary frequency in s^-1")
    xi.add_argument("--xi-w0", type=_positive_float, metavar="W0",
                    help=f"imaginary frequency in units of omega0 = {OMEGA0:g} s^-1")
    p.add_argument("--figure", choices=("1", "2"), help="emit the normalized (1) or low-frequency (2) curves instead")
    _add_out(p, "figure")
    _add_materials(p)

    for name, text in (("force", "pressure (Pa) and reduction factor"), ("eta", "reduction factor only")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--L-nm", type=_positive_float, required=True, metavar="NM", help="gap between bodies in nm")
        p.add_argument("--film-nm", type=_positive_float, required=True, metavar="NM", help="film thickness in nm")
        _add_materials(p)
        _add_quadrature(p)

    p = sub.add_parser("sweep-separation", help="eta against separation for tabulated films")
    p.add_argument("--film-nm", type=_positive_float, action="append", metavar="NM",
                   help="film thickness in nm (repeatable; default: all tabulated)")
    p.add_argument("--L-min-nm", type=_positive_float, default=100.0, metavar="NM", help="first separation in nm")
    p.add_argument("--L-max-nm", type=_positive_float, default=1000.0, metavar="NM", help="last separation in nm")
    p.add_argument("--points", type=_count, default=46, help="number of separations (linear grid)")
    _add_out(p, "sweep")
    _add_materials(p)
    _add_quadrature(p)

    p = sub.add_parser("sweep-thickness", help="eta against tabulated film thickness at fixed separation")
    p.add_argument("--L-nm", type=_positive_float, default=400.0, metavar="NM", help="gap in nm (default 400)")
    _add_out(p, "sweep")
    _add_materials(p)
    _add_quadrature(p)

    p = sub.add_parser("delta", help="percent optical-length difference, Drude and plasma vs Drude-Smith")
    p.add_argument("--film-nm", type=_positive_float, default=6.4, metavar="NM", help="tabulated film in nm")
    p.add_argument("--ck-w0", type=_positive_float, default=1.0, metavar="W0", help="c k / omega0 (default 1)")
    p.add_argument("--xi-min-w0", type=_positive_float, default=1e-4, metavar="W0", help="lowest xi in omega0 units")
    p.add_argument("--xi-max-w0", type=_positive_float, default=1e3, metavar="W0", help="highest xi in omega0 units")
    p.add_argument("--points", type=_count, default=200, help="log-spaced frequencies")
    _add_out(p, "delta")
    return parser


# -- validation --------------------------------------------------------------------

def _material(mats, name, flag):
    try:
        return mats[name]
    except KeyError:
        raise UsageError(f"{flag}: unknown material {name!r} (known: {', '.join(sorted(mats))})") from None


def _film_model(args, mats):
    if args.wp is not None or args.tau_fs is not None:
        if args.wp is None or args.tau_fs is None:
            raise UsageError("--wp and --tau-fs must be given together")
        try:
            return DrudeSmith.from_values(per_s_to_internal(args.wp), tau_fs_to_gamma(args.tau_fs), args.c1)
        except ValueError as exc:
            raise UsageError(f"--c1: {exc}") from None
    if args.film is not None:
        return _material(mats, args.film, "--film")
    try:
        return materials.film_record(args.film_nm).model()
    except RegistryError as exc:
        raise UsageError(f"--film-nm: {exc}") from None


def _check_out(out):
    if out is None:
        return None
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"--out: cannot create {out!r}: {exc.strerror}") from None
    if not os.access(path, os.W_OK):
        raise UsageError(f"--out: directory {out!r} is not writable")
    return path


def validate(args) -> RunConfig:
    mats = materials.default_materials()
    if getattr(args, "materials", None):
        try:
            mats = materials.load_materials(args.materials)
        except (OSError, ValueError) as exc:
            raise UsageError(f"--materials: {exc}") from None
    spec = None
    if hasattr(args, "rel_tol"):
        try:
            spec = QuadratureSpec(rel_tol=args.rel_tol, max_refinements=args.max_refinements)
        except ValueError as exc:
            raise UsageError(f"--rel-tol: {exc}") from None
    if hasattr(args, "half_space"):
        _material(mats, args.half_space, "--half-space")
        _material(mats, args.substrate, "--substrate")
    if args.command == "epsilon":
        if args.figure is None:
            if args.xi is None and args.xi_w0 is None:
                raise UsageError("--xi or --xi-w0 is required")
            if args.material is None and args.film_nm is None and args.wp is None:
                raise UsageError("--film-nm, --material or --wp/--tau-fs is required")
            if args.material is not None:
                _material(mats, args.material, "--material")
            else:
                _film_model(args, mats)
    if args.command in ("force", "eta"):
        _film_model(args, mats)
    if args.command == "sweep-separation":
        for d in args.film_nm or ():
            try:
                materials.film_record(d)
            except RegistryError as exc:
                raise UsageError(f"--film-nm: {exc}") from None
        if args.L_max_nm <= args.L_min_nm and args.points > 1:
            raise UsageError("--L-max-nm must exceed --L-min-nm")
    if args.command == "delta":
        try:
            materials.film_record(args.film_nm)
        except RegistryError as exc:
            raise UsageError(f"--film-nm: {exc}") from None
        if args.xi_max_w0 <= args.xi_min_w0:
            raise UsageError("--xi-max-w0 must exceed --xi-min-w0")
    out = _check_out(getattr(args, "out", None))
    return RunConfig(args.command, args, mats, spec, out)


# -- commands ----------------------------------------------------------------------

def _emit(curves, cfg, stdout):
    if cfg.out is None:
        for i, curve in enumerate(curves):
            if i:
                stdout.write("\n")
            stdout.write(curve.to_csv())
    else:
        for path in scenarios.write_curves(curves, cfg.out):
            stdout.write(f"wrote {path}\n")


def _stack(cfg):
    a = cfg.args
    return LayeredStack.from_nm(
        cfg.materials[a.half_space], _film_model(a, cfg.materials), a.film_nm, cfg.materials[a.substrate], a.L_nm
    )


def execute(cfg: RunConfig, stdout) -> int:
    a = cfg.args
    if cfg.command == "table1":
        stdout.write("d_nm,omega_p_1e15_per_s,tau_fs,c1,sigma_ratio\n")
        for r in materials.table1_registry():
            stdout.write(f"{r.thickness_nm:g},{r.omega_p_1e15:g},{r.tau_fs:g},{r.c1:g},{r.dc_ratio:g}\n")
    elif cfg.command == "epsilon":
        if a.figure == "1":
            _emit(scenarios.fig1_normalized_epsilon(), cfg, stdout)
        elif a.figure == "2":
            _emit(scenarios.fig2_low_freq_epsilon(), cfg, stdout)
        else:
            model = cfg.materials[a.material] if a.material else _film_model(a, cfg.materials)
            xi = a.xi_w0 if a.xi_w0 is not None else per_s_to_internal(a.xi)
            stdout.write(f"epsilon={float(epsilon_iw(model, xi))!r}\n")
    elif cfg.command in ("force", "eta"):
        res = casimir_force(_stack(cfg), cfg.spec)
        if cfg.command == "eta":
            stdout.write(f"eta={float(res.eta)!r}\n")
        else:
            stdout.write(
                f"pressure_pa={float(res.pressure)!r}\neta={float(res.eta)!r}\n"
                f"est_error_pa={float(res.est_error)!r}\nevaluations={res.evaluations}\n"
            )
    elif cfg.command == "sweep-separation":
        thick = tuple(a.film_nm) if a.film_nm else scenarios.TABLE1_THICKNESSES
        curves = scenarios.fig3_eta_vs_separation(
            thick, (a.L_min_nm, a.L_max_nm, a.points), cfg.spec,
            cfg.materials[a.half_space], cfg.materials[a.substrate], a.threads,
        )
        _emit(curves, cfg, stdout)
    elif cfg.command == "sweep-thickness":
        curve = scenarios.fig4_eta_vs_thickness(
            a.L_nm, scenarios.TABLE1_THICKNESSES, cfg.spec,
            cfg.materials[a.half_space], cfg.materials[a.substrate], a.threads,
        )
        _emit([curve], cfg, stdout)
    elif cfg.command == "delta":
        curves = scenarios.fig5_delta_percent(a.film_nm, (a.xi_min_w0, a.xi_max_w0, a.points), a.ck_w0)
        _emit(curves, cfg, stdout)
    return 0


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = validate(args)
    except UsageError as exc:
        stderr.write(f"casimir-film {args.command}: error: {exc}\n")
        return EXIT_USAGE
    try:
        return execute(cfg, stdout)
    except ConvergenceError as exc:
        r = exc.result
        stderr.write(f"error: {exc}\n")
        stdout.write(f"best_pressure_pa={float(r.pressure)!r}\nbest_eta={float(r.eta)!r}\n"
                     f"achieved_error_pa={float(r.est_error)!r}\n")
        return EXIT_CONVERGENCE
    except OSError as exc:
        stderr.write(f"casimir-film {args.command}: error: --out: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
