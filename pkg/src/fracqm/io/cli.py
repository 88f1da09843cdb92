"""``fracqm`` command line.

Every subcommand reads its settings from, in increasing priority, the
built-in defaults, an optional ``--config`` file of ``key = value`` lines
and the command-line flags.  Exit status is 0 on success, 1 when a
validation check fails, 2 on a usage or domain error and 3 when the
numerics fail to converge; errors print a single ``error:`` line.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .. import validation
from ..constants import CLOSURES, DomainError, ModelParams
from ..fermigas import BoxSpec, enumerate_states, eos_table
from ..profile import build_profile, energy_report
from ..tfsolver import BracketError, IntegrationError, NotConvergedError, OdeConfig, shoot
from .csvio import emit_csv
from .svg import emit_fig1_svg

__all__ = ["RunConfig", "UsageError", "parse_config", "main"]

MODES = ("solve", "profile", "energy", "count", "eos", "validate-eos", "dm-check", "validate-all")
OUTPUT_DIR_ENV = "FRACQM_OUTPUT_DIR"


class UsageError(Exception):
    """Bad flag, config key or value; reported with exit status 2."""


@dataclass
class RunConfig:
    mode: str
    alpha: list[float] = field(default_factory=lambda: [2.0])
    z: float = 1.0
    d_alpha: float = 0.5
    hbar: float = 1.0
    e_charge: float = 1.0
    closure: str = "printed"
    x_start: float = 1e-6
    x_max: float = 400.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    slope_bracket: tuple[float, float] | None = None
    max_bisect: int = 200
    n_grid: int = 400
    box_l: float = math.pi
    e_f: float = 5000.0
    rho_min: float = 0.01
    rho_max: float = 100.0
    points: int = 20
    csv: str | None = None
    svg: str | None = None

    def params(self, alpha: float) -> ModelParams:
        return ModelParams(alpha, self.d_alpha, self.hbar, self.e_charge, self.z, self.closure)

    def ode(self) -> OdeConfig:
        return OdeConfig(
            x_start=self.x_start,
            x_max=self.x_max,
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            slope_bracket=self.slope_bracket,
            max_bisect=self.max_bisect,
        )


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(",", " ").split()]


def _bracket(text: str) -> tuple[float, float]:
    v = _floats(text)
    if len(v) != 2:
        raise ValueError("expected two numbers")
    return v[0], v[1]


def _closure(text: str) -> str:
    if text not in CLOSURES:
        raise ValueError(f"expected one of {', '.join(CLOSURES)}")
    return text


# config key -> parser for its value in a file
KEYS = {
    "alpha": _floats,
    "z": float,
    "d_alpha": float,
    "hbar": float,
    "e_charge": float,
    "closure": _closure,
    "x_start": float,
    "x_max": float,
    "rel_tol": float,
    "abs_tol": float,
    "slope_bracket": _bracket,
    "max_bisect": int,
    "n_grid": int,
    "box_l": float,
    "e_f": float,
    "rho_min": float,
    "rho_max": float,
    "points": int,
    "csv": str,
    "svg": str,
}


def read_config_file(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise UsageError(f"unknown config key '{key}'")
        if key in out:
            raise UsageError(f"config key '{key}' given twice")
        try:
            out[key] = KEYS[key](value)
        except ValueError as exc:
            raise UsageError(f"bad value for config key '{key}': {value!r} ({exc})") from None
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _physics_flags(p):
    p.add_argument("--z", type=float, help="nuclear charge (default 1)")
    p.add_argument("--d-alpha", dest="d_alpha", type=float, help="kinetic coefficient (default 0.5)")
    p.add_argument("--hbar", type=float, help="action scale (default 1)")
    p.add_argument("--e-charge", dest="e_charge", type=float, help="charge scale (default 1)")


def _ode_flags(p):
    p.add_argument("--closure", choices=CLOSURES, help="density-potential closure (default printed)")
    p.add_argument("--x-start", dest="x_start", type=float, help="series handoff bound (default 1e-6)")
    p.add_argument("--x-max", dest="x_max", type=float, help="integration horizon (default 400)")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, help="integrator relative tolerance (default 1e-10)")
    p.add_argument("--abs-tol", dest="abs_tol", type=float, help="integrator absolute tolerance (default 1e-12)")
    p.add_argument("--slope-bracket", dest="slope_bracket", type=float, nargs=2, metavar=("LO", "HI"),
                   help="initial bracket for the slope parameter (default: searched)")
    p.add_argument("--max-bisect", dest="max_bisect", type=int, help="bisection cap (default 200)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracqm", description="Fractional Thomas-Fermi atom, fractional Fermi gas and density-matrix checks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--config", help="file of 'key = value' lines (flags take precedence)")

    s = sub.add_parser("solve", parents=[common], help="solve the screening equation")
    s.add_argument("--alpha", type=float, action="append", help="Levy index; repeat to overlay curves (default 2)")
    _ode_flags(s)
    s.add_argument("--csv", help="write x,omega,omega_prime (one file per alpha when repeated)")
    s.add_argument("--svg", help="write the omega(x) plot for 0 <= x <= 10")

    for name, what in (("profile", "write r,rho,phi"), ("energy", "write the energy report")):
        p = sub.add_parser(name, parents=[common], help=f"neutral-atom {name}")
        p.add_argument("--alpha", type=float, action="append", help="Levy index (default 2)")
        _physics_flags(p)
        _ode_flags(p)
        p.add_argument("--n-grid", dest="n_grid", type=int, help="radial grid points (default 400)")
        p.add_argument("--csv", help=what)

    c = sub.add_parser("count", parents=[common], help="count box states below the Fermi energy")
    c.add_argument("--alpha", type=float, action="append", help="Levy index (default 2)")
    c.add_argument("--box-l", dest="box_l", type=float, help="box side (default pi)")
    c.add_argument("--e-f", dest="e_f", type=float, help="Fermi energy (default 5000)")
    _physics_flags(c)
    c.add_argument("--csv", help="write the count report")

    e = sub.add_parser("eos", parents=[common], help="degeneracy-pressure equation of state")
    e.add_argument("--alpha", type=float, action="append", help="Levy index (default 2)")
    e.add_argument("--rho-min", dest="rho_min", type=float, help="lowest density (default 0.01)")
    e.add_argument("--rho-max", dest="rho_max", type=float, help="highest density (default 100)")
    e.add_argument("--points", type=int, help="log-spaced densities (default 20)")
    _physics_flags(e)
    e.add_argument("--csv", help="write rho,e_f,pressure,u_density")

    for name, what in (
        ("validate-eos", "compare the pressure law with exact level filling"),
        ("dm-check", "run the density-matrix identity suite"),
        ("validate-all", "run every acceptance check"),
    ):
        sub.add_parser(name, parents=[common], help=what)
    return parser


def parse_config(argv, config_text: str | None = None) -> RunConfig:
    """Merge defaults, config file and flags into a :class:`RunConfig`.

    ``config_text`` replaces reading the file named by ``--config``.
    """
    ns = build_parser().parse_args(argv)
    file_values = {}
    if config_text is None and ns.config:
        try:
            config_text = Path(ns.config).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read config file {ns.config}: {exc.strerror}") from None
    if config_text is not None:
        file_values = read_config_file(config_text)
    cfg = RunConfig(mode=ns.mode)
    names = {f.name for f in dataclasses.fields(RunConfig)} - {"mode"}
    for key in names:
        flag = getattr(ns, key, None)
        if flag is not None:
            value = tuple(flag) if key == "slope_bracket" else flag
        elif key in file_values:
            value = file_values[key]
        else:
            continue
        setattr(cfg, key, value)
    if cfg.mode in ("profile", "energy", "count", "eos") and len(cfg.alpha) != 1:
        raise UsageError(f"{cfg.mode} takes a single alpha, got {len(cfg.alpha)}")
    if cfg.csv is not None and cfg.csv == cfg.svg:
        raise UsageError("csv and svg outputs name the same file")
    for a in cfg.alpha:
        if not 1.0 < a <= 2.0:
            raise UsageError(f"alpha must satisfy 1 < alpha <= 2, got {a:g}")
    return cfg


def _out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _per_alpha(path: str, alpha: float, many: bool) -> Path:
    p = _out(path)
    return p.with_name(f"{p.stem}_alpha{alpha:g}{p.suffix}") if many else p


def _print_kv(pairs):
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        print(f"{k:<{width}} = {v}")


def _solve(cfg):
    sols = [shoot(a, cfg.ode()) for a in cfg.alpha]
    many = len(sols) > 1
    for s in sols:
        _print_kv([
            ("alpha", f"{s.alpha:g}"),
            ("b_shoot", repr(s.b_shoot)),
            ("x_match", repr(s.tail.x_match)),
            ("tail_exponent", repr(s.tail.a_exp)),
            ("b_fit", repr(s.tail.b_fit)),
            ("b_exact", repr(s.tail.b_exact)),
            ("b_fit_over_b_exact", repr(s.tail.amplitude_ratio)),
        ])
        if cfg.csv:
            emit_csv(("x", "omega", "omega_prime"), zip(s.x, s.omega, s.omega_prime), _per_alpha(cfg.csv, s.alpha, many))
    if cfg.svg:
        emit_fig1_svg(sols, _out(cfg.svg))
    return 0


def _atom(cfg):
    a = cfg.alpha[0]
    sol = shoot(a, cfg.ode())
    return build_profile(sol, cfg.params(a), cfg.n_grid)


def _profile(cfg):
    prof = _atom(cfg)
    rep = energy_report(prof)
    _print_kv([("alpha", f"{prof.params.alpha:g}"), ("z", f"{prof.params.z:g}"), ("points", prof.r.size),
               ("r_min", repr(float(prof.r[0]))), ("r_max", repr(float(prof.r[-1]))), ("electrons", repr(rep.electrons))])
    if cfg.csv:
        emit_csv(("r", "rho", "phi"), zip(prof.r, prof.rho, prof.phi), _out(cfg.csv))
    return 0


def _energy(cfg):
    rep = energy_report(_atom(cfg)).as_dict()
    _print_kv([(k, repr(v)) for k, v in rep.items()])
    if cfg.csv:
        emit_csv(list(rep), [list(rep.values())], _out(cfg.csv))
    return 0


def _count(cfg):
    a = cfg.alpha[0]
    rep = enumerate_states(BoxSpec(cfg.params(a), cfg.box_l, cfg.e_f))
    row = {
        "n_exact": rep.n_exact,
        "u_exact": rep.u_exact,
        "n_cont": rep.n_cont,
        "u_cont": rep.u_cont,
        "rel_err_n": rep.rel_err_n,
        "rel_err_u": rep.rel_err_u,
    }
    _print_kv([(k, repr(v)) for k, v in row.items()])
    if cfg.csv:
        emit_csv(list(row), [list(row.values())], _out(cfg.csv))
    return 0


def _eos(cfg):
    pts = eos_table(cfg.params(cfg.alpha[0]), cfg.rho_min, cfg.rho_max, cfg.points)
    header = ("rho", "e_f", "pressure", "u_density")
    print(",".join(header))
    rows = [(q.rho, q.e_f, q.pressure, q.u_density) for q in pts]
    for r in rows:
        print(",".join(f"{v:.10g}" for v in r))
    if cfg.csv:
        emit_csv(header, rows, _out(cfg.csv))
    return 0


def _table(rows):
    print(validation.format_table(rows))
    return 0 if all(r.passed for r in rows) else 1


HANDLERS = {
    "solve": _solve,
    "profile": _profile,
    "energy": _energy,
    "count": _count,
    "eos": _eos,
    "validate-eos": lambda cfg: _table(validation.run_criterion(8)),
    "dm-check": lambda cfg: _table(validation.run_criterion(9)),
    "validate-all": lambda cfg: _table(validation.run_all()),
}


def _fail(code: int, message: str) -> int:
    print(f"error: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def main(argv=None, config_text: str | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv, config_text)
    except UsageError as exc:
        return _fail(2, exc)
    logging.basicConfig(level=logging.DEBUG if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return HANDLERS[cfg.mode](cfg)
    except (DomainError, ValueError) as exc:
        return _fail(2, exc)
    except OSError as exc:
        return _fail(2, f"cannot write {exc.filename}: {exc.strerror}")
    except (BracketError, NotConvergedError, IntegrationError) as exc:
        return _fail(3, exc)


if __name__ == "__main__":
    sys.exit(main())
