"""Neutral-atom density, potential and energy functionals from a screening solution.

With ``x = a*r`` the electrostatic potential is ``phi = Z e**2 w(x) / r`` and
the zero-chemical-potential closure gives ``rho = (phi / C)**(3/alpha)``.
Radial integrals are done with Simpson's rule in ``log(r)`` on the sampled
range; the pieces inside the first and beyond the last grid point are added
in closed form from the local power laws of ``rho``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from .constants import DerivedConstants, ModelParams, derive_constants
from .tfsolver import NotConvergedError, TFSolution, omega_eval

__all__ = [
    "RadialProfile",
    "EnergyReport",
    "build_profile",
    "uniform_ball",
    "scale_profile",
    "electron_count",
    "kinetic_functional",
    "nuclear_attraction",
    "hartree_energy",
    "energy_report",
    "DivergenceError",
]


class DivergenceError(ArithmeticError):
    """A radial integral does not converge at large ``r``."""


@dataclass(frozen=True)
class RadialProfile:
    """Spherical density and potential on a log-spaced radial grid.

    ``tail_exponents = (origin, tail)`` are the powers of ``r`` followed by
    ``rho`` below the first and above the last grid point; ``tail = None``
    means the density vanishes beyond the grid.
    """

    params: ModelParams
    r: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    tail_exponents: tuple[float, float | None]
    constants: DerivedConstants = field(repr=False, default=None)

    def __post_init__(self):
        if self.constants is None:
            object.__setattr__(self, "constants", derive_constants(self.params))
        if np.any(self.rho < 0):
            raise ValueError("density must be nonnegative")

    @property
    def x(self) -> np.ndarray:
        return self.r * self.constants.a_scale


@dataclass(frozen=True)
class EnergyReport:
    """Energy functionals of a profile and the residuals of the variational equations.

    ``origin_cutoff`` is set when an integrand is not integrable at the
    nucleus (``t_kin`` and ``v_ne`` for ``alpha <= 3/2``, ``j_hartree`` for
    ``alpha <= 6/5``); those integrals then start at the first grid point.
    """

    t_kin: float
    v_ne: float
    j_hartree: float
    e_total: float
    electrons: float
    residual_euler: float
    residual_virial: float
    origin_cutoff: bool = False

    def as_dict(self) -> dict:
        return {
            "t_kin": self.t_kin,
            "v_ne": self.v_ne,
            "j_hartree": self.j_hartree,
            "e_total": self.e_total,
            "electrons": self.electrons,
            "residual_euler": self.residual_euler,
            "residual_virial": self.residual_virial,
            "origin_cutoff": self.origin_cutoff,
        }


def build_profile(sol: TFSolution, p: ModelParams, n_grid: int = 400) -> RadialProfile:
    """Map a converged screening solution to ``rho(r)`` and ``phi(r)``."""
    if not sol.converged or sol.tail is None:
        raise NotConvergedError("build_profile needs a converged solution")
    if n_grid < 200:
        raise ValueError("n_grid must be at least 200")
    if abs(sol.alpha - p.alpha) > 1e-12:
        raise ValueError(f"solution alpha {sol.alpha} does not match params alpha {p.alpha}")
    k = derive_constants(p)
    x = np.geomspace(sol.handoff, sol.tail.x_match, n_grid)
    w, _ = omega_eval(sol, x)
    r = x / k.a_scale
    phi = p.z * p.e2 * w / r
    rho = (phi / k.c_big) ** (3.0 / p.alpha)
    tail = 3.0 * (sol.tail.a_exp - 1.0) / p.alpha
    return RadialProfile(p, r, rho, phi, (-3.0 / p.alpha, tail), k)


def uniform_ball(p: ModelParams, rho0: float, radius: float, n_grid: int = 400, r_min_frac: float = 1e-6) -> RadialProfile:
    """Constant density ``rho0`` inside a ball of the given radius."""
    r = np.geomspace(r_min_frac * radius, radius, n_grid)
    rho = np.full_like(r, float(rho0))
    return RadialProfile(p, r, rho, np.zeros_like(r), (0.0, None))


def scale_profile(prof: RadialProfile, lam: float) -> RadialProfile:
    """Density ``lam**3 rho(lam r)`` and potential ``lam phi(lam r)`` (particle number kept)."""
    return replace(prof, r=prof.r / lam, rho=prof.rho * lam**3, phi=prof.phi * lam)


def _radial(prof, power_r, power_rho):
    """``4 pi int r**power_r rho**power_rho dr`` over ``(0, inf)``.

    Returns ``(value, cut)``; ``cut`` is True if the origin piece diverges
    and was dropped.
    """
    r, rho = prof.r, prof.rho
    g = 4.0 * math.pi * r**power_r * rho**power_rho
    u = np.log(r)
    value = float(simpson(g * r, x=u))
    origin, tail = prof.tail_exponents
    p0 = power_r + power_rho * origin
    cut = p0 <= -1.0
    if not cut:
        value += g[0] * r[0] / (p0 + 1.0)
    if tail is not None:
        p1 = power_r + power_rho * tail
        if p1 >= -1.0:
            raise DivergenceError(f"integrand ~ r**{p1:.4g} is not integrable at large r")
        value += g[-1] * r[-1] / (-p1 - 1.0)
    return value, cut


def electron_count(prof: RadialProfile) -> float:
    """``4 pi int r**2 rho dr``."""
    return _radial(prof, 2.0, 1.0)[0]


def kinetic_functional(prof: RadialProfile) -> float:
    """``c_f * int rho**(1 + alpha/3) d3r``."""
    value, _ = _radial(prof, 2.0, 1.0 + prof.params.alpha / 3.0)
    return prof.constants.c_f * value


def nuclear_attraction(prof: RadialProfile) -> float:
    """``-Z e**2 int rho / r d3r``."""
    p = prof.params
    value, _ = _radial(prof, 1.0, 1.0)
    return -p.z * p.e2 * value


def hartree_energy(prof: RadialProfile) -> float:
    """Classical repulsion ``J = (e**2/2) int int rho rho' / |r - r'|``.

    For spherical densities ``J = e**2 int Q(r) rho(r) 4 pi r dr`` with
    ``Q(r)`` the charge inside radius ``r``.
    """
    return _hartree(prof)[0]


def _hartree(prof):
    r, rho = prof.r, prof.rho
    origin, tail = prof.tail_exponents
    u = np.log(r)
    q0 = 4.0 * math.pi * rho[0] * r[0] ** 3 / (3.0 + origin)
    q = q0 + cumulative_simpson(4.0 * math.pi * r**3 * rho, x=u, initial=0.0)
    integrand = q * 4.0 * math.pi * r * rho
    value = float(simpson(integrand * r, x=u))
    p0 = 4.0 + 2.0 * origin
    cut = p0 <= -1.0
    if not cut:
        value += q0 * 4.0 * math.pi * rho[0] * r[0] ** 2 / (p0 + 1.0)
    if tail is not None:
        if tail >= -3.0:
            raise DivergenceError("density tail does not hold a finite charge")
        rn, rhon = r[-1], rho[-1]
        q_out = 4.0 * math.pi * rhon * rn**3 / (-tail - 3.0)
        i1 = 4.0 * math.pi * rhon * rn**2 / (-tail - 2.0)
        i2 = q_out * 4.0 * math.pi * rhon * rn**2 / (-2.0 * tail - 5.0)
        value += (q[-1] + q_out) * i1 - i2
    return prof.params.e2 * value, cut


def energy_report(prof: RadialProfile) -> EnergyReport:
    """Energies, electron count and the two variational residuals of a profile.

    ``residual_euler`` is the largest relative mismatch of the closure
    ``c_big * rho**(alpha/3) = phi`` over interior grid points.
    ``residual_virial`` is ``|(c_big/c_f) T + V_ne + 2J| / T``, the integral
    of the closure against ``rho``; it vanishes for an exact solution.
    """
    p = prof.params
    k = prof.constants
    gamma = 1.0 + p.alpha / 3.0
    t_val, t_cut = _radial(prof, 2.0, gamma)
    t_kin = k.c_f * t_val
    v_val, v_cut = _radial(prof, 1.0, 1.0)
    v_ne = -p.z * p.e2 * v_val
    j, j_cut = _hartree(prof)
    n = _radial(prof, 2.0, 1.0)[0]
    interior = slice(1, -1)
    phi = prof.phi[interior]
    euler = np.abs(k.c_big * prof.rho[interior] ** (p.alpha / 3.0) - phi) / np.abs(phi)
    # multiply the closure by rho and integrate: (c_big/c_f) T = -V_ne - 2J
    virial = abs(k.c_big / k.c_f * t_kin + v_ne + 2.0 * j) / abs(t_kin)
    return EnergyReport(
        t_kin=float(t_kin),
        v_ne=float(v_ne),
        j_hartree=float(j),
        e_total=float(t_kin + v_ne + j),
        electrons=float(n),
        residual_euler=float(np.max(euler)) if euler.size else 0.0,
        residual_virial=float(virial),
        origin_cutoff=bool(t_cut or v_cut or j_cut),
    )
