"""Fractional free-electron gas in a cubic box.

Single-particle levels are ``E(n) = d_alpha * (pi*hbar/L)**alpha * R**alpha``
with ``R = |n|`` and positive integer quantum numbers; each level holds two
electrons.  Exact counts are taken from the number of representations of
every integer ``s`` as a sum of three positive squares, obtained by
convolving the indicator of the squares with itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np
from scipy.signal import fftconvolve

from .constants import DomainError, ModelParams

__all__ = [
    "R_MAX_LIMIT",
    "BoxSpec",
    "CountReport",
    "EosPoint",
    "level_energy",
    "shell_counts",
    "enumerate_states",
    "fermi_energy",
    "pressure",
    "eos_table",
    "lowest_levels_energy",
    "fd_pressure",
    "isochore_slope",
]

R_MAX_LIMIT = 2000.0
# relative slack so that levels lying exactly on E_f are counted
_TIE = 1e-12


@dataclass(frozen=True)
class BoxSpec:
    """Cubic box of side ``box_l`` filled up to the Fermi energy ``e_f``."""

    params: ModelParams
    box_l: float
    e_f: float

    def __post_init__(self):
        if not self.box_l > 0:
            raise DomainError(f"box_l must be positive, got {self.box_l!r}")
        if not self.e_f > 0:
            raise DomainError(f"e_f must be positive, got {self.e_f!r}")

    @property
    def unit(self) -> float:
        """Energy of ``R = 1``: ``d_alpha * (pi*hbar/L)**alpha``."""
        return self.params.kinetic_scale * (math.pi / self.box_l) ** self.params.alpha

    @property
    def r_max(self) -> float:
        """Radius of the Fermi sphere in quantum-number space."""
        return (self.e_f / self.unit) ** (1.0 / self.params.alpha)


@dataclass(frozen=True)
class CountReport:
    """Exact and continuum particle number and energy below ``e_f``."""

    n_exact: int
    u_exact: float
    n_cont: float
    u_cont: float

    @property
    def rel_err_n(self) -> float:
        return (self.n_exact - self.n_cont) / self.n_cont

    @property
    def rel_err_u(self) -> float:
        return (self.u_exact - self.u_cont) / self.u_cont


@dataclass(frozen=True)
class EosPoint:
    rho: float
    e_f: float
    pressure: float
    u_density: float


def level_energy(p: ModelParams, box_l: float, n_triple) -> float:
    """Energy of the box level with quantum numbers ``(nx, ny, nz)``, each >= 1."""
    n = tuple(n_triple)
    if len(n) != 3 or not all(isinstance(k, Integral) and k >= 1 for k in n):
        raise DomainError(f"quantum numbers must be three integers >= 1, got {n_triple!r}")
    r2 = sum(int(k) * int(k) for k in n)
    return p.kinetic_scale * (math.pi / box_l) ** p.alpha * r2 ** (p.alpha / 2.0)


def shell_counts(s_max: int) -> np.ndarray:
    """``r3[s]``: number of positive triples with ``nx**2 + ny**2 + nz**2 = s``, for ``s <= s_max``."""
    s_max = int(s_max)
    sq = np.zeros(s_max + 1)
    k = np.arange(1, math.isqrt(s_max) + 1)
    sq[k * k] = 1.0
    two = np.rint(fftconvolve(sq, sq)[: s_max + 1])
    three = np.rint(fftconvolve(two, sq)[: s_max + 1])
    return three.astype(np.int64)


def enumerate_states(spec: BoxSpec) -> CountReport:
    """Count occupied spin-orbitals and their energy, exactly and in the continuum limit."""
    r_max = spec.r_max
    if r_max > R_MAX_LIMIT:
        raise DomainError(
            f"R_max = {r_max:.6g} exceeds {R_MAX_LIMIT:g}; lower e_f or box_l"
        )
    alpha = spec.params.alpha
    s_max = int(math.floor(r_max * r_max * (1.0 + _TIE)))
    r3 = shell_counts(max(s_max, 0))
    s = np.arange(r3.size, dtype=float)
    n_exact = 2 * int(r3.sum())
    u_exact = 2.0 * spec.unit * float(np.dot(r3, s ** (alpha / 2.0)))
    n_cont = math.pi / 3.0 * r_max**3
    u_cont = 3.0 / (alpha + 3.0) * n_cont * spec.e_f
    return CountReport(n_exact=n_exact, u_exact=u_exact, n_cont=n_cont, u_cont=u_cont)


def fermi_energy(p: ModelParams, rho: float) -> float:
    """``E_f = d_alpha * hbar**alpha * (3 pi**2 rho)**(alpha/3)``."""
    if not rho > 0:
        raise DomainError(f"density must be positive, got {rho!r}")
    return p.kinetic_scale * (3.0 * math.pi**2 * rho) ** (p.alpha / 3.0)


def pressure(p: ModelParams, rho: float) -> EosPoint:
    """Degeneracy pressure ``alpha/(alpha+3) (3 pi**2)**(alpha/3) d_alpha hbar**alpha rho**(alpha/3+1)``."""
    e_f = fermi_energy(p, rho)
    a = p.alpha
    pr = a / (a + 3.0) * (3.0 * math.pi**2) ** (a / 3.0) * p.kinetic_scale * rho ** (a / 3.0 + 1.0)
    return EosPoint(rho=float(rho), e_f=e_f, pressure=pr, u_density=3.0 / (a + 3.0) * rho * e_f)


def eos_table(p: ModelParams, rho_min: float, rho_max: float, points: int) -> list[EosPoint]:
    """Equation of state on ``points`` log-spaced densities."""
    if points < 1:
        raise DomainError("points must be at least 1")
    if not 0 < rho_min <= rho_max:
        raise DomainError("need 0 < rho_min <= rho_max")
    return [pressure(p, float(r)) for r in np.geomspace(rho_min, rho_max, points)]


def lowest_levels_energy(p: ModelParams, box_l: float, n_particles: int) -> tuple[float, float]:
    """Energy of ``n_particles`` electrons in the lowest box levels, and the highest occupied level."""
    if n_particles < 1:
        raise DomainError("n_particles must be at least 1")
    r = (3.0 * n_particles / math.pi) ** (1.0 / 3.0)
    while True:
        s_max = int((r + 4.0) ** 2)
        cum = 2 * np.cumsum(shell_counts(s_max))
        if cum[-1] >= n_particles:
            break
        r *= 1.5
    s_top = int(np.searchsorted(cum, n_particles))
    s = np.arange(s_top + 1, dtype=float)
    occ = 2 * shell_counts(s_top)
    occ[s_top] -= cum[s_top] - n_particles
    unit = p.kinetic_scale * (math.pi / box_l) ** p.alpha
    return unit * float(np.dot(occ, s ** (p.alpha / 2.0))), unit * s_top ** (p.alpha / 2.0)


def fd_pressure(p: ModelParams, n_particles: int, volume: float, rel_step: float = 0.02) -> tuple[float, float]:
    """Pressure ``-dU/dV`` at fixed particle number from exact level filling.

    Returns ``(p_fd, rho_mid)``: the secant over ``[V, (1 + rel_step) V]`` and
    the density at the midpoint volume, where the secant is second-order
    accurate.
    """
    v1, v2 = volume, volume * (1.0 + rel_step)
    u1 = lowest_levels_energy(p, v1 ** (1.0 / 3.0), n_particles)[0]
    u2 = lowest_levels_energy(p, v2 ** (1.0 / 3.0), n_particles)[0]
    return -(u2 - u1) / (v2 - v1), n_particles / (0.5 * (v1 + v2))


def isochore_slope(p: ModelParams, n_particles: int, box_l: float, rel_step: float = 0.02) -> float:
    """``dU/dE_f`` at fixed ``N`` from exact filling, for comparison with ``3N/(alpha+3)``.

    Both ``U`` and ``E_f`` are changed by rescaling the box; the Fermi
    energy is the continuum value for density ``N/L**3``.
    """
    l1, l2 = box_l, box_l * (1.0 + rel_step)
    u1 = lowest_levels_energy(p, l1, n_particles)[0]
    u2 = lowest_levels_energy(p, l2, n_particles)[0]
    e1 = fermi_energy(p, n_particles / l1**3)
    e2 = fermi_energy(p, n_particles / l2**3)
    return (u2 - u1) / (e2 - e1)
