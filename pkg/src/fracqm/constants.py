"""Model parameters and closed-form constants for Levy-kinetics Thomas-Fermi theory.

Two unit modes are supported.  In *natural* mode ``hbar = e = 1`` and
``d_alpha = 1/2`` so that ``alpha = 2`` reduces to atomic units.  In
*physical* mode every scale is supplied by the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "ModelParams",
    "DerivedConstants",
    "derive_constants",
    "tail_exponent",
    "tail_coefficient",
]


CLOSURES = ("printed", "variational")


class DomainError(ValueError):
    """A parameter lies outside the range where the model is defined."""


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (1.0 < alpha <= 2.0) or not math.isfinite(alpha):
        raise DomainError(f"alpha must satisfy 1 < alpha <= 2, got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the fractional many-electron problem.

    Parameters
    ----------
    alpha : float
        Levy index, ``1 < alpha <= 2``.
    d_alpha : float
        Coefficient of the kinetic operator; the single-particle spectrum is
        ``d_alpha * hbar**alpha * |k|**alpha``.
    hbar : float
        Action scale.
    e_charge : float
        Elementary charge scale (energies carry ``e_charge**2``).
    z : float
        Nuclear charge.
    closure : {"printed", "variational"}
        Coefficient linking density and potential in the neutral atom,
        ``c_big = c_f * k`` with ``k = (alpha + 3)/alpha`` ("printed", the
        default) or ``k = (alpha + 3)/3`` ("variational", the value obtained
        by differentiating the kinetic functional).  Both agree at ``alpha = 3``
        only; at ``alpha = 2`` the second reproduces the classical atom.
    """

    alpha: float
    d_alpha: float = 0.5
    hbar: float = 1.0
    e_charge: float = 1.0
    z: float = 1.0
    closure: str = "printed"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        if self.closure not in CLOSURES:
            raise DomainError(f"closure must be one of {sorted(CLOSURES)}, got {self.closure!r}")
        for name in ("d_alpha", "hbar", "e_charge", "z"):
            value = float(getattr(self, name))
            if not (value > 0.0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def natural(cls, alpha: float, z: float = 1.0, d_alpha: float = 0.5, closure: str = "printed") -> "ModelParams":
        """Natural units: ``hbar = e = 1``."""
        return cls(alpha=alpha, d_alpha=d_alpha, hbar=1.0, e_charge=1.0, z=z, closure=closure)

    @property
    def kinetic_scale(self) -> float:
        """``d_alpha * hbar**alpha``, the prefactor of ``|k|**alpha``."""
        return self.d_alpha * self.hbar**self.alpha

    @property
    def e2(self) -> float:
        return self.e_charge**2


@dataclass(frozen=True)
class DerivedConstants:
    """Constants shared by the Thomas-Fermi solver and the atom profile.

    Attributes
    ----------
    c_f : float
        Prefactor of the kinetic functional ``T = c_f * int rho**(1 + alpha/3)``.
    c_big : float
        ``c_f * (alpha + 3) / alpha`` (or ``/ 3``, see ``ModelParams.closure``);
        the neutral-atom closure is ``rho = (phi / c_big)**(3/alpha)``.
    m_big : float
        Coefficient of the radial screening equation before rescaling.
    a_scale : float
        Length scale with ``x = a_scale * r``.
    a_exp, b_coef : float
        Exponent and amplitude of the exact power-law solution
        ``omega = b_coef * x**a_exp``.
    """

    c_f: float
    c_big: float
    m_big: float
    a_scale: float
    a_exp: float
    b_coef: float


def tail_exponent(alpha: float) -> float:
    """Exponent ``3(alpha-1)/(alpha-3)`` of the power-law screening solution."""
    alpha = _check_alpha(alpha)
    return 3.0 * (alpha - 1.0) / (alpha - 3.0)


def tail_coefficient(alpha: float) -> float:
    """Amplitude ``[A(A-1)]**(alpha/(3-alpha))`` of the power-law solution."""
    a = tail_exponent(alpha)
    return (a * (a - 1.0)) ** (alpha / (3.0 - alpha))


def derive_constants(p: ModelParams) -> DerivedConstants:
    alpha = p.alpha
    c_f = 3.0 / (alpha + 3.0) * p.kinetic_scale * (3.0 * math.pi**2) ** (alpha / 3.0)
    c_big = c_f * (alpha + 3.0) / (alpha if p.closure == "printed" else 3.0)
    m_big = (
        4.0
        * math.pi
        * c_big ** (-3.0 / alpha)
        * p.z ** (3.0 / alpha - 1.0)
        * p.e_charge ** (6.0 / alpha)
    )
    a_scale = m_big ** (alpha / (3.0 * (alpha - 1.0)))
    return DerivedConstants(
        c_f=c_f,
        c_big=c_big,
        m_big=m_big,
        a_scale=a_scale,
        a_exp=tail_exponent(alpha),
        b_coef=tail_coefficient(alpha),
    )
