import math

import numpy as np
import pytest

from fracqm.constants import (
    DomainError,
    ModelParams,
    derive_constants,
    tail_coefficient,
    tail_exponent,
)


def test_c_f_classical_value():
    k = derive_constants(ModelParams.natural(2.0))
    assert k.c_f == pytest.approx(0.3 * (3 * math.pi**2) ** (2 / 3), rel=1e-15)
    assert abs(k.c_f - 2.871) < 1e-3


@pytest.mark.parametrize("alpha, a_exp, b_coef", [(2.0, -3.0, 144.0), (1.5, -1.0, 2.0)])
def test_tail_constants(alpha, a_exp, b_coef):
    k = derive_constants(ModelParams.natural(alpha))
    assert k.a_exp == pytest.approx(a_exp, abs=1e-15)
    assert k.b_coef == pytest.approx(b_coef, rel=1e-14)


@pytest.mark.parametrize("alpha", np.linspace(1.05, 2.0, 12))
def test_power_solution_residual(alpha):
    a, b = tail_exponent(alpha), tail_coefficient(alpha)
    assert a < 0 and b > 0
    for x in (1.0, 10.0, 100.0):
        lhs = b * a * (a - 1) * x ** (a - 2)
        rhs = x ** (1 - 3 / alpha) * (b * x**a) ** (3 / alpha)
        assert abs(lhs - rhs) / abs(rhs) < 1e-12


def test_c_f_increases_smoothly_with_alpha():
    alphas = np.linspace(1.01, 2.0, 100)
    c = np.array([derive_constants(ModelParams.natural(a)).c_f for a in alphas])
    assert np.all(c > 0)
    assert np.all(np.diff(c) > 0)
    assert np.max(np.abs(np.diff(c))) < 0.05


@pytest.mark.parametrize("alpha", [1.0, 0.5, 2.0001, 3.0, float("nan")])
def test_alpha_outside_domain_rejected(alpha):
    with pytest.raises(DomainError):
        ModelParams.natural(alpha)


@pytest.mark.parametrize("field", ["d_alpha", "hbar", "e_charge", "z"])
def test_nonpositive_scales_rejected(field):
    with pytest.raises(DomainError):
        ModelParams(alpha=2.0, **{field: 0.0})


def test_closure_options():
    printed = derive_constants(ModelParams.natural(1.5))
    varied = derive_constants(ModelParams.natural(1.5, closure="variational"))
    assert printed.c_big == pytest.approx(printed.c_f * 4.5 / 1.5)
    assert varied.c_big == pytest.approx(varied.c_f * 4.5 / 3.0)
    with pytest.raises(DomainError):
        ModelParams.natural(1.5, closure="other")


def test_length_scale_z_dependence():
    # a ~ Z**((3 - alpha) / (3 (alpha - 1))); Z**(1/3) at alpha = 2
    for alpha in (1.2, 1.5, 2.0):
        a1 = derive_constants(ModelParams.natural(alpha, z=1.0)).a_scale
        a8 = derive_constants(ModelParams.natural(alpha, z=8.0)).a_scale
        assert a8 / a1 == pytest.approx(8.0 ** ((3 - alpha) / (3 * (alpha - 1))), rel=1e-12)


def test_physical_mode_units():
    # doubling hbar multiplies the kinetic prefactor by 2**alpha
    p1 = ModelParams(alpha=1.7, d_alpha=0.3, hbar=1.0, e_charge=1.0)
    p2 = ModelParams(alpha=1.7, d_alpha=0.3, hbar=2.0, e_charge=1.0)
    assert derive_constants(p2).c_f / derive_constants(p1).c_f == pytest.approx(2.0**1.7)
