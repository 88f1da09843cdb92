import math

import numpy as np
import pytest

from fracqm.oracles import oracle_start
from fracqm.series import screening_series
from fracqm.tfsolver import rhs, series_start


def test_classical_leading_terms():
    x = 1e-4
    w, dw = series_start(2.0, 0.0, x)
    assert w == pytest.approx(1.0 + 4.0 / 3.0 * x**1.5, abs=1e-10)
    assert dw == pytest.approx(2.0 * x**0.5, rel=1e-5)


@pytest.mark.parametrize("alpha", [1.1, 1.3, 1.7, 2.0])
def test_origin_limit(alpha):
    # the leading correction is x**(3 - 3/alpha), slow for alpha near 1
    w, _ = series_start(alpha, -3.0, 1e-60)
    assert w == pytest.approx(1.0, abs=1e-12)


def test_resonant_log_form():
    ser = screening_series(1.5)
    assert ser.resonant
    x, b = 1e-8, 0.7
    w, dw = series_start(1.5, b, x)
    # next terms are O(x**2 log(x)**2) in w and O(x log(x)**2) in w'
    assert w == pytest.approx(1 + b * x + x * math.log(x) - x, abs=1e-13)
    assert dw == pytest.approx(b + math.log(x), abs=1e-4)


def test_slope_diverges_below_three_halves():
    d1 = series_start(1.2, -1.0, 1e-6)[1]
    d2 = series_start(1.2, -1.0, 1e-9)[1]
    assert d2 < d1 < -1.0


@pytest.mark.parametrize("alpha, b", [(1.1, 21594.0), (1.3, -20.0), (1.7, -3.4), (2.0, -1.588)])
def test_matches_independent_start(alpha, b):
    # the reference start is linear in b, so it is only exact where b*x is tiny
    for x in (1e-12, 1e-10):
        w, dw = series_start(alpha, b, x)
        wo, dwo = oracle_start(alpha, b, x)
        assert w == pytest.approx(wo, rel=1e-13, abs=1e-13)
        assert dw == pytest.approx(dwo, rel=1e-9)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 2.0])
def test_series_satisfies_ode(alpha):
    # second derivative by central differences of the analytic slope
    b = 0.3
    x = np.array([1e-5, 1e-4])
    h = 1e-3 * x
    d2 = (series_start(alpha, b, x + h)[1] - series_start(alpha, b, x - h)[1]) / (2 * h)
    w = series_start(alpha, b, x)[0]
    assert np.allclose(d2, rhs(alpha, x, w), rtol=1e-5)


def test_generation_sizes_shrink():
    ser = screening_series(2.0)
    assert ser.generation_size(-1.6, 1e-6) < ser.generation_size(-1.6, 1e-3)
