"""Generalized power series for the screening equation near the nucleus.

Near ``x = 0`` the equation ``w'' = x**(1 - 3/alpha) * w**(3/alpha)`` with
``w(0) = 1`` and ``w'(0+) ~ b`` has the formal solution

    w(x) = sum_{i,j,m} c[i, j, m] * b**j * x**(i*beta + j) * log(x)**m

with ``beta = 3 - 3/alpha``.  Index ``i`` counts nonlinear generations, ``j``
counts factors of the free linear coefficient ``b`` and ``m`` the power of
the logarithm.  Logarithms only appear when ``(i + 1)*beta + j == 1`` for some
generation, i.e. when a generated power collides with the free linear term
(``alpha = 3/2`` at the first generation, ``alpha = 6/5`` at the second, ...).
At such resonances the twice-integrated monomial ``x**-1`` becomes
``x*log(x) - x``, and ``b`` keeps its meaning as the coefficient of ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.signal import convolve

__all__ = ["ScreeningSeries", "screening_series"]

RESONANCE_TOL = 1e-9
MAX_GENERATIONS = 32


@dataclass(frozen=True)
class ScreeningSeries:
    """Coefficients ``coef[i, j, m]`` of the small-``x`` expansion (with ``b = 1``)."""

    alpha: float
    beta: float
    coef: np.ndarray
    exponent_max: float
    resonant: bool

    def __post_init__(self):
        i, j, m = np.nonzero(self.coef)
        object.__setattr__(self, "_terms", (i, j, m, self.coef[i, j, m]))

    def generation_size(self, b: float, x: float, generation: int | None = None) -> float:
        """Magnitude of the terms of one generation (default: the last kept) at ``x``."""
        i, j, m, c = self._terms
        g = int(i.max()) if generation is None else generation
        sel = i == g
        e = i[sel] * self.beta + j[sel]
        return float(abs(np.sum(c[sel] * float(b) ** j[sel] * x**e * np.log(x) ** m[sel])))

    def evaluate(self, b: float, x):
        """Return ``(w, w')`` at ``x > 0`` for linear coefficient ``b``."""
        x = np.asarray(x, dtype=float)
        i, j, m, c = self._terms
        e = i * self.beta + j
        scale = c * float(b) ** j
        xs = x[..., None]
        lx = np.log(xs)
        xe = xs**e
        lm = lx**m
        w = np.sum(scale * xe * lm, axis=-1)
        lm1 = np.where(m > 0, lx ** np.maximum(m - 1, 0), 0.0)
        dw = np.sum(scale * xe / xs * (e * lm + m * lm1), axis=-1)
        return w, dw


def _integrate_once(p: float, m: int) -> list[tuple[int, float]]:
    """Antiderivative of ``x**p log(x)**m`` as ``x**(p+1) * sum c_k log(x)**k``."""
    q = p + 1.0
    if abs(q) < RESONANCE_TOL:
        return [(m + 1, 1.0 / (m + 1))]
    out = []
    fall = 1.0
    for k in range(m + 1):
        out.append((m - k, (-1.0) ** k * fall / q ** (k + 1)))
        fall *= m - k
    return out


@lru_cache(maxsize=64)
def screening_series(alpha: float, exponent_max: float = 4.0) -> ScreeningSeries:
    """Build the truncated expansion, keeping terms with exponent <= ``exponent_max``."""
    alpha = float(alpha)
    beta = 3.0 - 3.0 / alpha
    q = 3.0 / alpha
    s = beta - 2.0
    if exponent_max / beta > MAX_GENERATIONS - 1:
        exponent_max = (MAX_GENERATIONS - 1) * beta
    n_i = int(math.floor(exponent_max / beta + 1e-12)) + 1
    n_j = int(math.floor(exponent_max + 1e-12)) + 1
    ii, jj = np.meshgrid(np.arange(n_i), np.arange(n_j), indexing="ij")
    expo = ii * beta + jj
    resonant_ij = np.abs((ii + 1) * beta + jj - 1.0) < RESONANCE_TOL
    resonant = bool(np.any(resonant_ij & (expo + beta <= exponent_max + 1e-12)))
    # a log factor first appears at generation round(1/beta); each further
    # power needs at least that many more generations
    n_m = n_i // max(1, int(round(1.0 / beta))) + 1 if resonant else 1
    keep = (expo <= exponent_max + 1e-12)[:, :, None] & np.ones(n_m, bool)

    def trunc(a):
        return np.where(keep, a[:n_i, :n_j, :n_m], 0.0)

    base = np.zeros((n_i, n_j, n_m))
    base[0, 0, 0] = 1.0
    if n_j > 1:
        base[0, 1, 0] = 1.0

    w = base.copy()
    for _ in range(n_i + 1):
        delta = w.copy()
        delta[0, 0, 0] = 0.0
        # w**q = sum_k binom(q, k) delta**k; every delta term has exponent > 0
        powq = np.zeros_like(w)
        powq[0, 0, 0] = 1.0
        dk = np.zeros_like(w)
        dk[0, 0, 0] = 1.0
        binom = 1.0
        min_e = min(beta, 1.0)
        for k in range(1, int(exponent_max / min_e) + 2):
            dk = trunc(convolve(dk, delta, method="direct"))
            if not dk.any():
                break
            binom *= (q - k + 1) / k
            powq += binom * dk
        # multiply by x**s and integrate twice: key (i, j) -> (i + 1, j)
        new = base.copy()
        for (i, j, m) in zip(*np.nonzero(powq)):
            if i + 1 >= n_i or expo[i + 1, j] > exponent_max + 1e-12:
                continue
            c = powq[i, j, m]
            p = i * beta + j + s
            for m1, c1 in _integrate_once(p, m):
                for m2, c2 in _integrate_once(p + 1.0, m1):
                    new[i + 1, j, m2] += c * c1 * c2
        if np.array_equal(new, w):
            break
        w = new
    return ScreeningSeries(alpha=alpha, beta=beta, coef=w, exponent_max=exponent_max, resonant=resonant)
