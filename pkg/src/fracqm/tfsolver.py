"""Shooting solver for the generalized Thomas-Fermi screening equation.

The dimensionless screening function of a neutral atom obeys

    w''(x) = x**(1 - 3/alpha) * w(x)**(3/alpha),   w(0) = 1,   w(inf) = 0.

Trajectories are started from the small-``x`` series of :mod:`fracqm.series`
and integrated in ``t = log(x)`` with an adaptive Dormand-Prince 8(5,3)
scheme.  The free linear coefficient ``b`` of the series is found by
bisection between trajectories that cross zero (overshoot) and trajectories
that turn upward (undershoot).  Beyond the last reliable sample the solution
is continued by the power law ``B_fit * x**A``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import BPoly

from .constants import DomainError, tail_coefficient, tail_exponent
from .series import screening_series

__all__ = [
    "OdeConfig",
    "TailFit",
    "TFSolution",
    "IntegrationError",
    "BracketError",
    "NotConvergedError",
    "series_start",
    "integrate",
    "shoot",
    "omega_eval",
    "rhs",
]

log = logging.getLogger(__name__)

OVERSHOOT = "overshoot"
UNDERSHOOT = "undershoot"
CONVERGED = "converged"


class IntegrationError(RuntimeError):
    """The integrator failed; ``state`` holds the last ``(x, w, w')`` reached."""

    def __init__(self, message, state):
        super().__init__(f"{message} (last state x={state[0]:.6g}, w={state[1]:.6g}, w'={state[2]:.6g})")
        self.state = state


class BracketError(RuntimeError):
    """Both ends of the shooting bracket classify the same way."""


class NotConvergedError(RuntimeError):
    """An operation needs a converged solution."""


@dataclass(frozen=True)
class OdeConfig:
    """Integration and shooting settings.

    ``classify_horizon`` bounds how far a trial trajectory is followed when
    it has neither overshot nor undershot by ``x_max``; close to the root the
    escape from the decaying branch can happen far beyond ``x_max`` for small
    ``alpha``.  ``separation_tol`` is the relative gap between the two final
    bracket trajectories that marks the end of the reliable range.
    """

    x_start: float = 1e-6
    x_max: float = 400.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    slope_bracket: tuple[float, float] | None = None
    max_bisect: int = 200
    bracket_width: float = 1e-12
    samples_per_decade: int = 60
    classify_horizon: float = 1e40
    separation_tol: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.x_start < 1.0 < self.x_max):
            raise ValueError("need 0 < x_start < 1 < x_max")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.slope_bracket is not None:
            lo, hi = self.slope_bracket
            if not lo < hi:
                raise ValueError("slope_bracket must be (low, high) with low < high")
        if self.max_bisect < 1 or self.samples_per_decade < 4:
            raise ValueError("max_bisect >= 1 and samples_per_decade >= 4 required")


@dataclass(frozen=True)
class TailFit:
    """Power-law continuation ``b_fit * x**a_exp`` used for ``x > x_match``."""

    a_exp: float
    b_fit: float
    x_match: float
    b_exact: float
    b_decade: float = math.nan

    @property
    def amplitude_ratio(self) -> float:
        """``b_fit / b_exact``; equals 1 only asymptotically."""
        return self.b_fit / self.b_exact


@dataclass
class TFSolution:
    """A trajectory of the screening equation.

    ``x, omega, omega_prime`` are samples on a log-spaced grid starting at the
    series handoff point.  For converged solutions ``tail`` is set and
    :func:`omega_eval` gives the solution on all of ``x > 0``.
    """

    alpha: float
    b_shoot: float
    x: np.ndarray
    omega: np.ndarray
    omega_prime: np.ndarray
    classification: str
    handoff: float
    series_resonant: bool
    tail: TailFit | None = None
    bracket: tuple[float, float] | None = None
    x_terminal: float | None = None
    _interp: tuple[BPoly, BPoly] | None = field(default=None, repr=False, compare=False)

    @property
    def converged(self) -> bool:
        return self.classification == CONVERGED

    def __call__(self, x):
        return omega_eval(self, x)


def rhs(alpha: float, x, w):
    """Right-hand side ``x**(1 - 3/alpha) * w**(3/alpha)`` (``w`` clipped at 0)."""
    q = 3.0 / alpha
    return np.power(x, 1.0 - q) * np.power(np.maximum(w, 0.0), q)


def series_start(alpha: float, b: float, x):
    """Value and slope of the small-``x`` expansion with linear coefficient ``b``.

    Returns ``(omega, omega_prime)``.  The leading terms are
    ``1 + b*x + x**beta / (beta*(beta - 1))`` with ``beta = 3 - 3/alpha``;
    for ``alpha = 3/2`` the last term is replaced by ``x*log(x) - x``.
    """
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"alpha must satisfy 1 < alpha <= 2, got {alpha!r}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise ValueError("series_start needs x > 0")
    w, dw = screening_series(float(alpha)).evaluate(b, xa)
    if np.ndim(x) == 0:
        return float(w), float(dw)
    return w, dw


def _handoff_point(alpha: float, b: float, cfg: OdeConfig) -> float:
    """Largest ``x <= x_start`` (by decades) where the series is converged to ``rel_tol``."""
    ser = screening_series(float(alpha))
    x = cfg.x_start
    target = 1e-2 * cfg.rel_tol
    while x > 1e-60:
        if ser.generation_size(b, x) < target:
            return x
        x /= 10.0
    raise IntegrationError("series start cannot reach the requested accuracy", (x, math.nan, math.nan))


def _system(alpha):
    q = 3.0 / alpha
    s = 1.0 - q

    def f(t, y):
        x = math.exp(t)
        w = y[0] if y[0] > 0.0 else 0.0
        return [x * y[1], x * x**s * w**q]

    return f


def _events():
    def hit_zero(t, y):
        return y[0]

    hit_zero.terminal = True
    hit_zero.direction = -1

    def turn_up(t, y):
        return y[1]

    turn_up.terminal = True
    turn_up.direction = 1

    # w is convex, so a decaying solution never exceeds w(0) = 1
    def escape(t, y):
        return y[0] - 1.5

    escape.terminal = True
    escape.direction = 1
    return [hit_zero, turn_up, escape]


def _run(alpha, x0, y0, x_end, cfg, dense):
    sol = solve_ivp(
        _system(alpha),
        (math.log(x0), math.log(x_end)),
        list(y0),
        method="DOP853",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        events=_events(),
        dense_output=dense,
    )
    if sol.status == -1:
        y = sol.y[:, -1]
        raise IntegrationError(sol.message, (math.exp(sol.t[-1]), y[0], y[1]))
    if sol.t_events[0].size:
        label = OVERSHOOT
    elif sol.t_events[1].size or sol.t_events[2].size or y0[1] >= 0.0:
        label = UNDERSHOOT
    else:
        label = CONVERGED
    return sol, label


def _classify(alpha, b, cfg):
    """Overshoot/undershoot label of the trajectory with slope ``b``, followed far out."""
    x0 = _handoff_point(alpha, b, cfg)
    y0 = series_start(alpha, b, x0)
    _, label = _run(alpha, x0, y0, cfg.classify_horizon, cfg, dense=False)
    return label


def _sample(alpha, sol, x0, x_last, cfg):
    t0, t1 = math.log(x0), math.log(x_last)
    n = max(8, int(math.ceil((t1 - t0) / math.log(10.0) * cfg.samples_per_decade)) + 1)
    t = np.linspace(t0, t1, n)
    y = sol.sol(t)
    return np.exp(t), y[0], y[1]


def integrate(alpha: float, b: float, cfg: OdeConfig | None = None, start=None) -> TFSolution:
    """Integrate one trajectory from the series handoff out to ``cfg.x_max``.

    ``start`` may be an explicit initial state ``(x0, w0, w0')``, in which
    case the series is bypassed and ``b`` is only recorded.  The trajectory
    stops early when ``w`` reaches zero (overshoot) or ``w'`` becomes positive
    (undershoot); otherwise it is labelled converged on ``[x0, x_max]``.
    """
    cfg = cfg or OdeConfig()
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"alpha must satisfy 1 < alpha <= 2, got {alpha!r}")
    if start is None:
        x0 = _handoff_point(alpha, b, cfg)
        y0 = series_start(alpha, b, x0)
    else:
        x0, *y0 = start
    sol, label = _run(alpha, x0, y0, cfg.x_max, cfg, dense=True)
    x_last = math.exp(sol.t[-1])
    x, w, dw = _sample(alpha, sol, x0, x_last, cfg)
    return TFSolution(
        alpha=float(alpha),
        b_shoot=float(b),
        x=x,
        omega=w,
        omega_prime=dw,
        classification=label,
        handoff=x0,
        series_resonant=screening_series(float(alpha)).resonant,
        x_terminal=x_last if label != CONVERGED else None,
    )


def _fit_decade(alpha, x, w):
    """Least-squares ``B`` of ``log w = log B + A log x`` over the last decade of samples."""
    sel = x >= x[-1] / 10.0
    return math.exp(float(np.mean(np.log(w[sel]) - tail_exponent(alpha) * np.log(x[sel]))))


def _search_bracket(alpha, cfg, limit=1e9):
    """Expand outward from (-10, 0) until overshoot (low b) and undershoot (high b) are bracketed."""
    lo, hi = -10.0, 0.0
    c_lo, c_hi = _classify(alpha, lo, cfg), _classify(alpha, hi, cfg)
    while c_lo != OVERSHOOT:
        if lo < -limit:
            raise BracketError(f"no overshooting slope found down to b={lo:g}")
        hi, c_hi = lo, c_lo
        lo *= 4.0
        c_lo = _classify(alpha, lo, cfg)
    while c_hi != UNDERSHOOT:
        if hi > limit:
            raise BracketError(f"no undershooting slope found up to b={hi:g}")
        lo, c_lo = hi, c_hi
        hi = 10.0 if hi <= 0.0 else 4.0 * hi
        c_hi = _classify(alpha, hi, cfg)
    return lo, hi, c_lo, c_hi


def _bisect(classify, lo, hi, c_lo, c_hi, cfg, width):
    for _ in range(cfg.max_bisect):
        if hi - lo < width:
            break
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        c_mid = classify(mid)
        if c_mid == c_lo:
            lo = mid
        elif c_mid == c_hi:
            hi = mid
        else:
            return mid, mid
    return lo, hi


def _reliable_samples(alpha, starts, cfg):
    """Sample the middle trajectory up to where the bracket trajectories separate.

    ``starts`` holds initial states ``(x0, w0, w0')`` for the low, middle and
    high ends of the final bracket.
    """
    sols = [_run(alpha, st[0], st[1:], cfg.x_max, cfg, dense=True)[0] for st in starts]
    x0 = starts[1][0]
    x_end = min(math.exp(sol.t[-1]) for sol in sols)
    x, w, dw = _sample(alpha, sols[1], x0, x_end, cfg)
    t = np.log(x)
    w_a, w_b = sols[0].sol(t)[0], sols[2].sol(t)[0]
    bad = np.nonzero((np.abs(w_a - w_b) > cfg.separation_tol * np.abs(w)) | (w <= 0))[0]
    n_keep = int(bad[0]) if bad.size else x.size
    # drop the final stretch where the trajectory bends away from the branch
    while n_keep > 2 and dw[n_keep - 1] >= 0:
        n_keep -= 1
    return x[:n_keep], w[:n_keep], dw[:n_keep]


def shoot(alpha: float, cfg: OdeConfig | None = None, max_stages: int = 8) -> TFSolution:
    """Find the decaying solution by bisection on the linear coefficient ``b``.

    In double precision the bisected trajectory only follows the decaying
    branch up to some ``x`` (about 25 for ``alpha = 2``).  While that point
    is short of ``cfg.x_max`` the solution is continued in further stages:
    ``w`` is kept fixed there and its slope is bisected again, which
    restores full precision for the next stretch.

    Raises :class:`BracketError` when both ends of ``cfg.slope_bracket`` give
    the same classification.
    """
    cfg = cfg or OdeConfig()
    if not 1.0 < alpha <= 2.0:
        raise DomainError(f"alpha must satisfy 1 < alpha <= 2, got {alpha!r}")
    if cfg.slope_bracket is None:
        lo, hi, c_lo, c_hi = _search_bracket(alpha, cfg)
    else:
        lo, hi = cfg.slope_bracket
        c_lo, c_hi = _classify(alpha, lo, cfg), _classify(alpha, hi, cfg)
        if c_lo == c_hi or CONVERGED in (c_lo, c_hi):
            raise BracketError(
                f"slope bracket {cfg.slope_bracket} does not straddle the solution "
                f"({c_lo} at {lo}, {c_hi} at {hi}); widen slope_bracket"
            )
    lo, hi = _bisect(lambda v: _classify(alpha, v, cfg), lo, hi, c_lo, c_hi, cfg, cfg.bracket_width)
    b = 0.5 * (lo + hi)
    log.debug("alpha=%g: b in [%r, %r]", alpha, lo, hi)

    def series_state(v):
        x0 = _handoff_point(alpha, v, cfg)
        return (x0, *series_start(alpha, v, x0))

    x, w, dw = _reliable_samples(alpha, [series_state(v) for v in (lo, b, hi)], cfg)
    if x[-1] < 10.0 * x[0]:
        raise IntegrationError("reliable range shorter than one decade", (x[-1], w[-1], dw[-1]))
    handoff = x[0]
    xs, ws, dws = [x], [w], [dw]
    for _ in range(max_stages):
        x_k, w_k, dw_k = xs[-1][-1], ws[-1][-1], dws[-1][-1]
        if x_k >= cfg.x_max * (1.0 - 1e-9):
            break

        def classify_slope(v):
            return _run(alpha, x_k, (w_k, v), cfg.classify_horizon, cfg, dense=False)[1]

        # the end-of-range slope carries the accumulated error; widen the
        # bracket around it until it straddles the decaying branch
        for rel in (1e-6, 1e-4, 1e-2, 1e-1):
            eta = rel * abs(dw_k)
            s_lo, s_hi = dw_k - eta, min(dw_k + eta, 0.0)
            c_slo, c_shi = classify_slope(s_lo), classify_slope(s_hi)
            if c_slo == OVERSHOOT and c_shi == UNDERSHOOT:
                break
        else:
            break
        s_lo, s_hi = _bisect(classify_slope, s_lo, s_hi, c_slo, c_shi, cfg, 0.0)
        s_mid = 0.5 * (s_lo + s_hi)
        x, w, dw = _reliable_samples(alpha, [(x_k, w_k, v) for v in (s_lo, s_mid, s_hi)], cfg)
        if x.size < 3:
            break
        xs.append(x[1:])
        ws.append(w[1:])
        dws.append(dw[1:])
    x, w, dw = np.concatenate(xs), np.concatenate(ws), np.concatenate(dws)

    out = TFSolution(
        alpha=float(alpha),
        b_shoot=b,
        x=x,
        omega=w,
        omega_prime=dw,
        classification=CONVERGED,
        handoff=handoff,
        series_resonant=screening_series(float(alpha)).resonant,
        bracket=(lo, hi),
    )
    a_exp = tail_exponent(alpha)
    # seam at the last reliable sample; the least-squares amplitude over the
    # last decade is kept as a diagnostic only (the power law is not yet
    # accurate across a whole decade for alpha near 2)
    x_match = float(x[-1])
    b_fit = float(w[-1] * x_match ** (-a_exp))
    out.tail = TailFit(
        a_exp=a_exp,
        b_fit=b_fit,
        x_match=x_match,
        b_exact=tail_coefficient(alpha),
        b_decade=_fit_decade(alpha, x, w),
    )
    return out


def _interpolant(sol: TFSolution) -> tuple[BPoly, BPoly]:
    """Quintic Hermite interpolants in ``t = log(x)`` of ``w`` and of ``w'``.

    Node derivatives come from the ODE and its derivative.  A separate
    interpolant for the slope avoids recovering ``w''`` from second
    differences of ``w ~ 1`` near the origin, which loses all precision.
    """
    if sol._interp is None:
        x, w, dw = sol.x, sol.omega, sol.omega_prime
        q = 3.0 / sol.alpha
        d2w = rhs(sol.alpha, x, w)
        d3w = (1.0 - q) * d2w / x + q * d2w * dw / w
        t = np.log(x)
        p_w = BPoly.from_derivatives(t, np.column_stack([w, x * dw, x * dw + x * x * d2w]))
        p_dw = BPoly.from_derivatives(t, np.column_stack([dw, x * d2w, x * d2w + x * x * d3w]))
        sol._interp = (p_w, p_dw)
    return sol._interp


def omega_eval(sol: TFSolution, x, derivative: int = 1):
    """Evaluate a converged solution and its slope at ``x > 0``.

    Uses the series below the handoff point, the quintic Hermite interpolant
    of the samples up to ``tail.x_match`` and the power-law tail beyond.
    Returns ``(omega, omega_prime)``; with ``derivative=2`` also ``omega''``.
    """
    if not sol.converged or sol.tail is None:
        raise NotConvergedError(f"solution is {sol.classification}; omega_eval needs a converged solution")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa <= 0):
        raise ValueError("omega_eval needs x > 0")
    w = np.empty_like(xa)
    dw = np.empty_like(xa)
    d2w = np.empty_like(xa)
    tail = sol.tail
    low = xa < sol.handoff
    high = xa > tail.x_match
    mid = ~(low | high)
    if low.any():
        w[low], dw[low] = series_start(sol.alpha, sol.b_shoot, xa[low])
        d2w[low] = rhs(sol.alpha, xa[low], w[low])
    if mid.any():
        p_w, p_dw = _interpolant(sol)
        t = np.log(xa[mid])
        w[mid] = p_w(t)
        dw[mid] = p_dw(t)
        d2w[mid] = p_dw(t, 1) / xa[mid]
    if high.any():
        xh = xa[high]
        a = tail.a_exp
        w[high] = tail.b_fit * xh**a
        dw[high] = a * tail.b_fit * xh ** (a - 1.0)
        d2w[high] = a * (a - 1.0) * tail.b_fit * xh ** (a - 2.0)
    if np.ndim(x) == 0:
        w, dw, d2w = float(w[0]), float(dw[0]), float(d2w[0])
    if derivative >= 2:
        return w, dw, d2w
    return w, dw
