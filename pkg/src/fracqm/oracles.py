"""Brute-force reference computations used to cross-check the production code.

Nothing here shares code with the routines it checks: the screening oracle
has its own start-up series (a univariate power recurrence), its own
fixed-step integrator and its own bisection; the state-counting oracle is a
plain triple loop; the density-matrix oracles contract the full N-body
amplitude tensor directly.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

__all__ = [
    "OracleTrajectory",
    "oracle_start",
    "oracle_shoot",
    "oracle_slope",
    "oracle_omega",
    "count_states_bruteforce",
    "lowest_energy_sum_bruteforce",
    "expect_onebody_full",
    "expect_twobody_full",
]


def _power_series(a, q, n):
    """Coefficients of ``(sum a_k y**k)**q`` (``a_0 = 1``) by the J.C.P. Miller recurrence."""
    p = [1.0]
    for m in range(1, n):
        acc = 0.0
        for k in range(1, m + 1):
            if k < len(a):
                acc += ((q + 1.0) * k - m) * a[k] * p[m - k]
        p.append(acc / m)
    return p


def oracle_start(alpha, b, x0, n_terms=24):
    """``(w, w')`` at small ``x0`` for slope parameter ``b``.

    Non-resonant ``alpha``: ``w = W0(y) + b*x*W1(y)`` with ``y = x**beta``,
    both factors built coefficient by coefficient.  ``alpha = 3/2``:
    ``w = 1 + b*x + x*log(x) - x``, accurate to ``O(x**2 log(x)**2)``.
    """
    q = 3.0 / alpha
    beta = 3.0 - q
    if abs(alpha - 1.5) < 1e-12:
        lx = math.log(x0)
        return 1.0 + b * x0 + x0 * lx - x0, b + lx
    for i in range(1, n_terms + 1):
        if abs(i * beta - 1.0) < 1e-9:
            raise ValueError(f"oracle start does not handle resonant alpha={alpha}")
    # W0'' = x**(beta-2) W0**q, W0 = sum a_i y**i
    a = [1.0]
    for i in range(n_terms):
        p = _power_series(a, q, i + 1)
        e = (i + 1) * beta
        a.append(p[i] / (e * (e - 1.0)))
    # linearised b-part: (x W1)'' = q x**(beta-2) W0**(q-1) x W1
    r = _power_series(a, q - 1.0, n_terms + 1)
    c = [1.0]
    for n in range(n_terms):
        acc = sum(r[k] * c[n - k] for k in range(n + 1))
        e = (n + 1) * beta
        c.append(q * acc / ((e + 1.0) * e))
    y = x0**beta
    w0 = sum(ai * y**i for i, ai in enumerate(a))
    dw0 = sum(ai * i * beta * y**i for i, ai in enumerate(a)) / x0
    w1 = x0 * sum(ci * y**i for i, ci in enumerate(c))
    dw1 = sum(ci * (1.0 + i * beta) * y**i for i, ci in enumerate(c))
    return w0 + b * w1, dw0 + b * dw1


class OracleTrajectory:
    """Fixed-step RK4 trajectory in ``u = log(x)``; stores ``(u, w, dw/du)``."""

    def __init__(self, alpha, b, h, x0=1e-12, u_max=math.log(1e12)):
        q = 3.0 / alpha
        s = 1.0 - q
        w, dw = oracle_start(alpha, b, x0)
        u = math.log(x0)
        # state: w and v = x w'  (both derivatives are then smooth in u)
        v = x0 * dw

        def f(u, w, v):
            x = math.exp(u)
            ww = w if w > 0.0 else 0.0
            return v, v + x * x * x**s * ww**q

        us, ws, vs = [u], [w], [v]
        label = "converged"
        u0 = u
        n = int(math.ceil((u_max - u) / h))
        # compensated (Kahan) accumulation of w and v: tens of thousands of
        # steps otherwise lose the last digits that the shooting depends on
        cw = cv = 0.0
        for step in range(1, n + 1):
            k1w, k1v = f(u, w, v)
            k2w, k2v = f(u + 0.5 * h, w + 0.5 * h * k1w, v + 0.5 * h * k1v)
            k3w, k3v = f(u + 0.5 * h, w + 0.5 * h * k2w, v + 0.5 * h * k2v)
            k4w, k4v = f(u + h, w + h * k3w, v + h * k3v)
            dw = h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w) - cw
            t = w + dw
            cw = (t - w) - dw
            w = t
            dv = h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v) - cv
            t = v + dv
            cv = (t - v) - dv
            v = t
            u = u0 + step * h
            us.append(u)
            ws.append(w)
            vs.append(v)
            if w <= 0.0:
                label = "overshoot"
                break
            if v >= 0.0 or w > 1.5:
                label = "undershoot"
                break
        self.alpha, self.b, self.h = alpha, b, h
        self.label = label
        self.u = np.array(us)
        self.w = np.array(ws)
        self.v = np.array(vs)

    def __call__(self, x):
        """Cubic Hermite interpolation of ``w`` at ``x`` (inside the trajectory)."""
        u = np.log(np.asarray(x, dtype=float))
        k = np.clip(((u - self.u[0]) / self.h).astype(int), 0, self.u.size - 2)
        t = (u - self.u[k]) / self.h
        h00 = 2 * t**3 - 3 * t**2 + 1
        h10 = t**3 - 2 * t**2 + t
        h01 = -2 * t**3 + 3 * t**2
        h11 = t**3 - t**2
        return h00 * self.w[k] + h10 * self.h * self.v[k] + h01 * self.w[k + 1] + h11 * self.h * self.v[k + 1]


def oracle_shoot(alpha, h, bracket=None, rel_width=0.0, u_max=math.log(1e12)):
    """Bisect the slope parameter with fixed-step RK4 trajectories of step ``h``.

    Returns ``(b, trajectory)`` where the trajectory is that of the final
    midpoint.  Without a bracket one is searched outward from ``(-10, 0)``.
    The default ``rel_width = 0`` bisects down to adjacent doubles: for
    ``alpha`` near 1 the solution at ``x ~ 10`` moves by hundreds of times
    any change in ``b``.
    """
    def label(b):
        return OracleTrajectory(alpha, b, h, u_max=u_max).label

    if bracket is None:
        lo, hi = -10.0, 0.0
        while label(lo) != "overshoot":
            lo, hi = 4.0 * lo, lo
        while label(hi) != "undershoot":
            lo, hi = hi, (10.0 if hi <= 0 else 4.0 * hi)
    else:
        lo, hi = bracket
    while hi - lo > rel_width * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        c = label(mid)
        if c == "overshoot":
            lo = mid
        elif c == "undershoot":
            hi = mid
        else:
            lo = hi = mid
    b = 0.5 * (lo + hi)
    return b, OracleTrajectory(alpha, b, h, u_max=u_max)


def oracle_slope(alpha, steps=(0.04, 0.02, 0.01), bracket=None):
    """Richardson-extrapolated slope parameter from three RK4 step sizes.

    Returns ``(b_extrapolated, [b(h) for h in steps], trajectories)``.  The
    step sizes must halve successively; the global error of RK4 is ``O(h**4)``.
    """
    results = [oracle_shoot(alpha, h, bracket=bracket) for h in steps]
    bs = [r[0] for r in results]
    b_star = bs[2] + (bs[2] - bs[1]) / 15.0
    return b_star, bs, [r[1] for r in results]


def oracle_omega(trajectories, x):
    """Richardson-extrapolated ``w(x)`` from the two finest trajectories."""
    w1 = trajectories[-2](x)
    w2 = trajectories[-1](x)
    return w2 + (w2 - w1) / 15.0


def count_states_bruteforce(kinetic_scale, alpha, box_l, e_f):
    """Triple loop over positive quantum numbers; returns ``(N, U)`` with spin factor 2."""
    unit = kinetic_scale * (math.pi / box_l) ** alpha
    n_max = int((e_f / unit) ** (1.0 / alpha)) + 1
    count = 0
    energy = 0.0
    for nx in range(1, n_max + 1):
        for ny in range(1, n_max + 1):
            for nz in range(1, n_max + 1):
                e = unit * (nx * nx + ny * ny + nz * nz) ** (alpha / 2.0)
                if e <= e_f * (1.0 + 1e-12):
                    count += 1
                    energy += e
    return 2 * count, 2.0 * energy


def lowest_energy_sum_bruteforce(kinetic_scale, alpha, box_l, n_particles):
    """Energy of the ``n_particles`` lowest spin-orbitals, by sorting every level."""
    n_max = int(math.ceil((6.0 * n_particles / math.pi) ** (1.0 / 3.0))) + 4
    n = np.arange(1, n_max + 1)
    r2 = (n[:, None, None] ** 2 + n[None, :, None] ** 2 + n[None, None, :] ** 2).ravel()
    r2 = np.sort(np.repeat(r2, 2))[:n_particles]
    unit = kinetic_scale * (math.pi / box_l) ** alpha
    return float(unit * np.sum(r2.astype(float) ** (alpha / 2.0)))


def expect_onebody_full(amplitudes, o1):
    """``<psi| sum_i o1(i) |psi>`` by applying ``o1`` to every tensor slot."""
    psi = np.asarray(amplitudes)
    n = psi.ndim
    total = 0.0 + 0.0j
    for i in range(n):
        phi = np.moveaxis(np.tensordot(o1, psi, axes=([1], [i])), 0, i)
        total += np.vdot(psi, phi)
    return total.real


def expect_twobody_full(amplitudes, pair, n_spin=2):
    """``<psi| sum_{i<j} pair(site_i, site_j) |psi>`` by an explicit sum over index tuples."""
    psi = np.asarray(amplitudes)
    n = psi.ndim
    prob = np.abs(psi) ** 2
    total = 0.0
    for idx in itertools.product(range(psi.shape[0]), repeat=n):
        p = prob[idx]
        if p == 0.0:
            continue
        sites = [k // n_spin for k in idx]
        total += p * sum(pair[sites[i], sites[j]] for i in range(n) for j in range(i + 1, n))
    return total
