"""
Fractional electron gas in a box
================================

Box levels go as ``|n|**alpha``.  Counting them exactly and comparing with
the continuum sphere shows how fast the Weyl limit is reached.  The
equation of state then follows from the continuum result and can be checked
against exact level filling at fixed particle number.
"""
import math

from fracqm import ModelParams
from fracqm.fermigas import BoxSpec, enumerate_states, eos_table, fd_pressure, pressure

p2 = ModelParams.natural(2.0)

# %%
# Exact count versus continuum for growing Fermi spheres.  The deficit is
# the surface term: levels with a zero quantum number do not exist, and that
# costs about 9 / (4 R) of the octant.
print(f"{'R_max':>6} {'N exact':>10} {'N continuum':>14} {'rel. error':>11} {'-9/(4R)':>9}")
for r in (25, 50, 100, 200):
    rep = enumerate_states(BoxSpec(p2, math.pi, 0.5 * r * r))
    print(f"{r:6d} {rep.n_exact:10d} {rep.n_cont:14.1f} {rep.rel_err_n:11.5f} {-9 / (4 * r):9.5f}")

# %%
# Mean energy per electron tends to 3 / (alpha + 3) of the Fermi energy.
for a in (1.2, 1.5, 2.0):
    p = ModelParams.natural(a)
    spec = BoxSpec(p, math.pi, p.kinetic_scale * 150.0**a)
    rep = enumerate_states(spec)
    print(f"alpha={a:g}: <E>/E_f = {rep.u_exact / rep.n_exact / spec.e_f:.5f}  (continuum {3 / (a + 3):.5f})")

# %%
# Equation of state: p = alpha/(alpha+3) rho E_f, so p ~ rho**(1 + alpha/3).
for q in eos_table(ModelParams.natural(1.5), 0.01, 100.0, 5):
    print(f"rho={q.rho:8.3g}  E_f={q.e_f:10.5g}  p={q.pressure:10.5g}")

# %%
# Compressing a box of ten million electrons by 2 % and differencing the
# exact filling energy reproduces the continuum pressure to under 1 %.
n = 10**7
for a in (1.5, 2.0):
    p = ModelParams.natural(a)
    p_fd, rho = fd_pressure(p, n, float(n))
    print(f"alpha={a:g}: -dU/dV = {p_fd:.6g}  continuum = {pressure(p, rho).pressure:.6g}")
