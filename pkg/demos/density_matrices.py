"""
Reduced density matrices of few-fermion states
==============================================

A handful of electrons on a small lattice of sites, each with two spin
states.  From the full amplitude tensor we build the reduced density
matrices, the site density and pair density, and the exchange-correlation
hole, and check the sum rules they obey.
"""
import numpy as np

from fracqm import densmat as dm
from fracqm.oracles import expect_onebody_full

rng = np.random.default_rng(7)
basis = dm.BasisSpec(4)

# %%
# A Slater determinant of three random orthonormal spin-orbitals, and a
# generic correlated three-electron state.
q = np.linalg.qr(rng.standard_normal((basis.dim, 3)) + 1j * rng.standard_normal((basis.dim, 3)))[0]
det = dm.slater_state(q.T, basis)
corr = dm.random_state(basis, 3, rng)

for name, s in (("determinant", det), ("correlated", corr)):
    g1 = dm.reduce(dm.full_dm(s), 1)
    occ = np.linalg.eigvalsh(g1.matrix)[::-1]
    print(f"{name}: trace gamma_1 = {g1.trace():.12f}, trace gamma_2 = {dm.reduce(dm.full_dm(s), 2).trace():.12f}")
    print("  natural occupations:", np.round(occ[:5], 6))

# %%
# A determinant has occupations exactly 0 or 1; a correlated state spreads
# them out.  The site density sums to N and the pair density to N(N-1)/2.
rho = dm.density(corr)
pair = dm.pair_density(corr)
print("rho(r) =", np.round(rho, 6), " sum =", rho.sum())
print("sum rho_2 =", pair.sum())

# %%
# One-body expectation values from gamma_1 agree with applying the operator
# to every particle of the full state.
o1 = rng.standard_normal((basis.dim, basis.dim))
o1 = o1 + o1.T
print(f"<O1> via gamma_1 = {dm.expect_onebody(corr, o1):.12f}, direct = {expect_onebody_full(corr.amplitudes, o1):.12f}")

# %%
# The exchange-correlation hole around an occupied site holds exactly one
# missing electron.
for r1 in range(basis.n_sites):
    hole = dm.xc_hole(corr, r1)
    print(f"site {r1}: rho_xc = {np.round(hole, 4)}  sum = {hole.sum():+.12f}")
