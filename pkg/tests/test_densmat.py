import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracqm import densmat as dm
from fracqm.constants import DomainError
from fracqm.oracles import expect_onebody_full, expect_twobody_full


def _orbitals(rng, dim, n):
    q = np.linalg.qr(rng.standard_normal((dim, n)) + 1j * rng.standard_normal((dim, n)))[0]
    return q.T


@st.composite
def states(draw, min_n=1, slater=None):
    n_sites = draw(st.integers(1, 4))
    b = dm.BasisSpec(n_sites)
    n = draw(st.integers(min_n, min(3, b.dim)))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    use_slater = draw(st.booleans()) if slater is None else slater
    if use_slater:
        return dm.slater_state(_orbitals(rng, b.dim, n), b)
    return dm.random_state(b, n, rng)


def test_two_orbital_determinant():
    s = dm.slater_state(np.eye(2), dm.BasisSpec(1))
    assert s.amplitudes[0, 1] == pytest.approx(1 / math.sqrt(2))
    assert s.amplitudes[1, 0] == pytest.approx(-1 / math.sqrt(2))
    assert s.amplitudes[0, 0] == 0 and s.amplitudes[1, 1] == 0
    # spin singlet on one site: two electrons there
    assert dm.density(s) == pytest.approx([2.0])
    assert dm.pair_density(s) == pytest.approx(np.array([[1.0]]))


def test_single_particle_density_is_orbital_weight():
    b = dm.BasisSpec(3)
    phi = np.array([0.6, 0, 0, 0.8j, 0, 0])
    s = dm.slater_state([phi], b)
    assert s.n == 1
    assert dm.density(s) == pytest.approx([0.36, 0.64, 0.0])
    g = dm.full_dm(s)
    assert np.allclose(g.matrix, np.outer(phi, phi.conj()))


def test_invalid_states_rejected():
    b = dm.BasisSpec(2)
    with pytest.raises(DomainError, match="orthonormal"):
        dm.slater_state([[1, 0, 0, 0], [1, 1, 0, 0]], b)
    with pytest.raises(DomainError, match="normalized"):
        dm.NBodyState(b, np.zeros((4, 4)))
    sym = np.zeros((4, 4))
    sym[0, 1] = sym[1, 0] = 1 / math.sqrt(2)
    with pytest.raises(DomainError, match="antisymmetric"):
        dm.NBodyState(b, sym)
    with pytest.raises(DomainError):
        dm.BasisSpec(9)
    with pytest.raises(DomainError):
        dm.BasisSpec(2, n_spin=1)
    with pytest.raises(DomainError):
        dm.random_state(dm.BasisSpec(1), 3)


@settings(max_examples=40, deadline=None)
@given(states(), st.floats(0, 2 * math.pi))
def test_global_phase_is_invisible(s, theta):
    g0 = dm.reduce(dm.full_dm(s), 1) if s.n > 1 else None
    t = s.with_phase(theta)
    assert np.allclose(dm.density(t), dm.density(s), atol=1e-13)
    if g0 is not None:
        assert np.allclose(dm.reduce(dm.full_dm(t), 1).matrix, g0.matrix, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(states())
def test_full_matrix_is_a_projector(s):
    g = dm.full_dm(s)
    assert g.trace() == pytest.approx(1.0, abs=1e-12)
    assert g.idempotency_error() < 1e-12
    if s.basis.dim ** s.n <= 256:
        m = g.matrix
        assert np.max(np.abs(m @ m - m)) < 1e-12
        ev = np.linalg.eigvalsh(m)
        assert ev[-1] == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(ev[:-1])) < 1e-12


@settings(max_examples=40, deadline=None)
@given(states(min_n=2))
def test_traces_and_reduction_chain(s):
    g = dm.full_dm(s)
    for p in range(1, s.n):
        r = dm.reduce(g, p)
        assert r.trace() == pytest.approx(math.comb(s.n, p), rel=1e-12)
        assert r.hermiticity_error() < 1e-12
        assert np.min(np.linalg.eigvalsh(r.matrix)) > -1e-12
    if s.n == 3:
        direct = dm.reduce(g, 1).matrix
        chained = dm.reduce(dm.reduce(g, 2), 1).matrix
        assert np.allclose(chained, direct, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(states())
def test_one_matrix_eigenvalues_bounded(s):
    ev = np.linalg.eigvalsh(dm.reduce(dm.full_dm(s), 1).matrix if s.n > 1 else dm.full_dm(s).matrix)
    assert ev.min() > -1e-12 and ev.max() < 1 + 1e-12


@settings(max_examples=30, deadline=None)
@given(states(slater=True))
def test_determinant_occupations_are_zero_or_one(s):
    g1 = dm.reduce(dm.full_dm(s), 1).matrix if s.n > 1 else dm.full_dm(s).matrix
    ev = np.linalg.eigvalsh(g1)
    assert np.allclose(ev, np.round(ev), atol=1e-12)
    assert round(ev.sum()) == s.n
    assert np.max(np.abs(g1 @ g1 - g1)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(states(min_n=2))
def test_density_sum_rules(s):
    rho = dm.density(s)
    pair = dm.pair_density(s)
    n = s.n
    assert rho.sum() == pytest.approx(n, abs=1e-12)
    assert pair.sum() == pytest.approx(n * (n - 1) / 2, abs=1e-12)
    assert np.allclose(pair, pair.T, atol=1e-13)
    assert np.allclose(2.0 / (n - 1) * pair.sum(axis=1), rho, atol=1e-12)
    # off-diagonal version: rho_1(r', r) from rho_2 with the second pair traced out
    ns = s.basis.n_sites
    g2 = dm.full_dm(s) if n == 2 else dm.reduce(dm.full_dm(s), 2)
    rho2 = dm.spinless(g2).matrix.reshape((ns,) * 4)
    rho1 = dm.spinless(dm.reduce(dm.full_dm(s), 1)).matrix
    assert np.allclose(2.0 / (n - 1) * np.einsum("ajbj->ab", rho2), rho1, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(states(), st.integers(0, 2**32 - 1))
def test_onebody_expectation_matches_full_trace(s, seed):
    rng = np.random.default_rng(seed)
    d = s.basis.dim
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    o1 = m + m.conj().T
    assert dm.expect_onebody(s, o1) == pytest.approx(expect_onebody_full(s.amplitudes, o1), abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(states(min_n=2), st.integers(0, 2**32 - 1))
def test_twobody_expectation_matches_full_sum(s, seed):
    rng = np.random.default_rng(seed)
    ns = s.basis.n_sites
    m = rng.standard_normal((ns, ns))
    o2 = m + m.T
    assert dm.expect_twobody(s, o2) == pytest.approx(expect_twobody_full(s.amplitudes, o2), abs=1e-10)


def test_special_operators():
    rng = np.random.default_rng(3)
    b = dm.BasisSpec(3)
    s = dm.random_state(b, 3, rng)
    assert dm.expect_onebody(s, np.eye(b.dim)) == pytest.approx(3.0)
    rho = dm.density(s)
    for site in range(3):
        proj = np.zeros((b.dim, b.dim))
        for spin in range(2):
            proj[b.index(site, spin), b.index(site, spin)] = 1.0
        assert dm.expect_onebody(s, proj) == pytest.approx(rho[site])
    assert dm.expect_twobody(s, np.ones((3, 3))) == pytest.approx(3.0)
    # a single pair of sites reads back the pair density there
    pair = dm.pair_density(s)
    o2 = np.zeros((3, 3))
    o2[0, 2] = o2[2, 0] = 0.5
    assert dm.expect_twobody(s, o2) == pytest.approx(pair[0, 2])


def test_operator_validation():
    s = dm.random_state(dm.BasisSpec(2), 2, np.random.default_rng(1))
    with pytest.raises(DomainError, match="Hermitian"):
        dm.expect_onebody(s, np.triu(np.ones((4, 4))))
    with pytest.raises(DomainError, match="symmetric"):
        dm.expect_twobody(s, np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DomainError):
        dm.expect_onebody(s, np.eye(3))
    with pytest.raises(DomainError):
        dm.reduce(dm.full_dm(s), 2)
    with pytest.raises(DomainError):
        dm.pair_density(dm.slater_state([[1, 0, 0, 0]]))


@settings(max_examples=30, deadline=None)
@given(states(min_n=2))
def test_xc_hole_sum_rule(s):
    rho = dm.density(s)
    for r1 in np.nonzero(rho > 1e-6)[0]:
        assert dm.xc_hole(s, int(r1)).sum() == pytest.approx(-1.0, abs=1e-10)


def test_same_spin_pair_digs_a_full_hole():
    # two up-spin electrons: no pair amplitude on a shared site
    rng = np.random.default_rng(5)
    b = dm.BasisSpec(3)
    up = np.zeros((2, b.dim), dtype=complex)
    q = np.linalg.qr(rng.standard_normal((3, 2)))[0]
    for site in range(3):
        up[:, b.index(site, 0)] = q[site]
    s = dm.slater_state(up, b)
    pair = dm.pair_density(s)
    assert np.allclose(np.diag(pair), 0.0, atol=1e-14)
    rho = dm.density(s)
    for r1 in range(3):
        hole = dm.xc_hole(s, r1)
        assert hole[r1] == pytest.approx(-rho[r1], abs=1e-12)
        assert hole[r1] <= 0


def test_xc_hole_needs_occupied_site():
    b = dm.BasisSpec(2)
    s = dm.slater_state(np.eye(4)[:2], b)
    with pytest.raises(DomainError, match="vanishes"):
        dm.xc_hole(s, 1)
    with pytest.raises(DomainError):
        dm.xc_hole(s, 5)
