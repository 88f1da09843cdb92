"""Pure N-fermion states on a finite site x spin basis and their reduced density matrices.

A single-particle index is ``site * n_spin + spin``.  A state is stored as
its full antisymmetric amplitude tensor of shape ``(dim,) * n``, normalized
so that ``sum |psi|**2 = 1``.  Reduced density matrices follow the binomial
normalization

    gamma_p(x'_1..x'_p; x_1..x_p)
        = C(N, p) * sum_{x_{p+1}..x_N} psi(x'_1..x'_p, ...) conj(psi(x_1..x_p, ...))

so that ``trace(gamma_p) = C(N, p)``.  Matrices are indexed
``[primed tuple, unprimed tuple]`` with tuples flattened in C order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import DomainError

__all__ = [
    "BasisSpec",
    "NBodyState",
    "ReducedDM",
    "SpinlessDM",
    "slater_state",
    "random_state",
    "full_dm",
    "reduce",
    "spinless",
    "density",
    "pair_density",
    "expect_onebody",
    "expect_twobody",
    "xc_hole",
]

MAX_DIM = 16
MAX_PARTICLES = 4
GRAM_TOL = 1e-10
# dense gamma_N is only materialized up to this many rows
_DENSE_LIMIT = 4096


def _sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _antisymmetrize(t: np.ndarray) -> np.ndarray:
    n = t.ndim
    out = np.zeros_like(t)
    for perm in itertools.permutations(range(n)):
        out += _sign(perm) * np.transpose(t, perm)
    return out / math.factorial(n)


@dataclass(frozen=True)
class BasisSpec:
    """``n_sites`` spatial points, each carrying ``n_spin`` spin states."""

    n_sites: int
    n_spin: int = 2

    def __post_init__(self):
        if self.n_spin != 2:
            raise DomainError("n_spin is fixed to 2")
        if not 1 <= self.n_sites or self.dim > MAX_DIM:
            raise DomainError(f"need 1 <= n_sites and dim <= {MAX_DIM}, got n_sites={self.n_sites}")

    @property
    def dim(self) -> int:
        return self.n_sites * self.n_spin

    def index(self, site: int, spin: int) -> int:
        return site * self.n_spin + spin


@dataclass(frozen=True)
class NBodyState:
    """Normalized antisymmetric amplitude tensor of ``n`` fermions."""

    basis: BasisSpec
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex)
        n = psi.ndim
        if not 1 <= n <= MAX_PARTICLES:
            raise DomainError(f"particle number must be 1..{MAX_PARTICLES}, got {n}")
        if psi.shape != (self.basis.dim,) * n:
            raise DomainError(f"amplitude shape {psi.shape} does not match dim {self.basis.dim}")
        norm = np.vdot(psi, psi).real
        if abs(norm - 1.0) > 1e-10:
            raise DomainError(f"state is not normalized (norm {norm!r})")
        for i in range(n - 1):
            swapped = np.swapaxes(psi, i, i + 1)
            if np.max(np.abs(psi + swapped), initial=0.0) > 1e-12:
                raise DomainError("amplitudes are not antisymmetric")
        object.__setattr__(self, "amplitudes", psi)

    @property
    def n(self) -> int:
        return self.amplitudes.ndim

    def with_phase(self, theta: float) -> "NBodyState":
        return NBodyState(self.basis, self.amplitudes * np.exp(1j * theta))


@dataclass(frozen=True)
class ReducedDM:
    """Order-``p`` reduced density matrix of an ``n_particles`` state.

    For ``order == n_particles`` the projector ``|psi><psi|`` is kept in
    factored form (``vector``); :attr:`matrix` expands it on demand.
    """

    order: int
    n_particles: int
    basis: BasisSpec
    _matrix: np.ndarray | None = field(default=None, repr=False)
    vector: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_full(self) -> bool:
        return self.vector is not None

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is not None:
            return self._matrix
        if self.vector.size > _DENSE_LIMIT:
            raise MemoryError(f"dense gamma_N would have {self.vector.size}**2 entries")
        return np.outer(self.vector, self.vector.conj())

    def trace(self) -> float:
        if self.is_full:
            return float(np.vdot(self.vector, self.vector).real)
        return float(np.trace(self._matrix).real)

    def hermiticity_error(self) -> float:
        if self.is_full:
            return 0.0
        return float(np.max(np.abs(self._matrix - self._matrix.conj().T)))

    def idempotency_error(self) -> float:
        """``max |gamma**2 - gamma|``; for the factored projector this is ``| <psi|psi> - 1 | * max|gamma|``."""
        if self.is_full:
            norm = np.vdot(self.vector, self.vector).real
            return float(abs(norm - 1.0) * np.max(np.abs(self.vector)) ** 2)
        g = self._matrix
        return float(np.max(np.abs(g @ g - g)))


@dataclass(frozen=True)
class SpinlessDM:
    """Spin-summed density matrix of order 1 or 2 over site tuples."""

    order: int
    n_particles: int
    n_sites: int
    matrix: np.ndarray = field(repr=False)

    def diagonal(self) -> np.ndarray:
        """``rho(r)`` for order 1, ``rho_2(r1, r2)`` as an ``(S, S)`` array for order 2."""
        d = np.real(np.diagonal(self.matrix)).copy()
        return d if self.order == 1 else d.reshape(self.n_sites, self.n_sites)


def slater_state(orbitals, basis: BasisSpec | None = None) -> NBodyState:
    """Normalized determinant of the given orthonormal orbitals.

    Parameters
    ----------
    orbitals : sequence of vectors of length ``dim``
        One orbital per particle.
    basis : BasisSpec, optional
        Defaults to ``dim // 2`` sites.
    """
    phi = np.atleast_2d(np.asarray(orbitals, dtype=complex))
    n, dim = phi.shape
    basis = basis or BasisSpec(dim // 2)
    if dim != basis.dim:
        raise DomainError(f"orbital length {dim} does not match basis dim {basis.dim}")
    if not 1 <= n <= MAX_PARTICLES:
        raise DomainError(f"need 1..{MAX_PARTICLES} orbitals, got {n}")
    gram = phi.conj() @ phi.T
    err = np.max(np.abs(gram - np.eye(n)))
    if err > GRAM_TOL:
        raise DomainError(f"orbitals are not orthonormal (Gram residual {err:.3g})")
    psi = np.zeros((dim,) * n, dtype=complex)
    for perm in itertools.permutations(range(n)):
        term = phi[perm[0]]
        for k in perm[1:]:
            term = np.multiply.outer(term, phi[k])
        psi += _sign(perm) * term
    return NBodyState(basis, psi / math.sqrt(math.factorial(n)))


def random_state(basis: BasisSpec, n: int, rng: np.random.Generator | None = None) -> NBodyState:
    """Antisymmetrized complex Gaussian tensor, normalized (generally not a determinant)."""
    if n > basis.dim:
        raise DomainError("more particles than single-particle states")
    rng = rng or np.random.default_rng()
    shape = (basis.dim,) * n
    t = _antisymmetrize(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return NBodyState(basis, t / math.sqrt(np.vdot(t, t).real))


def full_dm(s: NBodyState) -> ReducedDM:
    """The pure-state projector ``gamma_N = |psi><psi|``."""
    return ReducedDM(order=s.n, n_particles=s.n, basis=s.basis, vector=s.amplitudes.ravel())


def reduce(g: ReducedDM, p: int) -> ReducedDM:
    """Order-``p`` reduction of ``g`` with the binomial normalization.

    ``g`` may be the full projector or any reduced matrix of order above ``p``.
    """
    n, q, dim = g.n_particles, g.order, g.basis.dim
    if not 1 <= p < q:
        raise DomainError(f"reduction order must satisfy 1 <= p < {q}, got {p}")
    if g.is_full:
        psi = g.vector.reshape(dim**p, dim ** (n - p))
        m = math.comb(n, p) * (psi @ psi.conj().T)
    else:
        k = dim ** (q - p)
        g4 = g._matrix.reshape(dim**p, k, dim**p, k)
        m = math.comb(n, p) / math.comb(n, q) * np.einsum("aibi->ab", g4)
    return ReducedDM(order=p, n_particles=n, basis=g.basis, _matrix=m)


def spinless(g: ReducedDM) -> SpinlessDM:
    """Sum out spin, pairing each primed spin with its unprimed partner."""
    if g.order not in (1, 2):
        raise DomainError(f"spinless reduction needs order 1 or 2, got {g.order}")
    ns, sp = g.basis.n_sites, g.basis.n_spin
    m = g.matrix
    if g.order == 1:
        out = np.einsum("aibi->ab", m.reshape(ns, sp, ns, sp))
    else:
        out = np.einsum("aibjcidj->abcd", m.reshape((ns, sp) * 4)).reshape(ns * ns, ns * ns)
    return SpinlessDM(order=g.order, n_particles=g.n_particles, n_sites=ns, matrix=out)


def _gamma(s: NBodyState, p: int) -> ReducedDM:
    g = full_dm(s)
    return g if s.n == p else reduce(g, p)


def density(s: NBodyState) -> np.ndarray:
    """Electron density per site."""
    return spinless(_gamma(s, 1)).diagonal()


def pair_density(s: NBodyState) -> np.ndarray:
    """Diagonal pair density ``rho_2(r1, r2)``; sums to ``N(N-1)/2``."""
    if s.n < 2:
        raise DomainError("pair density needs at least two particles")
    return spinless(_gamma(s, 2)).diagonal()


def expect_onebody(s: NBodyState, o1) -> float:
    """``<psi| sum_i o1(i) |psi> = trace(o1 gamma_1)`` for a Hermitian ``dim x dim`` matrix."""
    o1 = np.asarray(o1, dtype=complex)
    if o1.shape != (s.basis.dim,) * 2:
        raise DomainError(f"operator must be {s.basis.dim}x{s.basis.dim}")
    if np.max(np.abs(o1 - o1.conj().T)) > 1e-12:
        raise DomainError("one-body operator is not Hermitian")
    return float(np.trace(o1 @ _gamma(s, 1).matrix).real)


def expect_twobody(s: NBodyState, o2) -> float:
    """``<psi| sum_{i<j} o2(r_i, r_j) |psi> = sum o2(r1, r2) rho_2(r1, r2)`` for a symmetric site function."""
    o2 = np.asarray(o2, dtype=float)
    ns = s.basis.n_sites
    if o2.shape != (ns, ns):
        raise DomainError(f"pair function must be {ns}x{ns}")
    if np.max(np.abs(o2 - o2.T)) > 1e-12:
        raise DomainError("pair function is not symmetric")
    return float(np.sum(o2 * pair_density(s)))


def xc_hole(s: NBodyState, r1: int) -> np.ndarray:
    """Exchange-correlation hole ``rho_xc(r1, r2) = 2 rho_2(r1, r2) / rho(r1) - rho(r2)`` over ``r2``."""
    rho = density(s)
    if not 0 <= r1 < rho.size:
        raise DomainError(f"site {r1} out of range")
    if rho[r1] <= 1e-14:
        raise DomainError(f"density vanishes at reference site {r1}")
    return 2.0 * pair_density(s)[r1] / rho[r1] - rho
