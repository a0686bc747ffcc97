"""Periodic XXZ ring: Bethe ansatz, sector exact diagonalization and block entropies.

Conventions
-----------
The Hamiltonian is

    H = J sum_l 1/2 (sx_l sx_{l+1} + sy_l sy_{l+1} + Delta sz_l sz_{l+1}) - lam sum_l sz_l

on a ring of ``N`` sites, so that a positive field favours up spins and the
fully polarised state wins at large ``lam``.  ``r`` counts down spins and the
total magnetisation is ``S^z = N/2 - r``; within a sector the field only adds
``-2 lam S^z``.

A configuration is a bit mask: site ``l`` (0-based) is down when bit
``N-1-l`` is set.  With this ordering the mask is also the index of the basis
state in the full ``2**N`` tensor-product space with site 0 most significant,
which makes partial traces over the leading sites a plain reshape.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    BetheSolverError,
    BlockTooLargeError,
    InvalidRootError,
    UseEDPathError,
)
from .xy_core import _xlog2x

log = logging.getLogger(__name__)

__all__ = [
    "XXZParams",
    "BetheSolution",
    "RingState",
    "ReducedBlock",
    "SectorSolution",
    "GlobalGroundState",
    "ground_quantum_numbers",
    "bethe_phase",
    "solve_bethe",
    "bethe_state",
    "sector_basis",
    "sector_hamiltonian",
    "ed_ground_state",
    "ed_sector_state",
    "sector_ground_energy",
    "sector_ground_energies",
    "crossing_table",
    "global_ground_state",
    "level_crossings",
    "reduce_block",
    "ring_entropy_curve",
]

DEGENERACY_TOL = 1e-10
DENSE_SECTOR_LIMIT = 4096
MAX_SECTOR_DIM = 200_000
MAX_PERMUTATION_R = 7
MAX_BLOCK_QUBITS = 16
COINCIDENT_K = 1e-8


@dataclass(frozen=True)
class XXZParams:
    """Anisotropy ``delta``, field ``lam``, even ring size ``N`` and coupling ``J``.

    ``N = 2`` is accepted (the two bonds of the ring then coincide).
    """

    delta: float
    lam: float
    N: int
    J: float = 1.0

    def __post_init__(self):
        for name in ("delta", "lam", "J"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        N = int(self.N)
        if N != self.N or N < 2 or N % 2 or N > 20:
            raise ValueError(f"N must be an even integer in [2, 20], got {self.N!r}")
        object.__setattr__(self, "N", N)

    def with_field(self, lam: float) -> "XXZParams":
        return XXZParams(self.delta, lam, self.N, self.J)


def _check_sector(N, r):
    if not (0 <= r <= N // 2):
        raise ValueError(f"need 0 <= r <= N/2, got r={r} for N={N}")


def _field_shift(params: XXZParams, r: int) -> float:
    return -2.0 * params.lam * (params.N / 2 - r)


# ---------------------------------------------------------------------------
# Bethe ansatz
# ---------------------------------------------------------------------------


def ground_quantum_numbers(N: int, r: int) -> List[int]:
    """Bethe quantum numbers ``N/2 - r - 1 + 2i``, ``i = 1..r``, of the sector ground state."""
    _check_sector(N, r)
    return [N // 2 - r - 1 + 2 * i for i in range(1, r + 1)]


def bethe_phase(ki, kj, delta):
    """Two-magnon scattering phase ``theta(ki, kj)``, antisymmetric in its arguments.

    ``cot(theta/2) = Delta sin(d) / (cos(s) - Delta cos(d))`` with
    ``d = (ki - kj)/2`` and ``s = (ki + kj)/2``; the branch is the principal
    one of ``2 arctan``, in ``(-pi, pi)``.
    """
    ki = np.asarray(ki, dtype=float)
    kj = np.asarray(kj, dtype=float)
    d = 0.5 * (ki - kj)
    s = 0.5 * (ki + kj)
    num = delta * np.sin(d)
    den = np.cos(s) - delta * np.cos(d)
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = 2.0 * np.arctan(den / num)
    theta = np.where(num == 0.0, np.pi * np.sign(den) * np.sign(d + 0.0), theta)
    return theta


def _phase_jacobian(ki, kj, delta):
    # derivatives of theta(ki, kj) with respect to ki and kj
    d = 0.5 * (ki - kj)
    s = 0.5 * (ki + kj)
    num = delta * np.sin(d)
    den = np.cos(s) - delta * np.cos(d)
    dnum_i = 0.5 * delta * np.cos(d)
    dden_i = -0.5 * np.sin(s) + 0.5 * delta * np.sin(d)
    dden_j = -0.5 * np.sin(s) - 0.5 * delta * np.sin(d)
    norm = num * num + den * den
    with np.errstate(divide="ignore", invalid="ignore"):
        di = 2.0 * (num * dden_i - den * dnum_i) / norm
        dj = 2.0 * (num * dden_j + den * dnum_i) / norm
    return di, dj


@dataclass(frozen=True)
class BetheSolution:
    """Solution of the Bethe equations in the sector with ``r`` down spins.

    ``energy`` is measured from the polarised state ``E_F = J N Delta/2 - lam N``.
    """

    params: XXZParams
    r: int
    quantum_numbers: Tuple[int, ...]
    momenta: np.ndarray
    phases: np.ndarray
    energy: float
    residual: float

    @property
    def total_energy(self) -> float:
        p = self.params
        return p.J * p.N * p.delta / 2 - p.lam * p.N + self.energy


def _bethe_system(k, lam_q, N, delta):
    ki = k[:, None]
    kj = k[None, :]
    theta = bethe_phase(ki, kj, delta)
    np.fill_diagonal(theta, 0.0)
    F = N * k - 2.0 * np.pi * lam_q - theta.sum(axis=1)
    return F, theta


def _bethe_jacobian(k, N, delta):
    r = k.size
    di, dj = _phase_jacobian(k[:, None], k[None, :], delta)
    np.fill_diagonal(di, 0.0)
    np.fill_diagonal(dj, 0.0)
    jac = -dj
    jac[np.diag_indices(r)] = N - di.sum(axis=1)
    return jac


def solve_bethe(params: XXZParams, r: int, tol: float = 1e-10, max_iter: int = 200,
                quantum_numbers: Optional[Sequence[int]] = None) -> BetheSolution:
    """Solve ``N k_i = 2 pi lam_i + sum_{j != i} theta_ij`` for the sector ground state.

    Damped Newton from the free-magnon guess ``k_i = 2 pi lam_i / N``, with a
    damped fixed-point iteration as fallback.

    Raises
    ------
    BetheSolverError
        Neither iteration reached ``tol``.
    InvalidRootError
        Converged to coincident momenta.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    N, delta = params.N, params.delta
    _check_sector(N, r)
    q = np.array(ground_quantum_numbers(N, r) if quantum_numbers is None else quantum_numbers, float)
    if q.size != r:
        raise ValueError("need one quantum number per down spin")
    k = 2.0 * np.pi * q / N

    best_k, best_res = k.copy(), math.inf
    if r:
        k, res = _newton(k, q, N, delta, tol, max_iter)
        if res < best_res:
            best_k, best_res = k, res
        if best_res > tol:
            log.debug("Newton stalled at residual %.3e; trying fixed-point sweeps", best_res)
            k, res = _fixed_point(2.0 * np.pi * q / N, q, N, delta, tol, 50 * max_iter)
            if res < best_res:
                best_k, best_res = k, res
        if best_res > tol:
            raise BetheSolverError(f"Bethe equations (N={N}, r={r}, Delta={delta}) did not converge", best_res)
    else:
        best_res = 0.0
    k = best_k
    if r > 1:
        gaps = np.abs(k[:, None] - k[None, :])[np.triu_indices(r, 1)]
        if gaps.min() < COINCIDENT_K:
            raise InvalidRootError(f"coincident momenta (min separation {gaps.min():.3e})")
    F, theta = _bethe_system(k, q, N, delta)
    theta = 0.5 * (theta - theta.T)
    energy = -2.0 * params.J * float(np.sum(delta - np.cos(k))) + 2.0 * params.lam * r
    k.setflags(write=False)
    theta.setflags(write=False)
    return BetheSolution(params, r, tuple(int(v) for v in q), k, theta, energy, float(np.max(np.abs(F), initial=0.0)))


def _newton(k, q, N, delta, tol, max_iter):
    F, _ = _bethe_system(k, q, N, delta)
    res = float(np.max(np.abs(F)))
    for _ in range(max_iter):
        if res <= tol:
            break
        jac = _bethe_jacobian(k, N, delta)
        try:
            step = np.linalg.solve(jac, -F)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        t = 1.0
        while t > 1e-6:
            k_new = k + t * step
            F_new, _ = _bethe_system(k_new, q, N, delta)
            res_new = float(np.max(np.abs(F_new)))
            if np.isfinite(res_new) and res_new < res:
                break
            t *= 0.5
        else:
            break
        k, F, res = k_new, F_new, res_new
    return k, res


def _fixed_point(k, q, N, delta, tol, max_iter, mix=0.5):
    res = math.inf
    for _ in range(max_iter):
        F, theta = _bethe_system(k, q, N, delta)
        res = float(np.max(np.abs(F)))
        if res <= tol or not np.isfinite(res):
            break
        k = (1.0 - mix) * k + mix * (2.0 * np.pi * q + theta.sum(axis=1)) / N
    return k, res


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _sector_basis_cached(N, r):
    masks = np.array([sum(1 << (N - 1 - p) for p in c) for c in itertools.combinations(range(N), r)],
                     dtype=np.int64)
    masks.sort()
    masks.setflags(write=False)
    return masks


def sector_basis(N: int, r: int) -> np.ndarray:
    """Sorted bit masks of the ``C(N, r)`` configurations with ``r`` down spins."""
    _check_sector(N, r)
    return _sector_basis_cached(N, r)


def _positions(masks, N):
    # down-spin sites in increasing order for every mask, shape (n, r)
    bits = ((masks[:, None] >> (N - 1 - np.arange(N))[None, :]) & 1).astype(bool)
    r = int(bits[0].sum()) if masks.size else 0
    pos = np.nonzero(bits)[1].reshape(masks.size, r)
    return pos


def _rotate(masks, N):
    # translate every down spin from site l to site l+1 (mod N)
    full = (1 << N) - 1
    return ((masks >> 1) | ((masks & 1) << (N - 1))) & full


@dataclass(frozen=True)
class RingState:
    """Normalised amplitudes over :func:`sector_basis` ``(N, r)``."""

    N: int
    r: int
    amplitudes: np.ndarray
    energy: float

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        norm = np.linalg.norm(a)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValueError("state has zero or non-finite norm")
        if abs(norm - 1.0) > 1e-10:
            a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def basis(self) -> np.ndarray:
        return sector_basis(self.N, self.r)

    def translated(self) -> np.ndarray:
        """Amplitudes of the state translated by one site, in the same basis order."""
        basis = self.basis
        idx = np.searchsorted(basis, _rotate(basis, self.N))
        out = np.empty_like(self.amplitudes)
        out[idx] = self.amplitudes
        return out

    def full_vector(self) -> np.ndarray:
        psi = np.zeros(1 << self.N, dtype=complex)
        psi[self.basis] = self.amplitudes
        return psi


def _fix_phase(v):
    i = int(np.argmax(np.abs(v) > np.abs(v).max() * (1 - 1e-9)))
    return v * (abs(v[i]) / v[i])


def bethe_state(solution: BetheSolution) -> RingState:
    """Coordinate Bethe wavefunction summed over all ``r!`` permutations."""
    r, N = solution.r, solution.params.N
    if r > MAX_PERMUTATION_R:
        raise UseEDPathError(f"r = {r} needs {math.factorial(r)} permutations; use the ED state")
    basis = sector_basis(N, r)
    if r == 0:
        return RingState(N, 0, np.ones(1), solution.total_energy)
    n = _positions(basis, N).astype(float)  # (dim, r)
    k, theta = solution.momenta, solution.phases
    amp = np.zeros(basis.size, dtype=complex)
    iu = np.triu_indices(r, 1)
    for perm in itertools.permutations(range(r)):
        p = np.array(perm)
        phase = 0.5 * float(np.sum(theta[p[:, None], p[None, :]][iu]))
        amp += np.exp(1j * (n @ k[p] + phase))
    return RingState(N, r, _fix_phase(amp / np.linalg.norm(amp)), solution.total_energy)


# ---------------------------------------------------------------------------
# exact diagonalization
# ---------------------------------------------------------------------------


def sector_hamiltonian(params: XXZParams, r: int) -> sp.csr_matrix:
    """Sparse Hamiltonian in the ``r`` sector (field term included)."""
    N, J, delta = params.N, params.J, params.delta
    basis = sector_basis(N, r)
    dim = basis.size
    diag = np.full(dim, _field_shift(params, r))
    rows, cols, vals = [np.arange(dim)], [np.arange(dim)], []
    for l in range(N):
        b1, b2 = 1 << l, 1 << ((l + 1) % N)
        s1 = (basis & b1) != 0
        s2 = (basis & b2) != 0
        same = s1 == s2
        diag += 0.5 * J * delta * np.where(same, 1.0, -1.0)
        hop = np.flatnonzero(~same)
        target = np.searchsorted(basis, basis[hop] ^ (b1 | b2))
        rows.append(target)
        cols.append(hop)
        vals.append(np.full(hop.size, J))
    vals.insert(0, diag)
    H = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(dim, dim))
    H.sum_duplicates()
    return H


def _translation_matrix(N, r):
    basis = sector_basis(N, r)
    idx = np.searchsorted(basis, _rotate(basis, N))
    return sp.csr_matrix((np.ones(basis.size), (idx, np.arange(basis.size))), shape=(basis.size,) * 2)


@dataclass(frozen=True)
class SectorSolution:
    state: RingState
    degeneracy: int
    gap: float
    momentum_index: Optional[int] = None


def ed_sector_state(params: XXZParams, r: int, which: str = "SA") -> SectorSolution:
    """Lowest (``which='SA'``) or highest (``'LA'``) sector eigenstate.

    Degenerate multiplets are resolved by diagonalising the translation
    operator inside them and keeping the lowest momentum index ``q`` in
    ``0..N-1`` (eigenvalue ``exp(2 pi i q / N)``); a warning is emitted.
    """
    N = params.N
    _check_sector(N, r)
    basis = sector_basis(N, r)
    dim = basis.size
    if dim > MAX_SECTOR_DIM:
        raise MemoryError(f"sector dimension {dim} exceeds {MAX_SECTOR_DIM}")
    H = sector_hamiltonian(params, r)
    if dim == 1:
        e = float(H[0, 0])
        return SectorSolution(RingState(N, r, np.ones(1), e), 1, math.inf, 0)
    sign = 1.0 if which == "SA" else -1.0
    k = min(dim - 1, 6) if dim > DENSE_SECTOR_LIMIT else dim
    while True:
        if dim <= DENSE_SECTOR_LIMIT:
            w, v = np.linalg.eigh((sign * H).toarray())
        else:
            v0 = np.cos(np.arange(dim) * 0.7) + 1.0
            w, v = spla.eigsh(sign * H, k=k, which="SA", v0=v0, tol=1e-13)
            order = np.argsort(w)
            w, v = w[order], v[:, order]
        deg = int(np.sum(w - w[0] < DEGENERACY_TOL))
        if deg < w.size or w.size == dim:
            break
        k = min(dim - 1, 2 * k)
    gap = float(w[deg] - w[0]) if deg < w.size else math.inf
    e0 = float(sign * w[0])
    q_index = None
    if deg == 1:
        vec = v[:, 0].astype(complex)
    else:
        warnings.warn(f"{deg}-fold degenerate sector ground state (N={N}, r={r}); "
                      "choosing the lowest momentum index", RuntimeWarning, stacklevel=2)
        sub = v[:, :deg].astype(complex)
        T = _translation_matrix(N, r)
        M = sub.conj().T @ (T @ sub)
        tw, tv = np.linalg.eig(M)
        q = np.mod(np.rint(np.angle(tw) * N / (2 * np.pi)).astype(int), N)
        j = int(np.argmin(q))
        q_index = int(q[j])
        vec = sub @ tv[:, j]
    vec = _fix_phase(vec / np.linalg.norm(vec))
    return SectorSolution(RingState(N, r, vec, e0), deg, gap, q_index)


def ed_ground_state(params: XXZParams, r: int) -> RingState:
    """Lowest eigenvector of the periodic ring in the ``r`` sector."""
    return ed_sector_state(params, r).state


def sector_ground_energy(params: XXZParams, r: int) -> float:
    """Lowest eigenvalue in the ``r`` sector (field term included)."""
    H = sector_hamiltonian(params, r)
    dim = H.shape[0]
    if dim <= DENSE_SECTOR_LIMIT:
        return float(np.linalg.eigvalsh(H.toarray())[0])
    v0 = np.cos(np.arange(dim) * 0.7) + 1.0
    return float(spla.eigsh(H, k=1, which="SA", v0=v0, tol=1e-13)[0][0])


def _sector_energy_args(args):
    return sector_ground_energy(*args)


def sector_ground_energies(params: XXZParams, mapper=None) -> np.ndarray:
    """Ground energy of every sector ``r = 0..N/2`` at the parameter field.

    Zero-field energies are cached; ``mapper`` may be an ordered parallel map.
    """
    zero = params.with_field(0.0)
    if mapper is None:
        e0 = _zero_field_energies(zero)
    else:
        e0 = tuple(mapper(_sector_energy_args, [(zero, r) for r in range(params.N // 2 + 1)]))
    return np.array([e0[r] + _field_shift(params, r) for r in range(params.N // 2 + 1)])


@lru_cache(maxsize=32)
def _zero_field_energies(params: XXZParams) -> Tuple[float, ...]:
    return tuple(sector_ground_energy(params, r) for r in range(params.N // 2 + 1))


@dataclass(frozen=True)
class GlobalGroundState:
    state: RingState
    r: int
    tied_sectors: Tuple[int, ...] = ()

    @property
    def at_crossing(self) -> bool:
        return len(self.tied_sectors) > 1


def global_ground_state(params: XXZParams, mapper=None) -> GlobalGroundState:
    """Ground state over all magnetisation sectors.

    When sectors tie within 1e-10 (a level crossing) all of them are listed in
    ``tied_sectors`` and the state of the largest ``r`` among them is returned.
    """
    E = sector_ground_energies(params, mapper)
    emin = E.min()
    tied = tuple(int(r) for r in np.flatnonzero(E - emin < DEGENERACY_TOL))
    r_star = max(tied)
    state = ed_sector_state(params, r_star).state
    return GlobalGroundState(state, r_star, tied if len(tied) > 1 else ())


def _r_star(e0, N, lam):
    E = np.array([e0[r] - 2.0 * lam * (N / 2 - r) for r in range(len(e0))])
    return int(np.argmin(E))


def crossing_table(params: XXZParams, resolution: float = 1e-6, mapper=None
                   ) -> List[Tuple[float, int, int]]:
    """``(lam_c, r_below, r_above)`` for every change of the ground-state sector at ``lam > 0``.

    The sector energies are linear in the field, so the ground sector is
    non-increasing in ``lam`` and each change is isolated by bisection on
    ``r*(lam)`` to within ``resolution``.  The field of ``params`` is ignored.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    N = params.N
    e0 = tuple(sector_ground_energies(params.with_field(0.0), mapper))
    # beyond every pairwise intersection the polarised sector wins
    hi = max([(e0[0] - e0[r]) / (2.0 * r) for r in range(1, len(e0))] + [0.0]) + 1.0
    rows: List[Tuple[float, int, int]] = []

    def bisect(a, ra, b, rb):
        if ra == rb:
            return
        if b - a <= resolution:
            rows.append((float(0.5 * (a + b)), int(ra), int(rb)))
            return
        m = 0.5 * (a + b)
        rm = _r_star(e0, N, m)
        bisect(a, ra, m, rm)
        bisect(m, rm, b, rb)

    bisect(0.0, _r_star(e0, N, 0.0), hi, _r_star(e0, N, hi))
    return rows


def level_crossings(params: XXZParams, resolution: float = 1e-6, mapper=None) -> List[float]:
    """Fields at which the ground-state sector changes, in increasing order.

    Only ``lam > 0`` is scanned.  The last entry is the saturation field
    beyond which the polarised state wins.
    """
    return [row[0] for row in crossing_table(params, resolution, mapper)]


# ---------------------------------------------------------------------------
# reduced blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedBlock:
    L: int
    eigenvalues: np.ndarray
    entropy: float


def reduce_block(state: RingState, L: int) -> ReducedBlock:
    """Spectrum and entropy of the reduced density matrix of sites ``0..L-1``.

    Uses the Schmidt decomposition of the amplitude vector reshaped to
    ``(2**L, 2**(N-L))``.
    """
    N = state.N
    if not 1 <= L <= N - 1:
        raise ValueError(f"need 1 <= L <= N-1, got L={L}")
    if min(L, N - L) > MAX_BLOCK_QUBITS:
        raise BlockTooLargeError(f"block of {L} sites exceeds the {MAX_BLOCK_QUBITS}-qubit guard")
    psi = state.full_vector().reshape(1 << L, 1 << (N - L))
    s = np.linalg.svd(psi, compute_uv=False)
    p = s * s
    p = p / p.sum()
    p.setflags(write=False)
    return ReducedBlock(L, p, float(np.sum(_xlog2x(p))))


def ring_entropy_curve(state: RingState, L_values: Optional[Sequence[int]] = None) -> List[Tuple[int, float]]:
    """``(L, S_L)`` for the requested block sizes (default ``1..N-1``)."""
    Ls = range(1, state.N) if L_values is None else L_values
    return [(L, reduce_block(state, L).entropy) for L in Ls]
