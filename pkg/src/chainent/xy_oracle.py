"""Finite open XY chains: free-fermion correlation matrix and dense diagonalization.

These are independent checks on the infinite-chain route in :mod:`chainent.xy_core`.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import DegenerateGroundStateError
from .xy_core import MajoranaCorrelationMatrix, XYParams, _xlog2x, block_entropy, mode_spectrum

log = logging.getLogger(__name__)

GAP_THRESHOLD = 1e-10
DENSE_SITE_LIMIT = 10


def coupling_matrix(params: XYParams, N: int) -> np.ndarray:
    """Real antisymmetric ``2N x 2N`` Majorana coupling matrix of the open chain.

    With ``a_{2l-1} = (prod sz) sx_l`` and ``a_{2l} = (prod sz) sy_l`` the
    Hamiltonian is ``(i/4) sum a_m A_mn a_n`` up to an overall positive scale.
    """
    if N < 1:
        raise ValueError("N must be positive")
    g, lam = params.gamma, params.lam
    a0 = np.array([[0.0, 2.0 * lam], [-2.0 * lam, 0.0]])
    a1 = np.array([[0.0, -(1.0 - g)], [1.0 + g, 0.0]])
    A = np.zeros((2 * N, 2 * N))
    for l in range(N):
        A[2 * l:2 * l + 2, 2 * l:2 * l + 2] = a0
        if l + 1 < N:
            A[2 * l:2 * l + 2, 2 * l + 2:2 * l + 4] = a1
            A[2 * l + 2:2 * l + 4, 2 * l:2 * l + 2] = -a1.T
    return A


def finite_chain_correlation(params: XYParams, N: int, gap_threshold: float = GAP_THRESHOLD
                             ) -> MajoranaCorrelationMatrix:
    """Ground-state Majorana correlation matrix ``Z sgn(T) Z^T`` of the open chain.

    ``A = Z T Z^T`` is the real Schur form; ``sgn`` acts on the 2x2 blocks.

    Raises
    ------
    DegenerateGroundStateError
        If some normal mode energy is below ``gap_threshold`` (degenerate
        ground state, e.g. Majorana edge modes).
    """
    A = coupling_matrix(params, N)
    T, Z = sla.schur(A, output="real")
    n = T.shape[0]
    sub = np.abs(np.diag(T, -1))
    S = np.zeros_like(T)
    t_abs = []
    k = 0
    while k < n:
        if k + 1 < n and sub[k] > 0.0:
            t = 0.5 * (T[k, k + 1] - T[k + 1, k])
            s = 1.0 if t > 0 else -1.0
            S[k, k + 1], S[k + 1, k] = s, -s
            t_abs.append(abs(t))
            k += 2
        else:
            # isolated zero eigenvalue of an antisymmetric matrix
            t_abs.append(0.0)
            k += 1
    t_abs = np.array(t_abs)
    if t_abs.min() < gap_threshold:
        # energies in the normalisation of coupling_matrix: E = -sum|t|/2 + excitations
        e0 = -0.5 * float(t_abs.sum())
        raise DegenerateGroundStateError("open chain has a (near) zero mode", (e0, e0 + float(t_abs.min())))
    gam = Z @ S @ Z.T
    return MajoranaCorrelationMatrix(0.5 * (gam - gam.T))


def finite_chain_block(params: XYParams, N: int, L: int) -> MajoranaCorrelationMatrix:
    """Correlation matrix of the first ``L`` sites of an open chain of ``N`` sites."""
    if not 1 <= L <= N:
        raise ValueError("need 1 <= L <= N")
    return finite_chain_correlation(params, N).restrict(L)


_SX = sp.csr_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
_SY_IM = sp.csr_matrix(np.array([[0.0, -1.0], [1.0, 0.0]]))  # sy = i * this
_SZ = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))


def _site_op(op, l, N):
    # site 0 is the most significant tensor factor
    return sp.kron(sp.kron(sp.identity(1 << l, format="csr"), op),
                   sp.identity(1 << (N - l - 1), format="csr"), format="csr")


def dense_hamiltonian(params: XYParams, N: int) -> sp.csr_matrix:
    """Open-chain XY Hamiltonian on ``2**N`` states (real sparse)."""
    g, lam = params.gamma, params.lam
    dim = 1 << N
    H = sp.csr_matrix((dim, dim))
    for l in range(N - 1):
        xx = _site_op(_SX, l, N) @ _site_op(_SX, l + 1, N)
        # sy sy = (i)^2 (Y Y) with Y real
        yy = -(_site_op(_SY_IM, l, N) @ _site_op(_SY_IM, l + 1, N))
        H = H - 0.5 * (0.5 * (1.0 + g) * xx + 0.5 * (1.0 - g) * yy)
    for l in range(N):
        H = H - 0.5 * lam * _site_op(_SZ, l, N)
    return H.tocsr()


def dense_ground_state(params: XYParams, N: int, gap_threshold: float = GAP_THRESHOLD):
    """Ground energy and vector of the open chain by exact diagonalization."""
    H = dense_hamiltonian(params, N)
    if N <= DENSE_SITE_LIMIT:
        w, v = np.linalg.eigh(H.toarray())
    else:
        w, v = spla.eigsh(H, k=2, which="SA", tol=1e-13)
        order = np.argsort(w)
        w, v = w[order], v[:, order]
    if w[1] - w[0] < gap_threshold:
        raise DegenerateGroundStateError("open-chain ground state is degenerate", (w[0], w[1]))
    return float(w[0]), v[:, 0]


def schmidt_probabilities(state: np.ndarray, L: int, N: int) -> np.ndarray:
    """Squared Schmidt coefficients for the first ``L`` of ``N`` sites, decreasing."""
    psi = np.asarray(state).reshape(1 << L, 1 << (N - L))
    s = np.linalg.svd(psi, compute_uv=False)
    p = s * s
    return p / p.sum()


def dense_block_entropy(params: XYParams, N: int, L: int) -> float:
    """Entropy in bits of the first ``L`` sites, from the exact ground state."""
    return dense_block_entropies(params, N, [L])[0]


def dense_block_entropies(params: XYParams, N: int, L_values) -> list:
    """Entropies for several leading blocks from a single diagonalization."""
    _, psi = dense_ground_state(params, N)
    return [float(np.sum(_xlog2x(schmidt_probabilities(psi, L, N)))) for L in L_values]


DENSE_CHECK_MAX_SITES = 14
ORACLE_AGREEMENT = 1e-8


def finite_chain_oracle(params: XYParams, N: int, L: int, dense_check: bool | None = None):
    """Entropy and modes of the first ``L`` sites of an open chain of ``N`` sites.

    The correlation-matrix result is cross-checked against the dense ground
    state when ``N <= 14`` (or when ``dense_check`` is forced).

    Returns
    -------
    entropy : float
    modes : chainent.xy_core.ModeSpectrum

    Raises
    ------
    DegenerateGroundStateError
    AssertionError
        If the two routes disagree by more than 1e-8.
    """
    modes = mode_spectrum(finite_chain_block(params, N, L))
    entropy = block_entropy(modes)
    if dense_check is None:
        dense_check = N <= DENSE_CHECK_MAX_SITES
    if dense_check:
        dense = dense_block_entropy(params, N, L)
        if abs(dense - entropy) > ORACLE_AGREEMENT:
            raise AssertionError(
                f"oracle mismatch at {params}, N={N}, L={L}: {entropy!r} vs dense {dense!r}")
    return entropy, modes
