"""Infinite XY chain: correlation kernel, Majorana correlation matrix and block entropy.

The ground state of

    H = -1/2 sum_l [ (1+gamma)/2 sx_l sx_{l+1} + (1-gamma)/2 sy_l sy_{l+1} + lam sz_l ]

is Gaussian in the Jordan-Wigner Majorana operators.  For a block of ``L``
contiguous spins it is fully described by a ``2L x 2L`` real skew-symmetric
block-Toeplitz matrix whose 2x2 blocks are

    Pi_l = [[0, g_l], [-g_{-l}, 0]],    block (i, j) = Pi_{j-i},

with the kernel

    g_l = 1/(2 pi) int_0^{2 pi} dphi e^{-i l phi} (cos phi - lam - i gamma sin phi) / Lambda_phi.

The singular values of that matrix come in equal pairs ``nu_m``; each pair is
an independent fermionic mode with occupation eigenvalues ``(1 +- nu_m)/2``.
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import (
    IncompleteKernelError,
    InvalidCaseError,
    NeedMoreEigenvaluesError,
    NumericalDegeneracyError,
    QuadratureError,
    SeriesDomainError,
)

__all__ = [
    "XYParams",
    "CorrelationKernel",
    "MajoranaCorrelationMatrix",
    "ModeSpectrum",
    "BlockSpectrum",
    "ANALYTIC_CASES",
    "compute_g_numeric",
    "compute_g_analytic",
    "correlation_kernel",
    "build_correlation_matrix",
    "mode_spectrum",
    "binary_entropy",
    "block_entropy",
    "rho_top_spectrum",
    "rho_full_spectrum",
    "effective_rank",
    "effective_rank_adaptive",
    "xy_entropy_curve",
]

ANALYTIC_CASES = (
    "ferromagnetic-limit",
    "ising-field",
    "ising-critical",
    "xx-field",
    "xy-critical",
    "xy-zero-field",
)

SERIES_TOL = 1e-14
SERIES_MAX_TERMS = 10**6
NU_CLAMP_WINDOW = 1e-9
PAIR_TOL = 1e-8
FULL_ENUMERATION_MAX_MODES = 22


@dataclass(frozen=True)
class XYParams:
    """Anisotropy ``gamma`` in [0, 1] and transverse field ``lam`` >= 0."""

    gamma: float
    lam: float

    def __post_init__(self):
        g, lam = float(self.gamma), float(self.lam)
        if not (math.isfinite(g) and 0.0 <= g <= 1.0):
            raise ValueError(f"gamma must be finite and in [0, 1], got {self.gamma!r}")
        if not (math.isfinite(lam) and lam >= 0.0):
            raise ValueError(f"lam must be finite and >= 0, got {self.lam!r}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "lam", lam)


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------


def _unit_parts(gamma, lam):
    """Real and imaginary parts of (cos phi - lam - i gamma sin phi)/Lambda_phi.

    At zeros of Lambda the value is replaced by 0 (measure-zero set).
    """

    def re(phi):
        a = math.cos(phi) - lam
        m = math.hypot(a, gamma * math.sin(phi))
        return a / m if m > 0.0 else 0.0

    def im(phi):
        b = gamma * math.sin(phi)
        m = math.hypot(math.cos(phi) - lam, b)
        return -b / m if m > 0.0 else 0.0

    return re, im


def _quad(f, a, b, epsabs, weight=None, wvar=None, limit=2000):
    kwargs = dict(epsabs=epsabs, epsrel=0.0, limit=limit, full_output=1)
    if weight is not None:
        kwargs.update(weight=weight, wvar=wvar, maxp1=200)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        res = integrate.quad(f, a, b, **kwargs)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > epsabs:
        raise QuadratureError(f"quadrature on [{a:.6g}, {b:.6g}] did not converge", abserr)
    return value, abserr


def _breakpoints(params, upper):
    pts = [0.0, upper]
    if params.gamma == 0.0 and params.lam < 1.0:
        phic = math.acos(params.lam)
        pts.append(phic)
        if upper > math.pi:
            pts.append(2.0 * math.pi - phic)
    if upper > math.pi:
        pts.append(math.pi)
    return sorted(set(pts))


def _osc_integral(f, kind, l, pts, epsabs):
    """int f(phi) trig(l phi) over the pieces delimited by ``pts``."""
    total, err = 0.0, 0.0
    n = len(pts) - 1
    for a, b in zip(pts[:-1], pts[1:]):
        if l == 0:
            if kind == "sin":
                continue
            v, e = _quad(f, a, b, epsabs / n)
        else:
            v, e = _quad(f, a, b, epsabs / n, weight=kind, wvar=abs(l))
            if kind == "sin" and l < 0:
                v = -v
        total += v
        err += e
    return total, err


def compute_g_numeric(params: XYParams, l: int, tol: float = 1e-10, check_imag: bool = True) -> float:
    """Kernel coefficient ``g_l`` by adaptive Gauss-Kronrod / Clenshaw-Curtis quadrature.

    The real part reduces to ``(1/pi) int_0^pi [(cos phi - lam) cos(l phi) -
    gamma sin phi sin(l phi)] / Lambda_phi``; for ``gamma == 0`` and
    ``lam <= 1`` the sign jump at ``arccos(lam)`` is used as a breakpoint.

    Parameters
    ----------
    params : XYParams
    l : int
        Block offset.
    tol : float
        Absolute error target for ``g_l``.
    check_imag : bool
        Also integrate the imaginary part over the full period and require it
        to vanish within ``tol``.

    Raises
    ------
    QuadratureError
        If QUADPACK cannot reach ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    l = int(l)
    re, im = _unit_parts(params.gamma, params.lam)
    pts = _breakpoints(params, math.pi)
    # the integrand is split into cos and sin weighted parts, each to pi * tol / 2
    eps = 0.5 * math.pi * tol
    cpart, _ = _osc_integral(re, "cos", l, pts, eps)
    spart = 0.0
    if params.gamma != 0.0:
        # Im(u) = -gamma sin(phi)/Lambda, and Re(e^{-il phi} u) has + Im(u) sin(l phi)
        spart, _ = _osc_integral(im, "sin", l, pts, eps)
    value = (cpart + spart) / math.pi

    if check_imag:
        full = _breakpoints(params, 2.0 * math.pi)
        eps2 = math.pi * tol
        # Im(e^{-il phi} u) = Im(u) cos(l phi) - Re(u) sin(l phi)
        c2, _ = _osc_integral(im, "cos", l, full, eps2) if params.gamma != 0.0 else (0.0, 0.0)
        s2, _ = _osc_integral(re, "sin", l, full, eps2)
        imag = (c2 - s2) / (2.0 * math.pi)
        if abs(imag) >= tol:
            raise QuadratureError(f"imaginary part of g_{l} does not vanish ({imag:.3e})", abs(imag))
    return value


class _CentralBinomial:
    """Lazily extended cache of C(2m, m)/4^m."""

    def __init__(self):
        self._vals = [1.0]

    def __call__(self, m):
        if m < 0:
            return 0.0
        vals = self._vals
        while len(vals) <= m:
            k = len(vals)
            vals.append(vals[-1] * (2 * k - 1) / (2 * k))
        return vals[m]


_BINOM = _CentralBinomial()


def _ising_field_series(l, lam):
    # sqrt(1 - lam z) (1 - lam/z)^{-1/2} / z, coefficient of z^l
    b = _BINOM
    m = max(0, -l - 1)
    total = 0.0
    for count in range(SERIES_MAX_TERMS):
        coeff = (b(m + l + 1) - b(m + l)) * b(m)
        term = coeff * lam ** (2 * m + l + 1)
        total += term
        if abs(term) < SERIES_TOL:
            return total
        m += 1
    raise SeriesDomainError(f"Ising-field series for l={l}, lam={lam} did not converge")


def _l_series(l, gamma):
    """L_l(gamma) = (2/pi) int_0^{pi/2} cos(l phi)/sqrt(cos^2 + gamma^2 sin^2), l even."""
    alpha = (1.0 - gamma) / (1.0 + gamma)
    n = abs(l) // 2
    if alpha >= 1.0:
        raise SeriesDomainError("L_l series requires gamma > 0")
    b = _BINOM
    acc = b(0) * b(n) - math.log1p(-alpha * alpha) / math.pi
    tail = 0.0
    a2 = alpha * alpha
    power = 1.0
    for r in range(1, SERIES_MAX_TERMS):
        power *= a2
        term = power * (1.0 / (r * math.pi) - b(r) * b(r + n))
        tail += term
        if abs(term) < SERIES_TOL:
            break
    else:
        raise SeriesDomainError(f"L_{l} series for gamma={gamma} did not converge")
    sign = -1.0 if n % 2 else 1.0
    return sign * 2.0 / (1.0 + gamma) * alpha**n * (acc - tail)


def compute_g_analytic(params: XYParams, l: int, case: str) -> float:
    """Closed-form kernel coefficient for the special cases with known expressions.

    ``case`` is one of :data:`ANALYTIC_CASES`.  Signs follow the closed
    forms literally; ``ferromagnetic-limit`` and ``xy-zero-field`` carry the
    opposite global sign to :func:`compute_g_numeric`, which does not affect
    any entropy.
    """
    l = int(l)
    g, lam = params.gamma, params.lam
    if case == "ferromagnetic-limit":
        return 1.0 if l == 0 else 0.0
    if case == "ising-field":
        if g != 1.0:
            raise InvalidCaseError("ising-field requires gamma = 1")
        if lam >= 1.0:
            raise SeriesDomainError("ising-field series converges only for |lam| < 1")
        return _ising_field_series(l, lam)
    if case == "ising-critical":
        if g != 1.0 or lam != 1.0:
            raise InvalidCaseError("ising-critical requires gamma = 1, lam = 1")
        return -1.0 / (math.pi * (l + 0.5))
    if case == "xx-field":
        if g != 0.0 or lam > 1.0:
            raise InvalidCaseError("xx-field requires gamma = 0 and lam <= 1")
        phic = math.acos(lam)
        if l == 0:
            return 2.0 * phic / math.pi - 1.0
        return 2.0 * math.sin(l * phic) / (l * math.pi)
    if case == "xy-critical":
        if lam != 1.0:
            raise InvalidCaseError("xy-critical requires lam = 1")

        def den(phi):
            return math.sqrt(math.sin(phi / 2) ** 2 + g * g * math.cos(phi / 2) ** 2)

        first, _ = _quad(lambda p: math.sin((l + 0.5) * p) / den(p), 0.0, math.pi, 1e-13)
        second = 0.0
        if g != 1.0:
            second, _ = _quad(lambda p: math.sin((l - 0.5) * p) / den(p), 0.0, math.pi, 1e-13)
        return -(g + 1.0) / (2.0 * math.pi) * first - (g - 1.0) / (2.0 * math.pi) * second
    if case == "xy-zero-field":
        if lam != 0.0:
            raise InvalidCaseError("xy-zero-field requires lam = 0")
        if g == 0.0:
            raise SeriesDomainError("xy-zero-field series diverges at gamma = 0; use xx-field")
        if l % 2 == 0:
            return 0.0
        return -(0.5 * (1.0 + g) * _l_series(l + 1, g) + 0.5 * (1.0 - g) * _l_series(l - 1, g))
    raise InvalidCaseError(f"unknown analytic case {case!r}")


@dataclass(frozen=True)
class CorrelationKernel:
    """Coefficients ``g_l`` for offsets ``-(L-1) .. L-1``.

    ``values[l + max_offset]`` holds ``g_l``.
    """

    values: np.ndarray
    method: str
    params: XYParams | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size % 2 != 1:
            raise ValueError("kernel values must be a 1-D array of odd length")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def max_offset(self) -> int:
        return (self.values.size - 1) // 2

    @property
    def max_block(self) -> int:
        return self.max_offset + 1

    def __getitem__(self, l):
        m = self.max_offset
        if abs(l) > m:
            raise IncompleteKernelError(f"offset {l} outside kernel range +-{m}")
        return float(self.values[l + m])

    def negated(self) -> "CorrelationKernel":
        return CorrelationKernel(-self.values, self.method, self.params)

    @classmethod
    def from_mapping(cls, g: dict, method="custom", params=None):
        m = max(abs(int(k)) for k in g)
        vals = np.zeros(2 * m + 1)
        for l in range(-m, m + 1):
            if l not in g:
                raise IncompleteKernelError(f"offset {l} missing from kernel mapping")
            vals[l + m] = g[l]
        return cls(vals, method, params)


def _auto_case(params):
    g, lam = params.gamma, params.lam
    if g == 0.0:
        return "xx-field" if lam <= 1.0 else "product-state"
    if g == 1.0 and lam == 1.0:
        return "ising-critical"
    if g == 1.0 and lam == 0.0:
        return "ising-field"
    return None


def _numeric_g(args):
    params, l, tol = args
    return compute_g_numeric(params, l, tol=tol, check_imag=False)


def correlation_kernel(params: XYParams, L: int, method: str = "auto", case: str | None = None,
                       tol: float = 1e-10, mapper=map) -> CorrelationKernel:
    """Kernel covering blocks up to ``L`` spins.

    ``method='auto'`` uses an exact closed form where one exists with the same
    sign as the integral (XX line, critical and zero-field Ising, the product
    state at ``gamma=0, lam>1``) and quadrature elsewhere.  ``'numeric'``
    always integrates; ``'analytic'`` uses ``case`` (inferred when omitted).
    ``mapper`` may be an ordered parallel map for the quadratures.
    """
    if L < 1:
        raise ValueError("L must be positive")
    offsets = range(-(L - 1), L)
    if method == "numeric":
        vals = list(mapper(_numeric_g, [(params, l, tol) for l in offsets]))
        return CorrelationKernel(np.array(vals), "numeric-quadrature", params)
    if method == "analytic":
        case = case or _auto_case(params)
        if case is None or case == "product-state":
            raise InvalidCaseError(f"no closed form selected for {params}")
        vals = [compute_g_analytic(params, l, case) for l in offsets]
        return CorrelationKernel(np.array(vals), case, params)
    if method != "auto":
        raise ValueError(f"unknown kernel method {method!r}")
    case = _auto_case(params)
    if case == "product-state":
        vals = np.zeros(2 * L - 1)
        vals[L - 1] = -1.0
        return CorrelationKernel(vals, "product-state", params)
    if case is None:
        return correlation_kernel(params, L, "numeric", tol=tol, mapper=mapper)
    return correlation_kernel(params, L, "analytic", case=case)


# ---------------------------------------------------------------------------
# correlation matrix and modes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MajoranaCorrelationMatrix:
    matrix: np.ndarray

    @property
    def L(self) -> int:
        return self.matrix.shape[0] // 2

    def restrict(self, L: int) -> "MajoranaCorrelationMatrix":
        """Leading ``L``-spin block (the kernel is translation invariant)."""
        return MajoranaCorrelationMatrix(self.matrix[: 2 * L, : 2 * L])


def build_correlation_matrix(kernel: CorrelationKernel, L: int) -> MajoranaCorrelationMatrix:
    """Block-Toeplitz ``2L x 2L`` matrix with block ``(i, j) = Pi_{j-i}``."""
    if L > kernel.max_block:
        raise IncompleteKernelError(
            f"block of {L} spins needs offsets +-{L - 1}, kernel has +-{kernel.max_offset}")
    m = kernel.max_offset
    i = np.arange(L)
    d = i[None, :] - i[:, None]  # j - i
    gam = np.zeros((2 * L, 2 * L))
    gam[0::2, 1::2] = kernel.values[d + m]
    gam[1::2, 0::2] = -kernel.values[-d + m]
    return MajoranaCorrelationMatrix(gam)


@dataclass(frozen=True)
class ModeSpectrum:
    """Mode parameters ``nu`` in [0, 1], decreasing."""

    nu: np.ndarray

    def __post_init__(self):
        v = np.array(self.nu, dtype=float).ravel()
        if v.size and (v.min() < 0.0 or v.max() > 1.0):
            raise NumericalDegeneracyError("mode values must lie in [0, 1]")
        v = np.sort(v)[::-1].copy()
        v.setflags(write=False)
        object.__setattr__(self, "nu", v)

    @property
    def L(self) -> int:
        return self.nu.size


def mode_spectrum(gamma_matrix: MajoranaCorrelationMatrix, skew_tol: float = 1e-10) -> ModeSpectrum:
    """Mode values from the paired singular values of the correlation matrix."""
    a = np.asarray(gamma_matrix.matrix, dtype=float)
    if np.max(np.abs(a + a.T), initial=0.0) > skew_tol:
        raise ValueError("correlation matrix is not skew-symmetric")
    s = np.linalg.svd(a, compute_uv=False)
    s = np.sort(s)[::-1]
    first, second = s[0::2], s[1::2]
    mismatch = np.max(np.abs(first - second), initial=0.0)
    if mismatch > PAIR_TOL:
        raise NumericalDegeneracyError(f"singular values do not pair up (mismatch {mismatch:.3e})")
    nu = 0.5 * (first + second)
    excess = nu.max(initial=0.0) - 1.0
    if excess > NU_CLAMP_WINDOW:
        raise NumericalDegeneracyError(f"mode value exceeds 1 by {excess:.3e}")
    return ModeSpectrum(np.clip(nu, 0.0, 1.0))


def binary_entropy(p) -> np.ndarray:
    """Base-2 binary entropy, evaluated as 0 at p in {0, 1}."""
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    return _xlog2x(p) + _xlog2x(q)


def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    ok = x > 1e-300
    out[ok] = -x[ok] * np.log2(x[ok])
    return out


def block_entropy(modes: ModeSpectrum) -> float:
    """Block entropy in bits, summed over independent modes."""
    nu = modes.nu
    p = 0.5 * (1.0 + nu)
    q = 0.5 * (1.0 - nu)
    return float(np.sum(_xlog2x(p) + _xlog2x(q)))


# ---------------------------------------------------------------------------
# spectrum of the reduced density matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockSpectrum:
    """Largest eigenvalues of the block density matrix.

    ``support_size`` is the dimension ``2**L`` of the block Hilbert space.
    """

    entropy: float
    top_eigenvalues: np.ndarray
    support_size: int
    truncation_weight: float = field(init=False)

    def __post_init__(self):
        v = np.asarray(self.top_eigenvalues, dtype=float).copy()
        v.setflags(write=False)
        object.__setattr__(self, "top_eigenvalues", v)
        object.__setattr__(self, "truncation_weight", max(0.0, 1.0 - float(np.sum(v))))

    @property
    def complete(self) -> bool:
        return self.top_eigenvalues.size >= self.support_size


def _mode_costs(nu):
    """log((1+nu)/(1-nu)) >= 0, inf for pure modes; and the log of the largest product."""
    with np.errstate(divide="ignore"):
        top = np.log1p(nu) - math.log(2.0)
        low = np.log1p(-nu) - math.log(2.0)
    return top - low, float(np.sum(top))


def rho_full_spectrum(modes: ModeSpectrum) -> np.ndarray:
    """All ``2**L`` eigenvalues by explicit enumeration, decreasing."""
    nu = modes.nu
    if nu.size > FULL_ENUMERATION_MAX_MODES + 2:
        raise MemoryError(f"refusing to enumerate 2**{nu.size} eigenvalues")
    p = np.ones(1)
    for v in nu:
        p = np.concatenate([p * (0.5 * (1.0 + v)), p * (0.5 * (1.0 - v))])
    return np.sort(p)[::-1]


def _top_by_partition(modes, K_eff):
    # only mixed modes generate distinct nonzero products
    nu = modes.nu
    mixed = nu[nu < 1.0]
    pure_weight = 1.0  # (1+1)/2 factors
    p = np.full(1, pure_weight)
    for v in mixed:
        p = np.concatenate([p * (0.5 * (1.0 + v)), p * (0.5 * (1.0 - v))])
    if K_eff < p.size:
        p = np.partition(p, p.size - K_eff)[p.size - K_eff:]
    return np.sort(p)[::-1]


def rho_top_spectrum(modes: ModeSpectrum, K: int) -> BlockSpectrum:
    """Exact ``K`` largest eigenvalues of the block density matrix.

    Eigenvalues are products ``prod_m (1 +- nu_m)/2``.  In log space each
    product is the top value minus a subset sum of flip costs
    ``c_m = log((1+nu_m)/(1-nu_m))``; the ``K`` smallest subset sums are
    generated best-first from a heap (add-next / replace-last expansion over
    costs sorted increasingly), ties broken by the flip bit string.  Products
    involving a pure mode (``nu = 1``) are exactly zero and rank last.
    """
    if K < 1:
        raise ValueError("K must be positive")
    L = modes.L
    support = 1 << L
    if K > support:
        raise ValueError(f"K={K} exceeds the 2**{L} eigenvalues of the block")
    entropy = block_entropy(modes)
    costs, log_top = _mode_costs(modes.nu)
    finite = np.flatnonzero(np.isfinite(costs))
    n_f = finite.size
    nonzero_count = 1 << n_f
    K_eff = min(K, nonzero_count)

    if K_eff >= 4096 and n_f <= FULL_ENUMERATION_MAX_MODES:
        vals = _top_by_partition(modes, K_eff)
    else:
        vals = _best_first(costs[finite], log_top, K_eff, n_f)
    if K > K_eff:
        vals = np.concatenate([vals, np.zeros(K - K_eff)])
    return BlockSpectrum(entropy, vals, support)


def _best_first(c, log_top, K, n):
    # bits of the tie-break mask follow the modes in order of increasing cost
    c = np.sort(c)
    out = np.empty(K)
    out[0] = math.exp(log_top)
    if K == 1:
        return out
    msb = n - 1
    heap = [(float(c[0]), 1 << msb, 0)]
    i_out = 1
    while i_out < K:
        s, mask, last = heapq.heappop(heap)
        out[i_out] = math.exp(log_top - s)
        i_out += 1
        nxt = last + 1
        if nxt < n:
            bit = 1 << (msb - nxt)
            heapq.heappush(heap, (s + float(c[nxt]), mask | bit, nxt))
            heapq.heappush(heap, (s - float(c[last]) + float(c[nxt]),
                                  (mask & ~(1 << (msb - last))) | bit, nxt))
    # subset sums reached along different paths carry different roundoff
    return out[np.argsort(-out, kind="stable")]


def effective_rank(spectrum: BlockSpectrum, epsilon: float, atol: float = 1e-12) -> int:
    """Smallest ``n`` whose ``n`` largest eigenvalues carry weight ``>= 1 - epsilon``.

    ``atol`` absorbs summation roundoff so that ``epsilon = 0`` works on
    complete spectra.
    """
    if not (0.0 <= epsilon < 1.0):
        raise ValueError("epsilon must lie in [0, 1)")
    cum = np.cumsum(spectrum.top_eigenvalues)
    target = 1.0 - epsilon - atol
    idx = int(np.searchsorted(cum, target, side="left"))
    if idx >= cum.size:
        raise NeedMoreEigenvaluesError(
            f"{cum.size} eigenvalues do not reach weight 1 - {epsilon:g}",
            float(cum[-1]) if cum.size else 0.0)
    return idx + 1


def effective_rank_adaptive(modes: ModeSpectrum, epsilon: float, K0: int = 256,
                            K_max: int = 1 << 20) -> int:
    """:func:`effective_rank` with the truncation depth doubled until sufficient."""
    K = min(K0, 1 << modes.L)
    while True:
        spec = rho_top_spectrum(modes, K)
        try:
            return effective_rank(spec, epsilon)
        except NeedMoreEigenvaluesError:
            if K >= min(K_max, 1 << modes.L):
                raise
            K = min(2 * K, K_max, 1 << modes.L)


def xy_entropy_curve(params: XYParams, L_max: int, method: str = "auto", tol: float = 1e-10,
                     L_values=None, mapper=map):
    """Entropies and mode spectra for blocks ``L = 1 .. L_max`` from one kernel.

    Returns a list of ``(L, S_L, ModeSpectrum)``.
    """
    kernel = correlation_kernel(params, L_max, method=method, tol=tol, mapper=mapper)
    full = build_correlation_matrix(kernel, L_max)
    Ls = range(1, L_max + 1) if L_values is None else L_values
    out = []
    for L in Ls:
        modes = mode_spectrum(full.restrict(L))
        out.append((L, block_entropy(modes), modes))
    return out
