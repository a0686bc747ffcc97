"""Scaling fits, saturation, mass-deformation law, majorization and entropy properties."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, InsufficientDataError
from .xy_core import (
    FULL_ENUMERATION_MAX_MODES,
    BlockSpectrum,
    ModeSpectrum,
    XYParams,
    build_correlation_matrix,
    correlation_kernel,
    mode_spectrum,
    rho_full_spectrum,
    rho_top_spectrum,
)

__all__ = [
    "EntropyCurve",
    "ScalingFit",
    "SaturationResult",
    "SpectrumDistribution",
    "ScanVerdict",
    "PropertyReport",
    "YES",
    "NO",
    "UNDECIDABLE",
    "fit_log_scaling",
    "central_charge",
    "anisotropy_shift",
    "saturation",
    "mass_entropy_difference",
    "majorizes",
    "majorizes_adaptive",
    "block_majorization_scan",
    "rg_majorization_check",
    "entropy_property_suite",
    "chi_bound_holds",
    "ghz_curve",
    "shannon_bits",
    "majorization_entropy_trial",
]

YES = "yes"
NO = "no"
UNDECIDABLE = "undecidable-at-truncation"

MAJORIZATION_TOL = 1e-12
PROPERTY_TOL = 1e-9


@dataclass(frozen=True)
class EntropyCurve:
    """Block entropies ``S_L`` in bits for increasing ``L``."""

    L: np.ndarray
    S: np.ndarray
    source: str = ""

    def __post_init__(self):
        L = np.asarray(self.L, dtype=int).ravel().copy()
        S = np.asarray(self.S, dtype=float).ravel().copy()
        if L.shape != S.shape:
            raise ValueError("L and S must have equal length")
        if L.size > 1 and np.any(np.diff(L) <= 0):
            raise ValueError("L must be strictly increasing")
        if np.any(L < 1):
            raise ValueError("L must be positive")
        if np.any(S < -1e-12):
            raise ValueError("entropies must be nonnegative")
        L.setflags(write=False)
        S.setflags(write=False)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "S", S)

    @classmethod
    def from_points(cls, points: Iterable[Tuple[int, float]], source: str = "") -> "EntropyCurve":
        pts = list(points)
        return cls([p[0] for p in pts], [p[1] for p in pts], source)

    def at(self, L: int) -> float:
        i = int(np.searchsorted(self.L, L))
        if i >= self.L.size or self.L[i] != L:
            raise KeyError(f"L={L} not on curve")
        return float(self.S[i])

    def as_dict(self) -> Dict[int, float]:
        return {int(l): float(s) for l, s in zip(self.L, self.S)}


# ---------------------------------------------------------------------------
# scaling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalingFit:
    """``S_L = k log2 L + a`` by least squares."""

    k: float
    a: float
    stderr_k: float
    residual_rms: float
    n_points: int


def fit_log_scaling(curve: EntropyCurve, L_min: int = 20, L_max: Optional[int] = None) -> ScalingFit:
    """Least-squares fit of ``S_L = k log2 L + a`` over ``L_min <= L <= L_max``.

    Raises
    ------
    InsufficientDataError
        Fewer than four points in the window.
    """
    mask = curve.L >= L_min
    if L_max is not None:
        mask &= curve.L <= L_max
    n = int(mask.sum())
    if n < 4:
        raise InsufficientDataError(f"need at least 4 points with L >= {L_min}, have {n}")
    x = np.log2(curve.L[mask].astype(float))
    y = curve.S[mask]
    A = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    k, a = coef
    resid = y - A @ coef
    dof = n - 2
    s2 = float(resid @ resid) / dof
    sxx = float(np.sum((x - x.mean()) ** 2))
    stderr = math.sqrt(s2 / sxx) if sxx > 0 else math.inf
    return ScalingFit(float(k), float(a), stderr, float(np.sqrt(np.mean(resid**2))), n)


def central_charge(fit: ScalingFit) -> float:
    """``c = 3 k`` for equal holomorphic and antiholomorphic charges."""
    return 3.0 * fit.k


def anisotropy_shift(curves: Dict[float, EntropyCurve], L: Optional[int] = None
                     ) -> Dict[float, Tuple[float, float]]:
    """``S_L(gamma=1) - S_L(gamma)`` at a common large ``L``, with ``-(1/6) log2 gamma``.

    ``curves`` maps ``gamma`` to curves on the critical line ``lam = 1`` and
    must contain ``gamma = 1``.  ``L`` defaults to the largest common block.
    Returns ``{gamma: (measured, predicted)}``.
    """
    if 1.0 not in curves:
        raise ValueError("reference curve gamma = 1 is required")
    if L is None:
        common = set(curves[1.0].L.tolist())
        for c in curves.values():
            common &= set(c.L.tolist())
        if not common:
            raise InsufficientDataError("curves share no block size")
        L = max(common)
    ref = curves[1.0].at(L)
    out = {}
    for g, c in sorted(curves.items()):
        if g <= 0:
            raise DomainError("gamma must be positive on the Ising line")
        out[g] = (ref - c.at(L), -math.log2(g) / 6.0)
    return out


@dataclass(frozen=True)
class SaturationResult:
    saturated: bool
    S_star: Optional[float]
    L_sat: Optional[int]
    increments: Tuple[Tuple[int, float], ...] = ()

    @property
    def inconclusive(self) -> bool:
        return not self.saturated


def saturation(curve: EntropyCurve, tol: float = 1e-4) -> SaturationResult:
    """Detect saturation by successive doublings ``|S_{2L} - S_L| < tol``.

    Doublings are taken from the smallest ``L`` on the curve.  When no
    doubling meets ``tol`` the result is inconclusive and ``S_star`` is
    ``None``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = curve.as_dict()
    if not d:
        raise InsufficientDataError("empty curve")
    L = int(curve.L[0])
    incs = []
    L_sat = None
    while 2 * L in d:
        inc = abs(d[2 * L] - d[L])
        incs.append((L, inc))
        if inc < tol and L_sat is None:
            L_sat = L
        L *= 2
    if L_sat is None:
        return SaturationResult(False, None, None, tuple(incs))
    return SaturationResult(True, d[L], L_sat, tuple(incs))


def mass_entropy_difference(S_star_1: float, m_1: float, S_star_2: float, m_2: float
                            ) -> Tuple[float, float]:
    """Measured ``(S*_1 - S*_2)`` in nats and predicted ``-(1/6) ln(m_1/m_2)``.

    Inputs are saturated entropies in bits.
    """
    if m_1 <= 0 or m_2 <= 0:
        raise DomainError("masses must be positive")
    measured = (S_star_1 - S_star_2) * math.log(2.0)
    predicted = -math.log(m_1 / m_2) / 6.0
    return measured, predicted


# ---------------------------------------------------------------------------
# majorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumDistribution:
    """Leading probabilities of a distribution, in decreasing order.

    ``support_size`` is the total number of outcomes (``None`` if unknown);
    the distribution is complete when all of them are listed or the listed
    weight is 1.
    """

    probabilities: np.ndarray
    support_size: Optional[int] = None
    truncation_weight: float = field(init=False)

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float).ravel().copy()
        if p.size == 0:
            raise ValueError("empty distribution")
        if np.any(np.diff(p) > 1e-15):
            raise ValueError("probabilities must be decreasing")
        if p.min() < -1e-15 or p.sum() > 1.0 + 1e-10:
            raise ValueError("probabilities must be nonnegative with sum <= 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "truncation_weight", max(0.0, 1.0 - float(p.sum())))

    @property
    def complete(self) -> bool:
        return (self.support_size is not None and self.probabilities.size >= self.support_size) \
            or self.truncation_weight == 0.0

    @classmethod
    def from_block(cls, spec: BlockSpectrum) -> "SpectrumDistribution":
        return cls(spec.top_eigenvalues, spec.support_size)

    @classmethod
    def exact(cls, p) -> "SpectrumDistribution":
        p = np.sort(np.asarray(p, dtype=float))[::-1]
        return cls(p, p.size)


def _upper_prefix(d: SpectrumDistribution, n: np.ndarray) -> np.ndarray:
    """Largest possible prefix sums at ranks ``n`` (1-based) given the truncation."""
    p = d.probabilities
    K = p.size
    cum = np.cumsum(p)
    out = np.empty(n.shape)
    inside = n <= K
    out[inside] = cum[n[inside] - 1]
    if d.complete:
        out[~inside] = cum[-1]
    else:
        out[~inside] = np.minimum(1.0, cum[-1] + (n[~inside] - K) * p[-1])
    return out


def _lower_prefix(d: SpectrumDistribution, n: np.ndarray) -> np.ndarray:
    """Smallest possible prefix sums at ranks ``n`` (1-based) given the truncation."""
    p = d.probabilities
    K = p.size
    cum = np.cumsum(p)
    out = np.empty(n.shape)
    inside = n <= K
    out[inside] = cum[n[inside] - 1]
    rest = ~inside
    if d.complete:
        out[rest] = cum[-1]
    elif d.support_size is None:
        out[rest] = cum[-1]
    else:
        M = d.support_size
        remaining = 1.0 - cum[-1]
        # the largest (n-K) of the (M-K) unseen values average at least the mean
        out[rest] = np.where(n[rest] >= M, 1.0,
                             cum[-1] + (n[rest] - K) * remaining / max(M - K, 1))
    return out


def _tail_ranks(x: SpectrumDistribution, y: SpectrumDistribution) -> np.ndarray:
    """Ranks beyond the exactly known prefix where the bounds must be checked.

    Upper bounds are concave piecewise linear and lower bounds are linear up
    to the support size, so their difference is extremal at the ends of each
    piece.
    """
    Kx, Ky = x.probabilities.size, y.probabilities.size
    lo, hi = min(Kx, Ky), max(Kx, Ky)
    ranks = set(range(lo + 1, hi + 1))
    sizes = [s for s in (x.support_size, y.support_size) if s is not None]
    M = max(sizes) if sizes else None
    cand = [hi + 1]
    if M is not None:
        cand += [M, M - 1]
    p = x.probabilities
    if not x.complete and p[-1] > 0:
        kink = Kx + (1.0 - p.sum()) / p[-1]
        cand += [int(math.floor(kink)), int(math.ceil(kink))]
    if y.support_size is not None:
        cand += [y.support_size, y.support_size - 1]
    for c in cand:
        if c > lo and (M is None or c <= M):
            ranks.add(int(c))
    return np.array(sorted(ranks), dtype=np.int64)


def majorizes(x: SpectrumDistribution, y: SpectrumDistribution, tol: float = MAJORIZATION_TOL) -> str:
    """Three-valued test of ``x ≺ y`` (every prefix sum of ``x`` at most that of ``y``).

    ``no`` is returned only when an inequality fails on exactly known prefix
    sums (or fails for every completion of the truncated lists); ``yes`` only
    when every prefix inequality holds for every completion consistent with
    the given prefixes, total weight and support sizes.
    """
    if not isinstance(x, SpectrumDistribution):
        x = SpectrumDistribution.exact(x)
    if not isinstance(y, SpectrumDistribution):
        y = SpectrumDistribution.exact(y)
    K = min(x.probabilities.size, y.probabilities.size)
    cx = np.cumsum(x.probabilities[:K])
    cy = np.cumsum(y.probabilities[:K])
    if np.any(cx > cy + tol):
        return NO
    if x.complete and y.complete and x.probabilities.size == y.probabilities.size:
        return YES
    n = _tail_ranks(x, y)
    if n.size == 0:
        return YES
    ux, ly = _upper_prefix(x, n), _lower_prefix(y, n)
    if np.all(ux <= ly + tol):
        return YES
    lx, uy = _lower_prefix(x, n), _upper_prefix(y, n)
    if np.any(lx > uy + tol):
        return NO
    return UNDECIDABLE


def _spectrum_source(modes: ModeSpectrum):
    """K -> SpectrumDistribution with exact enumeration once it is affordable."""
    full_cache = {}

    def get(K):
        L = modes.L
        if K >= (1 << L) or (1 << L) <= 64:
            if "full" not in full_cache:
                full_cache["full"] = SpectrumDistribution(rho_full_spectrum(modes), 1 << L)
            return full_cache["full"]
        return SpectrumDistribution.from_block(rho_top_spectrum(modes, K))

    return get


def majorizes_adaptive(x_modes: ModeSpectrum, y_modes: ModeSpectrum, K: int = 64,
                       growth: int = 4, K_max: int = 1 << FULL_ENUMERATION_MAX_MODES,
                       tol: float = MAJORIZATION_TOL) -> Tuple[str, str, int]:
    """``x ≺ y`` on block spectra, deepening the truncation until decidable.

    Returns ``(verdict, verdict_at_requested_K, K_used)``.
    """
    gx, gy = _spectrum_source(x_modes), _spectrum_source(y_modes)
    first = None
    Kc = K
    full = max(1 << x_modes.L, 1 << y_modes.L)
    while True:
        v = majorizes(gx(min(Kc, 1 << x_modes.L)), gy(min(Kc, 1 << y_modes.L)), tol)
        if first is None:
            first = v
        if v != UNDECIDABLE or Kc >= min(K_max, full):
            return v, first, Kc
        Kc = min(Kc * growth, K_max, full)


@dataclass(frozen=True)
class ScanVerdict:
    L: int
    verdict: str
    verdict_at_K: str
    K_used: int
    one_step: Optional[str] = None  # rho_{L+1} ≺ rho_L, informational


def _modes_by_block(params: XYParams, L_values, method="auto"):
    L_top = max(L_values)
    full = build_correlation_matrix(correlation_kernel(params, L_top, method=method), L_top)
    return {L: mode_spectrum(full.restrict(L)) for L in sorted(set(L_values))}


def block_majorization_scan(params: XYParams, L_values: Sequence[int], K: int = 64, step: int = 2,
                            one_step: bool = True, escalate: bool = True) -> List[ScanVerdict]:
    """Verdicts for ``rho_{L+step} ≺ rho_L`` at each ``L`` in ``L_values``.

    With ``escalate`` the truncation depth grows from ``K`` until the verdict
    is decidable; the verdict at the requested ``K`` is kept alongside.
    """
    needed = set(L_values) | {L + step for L in L_values}
    if one_step:
        needed |= {L + 1 for L in L_values}
    modes = _modes_by_block(params, needed)
    K_max = (1 << FULL_ENUMERATION_MAX_MODES) if escalate else K
    out = []
    for L in L_values:
        v, v0, Ku = majorizes_adaptive(modes[L + step], modes[L], K, K_max=K_max)
        v1 = None
        if one_step:
            v1, _, _ = majorizes_adaptive(modes[L + 1], modes[L], K, K_max=K_max)
        out.append(ScanVerdict(L, v, v0, Ku, v1))
    return out


def rg_majorization_check(critical: Union[ModeSpectrum, SpectrumDistribution],
                          massive: Union[ModeSpectrum, SpectrumDistribution],
                          K: int = 64, escalate: bool = True) -> Tuple[str, str, int]:
    """``rho^{critical} ≺ rho^{massive}`` at equal block size.

    Mode spectra are truncated to ``K`` (deepened if undecidable and
    ``escalate``); distributions are used as given.  Returns
    ``(verdict, verdict_at_K, K_used)``.
    """
    if isinstance(critical, ModeSpectrum) and isinstance(massive, ModeSpectrum):
        K_max = (1 << FULL_ENUMERATION_MAX_MODES) if escalate else K
        return majorizes_adaptive(critical, massive, K, K_max=K_max)
    v = majorizes(critical, massive)
    return v, v, K


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


def shannon_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 1e-300]
    return float(-np.sum(p * np.log2(p)))


def ghz_curve(N: int) -> EntropyCurve:
    """Block entropies of the GHZ state of ``N`` qubits: 1 bit for every ``L < N``."""
    L = np.arange(1, N)
    return EntropyCurve(L, np.ones(L.size), f"ghz N={N}")


@dataclass(frozen=True)
class PropertyReport:
    checks: Dict[str, Tuple[bool, float]]  # name -> (passed, worst margin; <= 0 is a pass)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def failures(self) -> List[str]:
        return [k for k, (ok, _) in self.checks.items() if not ok]


def chi_bound_holds(modes: ModeSpectrum) -> Tuple[bool, float]:
    """``chi^{eps->0} >= 2**S``; the zero-threshold rank is ``2**#(nu < 1)``."""
    from .xy_core import block_entropy

    rank = 1 << int(np.sum(modes.nu < 1.0))
    need = 2.0 ** block_entropy(modes)
    return rank >= math.ceil(need - 1e-9), need - rank


def entropy_property_suite(curve: EntropyCurve, N: Optional[int] = None,
                           modes: Optional[Sequence[ModeSpectrum]] = None,
                           tol: float = PROPERTY_TOL) -> PropertyReport:
    """Monotonicity, concavity, the ``min(L, N-L)`` bound and (finite rings) reflection.

    ``N`` marks a finite system; monotonicity is then only required for
    ``L <= N/2``.  Concavity ``S_{L+M} + S_{L-M} <= 2 S_L`` is tested for
    every triple present on the curve.  ``modes`` adds the effective-rank
    bound for each supplied mode spectrum.
    """
    d = curve.as_dict()
    Ls = sorted(d)
    checks: Dict[str, Tuple[bool, float]] = {}

    mono = [l for l in Ls if N is None or l <= N // 2]
    worst = -math.inf
    for a, b in zip(mono[:-1], mono[1:]):
        worst = max(worst, d[a] - d[b])
    checks["monotone"] = (worst <= tol, worst)

    worst = -math.inf
    Lset = set(Ls)
    for L in Ls:
        for M in range(1, L):
            if L + M in Lset and L - M in Lset:
                if N is not None and L + M > N:
                    continue
                worst = max(worst, d[L + M] + d[L - M] - 2.0 * d[L])
    checks["concave"] = (worst <= tol, worst)

    worst = -math.inf
    for L in Ls:
        cap = L if N is None else min(L, N - L)
        worst = max(worst, d[L] - cap)
    checks["bound"] = (worst <= tol, worst)

    if N is not None:
        worst = -math.inf
        for L in Ls:
            if N - L in d:
                worst = max(worst, abs(d[L] - d[N - L]))
        checks["reflection"] = (worst <= tol, worst)

    if modes is not None:
        worst = -math.inf
        ok_all = True
        for m in modes:
            ok, margin = chi_bound_holds(m)
            ok_all &= ok
            worst = max(worst, margin)
        checks["chi_bound"] = (ok_all, worst)
    return PropertyReport(checks)


def _brute_majorizes(x, y, tol):
    # top-n prefix sum equals the maximum over all n-subsets
    n = len(x)
    for k in range(1, n + 1):
        sx = max(sum(c) for c in itertools.combinations(x, k))
        sy = max(sum(c) for c in itertools.combinations(y, k))
        if sx > sy + tol:
            return False
    return True


def majorization_entropy_trial(n_pairs: int = 1000, size: int = 8, seed: int = 0,
                               tol: float = MAJORIZATION_TOL) -> Dict[str, int]:
    """Random check that ``x ≺ y`` implies ``H(x) >= H(y)``.

    Half of the pairs are independent Dirichlet draws; the other half use
    ``x = D y`` with ``D`` a random product of T-transforms, which guarantees
    ``x ≺ y``.  Verdicts of :func:`majorizes` are also compared with a
    subset-sum brute force.  Returns counters; ``entropy_violations`` and
    ``verdict_mismatches`` must be zero.
    """
    rng = np.random.default_rng(seed)
    out = dict(pairs=0, majorized=0, entropy_violations=0, verdict_mismatches=0)
    for i in range(n_pairs):
        y = rng.dirichlet(np.full(size, 0.5))
        if i % 2:
            x = y.copy()
            for _ in range(rng.integers(1, 6)):
                a, b = rng.choice(size, 2, replace=False)
                t = rng.uniform()
                xa, xb = x[a], x[b]
                x[a], x[b] = t * xa + (1 - t) * xb, (1 - t) * xa + t * xb
        else:
            x = rng.dirichlet(np.full(size, 0.5))
        v = majorizes(SpectrumDistribution.exact(x), SpectrumDistribution.exact(y), tol)
        brute = _brute_majorizes(list(x), list(y), tol)
        out["pairs"] += 1
        if (v == YES) != brute or v == UNDECIDABLE:
            out["verdict_mismatches"] += 1
        if v == YES:
            out["majorized"] += 1
            if shannon_bits(x) < shannon_bits(y) - 1e-12:
                out["entropy_violations"] += 1
    return out
