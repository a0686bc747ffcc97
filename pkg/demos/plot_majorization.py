"""
Majorization of block spectra
=============================

Leading eigenvalues of the block density matrix come from products of
single-mode probabilities; the three-valued test either certifies the
ordering, refutes it, or reports that the truncation cannot decide.
"""

# %%
# Top of the spectrum without full enumeration
# --------------------------------------------
from chainent.analysis import SpectrumDistribution, majorizes, majorizes_adaptive
from chainent.xy_core import (
    XYParams,
    build_correlation_matrix,
    correlation_kernel,
    mode_spectrum,
    rho_top_spectrum,
)


def modes(p, L):
    return mode_spectrum(build_correlation_matrix(correlation_kernel(p, L), L))


crit = modes(XYParams(1.0, 1.0), 50)
top = rho_top_spectrum(crit, 64)
print(f"L=50: weight outside the top 64 of 2^50 eigenvalues: {top.truncation_weight:.2e}")

# %%
# Truncated verdicts and escalation
# ---------------------------------
mass = modes(XYParams(1.0, 1.2), 50)
x = SpectrumDistribution.from_block(rho_top_spectrum(crit, 64))
y = SpectrumDistribution.from_block(rho_top_spectrum(mass, 64))
print("K=64 verdict:", majorizes(x, y))
verdict, first, K_used = majorizes_adaptive(crit, mass, K=64)
print(f"escalated verdict: {verdict} at K={K_used}")

# %%
# Two-site steps along the critical XX chain
for L in (4, 8, 12):
    v, _, K = majorizes_adaptive(modes(XYParams(0, 0), L + 2), modes(XYParams(0, 0), L))
    print(f"rho_{L + 2} majorized by rho_{L}: {v} (K={K})")
