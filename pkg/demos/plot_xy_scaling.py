"""
Block entropy of the infinite XY chain
======================================

Entropy of a block of ``L`` spins at three points of the phase diagram:
the XX line, the critical Ising point and a gapped Ising point.
"""

# %%
# Correlation kernels and entropy curves
# --------------------------------------
import numpy as np

from chainent.analysis import EntropyCurve, central_charge, fit_log_scaling, saturation
from chainent.xy_core import XYParams, xy_entropy_curve

points = {"XX (gamma=0, lam=0)": XYParams(0.0, 0.0),
          "Ising critical (gamma=1, lam=1)": XYParams(1.0, 1.0),
          "Ising gapped (gamma=1, lam=1.1)": XYParams(1.0, 1.1)}

curves = {}
for name, p in points.items():
    pts = xy_entropy_curve(p, 200)
    curves[name] = EntropyCurve.from_points([(L, S) for L, S, _ in pts])

# %%
# Logarithmic growth at criticality
# ---------------------------------
# ``S_L = k log2 L + a`` over ``L`` in [20, 200]; ``c = 3 k``.
for name, c in curves.items():
    fit = fit_log_scaling(c, L_min=20)
    sat = saturation(c)
    print(f"{name:34s} k = {fit.k:.5f}  c = {central_charge(fit):.4f}  saturated: {sat.saturated}")

# %%
# A few values of each curve, in bits
for L in (1, 10, 50, 200):
    print(L, "  ".join(f"{c.at(L):.6f}" for c in curves.values()))
