# # Inaccuracy curves of chaotic maps
#
# A trajectory of the Ricker or Tent map is treated as a sample and passed to
# the single-sample estimator.  Chaotic regimes spread the states and lift
# the curve.

import numpy as np

from wfgcri.chaos import beta_grid, bifurcation_data, wfgcri_curve

betas = beta_grid(0.01, 5.0, 0.01)
ricker = wfgcri_curve("ricker", [1, 3.1, 3.5, 4.0, 4.5, 4.9], betas, alpha=0.5)
for r, row in zip(ricker.r_values, ricker.values):
    print(f"Ricker r={r:<4} mean over beta={row.mean():.4f}  max={row.max():.4f}")

tent = wfgcri_curve("tent", [1.0, 1.5, 1.9, 2.0], beta_grid(0.01, 2.0, 0.01), alpha=0.5)
for r, row, flag in zip(tent.r_values, tent.values, tent.degenerate):
    print(f"Tent r={r:<4} max={row.max():.4f} degenerate={flag}")

# ## Period doubling
#
# Past r = 2 the Ricker fixed point loses stability and a two-cycle appears.

data = bifurcation_data("ricker", (1.5, 3.0), 7, transient=500, keep=64)
for r in np.unique(data[:, 0]):
    states = np.unique(np.round(data[data[:, 0] == r, 1], 6))
    print(f"r={r:.2f}: {states.size} distinct states")
