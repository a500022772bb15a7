"""Shapley values from contribution functions: the WLS solver vs brute force.

Run:  python demos/01_shapley_solver.py
"""

import numpy as np

from shapcond import (ContributionMatrix, enumerate_coalitions, kernel_weight, shapley_exact,
                      solve_shapley_wls)

rng = np.random.default_rng(0)

# --- coalitions are enumerated by size, then bit pattern -------------------
M = 3
coalitions = enumerate_coalitions(M)
print(f"coalitions for M={M}:", ", ".join(str(c) for c in coalitions))

# --- the Shapley kernel weights peak at the extreme sizes ------------------
print("\nkernel weights k(M=8, s):")
for s in range(9):
    print(f"  s={s}: {kernel_weight(8, s):.6g}")

# --- a random cooperative game: WLS solution vs the exact formula ----------
game = {c.bits: float(rng.normal()) for c in coalitions}
column = np.array([[game[c.bits]] for c in coalitions])
vm = ContributionMatrix(values=column, m=M)

phi_wls = solve_shapley_wls(vm)
phi_exact = shapley_exact(game, M)

print("\nrandom game:")
print("  phi (weighted least squares):", np.round(phi_wls.contributions[:, 0], 6))
print("  phi (exact permutation sum): ", np.round(phi_exact, 6))
print("  max difference:", np.max(np.abs(phi_wls.contributions[:, 0] - phi_exact)))

# --- efficiency: the attributions sum to v(full) - v(empty) ----------------
gap = phi_wls.efficiency_gap(vm)[0]
print("\nefficiency gap (should be ~1/C):", gap)
