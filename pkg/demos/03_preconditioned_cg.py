"""
Conjugate gradients with a multiply-only preconditioner
=======================================================

The mass operator approximates the inverse of the scaled Laplacian, so the
preconditioning step is a single operator application z = M r. No factoring,
no inner solve. This script compares plain and preconditioned CG on the same
system and checks the observed speedup against the spectral prediction.
"""

import numpy as np

from masspcg import GridSpec, SolveConfig, cg_solve, predicted_vs_observed

spec = GridSpec(2, 64)
b = np.ones(spec.size)
tol = 1e-8 * np.linalg.norm(b)  # relative stopping, tol * ||b||

plain = cg_solve(spec, b, config=SolveConfig(tol=tol))
mass = cg_solve(spec, b, config=SolveConfig(tol=tol, precondition="mass"))
print(f"2D, n={spec.n}: plain CG {plain.iterations} iterations, "
      f"mass-preconditioned {mass.iterations}")
print(f"observed ratio {plain.iterations / mass.iterations:.2f}")

# Residual histories decay geometrically; the preconditioned one is steeper.
# Print every 10th entry side by side.
print("\n iter      plain           mass")
for i in range(0, plain.iterations + 1, 10):
    left = f"{plain.residual_history[i]:.3e}"
    right = f"{mass.residual_history[i]:.3e}" if i <= mass.iterations else "converged"
    print(f"{i:5d}  {left:>12}  {right:>12}")

# Both solutions solve the same system.
gap = np.max(np.abs(plain.solution - mass.solution))
print(f"\nmax difference between the two solutions: {gap:.2e}")

# predicted_vs_observed wraps the pair of runs and the spectral prediction.
report = predicted_vs_observed(spec, b, tol=tol)
print(f"predicted iteration ratio sqrt(kappa/kappa_p) = {report.theoretical_ratio:.2f}, "
      f"observed = {report.observed_ratio:.2f}")

# The same experiment in 3D, where the payoff is larger.
spec3 = GridSpec(3, 32)
b3 = np.ones(spec3.size)
report3 = predicted_vs_observed(spec3, b3, tol=1e-8 * np.linalg.norm(b3))
print(f"\n3D, n={spec3.n}: {report3.itn_unprec} vs {report3.itn_prec} iterations, "
      f"observed {report3.observed_ratio:.2f}, predicted {report3.theoretical_ratio:.2f}")
