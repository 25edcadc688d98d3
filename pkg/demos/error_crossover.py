"""When does averaging harder beat inverting?  The crossover in n.

For n i.i.d. Wishart matrices with identity population covariance, both
the arithmetic mean A and the harmonic mean H estimate the identity, with
limiting operator-norm errors

    ||A - I||  ->  gamma/n + 2 sqrt(gamma/n)
    ||H - I||  ->  gamma - 2 gamma/n + 2 sqrt(gamma/n) sqrt(1 - gamma + gamma/n)

The harmonic mean wins for small n and loses beyond a crossover count
n*(gamma).  This script plots both error curves against gamma at n = 2,
tabulates n*(gamma), and confirms the flip empirically at modest size.

Run:  python demos/error_crossover.py
"""

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from wishmean import (
    EnsembleSpec,
    HarmLawParams,
    arith_norm_limit,
    arithmetic_mean,
    critical_n,
    harm_norm_limit,
    harmonic_mean,
    operator_norm_error,
    sample_wishart_set,
)

# --- analytic error curves at n = 2 ----------------------------------------
gammas = np.linspace(0.02, 0.98, 200)
harm_curve = [harm_norm_limit(HarmLawParams(g, 2.0)) for g in gammas]
arith_curve = [arith_norm_limit(g, 2.0) for g in gammas]

plt.figure(figsize=(6.5, 4.2))
plt.plot(gammas, harm_curve, label="harmonic mean error limit")
plt.plot(gammas, arith_curve, label="arithmetic mean error limit")
plt.xlabel("aspect ratio gamma")
plt.ylabel("limiting operator-norm error (n = 2)")
plt.legend()
plt.tight_layout()
plt.savefig("error_crossover.png", dpi=130)
print("wrote error_crossover.png  (harmonic mean is uniformly better at n = 2)")

# --- crossover table --------------------------------------------------------
print("\ncrossover count n*(gamma): largest n with the harmonic mean still ahead")
for g in [0.1, 0.3, 0.5, 0.7, 0.9]:
    result = critical_n(g)
    print(f"  gamma = {g:.1f}:  n* = {result.n_int}  (real root {result.n_real:.4f})")

# --- empirical confirmation -------------------------------------------------
print("\nempirical check at P = 300, gamma = 0.5, 5 trials per n:")
for n in (2, 8):
    a_err, h_err = [], []
    for trial in range(5):
        spec = EnsembleSpec(P=300, N=600, n=n, seed=1000 * n + trial)
        ws = sample_wishart_set(spec)
        eye = np.eye(spec.P)
        a_err.append(operator_norm_error(arithmetic_mean(ws), eye))
        h_err.append(operator_norm_error(harmonic_mean(ws), eye))
    winner = "harmonic" if np.mean(h_err) < np.mean(a_err) else "arithmetic"
    print(
        f"  n = {n}: mean ||A - I|| = {np.mean(a_err):.4f}, "
        f"mean ||H - I|| = {np.mean(h_err):.4f}  ->  {winner} mean wins"
    )
