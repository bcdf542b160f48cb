# # Why a signum ODE is not enough
#
# Replacing the set-valued dashpot by a single-valued sgn gives an ODE that a
# standard Runge-Kutta method happily integrates. With a spring stretched
# inside the stick band the true solution is at rest, yet the ODE chatters
# around v = 0 for the whole run.

# %%
import numpy as np

from binghamdae.scenarios import compare_naive

dae, naive, report = compare_naive("small")

# %%
for key, value in report.items():
    print(f"{key:32s} {value}")

# %% [markdown]
# The DAE stepper keeps v identically zero. The RK4 signum run produces a
# small nonzero velocity at almost every node, and none of those nodes lie in
# the admissible acceleration set.

# %%
print("first naive velocities:", naive.v[1:6])
print("largest naive |v|:", np.max(np.abs(naive.v)))
