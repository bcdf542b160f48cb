# # Observed order of accuracy
#
# Backward Euler is first order. On the large-forcing case, errors measured
# against a fine reference run halve with the step size even though the
# solution switches between stick and slip.

# %%
from binghamdae import convergence_study
from binghamdae.scenarios import case_setup

params, law, forcing, init = case_setup("f2")
rows = convergence_study(params, law, forcing, init, 0.5, [4e-4, 2e-4, 1e-4], dt_ref=1e-5)

# %%
print(f"{'dt':>8} {'error':>12} {'order':>8}")
for row in rows:
    order = "" if row.observed_order is None else f"{row.observed_order:.3f}"
    print(f"{row.dt:8.0e} {row.error:12.4e} {order:>8}")
