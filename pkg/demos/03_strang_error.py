# Strang versus first-order splitting, and the t^3 (C + A1) bound.
import numpy as np

from rootsim import defining, error_sweep, required_steps, SU2, su2_element

rep = defining(SU2())
x = su2_element(1.0, 0.7, 0.3)
times = [2.0**-k for k in range(4, 11)]

for scheme in ("strang", "trotter1"):
    r = error_sweep(rep, x, times, scheme)
    print(f"{scheme:9s} fitted order {r.fitted_order:.3f}  c_hat {r.c_hat:.4g}")

r = error_sweep(rep, x, times)
print("\n     t        error      c_hat*bound")
for t, e, b in zip(r.times, r.errors, r.bound_rhs):
    print(f"{t:9.6f} {e:11.3e} {r.c_hat * b:11.3e}")

for eps in (1e-3, 1e-5, 1e-7):
    print(f"steps for t=1, eps={eps:g}:", required_steps(rep, x, 1.0, eps, r.c_hat))
