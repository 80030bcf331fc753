# Splitting a generator into its toral part and root coefficients.
import numpy as np

from rootsim import SU2, SUN, decompose, random_element, su2_element, weyl_act

# su(2): X = a iH + b (E_a - E_-a) + c i (E_a + E_-a)
x = su2_element(1.0, 0.7, 0.3)
d = decompose(x)
print("X0 diagonal:", np.diagonal(d.x0))
for label, c in sorted(d.coeffs.items()):
    print(f"  x{tuple(label)} = {c:.3f}")

# the Weyl swap flips the toral part and exchanges |x_a| and |x_-a|
y = weyl_act(SU2(), (1, 0), x)
print("after Weyl swap:", {tuple(k): complex(np.round(v, 3)) for k, v in decompose(y).coeffs.items()})

# su(3): the six root coefficients are the off-diagonal entries
rng = np.random.default_rng(0)
x3 = random_element(SUN(3), rng)
d3 = decompose(x3)
print("su(3) active roots:", len(d3.coeffs))
print("reconstruction residual:", np.abs(d3.reconstruct() - x3.mat).max())
