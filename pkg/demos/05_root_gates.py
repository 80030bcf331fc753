# Root-gate circuits, their effective generator and the length lower bound.
import numpy as np

from rootsim import SU2, activity_norm, circuit_unitary, compile_strang, defining, effective_generator, lower_bound, su2_element
from rootsim.linalg import op_norm
from rootsim.splitting import exact_evolution

rep = defining(SU2())
x = su2_element(1.0, 0.7, 0.3)
t = 1.0

lb = lower_bound(rep, s0=0.1, eps0=1e-3)
print({k: round(v, 4) if isinstance(v, float) else v for k, v in lb.to_dict().items()})
n_low = lb.n_lower(activity_norm(rep, x), t)
print("n_lower:", n_low)

for r in (4, 8, 16, 32):
    c = compile_strang(rep, x, t, r)
    eps = op_norm(circuit_unitary(rep, c) - exact_evolution(rep, x, t))
    z = effective_generator(rep, c)
    print(f"r={r:2d}  gates={len(c):4d}  eps={eps:.2e}  ||Z - tX||_F={np.linalg.norm(z.mat - t * x.mat):.2e}")
