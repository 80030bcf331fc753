# Grouped root functionals of open spin chains as the chain grows.
from rootsim.chain import ChainSpec, build_hamiltonian, cross_check_conventions, scaling_study, uniform_family

ns = range(2, 11)
for name, fam in (
    ("TFIM J=h=1", uniform_family("tfim", 1.0, 1.0)),
    ("fields on sites 1,2", uniform_family("sparse", 1.0, 1.0, (0, 1))),
    ("Heisenberg XXX", uniform_family("xxx", 1.0)),
):
    # n >= 3 keeps every bond next to the driven sites (and gives XXX an interior bond)
    tab = scaling_study(fam, ns if name.startswith("TFIM") else range(3, 11))
    print(name)
    for row in tab.rows:
        print(f"  n={row['n']:2d}  A1={row['A1']:7.3f}  A2={row['A2']:7.3f}  C={row['C']:7.3f}")
    print("  exponents:", {k: None if v is None else round(v, 3) for k, v in tab.exponents.items()})

# Matrix-unit roots count every amplitude of sigma_x separately, so A2 picks up 2^(n/2).
for n in (2, 3, 4):
    terms = [t for t in build_hamiltonian(ChainSpec("tfim", n, 1.0, 1.0)) if "Z" not in t.ops]
    rep = cross_check_conventions(terms, n)
    print(f"n={n}: A2 ratio {rep['a2_ratio']:.4f} (2^(n/2) = {rep['a2_ratio_expected']:.4f})")
