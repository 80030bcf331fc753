# Root activity and curvature across spin-j representations of su(2).
from fractions import Fraction

from rootsim import functional_report, spin, su2_element

x = su2_element(1.0, 0.7, 0.3)
print(" j     A1       A2       C")
for two_j in range(1, 9):
    r = functional_report(spin(Fraction(two_j, 2)), x)
    print(f"{two_j / 2:4.1f} {r.a_p[1]:8.4f} {r.a_p[2]:8.4f} {r.curvature:8.4f}")

# The functionals grow with the highest weight, while the matrix size 2j+1 never enters directly.
# For integer j the root-vector norm is sqrt(j(j+1)); for half-integer j it is j + 1/2.
