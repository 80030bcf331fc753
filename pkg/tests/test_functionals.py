import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rootsim.functionals import (
    RootEntry,
    RootProfile,
    activity,
    commutator_via_roots,
    curvature,
    functional_report,
    nested_commutator_AAB,
    norm_equivalence_constants,
    root_profile,
    sample_activity_ratios,
)
from rootsim.linalg import commutator, op_norm
from rootsim.reps import apply, defining, image, spin, tensor_trivial
from rootsim.roots import SU2, SUN, RootLabel, decompose, element, random_element, su2_element, weyl_act, weyl_group


def spin_norm_oracle(j):
    # largest ladder amplitude sqrt((j-m)(j+m+1)) over m = -j..j-1
    ms = [-j + k for k in range(int(2 * j))]
    return max(math.sqrt((j - m) * (j + m + 1)) for m in ms)


def test_toral_profile_empty():
    x = element(SUN(3), np.diag([1j, -2j, 1j]))
    prof = root_profile(defining(SUN(3)), x)
    assert len(prof) == 0
    for p in (1, 2, math.inf, 3.5):
        assert activity(prof, p) == 0
    assert curvature(prof) == 0


def test_su2_alpha_values():
    a = 0.8
    prof = root_profile(defining(SU2()), su2_element(a, 0.3, -0.2))
    for e in prof.entries:
        assert abs(e.alpha_x0) == pytest.approx(2 * a)
    assert {e.label for e in prof.entries} == {(0, 1), (1, 0)}


def test_su3_profile_entrywise(rng):
    x = random_element(SUN(3), rng)
    prof = root_profile(defining(SUN(3)), x)
    theta = np.diagonal(x.mat).imag
    assert len(prof) == 6
    for e in prof.entries:
        z, w = e.label
        assert e.abs_x == pytest.approx(abs(x.mat[z, w]))
        assert e.alpha_x0 == pytest.approx(1j * (theta[z] - theta[w]))


def test_hand_profile():
    prof = RootProfile([RootEntry(RootLabel(0, 1), 3.0, 1.0, 0j), RootEntry(RootLabel(1, 0), 4.0, 1.0, 0j)], 2)
    assert activity(prof, 2) == pytest.approx(5)
    assert activity(prof, 1) == pytest.approx(7)
    assert activity(prof, math.inf) == pytest.approx(4)
    with pytest.raises(ValueError):
        activity(prof, 0.5)


@pytest.mark.parametrize("two_j", range(1, 13))
def test_spin_closed_forms(two_j):
    j = two_j / 2
    a, b, c = 0.6, 0.7, 0.3
    x = su2_element(a, b, c)
    prof = root_profile(spin(Fraction(two_j, 2)), x)
    d = decompose(x)
    xa, xm = abs(d.coeffs[(0, 1)]), abs(d.coeffs[(1, 0)])
    nrm = spin_norm_oracle(j)
    assert activity(prof, 1) == pytest.approx((xa + xm) * nrm, abs=1e-12)
    assert activity(prof, 2) == pytest.approx(math.hypot(xa, xm) * nrm, abs=1e-12)
    assert curvature(prof) == pytest.approx(2 * a * math.hypot(xa, xm) * nrm, abs=1e-12)
    if two_j % 2 == 0:
        assert nrm == pytest.approx(math.sqrt(j * (j + 1)))


def test_curvature_zero_without_toral(rng):
    x = su2_element(0.0, 0.5, 0.5)
    assert curvature(root_profile(defining(SU2()), x)) == 0


def test_commutator_via_roots(rng):
    for rep in (defining(SU2()), defining(SUN(3)), defining(SUN(4)), spin(2), spin(Fraction(3, 2))):
        for _ in range(20):
            x = random_element(rep.algebra, rng, 2.0)
            d = decompose(x)
            A, B = image(rep, d.x0), image(rep, d.root_part())
            assert op_norm(commutator_via_roots(rep, d) - commutator(A, B)) <= 1e-10
            assert op_norm(nested_commutator_AAB(rep, d) - commutator(A, commutator(A, B))) <= 1e-10


def test_commutator_pauli_pair():
    wx, wz = 0.9, 1.4
    x = element(SU2(), -1j * (wx * np.array([[0, 1], [1, 0]]) + wz * np.diag([1, -1])))
    d = decompose(x)
    assert op_norm(commutator_via_roots(defining(SU2()), d)) == pytest.approx(2 * wx * wz)


def test_commuting_case_zero():
    x = element(SUN(3), np.diag([1j, 1j, -2j]) + np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))
    d = decompose(x)
    assert op_norm(commutator_via_roots(defining(SUN(3)), d)) == 0


def test_basic_inequalities(rng):
    for rep in (defining(SUN(3)), defining(SUN(5)), spin(3)):
        for _ in range(30):
            x = random_element(rep.algebra, rng, 3.0)
            d = decompose(x)
            prof = root_profile(rep, x)
            n = len(prof)
            assert op_norm(image(rep, d.root_part())) <= activity(prof, 1) + 1e-12
            ps = [1, 1.5, 2, 4, math.inf]
            for p, q in zip(ps, ps[1:]):
                ap, aq = activity(prof, p), activity(prof, q)
                assert aq <= ap + 1e-12
                expo = 1 / p - (0 if math.isinf(q) else 1 / q)
                assert ap <= n**expo * aq + 1e-10
            bound = math.sqrt(n) * curvature(prof)
            assert op_norm(commutator_via_roots(rep, d)) <= bound + 1e-10


def _values(rep, x):
    prof = root_profile(rep, x)
    return [activity(prof, 1), activity(prof, 2), activity(prof, math.inf), curvature(prof)]


def test_weyl_invariance(rng):
    for alg in (SU2(), SUN(3)):
        rep = defining(alg)
        x = random_element(alg, rng)
        ref = _values(rep, x)
        for p in weyl_group(alg):
            assert _values(rep, weyl_act(alg, p, x)) == pytest.approx(ref, abs=1e-10)


def test_intertwiner_invariance(rng):
    rep = spin(2)
    x = random_element(SU2(), rng)
    assert _values(tensor_trivial(rep), x) == _values(rep, x)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 100), st.integers(0, 2**32 - 1))
def test_normalization_invariance(s, seed):
    rep = defining(SUN(3))
    x = random_element(SUN(3), np.random.default_rng(seed))
    base = root_profile(rep, x)
    scaled = root_profile(rep, x, root_scale={RootLabel(0, 2): s, RootLabel(2, 1): 1 / s})
    for fn in (lambda p: activity(p, 1), lambda p: activity(p, 2), curvature):
        assert fn(scaled) == pytest.approx(fn(base), rel=1e-12)


def test_report_keys(rng):
    r = functional_report(defining(SUN(3)), random_element(SUN(3), rng), extra_p=(3,)).to_dict()
    for k in ("a_1", "a_2", "a_inf", "curvature", "act_seminorm", "m_x0", "c_struct", "convention", "a_3"):
        assert k in r
    assert r["act_seminorm"] == r["a_1"]
    assert r["c_struct"] == pytest.approx(math.sqrt(6))


def test_norm_constants_su2_grid():
    rep = defining(SU2())
    m1, M1 = norm_equivalence_constants(rep, samples=50)
    # exhaustive grid over the root plane: ratio is the same on every ray
    for phi in np.linspace(0, 2 * np.pi, 73):
        x = su2_element(0.0, np.cos(phi), np.sin(phi))
        act = activity(root_profile(rep, x), 1)
        r = act / x.norm()
        assert m1 - 1e-12 <= r <= M1 + 1e-12
    assert M1 / m1 <= math.sqrt(2)


def test_norm_constants_su3_holdout():
    rep = defining(SUN(3))
    m1, M1 = norm_equivalence_constants(rep, samples=1000, seed=0)
    held = sample_activity_ratios(rep, 1000, np.random.default_rng(99))
    assert held.min() >= m1 - 1e-12 and held.max() <= M1 + 1e-12
    assert m1 == pytest.approx(math.sqrt(2))
    assert M1 == pytest.approx(math.sqrt(6))


def test_norm_constants_homogeneous(rng):
    rep = defining(SUN(3))
    x = random_element(SUN(3), rng)
    xr = element(SUN(3), decompose(x).root_part())
    r1 = activity(root_profile(rep, xr), 1) / xr.norm()
    r10 = activity(root_profile(rep, 10 * xr), 1) / (10 * xr).norm()
    assert r1 == pytest.approx(r10)


def test_norm_constants_spin0_fails():
    with pytest.raises(ValueError):
        norm_equivalence_constants(spin(0))
