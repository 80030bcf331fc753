from fractions import Fraction

import numpy as np
import pytest

from rootsim.linalg import commutator, op_norm
from rootsim.reps import (
    apply,
    defining,
    image,
    ladder_coefficient,
    pullback,
    root_image_norm,
    spin,
    spin_matrices,
    tensor_trivial,
    weight_decomposition,
)
from rootsim.roots import SU2, SU2N, SUN, RootLabel, enumerate_roots, matrix_unit, random_element, su2_element

E_A = RootLabel(0, 1)


def ladder_oracle(two_j):
    # E v_m = c_{j,m} v_{m+1}, basis ordered m = j..-j
    j = two_j / 2
    ms = [j - k for k in range(two_j + 1)]
    e = np.zeros((two_j + 1, two_j + 1))
    for col, m in enumerate(ms):
        if m < j:
            e[col - 1, col] = np.sqrt((j - m) * (j + m + 1))
    return e


def test_dims():
    assert spin(Fraction(3, 2)).dim == 4
    assert spin("5/2").dim == 6
    assert defining(SU2N(3)).dim == 8
    assert tensor_trivial(spin(1)).dim == 3
    with pytest.raises(ValueError):
        spin(0.3)


def test_spin_half_is_defining(rng):
    x = random_element(SU2(), rng)
    assert np.allclose(apply(spin(Fraction(1, 2)), x), x.mat)
    assert np.allclose(apply(spin(Fraction(1, 2)), su2_element(1, 0, 0)), 1j * np.diag([1, -1]))


def test_spin_one_raising():
    e = image(spin(1), matrix_unit(2, 0, 1))
    assert np.allclose(e, [[0, np.sqrt(2), 0], [0, 0, np.sqrt(2)], [0, 0, 0]])


def test_spin_matrices_against_ladder_oracle():
    for two_j in range(0, 12):
        H, E, F = spin_matrices(two_j)
        assert np.allclose(E, ladder_oracle(two_j))
        assert np.allclose(np.diagonal(H), [two_j - 2 * k for k in range(two_j + 1)])
        assert np.allclose(commutator(H, E), 2 * E)
        assert np.allclose(commutator(E, F), H)


def test_root_image_norms():
    assert root_image_norm(defining(SUN(4)), (2, 3)) == 1.0
    assert root_image_norm(spin(5), E_A) == pytest.approx(np.sqrt(30))
    assert root_image_norm(spin(1), E_A) == pytest.approx(np.sqrt(2))


def test_root_image_norm_integer_spin():
    for j in range(1, 11):
        assert root_image_norm(spin(j), E_A) == pytest.approx(np.sqrt(j * (j + 1)), abs=1e-10)


def test_root_image_norm_half_integer_spin():
    # the largest ladder amplitude sits at m = -1/2 and equals j + 1/2
    for two_j in range(1, 21, 2):
        j = Fraction(two_j, 2)
        expected = max(ladder_coefficient(j, m) for m in (j - k for k in range(1, two_j + 1)))
        assert root_image_norm(spin(j), E_A) == pytest.approx(float(j) + 0.5, abs=1e-12)
        assert expected == pytest.approx(float(j) + 0.5)


def test_homomorphism(rng):
    reps = [defining(SUN(3)), defining(SU2())] + [spin(Fraction(k, 2)) for k in range(1, 11)]
    for rep in reps:
        for _ in range(10):
            x, y = random_element(rep.algebra, rng), random_element(rep.algebra, rng)
            lhs = apply(rep, x.bracket(y))
            rhs = commutator(apply(rep, x), apply(rep, y))
            assert op_norm(lhs - rhs) <= 1e-10
            m = apply(rep, x)
            assert np.allclose(m, -m.conj().T)


def test_apply_algebra_mismatch(rng):
    with pytest.raises(ValueError):
        apply(spin(1), random_element(SUN(3), rng))


def test_pullback_inverts_apply(rng):
    for rep in (spin(2), spin(Fraction(3, 2)), defining(SUN(3)), tensor_trivial(spin(1))):
        x = random_element(rep.algebra, rng)
        assert np.allclose(pullback(rep, apply(rep, x)).mat, x.mat)


def test_weights_su3():
    ws = weight_decomposition(defining(SUN(3)))
    assert len(ws) == 3
    theta = np.array([0.2, 0.5, -0.7])
    vals = sorted((w.evaluate(np.diag(1j * theta)).imag, w.basis_indices) for w in ws)
    assert [v for v, _ in vals] == pytest.approx(sorted(theta))


def test_weights_spin():
    for two_j in range(0, 8):
        ws = weight_decomposition(spin(Fraction(two_j, 2)))
        h = np.diag([1j, -1j])
        vals = sorted(w.evaluate(h).imag for w in ws)
        assert vals == pytest.approx(sorted(two_j - 2 * k for k in range(two_j + 1)))


def test_weights_qubit():
    ws = weight_decomposition(defining(SU2N(1)))
    vals = sorted(w.evaluate(np.diag([1j, -1j])).imag for w in ws)
    assert vals == pytest.approx([-1, 1])


def test_root_vectors_shift_weights():
    for rep in (defining(SUN(3)), spin(3), spin(Fraction(5, 2))):
        ws = weight_decomposition(rep)
        space = {}
        for w in ws:
            for k in w.basis_indices:
                space[k] = w
        h = np.diag(1j * np.linspace(0.3, -0.3, rep.algebra.N) + 1j * np.arange(rep.algebra.N) ** 2)
        h -= np.trace(h) / rep.algebra.N * np.eye(rep.algebra.N)
        for r in enumerate_roots(rep.algebra):
            e = image(rep, r.root_vector)
            for k in range(rep.dim):
                target = space[k].evaluate(h) + r.evaluate(h)
                v = e[:, k]
                for i in np.nonzero(np.abs(v) > 1e-12)[0]:
                    assert space[i].evaluate(h) == pytest.approx(target, abs=1e-12)


def test_tensor_trivial_is_transparent(rng):
    rep = spin(2)
    tt = tensor_trivial(rep)
    x = random_element(SU2(), rng)
    assert np.array_equal(apply(tt, x), apply(rep, x))
    assert root_image_norm(tt, E_A) == root_image_norm(rep, E_A)
