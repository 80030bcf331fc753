import math
from functools import reduce

import numpy as np
import pytest

from rootsim.chain import (
    ChainSpec,
    PauliTerm,
    all_z_terms,
    build_hamiltonian,
    cross_check_conventions,
    grouped_activity,
    grouped_curvature,
    grouped_profile,
    grouped_profile_from_terms,
    scaling_study,
    to_algebra_element,
    uniform_family,
)
from rootsim.errors import SizeCapError
from rootsim.linalg import op_norm
from rootsim.roots import decompose

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0])


def kron_all(*ms):
    return reduce(np.kron, ms)


def test_build_two_site_zz():
    terms = build_hamiltonian(ChainSpec("tfim", 2, [1.0], [0.0, 0.0]))
    nonzero = [t for t in terms if t.coeff != 0]
    assert nonzero == [PauliTerm(1.0, "ZZ")]


def test_build_tfim_three():
    terms = build_hamiltonian(ChainSpec("tfim", 3, 0.5, 0.2))
    assert sorted(t.ops for t in terms) == sorted(["ZZI", "IZZ", "XII", "IXI", "IIX"])


def test_build_xxx_two():
    terms = build_hamiltonian(ChainSpec("xxx", 2, 0.8))
    assert {(t.ops, t.coeff) for t in terms} == {("XX", 0.8), ("YY", 0.8), ("ZZ", 0.8)}


def test_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec("tfim", 3, [1.0], [1, 1, 1])
    with pytest.raises(ValueError):
        ChainSpec("sparse", 3, 1.0, {5: 1.0})
    with pytest.raises(ValueError):
        PauliTerm(1.0, "II")
    with pytest.raises(ValueError):
        PauliTerm(1.0, "XQ")


def test_json_shorthand_support_is_one_indexed():
    spec = ChainSpec.from_json({"model": "sparse", "n": 5, "J": 1.0, "h": [0.3, 0.4], "support": [1, 4]})
    assert spec.h == {0: 0.3, 3: 0.4}
    assert ChainSpec.from_json(spec.to_json()) == spec


def test_single_z():
    w = 0.9
    x = to_algebra_element([PauliTerm(w, "Z")], 1)
    assert np.allclose(x.mat, -1j * w * Z)


def test_xx_against_kron_oracle():
    x = to_algebra_element([PauliTerm(1.0, "XX")], 2)
    ref = -1j * np.kron(X, X)
    assert np.allclose(x.mat, ref)
    assert np.allclose(x.mat[:2, :2], 0) and np.allclose(x.mat[2:, 2:], 0)


def test_tfim_dense_against_kron_oracle():
    J, h = [0.7, -0.4], [0.2, 0.5, -0.3]
    x = to_algebra_element(build_hamiltonian(ChainSpec("tfim", 3, J, h)), 3)
    H = J[0] * kron_all(Z, Z, I2) + J[1] * kron_all(I2, Z, Z)
    H = H + h[0] * kron_all(X, I2, I2) + h[1] * kron_all(I2, X, I2) + h[2] * kron_all(I2, I2, X)
    assert np.allclose(x.mat, -1j * H)


def test_zz_terms_are_toral(rng):
    x = to_algebra_element(build_hamiltonian(ChainSpec("tfim", 5, rng.standard_normal(4), 0.0)), 5)
    assert decompose(x).coeffs == {}
    assert decompose(to_algebra_element(all_z_terms(4, rng), 4)).coeffs == {}


def test_dense_cap():
    with pytest.raises(SizeCapError, match="grouped profile"):
        to_algebra_element([PauliTerm(1.0, "X" * 11)], 11)


def test_grouped_tfim_alpha_bounds():
    J = [0.3, -1.2, 0.5, 2.0]
    h = [1.0, -0.4, 0.7, 0.0, 1.5]
    prof = grouped_profile(ChainSpec("tfim", 5, J, h))
    by_site = {e.flip.bit_length() - 1: e for e in prof.entries}
    assert set(by_site) == {0, 1, 2, 4}
    for j, e in by_site.items():
        left = abs(J[j - 1]) if j > 0 else 0.0
        right = abs(J[j]) if j < 4 else 0.0
        assert e.alpha_bound == pytest.approx(2 * (left + right))
        assert e.abs_x == pytest.approx(abs(h[j]))
        assert e.op_norm_E == 1.0


def test_grouped_alpha_matches_diagonal_oracle(rng):
    # max |D(z) - D(z xor flip)| from the dense diagonal on a small chain
    spec = ChainSpec("tfim", 4, rng.standard_normal(3), rng.standard_normal(4))
    terms = build_hamiltonian(spec)
    diag = np.diagonal(sum(t.coeff * kron_all(*[{"I": I2, "Z": Z, "X": X}[p] for p in t.ops])
                           for t in terms if "X" not in t.ops)).real
    for e in grouped_profile(spec).entries:
        flip = int("".join("1" if e.flip >> k & 1 else "0" for k in range(4)), 2)
        jump = max(abs(diag[z] - diag[z ^ flip]) for z in range(16))
        assert e.alpha_bound == pytest.approx(jump)


def test_grouped_zero_field_empty():
    assert len(grouped_profile(ChainSpec("tfim", 6, 1.0, 0.0))) == 0


def test_grouped_sparse_entries():
    spec = ChainSpec("sparse", 9, 1.0, {2: 0.5, 5: 0.5, 7: 1.0})
    assert len(grouped_profile(spec)) == 3


def test_grouped_xxx():
    prof = grouped_profile(ChainSpec("xxx", 5, 0.6))
    assert [bin(e.flip).count("1") for e in prof.entries] == [2, 2, 2, 2]
    assert all(e.abs_x == pytest.approx(2 * 0.6) for e in prof.entries)
    assert [e.alpha_bound for e in prof.entries] == pytest.approx([1.2, 2.4, 2.4, 1.2])


def test_grouped_large_chain_no_cap():
    prof = grouped_profile(ChainSpec("tfim", 200, 1.0, 1.0))
    assert len(prof) == 200


def test_scaling_tfim_closed_forms():
    ns = list(range(2, 11))
    tab = scaling_study(uniform_family("tfim", 1.0, 1.0), ns)
    for r in tab.rows:
        n = r["n"]
        assert r["A1"] / n == pytest.approx(1.0, abs=1e-10)
        assert r["A2"] / math.sqrt(n) == pytest.approx(1.0, abs=1e-10)
        # two boundary sites with bound 2, the rest with 4
        assert r["C"] ** 2 == pytest.approx(16 * n - 24)
        assert abs(r["C"] / math.sqrt(n) - 4) <= 10 / n
    assert tab.exponents["A1"] == pytest.approx(1.0, abs=1e-10)
    assert tab.exponents["A2"] == pytest.approx(0.5, abs=1e-10)


def test_scaling_sparse_is_n_independent():
    tab = scaling_study(uniform_family("sparse", 1.0, 0.7, (0, 1)), range(3, 30))
    for k in ("A1", "A2", "C"):
        assert len({round(r[k], 12) for r in tab.rows}) == 1


def test_scaling_zero_field():
    tab = scaling_study(uniform_family("tfim", 1.0, 0.0), range(2, 6))
    assert all(r["A1"] == r["A2"] == r["C"] == 0 for r in tab.rows)
    assert tab.exponents["A1"] is None


def test_xxx_curvature_proportional_to_sqrt_n():
    tab = scaling_study(uniform_family("xxx", 1.0), range(20, 200, 20))
    ratios = [r["C"] / math.sqrt(r["n"]) for r in tab.rows]
    assert max(ratios) - min(ratios) <= 0.1 * ratios[-1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cross_check_a2_ratio(n, rng):
    terms = build_hamiltonian(ChainSpec("tfim", n, 0.0 if n == 1 else rng.standard_normal(n - 1), rng.standard_normal(n)))
    terms = [t for t in terms if "Z" not in t.ops]
    rep = cross_check_conventions(terms, n)
    assert rep["a2_ratio"] == pytest.approx(2 ** (n / 2), rel=1e-12)


def test_cross_check_commutator_bounds(rng):
    for n in range(1, 7):
        spec = ChainSpec("tfim", n, rng.standard_normal(max(n - 1, 0)) if n > 1 else [], rng.standard_normal(n))
        rep = cross_check_conventions(build_hamiltonian(spec), n)
        assert rep["commutator_norm"] <= rep["matrix_unit"]["bound"] + 1e-10
        assert rep["commutator_norm"] <= rep["grouped"]["bound"] + 1e-10
    rep = cross_check_conventions(build_hamiltonian(ChainSpec("xxx", 4, 0.9)), 4)
    assert rep["commutator_norm"] <= rep["grouped"]["bound"] + 1e-10


def test_cross_check_single_qubit():
    rep = cross_check_conventions([PauliTerm(0.8, "X"), PauliTerm(0.3, "Z")], 1)
    # matrix units count the pair (+alpha, -alpha) separately
    assert rep["matrix_unit"]["a_1"] == pytest.approx(2 * rep["grouped"]["a_1"])
    assert rep["matrix_unit"]["n_active"] == 2 * rep["grouped"]["n_active"]


def test_cross_check_cap():
    with pytest.raises(SizeCapError):
        cross_check_conventions([PauliTerm(1.0, "X" * 7)], 7)


def test_grouped_from_mixed_terms():
    terms = [PauliTerm(1.0, "XY"), PauliTerm(0.5, "YX"), PauliTerm(0.2, "ZI")]
    prof = grouped_profile_from_terms(terms, 2)
    assert len(prof) == 1
    ref = op_norm(np.kron(X, np.array([[0, -1j], [1j, 0]])) + 0.5 * np.kron(np.array([[0, -1j], [1j, 0]]), X))
    assert prof.entries[0].abs_x == pytest.approx(ref)
    assert prof.entries[0].alpha_bound == pytest.approx(0.4)
    assert grouped_curvature(prof) == pytest.approx(0.4 * ref)
    assert grouped_activity(prof, math.inf) == pytest.approx(ref)
