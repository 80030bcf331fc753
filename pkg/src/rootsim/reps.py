"""Lie algebra representations d(rho) used by the package.

Three kinds are supported: the defining representation of any supported
algebra, the spin-j irreducibles of su(2), and the ``tensor_trivial``
wrapper (rho tensor the trivial one-dimensional representation), which acts
by the same matrices as its inner representation.

Spin-j matrices are written in the weight basis ``v_m`` ordered
``m = j, j-1, ..., -j`` so that spin-1/2 coincides with the defining
representation of su(2).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import op_norm
from .roots import (
    AlgebraElement,
    AlgebraId,
    RootDatum,
    RootLabel,
    SU2,
    _cartan_vectors,
    matrix_unit,
)


@dataclass(frozen=True)
class Representation:
    algebra: AlgebraId
    kind: str
    two_j: int | None = None
    inner: "Representation | None" = field(default=None)

    def __post_init__(self):
        if self.kind == "spin":
            if self.algebra.family != "SU2":
                raise ValueError("spin-j representations are only defined for SU2")
            if self.two_j is None or self.two_j < 0:
                raise ValueError("spin needs 2j >= 0")
        elif self.kind == "tensor_trivial":
            if self.inner is None or self.inner.algebra != self.algebra:
                raise ValueError("tensor_trivial needs an inner representation of the same algebra")
        elif self.kind != "defining":
            raise ValueError(f"unknown representation kind {self.kind!r}")

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def dim(self) -> int:
        if self.kind == "defining":
            return self.algebra.N
        if self.kind == "spin":
            return self.two_j + 1
        return self.inner.dim

    def __str__(self):
        if self.kind == "defining":
            return f"defining({self.algebra})"
        if self.kind == "spin":
            return f"spin-{self.j}"
        return f"{self.inner}(x)1"


def defining(algebra: AlgebraId) -> Representation:
    return Representation(algebra, "defining")


def spin(j) -> Representation:
    """Spin-j irreducible of su(2); ``j`` may be an int, Fraction, float or '3/2'."""
    two_j = 2 * Fraction(j)
    if two_j.denominator != 1:
        raise ValueError(f"j = {j} is not a half-integer")
    return Representation(SU2(), "spin", two_j=int(two_j))


def tensor_trivial(rep: Representation) -> Representation:
    return Representation(rep.algebra, "tensor_trivial", inner=rep)


def ladder_coefficient(j: Fraction, m: Fraction) -> float:
    """c_{j,m} = sqrt((j - m)(j + m + 1)), the amplitude of E_alpha v_m -> v_{m+1}."""
    return float(np.sqrt(float((j - m) * (j + m + 1))))


@functools.lru_cache(maxsize=None)
def spin_matrices(two_j: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(d rho_j(H), d rho_j(E_alpha), d rho_j(E_-alpha)) in the weight basis."""
    j = Fraction(two_j, 2)
    ms = [j - k for k in range(two_j + 1)]
    H = np.diag([float(2 * m) for m in ms]).astype(complex)
    E = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    for k in range(1, two_j + 1):
        # v_m at index k maps to v_{m+1} at index k-1
        E[k - 1, k] = ladder_coefficient(j, ms[k])
    F = E.T.copy()
    for a in (H, E, F):
        a.setflags(write=False)
    return H, E, F


def image(rep: Representation, mat) -> np.ndarray:
    """Complex-linear extension of d rho applied to a defining-model matrix.

    Accepts any traceless complex matrix (e.g. a root vector ``E_alpha``), not
    just elements of the compact real form.
    """
    mat = np.asarray(mat, dtype=complex)
    if rep.kind == "defining":
        return mat
    if rep.kind == "tensor_trivial":
        return image(rep.inner, mat)
    H, E, F = spin_matrices(rep.two_j)
    return mat[0, 0] * H + mat[0, 1] * E + mat[1, 0] * F


def apply(rep: Representation, x: AlgebraElement) -> np.ndarray:
    """d rho(x), a skew-Hermitian matrix on V."""
    if x.algebra != rep.algebra:
        raise ValueError(f"element of {x.algebra} cannot act in {rep}")
    return image(rep, x.mat)


def pullback(rep: Representation, d) -> AlgebraElement:
    """Inverse of ``apply`` on its image (least squares onto d rho(g))."""
    d = np.asarray(d, dtype=complex)
    if rep.kind == "defining":
        return AlgebraElement(rep.algebra, d)
    if rep.kind == "tensor_trivial":
        return pullback(rep.inner, d)
    if rep.two_j == 0:
        raise ValueError("spin-0 representation is not faithful")
    H, E, F = spin_matrices(rep.two_j)
    # images of H, E, F are Frobenius-orthogonal (distinct weight shifts)
    h = np.vdot(H, d) / np.vdot(H, H).real
    e = np.vdot(E, d) / np.vdot(E, E).real
    f = np.vdot(F, d) / np.vdot(F, F).real
    m = np.array([[h, e], [f, -h]])
    m = 0.5 * (m - m.conj().T)
    return AlgebraElement(rep.algebra, m)


def root_image_norm(rep: Representation, root: RootDatum | RootLabel) -> float:
    """||d rho(E_alpha)||_op."""
    if isinstance(root, RootDatum):
        label, vec = root.label, root.root_vector
    else:
        label = RootLabel(*root)
        vec = None
    if rep.kind == "tensor_trivial":
        return root_image_norm(rep.inner, root)
    if rep.kind == "defining":
        # a matrix unit has one nonzero entry, so its op-norm is that entry's modulus
        if vec is None:
            return 1.0
        return float(np.abs(vec).max())
    return _spin_root_norm(rep.two_j, label)


@functools.lru_cache(maxsize=None)
def _spin_root_norm(two_j: int, label: RootLabel) -> float:
    _, E, F = spin_matrices(two_j)
    if two_j == 0:
        return 0.0
    return op_norm(E if label == (0, 1) else F)


@dataclass(frozen=True)
class WeightDatum:
    """Weight on the orthonormal Cartan basis plus the basis vectors of V_lambda."""

    weight: np.ndarray = field(repr=False)
    basis_indices: tuple[int, ...]

    def evaluate(self, h) -> complex:
        """lambda(h) for a toral element h = i diag(theta)."""
        theta = np.diagonal(np.asarray(h)).imag
        N = self.weight.shape[0] + 1
        return 1j * float(self.weight @ (_cartan_vectors(N) @ theta))


def weight_decomposition(rep: Representation) -> list[WeightDatum]:
    """Simultaneous eigenspaces of d rho(t), grouped by weight."""
    u = _cartan_vectors(rep.algebra.N)
    # weight of the k-th standard vector under each orthonormal Cartan element
    diag_images = np.array([np.diagonal(image(rep, np.diag(1j * uk))).imag for uk in u])
    groups: dict[tuple, list[int]] = {}
    for k in range(rep.dim):
        key = tuple(np.round(diag_images[:, k], 12))
        groups.setdefault(key, []).append(k)
    out = []
    for idx in groups.values():
        out.append(WeightDatum(diag_images[:, idx[0]].copy(), tuple(idx)))
    return out
