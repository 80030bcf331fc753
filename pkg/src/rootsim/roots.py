"""Cartan data for su(2), su(N) and su(2^n) with the diagonal torus.

Roots are labelled by ordered index pairs ``(z, w)`` with root vector the
matrix unit ``E_zw``. For su(2) the pair ``(0, 1)`` is the positive root
``+alpha`` (``E_alpha = [[0, 1], [0, 0]]``) and ``(1, 0)`` is ``-alpha``.

The inner product on the algebra is the Frobenius form ``Tr(X^dagger Y)``.
The Killing form differs from it by the positive factor ``2N``;
``killing_scale`` returns the factor for norms.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from itertools import permutations
from typing import NamedTuple

import numpy as np

from .errors import SizeCapError
from .linalg import as_cmat, dagger

MAX_QUBITS = 10
ROOT_ENUMERATION_MAX_DIM = 64
ELEMENT_TOL = 1e-12


@dataclass(frozen=True)
class AlgebraId:
    """Identifier for a supported compact algebra.

    ``family`` is one of ``"SU2"``, ``"SUN"`` (with ``N``) or ``"SU2N"``
    (with ``n_qubits``; structurally su(2^n_qubits)).
    """

    family: str
    N: int | None = None
    n_qubits: int | None = None

    def __post_init__(self):
        if self.family == "SU2":
            object.__setattr__(self, "N", 2)
        elif self.family == "SUN":
            if self.N is None or self.N < 2:
                raise ValueError("SUN needs N >= 2")
        elif self.family == "SU2N":
            if self.n_qubits is None or self.n_qubits < 1:
                raise ValueError("SU2N needs n_qubits >= 1")
            if self.n_qubits > MAX_QUBITS:
                raise SizeCapError(
                    f"{self.n_qubits} qubits exceeds the dense cap of {MAX_QUBITS}; use grouped profile"
                )
            object.__setattr__(self, "N", 2**self.n_qubits)
        else:
            raise ValueError(f"unknown algebra family {self.family!r}")

    @property
    def dim(self) -> int:
        """Dimension of the defining representation."""
        return self.N

    @property
    def rank(self) -> int:
        return self.N - 1

    @property
    def n_roots(self) -> int:
        return self.N * (self.N - 1)

    def __str__(self):
        if self.family == "SU2":
            return "su(2)"
        if self.family == "SUN":
            return f"su({self.N})"
        return f"su(2^{self.n_qubits})"


def SU2() -> AlgebraId:
    return AlgebraId("SU2")


def SUN(N: int) -> AlgebraId:
    return AlgebraId("SUN", N=N)


def SU2N(n_qubits: int) -> AlgebraId:
    return AlgebraId("SU2N", n_qubits=n_qubits)


def killing_scale(algebra: AlgebraId) -> float:
    """Factor c with ||X||_Killing = c * ||X||_Frobenius on su(N)."""
    return float(np.sqrt(2 * algebra.N))


class RootLabel(NamedTuple):
    z: int
    w: int

    def negate(self) -> "RootLabel":
        return RootLabel(self.w, self.z)

    @property
    def positive(self) -> bool:
        return self.z < self.w


def root_name(algebra: AlgebraId, label: RootLabel) -> str:
    if algebra.family == "SU2":
        return "+alpha" if label == (0, 1) else "-alpha"
    return f"e{label.z}-e{label.w}"


def parse_root_name(algebra: AlgebraId, name) -> RootLabel:
    if algebra.family == "SU2" and isinstance(name, str):
        return RootLabel(0, 1) if name.startswith("+") else RootLabel(1, 0)
    z, w = name
    return RootLabel(int(z), int(w))


@functools.lru_cache(maxsize=None)
def _cartan_vectors(N: int) -> np.ndarray:
    # Rows u_k (k = 1..N-1): orthonormal, each summing to zero.
    u = np.zeros((N - 1, N))
    for k in range(1, N):
        u[k - 1, :k] = 1.0
        u[k - 1, k] = -k
        u[k - 1] /= np.sqrt(k * (k + 1))
    u.setflags(write=False)
    return u


def cartan_basis(algebra: AlgebraId) -> list[np.ndarray]:
    """Frobenius-orthonormal basis ``i*diag(u_k)`` of the torus."""
    return [np.diag(1j * u) for u in _cartan_vectors(algebra.N)]


def cartan_coords(algebra: AlgebraId, h) -> np.ndarray:
    """Real coordinates of a toral element on ``cartan_basis``."""
    theta = np.diagonal(np.asarray(h)).imag
    return _cartan_vectors(algebra.N) @ theta


@dataclass(frozen=True)
class AlgebraElement:
    """A traceless skew-Hermitian matrix in the defining model."""

    algebra: AlgebraId
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = as_cmat(self.mat)
        N = self.algebra.N
        if m.shape != (N, N):
            raise ValueError(f"{self.algebra} element must be {N}x{N}, got {m.shape}")
        scale = max(1.0, float(np.abs(m).max(initial=0.0)))
        if np.abs(m + dagger(m)).max(initial=0.0) > ELEMENT_TOL * scale:
            raise ValueError("algebra element must be skew-Hermitian")
        if abs(np.trace(m)) > ELEMENT_TOL * scale * N:
            raise ValueError("algebra element must be traceless")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.mat + other.mat)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.mat - other.mat)

    def __mul__(self, s: float) -> "AlgebraElement":
        return AlgebraElement(self.algebra, float(s) * self.mat)

    __rmul__ = __mul__

    def norm(self) -> float:
        """Frobenius norm, the package's ||.||_g."""
        return float(np.linalg.norm(self.mat))

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.mat @ other.mat - other.mat @ self.mat)


def element(algebra: AlgebraId, mat) -> AlgebraElement:
    return AlgebraElement(algebra, np.asarray(mat, dtype=complex))


def su2_element(a: float, b: float, c: float) -> AlgebraElement:
    """``a*iH + b*(E_a - E_-a) + c*i*(E_a + E_-a)`` in su(2)."""
    H = np.diag([1.0, -1.0])
    E = np.array([[0.0, 1.0], [0.0, 0.0]])
    F = E.T
    return element(SU2(), a * 1j * H + b * (E - F) + c * 1j * (E + F))


def random_element(algebra: AlgebraId, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    """Gaussian element, Frobenius-normalised to ``scale``."""
    N = algebra.N
    g = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    m = 0.5 * (g - dagger(g))
    m -= np.trace(m) / N * np.eye(N)
    m *= scale / np.linalg.norm(m)
    return AlgebraElement(algebra, m)


@dataclass(frozen=True)
class RootDatum:
    label: RootLabel
    root_vector: np.ndarray = field(repr=False)
    functional: np.ndarray = field(repr=False)

    def evaluate(self, h) -> complex:
        """alpha(h) for a toral element h (purely imaginary)."""
        # cartan_coords only needs N, recovered from the functional length
        N = self.functional.shape[0] + 1
        theta = np.diagonal(np.asarray(h)).imag
        return 1j * float(self.functional @ (_cartan_vectors(N) @ theta))


def matrix_unit(N: int, z: int, w: int) -> np.ndarray:
    e = np.zeros((N, N), dtype=complex)
    e[z, w] = 1.0
    return e


def root_datum(algebra: AlgebraId, label: RootLabel) -> RootDatum:
    """Single root datum; no enumeration cap applies."""
    N = algebra.N
    z, w = label
    if not (0 <= z < N and 0 <= w < N) or z == w:
        raise ValueError(f"invalid root label {label} for {algebra}")
    u = _cartan_vectors(N)
    return RootDatum(RootLabel(z, w), matrix_unit(N, z, w), u[:, z] - u[:, w])


def check_enumerable(algebra: AlgebraId) -> None:
    if algebra.N > ROOT_ENUMERATION_MAX_DIM:
        raise SizeCapError("root enumeration too large; use grouped profile")


@functools.lru_cache(maxsize=32)
def _enumerate(algebra: AlgebraId) -> tuple[RootDatum, ...]:
    N = algebra.N
    return tuple(root_datum(algebra, RootLabel(z, w)) for z in range(N) for w in range(N) if z != w)


def enumerate_roots(algebra: AlgebraId) -> list[RootDatum]:
    """All N(N-1) matrix-unit roots. For su(2): ``[+alpha, -alpha]``."""
    check_enumerable(algebra)
    return list(_enumerate(algebra))


def positive_roots(algebra: AlgebraId) -> list[RootLabel]:
    N = algebra.N
    return [RootLabel(z, w) for z in range(N) for w in range(z + 1, N)]


@dataclass(frozen=True)
class TorusRootDecomposition:
    """Toral part ``x0`` (diagonal) plus sparse root coefficients."""

    algebra: AlgebraId
    x0: np.ndarray = field(repr=False)
    coeffs: dict

    def root_part(self) -> np.ndarray:
        N = self.algebra.N
        m = np.zeros((N, N), dtype=complex)
        for (z, w), c in self.coeffs.items():
            m[z, w] = c
        return m

    def reconstruct(self) -> np.ndarray:
        return self.x0 + self.root_part()

    def toral_element(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.x0)

    def root_element(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.root_part())

    def alpha_x0(self, label: RootLabel) -> complex:
        """alpha_zw(X0) = i(theta_z - theta_w) where X0 = i diag(theta)."""
        d = np.diagonal(self.x0)
        return 1j * (d[label.z].imag - d[label.w].imag)


def decompose(x: AlgebraElement) -> TorusRootDecomposition:
    """Orthogonal split into the diagonal torus and the root spaces."""
    m = x.mat
    x0 = np.diag(np.diagonal(m)).astype(complex)
    off = m - x0
    zs, ws = np.nonzero(off)
    coeffs = {RootLabel(int(z), int(w)): complex(off[z, w]) for z, w in zip(zs, ws)}
    return TorusRootDecomposition(x.algebra, x0, coeffs)


def weyl_representative(algebra: AlgebraId, perm) -> np.ndarray:
    """Signed permutation matrix g with g e_i = +-e_perm[i] and det g = 1."""
    N = algebra.N
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(N)):
        raise ValueError(f"{perm} is not a permutation of range({N})")
    g = np.zeros((N, N))
    g[perm, range(N)] = 1.0
    if round(np.linalg.det(g)) < 0:
        g[:, 0] *= -1.0
    return g


def weyl_act(algebra: AlgebraId, perm, x: AlgebraElement) -> AlgebraElement:
    """Ad(g) x = g x g^-1 for the signed permutation representative of perm."""
    if x.algebra != algebra:
        raise ValueError("element belongs to a different algebra")
    g = weyl_representative(algebra, perm)
    return AlgebraElement(algebra, g @ x.mat @ g.T)


def weyl_group(algebra: AlgebraId):
    """Iterate over all permutations of the defining basis (N! elements)."""
    if algebra.N > 8:
        raise SizeCapError("Weyl group enumeration limited to N <= 8")
    return permutations(range(algebra.N))
