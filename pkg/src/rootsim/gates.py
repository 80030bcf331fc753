"""Root-gate circuits, effective generators and the root-activity lower bound.

A gate is ``exp(d rho(Y))`` with ``Y = s * generator``. Root-plane generators
are ``(E_a - E_-a)/sqrt(2)`` (k=1) and ``i(E_a + E_-a)/sqrt(2)`` (k=2), both
of unit Frobenius norm, so the step cap ``||Y||_g <= s0`` reads ``|s| <= s0``.
Toral gates use the supplied diagonal ``h`` as is and the cap applies to
``|s| * ||h||_g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import BranchCutError, EstimationError, GateCapError
from .functionals import activity_norm, norm_equivalence_constants
from .linalg import expm_skew, logm_unitary, op_norm
from .reps import Representation, apply, image, pullback
from .roots import AlgebraElement, AlgebraId, RootLabel, decompose, matrix_unit, random_element

DEFAULT_S0 = 0.1
DEFAULT_EPS0 = 1e-3
PRINCIPAL_MARGIN = 0.1
CAP_TOL = 1e-12


@dataclass(frozen=True)
class GateSpec:
    kind: str  # "toral" or "root"
    s: float
    label: RootLabel | None = None
    k: int | None = None
    h: AlgebraElement | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "toral":
            if self.h is None:
                raise ValueError("toral gate needs h")
            d = self.h.mat
            if np.any(d - np.diag(np.diagonal(d))):
                raise ValueError("toral generator must be diagonal")
        elif self.kind == "root":
            if self.label is None or not RootLabel(*self.label).positive:
                raise ValueError("root gate needs a positive root label (z < w)")
            if self.k not in (1, 2):
                raise ValueError("root gate k must be 1 or 2")
            object.__setattr__(self, "label", RootLabel(*self.label))
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def generator(self, algebra: AlgebraId) -> AlgebraElement:
        """Unscaled generator: h, or the unit root-plane element."""
        if self.kind == "toral":
            return self.h
        N = algebra.N
        e = matrix_unit(N, *self.label)
        f = e.T
        g = (e - f) if self.k == 1 else 1j * (e + f)
        return AlgebraElement(algebra, g / math.sqrt(2.0))

    def step(self, algebra: AlgebraId) -> AlgebraElement:
        """Y = s * generator."""
        return self.s * self.generator(algebra)

    def size(self, algebra: AlgebraId) -> float:
        """||Y||_g."""
        if self.kind == "root":
            return abs(self.s)
        return abs(self.s) * self.h.norm()

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "label": None, "k": None, "s": self.s}
        if self.kind == "root":
            d["label"] = [self.label.z, self.label.w]
            d["k"] = self.k
        else:
            d["h"] = [float(v) for v in np.diagonal(self.h.mat).imag]
        return d

    @classmethod
    def from_dict(cls, d: dict, algebra: AlgebraId) -> "GateSpec":
        if d["kind"] == "toral":
            h = AlgebraElement(algebra, np.diag(1j * np.asarray(d["h"], dtype=float)))
            return cls("toral", float(d["s"]), h=h)
        return cls("root", float(d["s"]), label=RootLabel(*d["label"]), k=int(d["k"]))


def toral_gate(h: AlgebraElement, s: float) -> GateSpec:
    return GateSpec("toral", s, h=h)


def root_gate(label, k: int, s: float) -> GateSpec:
    return GateSpec("root", s, label=RootLabel(*label), k=k)


@dataclass(frozen=True)
class Circuit:
    algebra: AlgebraId
    gates: tuple
    s0: float = DEFAULT_S0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.size(self.algebra) > self.s0 * (1 + CAP_TOL):
                raise GateCapError("gate step exceeds cap")

    def __len__(self):
        return len(self.gates)

    def steps(self) -> list[AlgebraElement]:
        return [g.step(self.algebra) for g in self.gates]

    def inverse(self) -> "Circuit":
        return Circuit(self.algebra, [_negated(g) for g in reversed(self.gates)], self.s0)

    def to_list(self) -> list[dict]:
        return [g.to_dict() for g in self.gates]


def _negated(g: GateSpec) -> GateSpec:
    return GateSpec(g.kind, -g.s, g.label, g.k, g.h)


def gate_unitary(rep: Representation, g: GateSpec, s0: float = DEFAULT_S0) -> np.ndarray:
    if g.size(rep.algebra) > s0 * (1 + CAP_TOL):
        raise GateCapError("gate step exceeds cap")
    return expm_skew(apply(rep, g.step(rep.algebra)))


def circuit_unitary(rep: Representation, c: Circuit) -> np.ndarray:
    """W = U_1 U_2 ... U_N."""
    if c.algebra != rep.algebra:
        raise ValueError("circuit and representation use different algebras")
    w = np.eye(rep.dim, dtype=complex)
    for g in c.gates:
        w = w @ gate_unitary(rep, g, c.s0)
    return w


def principal_log(rep: Representation, u: np.ndarray) -> AlgebraElement:
    """Z in g with rho(exp Z) = u from the principal logarithm of u."""
    try:
        d = logm_unitary(u)
    except BranchCutError as exc:
        raise BranchCutError(
            "logarithm branch ambiguous; shrink s0 or split the circuit into shorter pieces"
        ) from exc
    if abs(np.trace(d)) > 1e-9 * max(1.0, np.abs(d).max()) * d.shape[0]:
        raise BranchCutError(
            "principal logarithm leaves the special unitary algebra; shrink s0 or split the circuit"
        )
    d = d - np.trace(d) / d.shape[0] * np.eye(d.shape[0])
    z = pullback(rep, d)
    if op_norm(image(rep, z.mat) - d) > 1e-8 * max(1.0, op_norm(d)):
        raise BranchCutError("logarithm is not in the image of the representation")
    return z


def effective_generator(rep: Representation, c: Circuit) -> AlgebraElement:
    return principal_log(rep, circuit_unitary(rep, c))


def in_principal_regime(rep: Representation, z: AlgebraElement) -> bool:
    return op_norm(apply(rep, z)) < math.pi - PRINCIPAL_MARGIN


class LogStability(NamedTuple):
    eps: float
    act_distance: float
    in_regime: bool


def log_stability_check(
    rep: Representation, x: AlgebraElement, t: float, w: Circuit | np.ndarray, eps0: float = DEFAULT_EPS0
) -> LogStability:
    """eps = ||W - U_X(t)||_op and ||Z - tX||_act for Z the principal log of W."""
    tx = t * x
    if not in_principal_regime(rep, tx):
        raise BranchCutError("t d rho(X) lies outside the principal-branch regime")
    u = circuit_unitary(rep, w) if isinstance(w, Circuit) else np.asarray(w)
    eps = op_norm(u - expm_skew(apply(rep, tx)))
    z = principal_log(rep, u)
    dist = activity_norm(rep, z - tx)
    return LogStability(eps, dist, eps <= eps0)


def estimate_log_constant(
    rep: Representation, eps0: float = DEFAULT_EPS0, samples: int = 200, seed: int = 0
) -> float:
    """max ||Z - tX||_act / eps over random targets perturbed within eps0.

    Protocol: X Gaussian with unit Frobenius norm, t uniform so that
    ||t d rho(X)||_op <= pi - 0.5, perturbation W = U exp(delta K) with K a
    unit Gaussian element and delta chosen so ||d rho(delta K)||_op is
    uniform in [0.05, 1] * eps0.
    """
    rng = np.random.default_rng(seed)
    alg = rep.algebra
    best = 0.0
    for _ in range(samples):
        x = random_element(alg, rng)
        tmax = (math.pi - 0.5) / op_norm(apply(rep, x))
        t = rng.uniform(0.05, 1.0) * tmax
        k = random_element(alg, rng)
        delta = rng.uniform(0.05, 1.0) * eps0 / op_norm(apply(rep, k))
        u = expm_skew(apply(rep, t * x)) @ expm_skew(apply(rep, delta * k))
        chk = log_stability_check(rep, x, t, u, eps0)
        if chk.eps > 1e-14:
            best = max(best, chk.act_distance / chk.eps)
    if best == 0.0:
        raise EstimationError("cannot estimate c_rho")
    return best


@dataclass
class LowerBoundReport:
    m1: float
    M1: float
    c_rho: float
    eps0: float
    s0: float
    c1: float
    c2: float
    seed: int
    samples: int
    representation: str = ""

    def n_lower(self, act_norm: float, t: float) -> int:
        """max(0, ceil(c1 t ||X||_act - c2))."""
        return max(0, math.ceil(self.c1 * t * act_norm - self.c2))

    def to_dict(self) -> dict:
        return {
            "representation": self.representation,
            "m1": self.m1,
            "M1": self.M1,
            "c_rho": self.c_rho,
            "c_rho_is_estimate": True,
            "eps0": self.eps0,
            "s0": self.s0,
            "c1": self.c1,
            "c2": self.c2,
            "seed": self.seed,
            "samples": self.samples,
        }


def lower_bound(
    rep: Representation,
    s0: float = DEFAULT_S0,
    eps0: float = DEFAULT_EPS0,
    samples: int = 200,
    seed: int = 0,
    root_scale=None,
) -> LowerBoundReport:
    """Constants c1 = 1/(M1 s0), c2 = c_rho eps0 / (M1 s0) for N_min >= c1 t ||X||_act - c2."""
    m1, M1 = norm_equivalence_constants(rep, samples=max(samples, 1), seed=seed, root_scale=root_scale)
    c_rho = estimate_log_constant(rep, eps0, samples, seed)
    c1 = 1.0 / (M1 * s0)
    c2 = c_rho * eps0 / (M1 * s0)
    return LowerBoundReport(m1, M1, c_rho, eps0, s0, c1, c2, seed, samples, str(rep))


def _split(y_norm: float, s0: float) -> int:
    return max(1, math.ceil(y_norm / s0 * (1 - 1e-12)))


def _toral_pieces(h: np.ndarray, algebra: AlgebraId, s0: float) -> list[GateSpec]:
    n = float(np.linalg.norm(h))
    if n == 0.0:
        return []
    m = _split(n, s0)
    unit = AlgebraElement(algebra, h / n)
    return [toral_gate(unit, n / m)] * m


def _plane_pieces(label: RootLabel, x: complex, tau: float, algebra: AlgebraId, s0: float) -> list[GateSpec]:
    # x E_zw - conj(x) E_wz = |x| Ad(exp(phi/2 h)) (E_zw - E_wz), h = i(E_zz - E_ww)
    z, w = label
    N = algebra.N
    phi = float(np.angle(x))
    h = np.zeros((N, N), dtype=complex)
    h[z, z], h[w, w] = 1j, -1j
    conj = _toral_pieces(0.5 * phi * h, algebra, s0)
    total = tau * abs(x) * math.sqrt(2.0)
    m = _split(abs(total), s0)
    body = [root_gate(label, 1, total / m)] * m
    back = [_negated(g) for g in reversed(conj)]
    return conj + body + back


def compile_strang(rep: Representation, x: AlgebraElement, t: float, r: int, s0: float = DEFAULT_S0) -> Circuit:
    """Root-gate circuit for strang(t/r)^r.

    Each root-pair exponential exp(tau x_a E_a - ...) is realised exactly by a
    root gate conjugated with toral gates. With several active root pairs the
    root factor is itself a product over pairs (first-order in tau), which is
    exact only when one pair is active, as in su(2).
    """
    alg = x.algebra
    dec = decompose(x)
    dt = t / r
    half = _toral_pieces(0.5 * dt * dec.x0, alg, s0)
    root = []
    for label, c in dec.coeffs.items():
        if label.positive and c != 0:
            root += _plane_pieces(label, c, dt, alg, s0)
    gates = []
    for _ in range(r):
        gates += half + root + half
    return Circuit(alg, gates, s0)
