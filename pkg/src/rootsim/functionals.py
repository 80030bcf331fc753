"""Root activity, root curvature and related invariants of a generator.

A profile lists, for every root with a nonzero coefficient, the triple
``(|x_alpha|, ||d rho(E_alpha)||_op, alpha(X0))``. Every functional below is
computed from the profile alone.

Root vectors may be rescaled with ``root_scale`` (a number, or a mapping from
``RootLabel`` to a number): ``E'_alpha = s E_alpha`` turns the coefficient
into ``x_alpha / s`` and the operator norm into ``s ||d rho(E_alpha)||``.
All functionals are invariant under this, which the tests exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .reps import Representation, image, root_image_norm
from .roots import (
    AlgebraElement,
    RootLabel,
    TorusRootDecomposition,
    decompose,
    matrix_unit,
    positive_roots,
)


class RootEntry(NamedTuple):
    label: RootLabel
    abs_x: float
    op_norm_E: float
    alpha_x0: complex


@dataclass(frozen=True)
class RootProfile:
    entries: list[RootEntry]
    n_roots: int = 0

    def __len__(self):
        return len(self.entries)

    def weights(self) -> np.ndarray:
        """|x_alpha| * ||d rho(E_alpha)|| per entry."""
        return np.array([e.abs_x * e.op_norm_E for e in self.entries], dtype=float)


def _scale_for(root_scale, label) -> float:
    if root_scale is None:
        return 1.0
    if isinstance(root_scale, (int, float)):
        return float(root_scale)
    return float(root_scale.get(label, 1.0))


def root_profile(rep: Representation, x: AlgebraElement, root_scale=None) -> RootProfile:
    if x.algebra != rep.algebra:
        raise ValueError(f"element of {x.algebra} cannot act in {rep}")
    return profile_from_decomposition(rep, decompose(x), root_scale)


def profile_from_decomposition(rep: Representation, decomp: TorusRootDecomposition, root_scale=None) -> RootProfile:
    entries = []
    for label, c in decomp.coeffs.items():
        if c == 0:
            continue
        s = _scale_for(root_scale, label)
        entries.append(
            RootEntry(label, abs(c) / s, root_image_norm(rep, label) * s, decomp.alpha_x0(label))
        )
    return RootProfile(entries, decomp.algebra.n_roots)


def activity(profile: RootProfile, p: float = 1) -> float:
    """(sum (|x_alpha| ||d rho(E_alpha)||)^p)^(1/p); the sup for p = inf."""
    if not p >= 1:
        raise ValueError(f"activity needs p >= 1, got {p}")
    w = profile.weights()
    if w.size == 0:
        return 0.0
    if math.isinf(p):
        return float(w.max())
    if p == 1:
        return float(w.sum())
    return float(np.sum(w**p) ** (1.0 / p))


def curvature(profile: RootProfile) -> float:
    if not profile.entries:
        return 0.0
    terms = np.array([abs(e.alpha_x0) * e.abs_x * e.op_norm_E for e in profile.entries])
    return float(np.sqrt(np.sum(terms**2)))


def activity_norm(rep: Representation, y: AlgebraElement, root_scale=None) -> float:
    """||y||_act = A_1(y_root)."""
    return activity(root_profile(rep, y, root_scale), 1)


def max_root_value(x0) -> float:
    """M(X0) = max over all roots of |alpha(X0)|, i.e. the spread of theta."""
    theta = np.diagonal(np.asarray(x0)).imag
    return float(theta.max() - theta.min())


@dataclass
class FunctionalReport:
    a_p: dict
    curvature: float
    act_seminorm: float
    m_x0: float
    c_struct: float
    c_struct_full: float
    n_active: int
    convention: str = "matrix-unit"

    def to_dict(self) -> dict:
        d = {
            "convention": self.convention,
            "a_1": self.a_p[1],
            "a_2": self.a_p[2],
            "a_inf": self.a_p[math.inf],
            "curvature": self.curvature,
            "act_seminorm": self.act_seminorm,
            "m_x0": self.m_x0,
            "c_struct": self.c_struct,
            "c_struct_full": self.c_struct_full,
            "n_active": self.n_active,
        }
        for p, v in self.a_p.items():
            if p not in (1, 2, math.inf):
                d[f"a_{p:g}"] = v
        return d


def functional_report(rep: Representation, x: AlgebraElement, extra_p=(), root_scale=None) -> FunctionalReport:
    prof = root_profile(rep, x, root_scale)
    ps = [1, 2, math.inf, *extra_p]
    a_p = {p: activity(prof, p) for p in ps}
    return FunctionalReport(
        a_p=a_p,
        curvature=curvature(prof),
        act_seminorm=a_p[1],
        m_x0=max_root_value(np.diag(np.diagonal(x.mat))),
        c_struct=math.sqrt(len(prof)),
        c_struct_full=math.sqrt(prof.n_roots),
        n_active=len(prof),
    )


def _weighted_root_sum(rep: Representation, decomp: TorusRootDecomposition, power: int) -> np.ndarray:
    N = decomp.algebra.N
    m = np.zeros((N, N), dtype=complex)
    for label, c in decomp.coeffs.items():
        m += c * decomp.alpha_x0(label) ** power * matrix_unit(N, *label)
    # d rho is complex-linear, so the sum can be formed before mapping
    return image(rep, m)


def commutator_via_roots(rep: Representation, decomp: TorusRootDecomposition) -> np.ndarray:
    """[d rho(X0), d rho(X_root)] = sum x_alpha alpha(X0) d rho(E_alpha)."""
    return _weighted_root_sum(rep, decomp, 1)


def nested_commutator_AAB(rep: Representation, decomp: TorusRootDecomposition) -> np.ndarray:
    """[A, [A, B]] = sum x_alpha alpha(X0)^2 d rho(E_alpha)."""
    return _weighted_root_sum(rep, decomp, 2)


class NormConstants(NamedTuple):
    m1: float
    M1: float


def _pair_weights(rep: Representation, root_scale=None) -> tuple[list[RootLabel], np.ndarray]:
    pairs = positive_roots(rep.algebra)
    c = np.empty(len(pairs))
    for i, lab in enumerate(pairs):
        tot = 0.0
        for l in (lab, lab.negate()):
            s = _scale_for(root_scale, l)
            tot += (1.0 / s) * (root_image_norm(rep, l) * s)
        c[i] = tot
    return pairs, c


def _ratios(c: np.ndarray, u: np.ndarray) -> np.ndarray:
    # u: (samples, pairs) complex upper-triangle entries of Y_root; the lower
    # triangle is -conj(u), so ||Y_root||_F^2 = 2 sum |u|^2
    au = np.abs(u)
    return (au @ c) / np.sqrt(2.0 * np.sum(au**2, axis=-1))


def sample_activity_ratios(rep: Representation, samples: int, rng: np.random.Generator, root_scale=None) -> np.ndarray:
    """||Y||_act / ||Y_root||_g for Gaussian Y in the root subspace."""
    _, c = _pair_weights(rep, root_scale)
    u = rng.standard_normal((samples, c.size)) + 1j * rng.standard_normal((samples, c.size))
    return _ratios(c, u)


def norm_equivalence_constants(
    rep: Representation, samples: int = 1000, seed: int = 0, root_scale=None, refine_steps: int = 20
) -> NormConstants:
    """Empirical (m1, M1) with m1 ||Y_root||_g <= ||Y||_act <= M1 ||Y_root||_g.

    Random sampling over the root subspace, then deterministic refinement:
    single root-plane directions for the minimum and the fixed-point ascent
    ``u <- c * phase(u)`` (monotone for a convex numerator on the sphere) for
    the maximum.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    pairs, c = _pair_weights(rep, root_scale)
    if not np.any(c > 0):
        raise ValueError(f"{rep} has no roots acting nontrivially")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((samples, c.size)) + 1j * rng.standard_normal((samples, c.size))
    r = _ratios(c, u)
    lo, hi = float(r.min()), float(r.max())

    # coordinate directions: one root plane at a time
    lo = min(lo, float((c[c > 0] / np.sqrt(2.0)).min()))
    best = u[int(np.argmax(r))]
    for _ in range(refine_steps):
        nxt = c * np.exp(1j * np.angle(best))
        val = float(_ratios(c, nxt[None, :])[0])
        if val <= hi * (1 + 1e-15):
            hi = max(hi, val)
            break
        hi, best = val, nxt
    return NormConstants(lo, hi)
