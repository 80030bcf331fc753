"""Exact evolution, torus-root product formulas and their error sweeps."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .functionals import activity, curvature, profile_from_decomposition
from .linalg import expm_skew, op_norm
from .reps import Representation, apply, image
from .roots import AlgebraElement, TorusRootDecomposition, decompose

LOCAL_ERROR_VALIDITY = 0.1
ROUNDOFF_FACTOR = 1e3


def exact_evolution(rep: Representation, x: AlgebraElement, t: float) -> np.ndarray:
    """U_X(t) = exp(t d rho(X))."""
    return expm_skew(t * apply(rep, x))


def _parts(rep: Representation, decomp: TorusRootDecomposition) -> tuple[np.ndarray, np.ndarray]:
    return image(rep, decomp.x0), image(rep, decomp.root_part())


def strang(rep: Representation, decomp: TorusRootDecomposition, t: float) -> np.ndarray:
    """S(t) = exp(t/2 A) exp(t B) exp(t/2 A), A toral, B root part."""
    A, B = _parts(rep, decomp)
    half = expm_skew(0.5 * t * A)
    return half @ expm_skew(t * B) @ half


def trotter1(rep: Representation, decomp: TorusRootDecomposition, t: float) -> np.ndarray:
    """exp(t A) exp(t B)."""
    A, B = _parts(rep, decomp)
    return expm_skew(t * A) @ expm_skew(t * B)


SCHEMES = {"strang": strang, "trotter1": trotter1}


def composed_evolution(
    rep: Representation, decomp: TorusRootDecomposition, t: float, r: int, merge: bool = False
) -> np.ndarray:
    """strang(t/r)^r.

    With ``merge=True`` adjacent toral half steps are fused into full steps,
    which gives the same operator with r+1 toral exponentials instead of 2r.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    A, B = _parts(rep, decomp)
    dt = t / r
    half = expm_skew(0.5 * dt * A)
    root = expm_skew(dt * B)
    if not merge:
        step = half @ root @ half
        return np.linalg.matrix_power(step, r)
    full = expm_skew(dt * A)
    u = half @ root
    for _ in range(r - 1):
        u = u @ full @ root
    return u @ half


@dataclass
class SplitErrorReport:
    scheme: str
    times: list
    errors: list
    bound_rhs: list
    fitted_order: float | None
    c_hat: float | None
    curvature: float
    a1_root: float
    roundoff_floor: float
    retained: list = field(default_factory=list)
    t0: float | None = None

    @property
    def ratios(self) -> list:
        return [e / b if b > 0 else math.nan for e, b in zip(self.errors, self.bound_rhs)]

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "fitted_order": self.fitted_order,
            "c_hat": self.c_hat,
            "curvature": self.curvature,
            "a1_root": self.a1_root,
            "roundoff_floor": self.roundoff_floor,
            "t0": self.t0,
            "rows": [
                {"t": t, "error": e, "bound_rhs": b, "ratio": q}
                for t, e, b, q in zip(self.times, self.errors, self.bound_rhs, self.ratios)
            ],
        }

    def csv_rows(self) -> list[list]:
        return [[t, e, b, q] for t, e, b, q in zip(self.times, self.errors, self.bound_rhs, self.ratios)]


def fit_order(times, errors) -> float:
    """Least-squares slope of log(error) against log(t)."""
    slope, _ = np.polyfit(np.log(times), np.log(errors), 1)
    return float(slope)


def error_sweep(rep: Representation, x: AlgebraElement, times, scheme: str = "strang") -> SplitErrorReport:
    """Operator-norm splitting error on a time grid, with the t^3 (C + A1) bound."""
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    times = sorted((float(t) for t in times), reverse=True)
    if any(t <= 0 for t in times):
        raise ValueError("sweep times must be positive")
    if len(set(times)) != len(times):
        raise ValueError("sweep times must be distinct")
    decomp = decompose(x)
    prof = profile_from_decomposition(rep, decomp)
    curv, a1 = curvature(prof), activity(prof, 1)
    prop = SCHEMES[scheme]
    errors = [op_norm(exact_evolution(rep, x, t) - prop(rep, decomp, t)) for t in times]
    bound = [t**3 * (curv + a1) for t in times]
    floor = ROUNDOFF_FACTOR * np.finfo(float).eps * rep.dim
    keep = [i for i, e in enumerate(errors) if e >= floor]
    order = None
    if len(keep) >= 2:
        order = fit_order([times[i] for i in keep], [errors[i] for i in keep])
    c_hat = None
    if curv + a1 > 0 and keep:
        c_hat = max(errors[i] / bound[i] for i in keep)
    valid = [t for t, e in zip(times, errors) if e < LOCAL_ERROR_VALIDITY]
    t0 = max(valid) if valid else None
    if t0 is None or any(t > t0 for t in times):
        warnings.warn(f"some sweep times exceed the local-error validity threshold (t0 = {t0})", stacklevel=2)
    return SplitErrorReport(
        scheme, times, errors, bound, order, c_hat, curv, a1, floor, [times[i] for i in keep], t0
    )


def bound_violations(report: SplitErrorReport, slack: float = 1.5) -> list[float]:
    """Times where error > slack * c * t^3 (C + A1), c taken at the largest retained time."""
    if not report.retained:
        return []
    i0 = report.times.index(report.retained[0])
    if report.bound_rhs[i0] == 0:
        return []
    c = report.errors[i0] / report.bound_rhs[i0]
    return [
        t
        for t, e, b in zip(report.times, report.errors, report.bound_rhs)
        if t in report.retained and t < report.retained[0] and e > slack * c * b
    ]


def required_steps(rep: Representation, x: AlgebraElement, t: float, eps: float, c_hat: float) -> int:
    """Smallest r with r * c_hat * (t/r)^3 * (C + A1) <= eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    prof = profile_from_decomposition(rep, decompose(x))
    size = curvature(prof) + activity(prof, 1)
    if size == 0:
        return 1
    return max(1, math.ceil(math.sqrt(c_hat * abs(t) ** 3 * size / eps)))
