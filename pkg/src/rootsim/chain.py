"""Open-boundary spin-chain Hamiltonians and their grouped root profiles.

Sites are 0-indexed in code. The JSON shorthand uses 1-indexed sites for the
sparse-field support, matching the usual ``j = 1..n`` labelling.

Pauli strings act on ``(C^2)^n`` with site 0 as the leftmost tensor factor.
The generator of a Hamiltonian ``H = sum c P`` is ``X = -iH``.

Two root conventions are available. "matrix-unit" runs the generic su(2^n)
machinery on the dense matrix. "grouped" assigns one root to each Pauli flip
pattern (the set of sites carrying X or Y); its root vector is the grouped
off-diagonal operator normalised to unit operator norm.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, NamedTuple

import numpy as np

from .errors import SizeCapError
from .functionals import activity, curvature, root_profile
from .linalg import commutator, op_norm
from .reps import defining, image
from .roots import MAX_QUBITS, SU2N, AlgebraElement, decompose

MODELS = ("tfim", "sparse", "xxx")
LOCAL_CAP = 16

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


@dataclass(frozen=True)
class PauliTerm:
    coeff: float
    ops: str

    def __post_init__(self):
        if not math.isfinite(self.coeff):
            raise ValueError("Pauli coefficient must be finite")
        if not self.ops or set(self.ops) - set("IXYZ"):
            raise ValueError(f"bad Pauli string {self.ops!r}")
        if set(self.ops) == {"I"} and self.coeff != 0:
            raise ValueError("identity terms are not traceless")

    @property
    def flip(self) -> int:
        """Bitmask of sites carrying X or Y (bit k is site k)."""
        return sum(1 << k for k, p in enumerate(self.ops) if p in "XY")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, p in enumerate(self.ops) if p != "I")


def pauli_matrix(ops: str) -> np.ndarray:
    return reduce(np.kron, (_PAULI[p] for p in ops))


@dataclass(frozen=True)
class ChainSpec:
    """Open chain. ``J`` has n-1 bonds for tfim/sparse, one value for xxx.

    ``h`` is a length-n list for tfim and a mapping site -> field (0-indexed)
    for sparse.
    """

    model: str
    n: int
    J: tuple = ()
    h: object = ()

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("chain needs n >= 1")
        if self.model == "xxx":
            J = tuple(np.atleast_1d(np.asarray(self.J, dtype=float)).tolist())
            if len(J) != 1:
                raise ValueError("xxx takes a single coupling J")
            object.__setattr__(self, "J", J)
            object.__setattr__(self, "h", ())
            return
        J = _broadcast(self.J, self.n - 1, "J")
        object.__setattr__(self, "J", J)
        if self.model == "tfim":
            object.__setattr__(self, "h", _broadcast(self.h, self.n, "h"))
        else:
            h = {int(k): float(v) for k, v in dict(self.h).items()}
            if any(not 0 <= k < self.n for k in h):
                raise ValueError("sparse support must lie inside the chain")
            object.__setattr__(self, "h", dict(sorted(h.items())))

    @property
    def support(self) -> tuple[int, ...]:
        if self.model == "sparse":
            return tuple(self.h)
        if self.model == "tfim":
            return tuple(range(self.n))
        return ()

    @classmethod
    def from_json(cls, d: dict) -> "ChainSpec":
        """Shorthand ``{"model", "n", "J", "h", "support"}``; support is 1-indexed."""
        model, n = d["model"], int(d["n"])
        if model == "sparse":
            support = [int(s) - 1 for s in d.get("support", [])]
            h = d.get("h", [])
            if isinstance(h, dict):
                h = {int(k) - 1: v for k, v in h.items()}
            else:
                h = list(np.broadcast_to(np.asarray(h, dtype=float), (len(support),)))
                h = dict(zip(support, h))
            if support and set(h) != set(support):
                raise ValueError("sparse h and support disagree")
            return cls(model, n, d.get("J", 0.0), h)
        return cls(model, n, d.get("J", 0.0), d.get("h", 0.0))

    def to_json(self) -> dict:
        d = {"model": self.model, "n": self.n, "J": list(self.J)}
        if self.model == "tfim":
            d["h"] = list(self.h)
        elif self.model == "sparse":
            d["support"] = [k + 1 for k in self.h]
            d["h"] = list(self.h.values())
        return d


def _broadcast(v, length: int, name: str) -> tuple:
    a = np.asarray(v, dtype=float)
    if a.ndim == 0:
        a = np.full(length, float(a))
    if a.shape != (length,):
        raise ValueError(f"{name} must have length {length}, got {a.shape}")
    return tuple(a.tolist())


def _ops(n: int, sites: dict) -> str:
    return "".join(sites.get(k, "I") for k in range(n))


def build_hamiltonian(spec: ChainSpec) -> list[PauliTerm]:
    """Pauli terms of H; the generator is X = -iH."""
    n = spec.n
    terms = []
    if spec.model == "xxx":
        J = spec.J[0]
        for j in range(n - 1):
            for p in "XYZ":
                terms.append(PauliTerm(J, _ops(n, {j: p, j + 1: p})))
        return terms
    for j, J in enumerate(spec.J):
        terms.append(PauliTerm(J, _ops(n, {j: "Z", j + 1: "Z"})))
    fields = enumerate(spec.h) if spec.model == "tfim" else spec.h.items()
    for j, h in fields:
        terms.append(PauliTerm(h, _ops(n, {j: "X"})))
    return terms


def terms_from_json(d: dict) -> tuple[int, list[PauliTerm]]:
    n = int(d["n"])
    terms = [PauliTerm(float(t["coeff"]), str(t["ops"])) for t in d["terms"]]
    for t in terms:
        if len(t.ops) != n:
            raise ValueError(f"Pauli string {t.ops!r} does not have length {n}")
    return n, terms


def hamiltonian_matrix(terms: list[PauliTerm], n: int) -> np.ndarray:
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for t in terms:
        if t.coeff != 0:
            h += t.coeff * pauli_matrix(t.ops)
    return h


def to_algebra_element(terms: list[PauliTerm], n: int, cap: int = MAX_QUBITS) -> AlgebraElement:
    """Dense -i sum c P in su(2^n)."""
    if n > cap:
        raise SizeCapError(f"{n} qubits exceeds the dense cap of {cap}; use grouped profile")
    return AlgebraElement(SU2N(n), -1j * hamiltonian_matrix(terms, n))


class GroupedEntry(NamedTuple):
    flip: int
    abs_x: float
    op_norm_E: float
    alpha_bound: float


@dataclass(frozen=True)
class GroupedRootProfile:
    n: int
    entries: list = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def patterns(self) -> list[int]:
        return [e.flip for e in self.entries]


def _local_norm(terms: list[PauliTerm]) -> float:
    sites = sorted({k for t in terms for k in t.support})
    if len(sites) > LOCAL_CAP:
        raise SizeCapError(f"grouped operator spans {len(sites)} sites; local cap is {LOCAL_CAP}")
    m = 0
    for t in terms:
        m = m + t.coeff * pauli_matrix("".join(t.ops[k] for k in sites))
    return op_norm(m)


def _max_diag_jump(diag_terms: list[PauliTerm]) -> float:
    # D(z) - D(z xor f) = 2 sum c_T s_T(z) over diagonal terms meeting f an odd number of times
    if not diag_terms:
        return 0.0
    sites = sorted({k for t in diag_terms for k in t.support})
    if len(sites) > LOCAL_CAP:
        raise SizeCapError(f"diagonal neighbourhood spans {len(sites)} sites; local cap is {LOCAL_CAP}")
    pos = {k: i for i, k in enumerate(sites)}
    masks = [sum(1 << pos[k] for k in t.support) for t in diag_terms]
    coeffs = np.array([t.coeff for t in diag_terms])
    best = 0.0
    for z in range(1 << len(sites)):
        signs = np.array([1 - 2 * (bin(z & m).count("1") & 1) for m in masks])
        best = max(best, abs(float(coeffs @ signs)))
    return 2.0 * best


def grouped_profile_from_terms(terms: list[PauliTerm], n: int) -> GroupedRootProfile:
    """One entry per flip pattern; op_norm_E = 1 after normalising the group."""
    groups: dict[int, list[PauliTerm]] = {}
    diag = []
    for t in terms:
        if t.coeff == 0:
            continue
        if t.flip:
            groups.setdefault(t.flip, []).append(t)
        else:
            diag.append(t)
    entries = []
    for f in sorted(groups):
        a = _local_norm(groups[f])
        if a == 0:
            continue
        odd = [t for t in diag if bin(f & sum(1 << k for k in t.support)).count("1") & 1]
        entries.append(GroupedEntry(f, a, 1.0, _max_diag_jump(odd)))
    return GroupedRootProfile(n, entries)


def grouped_profile(spec: ChainSpec) -> GroupedRootProfile:
    return grouped_profile_from_terms(build_hamiltonian(spec), spec.n)


def grouped_activity(profile: GroupedRootProfile, p: float = 1) -> float:
    if not p >= 1:
        raise ValueError(f"activity needs p >= 1, got {p}")
    w = np.array([e.abs_x * e.op_norm_E for e in profile.entries])
    if w.size == 0:
        return 0.0
    if math.isinf(p):
        return float(w.max())
    return float(np.sum(w**p) ** (1.0 / p))


def grouped_curvature(profile: GroupedRootProfile) -> float:
    w = np.array([e.alpha_bound * e.abs_x * e.op_norm_E for e in profile.entries])
    return float(np.sqrt(np.sum(w**2))) if w.size else 0.0


def grouped_report(profile: GroupedRootProfile) -> dict:
    """Grouped analogue of FunctionalReport.to_dict."""
    a1 = grouped_activity(profile, 1)
    return {
        "convention": "grouped",
        "a_1": a1,
        "a_2": grouped_activity(profile, 2),
        "a_inf": grouped_activity(profile, math.inf),
        "curvature": grouped_curvature(profile),
        "act_seminorm": a1,
        "m_x0": max((e.alpha_bound for e in profile.entries), default=0.0),
        "c_struct": math.sqrt(len(profile)),
        "n_active": len(profile),
    }


def _exponent(ns, values) -> float | None:
    v = np.asarray(values, dtype=float)
    if len(ns) < 2 or np.any(v <= 0):
        return None
    slope, _ = np.polyfit(np.log(ns), np.log(v), 1)
    return float(slope)


@dataclass
class ScalingTable:
    rows: list
    exponents: dict

    def csv_rows(self) -> list[list]:
        return [[r["n"], r["A1"], r["A2"], r["C"]] for r in self.rows]

    def to_dict(self) -> dict:
        return {"rows": self.rows, "exponents": self.exponents}


def scaling_study(family: Callable[[int], ChainSpec], n_values) -> ScalingTable:
    """Grouped A1, A2, C per chain length, with log-log exponents against n."""
    ns = [int(n) for n in n_values]
    rows = []
    for n in ns:
        prof = grouped_profile(family(n))
        rows.append(
            {"n": n, "A1": grouped_activity(prof, 1), "A2": grouped_activity(prof, 2), "C": grouped_curvature(prof)}
        )
    exps = {k: _exponent(ns, [r[k] for r in rows]) for k in ("A1", "A2", "C")}
    return ScalingTable(rows, exps)


def uniform_family(model: str, J: float, h: float = 0.0, support=()) -> Callable[[int], ChainSpec]:
    """n -> ChainSpec with the same per-site parameters (support 0-indexed)."""

    def make(n: int) -> ChainSpec:
        if model == "sparse":
            return ChainSpec(model, n, J, {k: h for k in support})
        return ChainSpec(model, n, J, h)

    return make


def cross_check_conventions(terms: list[PauliTerm], n: int) -> dict:
    """Matrix-unit and grouped functionals of the same chain, side by side."""
    if n > 6:
        raise SizeCapError("convention cross-check is limited to n <= 6")
    x = to_algebra_element(terms, n)
    rep = defining(x.algebra)
    dec = decompose(x)
    mu = root_profile(rep, x)
    gp = grouped_profile_from_terms(terms, n)
    comm = op_norm(commutator(image(rep, dec.x0), image(rep, dec.root_part())))
    mu_c, gp_c = curvature(mu), grouped_curvature(gp)
    a2_mu, a2_gp = activity(mu, 2), grouped_activity(gp, 2)
    return {
        "n": n,
        "matrix_unit": {
            "a_1": activity(mu, 1),
            "a_2": a2_mu,
            "a_inf": activity(mu, math.inf),
            "curvature": mu_c,
            "n_active": len(mu),
            "bound": math.sqrt(len(mu)) * mu_c,
        },
        "grouped": {
            "a_1": grouped_activity(gp, 1),
            "a_2": a2_gp,
            "a_inf": grouped_activity(gp, math.inf),
            "curvature": gp_c,
            "n_active": len(gp),
            "bound": math.sqrt(len(gp)) * gp_c,
        },
        "a2_ratio": a2_mu / a2_gp if a2_gp > 0 else None,
        "a2_ratio_expected": 2 ** (n / 2),
        "commutator_norm": comm,
    }


def flip_sites(flip: int, n: int) -> list[int]:
    return [k for k in range(n) if flip >> k & 1]


def all_z_terms(n: int, rng: np.random.Generator, count: int | None = None) -> list[PauliTerm]:
    """Random commuting Hamiltonian built from Z/I strings."""
    strings = ["".join(s) for s in itertools.product("IZ", repeat=n) if set(s) != {"I"}]
    if count is not None:
        strings = list(rng.choice(strings, size=min(count, len(strings)), replace=False))
    return [PauliTerm(float(rng.standard_normal()), s) for s in strings]
