"""Torus-root decompositions, root functionals and splitting error analysis for su(N)."""

from .errors import (
    BranchCutError,
    EstimationError,
    GateCapError,
    NotSkewHermitianError,
    RootSimError,
    SizeCapError,
)
from .linalg import commutator, expm_skew, logm_unitary, op_norm
from .roots import (
    SU2,
    SU2N,
    SUN,
    AlgebraElement,
    AlgebraId,
    RootLabel,
    decompose,
    element,
    enumerate_roots,
    random_element,
    su2_element,
    weyl_act,
)
from .reps import Representation, apply, defining, spin, tensor_trivial, weight_decomposition
from .functionals import (
    activity,
    activity_norm,
    commutator_via_roots,
    curvature,
    functional_report,
    norm_equivalence_constants,
    root_profile,
)
from .splitting import composed_evolution, error_sweep, exact_evolution, required_steps, strang, trotter1
from .gates import (
    Circuit,
    circuit_unitary,
    compile_strang,
    effective_generator,
    gate_unitary,
    log_stability_check,
    lower_bound,
    root_gate,
    toral_gate,
)
from .chain import (
    ChainSpec,
    PauliTerm,
    build_hamiltonian,
    cross_check_conventions,
    grouped_profile,
    scaling_study,
    to_algebra_element,
)

__version__ = "0.1.0"
