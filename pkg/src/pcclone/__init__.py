"""Optimal 1->M phase-covariant quantum cloning: dense simulation, exact
coefficient theory, and a collinear parametric-amplifier model."""

from .angular import (
    HalfInt,
    SignedSqrtRational,
    b_coef,
    cg,
    cg_ladder,
    d_coef,
    fidelity_formula,
    gamma,
    gamma_closed_form,
    projection_norm_sq,
)
from .cloner import (
    CloneReport,
    UqcmOutput,
    covariance_defect,
    pqcm_scheme_a,
    pqcm_scheme_b,
    scheme_equivalence_defect,
    uqcm,
)
from .opa import (
    BosonOp,
    FockVec,
    build_hamiltonian,
    evolve,
    first_order_output,
    photon_reduced_density,
)
from .statekit import (
    BellKind,
    CapacityError,
    DensityOp,
    Ket,
    PhaseRotation,
    PlaneId,
    apply,
    bell_state,
    equatorial_state,
    fidelity,
    partial_trace,
    phase_rotate,
    tensor,
)
from .symmetry import (
    DickeLabel,
    SymProjector,
    VanishingProjectionError,
    concatenation_defect,
    dicke_state,
    project_and_postselect,
    symmetric_projector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
