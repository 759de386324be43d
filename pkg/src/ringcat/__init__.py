"""Exact diagonalization of interacting bosons on a twisted ring lattice.

The package builds number-conserving Fock bases, site- and flow-basis
Hamiltonians with a uniform twist phase on every bond, and the analysis on
top: low-lying spectra versus phase, flow-occupation distributions,
superposition (cat) fidelities of degenerate flow branches, a variational
separability witness over product condensates, and three-stage ramp
protocols that prepare the twisted ground state adiabatically.
"""

from .errors import (
    BracketingError,
    ConfigError,
    ContractError,
    ConvergenceError,
    DomainError,
    NumericalIntegrityError,
    OptimizationError,
    RingcatError,
    SizingError,
    UnsupportedConfigurationError,
)
from .fock import FockBasis, OccupationState, build_basis, dimension, sector_creation_matrices
from .model import (
    HermitianOperator,
    RingParams,
    build_flow_hamiltonian_3site,
    build_site_hamiltonian,
    phase_from_angular_momentum,
    quasi_momentum_operator,
)
from .flow import (
    FlowDistribution,
    FlowTransform,
    cat_fidelity,
    cat_fidelity_fixed,
    flow_distribution,
    flow_fock_vector,
    flow_frame,
    flow_transform,
    skewed_mott_overlap,
)
from .spectrum import (
    PhaseScan,
    SpectrumResult,
    find_anticrossing,
    lowest_eigenpairs,
    phase_scan,
)
from .witness import (
    SeparableAnsatz,
    WitnessReport,
    condensate_vector,
    minimize_separable_energy,
    separable_energy,
    separable_energy_fock,
)
from .dynamics import (
    EvolutionTrace,
    RampSchedule,
    Segment,
    cat_scan_static,
    evolve,
    ground_state_representative,
    preparation_protocol,
    protocol_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "RingcatError",
    "ConfigError",
    "DomainError",
    "SizingError",
    "UnsupportedConfigurationError",
    "ContractError",
    "ConvergenceError",
    "BracketingError",
    "OptimizationError",
    "NumericalIntegrityError",
    "OccupationState",
    "FockBasis",
    "dimension",
    "build_basis",
    "sector_creation_matrices",
    "RingParams",
    "HermitianOperator",
    "build_site_hamiltonian",
    "build_flow_hamiltonian_3site",
    "quasi_momentum_operator",
    "phase_from_angular_momentum",
    "FlowTransform",
    "flow_transform",
    "FlowDistribution",
    "flow_frame",
    "flow_fock_vector",
    "flow_distribution",
    "cat_fidelity",
    "cat_fidelity_fixed",
    "skewed_mott_overlap",
    "SpectrumResult",
    "PhaseScan",
    "lowest_eigenpairs",
    "phase_scan",
    "find_anticrossing",
    "SeparableAnsatz",
    "WitnessReport",
    "separable_energy",
    "separable_energy_fock",
    "condensate_vector",
    "minimize_separable_energy",
    "Segment",
    "RampSchedule",
    "EvolutionTrace",
    "evolve",
    "ground_state_representative",
    "cat_scan_static",
    "protocol_schedule",
    "preparation_protocol",
]
