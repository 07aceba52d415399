"""Symmetric joint-measurement bases on 1-n qubits and the trilocal star network."""

from .analysis import (
    OrthonormalityReport,
    SymmetryReport,
    concurrence,
    m_prime_vector,
    reduced_bloch_vectors,
    reduction_coefficients,
    symmetry_report,
    tangle_law,
    three_tangle,
    verify_orthonormal_complete,
)
from .bases import (
    BasisFamily,
    BasisLabel,
    EjmParams,
    ResourceLimitError,
    m_vector,
    n_qubit_ejm,
    phi_z,
    reference_bases,
    single_qubit_m,
    three_qubit_ejm,
    two_qubit_ejm,
)
from .network import (
    CorrelationReport,
    StarScenario,
    correlation_I_analytic,
    correlation_I_bruteforce,
    joint_probability,
    outcome_table,
    star_state,
    tilde_state,
    trilocal_score,
)
from .optimize import OptimumResult, SweepSpec, maximize, sweep
from .qla import (
    BlochVector,
    ContractError,
    Operator,
    StateVector,
    bloch_vector,
    conjugate_amplitudes,
    expectation,
    ket,
    partial_trace,
    permute_qubits,
    tensor_product,
)

__version__ = "0.1.0"
