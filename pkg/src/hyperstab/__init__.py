"""Stabilizer-group tools for GHZ-type hyperentangled states.

Pauli algebra on bitmasks, Gray-code enumeration of the stabilizer group
with negative-sign counting, closed-form counts, Bell operator bounds
with local-hidden-variable search, and an exact simulation of the
four-photon optical preparation protocol.
"""

from .errors import (
    CapacityError,
    DimensionError,
    DomainError,
    HyperstabError,
    InvariantViolation,
    ModelingError,
    NonHermitianError,
    ParseError,
)
from .kernels import BACKEND
from .pauli import (
    PauliString,
    apply_to_vector,
    commutes,
    hermitian_sign,
    multiply,
    symplectic_product,
    tensor_concat,
    to_dense,
    weight,
)
from .stabilizer import (
    TWELVE_QUBIT_STATE,
    GhzBlock,
    HyperState,
    StabilizerElement,
    count_negative,
    count_negative_closed,
    element_for_subset,
    enumerate_group,
    generators,
    load_state,
    parse_state_spec,
    state_vector,
)
from .closed_forms import c_binomial, c_cases, case_difference, composite_negatives, ordering_report
from .bell import (
    Assignment,
    bell_value,
    lhvt_max_exhaustive,
    lhvt_max_heuristic,
    paper_lhvt_bound,
    qm_expectation,
)
from .photonic import Scenario, double_xpm_equivalence, fidelity, measurement_readout, run_protocol

__version__ = "0.1.0"
