"""Quadratic embedding constants of graphs and of corona graphs G ⊙ H."""

from .errors import (
    CoronaQecError,
    DisconnectedGraphError,
    FormulaNotEstablished,
    GraphSpecError,
    NumericalError,
    PoleError,
    PreconditionError,
    VerificationError,
)
from .graph import (
    Graph,
    complete,
    corona,
    corona_distance_matrix,
    cycle,
    disjoint_union,
    distance_matrix,
    empty,
    join_k1,
    make_family,
    path,
)
from .omega_psi import (
    OmegaPsi,
    omega_eval,
    psi_eval,
    psi_inverse_regular_closed_form,
    psi_star_inverse,
)
from .qec import QecResult, hyperplane_basis, qec_join_k1_regular, qec_of_graph, qec_oracle
from .spectral import MainEigenvalues, SpectralData, eigen_sym, main_eigenvalues, spectral_data
from .theorems import (
    BatchSummary,
    TheoremReport,
    Tolerances,
    batch_verify,
    check_conditions,
    example_corpus,
    predict_qec,
    verify_pair,
)

__version__ = "0.1.0"
