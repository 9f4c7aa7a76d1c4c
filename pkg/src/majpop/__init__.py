"""Optimal (0,1)-matrix completion with majorization-ordered objectives.

The package splits into five layers: :mod:`majpop.majorization` holds the
vector order relations and partition conjugates, :mod:`majpop.lattice` the
dominance-order meet/join/covering machinery, :mod:`majpop.completion` the
feasibility tests and constructive matrix operations,
:mod:`majpop.solvers` the peak-shaving/valley-filling solvers with tie
policies and full tie enumeration, and :mod:`majpop.oracle` an independent
brute-force certifier for desk-scale instances.  :mod:`majpop.cli` exposes
all of it as the ``majpop`` command.
"""

from .completion import (
    construct_matrix,
    col_sums,
    enumerate_matrices,
    feasible_min_remaining,
    gale_ryser_feasible,
    geth_vector,
    interchange,
    make_matrix,
    matrix_rows,
    row_sums,
)
from .errors import (
    BudgetExceededError,
    InfeasibleError,
    InternalInvariantError,
    LengthMismatchError,
)
from .lattice import covers, join, join_recursive, meet, partitions
from .majorization import (
    compare,
    conjugate,
    default_conjugate_dim,
    equivalent,
    majorized,
    pad,
    sort_asc,
    sort_desc,
    weakly_submajorized,
    weakly_supermajorized,
)
from .oracle import (
    AttainableSet,
    CertificationReport,
    certify,
    enumerate_attainable,
    maximal_elements,
    minimal_elements,
)
from .solvers import (
    HIGHEST_INDEX,
    LOAD_ORDER,
    LOWEST_INDEX,
    Instance,
    SolveResult,
    TiePolicy,
    enumerate_optima,
    min_combined_profile,
    min_remaining_profile,
    peak_shave,
    random_ties,
    solve,
    valley_fill,
)

__all__ = [
    "AttainableSet",
    "BudgetExceededError",
    "CertificationReport",
    "HIGHEST_INDEX",
    "InfeasibleError",
    "Instance",
    "InternalInvariantError",
    "LengthMismatchError",
    "LOAD_ORDER",
    "LOWEST_INDEX",
    "SolveResult",
    "TiePolicy",
    "certify",
    "col_sums",
    "compare",
    "conjugate",
    "construct_matrix",
    "covers",
    "default_conjugate_dim",
    "enumerate_attainable",
    "enumerate_matrices",
    "enumerate_optima",
    "equivalent",
    "feasible_min_remaining",
    "gale_ryser_feasible",
    "geth_vector",
    "interchange",
    "join",
    "join_recursive",
    "majorized",
    "make_matrix",
    "matrix_rows",
    "maximal_elements",
    "meet",
    "min_combined_profile",
    "min_remaining_profile",
    "minimal_elements",
    "pad",
    "partitions",
    "peak_shave",
    "random_ties",
    "row_sums",
    "solve",
    "sort_asc",
    "sort_desc",
    "valley_fill",
    "weakly_submajorized",
    "weakly_supermajorized",
]

__version__ = "0.1.0"
