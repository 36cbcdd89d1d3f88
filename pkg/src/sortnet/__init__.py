"""Random sorting networks, Poissonized tableaux and the edge point process."""
from ._backend import BACKEND
from .edelman_greene import (
    SortingNetwork,
    eg_map,
    sample_network,
    schutzenberger_step,
    validate_network,
)
from .errors import (
    AdmissibilityError,
    ContourError,
    DomainError,
    NumericalError,
    SortnetError,
    TableauError,
    WindowError,
)
from .rng import DEFAULT_SEED, make_rng
from .tableau import (
    PoissonizedTableau,
    StandardTableau,
    YoungDiagram,
    count_syt,
    depoissonize,
    poissonize,
    sample_syt_uniform,
    stanley_count,
    validate_tableau,
)
from .fredholm import dyson_tail, first_swap_cdf, gap_density, gap_joint, gap_probability
from .jumps import (
    InfiniteTableau,
    PointConfiguration,
    WindowSpec,
    embed_staircase,
    jumps_to_tableau,
    pyt_to_jumps,
    rescale_window,
    tableau_to_jumps,
)
from .kernels import ContourConfig, expected_count, g_lambda, k_edge, k_edge_diagonal, k_lambda
from .local_eg import local_eg_on_points, swaps_of_tableau

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AdmissibilityError",
    "ContourConfig",
    "ContourError",
    "DEFAULT_SEED",
    "DomainError",
    "InfiniteTableau",
    "NumericalError",
    "PoissonizedTableau",
    "PointConfiguration",
    "SortingNetwork",
    "SortnetError",
    "StandardTableau",
    "TableauError",
    "WindowError",
    "WindowSpec",
    "YoungDiagram",
    "count_syt",
    "depoissonize",
    "dyson_tail",
    "eg_map",
    "embed_staircase",
    "expected_count",
    "first_swap_cdf",
    "g_lambda",
    "gap_density",
    "gap_joint",
    "gap_probability",
    "jumps_to_tableau",
    "k_edge",
    "k_edge_diagonal",
    "k_lambda",
    "local_eg_on_points",
    "make_rng",
    "poissonize",
    "pyt_to_jumps",
    "rescale_window",
    "sample_network",
    "sample_syt_uniform",
    "schutzenberger_step",
    "stanley_count",
    "swaps_of_tableau",
    "tableau_to_jumps",
    "validate_network",
    "validate_tableau",
]
