"""Laboratory for monomial codes: Reed-Muller, polar, and partially
symmetric constructions, with exact ML erasure-channel evaluation."""

from .bec import (
    FerEstimate,
    exact_fer,
    ml_success,
    polar_code_bec,
    polar_reliabilities,
    simulate_fer,
)
from .construction import (
    BoundTrace,
    ConjecturePair,
    DesignSpec,
    StageRecord,
    SymmetryReport,
    bound_curve,
    check_conjecture,
    construct,
    dmin_upper_bound,
    granularity,
    lower_bound,
    stage_count,
    verify_symmetry,
)
from .gf2 import BitMatrix, gf2_rank, null_space
from .monomials import (
    MonomialCode,
    code_params,
    evaluate,
    generator_matrix,
    load_code,
    mon_of_row,
    parse_code,
    reed_muller,
    rm_dim,
    row_of_mon,
    save_code,
    serialize_code,
)
from .subgraphs import (
    BipartiteStageGraph,
    FlowNetwork,
    build_stage_graph,
    grow,
    is_biregular,
    regular_subgraph,
    shrink,
)
from .symmetry import (
    directional_derivative,
    is_invariant,
    is_weakly_decreasing,
    permute_variables,
    project_general,
    project_trivial,
    translate_set,
)

__version__ = "0.1.0"
