"""Exact toolkit for constant rank-distance sets of hermitian matrices
over F_{q^2}: eigenvalue tables, size bounds, explicit constructions,
and exhaustive maximality search."""

from .errors import BudgetError, ConsistencyError, SetFileError
from .field import GF, FieldSpec, field_spec, spec_for_q
from .hermitian import (
    RankSet,
    conj_transpose,
    constant_rank_distance_violation,
    enumerate_hermitian,
    hermitian_count,
    identity_matrix,
    intersection_dim,
    is_hermitian,
    is_isotropic_in_hermitian_space,
    mat_add,
    mat_mul,
    mat_neg,
    mat_smul,
    mat_sub,
    rank,
    rank_histogram,
    subspace_of,
    translate_to_origin,
    zero_matrix,
)
from .scheme import (
    BoundEntry,
    BoundReport,
    CharacterSum,
    EigenTable,
    bound_catalog,
    character_average,
    delsarte_check,
    eigen_column_brute,
    eigen_entry_brute,
    eigen_table,
    first_rank_witness,
    form_character,
    form_value_count,
    form_value_counts,
    gaussian_binomial,
    inner_distribution,
    special_eigenvalue,
    valency,
)
from .constructions import (
    ProjectivePartialSpread,
    SymmetricSpreadSet,
    UdeltaParams,
    construct_udelta,
    desarguesian_spread,
    extend_to_hermitian,
    lift_gram_members,
    lift_partial_spread,
    pg_point_spread,
    select_mu,
    trace_gram_spread_set,
)
from .search import (
    RankGraph,
    SpectrumResult,
    extension_candidates,
    first_extension,
    greedy_complete,
    is_constant_rank_distance,
    is_maximal,
    maximal_set_spectrum,
)
from .setfile import parse_set_file, parse_set_text, serialize_set, write_set_file

__all__ = [name for name in dir() if not name.startswith("_")]
