"""Fence posets, their lattices of order ideals, rank polynomials and chain decompositions."""

from .chains import ChainDecomposition, CDReport, search_centered_cd, validate_cd
from .conjectures import (
    ConjectureReport,
    FamilySpec,
    check_centered,
    check_heavy,
    check_lex_conjecture,
    check_mgo,
    predict_shape,
    sweep,
)
from .constructions import (
    cd_d_divided,
    cd_three_segment,
    cd_two_segment,
    core_d_divided,
    core_three_segment,
    gk_core,
    lex_cd,
    lift_ncd,
)
from .lattice import IdealLattice, build_lattice, matching_long_segment, rank_plateau, rank_sequence
from .polynomial import (
    RankPolynomial,
    check_mi_addition,
    maxima_indices,
    predicted_maxima_interval,
    q_integer,
    rank_poly_explicit,
    rank_poly_recursive,
    shape_classify,
)
from .poset import (
    CompositionError,
    LabeledPoset,
    LimitExceeded,
    build_d_divided,
    build_fence,
    dual,
    enumerate_ideals,
    is_ideal,
    label_three_segment,
    parse_composition,
)

__version__ = "0.1.0"
