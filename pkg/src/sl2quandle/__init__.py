"""Quandles over the hyperboloid of one sheet, colorings of (2, n)-torus knots,
and the SL(2, R) longitudinal mapping."""

from .diagrams import (
    BudgetExceeded,
    ClosureError,
    Coloring,
    Diagram,
    GroupWord,
    coloring_from_pair,
    enumerate_colorings,
    longitude_word,
    torus_diagram,
    wirtinger_arc_words,
)
from .longitudinal import (
    InvalidColoring,
    RepresentationOnGenerators,
    apply_inner,
    coloring_to_representation,
    evaluate_word,
    expected_longitudinal,
    longitude_record,
    longitudinal_value,
)
from .quandle import (
    AugmentedQuandleData,
    FiniteGroup,
    FiniteQuandle,
    ValidationError,
    check_augmented,
    check_homomorphism,
    is_involutory,
    is_subquandle,
    make_conjugation,
    make_dihedral,
    make_trivial,
    verify_axioms,
)
from .sl2r import D, azcan_fenn_op, conj_op, in_class, involutory_counterexample, lorentz_form, sample_class
from .torus import (
    ColoringFamily,
    RootPair,
    build_family,
    case_dichotomies,
    char_roots,
    family_params,
    lambda_solutions,
    theta,
    trivial_family,
    verify_equation,
    verify_minus_identity,
    xy_power_closed,
)

__version__ = "0.1.0"
