"""Twisted finite-group superalgebras: supermodule classification by Z8-valued
super Frobenius-Schur indicators, and partition-function crosschecks for
finite gauge theories on oriented, unoriented, spin, and pin- surfaces."""

from .catalog import CATALOG_NAMES, catalog_group, cyclic
from .errors import (
    BudgetExceededError,
    DecompositionError,
    SnapError,
    ValidationError,
)
from .gauge import (
    FAMILIES,
    PartitionReport,
    TheoryData,
    crosscheck,
    enumerate_homs,
    partition_lhs,
    partition_rhs,
    report_from_dict,
    report_to_dict,
)
from .groups import (
    EvenSubgroup,
    Group,
    build_group,
    even_subgroup,
    group_from_dict,
    group_from_permutations,
    group_from_table,
    group_to_dict,
    load_group,
    product_group,
    save_group,
)
from .superalg import (
    AlgebraElement,
    ClassificationReport,
    Supermodule,
    TwistedGroupAlgebra,
    UngradedIrrep,
    assemble_supermodules,
    bw_class,
    bw_from_parts,
    classification_to_dict,
    classify,
    decompose_regular,
    eighth_root,
    gow_indicator,
    ordinary_fs,
    snap_eighth_root,
    snap_indicator,
    snapped_string,
    special_element,
    super_fs,
    verify_main_theorem,
)
from .surfaces import (
    ABKResult,
    Presentation,
    QuadraticRefinement,
    Surface,
    abk,
    arf,
    cup_form,
    enumerate_structures,
    integrate_cocycle,
    nonorientable,
    orientable,
    parse_surface,
    presentation,
    quadratic_eval,
    quadratic_eval_many,
    refinement,
)
from .twists import (
    Twist,
    clifford_twist,
    combine_twists,
    coboundary,
    h2_representatives,
    load_twist,
    save_twist,
    shift_by_coboundary,
    trivial_group,
    twist_from_dict,
    twist_to_dict,
    validate_twist,
    z2_homomorphisms,
)

__version__ = "0.1.0"
