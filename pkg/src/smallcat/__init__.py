"""Finite categories, groupoids, group bundles and left actions.

Every structure is stored as integer tables and checked exhaustively when it
is built; failures carry concrete counterexamples.
"""

from .action import (
    ActionError,
    LeftAction,
    action_domain,
    action_violations,
    gphi_category,
    group_action_violations,
    group_automorphism_action,
    groupoid_form_violations,
    inner_action,
    opposite_action,
    psi_isomorphism,
    relation_action,
    restricted_embedding,
    restricted_semidirect,
    semidirect_groupoid,
    semidirect_shared_units,
    semigroup_bundle_action,
    semigroup_bundle_of,
    tilde_category,
    transformation_groupoid,
    trivial_action,
    unit_only_action,
    validate_action,
)
from .bundle import (
    GREATEST_INDEX,
    LEAST_INDEX,
    ChoicePolicy,
    FiniteGroup,
    GroupBundle,
    GroupError,
    bundle_from_groupoid,
    cyclic_group,
    direct_product,
    group_as_groupoid,
    group_isomorphic,
    isotropy_group,
    permutation_group,
    standard_groupoid,
    standardization_iso,
    symmetric_group,
    validate_group,
)
from .core import (
    UNDEFINED,
    CategoryError,
    FiniteCategory,
    Groupoid,
    IsoWitness,
    LawError,
    NotAGroupoidError,
    Partition,
    Violation,
    as_groupoid,
    build_category,
    category_violations,
    discrete_category,
    full_subcategory,
    functor_violations,
    invert,
    is_groupoid,
    opposite,
    pair_groupoid,
    reachability_classes,
    relabel,
    subcategory,
)
from .documents import Document, GroupAction, ParseError, document_from, emit_documents, parse_document, parse_documents
from .iso import BudgetExceeded, corollary_check, find_isomorphism, orbits_and_stabilizers

__version__ = "0.1.0"
