"""Finite hypersemigroups: induced subset product, ideal classes, regularity,
exhaustive enumeration and a small conjecture language."""
from .core import (
    ORDER_CAP,
    AssociativityWitness,
    DomainError,
    Hypergroupoid,
    PreconditionError,
    Subset,
    associativity_witness,
    format_subset,
    full_set,
    is_associative,
    members,
    product_chain,
    subset,
    subset_product,
)
from .ideals import (
    GeneratedIdeals,
    IdealClass,
    bi_ideal_from_product,
    generated_ideals,
    is_bi_ideal,
    is_ideal,
    is_idempotent,
    is_left_ideal,
    is_quasi_ideal,
    is_right_ideal,
    nonempty_intersection_witness,
)
from .regularity import (
    RegularityEvidence,
    VerificationReport,
    as_semigroup,
    is_regular,
    verify_corollary13,
    verify_corollary14,
    verify_lemma11,
    verify_proposition7,
    verify_theorem8,
    verify_theorem9,
    verify_theorem12,
)

__version__ = "0.1.0"
