"""Ideal classes of a hypergroupoid and the ideals generated by a subset."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import (
    DomainError,
    Hypergroupoid,
    PreconditionError,
    Subset,
    _check_operand,
    _product,
    format_subset,
    is_subset,
    members,
    require_associative,
)


class IdealClass(enum.Enum):
    SUBSET = "subset"
    LEFT = "left"
    RIGHT = "right"
    IDEAL = "ideal"
    BI = "bi"
    QUASI = "quasi"


@dataclass(frozen=True)
class GeneratedIdeals:
    seed: Subset
    right: Subset
    left: Subset
    two_sided: Subset

    def __str__(self) -> str:
        return (f"R = {format_subset(self.right)}, L = {format_subset(self.left)}, "
                f"I = {format_subset(self.two_sided)}")


# The underscored variants skip operand validation; callers in this package
# use them once the structure and operands are known to be good.

def _is_left(H: Hypergroupoid, A: Subset) -> bool:
    return is_subset(_product(H, H.full, A), A)


def _is_right(H: Hypergroupoid, A: Subset) -> bool:
    return is_subset(_product(H, A, H.full), A)


def _is_bi(H: Hypergroupoid, B: Subset) -> bool:
    return is_subset(_product(H, _product(H, B, H.full), B), B)


def _is_quasi(H: Hypergroupoid, Q: Subset) -> bool:
    full = H.full
    return is_subset(_product(H, Q, full) & _product(H, full, Q), Q)


def _is_idempotent(H: Hypergroupoid, A: Subset) -> bool:
    return _product(H, A, A) == A


def _generated(H: Hypergroupoid, A: Subset) -> GeneratedIdeals:
    full = H.full
    AH = _product(H, A, full)
    HA = _product(H, full, A)
    HAH = _product(H, HA, full)
    return GeneratedIdeals(A, A | AH, A | HA, A | HA | AH | HAH)


def is_left_ideal(H: Hypergroupoid, A: Subset) -> bool:
    _check_operand(H, A, "A")
    return _is_left(H, A)


def is_right_ideal(H: Hypergroupoid, A: Subset) -> bool:
    _check_operand(H, A, "A")
    return _is_right(H, A)


def is_ideal(H: Hypergroupoid, A: Subset) -> bool:
    _check_operand(H, A, "A")
    return _is_left(H, A) and _is_right(H, A)


def is_bi_ideal(H: Hypergroupoid, B: Subset) -> bool:
    """``B*H*B ⊆ B``; the triple product needs an associative ``H``."""
    _check_operand(H, B, "B")
    require_associative(H, "is_bi_ideal")
    return _is_bi(H, B)


def is_quasi_ideal(H: Hypergroupoid, Q: Subset) -> bool:
    _check_operand(H, Q, "Q")
    return _is_quasi(H, Q)


def is_idempotent(H: Hypergroupoid, A: Subset) -> bool:
    _check_operand(H, A, "A")
    return _is_idempotent(H, A)


_PREDICATES = {
    IdealClass.SUBSET: lambda H, A: True,
    IdealClass.LEFT: _is_left,
    IdealClass.RIGHT: _is_right,
    IdealClass.IDEAL: lambda H, A: _is_left(H, A) and _is_right(H, A),
    IdealClass.BI: _is_bi,
    IdealClass.QUASI: _is_quasi,
}


def in_class(H: Hypergroupoid, A: Subset, cls: IdealClass) -> bool:
    """Membership test for any :class:`IdealClass`.

    ``H`` is assumed associative when ``cls`` is ``BI``.
    """
    _check_operand(H, A, "A")
    return _PREDICATES[cls](H, A)


def members_of_class(H: Hypergroupoid, cls: IdealClass) -> list[Subset]:
    """All nonempty subsets in ``cls``, ascending by bitmask."""
    pred = _PREDICATES[cls]
    return [A for A in range(1, H.full + 1) if pred(H, A)]


def generated_ideals(H: Hypergroupoid, A: Subset) -> GeneratedIdeals:
    """R(A), L(A) and I(A) from their closed formulas.

    The formulas describe the generated ideals only in a hypersemigroup, so a
    non-associative ``H`` is rejected.
    """
    _check_operand(H, A, "A")
    require_associative(H, "generated_ideals")
    g = _generated(H, A)
    # hard postconditions
    assert _is_right(H, g.right) and _is_left(H, g.left)
    assert _is_left(H, g.two_sided) and _is_right(H, g.two_sided)
    return g


def nonempty_intersection_witness(H: Hypergroupoid, A: Subset, B: Subset) -> Subset:
    """``A ∩ B`` for a right ideal ``A`` and a left ideal ``B``; never empty."""
    _check_operand(H, A, "A")
    _check_operand(H, B, "B")
    if not _is_right(H, A):
        raise PreconditionError(f"{format_subset(A)} is not a right ideal")
    if not _is_left(H, B):
        raise PreconditionError(f"{format_subset(B)} is not a left ideal")
    meet = A & B
    a = next(members(A))
    b = next(members(B))
    ab = H.table[a][b]
    assert meet and is_subset(ab, meet), "a∘b must land in A∩B"
    return meet


def bi_ideal_from_product(H: Hypergroupoid, C: Subset, D: Subset, side: str) -> Subset:
    """``C*D``, a bi-ideal when ``C`` is a right ideal (``side="right"``) or
    ``D`` a left ideal (``side="left"``)."""
    _check_operand(H, C, "C")
    _check_operand(H, D, "D")
    require_associative(H, "bi_ideal_from_product")
    if side == "right":
        if not _is_right(H, C):
            raise PreconditionError(f"C = {format_subset(C)} is not a right ideal")
    elif side == "left":
        if not _is_left(H, D):
            raise PreconditionError(f"D = {format_subset(D)} is not a left ideal")
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    B = _product(H, C, D)
    assert _is_bi(H, B)
    return B
