"""Finite hypergroupoids and the induced product on nonempty subsets.

Subsets are plain ``int`` bitmasks: bit ``i`` set means element ``i`` is a
member.  With ``ORDER_CAP = 16`` every subset fits in one machine word and
union/intersection/containment are single integer operations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

ORDER_CAP = 16

Subset = int


class DomainError(ValueError):
    """An operand lies outside the domain of an operation (e.g. an empty subset)."""


class PreconditionError(ValueError):
    """A structural precondition failed, typically associativity."""


# -- subset helpers ---------------------------------------------------------

def subset(*elements: int) -> Subset:
    bits = 0
    for e in elements:
        if e < 0 or e >= ORDER_CAP:
            raise DomainError(f"element {e} outside 0..{ORDER_CAP - 1}")
        bits |= 1 << e
    return bits


def full_set(order: int) -> Subset:
    return (1 << order) - 1


def members(bits: Subset) -> Iterator[int]:
    """Yield the element indices of ``bits`` in ascending order."""
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


def is_subset(a: Subset, b: Subset) -> bool:
    return a & ~b == 0


def nonempty_subsets(order: int) -> range:
    """All nonempty subsets of an ``order``-element carrier, in bitmask order."""
    return range(1, 1 << order)


def format_subset(bits: Subset) -> str:
    return "{" + ",".join(str(e) for e in members(bits)) + "}"


# -- structures -------------------------------------------------------------

@dataclass(frozen=True)
class Hypergroupoid:
    """An ``order``-element carrier with a hyperoperation table.

    ``table[a][b]`` is the subset ``a∘b``; every cell must be nonempty.
    """

    order: int
    table: tuple[tuple[Subset, ...], ...]

    def __post_init__(self) -> None:
        n = self.order
        if not isinstance(n, int) or not 1 <= n <= ORDER_CAP:
            raise DomainError(f"order must be in 1..{ORDER_CAP}, got {n!r}")
        table = tuple(tuple(row) for row in self.table)
        if len(table) != n or any(len(row) != n for row in table):
            raise DomainError(f"table must be {n}x{n}")
        full = full_set(n)
        for a, row in enumerate(table):
            for b, cell in enumerate(row):
                if cell == 0:
                    raise DomainError(f"empty cell ({a},{b})")
                if cell & ~full:
                    raise DomainError(f"cell ({a},{b}) has elements outside 0..{n - 1}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_cells(cls, order: int, cells: Sequence[Subset]) -> "Hypergroupoid":
        """Build from a flat row-major sequence of ``order**2`` cells."""
        if len(cells) != order * order:
            raise DomainError(f"expected {order * order} cells, got {len(cells)}")
        rows = tuple(tuple(cells[i * order:(i + 1) * order]) for i in range(order))
        return cls(order, rows)

    @classmethod
    def from_element_table(cls, table: Sequence[Sequence[int]]) -> "Hypergroupoid":
        """Embed a classical multiplication table as a singleton-celled structure."""
        n = len(table)
        return cls(n, tuple(tuple(1 << v for v in row) for row in table))

    @property
    def full(self) -> Subset:
        return full_set(self.order)

    @property
    def cells(self) -> tuple[Subset, ...]:
        return tuple(c for row in self.table for c in row)

    def cell(self, a: int, b: int) -> Subset:
        return self.table[a][b]

    @cached_property
    def _left_rows(self) -> tuple[tuple[Subset, ...], ...]:
        # _left_rows[a][B] == {a} * B, built lazily
        n = self.order
        size = 1 << n
        rows = []
        for a in range(n):
            row = [0] * size
            cells = self.table[a]
            for bits in range(1, size):
                low = bits & -bits
                row[bits] = row[bits ^ low] | cells[low.bit_length() - 1]
            rows.append(tuple(row))
        return tuple(rows)

    def __str__(self) -> str:
        rows = [" ".join(format_subset(c) for c in row) for row in self.table]
        return f"order {self.order}\n" + "\n".join(rows)


@dataclass(frozen=True)
class AssociativityWitness:
    """A triple with ``{x}*(y∘z) != (x∘y)*{z}``."""

    x: int
    y: int
    z: int
    lhs: Subset
    rhs: Subset

    def __str__(self) -> str:
        return (f"({self.x},{self.y},{self.z}): "
                f"{{x}}*(y∘z) = {format_subset(self.lhs)}, "
                f"(x∘y)*{{z}} = {format_subset(self.rhs)}")


# -- operations -------------------------------------------------------------

def _check_operand(H: Hypergroupoid, A: Subset, name: str = "operand") -> None:
    if A == 0:
        raise DomainError(f"{name} is empty; the product is defined on nonempty subsets only")
    if A & ~H.full:
        raise DomainError(f"{name} {A:#b} has elements outside 0..{H.order - 1}")


def _product(H: Hypergroupoid, A: Subset, B: Subset) -> Subset:
    rows = H._left_rows
    out = 0
    a = 0
    while A:
        if A & 1:
            out |= rows[a][B]
        A >>= 1
        a += 1
    return out


def subset_product(H: Hypergroupoid, A: Subset, B: Subset) -> Subset:
    """``A*B``: the union of ``a∘b`` over ``a in A``, ``b in B``."""
    _check_operand(H, A, "left operand")
    _check_operand(H, B, "right operand")
    return _product(H, A, B)


def associativity_witness(H: Hypergroupoid) -> AssociativityWitness | None:
    """First violating ``(x, y, z)`` in lexicographic order, or ``None``."""
    n = H.order
    table = H.table
    for x in range(n):
        sx = 1 << x
        for y in range(n):
            xy = table[x][y]
            for z in range(n):
                lhs = _product(H, sx, table[y][z])
                rhs = _product(H, xy, 1 << z)
                if lhs != rhs:
                    return AssociativityWitness(x, y, z, lhs, rhs)
    return None


def is_associative(H: Hypergroupoid) -> bool:
    return associativity_witness(H) is None


def require_associative(H: Hypergroupoid, what: str = "operation") -> None:
    w = associativity_witness(H)
    if w is not None:
        raise PreconditionError(f"{what} requires a hypersemigroup; associativity fails at {w}")


def product_chain(H: Hypergroupoid, subsets: Iterable[Subset], *, checked: bool = True) -> Subset:
    """Left fold of :func:`subset_product` over ``subsets``.

    Only meaningful in a hypersemigroup, where the bracketing does not
    matter.  Pass ``checked=False`` when the caller already knows ``H`` is
    associative.
    """
    items = list(subsets)
    if not items:
        raise DomainError("product_chain needs at least one subset")
    if checked:
        require_associative(H, "product_chain")
    for i, A in enumerate(items):
        _check_operand(H, A, f"chain operand {i}")
    acc = items[0]
    for A in items[1:]:
        acc = _product(H, acc, A)
    return acc
