"""Exhaustive generation of small hypergroupoids and hypersemigroups.

Tables are filled cell by cell in row-major order, each cell running through
the cell alphabet in its given order.  In associative-only mode every fill
is followed by :func:`prune_check`, which rejects the prefix as soon as some
associativity instance whose cells are all filled is violated.  Instances
with an unfilled cell are never judged, so no associative completion is lost.

Parallel use: :func:`partitions` splits the search tree by its first ``k``
cells, and :func:`map_partitions` runs one task per prefix in a process pool
and returns the results in visitation order.
"""
from __future__ import annotations

import enum
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from .core import (
    ORDER_CAP,
    DomainError,
    Hypergroupoid,
    Subset,
    full_set,
    is_associative,
    members,
)
from .regularity import _regularity

MAX_FULL_ORDER = 4


class Filter(enum.Enum):
    ALL = "all"
    ASSOCIATIVE = "associative-only"


@dataclass(frozen=True)
class EnumerationSpec:
    order: int
    filter: Filter = Filter.ASSOCIATIVE
    canonicalize: bool = False
    cell_alphabet: Optional[tuple[Subset, ...]] = None  # None: every nonempty subset

    def __post_init__(self) -> None:
        if self.cell_alphabet is not None:
            object.__setattr__(self, "cell_alphabet", tuple(self.cell_alphabet))
        if isinstance(self.filter, str):
            object.__setattr__(self, "filter", Filter(self.filter))

    def alphabet(self) -> tuple[Subset, ...]:
        if self.cell_alphabet is None:
            return tuple(range(1, 1 << self.order))
        return self.cell_alphabet

    def validate(self) -> None:
        n = self.order
        if not isinstance(n, int) or not 1 <= n <= ORDER_CAP:
            raise DomainError(f"order must be in 1..{ORDER_CAP}, got {n!r}")
        if self.cell_alphabet is None:
            if n > MAX_FULL_ORDER:
                raise DomainError(
                    f"full-alphabet enumeration is limited to order {MAX_FULL_ORDER}; "
                    "pass a restricted cell alphabet")
        else:
            full = full_set(n)
            if not self.cell_alphabet:
                raise DomainError("cell alphabet is empty")
            if len(set(self.cell_alphabet)) != len(self.cell_alphabet):
                raise DomainError("cell alphabet has duplicates")
            for c in self.cell_alphabet:
                if c <= 0 or c & ~full:
                    raise DomainError(f"alphabet entry {c:#b} is not a nonempty subset of 0..{n - 1}")
        if self.canonicalize and not _closed_under_relabeling(n, self.alphabet()):
            raise DomainError("canonicalize needs a cell alphabet closed under relabeling")

    @property
    def total_tables(self) -> int:
        return len(self.alphabet()) ** (self.order * self.order)


@dataclass
class EnumerationStats:
    total_tables: int = 0
    visited: int = 0
    associative_count: int = 0
    regular_count: int = 0
    nodes: int = 0
    elapsed: float = 0.0

    def merge(self, other: "EnumerationStats") -> "EnumerationStats":
        """Combine the stats of two disjoint partitions of one search space.

        ``total_tables`` is a property of the whole space, not summed.
        """
        return EnumerationStats(
            max(self.total_tables, other.total_tables),
            self.visited + other.visited,
            self.associative_count + other.associative_count,
            self.regular_count + other.regular_count,
            self.nodes + other.nodes,
            self.elapsed + other.elapsed,
        )

    def __str__(self) -> str:
        return (f"total {self.total_tables}\nvisited {self.visited}\n"
                f"associative {self.associative_count}\nregular {self.regular_count}\n"
                f"nodes {self.nodes}\nelapsed {self.elapsed:.3f}s")


# -- pruning ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _members_table(order: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(members(s)) for s in range(1 << order))


@lru_cache(maxsize=None)
def _candidates(order: int) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
    """For each cell index k, the triples whose check may depend on cell k.

    Entries are ``(x, z, index(y,z), index(x,y))``.  A triple depends on
    cell (a,b) if it is one of its two static cells, or lies in row x, or in
    column z.
    """
    n = order
    out = []
    for k in range(n * n):
        a, b = divmod(k, n)
        cands = []
        for x, y, z in itertools.product(range(n), repeat=3):
            if x == a or z == b or (y, z) == (a, b) or (x, y) == (a, b):
                cands.append((x, z, y * n + z, x * n + y))
        out.append(tuple(cands))
    return tuple(out)


def _prefix_ok(order: int, cells: Sequence[Subset], k: int) -> bool:
    n = order
    mem = _members_table(n)
    for x, z, iyz, ixy in _candidates(n)[k]:
        if iyz > k or ixy > k:
            continue
        yz = mem[cells[iyz]]
        xy = mem[cells[ixy]]
        row = x * n
        if row + yz[-1] > k or xy[-1] * n + z > k:
            continue
        lhs = 0
        for w in yz:
            lhs |= cells[row + w]
        rhs = 0
        for w in xy:
            rhs |= cells[w * n + z]
        if lhs != rhs:
            return False
    return True


def prune_check(order: int, cells: Sequence[Subset], k: int) -> bool:
    """``False`` iff filling cell ``k`` completes a violated associativity instance.

    ``cells`` holds the row-major table; entries at indices ``<= k`` are
    filled, later entries are ignored.  Only instances where ``(y,z)``,
    ``(x,y)``, every ``(x,w)`` with ``w ∈ y∘z`` and every ``(w,z)`` with
    ``w ∈ x∘y`` are filled are examined.
    """
    if not 0 <= k < order * order:
        raise DomainError(f"cell index {k} outside the {order}x{order} table")
    if any(c <= 0 for c in cells[:k + 1]):
        raise DomainError("cells up to k must be filled with nonempty subsets")
    return _prefix_ok(order, cells, k)


# -- canonical forms --------------------------------------------------------

@lru_cache(maxsize=None)
def _relabel_maps(order: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Per permutation p: (subset image table, source cell for each target cell)."""
    n = order
    out = []
    for p in itertools.permutations(range(n)):
        image = tuple(sum(1 << p[e] for e in members(s)) for s in range(1 << n))
        inv = [0] * n
        for i in range(n):
            inv[p[i]] = i
        # target cell (i, j) comes from source cell (inv i, inv j)
        src = tuple(inv[i] * n + inv[j] for i in range(n) for j in range(n))
        out.append((image, src))
    return tuple(out)


def _canonical_cells(order: int, cells: Sequence[Subset]) -> tuple[Subset, ...]:
    best = None
    for image, src in _relabel_maps(order):
        cand = tuple(image[cells[s]] for s in src)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(H: Hypergroupoid) -> Hypergroupoid:
    """The lexicographically least relabeling of ``H``.

    A relabeling by a permutation ``p`` sends cell ``(a,b)`` to
    ``(p a, p b)`` and maps its contents through ``p``.  Tables compare as
    row-major tuples of cell bitmasks.
    """
    if H.order > MAX_FULL_ORDER:
        raise DomainError(f"canonical_form examines n! relabelings; order must be <= {MAX_FULL_ORDER}")
    return Hypergroupoid.from_cells(H.order, _canonical_cells(H.order, H.cells))


def relabel(H: Hypergroupoid, perm: Sequence[int]) -> Hypergroupoid:
    n = H.order
    if sorted(perm) != list(range(n)):
        raise DomainError(f"{perm!r} is not a permutation of 0..{n - 1}")
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[perm[a]][perm[b]] = sum(1 << perm[e] for e in members(H.table[a][b]))
    return Hypergroupoid(n, tuple(tuple(r) for r in table))


def _closed_under_relabeling(order: int, alphabet: Sequence[Subset]) -> bool:
    if order > MAX_FULL_ORDER:
        return False
    alpha = set(alphabet)
    return all(image[s] in alpha for image, _ in _relabel_maps(order) for s in alpha)


# -- search -----------------------------------------------------------------

def _search(spec: EnumerationSpec, prefix: Sequence[Subset], emit: Callable[[tuple], None],
            stats: EnumerationStats) -> None:
    n = spec.order
    size = n * n
    alphabet = spec.alphabet()
    prune = spec.filter is Filter.ASSOCIATIVE
    cells = list(prefix) + [0] * (size - len(prefix))

    for k in range(len(prefix)):
        if prune and not _prefix_ok(n, cells, k):
            return

    nodes = 0

    def rec(k: int) -> None:
        nonlocal nodes
        if k == size:
            emit(tuple(cells))
            return
        for v in alphabet:
            cells[k] = v
            nodes += 1
            if prune and not _prefix_ok(n, cells, k):
                continue
            rec(k + 1)
        cells[k] = 0

    rec(len(prefix))
    stats.nodes += nodes


def enumerate_prefix(spec: EnumerationSpec, prefix: Sequence[Subset],
                     visitor: Optional[Callable[[Hypergroupoid], object]] = None,
                     *, count_regular: bool = True) -> EnumerationStats:
    """Run the search restricted to tables starting with ``prefix``.

    ``visitor`` is called once per visited structure.  If it returns ``True``
    (exactly), the search stops early; stats then cover the part searched.
    """
    spec.validate()
    n = spec.order
    stats = EnumerationStats(total_tables=spec.total_tables)
    start = time.perf_counter()

    class _Stop(Exception):
        pass

    def emit(cells: tuple) -> None:
        if spec.canonicalize and _canonical_cells(n, cells) != cells:
            return
        H = Hypergroupoid.from_cells(n, cells)
        assoc = spec.filter is Filter.ASSOCIATIVE or is_associative(H)
        stats.visited += 1
        if assoc:
            stats.associative_count += 1
            if count_regular and _regularity(H).regular:
                stats.regular_count += 1
        if visitor is not None and visitor(H) is True:
            raise _Stop

    try:
        _search(spec, prefix, emit, stats)
    except _Stop:
        pass
    stats.elapsed = time.perf_counter() - start
    return stats


def enumerate(spec: EnumerationSpec,
              visitor: Optional[Callable[[Hypergroupoid], object]] = None,
              *, count_regular: bool = True) -> EnumerationStats:
    """Visit every table matching ``spec`` once, in lexicographic cell order.

    With ``canonicalize`` only the canonical representative of each
    isomorphism class is visited, and the counts refer to representatives.
    ``total_tables`` is always the size of the raw search space.
    """
    return enumerate_prefix(spec, (), visitor, count_regular=count_regular)


def iter_structures(spec: EnumerationSpec) -> Iterator[Hypergroupoid]:
    """The structures :func:`enumerate` visits, collected up front."""
    out: list[Hypergroupoid] = []
    enumerate(spec, out.append, count_regular=False)
    return iter(out)


def partitions(spec: EnumerationSpec, depth: int) -> list[tuple[Subset, ...]]:
    """Prefixes of the first ``depth`` cells that survive pruning, in visitation order."""
    spec.validate()
    n = spec.order
    depth = max(0, min(depth, n * n))
    out = []
    alphabet = spec.alphabet()
    prune = spec.filter is Filter.ASSOCIATIVE
    for prefix in itertools.product(alphabet, repeat=depth):
        cells = list(prefix) + [0] * (n * n - depth)
        if prune and not all(_prefix_ok(n, cells, k) for k in range(depth)):
            continue
        out.append(prefix)
    return out


def map_partitions(spec: EnumerationSpec, task: Callable, *, workers: int = 1,
                   depth: int = 2, args: tuple = ()) -> list:
    """Apply ``task(spec, prefix, *args)`` to every partition.

    Results come back in partition (hence visitation) order.  ``task`` must be
    a module-level function when ``workers > 1``.
    """
    prefixes = partitions(spec, depth)
    if workers <= 1:
        return [task(spec, p, *args) for p in prefixes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, itertools.repeat(spec), prefixes,
                             *(itertools.repeat(a) for a in args)))


def _stats_task(spec: EnumerationSpec, prefix: tuple) -> EnumerationStats:
    return enumerate_prefix(spec, prefix)


def parallel_stats(spec: EnumerationSpec, *, workers: int = 1, depth: int = 2) -> EnumerationStats:
    """Stats of :func:`enumerate` computed over independent partitions."""
    total = EnumerationStats(total_tables=spec.total_tables)
    for s in map_partitions(spec, _stats_task, workers=workers, depth=depth):
        total = total.merge(s)
    return total


# -- named alphabets --------------------------------------------------------

def named_alphabet(name: str, order: int) -> Optional[tuple[Subset, ...]]:
    """Preset cell alphabets: ``all``, ``singletons``, ``singletons-full``."""
    if name == "all":
        return None
    singles = tuple(1 << i for i in range(order))
    if name == "singletons":
        return singles
    if name == "singletons-full":
        full = full_set(order)
        return singles if order == 1 else singles + (full,)
    raise DomainError(f"unknown alphabet {name!r}")
