"""Plain semigroups given by an element-valued multiplication table.

Deliberately written against ``frozenset`` and shares no code with the
bitmask machinery, so it can serve as an independent check of the
hyperstructure predicates on singleton-celled tables.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

Table = Sequence[Sequence[int]]


class Semigroup:
    def __init__(self, table: Table):
        self.table = [list(row) for row in table]
        self.n = len(self.table)
        self.S = frozenset(range(self.n))

    def mul(self, A, B) -> frozenset:
        return frozenset(self.table[a][b] for a in A for b in B)

    def is_associative(self) -> bool:
        t, r = self.table, range(self.n)
        return all(t[t[x][y]][z] == t[x][t[y][z]] for x in r for y in r for z in r)

    def subsets(self) -> list[frozenset]:
        out = []
        for k in range(1, self.n + 1):
            out.extend(frozenset(c) for c in combinations(range(self.n), k))
        return out

    def is_left_ideal(self, A) -> bool:
        return self.mul(self.S, A) <= A

    def is_right_ideal(self, A) -> bool:
        return self.mul(A, self.S) <= A

    def is_ideal(self, A) -> bool:
        return self.is_left_ideal(A) and self.is_right_ideal(A)

    def is_bi_ideal(self, B) -> bool:
        return self.mul(self.mul(B, self.S), B) <= B

    def is_quasi_ideal(self, Q) -> bool:
        return self.mul(Q, self.S) & self.mul(self.S, Q) <= Q

    def is_idempotent(self, A) -> bool:
        return self.mul(A, A) == A

    def is_regular(self) -> bool:
        # x = x a x for some a
        t = self.table
        return all(any(t[t[x][a]][x] == x for a in range(self.n)) for x in range(self.n))

    def right_ideals(self) -> list[frozenset]:
        return [A for A in self.subsets() if self.is_right_ideal(A)]

    def left_ideals(self) -> list[frozenset]:
        return [A for A in self.subsets() if self.is_left_ideal(A)]


def all_binary_operations(n: int):
    """Every n×n table with entries in ``range(n)``, in lexicographic order."""
    for flat in product(range(n), repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]
