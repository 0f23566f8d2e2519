"""Regularity and exhaustive checks of the bi-ideal / quasi-ideal theorems.

Every verifier computes each side of the statement it checks independently
and reports the lexicographically first violation it meets.  Subsets are
visited in ascending bitmask order throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    Hypergroupoid,
    PreconditionError,
    Subset,
    _product,
    format_subset,
    is_subset,
    members,
    require_associative,
)
from .ideals import (
    IdealClass,
    _generated,
    _is_bi,
    _is_idempotent,
    _is_left,
    _is_quasi,
    _is_right,
    members_of_class,
)
from .semigroup import Semigroup

THEOREMS = ("prop7", "lemma11", "thm8", "thm9", "thm12-forward", "thm12-backward",
            "cor13", "cor14")


@dataclass(frozen=True)
class Witness:
    structure: Hypergroupoid
    subsets: dict[str, Subset]
    reason: str

    def __str__(self) -> str:
        named = ", ".join(f"{k} = {format_subset(v)}" for k, v in self.subsets.items())
        return f"{self.reason} [{named}]"


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem tag {self.theorem!r}")
        if self.holds == (self.witness is not None):
            raise ValueError("a report carries a witness exactly when it fails")

    def __bool__(self) -> bool:
        return self.holds


def _fail(tag: str, H: Hypergroupoid, reason: str, checked: int, **subsets: Subset) -> VerificationReport:
    return VerificationReport(tag, False, Witness(H, subsets, reason), checked)


# -- regularity -------------------------------------------------------------

@dataclass(frozen=True)
class RegularityEvidence:
    """Outcome of :func:`is_regular`.

    ``witnesses[x] = h`` certifies ``x ∈ {x}*{h}*{x}``, hence
    ``x ∈ {x}*H*{x}``.  ``failing`` is the first element with no such ``h``.
    """

    regular: bool
    witnesses: dict[int, int]
    failing: Optional[int] = None

    def __bool__(self) -> bool:
        return self.regular

    def __str__(self) -> str:
        if self.regular:
            pairs = ", ".join(f"{x} ∈ {{{x}}}*{{{h}}}*{{{x}}}" for x, h in self.witnesses.items())
            return f"regular: {pairs}"
        x = self.failing
        return f"not regular: {x} ∉ {{{x}}}*H*{{{x}}}"


def _regularity(H: Hypergroupoid) -> RegularityEvidence:
    witnesses = {}
    for x in range(H.order):
        sx = 1 << x
        for h in range(H.order):
            if _product(H, _product(H, sx, 1 << h), sx) & sx:
                witnesses[x] = h
                break
        else:
            return RegularityEvidence(False, witnesses, x)
    return RegularityEvidence(True, witnesses)


def is_regular(H: Hypergroupoid) -> RegularityEvidence:
    """Decide regularity element by element.

    ``A ⊆ A*H*A`` for every nonempty ``A`` reduces to ``x ∈ {x}*H*{x}`` for
    every element, because ``{x}*H*{x} ⊆ A*H*A`` whenever ``x ∈ A``.
    """
    require_associative(H, "is_regular")
    return _regularity(H)


def _require_regular(H: Hypergroupoid, what: str) -> None:
    require_associative(H, what)
    ev = _regularity(H)
    if not ev:
        raise PreconditionError(f"{what} requires a regular hypersemigroup; {ev}")


# -- proposition 7 / lemma 11 ----------------------------------------------

def verify_proposition7(H: Hypergroupoid) -> VerificationReport:
    """``C*D`` is a bi-ideal when ``C`` is a right ideal or ``D`` a left ideal."""
    require_associative(H, "verify_proposition7")
    full = H.full
    rights = members_of_class(H, IdealClass.RIGHT)
    lefts = members_of_class(H, IdealClass.LEFT)
    checked = 0
    for C in rights:
        for D in range(1, full + 1):
            checked += 1
            if not _is_bi(H, _product(H, C, D)):
                return _fail("prop7", H, "right ideal times subset is not a bi-ideal", checked,
                             C=C, D=D)
    for D in lefts:
        for C in range(1, full + 1):
            checked += 1
            if not _is_bi(H, _product(H, C, D)):
                return _fail("prop7", H, "subset times left ideal is not a bi-ideal", checked,
                             C=C, D=D)
    return VerificationReport("prop7", True, checked=checked)


def verify_lemma11(H: Hypergroupoid) -> VerificationReport:
    """A right ideal and a left ideal always meet, and ``a∘b`` lands in the meet."""
    checked = 0
    table = H.table
    for A in members_of_class(H, IdealClass.RIGHT):
        for B in members_of_class(H, IdealClass.LEFT):
            checked += 1
            meet = A & B
            if not meet:
                return _fail("lemma11", H, "right and left ideal are disjoint", checked, A=A, B=B)
            for a in members(A):
                for b in members(B):
                    if not is_subset(table[a][b], meet):
                        return _fail("lemma11", H, f"{a}∘{b} escapes A∩B", checked, A=A, B=B)
    return VerificationReport("lemma11", True, checked=checked)


# -- theorems 8 and 9 ------------------------------------------------------

def verify_theorem8(H: Hypergroupoid, *, require: bool = True) -> VerificationReport:
    """Every bi-ideal ``B`` equals ``R(B)*L(B)``.

    Also checks the intermediate facts ``B = B*H*B`` and ``B*B ⊆ B``.  With
    ``require=False`` the regularity hypothesis is not enforced, which is how
    the tests show it cannot be dropped.
    """
    if require:
        _require_regular(H, "verify_theorem8")
    else:
        require_associative(H, "verify_theorem8")
    full = H.full
    checked = 0
    for B in range(1, full + 1):
        if not _is_bi(H, B):
            continue
        checked += 1
        g = _generated(H, B)
        if _product(H, g.right, g.left) != B:
            return _fail("thm8", H, "B != R(B)*L(B)", checked, B=B, C=g.right, D=g.left)
        if _product(H, _product(H, B, full), B) != B:
            return _fail("thm8", H, "B != B*H*B", checked, B=B)
        if not is_subset(_product(H, B, B), B):
            return _fail("thm8", H, "B*B is not contained in B", checked, B=B)
    return VerificationReport("thm8", True, checked=checked)


def verify_theorem9(H: Hypergroupoid, *, require: bool = True) -> VerificationReport:
    """Bi-ideals are exactly the products of a right ideal with a left ideal.

    The two directions are reported separately in ``details``.
    """
    if require:
        _require_regular(H, "verify_theorem9")
    else:
        require_associative(H, "verify_theorem9")
    full = H.full
    rights = members_of_class(H, IdealClass.RIGHT)
    lefts = members_of_class(H, IdealClass.LEFT)

    # if: every right*left product is a bi-ideal
    products_ok = True
    witness = None
    checked = 0
    for C in rights:
        for D in lefts:
            checked += 1
            if not _is_bi(H, _product(H, C, D)):
                products_ok = False
                witness = Witness(H, {"C": C, "D": D}, "right*left product is not a bi-ideal")
                break
        if witness:
            break

    # only if: every bi-ideal factors, searched over all right/left pairs
    products = {_product(H, C, D) for C in rights for D in lefts}
    factors_ok = True
    for B in range(1, full + 1):
        if _is_bi(H, B):
            checked += 1
            if B not in products:
                factors_ok = False
                if witness is None:
                    witness = Witness(H, {"B": B}, "bi-ideal is not a right*left product")
                break
    thm8 = verify_theorem8(H, require=False)
    if not thm8 and witness is None:
        witness = thm8.witness
    holds = products_ok and factors_ok and thm8.holds
    return VerificationReport(
        "thm9", holds, None if holds else witness, checked,
        {"products_are_bi_ideals": products_ok, "bi_ideals_factor": factors_ok,
         "thm8": thm8.holds},
    )


# -- theorem 12 ------------------------------------------------------------

def ideal_condition(H: Hypergroupoid) -> tuple[bool, Optional[Witness]]:
    """Right and left ideals idempotent, and every right*left product a quasi-ideal.

    Returns the truth value and, when false, the first failing subsets.
    """
    rights = members_of_class(H, IdealClass.RIGHT)
    lefts = members_of_class(H, IdealClass.LEFT)
    for A in rights:
        if not _is_idempotent(H, A):
            return False, Witness(H, {"A": A}, "right ideal is not idempotent")
    for B in lefts:
        if not _is_idempotent(H, B):
            return False, Witness(H, {"B": B}, "left ideal is not idempotent")
    for A in rights:
        for B in lefts:
            if not _is_quasi(H, _product(H, A, B)):
                return False, Witness(H, {"A": A, "B": B}, "A*B is not a quasi-ideal")
    return True, None


def verify_theorem12(H: Hypergroupoid) -> VerificationReport:
    """Regular ⟺ ideal condition, both sides evaluated independently.

    The tag names the direction with content on this ``H``: ``thm12-forward``
    when ``H`` is regular (the ideal condition must hold, and ``A*B = A∩B``
    for right ideals ``A`` and left ideals ``B``), ``thm12-backward``
    otherwise (the ideal condition must fail).
    """
    require_associative(H, "verify_theorem12")
    ev = _regularity(H)
    lhs = ev.regular
    rhs, rhs_witness = ideal_condition(H)
    tag = "thm12-forward" if lhs else "thm12-backward"
    details = {"regular": lhs, "ideal_condition": rhs}
    checked = 1
    if lhs != rhs:
        if lhs:
            w = rhs_witness
        else:
            x = ev.failing
            w = Witness(H, {"A": 1 << x}, "ideal condition holds but A is not in A*H*A")
        return VerificationReport(tag, False, w, checked, details)
    if lhs:
        for A in members_of_class(H, IdealClass.RIGHT):
            for B in members_of_class(H, IdealClass.LEFT):
                checked += 1
                if _product(H, A, B) != A & B:
                    return VerificationReport(
                        tag, False, Witness(H, {"A": A, "B": B}, "A*B != A∩B"), checked, details)
    return VerificationReport(tag, True, checked=checked, details=details)


def quasi_not_bi(H: Hypergroupoid) -> list[Subset]:
    """Quasi-ideals of an associative ``H`` that are not bi-ideals."""
    require_associative(H, "quasi_not_bi")
    return [Q for Q in members_of_class(H, IdealClass.QUASI) if not _is_bi(H, Q)]


# -- plain semigroups ------------------------------------------------------

def as_semigroup(H: Hypergroupoid) -> Optional[list[list[int]]]:
    """The element table of ``H`` when every cell is a singleton, else ``None``."""
    out = []
    for row in H.table:
        if any(c & (c - 1) for c in row):
            return None
        out.append([c.bit_length() - 1 for c in row])
    return out


def _classical(H: Hypergroupoid) -> Semigroup:
    t = as_semigroup(H)
    if t is None:
        raise PreconditionError("structure has a non-singleton cell; not a plain semigroup")
    S = Semigroup(t)
    if not S.is_associative():
        raise PreconditionError("multiplication table is not associative")
    return S


def _bits(A) -> Subset:
    return sum(1 << a for a in A)


def verify_corollary13(H: Hypergroupoid) -> VerificationReport:
    """In a regular semigroup, bi-ideals are exactly the products ``CD``."""
    S = _classical(H)
    if not S.is_regular():
        raise PreconditionError("verify_corollary13 requires a regular semigroup")
    products = {S.mul(C, D) for C in S.right_ideals() for D in S.left_ideals()}
    checked = 0
    for B in S.subsets():
        checked += 1
        if S.is_bi_ideal(B) != (B in products):
            return _fail("cor13", H, "bi-ideal iff right*left product fails", checked, B=_bits(B))
    return VerificationReport("cor13", True, checked=checked)


def verify_corollary14(H: Hypergroupoid) -> VerificationReport:
    """Regular iff ideals idempotent and right*left products quasi-ideals."""
    S = _classical(H)
    rights, lefts = S.right_ideals(), S.left_ideals()
    rhs = (all(S.is_idempotent(A) for A in rights)
           and all(S.is_idempotent(B) for B in lefts)
           and all(S.is_quasi_ideal(S.mul(A, B)) for A in rights for B in lefts))
    lhs = S.is_regular()
    details = {"regular": lhs, "ideal_condition": rhs}
    if lhs != rhs:
        return VerificationReport("cor14", False, Witness(H, {}, "equivalence fails"), 1, details)
    return VerificationReport("cor14", True, checked=1, details=details)


def replay(report: VerificationReport) -> bool:
    """Re-run the failing condition recorded in ``report.witness``.

    Returns ``True`` when the violation reproduces.
    """
    w = report.witness
    if w is None:
        raise ValueError("report has no witness to replay")
    H, s = w.structure, w.subsets
    full = H.full
    tag = report.theorem
    if tag == "prop7":
        return not _is_bi(H, _product(H, s["C"], s["D"]))
    if tag == "lemma11":
        A, B = s["A"], s["B"]
        meet = A & B
        return not meet or any(not is_subset(H.table[a][b], meet)
                               for a in members(A) for b in members(B))
    if tag in ("thm8", "thm9"):
        if "B" in s and _is_bi(H, s["B"]):
            B = s["B"]
            g = _generated(H, B)
            products = {_product(H, C, D)
                        for C in members_of_class(H, IdealClass.RIGHT)
                        for D in members_of_class(H, IdealClass.LEFT)}
            return (_product(H, g.right, g.left) != B
                    or _product(H, _product(H, B, full), B) != B
                    or not is_subset(_product(H, B, B), B)
                    or B not in products)
        return not _is_bi(H, _product(H, s["C"], s["D"]))
    if tag.startswith("thm12"):
        lhs = _regularity(H).regular
        rhs, _ = ideal_condition(H)
        if lhs != rhs:
            return True
        return _product(H, s["A"], s["B"]) != s["A"] & s["B"]
    if tag == "cor13":
        return not verify_corollary13(H).holds
    if tag == "cor14":
        return not verify_corollary14(H).holds
    raise ValueError(f"cannot replay {tag!r}")
