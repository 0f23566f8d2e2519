import pytest
from hypothesis import given, strategies as st

from hypersemi import subset
from hypersemi.dsl import (
    And,
    Atom,
    Conjecture,
    Counterexample,
    EvaluationError,
    Full,
    Generated,
    Intersection,
    Not,
    Or,
    ParseError,
    Product,
    SortError,
    Union_,
    Var,
    assignments,
    evaluate,
    hunt,
    parse,
    pretty,
)
from hypersemi.ideals import IdealClass, in_class

from conftest import H2C, H2F, H2L, H2M, H2R

CORPUS = [
    "forall A:right, B:left : A*B <= A &cap B",
    "forall A:right : A*A = A",
    "forall B:left : B*B = B",
    "forall A:subset : A <= R(A)",
    "forall A:subset : A <= L(A) & A <= I(A)",
    "forall A:subset : R(A) &cup L(A) <= I(A)",
    "forall B:bi : B*H*B <= B",
    "forall Q:quasi : Q*H &cap H*Q <= Q",
    "forall X:ideal : H*X <= X & X*H <= X",
    "forall C:right, D:subset : (C*D)*H*(C*D) <= C*D",
    "forall C:subset, D:left : (C*D)*H*(C*D) <= C*D",
    "forall A:right, B:left : A*B = A &cap B | !(A <= A*H*A)",
    "forall A:subset : !A <= A*H*A | A = A",
    "forall A:subset, B:subset : A*(B*A) = (A*B)*A",
    "forall A:subset, B:subset, C:subset : (A &cup B)*C = A*C &cup B*C",
    "forall A:subset, B:subset : A &cap (B &cup A) = A",
    "forall A:subset, B:subset : (A &cap B) &cup A = A",
    "forall A:left, B:right : !(A = B) | A*H = H*A",
    "forall A:subset : (A <= H | A = H) & !(!(A <= H))",
    "forall A:quasi, B:bi : A*B <= R(A*B) & L(A)*I(B) <= H",
    "forall A:subset : R(L(A)) = I(A) | !(R(L(A)) = I(A))",
    "forall A_1:subset, b2:right : A_1*b2 <= b2",
    "forall A:subset : (A*A)*A = A*(A*A)",
    "forall A:subset :\n  A*H\n  <= H",
]


class TestParse:
    def test_theorem12_statement(self):
        c = parse("forall A:right, B:left : A*B <= A &cap B")
        assert c.bindings == (("A", IdealClass.RIGHT), ("B", IdealClass.LEFT))
        assert c.body == Atom("<=", Product(Var("A"), Var("B")), Intersection(Var("A"), Var("B")))

    def test_idempotence(self):
        c = parse("forall A:right : A*A = A")
        assert c.body == Atom("=", Product(Var("A"), Var("A")), Var("A"))

    def test_dangling_product(self):
        text = "forall A:subset : A <= A*H*"
        with pytest.raises(ParseError) as e:
            parse(text)
        assert (e.value.line, e.value.col) == (1, len(text) + 1)

    def test_precedence_of_term_operators(self):
        c = parse("forall A:subset, B:subset : A &cup B &cap A*B <= H")
        assert c.body.lhs == Union_(Var("A"), Intersection(Var("B"), Product(Var("A"), Var("B"))))

    def test_left_associativity(self):
        c = parse("forall A:subset, B:subset : A*B*A <= A &cap B &cap A")
        assert c.body.lhs == Product(Product(Var("A"), Var("B")), Var("A"))
        assert c.body.rhs == Intersection(Intersection(Var("A"), Var("B")), Var("A"))

    def test_precedence_of_connectives(self):
        c = parse("forall A:subset : A <= H | !A = H & A = A")
        a1 = Atom("<=", Var("A"), Full())
        a2 = Atom("=", Var("A"), Full())
        a3 = Atom("=", Var("A"), Var("A"))
        assert c.body == Or(a1, And(Not(a2), a3))

    def test_parenthesised_term_at_formula_start(self):
        c = parse("forall A:subset : (A &cup A)*H <= H")
        assert c.body.lhs == Product(Union_(Var("A"), Var("A")), Full())

    def test_parenthesised_formula(self):
        c = parse("forall A:subset : (A <= H | A = H) & A = A")
        assert isinstance(c.body, And) and isinstance(c.body.left, Or)

    def test_generated_operators(self):
        c = parse("forall A:subset : R(A) &cup L(A) <= I(A)")
        assert c.body.lhs == Union_(Generated("R", Var("A")), Generated("L", Var("A")))

    @pytest.mark.parametrize("text,where", [
        ("forall A:sub : A <= A", (1, 10)),
        ("forall A:subset A <= A", (1, 17)),
        ("for A:subset : A <= A", (1, 1)),
        ("forall A:subset : A <= A )", (1, 26)),
        ("forall A:subset : A", (1, 20)),
        ("forall A:subset :\n  A <= # ", (2, 8)),
        ("forall H:subset : H <= H", (1, 8)),
        ("forall A:subset : R A <= A", (1, 21)),
    ])
    def test_syntax_errors_carry_location(self, text, where):
        with pytest.raises(ParseError) as e:
            parse(text)
        assert (e.value.line, e.value.col) == where

    def test_unbound_variable(self):
        with pytest.raises(SortError):
            parse("forall A:subset : A <= B")

    def test_double_binding(self):
        with pytest.raises(SortError):
            parse("forall A:subset, A:left : A <= A")


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    c = parse(text)
    printed = pretty(c)
    assert parse(printed) == c
    assert pretty(parse(printed)) == printed


def test_corpus_covers_every_operator_and_sort():
    joined = " ".join(CORPUS)
    for token in ["*", "&cap", "&cup", "R(", "L(", "I(", " H", "<=", "=", "&", "|", "!", "("]:
        assert token in joined
    for sort in IdealClass:
        assert f":{sort.value}" in joined
    assert len(CORPUS) >= 20


# random ASTs print and parse back to themselves
names = st.sampled_from(["A", "B", "C"])
terms = st.recursive(
    st.one_of(names.map(Var), st.just(Full())),
    lambda t: st.one_of(
        st.builds(Product, t, t), st.builds(Union_, t, t), st.builds(Intersection, t, t),
        st.builds(Generated, st.sampled_from("RLI"), t)),
    max_leaves=8)
formulas = st.recursive(
    st.builds(Atom, st.sampled_from(["<=", "="]), terms, terms),
    lambda f: st.one_of(st.builds(Not, f), st.builds(And, f, f), st.builds(Or, f, f)),
    max_leaves=5)


@given(formulas, st.permutations(list(IdealClass)))
def test_round_trip_random(body, sorts):
    c = Conjecture((("A", sorts[0]), ("B", sorts[1]), ("C", sorts[2])), body)
    assert parse(pretty(c)) == c


class TestEvaluate:
    def test_constant_idempotence_counterexample(self):
        r = evaluate(H2C, parse("forall A:right : A*A = A"))
        assert isinstance(r, Counterexample)
        assert r.assignment == {"A": subset(0, 1)}
        assert r.sides == (("A*A = A", subset(0), subset(0, 1)),)
        assert r.replay()

    def test_left_zero_product_in_intersection(self):
        assert evaluate(H2L, parse("forall A:right, B:left : A*B <= A &cap B")) is True

    def test_left_zero_assignment_count(self):
        c = parse("forall A:right, B:left : A*B <= A &cap B")
        assert len(list(assignments(H2L, c))) == 3

    @pytest.mark.parametrize("H", [H2L, H2R, H2F, H2C])
    def test_seed_in_right_ideal(self, H):
        assert evaluate(H, parse("forall A:subset : A <= R(A)")) is True

    def test_sorts_are_sound(self, fixture_structure):
        H = fixture_structure
        sorts = [s for s in IdealClass if s is not IdealClass.BI or H is not H2M]
        text = "forall " + ", ".join(f"V{i}:{s.value}" for i, s in enumerate(sorts)) + " : H <= H"
        c = parse(text)
        for env in assignments(H, c):
            for (name, sort) in c.bindings:
                assert in_class(H, env[name], sort)

    def test_empty_product_is_an_evaluation_error(self):
        c = parse("forall A:subset, B:subset : (A &cap B)*H <= H")
        with pytest.raises(EvaluationError) as e:
            evaluate(H2L, c)
        assert e.value.term == Product(Intersection(Var("A"), Var("B")), Full())

    def test_empty_intersection_compares(self):
        # empty sides are fine as long as no product sees them
        c = parse("forall A:subset, B:subset : A &cap B <= A")
        assert evaluate(H2L, c) is True

    def test_non_associative_rejected_for_chains(self):
        with pytest.raises(EvaluationError):
            evaluate(H2M, parse("forall A:subset : A <= A*H*A"))
        with pytest.raises(EvaluationError):
            evaluate(H2M, parse("forall A:subset : A <= R(A)"))
        with pytest.raises(EvaluationError):
            evaluate(H2M, parse("forall A:bi : A <= A"))

    def test_single_products_fine_without_associativity(self):
        r = evaluate(H2M, parse("forall A:subset, B:subset : A*B <= H"))
        assert r is True

    def test_full_set_inhabits_every_sort(self):
        c = parse("forall A:left, B:right, C:ideal, D:bi, E:quasi : H <= H")
        envs = list(assignments(H2C, c))
        assert {"A": 3, "B": 3, "C": 3, "D": 3, "E": 3} in envs


class TestHunt:
    def test_idempotence_refuted_at_order2(self):
        r = hunt(parse("forall A:right : A*A = A"), 2)
        assert not r.exhausted
        ce = r.counterexample
        assert ce.replay()
        assert ce.structure == H2C and ce.assignment == {"A": subset(0, 1)}

    def test_product_in_intersection_exhausts(self):
        r = hunt(parse("forall A:right, B:left : A*B <= A &cap B"), 2)
        assert r.exhausted
        assert r.stats.visited == 1 + 30

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_bi_ideal_sort_is_tautological(self, n):
        assert hunt(parse("forall B:bi : B*H*B <= B"), n).exhausted

    def test_assuming_restricts_structures(self):
        regular = parse("forall A:subset : A <= A*H*A")
        r = hunt(parse("forall A:right : A*A = A"), 2, assuming=regular)
        assert r.exhausted

    def test_restricted_alphabet_is_reported(self):
        r = hunt(parse("forall A:subset : A <= H"), 3, alphabet="singletons-full", alphabet_from=3)
        assert r.exhausted and "singletons-full" in r.restriction

    def test_parallel_hunt_finds_the_same_counterexample(self):
        c = parse("forall A:subset : A <= A*H*A")
        serial = hunt(c, 3)
        parallel = hunt(c, 3, workers=2, depth=1)
        assert serial.counterexample == parallel.counterexample
