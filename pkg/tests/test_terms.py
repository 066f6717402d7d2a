from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiring_lab.terms import (
    EMPTY,
    ParseError,
    PolyTerm,
    TermError,
    add,
    canonicalize,
    format_term,
    mul,
    parse_term,
    scale,
    subterm_difference,
)

from strategies import coeff_maps, polyterms


def T(text, names=("w",)):
    return parse_term(text, names)


# Oracle: polynomials as plain Counters keyed by exponent tuples.
def oracle_add(a, b):
    return Counter(a) + Counter(b)


def oracle_mul(a, b):
    out = Counter()
    for ma, ca in a.items():
        for mb, cb in b.items():
            out[tuple(x + y for x, y in zip(ma, mb))] += ca * cb
    return out


class TestExamples:
    def test_add(self):
        assert add(T("w"), T("w")) == T("2w")
        assert add(T("2w + w^2"), T("w^2")) == T("2w + 2w^2")
        assert add(T("w"), T("w^3")).terms == (((1,), 1), ((3,), 1))

    def test_mul(self):
        assert mul(T("w"), T("w")) == T("w^2")
        assert mul(T("w + w^2"), T("2w")) == T("2w^2 + 2w^3")
        x = T("2w^2")
        assert mul(mul(x, x), x) == T("8w^6")
        assert x ** 3 == T("8w^6")

    def test_scale(self):
        assert scale(3, T("w + w^3")) == T("3w + 3w^3")
        assert scale(1, T("w + 5w^2")) == T("w + 5w^2")
        assert scale(2, T("w + w^2")) == T("2w + 2w^2")
        with pytest.raises(TermError):
            scale(0, T("w"))

    def test_subterm_difference(self):
        assert subterm_difference(T("20w + 2w^2"), T("2w + 2w^2")) == T("18w")
        assert subterm_difference(T("w"), T("w")) is EMPTY
        assert subterm_difference(T("w"), T("w^2")) is None

    def test_generator_mismatch(self):
        with pytest.raises(TermError):
            add(T("w"), T("x", ("x", "y")))
        with pytest.raises(TermError):
            mul(T("w"), T("x", ("x", "y")))


class TestInvariants:
    def test_constant_only_in_unital_mode(self):
        with pytest.raises(TermError):
            PolyTerm(1, (((0,), 1),))
        one = PolyTerm(1, (((0,), 1),), unital=True)
        assert format_term(one) == "1"

    def test_rejects_non_canonical(self):
        with pytest.raises(TermError):
            PolyTerm(1, (((2,), 1), ((1,), 1)))
        with pytest.raises(TermError):
            PolyTerm(1, (((1,), 0),))
        with pytest.raises(TermError):
            PolyTerm(1, ())

    def test_graded_lex_order(self):
        t = T("x^3 + y + x*y + x", ("x", "y"))
        assert [m for m, _ in t.terms] == [(0, 1), (1, 0), (1, 1), (3, 0)]

    def test_big_coefficients(self):
        big = 10 ** 40
        t = scale(big, T("w"))
        assert t.max_coeff == big
        assert add(t, t).max_coeff == 2 * big


class TestProperties:
    @given(coeff_maps(2), coeff_maps(2))
    def test_add_matches_oracle(self, a, b):
        got = add(PolyTerm.from_dict(a, 2), PolyTerm.from_dict(b, 2))
        assert got.as_dict() == dict(oracle_add(a, b))

    @given(coeff_maps(2), coeff_maps(2))
    def test_mul_matches_oracle(self, a, b):
        got = mul(PolyTerm.from_dict(a, 2), PolyTerm.from_dict(b, 2))
        assert got.as_dict() == dict(oracle_mul(a, b))

    @given(polyterms(2), polyterms(2), polyterms(2))
    def test_semiring_laws(self, a, b, c):
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))

    @given(polyterms(2))
    def test_canonicalize_idempotent(self, a):
        assert canonicalize(canonicalize(a)) == canonicalize(a) == a

    @given(polyterms(1), polyterms(1))
    def test_difference_round_trip(self, l, s):
        q = add(l, s)
        assert subterm_difference(q, l) == s
        assert subterm_difference(q, q) is EMPTY

    @given(polyterms(1), polyterms(1))
    def test_difference_absent_or_exact(self, q, l):
        s = subterm_difference(q, l)
        if s is None:
            assert any(q.coeff(m) < c for m, c in l.terms)
        elif s is EMPTY:
            assert q == l
        else:
            assert add(s, l) == q

    @given(st.integers(1, 12), polyterms(2))
    def test_scale_is_repeated_addition(self, n, a):
        total = a
        for _ in range(n - 1):
            total = add(total, a)
        assert scale(n, a) == total

    @given(polyterms(2))
    def test_format_parse_round_trip(self, a):
        names = ("x", "y")
        assert parse_term(format_term(a, names), names) == a


class TestParser:
    def test_grammar_forms(self):
        names = ("x", "y")
        assert parse_term("2*x*y^2 + 3 x", names) == parse_term("3x + 2x*y^2", names)
        assert parse_term("  x  +x ", names) == parse_term("2x", names)
        assert parse_term("x*x", names) == parse_term("x^2", names)

    @pytest.mark.parametrize("text, fragment, column", [
        ("0w", "zero coefficient", 1),
        ("w^0", "zero exponent", 3),
        ("w + v", "unknown generator", 5),
        ("w +", "expected summand", 4),
        ("w - w", "unexpected character", 3),
        ("3", "unital", 2),
        ("", "empty term", 1),
    ])
    def test_errors(self, text, fragment, column):
        with pytest.raises(ParseError) as info:
            parse_term(text)
        assert fragment in info.value.message
        assert info.value.column == column

    def test_constant_in_unital_mode(self):
        t = parse_term("1 + w", unital=True)
        assert t.coeff((0,)) == 1 and t.coeff((1,)) == 1
