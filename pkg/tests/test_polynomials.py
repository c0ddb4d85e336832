import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgmexp.polynomials import (
    FLOAT,
    RATIONAL,
    Poly,
    ScalarModeError,
    build_h,
    build_k,
    divmod_exact,
    gcd,
    parse_rational,
    root_multiplicity,
)

F = Fraction


def naive_h(c):
    """Independent oracle for the score numerator: the n-fold sum of the
    (n-1)-fold cofactor products, built with plain list arithmetic."""

    def mul(a, b):
        out = [F(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    n = len(c)
    total = [F(0)] * n
    for i in range(n):
        term = [F(1)]
        for j in range(n):
            if j != i:
                term = mul(term, [F(c[j]), F(1)])
        total = [a + b for a, b in zip(total, term)]
    while total and total[-1] == 0:
        total.pop()
    return tuple(total)


rationals = st.fractions(
    min_value=F(-20), max_value=F(20), max_denominator=12
).filter(lambda v: v != 0)


def c_lists(max_n):
    """Random nonzero rational multisets with forced repetition patterns."""
    return st.lists(rationals, min_size=1, max_size=max_n).flatmap(
        lambda base: st.lists(
            st.sampled_from(base), min_size=1, max_size=max_n
        )
    )


class TestPoly:
    def test_normalization_strips_trailing_zeros(self):
        p = Poly((F(1), F(2), F(0), F(0)))
        assert p.coeffs == (F(1), F(2))
        assert p.degree == 1

    def test_zero_polynomial_is_empty_with_minus_inf_degree(self):
        assert Poly((0, 0)).coeffs == ()
        assert Poly(()).degree == float("-inf")
        assert Poly(()).is_zero

    def test_rational_coeffs_in_lowest_terms(self):
        p = Poly((F(2, 4), F(6, 3)))
        assert p.coeffs == (F(1, 2), F(2))

    def test_eval_examples(self):
        assert Poly((6.0, 2.0), FLOAT).eval(-3.0) == 0.0
        assert Poly((F(-8), F(-2), F(1))).eval(0) == -8
        assert Poly((F(5), F(8), F(3))).eval(F(-5, 3)) == 0

    def test_eval_widens_float_to_complex(self):
        p = Poly((1.0, 0.0, 1.0), FLOAT)
        assert p.eval(1j) == pytest.approx(0.0)

    def test_eval_rejects_mixed_modes(self):
        with pytest.raises(ScalarModeError):
            Poly((F(1), F(1))).eval(0.5)
        with pytest.raises(ScalarModeError):
            Poly((1.0, 1.0), FLOAT).eval(F(1, 2))

    def test_derivative_examples(self):
        assert Poly((F(-8), F(-2), F(1))).derivative().coeffs == (F(-2), F(2))
        assert Poly((F(7),)).derivative().is_zero
        assert Poly((F(2), F(5), F(4), F(1))).derivative().coeffs == (F(5), F(8), F(3))

    def test_json_round_trip_rational(self):
        p = Poly((F(1, 3), F(-2), F(5)))
        doc = p.to_json_dict()
        assert doc["scalar_kind"] == RATIONAL
        assert doc["coeffs"] == ["1/3", "-2", "5"]
        assert Poly.from_json_dict(json.loads(json.dumps(doc))) == p

    def test_json_round_trip_float(self):
        p = Poly((0.5, -2.0), FLOAT)
        doc = json.loads(json.dumps(p.to_json_dict()))
        assert doc["coeffs"] == [0.5, -2.0]
        assert Poly.from_json_dict(doc) == p


class TestBuildK:
    def test_two_factors(self):
        k = build_k([F(2), F(-4)])
        assert k.coeffs == (F(-8), F(-2), F(1))

    def test_single_factor(self):
        assert build_k([F(1)]).coeffs == (F(1), F(1))

    def test_repeated_factor(self):
        k = build_k([F(1), F(1), F(2)])
        assert k.coeffs == (F(2), F(5), F(4), F(1))

    def test_float_mode(self):
        k = build_k([2.0, -4.0])
        assert k.kind == FLOAT
        assert k.coeffs == (-8.0, -2.0, 1.0)

    def test_rejects_zero_values(self):
        with pytest.raises(ValueError):
            build_k([F(1), F(0)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            build_k([])

    def test_rejects_mixed_scalars(self):
        with pytest.raises(ScalarModeError):
            build_k([F(1), 2.0])

    @given(st.lists(rationals, min_size=1, max_size=8))
    def test_permutation_invariance(self, c):
        k = build_k(c)
        assert build_k(list(reversed(c))) == k
        assert build_k(sorted(c)) == k


class TestBuildH:
    def test_two_shifts_gives_linear(self):
        h = build_h([F(2), F(-4)])
        assert h.coeffs == (F(-2), F(2))  # 2*theta + (c1 + c2)

    def test_worked_example(self):
        h = build_h([F(1), F(1), F(2)])
        assert h.coeffs == (F(5), F(8), F(3))

    def test_single_shift_is_constant_one(self):
        h = build_h([F(5)])
        assert h.coeffs == (F(1),)
        assert h.degree == 0

    @given(c_lists(8))
    @settings(max_examples=60)
    def test_matches_cofactor_sum_oracle(self, c):
        assert build_h(c).coeffs == naive_h(c)

    @given(c_lists(15))
    @settings(max_examples=60)
    def test_equals_derivative_of_k_exactly(self, c):
        assert build_h(c) == build_k(c).derivative()

    @given(c_lists(12))
    @settings(max_examples=60)
    def test_degree_and_leading_coefficient(self, c):
        h = build_h(c)
        assert h.degree == len(c) - 1
        assert h.leading_coefficient == len(c)


class TestDivmod:
    @given(c_lists(6), c_lists(4))
    @settings(max_examples=40)
    def test_division_identity(self, ca, cb):
        a, b = build_k(ca), build_k(cb)
        q, r = divmod_exact(a, b)
        # a == q*b + r with deg r < deg b, checked by evaluation at several points
        for t in (F(0), F(1), F(-3), F(7, 2)):
            assert a.eval(t) == q.eval(t) * b.eval(t) + r.eval(t)
        assert r.is_zero or r.degree < b.degree

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            divmod_exact(Poly((F(1),)), Poly(()))

    def test_rejects_float_mode(self):
        with pytest.raises(ScalarModeError):
            divmod_exact(Poly((1.0, 1.0), FLOAT), Poly((1.0,), FLOAT))


class TestGcd:
    def test_repeated_shift_gives_common_factor(self):
        h = build_h([F(1), F(1), F(2)])
        k = build_k([F(1), F(1), F(2)])
        assert gcd(h, k).coeffs == (F(1), F(1))  # theta + 1

    def test_distinct_shifts_give_constant(self):
        h = build_h([F(2), F(-4)])
        k = build_k([F(2), F(-4)])
        assert gcd(h, k).coeffs == (F(1),)

    def test_gcd_with_itself_is_monic_self(self):
        p = Poly((F(4), F(2)))
        assert gcd(p, p).coeffs == (F(2), F(1))

    def test_rejects_float_mode(self):
        with pytest.raises(ScalarModeError):
            gcd(Poly((1.0, 1.0), FLOAT), Poly((1.0,), FLOAT))

    def test_gcd_of_two_zeros_undefined(self):
        with pytest.raises(ValueError):
            gcd(Poly(()), Poly(()))

    @given(c_lists(10))
    @settings(max_examples=60)
    def test_gcd_degree_counts_repeats(self, c):
        # one common zero of multiplicity n_i - 1 per repeated value
        h, k = build_h(c), build_k(c)
        counts = {}
        for v in c:
            counts[v] = counts.get(v, 0) + 1
        expected = sum(mult - 1 for mult in counts.values() if mult > 1)
        assert gcd(h, k).degree == expected


class TestRootMultiplicity:
    def test_simple_root(self):
        assert root_multiplicity(Poly((F(3), F(1))), F(-3)) == 1

    def test_non_root(self):
        assert root_multiplicity(Poly((F(3), F(1))), F(5)) == 0

    def test_repeated_root(self):
        h = build_h([F(3), F(3), F(3), F(7)])
        assert root_multiplicity(h, F(-3)) == 2
        assert root_multiplicity(h, F(-7)) == 0


class TestParseRational:
    @pytest.mark.parametrize(
        "text,expected",
        [("3", F(3)), ("-7", F(-7)), ("1/2", F(1, 2)), ("-9/12", F(-3, 4)), (" 5/3 ", F(5, 3))],
    )
    def test_accepts_literals(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1/0", "1.5.2", "2/"])
    def test_rejects_garbage(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)
