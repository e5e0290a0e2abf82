from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobiverma.ring import (
    PolyQ,
    RatFuncQ,
    RingError,
    poly_gcd,
    rational_roots,
    squarefree_part,
)


def L(i, nvars=2):
    return PolyQ.var(nvars, i - 1)


def const(c, nvars=2):
    return PolyQ.const(nvars, Fraction(c))


fractions_st = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, nvars=2, max_deg=3, max_terms=4):
    terms = draw(
        st.dictionaries(
            keys=st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)]),
            values=fractions_st,
            max_size=max_terms,
        )
    )
    return PolyQ(nvars, terms)


@st.composite
def points(draw, nvars=2):
    return [draw(fractions_st) for _ in range(nvars)]


class TestArithmetic:
    def test_eval_at_root(self):
        p = L(1) - const(Fraction(3, 4))
        assert p.eval_all([Fraction(3, 4), 0]) == 0

    def test_expansion_example(self):
        lhs = (L(2) - L(1)) * (2 * L(2) - 2 * L(1) - const(1))
        expected = (
            2 * L(2) ** 2 - 4 * L(1) * L(2) + 2 * L(1) ** 2 - L(2) + L(1)
        )
        assert lhs == expected

    def test_expansion_example_random_points(self):
        # independent check: both sides agree at 5 fixed rational points
        lhs = (L(2) - L(1)) * (2 * L(2) - 2 * L(1) - const(1))
        rhs = 2 * L(2) ** 2 - 4 * L(1) * L(2) + 2 * L(1) ** 2 - L(2) + L(1)
        pts = [
            (Fraction(1, 2), Fraction(-3)),
            (Fraction(5), Fraction(7, 3)),
            (Fraction(-2, 7), Fraction(1, 5)),
            (Fraction(0), Fraction(11, 4)),
            (Fraction(9, 2), Fraction(-1, 6)),
        ]
        for pt in pts:
            assert lhs.eval_all(pt) == rhs.eval_all(pt)

    def test_degree_of_constant(self):
        assert const(7).total_degree() == 0

    def test_zero_behaviour(self):
        z = PolyQ.zero(2)
        assert z.is_zero
        assert (z + L(1)) == L(1)
        assert (L(1) * z).is_zero

    def test_pow(self):
        assert (L(1) + L(2)) ** 2 == L(1) ** 2 + 2 * L(1) * L(2) + L(2) ** 2

    def test_subs_partial(self):
        p = L(1) * L(2) + L(2) ** 2
        q = p.subs({1: Fraction(2)})
        assert q == 2 * L(1) + const(4)

    def test_subs_poly(self):
        p = L(2) ** 2
        q = p.subs({1: const(Fraction(3, 2)) - L(1)})
        assert q == (const(Fraction(3, 2)) - L(1)) ** 2

    @given(polys(), polys(), polys())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(polys(), polys(), points())
    @settings(max_examples=60, deadline=None)
    def test_eval_is_homomorphism(self, a, b, pt):
        assert (a * b).eval_all(pt) == a.eval_all(pt) * b.eval_all(pt)
        assert (a + b).eval_all(pt) == a.eval_all(pt) + b.eval_all(pt)


class TestGcd:
    def test_gcd_linear_factor(self):
        g = poly_gcd(L(1) ** 2 - L(2) ** 2, L(1) - L(2))
        assert g == (L(1) - L(2)).content_free()

    def test_gcd_divides(self):
        a = (L(1) - L(2)) * (L(1) + const(1)) ** 2
        b = (L(1) - L(2)) * (L(2) - const(3))
        g = poly_gcd(a, b)
        assert a.try_divide(g) is not None
        assert b.try_divide(g) is not None
        assert g == (L(1) - L(2)).content_free()

    def test_gcd_of_zeros_rejected(self):
        with pytest.raises(RingError):
            poly_gcd(PolyQ.zero(2), PolyQ.zero(2))

    def test_division_by_zero_rejected(self):
        with pytest.raises(RingError):
            L(1).try_divide(PolyQ.zero(2))

    @given(polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3))
    @settings(max_examples=40, deadline=None)
    def test_gcd_divides_both(self, a, b):
        if a.is_zero and b.is_zero:
            return
        g = poly_gcd(a, b)
        if not a.is_zero:
            assert a.try_divide(g) is not None
        if not b.is_zero:
            assert b.try_divide(g) is not None

    def test_content_free_monic_convention(self):
        p = -4 * L(2) + const(1)
        assert p.content_free() == L(2) - const(Fraction(1, 4))

    def test_squarefree_part(self):
        p = (L(1) - L(2)) ** 2
        assert squarefree_part(p) == (L(1) - L(2)).content_free()

    def test_squarefree_mixed(self):
        p = (L(1) - const(1)) ** 2 * (L(2) + L(1))
        sf = squarefree_part(p)
        expect = ((L(1) - const(1)) * (L(2) + L(1))).content_free()
        assert sf == expect

    def test_rational_roots(self):
        p = (L(2) - const(Fraction(3, 4))) * (L(2) - const(Fraction(5, 4)))
        assert rational_roots(p) == [Fraction(3, 4), Fraction(5, 4)]

    def test_rational_roots_with_irrational_cofactor(self):
        p = (L(1) - const(2)) * (L(1) ** 2 - const(2))
        assert rational_roots(p) == [Fraction(2)]


class TestRatFunc:
    def test_reduction(self):
        num = L(1) ** 2 - L(2) ** 2
        den = L(1) - L(2)
        r = RatFuncQ(num, den)
        assert r.is_polynomial()
        assert r.as_poly() == L(1) + L(2)

    def test_den_monic(self):
        r = RatFuncQ(PolyQ.one(2), 2 * L(2) - 2 * L(1) - const(1))
        assert r.den == (L(2) - L(1) - const(Fraction(1, 2))).content_free()

    def test_zero_denominator_rejected(self):
        with pytest.raises(RingError):
            RatFuncQ(PolyQ.one(2), PolyQ.zero(2))

    def test_field_ops(self):
        a = RatFuncQ(L(1), L(2))
        b = RatFuncQ(L(2), L(1))
        assert (a * b) == RatFuncQ.one(2)
        assert (a / a) == RatFuncQ.one(2)
        assert (a + (-a)).is_zero

    @given(polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_through_fraction(self, a, b):
        if b.is_zero:
            return
        r = RatFuncQ(a, b)
        # r * b == a as rational functions
        assert r * RatFuncQ(b) == RatFuncQ(a)


class TestRendering:
    def test_poly_text(self):
        p = 2 * L(2) ** 2 - 4 * L(1) * L(2) + 2 * L(1) ** 2 - L(2) + L(1)
        assert p.to_text() == "2 L2^2 - 4 L2 L1 + 2 L1^2 - L2 + L1"

    def test_constraint_text(self):
        assert (L(2) - L(1)).to_text() == "L2 - L1"

    def test_latex(self):
        p = L(1) - const(Fraction(3, 4))
        assert p.to_latex() == "\\Lambda(H_1) - \\tfrac{3}{4}"
