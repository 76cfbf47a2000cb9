from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_force_product
from grassmann.algebra import (
    GrassmannElement,
    component,
    even_part,
    format_element,
    involution,
    invert_unit,
    parse_element,
    substitute_zero,
)
from grassmann.rings import GF, QQ, NotAUnitError
from grassmann.sampling import random_element, random_odd


def gen(ring, n, i):
    return GrassmannElement.generator(ring, n, i)


def elem(ring, n, text):
    return parse_element(ring, n, text)


class TestMultiplication:
    def test_ascending_pair(self, ring):
        assert gen(ring, 4, 1) * gen(ring, 4, 2) == elem(ring, 4, "x1x2")

    def test_single_inversion(self, ring):
        assert gen(ring, 4, 2) * gen(ring, 4, 1) == elem(ring, 4, "-x1x2")

    def test_three_letter_sign(self, ring):
        # brute-force letter sorting also yields one transposition here
        left = elem(ring, 4, "x1x3")
        right = gen(ring, 4, 2)
        assert brute_force_product(left, right) == elem(ring, 4, "-x1x2x3")
        assert left * right == elem(ring, 4, "-x1x2x3")

    def test_square_truncation(self, ring):
        one = GrassmannElement.one(ring, 3)
        assert (one + gen(ring, 3, 1)) * (one - gen(ring, 3, 1)) == one

    def test_dimension_mismatch(self, ring):
        with pytest.raises(ValueError):
            gen(ring, 3, 1) * gen(ring, 4, 1)

    @pytest.mark.parametrize("n", [4, 6])
    def test_against_brute_force(self, ring, rng, n):
        for _ in range(40):
            e = random_element(rng, ring, n, terms=4)
            f = random_element(rng, ring, n, terms=4)
            assert e * f == brute_force_product(e, f)

    def test_associativity_random(self, ring, rng):
        for n in (4, 6, 8):
            for _ in range(67):
                e = random_element(rng, ring, n, terms=3)
                f = random_element(rng, ring, n, terms=3)
                g = random_element(rng, ring, n, terms=3)
                assert (e * f) * g == e * (f * g)

    def test_anticommutation_and_squares(self, ring):
        n = 6
        zero = GrassmannElement.zero(ring, n)
        for i in range(1, n + 1):
            assert gen(ring, n, i) * gen(ring, n, i) == zero
            for j in range(1, n + 1):
                if i != j:
                    assert (gen(ring, n, i) * gen(ring, n, j)
                            + gen(ring, n, j) * gen(ring, n, i)) == zero

    def test_nilpotency_of_augmentation_ideal(self, ring, rng):
        n = 5
        for _ in range(20):
            acc = GrassmannElement.one(ring, n)
            for _ in range(n + 1):
                acc = acc * random_element(rng, ring, n,
                                           degrees=range(1, n + 1), terms=3)
            assert not acc


@st.composite
def small_elements(draw, n=4):
    masks = draw(st.lists(st.integers(min_value=0, max_value=(1 << n) - 1),
                          max_size=5))
    coeffs = draw(st.lists(st.integers(min_value=-4, max_value=4),
                           min_size=len(masks), max_size=len(masks)))
    terms = {}
    for m, c in zip(masks, coeffs):
        terms[m] = terms.get(m, 0) + c
    return GrassmannElement(QQ, n, {m: Fraction(c) for m, c in terms.items()})


class TestHypothesisInvariants:
    @settings(max_examples=60, deadline=None)
    @given(small_elements(), small_elements(), small_elements())
    def test_associativity(self, e, f, g):
        assert (e * f) * g == e * (f * g)

    @settings(max_examples=60, deadline=None)
    @given(small_elements(), small_elements())
    def test_involution_is_multiplicative(self, e, f):
        assert involution(e * f) == involution(e) * involution(f)

    @settings(max_examples=60, deadline=None)
    @given(small_elements())
    def test_involution_order_two(self, e):
        assert involution(involution(e)) == e

    @settings(max_examples=60, deadline=None)
    @given(small_elements())
    def test_parity_parts_sum(self, e):
        assert component(e, "even") + component(e, "odd") == e


class TestComponents:
    def test_degree_projection(self, ring):
        e = elem(ring, 3, "1 + x1 + x1x2")
        assert component(e, 1) == elem(ring, 3, "x1")

    def test_odd_projection(self, ring):
        e = elem(ring, 3, "x1 + x1x2x3")
        assert component(e, "odd") == e

    def test_even_projection_kills_generator(self, ring):
        assert not component(gen(ring, 3, 1), "even")

    def test_bad_selector(self, ring):
        with pytest.raises(ValueError):
            component(gen(ring, 3, 1), "weird")


class TestInvolution:
    def test_example(self, ring):
        assert involution(elem(ring, 3, "x1x2 + x3")) == elem(ring, 3, "x1x2 - x3")

    def test_fixes_one(self, ring):
        one = GrassmannElement.one(ring, 3)
        assert involution(one) == one

    def test_normality_relation(self, ring, rng):
        # x_i a == involution(a) x_i, checked by direct multiplication
        n = 5
        for _ in range(100):
            a = random_element(rng, ring, n, terms=4)
            for i in range(1, n + 1):
                assert gen(ring, n, i) * a == involution(a) * gen(ring, n, i)

    def test_odd_squares_vanish(self, ring, rng):
        n = 6
        for _ in range(200):
            a = random_odd(rng, ring, n, terms=4)
            assert not a * a

    def test_norm_form(self, ring, rng):
        # a * involution(a) equals the square of the even part
        n = 5
        for _ in range(200):
            a = random_element(rng, ring, n, terms=4)
            ev = even_part(a)
            assert a * involution(a) == ev * ev
            assert involution(a) * a == ev * ev

    def test_odd_part_bracket_is_central(self, ring, rng):
        # brackets of odd elements land in the even part, which is central
        n = 5
        for _ in range(30):
            a = random_odd(rng, ring, n, terms=3)
            b = random_element(rng, ring, n, terms=3)
            br = a * b - b * a
            assert br == even_part(br)
            c = random_element(rng, ring, n, terms=3)
            assert br * c == c * br


class TestSubstituteZero:
    def test_drops_by_index(self, ring):
        assert substitute_zero(elem(ring, 3, "x1 + x2x3"), {1}) == elem(ring, 3, "x2x3")

    def test_empty_set_is_identity(self, ring, rng):
        e = random_element(rng, ring, 4, terms=4)
        assert substitute_zero(e, ()) == e

    def test_disjoint_index(self, ring):
        e = elem(ring, 3, "x1x2")
        assert substitute_zero(e, {3}) == e


class TestUnitInversion:
    def test_top_pair(self, ring):
        e = elem(ring, 3, "1 + x1x2")
        assert invert_unit(e) == elem(ring, 3, "1 - x1x2")

    def test_scalar(self):
        e = GrassmannElement.scalar(QQ, 3, 2)
        assert invert_unit(e) == GrassmannElement.scalar(QQ, 3, Fraction(1, 2))

    def test_mixed_unit(self, ring):
        e = elem(ring, 3, "1 + x1 + x1x2")
        one = GrassmannElement.one(ring, 3)
        assert e * invert_unit(e) == one
        assert invert_unit(e) * e == one

    def test_random_units(self, ring, rng):
        n = 5
        one = GrassmannElement.one(ring, n)
        for _ in range(50):
            e = one.scale(ring.random_nonzero(rng)) + random_element(
                rng, ring, n, degrees=range(1, n + 1), terms=4)
            assert e * invert_unit(e) == one

    def test_non_unit_rejected(self, ring):
        with pytest.raises(NotAUnitError):
            invert_unit(gen(ring, 3, 1))


class TestCenter:
    @pytest.mark.parametrize("n", [4, 5])
    def test_monomial_commutant(self, ring, n):
        central = []
        for mask in range(1 << n):
            e = GrassmannElement.monomial(ring, n, mask)
            if all(e * gen(ring, n, i) == gen(ring, n, i) * e
                   for i in range(1, n + 1)):
                central.append(mask)
        expected = [m for m in range(1 << n) if bin(m).count("1") % 2 == 0]
        if n % 2:
            expected.append((1 << n) - 1)
        assert sorted(central) == sorted(expected)


class TestGrammar:
    CASES = ["0", "1", "-1", "x1", "-x1x2", "1 - 3/2*x1x3 + x2x4",
             "2*x1 + 1/3*x2x3x4", "5"]

    @pytest.mark.parametrize("text", CASES)
    def test_round_trip_rational(self, text):
        e = parse_element(QQ, 4, text)
        assert parse_element(QQ, 4, format_element(e)) == e

    @pytest.mark.parametrize("text", CASES)
    def test_round_trip_prime(self, text):
        ring = GF(7)
        e = parse_element(ring, 4, text)
        assert parse_element(ring, 4, format_element(e)) == e

    def test_whitespace_insensitive(self):
        assert parse_element(QQ, 4, "1-3/2*x1x3+x2x4") == parse_element(
            QQ, 4, " 1 - 3/2 * x1x3 + x2x4 ")

    def test_two_digit_indices(self):
        e = parse_element(QQ, 12, "x12 + x1x2")
        assert e.coefficient(1 << 11) == 1
        assert e.coefficient(0b11) == 1
        assert parse_element(QQ, 12, format_element(e)) == e

    def test_random_round_trips(self, ring, rng):
        for _ in range(50):
            e = random_element(rng, ring, 5, terms=5)
            assert parse_element(ring, 5, format_element(e)) == e

    def test_repeated_generator_rejected(self):
        with pytest.raises(ValueError):
            parse_element(QQ, 4, "x1x1")

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            parse_element(QQ, 4, "x5")


class TestBounds:
    def test_generator_cap(self):
        e = GrassmannElement.generator(QQ, 16, 16)
        assert e.coefficient(1 << 15) == 1
        with pytest.raises(ValueError):
            GrassmannElement.zero(QQ, 17)
        with pytest.raises(ValueError):
            GrassmannElement.zero(QQ, 0)

    def test_even_characteristic_rejected(self):
        with pytest.raises(ValueError):
            GF(2)
        with pytest.raises(ValueError):
            GF(9)

    def test_prime_field_parses_fractions(self):
        ring = GF(7)
        assert ring.parse("3/2") == ring.normalize(3 * ring.invert(2))

    def test_two_is_invertible(self, ring):
        two = ring.from_int(2)
        assert ring.normalize(ring.invert(two) * two) == ring.one

    def test_desk_scale_smoke(self, ring, rng):
        # sparse arithmetic stays exact and calm at the upper desk sizes
        for n in (10, 16):
            e = random_element(rng, ring, n, terms=6)
            f = random_element(rng, ring, n, terms=6)
            g = random_element(rng, ring, n, terms=6)
            assert (e * f) * g == e * (f * g)
            assert involution(e * f) == involution(e) * involution(f)
