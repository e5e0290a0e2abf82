import itertools
import random
from fractions import Fraction

import pytest

from jacobiverma.algebra import (
    A_MINUS,
    A_PLUS,
    Generator,
    JacobiAlgebra,
    K_MINUS,
    K_PLUS,
    K_ZERO,
    Weight,
)
from jacobiverma.pbw import (
    PbwMonomial,
    UElement,
    monomial_weight,
    multiply,
    normal_order,
)
from jacobiverma.ring import RatFuncQ

from oracles import insert_normal_order

ALG = JacobiAlgebra(2)


def G(family, i, j=0):
    return Generator(family, i, j)


def mono(*gens):
    return PbwMonomial.from_generators(ALG, gens)


def uelt(pairs):
    return UElement(ALG.n, {m: RatFuncQ.from_scalar(ALG.n, c) for m, c in pairs})


def as_rational_dict(u):
    return {m.exps: c.as_poly().constant_value() for m, c in u.terms.items()}


class TestNormalOrderGolden:
    def test_single_ccr_swap(self):
        u = normal_order(ALG, [G(A_MINUS, 1), G(A_PLUS, 1)])
        assert u == uelt([(mono(G(A_PLUS, 1), G(A_MINUS, 1)), 1), (mono(), 1)])

    def test_bminus_on_two_creators(self):
        u = normal_order(ALG, [G(K_MINUS, 1, 1), G(A_PLUS, 1), G(A_PLUS, 1)])
        expected = uelt(
            [
                (mono(G(A_PLUS, 1), G(A_PLUS, 1), G(K_MINUS, 1, 1)), 1),
                (mono(G(A_PLUS, 1), G(A_MINUS, 1)), 2),
                (mono(), 1),
            ]
        )
        assert u == expected

    def test_ordered_monomial_fixed(self):
        word = [G(A_PLUS, 2), G(K_PLUS, 2, 2), G(K_ZERO, 2, 1)]
        u = normal_order(ALG, word)
        assert u == uelt([(mono(*word), 1)])

    def test_prefactor_linear(self):
        pre = RatFuncQ.from_scalar(2, Fraction(3, 7))
        u1 = normal_order(ALG, [G(A_MINUS, 1), G(A_PLUS, 1)], pre)
        u0 = normal_order(ALG, [G(A_MINUS, 1), G(A_PLUS, 1)])
        assert u1 == u0.scale(Fraction(3, 7))


class TestNormalOrderOracle:
    def test_all_words_length_two(self):
        for word in itertools.product(range(len(ALG.generators)), repeat=2):
            assert as_rational_dict(normal_order(ALG, word)) == insert_normal_order(ALG, word)

    def test_all_words_length_three(self):
        for word in itertools.product(range(len(ALG.generators)), repeat=3):
            assert as_rational_dict(normal_order(ALG, word)) == insert_normal_order(ALG, word)

    def test_random_words_up_to_length_six(self):
        rng = random.Random(20240817)
        for _ in range(150):
            k = rng.randint(4, 6)
            word = tuple(rng.randrange(len(ALG.generators)) for _ in range(k))
            assert as_rational_dict(normal_order(ALG, word)) == insert_normal_order(ALG, word)


class TestTermination:
    def test_length_eight_words_terminate(self):
        rng = random.Random(99)
        for _ in range(25):
            word = tuple(rng.randrange(len(ALG.generators)) for _ in range(8))
            u = normal_order(ALG, word)
            for m in u.terms:
                assert list(m.word()) == sorted(m.word())

    def test_idempotent(self):
        rng = random.Random(5)
        for _ in range(40):
            word = tuple(rng.randrange(len(ALG.generators)) for _ in range(5))
            u = normal_order(ALG, word)
            again = UElement.zero(ALG)
            for m, c in u.terms.items():
                again = again + normal_order(ALG, m.word(), c)
            assert again == u


class TestMultiply:
    def test_unit(self):
        x = UElement.of_generator(ALG, G(K_PLUS, 1, 2))
        assert multiply(ALG, UElement.unit(ALG), x) == x
        assert multiply(ALG, x, UElement.unit(ALG)) == x

    def test_ccr_through_multiply(self):
        am = UElement.of_generator(ALG, G(A_MINUS, 1))
        ap = UElement.of_generator(ALG, G(A_PLUS, 1))
        comm = multiply(ALG, am, ap) - multiply(ALG, ap, am)
        assert comm == UElement.unit(ALG)

    def test_dplus_dminus_commutator(self):
        # [d+, d-] = (1/2)(h1 - h2)
        dp = UElement.of_generator(ALG, G(K_ZERO, 1, 2))
        dm = UElement.of_generator(ALG, G(K_ZERO, 2, 1))
        comm = multiply(ALG, dp, dm) - multiply(ALG, dm, dp)
        expected = uelt(
            [
                (mono(G(K_ZERO, 1, 1)), Fraction(1, 2)),
                (mono(G(K_ZERO, 2, 2)), Fraction(-1, 2)),
            ]
        )
        assert comm == expected

    def test_commutator_lift_all_pairs(self):
        for x, y in itertools.product(ALG.generators, repeat=2):
            lift = multiply(
                ALG, UElement.of_generator(ALG, x), UElement.of_generator(ALG, y)
            ) - multiply(ALG, UElement.of_generator(ALG, y), UElement.of_generator(ALG, x))
            br = ALG.bracket(x, y)
            expected = UElement.zero(ALG)
            if br.scalar != 0:
                expected = expected + UElement.unit(ALG).scale(br.scalar)
            for g, c in br.terms.items():
                expected = expected + UElement.of_generator(ALG, g).scale(c)
            assert lift == expected, (x, y)

    def test_associativity_random_triples(self):
        rng = random.Random(4242)
        gens = ALG.generators
        for _ in range(60):
            x, y, z = (UElement.of_generator(ALG, rng.choice(gens)) for _ in range(3))
            assert multiply(ALG, multiply(ALG, x, y), z) == multiply(ALG, x, multiply(ALG, y, z))

    def test_associativity_all_basis_triples(self):
        gens = ALG.generators
        singles = [UElement.of_generator(ALG, g) for g in gens]
        for i, j, k in itertools.product(range(len(gens)), repeat=3):
            lhs = multiply(ALG, multiply(ALG, singles[i], singles[j]), singles[k])
            rhs = multiply(ALG, singles[i], multiply(ALG, singles[j], singles[k]))
            assert lhs == rhs, (gens[i], gens[j], gens[k])


class TestWeights:
    def test_monomial_weight_examples(self):
        m = mono(G(K_PLUS, 2, 2), G(K_ZERO, 1, 2), G(K_ZERO, 1, 2))
        assert monomial_weight(ALG, m) == Weight.of(2, 0)
        m2 = mono(G(A_PLUS, 1), G(A_PLUS, 2), G(K_ZERO, 1, 2))
        assert monomial_weight(ALG, m2) == Weight.of(2, 0)
        assert monomial_weight(ALG, mono()) == Weight.of(0, 0)

    def test_weight_preserved_by_normal_order(self):
        rng = random.Random(13)
        for _ in range(80):
            k = rng.randint(1, 5)
            word = tuple(rng.randrange(len(ALG.generators)) for _ in range(k))
            total = Weight.zero(2)
            for idx in word:
                total = total + ALG.weight(ALG.generators[idx])
            u = normal_order(ALG, word)
            for m in u.terms:
                if m.is_unit and not total.is_zero:
                    pytest.fail(f"scalar term from word of weight {total}")
                assert monomial_weight(ALG, m) == total
