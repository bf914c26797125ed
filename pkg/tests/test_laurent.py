import random

import pytest

from qbases.laurent import (
    LaurentPoly,
    RatFunc,
    quantum_binomial,
    quantum_factorial,
    quantum_int,
)


def L(d):
    return LaurentPoly(d)


q = LaurentPoly({1: 1})
qi = LaurentPoly({-1: 1})
one = LaurentPoly.one()


def rand_laurent(rng, span=4, width=3):
    return LaurentPoly({rng.randint(-span, span): rng.randint(-5, 5)
                        for _ in range(width)})


class TestLaurentPoly:
    def test_canonical_no_zeros(self):
        p = L({2: 1, 0: 0, -1: 3})
        assert 0 not in p.c
        assert p == L({2: 1, -1: 3})

    def test_add_cancel(self):
        assert (q - q).is_zero()
        assert q + qi == L({1: 1, -1: 1})

    def test_mul(self):
        # (q + q^-1)^2 = q^2 + 2 + q^-2
        p = (q + qi) * (q + qi)
        assert p == L({2: 1, 0: 2, -2: 1})

    def test_pow(self):
        assert (q + 1) ** 3 == L({3: 1, 2: 3, 1: 3, 0: 1})
        assert q ** 0 == one

    def test_bar(self):
        p = L({3: 2, -1: 5})
        assert p.bar() == L({-3: 2, 1: 5})
        assert p.bar().bar() == p

    def test_int_mixing(self):
        assert 2 * q + 1 - q == q + 1
        assert (1 - q) * (1 + q) == 1 - q ** 2

    def test_exact_div(self):
        n = q ** 2 - qi ** 2
        d = q - qi
        assert n.exact_div(d) == q + qi
        with pytest.raises(ValueError):
            (q + 1).exact_div(q - 1)
        with pytest.raises(ZeroDivisionError):
            one.exact_div(LaurentPoly.zero())

    def test_exact_div_random(self):
        rng = random.Random(7)
        for _ in range(60):
            a = rand_laurent(rng)
            b = rand_laurent(rng)
            if b.is_zero():
                continue
            assert (a * b).exact_div(b) == a

    def test_valuation_degree(self):
        p = L({-2: 1, 3: 4})
        assert p.min_exp() == -2
        assert p.max_exp() == 3
        with pytest.raises(ValueError):
            LaurentPoly.zero().min_exp()

    def test_at_one(self):
        assert quantum_int(5).at_one() == 5

    def test_json_roundtrip(self):
        p = L({-3: 2, 0: -1, 5: 7})
        assert LaurentPoly.from_json(p.to_json()) == p

    def test_hash_consistency(self):
        assert hash(L({1: 1, -1: 1})) == hash(q + qi)
        s = {q + qi, L({1: 1, -1: 1})}
        assert len(s) == 1


class TestQuantumIntegers:
    def test_small_values(self):
        assert quantum_int(0).is_zero()
        assert quantum_int(1) == one
        # [2] = q + q^-1
        assert quantum_int(2) == q + qi
        assert quantum_int(3) == L({2: 1, 0: 1, -2: 1})

    def test_bar_symmetric(self):
        for n in range(8):
            assert quantum_int(n).bar() == quantum_int(n)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            quantum_int(-1)
        with pytest.raises(ValueError):
            quantum_factorial(-2)

    def test_factorial(self):
        assert quantum_factorial(0) == one
        assert quantum_factorial(3) == quantum_int(2) * quantum_int(3)

    def test_binomial_value(self):
        # [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4
        assert quantum_binomial(4, 2) == L({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})

    def test_binomial_symmetry_and_edges(self):
        for n in range(7):
            for k in range(n + 1):
                b = quantum_binomial(n, k)
                assert b == quantum_binomial(n, n - k)
                assert b.bar() == b
                assert b.at_one() == __import__("math").comb(n, k)
        with pytest.raises(ValueError):
            quantum_binomial(3, 4)
        with pytest.raises(ValueError):
            quantum_binomial(3, -1)

    def test_pascal_rule(self):
        # [n k] = q^k [n-1 k] + q^(k-n) [n-1 k-1]
        for n in range(2, 7):
            for k in range(1, n):
                lhs = quantum_binomial(n, k)
                rhs = (LaurentPoly.q_power(k) * quantum_binomial(n - 1, k)
                       + LaurentPoly.q_power(k - n) * quantum_binomial(n - 1, k - 1))
                assert lhs == rhs


class TestRatFunc:
    def test_laurent_embedding(self):
        r = RatFunc.from_laurent(q + qi)
        assert r.is_laurent()
        assert r.to_laurent() == q + qi

    def test_reduction(self):
        # (q^2 - 1)/(q - 1) = q + 1
        r = RatFunc({2: 1, 0: -1}, (-1, 1))
        assert r.is_laurent()
        assert r.to_laurent() == q + 1

    def test_den_constant_term_nonzero(self):
        # 1/q normalizes to the Laurent monomial q^-1
        r = RatFunc({0: 1}, (0, 1))
        assert r.is_laurent()
        assert r.to_laurent() == qi

    def test_positive_leading_den(self):
        r = RatFunc({0: 1}, (-1, -1))
        assert r.den[-1] > 0
        assert r == RatFunc({0: -1}, (1, 1))

    def test_non_laurent(self):
        r = RatFunc({0: 1}, (1, 1))
        assert not r.is_laurent()
        with pytest.raises(ValueError):
            r.to_laurent()

    def test_integer_fraction_kept_exact(self):
        r = RatFunc(3) / RatFunc(2)
        assert r.num == {0: 3} and r.den == (2,)

    def test_field_ops(self):
        a = RatFunc({0: 1}, (1, 1))            # 1/(1+q)
        b = RatFunc({0: 1}, (-1, 1))           # 1/(q-1)
        s = a + b
        # 1/(1+q) + 1/(q-1) = 2q/(q^2-1)
        assert s == RatFunc({1: 2}, (-1, 0, 1))
        assert a * b == RatFunc({0: 1}, (-1, 0, 1))
        assert (a / b) == RatFunc({0: -1, 1: 1}, (1, 1))
        assert a - a == RatFunc.zero()

    def test_inverse_and_div_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc.zero().inverse()
        with pytest.raises(ZeroDivisionError):
            RatFunc.one() / RatFunc.zero()
        with pytest.raises(ZeroDivisionError):
            RatFunc({0: 1}, ())

    def test_pow_negative(self):
        a = RatFunc({1: 1})  # q
        assert a ** -2 == RatFunc({-2: 1})
        b = RatFunc({0: 1}, (1, 1))
        assert b ** -1 == RatFunc({0: 1, 1: 1})

    def test_bar(self):
        # bar(1/(1+q)) = 1/(1+q^-1) = q/(q+1)
        r = RatFunc({0: 1}, (1, 1))
        assert r.bar() == RatFunc({1: 1}, (1, 1))
        rng = random.Random(3)
        for _ in range(40):
            n = rand_laurent(rng)
            d = rand_laurent(rng, span=3)
            if d.is_zero():
                continue
            x = RatFunc(n.c, d)
            assert x.bar().bar() == x

    def test_value_at_zero(self):
        # 1/(q^2+1) -> 1 at q = 0
        r = RatFunc({0: 1}, (1, 0, 1))
        assert r.regular_at_zero()
        assert r.at_zero() == 1
        half = RatFunc(1) / RatFunc(2)
        assert half.at_zero().numerator == 1 and half.at_zero().denominator == 2
        pole = RatFunc({-1: 1})
        assert not pole.regular_at_zero()
        with pytest.raises(ValueError):
            pole.at_zero()

    def test_q_valuation(self):
        assert RatFunc({2: 1, 5: 3}, (1, 1)).q_valuation() == 2
        with pytest.raises(ValueError):
            RatFunc.zero().q_valuation()

    def test_structural_equality_random(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rand_laurent(rng)
            d = rand_laurent(rng, span=2)
            c = rand_laurent(rng, span=2)
            if d.is_zero() or c.is_zero():
                continue
            a = RatFunc(n.c, d)
            b = RatFunc((n * c).c, d * c)
            assert a == b
            assert hash(a) == hash(b)

    def test_field_axioms_random(self):
        rng = random.Random(23)
        for _ in range(30):
            xs = []
            for _ in range(3):
                n = rand_laurent(rng, span=2, width=2)
                d = rand_laurent(rng, span=1, width=2)
                if d.is_zero():
                    d = one
                xs.append(RatFunc(n.c, d))
            a, b, c = xs
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            if not b.is_zero():
                assert (a / b) * b == a

    def test_json_roundtrip(self):
        r = RatFunc({-2: 1, 1: 3}, (2, 0, 1))
        j = r.to_json()
        assert RatFunc.from_json(j) == r
        assert j["den"][0] == 0 and j["num"][0] == 1

    def test_quantum_norm_shape(self):
        # 1/(q^2+1): the squared-norm shape whose value at 0 is 1
        nrm = RatFunc.one() / RatFunc({0: 1, 2: 1})
        assert nrm.at_zero() == 1
