"""Polynomial evaluation and Lagrange interpolation at zero."""

import itertools
import random
from types import SimpleNamespace

import pytest

from grouphandover.errors import DuplicateEvaluationPoint, InvalidPolynomial, ZeroEvaluationPoint
from grouphandover.groups import TOY
from grouphandover.shamir import (
    SecretPolynomial,
    evaluate_polynomial,
    hash_to_digest,
    hash_to_scalar,
    interpolate_at_zero,
    interpolate_in_exponent,
    lagrange_coefficient,
)

F101 = SimpleNamespace(q=101, curve_id="F101")


def naive_eval(coeffs, x, q):
    return sum(c * pow(x, k, q) for k, c in enumerate(coeffs)) % q


def random_poly(group, t, rng):
    coeffs = [rng.randrange(1, group.q) for _ in range(t)]
    return SecretPolynomial(group, tuple(coeffs))


def distinct_points(q, m, rng):
    return rng.sample(range(1, q), m)


class TestEvaluate:
    def test_constant(self):
        assert evaluate_polynomial(SecretPolynomial(F101, (5,)), 17) == 5

    def test_line(self):
        poly = SecretPolynomial(F101, (2, 3))
        assert evaluate_polynomial(poly, 4) == 14 == naive_eval([2, 3], 4, 101)

    def test_at_zero_is_secret(self, rng):
        for t in range(1, 7):
            poly = random_poly(TOY, t, rng)
            assert evaluate_polynomial(poly, 0) == poly.coefficients[0] == poly.secret

    def test_horner_matches_naive(self, rng):
        for _ in range(200):
            poly = random_poly(TOY, rng.randint(1, 8), rng)
            x = rng.randrange(TOY.q)
            assert evaluate_polynomial(poly, x) == naive_eval(poly.coefficients, x, TOY.q)

    def test_invariants_enforced(self):
        with pytest.raises(InvalidPolynomial):
            SecretPolynomial(F101, ())
        with pytest.raises(InvalidPolynomial):
            SecretPolynomial(F101, (1, 0))
        with pytest.raises(InvalidPolynomial):
            SecretPolynomial(F101, (101,))

    def test_repr_hides_coefficients(self):
        poly = SecretPolynomial(TOY, (4242, 777))
        assert "4242" not in repr(poly) and "777" not in repr(poly)

    def test_bytes_round_trip(self, rng):
        poly = random_poly(TOY, 4, rng)
        assert SecretPolynomial.from_bytes(TOY, poly.to_bytes()) == poly


class TestLagrange:
    def test_single_point(self):
        assert lagrange_coefficient([7], 0, 101) == 1

    def test_two_points(self):
        assert lagrange_coefficient([1, 2], 0, 101) == 2
        assert lagrange_coefficient([1, 2], 1, 101) == 100

    def test_two_point_identity_brute_force(self, rng):
        # 2 f(1) - f(2) = f(0) for every line over F_101
        for a, b in itertools.product(range(101), range(1, 101)):
            f = lambda x: (a + b * x) % 101
            assert (2 * f(1) - f(2)) % 101 == f(0)

    def test_duplicate_point(self):
        with pytest.raises(DuplicateEvaluationPoint):
            lagrange_coefficient([3, 3], 0, 101)
        with pytest.raises(DuplicateEvaluationPoint):
            lagrange_coefficient([3, 104], 0, 101)

    def test_zero_point(self):
        with pytest.raises(ZeroEvaluationPoint):
            lagrange_coefficient([0, 5], 1, 101)

    def test_index_bounds(self):
        with pytest.raises(IndexError):
            lagrange_coefficient([1, 2], 2, 101)

    def test_recovers_secret(self, rng):
        for t in range(1, 7):
            poly = random_poly(TOY, t, rng)
            xs = distinct_points(TOY.q, t, rng)
            total = sum(lagrange_coefficient(xs, i, TOY.q) * poly(x) for i, x in enumerate(xs)) % TOY.q
            assert total == evaluate_polynomial(poly, 0)


class TestInterpolateInExponent:
    def test_single_share_constant_poly(self):
        s = 999
        assert interpolate_in_exponent([(5, s * TOY.generator)], TOY) == s * TOY.generator

    @pytest.mark.parametrize("t", range(1, 7))
    def test_oracle_equivalence(self, t):
        rng = random.Random(t)
        P = TOY.generator
        for m in range(t, t + 5):
            for _ in range(100):
                poly = random_poly(TOY, t, rng)
                xs = distinct_points(TOY.q, m, rng)
                shares = [(x, poly(x)) for x in xs]
                assert interpolate_at_zero(shares, TOY.q) == poly.secret
                pts = [(x, y * P) for x, y in shares]
                assert interpolate_in_exponent(pts, TOY) == poly.secret * P

    def test_below_threshold_never_hits(self):
        rng = random.Random(99)
        P = TOY.generator
        hits = 0
        for _ in range(1000):
            poly = random_poly(TOY, 3, rng)
            xs = distinct_points(TOY.q, 2, rng)
            if interpolate_in_exponent([(x, poly(x) * P) for x in xs], TOY) == poly.secret * P:
                hits += 1
        assert hits == 0

    def test_replaced_point_misses(self):
        rng = random.Random(5)
        P = TOY.generator
        for _ in range(300):
            poly = random_poly(TOY, 3, rng)
            xs = distinct_points(TOY.q, 3, rng)
            pts = [(x, poly(x) * P) for x in xs]
            j = rng.randrange(3)
            bogus = TOY.random_point(rng)
            if bogus == pts[j][1]:
                continue
            pts[j] = (pts[j][0], bogus)
            assert interpolate_in_exponent(pts, TOY) != poly.secret * P

    def test_permutation_invariant(self, rng):
        P = TOY.generator
        poly = random_poly(TOY, 3, rng)
        pts = [(x, poly(x) * P + (i == 0) * P) for i, x in enumerate(distinct_points(TOY.q, 5, rng))]
        ref = interpolate_in_exponent(pts, TOY)
        for perm in itertools.permutations(pts):
            assert interpolate_in_exponent(list(perm), TOY) == ref

    def test_errors_propagate(self):
        P = TOY.generator
        with pytest.raises(DuplicateEvaluationPoint):
            interpolate_in_exponent([(1, P), (1, P)], TOY)
        with pytest.raises(ZeroEvaluationPoint):
            interpolate_in_exponent([(0, P)], TOY)


class TestHash:
    def test_deterministic(self):
        assert hash_to_digest(b"abc") == hash_to_digest(b"abc")
        assert len(hash_to_digest(b"")) == 32

    def test_bit_flip(self, rng):
        for _ in range(100):
            data = bytearray(rng.randbytes(rng.randint(1, 64)))
            before = hash_to_digest(bytes(data))
            i = rng.randrange(len(data) * 8)
            data[i // 8] ^= 1 << (i % 8)
            assert hash_to_digest(bytes(data)) != before

    def test_hash_to_scalar_range(self):
        for i in range(500):
            k = hash_to_scalar(TOY, str(i).encode())
            assert 1 <= k < TOY.q
        assert hash_to_scalar(TOY, b"x") == hash_to_scalar(TOY, b"x")
