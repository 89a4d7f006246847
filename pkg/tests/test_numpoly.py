import math
import random
from fractions import Fraction

import pytest

from diffdim import NumericalPolynomial, Ordering, cmp
from diffdim.numpoly import binomial_text, binomial_value, standard_text


def test_eval_sums_binomials():
    assert NumericalPolynomial([0, 1]).eval(5) == 6
    assert [NumericalPolynomial([-1, 2]).eval(l) for l in range(4)] == [1, 3, 5, 7]
    assert NumericalPolynomial([0, 0, 1]).eval(4) == math.comb(6, 2)


def test_eval_rejects_negative_argument():
    with pytest.raises(ValueError):
        NumericalPolynomial([1]).eval(-1)


def test_coefficients_must_be_integers():
    with pytest.raises(TypeError):
        NumericalPolynomial([Fraction(1, 2)])


def test_degree_conventions():
    assert NumericalPolynomial([0]).degree == -1
    assert NumericalPolynomial([0, 0, 0]).degree == -1
    assert NumericalPolynomial([7]).degree == 0
    assert NumericalPolynomial([0, 0, 3]).degree == 2


def test_add_sub_pad_to_common_length():
    p = NumericalPolynomial([1, 2])
    q = NumericalPolynomial([0, 0, 5])
    assert (p + q).coeffs == (1, 2, 5)
    assert (q - p).coeffs == (-1, -2, 5)
    assert p - q == NumericalPolynomial([1, 2, -5])


def test_equality_ignores_trailing_zeros():
    assert NumericalPolynomial([0, 1]) == NumericalPolynomial([0, 1, 0, 0])
    assert hash(NumericalPolynomial([0, 1])) == hash(NumericalPolynomial([0, 1, 0]))


def test_cmp_decided_by_highest_differing_coefficient():
    assert cmp(NumericalPolynomial([5, 1]), NumericalPolynomial([0, 2])) is Ordering.LESS
    assert cmp(NumericalPolynomial([0, 2]), NumericalPolynomial([5, 1])) is Ordering.GREATER
    assert cmp(NumericalPolynomial([3]), NumericalPolynomial([3, 0])) is Ordering.EQUAL
    assert cmp(NumericalPolynomial([9, 9, 1]), NumericalPolynomial([0, 0, 2])) is Ordering.LESS


def _random_poly(rng, n_max):
    return NumericalPolynomial([rng.randint(-10, 10) for _ in range(n_max + 1)])


def test_cmp_matches_eventual_pointwise_comparison():
    rng = random.Random(20260815)
    for _ in range(1000):
        n_max = rng.randint(0, 4)
        p, q = _random_poly(rng, n_max), _random_poly(rng, n_max)
        verdict = cmp(p, q)
        biggest = max(
            [1] + [abs(c) for c in p.coeffs] + [abs(c) for c in q.coeffs]
        )
        start = 10 * (n_max + 1) * biggest
        for point in range(start, start + 21):
            a, b = p.eval(point), q.eval(point)
            if verdict is Ordering.LESS:
                assert a < b
            elif verdict is Ordering.GREATER:
                assert a > b
            else:
                assert a == b


def test_cmp_is_a_total_order_on_sampled_triples():
    rng = random.Random(7)
    for _ in range(300):
        p, q, r = (_random_poly(rng, rng.randint(0, 3)) for _ in range(3))
        assert (cmp(p, q) is Ordering.EQUAL) == (p == q)
        flipped = {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS,
                   Ordering.EQUAL: Ordering.EQUAL}
        assert cmp(q, p) is flipped[cmp(p, q)]
        if cmp(p, q) is Ordering.LESS and cmp(q, r) is Ordering.LESS:
            assert cmp(p, r) is Ordering.LESS


def test_standard_basis_known_expansions():
    assert NumericalPolynomial([-1, 2]).to_standard_basis() == (Fraction(1), Fraction(2))
    assert NumericalPolynomial([0, 1]).to_standard_basis() == (Fraction(1), Fraction(1))
    # C(l+2,2) = 1 + 3l/2 + l^2/2
    assert NumericalPolynomial([0, 0, 1]).to_standard_basis() == (
        Fraction(1),
        Fraction(3, 2),
        Fraction(1, 2),
    )


def test_standard_basis_agrees_with_eval_everywhere():
    rng = random.Random(99)
    for _ in range(200):
        p = _random_poly(rng, rng.randint(0, 4))
        coeffs = p.to_standard_basis()
        for point in range(8):
            assert sum(c * point**k for k, c in enumerate(coeffs)) == p.eval(point)


def test_from_values_round_trips_eval():
    rng = random.Random(2)
    for _ in range(200):
        p = _random_poly(rng, rng.randint(0, 5))
        values = [p.eval(point) for point in range(p.n_max + 1)]
        assert NumericalPolynomial.from_values(values) == p


def test_binomial_value_extends_comb_to_negative_arguments():
    for k in range(5):
        for x in range(-9, 9):
            expected = Fraction(1)
            for step in range(1, k + 1):
                expected *= Fraction(x + step, step)
            assert binomial_value(x, k) == expected


def test_text_rendering():
    p = NumericalPolynomial([-1, 2])
    assert standard_text(p) == "2ℓ + 1"
    assert binomial_text(p) == "2·C(ℓ+1,1) − 1"
    assert standard_text(NumericalPolynomial([0])) == "0"
    assert binomial_text(NumericalPolynomial([0, 0])) == "0"
    assert standard_text(NumericalPolynomial([2, 0])) == "2"
    assert binomial_text(NumericalPolynomial([0, 1, 0])) == "C(ℓ+1,1)"
    assert standard_text(NumericalPolynomial([0, 0, 1])) == "(1/2)ℓ^2 + (3/2)ℓ + 1"


def test_json_dict_shape():
    payload = NumericalPolynomial([-1, 2, 0]).to_json_dict()
    assert payload == {
        "binomial_coeffs": [-1, 2, 0],
        "standard_coeffs": ["1", "2", "0"],
        "degree": 1,
    }
