import random
from fractions import Fraction

import pytest

from diffdim import (
    ConstantPolynomialError,
    DiffPoly,
    Ordering,
    Ranking,
    RingSpec,
    make_derivative,
    rank_cmp,
)
from diffdim.diffpoly import iter_indices, poly_text

from corpus import dvar, plain_ranking, plain_ring, random_index


def test_ring_spec_rejects_bad_names():
    with pytest.raises(ValueError):
        RingSpec(("t", "t"), ("u",))
    with pytest.raises(ValueError):
        RingSpec(("t",), ())


def test_derivatives_are_interned():
    assert make_derivative(0, (1, 2)) is make_derivative(0, [1, 2])
    with pytest.raises(ValueError):
        make_derivative(0, (-1,))


def test_arithmetic_identities():
    u = dvar(0, (0, 0))
    ux = dvar(0, (1, 0))
    p = u * u - 2 * ux + Fraction(3, 4)
    q = ux * u + 1
    assert p + q - q == p
    assert (p + q) * (p - q) == p * p - q * q
    assert (p + q) ** 2 == p * p + 2 * p * q + q * q
    assert 0 * p == DiffPoly.zero()
    assert p - p == DiffPoly.zero()
    assert not DiffPoly.zero()


def test_constant_handling():
    c = DiffPoly.constant(Fraction(3, 4))
    assert c.is_constant() and c.constant_value() == Fraction(3, 4)
    assert DiffPoly.zero().is_constant()
    u = dvar(0, (0,))
    assert not u.is_constant()
    with pytest.raises(ValueError):
        u.constant_value()


def test_derive_leibniz_on_squares():
    u = dvar(0, (0, 0))
    expected = 2 * u * dvar(0, (0, 1))
    assert (u * u).derive(1) == expected
    assert DiffPoly.constant(5).derive(0) == DiffPoly.zero()


def test_derive_axis_bounds():
    u = dvar(0, (0, 0))
    with pytest.raises(IndexError):
        u.derive(2)


def _random_poly(rng, n, m, max_order=2, terms=3):
    out = DiffPoly.zero()
    for _ in range(rng.randint(1, terms)):
        mono = DiffPoly.constant(rng.randint(-3, 3))
        for _ in range(rng.randint(0, 2)):
            mono = mono * dvar(rng.randrange(m), random_index(rng, n, max_order))
        out = out + mono
    return out


def test_derive_satisfies_leibniz_rule():
    rng = random.Random(11)
    for _ in range(60):
        n, m = rng.randint(1, 3), rng.randint(1, 2)
        p = _random_poly(rng, n, m)
        q = _random_poly(rng, n, m)
        axis = rng.randrange(n)
        assert (p * q).derive(axis) == p.derive(axis) * q + p * q.derive(axis)
        assert (p + q).derive(axis) == p.derive(axis) + q.derive(axis)


def test_derivations_commute():
    rng = random.Random(13)
    for _ in range(40):
        n, m = rng.randint(2, 3), rng.randint(1, 2)
        p = _random_poly(rng, n, m)
        a, b = rng.randrange(n), rng.randrange(n)
        assert p.derive(a).derive(b) == p.derive(b).derive(a)


def test_derive_multi_is_order_independent():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 3)
        p = _random_poly(rng, n, 2)
        mu = random_index(rng, n, 3)
        sequence = [axis for axis, times in enumerate(mu) for _ in range(times)]
        rng.shuffle(sequence)
        out = p
        for axis in sequence:
            out = out.derive(axis)
        assert p.derive_multi(mu) == out


def test_orderly_ranking_examples():
    ranking = plain_ranking(2, 2)
    u10 = make_derivative(0, (1, 0))
    v10 = make_derivative(1, (1, 0))
    v00 = make_derivative(1, (0, 0))
    assert rank_cmp(u10, v10, ranking) is Ordering.LESS
    assert rank_cmp(v00, u10, ranking) is Ordering.LESS
    assert rank_cmp(u10, u10, ranking) is Ordering.EQUAL
    # equal order, one indeterminate: first axis dominates
    mu = [make_derivative(0, idx) for idx in [(0, 2), (1, 1), (2, 0)]]
    assert rank_cmp(mu[0], mu[1], ranking) is Ordering.LESS
    assert rank_cmp(mu[1], mu[2], ranking) is Ordering.LESS


def test_tiebreak_order_is_respected():
    ring = plain_ring(1, 2)
    swapped = Ranking.orderly(ring, tiebreak=(1, 0))
    u = make_derivative(0, (1,))
    v = make_derivative(1, (1,))
    assert rank_cmp(v, u, swapped) is Ordering.LESS
    with pytest.raises(ValueError):
        Ranking.orderly(ring, tiebreak=(0, 0))


def test_ranking_axioms_exhaustively_small():
    ranking = plain_ranking(2, 2)
    derivs = [
        make_derivative(j, mu) for j in range(2) for mu in iter_indices(2, 3)
    ]
    from diffdim.diffpoly import shift_derivative

    for d in derivs:
        for axis in range(2):
            assert rank_cmp(d, shift_derivative(d, axis), ranking) is Ordering.LESS
    for d1 in derivs:
        for d2 in derivs:
            if rank_cmp(d1, d2, ranking) is Ordering.LESS:
                assert d1.order <= d2.order  # orderly
                for axis in range(2):
                    assert (
                        rank_cmp(shift_derivative(d1, axis), shift_derivative(d2, axis), ranking)
                        is Ordering.LESS
                    )


def test_leader_initial_separant():
    ranking = plain_ranking(1, 2)
    u1 = dvar(0, (1,))
    v0 = dvar(1, (0,))
    p = u1 * u1 - v0
    leader = ranking.leader(p)
    assert leader == make_derivative(0, (1,))
    assert ranking.initial(p) == DiffPoly.constant(1)
    assert ranking.separant(p) == 2 * u1
    with pytest.raises(ConstantPolynomialError):
        ranking.leader(DiffPoly.constant(2))


def test_initial_excludes_lower_terms():
    ranking = plain_ranking(1, 1)
    u0 = dvar(0, (0,))
    u1 = dvar(0, (1,))
    p = (u0 + 1) * u1 ** 2 + u0 * u1 + 3
    assert ranking.initial(p) == u0 + 1
    assert ranking.separant(p) == 2 * (u0 + 1) * u1 + u0


def test_univariate_reconstruction():
    rng = random.Random(5)
    ranking = plain_ranking(2, 2)
    for _ in range(50):
        p = _random_poly(rng, 2, 2)
        if p.is_constant():
            continue
        x = ranking.leader(p)
        xpoly = DiffPoly.variable(x)
        rebuilt = DiffPoly.zero()
        for e, coeff in p.as_univariate(x).items():
            assert coeff.degree_in(x) == 0
            rebuilt = rebuilt + coeff * xpoly**e
        assert rebuilt == p


def test_poly_text_canonical_form():
    u = dvar(0, (1, 0))
    v = dvar(1, (0, 1))
    assert poly_text(u ** 2 - 2 * v + Fraction(3, 4), ("u", "v")) == (
        "-2*v[0,1] + u[1,0]^2 + 3/4"
    )
    assert poly_text(DiffPoly.zero()) == "0"
    assert poly_text(-u, ("u", "v")) == "-u[1,0]"
    assert poly_text(u * v, ("u", "v")) == "u[1,0]*v[0,1]"


def test_iter_indices_counts():
    import math

    for n in range(1, 4):
        for bound in range(5):
            got = list(iter_indices(n, bound))
            assert len(got) == math.comb(bound + n, n)
            assert len(set(got)) == len(got)
            assert all(len(mu) == n and sum(mu) <= bound for mu in got)
