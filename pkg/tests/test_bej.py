import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_word
from rmtorus.bej import (
    BejPoint,
    BejSpec,
    PellConic,
    conic_contains,
    enumerate_points,
    fiber_census,
    membership,
    point,
    project,
)
from rmtorus.cf import QuadCoeffs, matrix_word
from rmtorus.errors import LengthMismatch, NonMemberPresent

SQRT2_Q = QuadCoeffs(1, 0, -2)
GOLDEN_Q = QuadCoeffs(1, -1, -1)


def oracle_member(coeffs, pre, per):
    """Fixed quadratic of the naive product is a nonzero multiple of (A, B, C)."""
    (e11, e12), (e21, e22) = naive_word(pre, per)
    fixed = (e21, e22 - e11, -e12)
    target = (coeffs.A, coeffs.B, coeffs.C)
    if e21 == 0:
        return False
    return all(fixed[i] * target[j] == fixed[j] * target[i] for i in range(3) for j in range(3))


class TestConic:
    def test_examples(self):
        assert conic_contains(PellConic(1, 0, -2, 1), 1, 1)
        assert not conic_contains(PellConic(1, 0, -2, 1), 0, 1)
        assert conic_contains(PellConic(1, -1, -1, 1), 1, 0)

    def test_parity(self):
        assert PellConic.of(SQRT2_Q, 3).k_parity == 1
        assert PellConic.of(SQRT2_Q, 2) == PellConic(1, 0, -2, 0)
        # k even: (u, v) = (2, 3) from [1; 2, 2] gives -8 + 9 = 1
        assert conic_contains(PellConic(1, 0, -2, 0), 2, 3)


class TestMembership:
    def test_examples(self):
        assert membership(BejSpec(SQRT2_Q, 1, 1), (1, 2))
        assert not membership(BejSpec(SQRT2_Q, 1, 1), (2, -2))
        assert membership(BejSpec(SQRT2_Q, 2, 1), (1, 2, 2))

    def test_non_member_word(self):
        e = matrix_word(BejSpec(SQRT2_Q, 1, 1).split((2, -2)))
        assert e.rows() == ((2, -7), (1, -4))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            membership(BejSpec(SQRT2_Q, 1, 1), (1, 2, 3))

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            BejSpec(SQRT2_Q, 0, 0)

    @given(
        st.sampled_from([SQRT2_Q, GOLDEN_Q, QuadCoeffs(1, 0, -3), QuadCoeffs(2, -2, -1)]),
        st.lists(st.integers(-4, 4), max_size=2),
        st.lists(st.integers(-4, 4), min_size=1, max_size=3),
    )
    @settings(deadline=None)
    def test_against_oracle(self, coeffs, pre, per):
        spec = BejSpec(coeffs, len(pre), len(per))
        assert membership(spec, pre + per) == oracle_member(coeffs, pre, per)


class TestProject:
    def test_examples(self):
        assert project(BejSpec(SQRT2_Q, 1, 1), (1, 2)) == (1, 1)
        assert project(BejSpec(GOLDEN_Q, 0, 1), (1,)) == (1, 0)

    @given(
        st.sampled_from([SQRT2_Q, GOLDEN_Q, QuadCoeffs(1, 0, -3), QuadCoeffs(1, 0, -7)]),
        st.integers(0, 2),
        st.integers(1, 3),
        st.data(),
    )
    @settings(deadline=None)
    def test_member_projection_on_conic(self, coeffs, n, k, data):
        spec = BejSpec(coeffs, n, k)
        entries = data.draw(st.lists(st.integers(-5, 5), min_size=n + k, max_size=n + k))
        p = point(spec, entries)
        if p.member:
            assert conic_contains(spec.conic, *p.projection)


class TestEnumerate:
    def test_bound_two(self):
        spec = BejSpec(SQRT2_Q, 1, 1)
        points = enumerate_points(spec, 2)
        entries = [p.entries for p in points]
        assert (1, 2) in entries
        assert (2, -2) not in entries
        assert next(p for p in points if p.entries == (1, 2)).projection == (1, 1)

    def test_matches_exhaustive_oracle(self):
        spec = BejSpec(SQRT2_Q, 1, 2)
        bound = 3
        expected = [
            e
            for e in itertools.product(range(-bound, bound + 1), repeat=3)
            if oracle_member(SQRT2_Q, e[:1], e[1:])
        ]
        assert [p.entries for p in enumerate_points(spec, bound)] == expected

    def test_all_members_on_conic(self):
        spec = BejSpec(SQRT2_Q, 1, 1)
        points = enumerate_points(spec, 12)
        assert points and all(p.member for p in points)
        assert all(conic_contains(spec.conic, *p.projection) for p in points)

    def test_workers_match_sequential(self):
        spec = BejSpec(GOLDEN_Q, 1, 2)
        assert enumerate_points(spec, 4, workers=2) == enumerate_points(spec, 4)

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            enumerate_points(BejSpec(SQRT2_Q, 1, 1), 0)


class TestCensus:
    def test_bound_two(self):
        census = fiber_census(enumerate_points(BejSpec(SQRT2_Q, 1, 1), 2))
        assert census.get((1, 1), 0) >= 1

    def test_empty(self):
        assert fiber_census([]) == {}

    def test_rejects_non_member(self):
        with pytest.raises(NonMemberPresent):
            fiber_census([BejPoint((2, -2), False, (1, -4))])

    def test_partition(self):
        points = enumerate_points(BejSpec(SQRT2_Q, 2, 1), 4)
        census = fiber_census(points)
        assert sum(census.values()) == len(points)
        assert list(census) == sorted(census)
