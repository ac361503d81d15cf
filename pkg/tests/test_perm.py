import itertools

import pytest
from hypothesis import given, strategies as st

from prym_forge.perm import (
    Permutation,
    PermutationError,
    commutator,
    compose,
    compose_all,
    cycle_type,
    orbits,
    parse_cycles,
)


def perms(degree):
    return st.permutations(range(degree)).map(Permutation)


def test_involution_squared():
    p = Permutation.from_cycles([(0, 1)], 2)
    assert compose(p, p).is_identity()


def test_identity_law():
    q = Permutation.parse("(0 2 1)(3 4)", 5)
    assert compose(Permutation.identity(5), q) == q
    assert compose(q, Permutation.identity(5)) == q


def test_left_to_right_table():
    # p * q applies p first: (p*q)(x) = q(p(x)), checked on all of S_3
    elements = [Permutation(t) for t in itertools.permutations(range(3))]
    for p, q in itertools.product(elements, repeat=2):
        r = p * q
        assert all(r(x) == q(p(x)) for x in range(3))
    p = Permutation.parse("(0 1 2)", 3)
    q = Permutation.parse("(0 1)", 3)
    assert (p * q).images == (0, 2, 1)


def test_cycle_types():
    assert cycle_type(Permutation.identity(4)) == (1, 1, 1, 1)
    assert cycle_type(Permutation.parse("(0 1)", 4)) == (2, 1, 1)


@given(perms(8))
def test_cycle_type_matches_orbits(p):
    assert sum(cycle_type(p)) == 8
    assert sorted(cycle_type(p), reverse=True) == sorted((len(o) for o in orbits([p], 8)), reverse=True)


def test_orbits():
    assert orbits([], 3) == [[0], [1], [2]]
    gens = [Permutation.parse("(0 1)", 3), Permutation.parse("(1 2)", 3)]
    assert orbits(gens) == [[0, 1, 2]]


@given(perms(6), perms(6), perms(6))
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms(7))
def test_inverse(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(perms(5), perms(5))
def test_commutator_definition(a, b):
    assert commutator(a, b) == compose_all([a, b, a.inverse(), b.inverse()], 5)


@given(perms(9))
def test_string_round_trip(p):
    assert Permutation.parse(str(p), 9) == p


def test_identity_prints_empty_cycle():
    assert str(Permutation.identity(3)) == "()"
    assert Permutation.parse("()", 3).is_identity()


def test_parse_cycles_and_errors():
    assert parse_cycles("(0 1)(2 3)", 4) == [[0, 1], [2, 3]]
    with pytest.raises(PermutationError) as err:
        Permutation.parse("(0 1)(1 2)", 3)
    assert err.value.column >= 1
    with pytest.raises(PermutationError):
        Permutation.parse("(0 7)", 4)
    with pytest.raises(PermutationError):
        Permutation.parse("(0 1", 4)
