from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexperm import bitlex
from lexperm.bitlex import (
    EQUAL,
    LESS,
    PrioritizedBitString,
    PriorityOrder,
    compare,
    complement,
    cost_integer,
    identity_order,
    is_local_min,
    sort_key,
)
from lexperm.errors import DegreeMismatch, LengthMismatch, WidthExceeded
from lexperm.perm import GeneratorSet, identity, inverse, parse_cycles, permute_string, random_permutation

bit_pairs = st.integers(1, 16).flatmap(
    lambda n: st.tuples(
        st.text(alphabet="01", min_size=n, max_size=n),
        st.text(alphabet="01", min_size=n, max_size=n),
        st.permutations(list(range(1, n + 1))),
    )
)


def test_compare_reflexive():
    order = identity_order(4)
    assert compare("0110", "0110", order) == EQUAL


def test_compare_identity_order():
    assert compare("01", "10", identity_order(2)) == LESS


def test_compare_custom_order_scans_position_two_first():
    order = PriorityOrder((2, 1))
    assert compare("10", "01", order) == LESS


def test_compare_length_mismatch():
    with pytest.raises(LengthMismatch):
        compare("01", "011")


def test_cost_integer_examples():
    assert cost_integer("000000") == 0
    assert cost_integer("001001") == 9
    with pytest.raises(WidthExceeded):
        cost_integer("0" * 65)
    assert cost_integer("0" * 65, max_width=65) == 0


def test_cost_matches_compare_on_samples():
    rng = Random(3)
    for _ in range(2000):
        n = rng.randint(1, 20)
        x = "".join(rng.choice("01") for _ in range(n))
        y = "".join(rng.choice("01") for _ in range(n))
        order = PriorityOrder(random_permutation(rng, n).image)
        cx, cy = cost_integer(x, order), cost_integer(y, order)
        assert compare(x, y, order) == (cx > cy) - (cx < cy)


@given(bit_pairs)
@settings(max_examples=200)
def test_compare_antisymmetric(data):
    x, y, ranks = data
    order = PriorityOrder(tuple(ranks))
    assert compare(x, y, order) == -compare(y, x, order)
    if compare(x, y, order) == EQUAL:
        assert x == y


@given(st.integers(1, 10).flatmap(
    lambda n: st.tuples(
        st.lists(st.text(alphabet="01", min_size=n, max_size=n), min_size=3, max_size=3),
        st.permutations(list(range(1, n + 1))),
    )
))
@settings(max_examples=200)
def test_compare_transitive(data):
    (x, y, z), ranks = data
    order = PriorityOrder(tuple(ranks))
    trio = sorted([x, y, z], key=lambda s: sort_key(s, order))
    assert compare(trio[0], trio[1], order) in (LESS, EQUAL)
    assert compare(trio[1], trio[2], order) in (LESS, EQUAL)
    assert compare(trio[0], trio[2], order) in (LESS, EQUAL)


def test_joint_permutation_leaves_compare_invariant():
    rng = Random(9)
    for _ in range(300):
        n = rng.randint(1, 12)
        x = "".join(rng.choice("01") for _ in range(n))
        y = "".join(rng.choice("01") for _ in range(n))
        order = PriorityOrder(random_permutation(rng, n).image)
        p = random_permutation(rng, n)
        moved = PriorityOrder(tuple(inverse(p)(r) for r in order.rank))
        assert compare(x, y, order) == compare(
            permute_string(x, p), permute_string(y, p), moved
        )


def test_complement():
    assert complement("0110") == "1001"


def test_prioritized_bitstring_validation():
    with pytest.raises(LengthMismatch):
        PrioritizedBitString("01", identity_order(3))
    with pytest.raises(ValueError):
        PrioritizedBitString("0a", identity_order(2))
    s = PrioritizedBitString("01", identity_order(2))
    assert s.compare_to("10") == LESS


def test_is_local_min_constant_string():
    p = parse_cycles("(1 2 5)(3 4)(7 8)", 8)
    gens = GeneratorSet(8, ("p",), (p,))
    assert is_local_min("00000000", None, gens, identity(8))
    assert is_local_min("00000000", None, gens, p)


def test_is_local_min_figure_instance():
    p = parse_cycles("(1 2 5)(3 4)(7 8)", 8)
    gens = GeneratorSet(8, ("p",), (p,))
    x = "00100001"
    assert is_local_min(x, None, gens, p)
    assert not is_local_min(x, None, gens, identity(8))


def test_is_local_min_degree_mismatch():
    gens = GeneratorSet(3, ("p",), (parse_cycles("(1 2)", 3),))
    with pytest.raises(DegreeMismatch):
        is_local_min("01", None, gens, identity(3))


def test_order_parsing_round_trip():
    order = PriorityOrder((3, 1, 2))
    assert bitlex.parse_order(bitlex.format_order(order), 3) == order
    with pytest.raises(LengthMismatch):
        bitlex.parse_order("1 2", 3)
