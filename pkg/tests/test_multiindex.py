"""
Multi-index arithmetic and enumeration
"""
import math

import pytest
from hypothesis import given, settings

from jetvar.lib.exceptions import DimensionMismatch
from jetvar.lib.multiindex import MultiIndex, add, enumerate_multiindices, multinomial, multiindices_of_order

from strategies import multiindex_tuples


def test_enumeration_order():
    assert [index.counts for index in enumerate_multiindices(2, 2)] == [
        (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


@pytest.mark.parametrize("dimension, order", [(1, 0), (1, 4), (2, 3), (3, 2), (4, 4), (8, 1)])
def test_enumeration_count(dimension, order):
    indices = enumerate_multiindices(dimension, order)
    assert len(indices) == math.comb(dimension + order, dimension)
    assert len(set(indices)) == len(indices)
    assert indices == enumerate_multiindices(dimension, order)


def test_multiindices_of_order():
    assert [index.counts for index in multiindices_of_order(3, 1)] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.mark.parametrize("m, a, expected", [
    ((0, 0), (0, 0), 1),
    ((1, 0), (1, 0), 2),
    ((1, 1), (0, 1), 2),
    ((2, 1), (1, 0), 3),
    ((0, 2, 1), (1, 1, 1), 6),
])
def test_multinomial(m, a, expected):
    assert multinomial(MultiIndex(m), MultiIndex(a)) == expected


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        add(MultiIndex((1, 0)), MultiIndex((1, 0, 0)))


def test_dimension_limits():
    with pytest.raises(DimensionMismatch):
        MultiIndex((0,) * 9)
    with pytest.raises(DimensionMismatch):
        MultiIndex(())
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_render_and_parse():
    alpha = MultiIndex.parse("x1^2 x3", 3)
    assert alpha.counts == (2, 0, 1)
    assert alpha.render() == "x1^2 x3"
    assert str(MultiIndex.zero(3)) == "0"
    assert MultiIndex.parse("", 2) == MultiIndex.zero(2)
    with pytest.raises(DimensionMismatch):
        MultiIndex.parse("x4", 3)


def test_unit_and_lowering():
    alpha = MultiIndex((1, 2))
    assert alpha.raised(1) == MultiIndex((2, 2))
    assert alpha.lowered(2) == MultiIndex((1, 1))
    assert MultiIndex.unit(3, 2).counts == (0, 1, 0)
    with pytest.raises(ValueError):
        MultiIndex((0, 1)).lowered(1)


def test_decompositions_and_sub_indices():
    alpha = MultiIndex((1, 1))
    assert alpha.decompositions() == [(MultiIndex((0, 1)), 1), (MultiIndex((1, 0)), 2)]
    assert [beta.counts for beta in alpha.sub_indices()] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert alpha.factorial == 1
    assert MultiIndex((3, 2)).factorial == 12


@given(multiindex_tuples(size=2))
@settings(max_examples=200, deadline=None)
def test_add_commutes(pair):
    a, b = pair
    assert add(a, b) == add(b, a)
    assert (a + b).order == a.order + b.order


@given(multiindex_tuples(size=3))
@settings(max_examples=200, deadline=None)
def test_add_associates(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)


@given(multiindex_tuples(size=2))
@settings(max_examples=200, deadline=None)
def test_multinomial_symmetric(pair):
    a, b = pair
    assert multinomial(a, b) == multinomial(b, a)
    assert (a + b).contains(a) and (a + b) - a == b
