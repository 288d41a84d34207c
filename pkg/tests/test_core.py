from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import local_graph_oracle, maps, sgn
from mvbool import (
    MultiSpace,
    MultivaluedMap,
    asymptotic,
    component_step,
    example,
    local_graph,
    stepwise,
)
from mvbool.errors import BudgetExceeded, StateOutOfRange

levels_st = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


# -- spaces and ranks ----------------------------------------------------------------


@pytest.mark.parametrize(
    "levels, x, r",
    [((3, 1), (0, 0), 0), ((3, 1), (2, 1), 5), ((2, 2), (1, 2), 5)],
)
def test_rank_examples(levels, x, r):
    space = MultiSpace(levels)
    assert space.rank(x) == r
    assert space.unrank(r) == x


@given(levels_st)
def test_rank_unrank_inverse(levels):
    space = MultiSpace(levels)
    states = list(space.states())
    assert len(states) == space.size
    assert [space.rank(x) for x in states] == list(range(space.size))
    assert all(space.unrank(space.rank(x)) == x for x in states)
    # component 1 is most significant
    assert states == sorted(states)
    assert np.array_equal(space.coords, np.array(states))


def test_space_validation():
    with pytest.raises(ValueError):
        MultiSpace((0, 2))
    with pytest.raises(ValueError):
        MultiSpace(())
    with pytest.raises(BudgetExceeded):
        MultiSpace((1,) * 25)
    MultiSpace((1,) * 25, budget=2**25)
    space = MultiSpace((2, 1))
    with pytest.raises(StateOutOfRange):
        space.rank((3, 0))
    with pytest.raises(StateOutOfRange):
        space.rank((0,))
    with pytest.raises(StateOutOfRange):
        space.unrank(6)
    assert space.boolean_dim == 3
    assert space.index_pairs == ((1, 1), (1, 2), (2, 1))
    assert list(space.block(2)) == [2]


def test_format_state():
    assert MultiSpace((2, 1)).format_state((2, 0)) == "(2,0)"
    assert MultiSpace.boolean(3).format_state((1, 0, 1)) == "101"


def test_from_mapping_requires_every_state():
    space = MultiSpace((1,))
    with pytest.raises(ValueError):
        MultivaluedMap.from_mapping(space, {(0,): (1,)})
    f = MultivaluedMap.from_mapping(space, {(0,): (1,)}, default=(0,))
    assert f((1,)) == (0,)


def test_table_range_checked():
    with pytest.raises(StateOutOfRange):
        MultivaluedMap(MultiSpace((1,)), [0, 2])
    with pytest.raises(ValueError):
        MultivaluedMap(MultiSpace((1,)), [0])


# -- stepwise and asymptotic -------------------------------------------------------


def test_stepwise_background_example():
    f = example("sec2_example").map
    g = stepwise(f)
    assert f((0, 1)) == (2, 2)
    assert g((0, 1)) == (1, 2)
    assert g((0, 0)) == (1, 1)


def test_stepwise_identity():
    space = MultiSpace((2, 3))
    ident = MultivaluedMap.identity(space)
    assert stepwise(ident) == ident
    assert asymptotic(ident) == ident


def test_asymptotic_examples():
    tmx = example("two_minus_x").map
    assert asymptotic(tmx) == tmx
    fig5 = example("fig5_asymptotic").map
    assert asymptotic(fig5) == fig5
    one = MultivaluedMap.constant(MultiSpace((2,)), (1,))
    assert [asymptotic(one)((x,)) for x in range(3)] == [(2,), (1,), (0,)]


@given(maps())
def test_stepwise_and_asymptotic_oracle(f):
    space = f.space
    for x in space.states():
        fx = f(x)
        step = tuple(a + sgn(b - a) for a, b in zip(x, fx))
        sat = tuple(m if b > a else (0 if b < a else a) for a, b, m in zip(x, fx, space.levels))
        assert stepwise(f)(x) == step
        assert asymptotic(f)(x) == sat


@given(maps())
def test_stepwise_idempotent_and_characterised(f):
    g = stepwise(f)
    assert stepwise(g) == g
    small = all(abs(b - a) <= 1 for x in f.space.states() for a, b in zip(x, f(x)))
    assert f.is_stepwise() == small
    # both normal forms depend only on the direction of f
    assert stepwise(asymptotic(f)) == g
    assert asymptotic(g) == asymptotic(f)


@pytest.mark.parametrize(
    "x, i, expected",
    [((1, 0), 2, (1, 1)), ((1, 1), 1, (2, 1)), ((2, 1), 1, (2, 1)), ((2, 1), 2, (2, 1))],
)
def test_component_step_fig1(x, i, expected):
    assert component_step(example("fig1").map, x, i) == expected


def test_component_step_bad_component():
    with pytest.raises(StateOutOfRange):
        component_step(example("fig1").map, (0, 0), 3)


@settings(max_examples=60)
@given(maps())
def test_stepwise_graph_edges_survive_in_f(f):
    # non-loop edges of the stepwise local graph are edges of the local graph of f
    g = stepwise(f)
    for x in f.space.states():
        gs = local_graph(g, x)
        gf = local_graph(f, x)
        for j, i, s in gs.edges:
            if i != j:
                assert (j, i, s) in gf.edges


@settings(max_examples=60)
@given(maps())
def test_local_graph_matches_definition(f):
    levels = f.space.levels
    for x in product(*(range(m + 1) for m in levels)):
        assert set(local_graph(f, x).edges) == local_graph_oracle(levels, f, x)
