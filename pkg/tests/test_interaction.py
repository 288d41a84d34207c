import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bool_labels, cycles_oracle, local_graph_oracle, maps, sgn
from mvbool import (
    MultiSpace,
    MultivaluedMap,
    SignedDigraph,
    admissible_states,
    binarise,
    enumerate_cycles,
    example,
    extend_via_psi,
    global_graph,
    has_cycle,
    local_graph,
    nonusual_graph,
    partial_conversion,
    richard_graph,
    scan_local_cycles,
)
from mvbool.core import IndexPair as P
from mvbool.errors import CycleBudgetExceeded, IdenticalStates, StateOutOfRange
from mvbool.interaction import cycle_signs, local_graphs, nonusual_graphs


def bits(s):
    return tuple(int(c) for c in s)


# -- local and global graphs ------------------------------------------------------------


def test_local_graph_richard_11():
    g = local_graph(example("richard_stepwise").map, (1, 1))
    assert g.edges == {(1, 1, 1), (1, 2, -1), (2, 2, 1)}


def test_background_example_global_edges():
    g = global_graph(example("sec2_example").map)
    assert (1, 1, -1) in g.edges
    assert (2, 1, 1) in g.edges


def test_constant_map_has_empty_graphs():
    f = MultivaluedMap.constant(MultiSpace((2, 1)), (1, 0))
    assert all(not g.edges for g in local_graphs(f).values())
    assert scan_local_cycles(f) == []


def test_global_graph_examples():
    assert global_graph(example("fig1").map).edges == {(1, 1, 1), (1, 2, 1), (2, 1, 1)}
    from mvbool import stepwise

    assert global_graph(stepwise(example("sec2_example").map)).edges == {(2, 2, 1)}
    ident = MultivaluedMap.identity(MultiSpace((1, 1, 1)))
    assert global_graph(ident).edges == {(j, j, 1) for j in (1, 2, 3)}


def test_local_graph_out_of_range():
    with pytest.raises(StateOutOfRange):
        local_graph(example("fig1").map, (3, 0))


@settings(max_examples=80)
@given(maps(max_dim=7))
def test_boolean_local_graphs_match_definition(f):
    levels = f.space.levels
    labels = bool_labels(levels)
    blevels = (1,) * f.space.boolean_dim
    for F in (extend_via_psi(f), binarise(f)):
        for y in F.space.states():
            assert set(local_graph(F, y).edges) == local_graph_oracle(blevels, F, y, labels)
    fb = partial_conversion(f)
    adm = set(admissible_states(f.space))
    for y in adm:
        assert set(local_graph(fb, y).edges) == local_graph_oracle(blevels, fb, y, labels, adm)


@given(maps())
def test_global_graph_is_union_of_local_graphs(f):
    union = set()
    for g in local_graphs(f).values():
        union |= g.edges
    assert global_graph(f).edges == union


def test_opposite_signs_kept_as_parallel_edges():
    # f(0)=1, f(1)=0, f(2)=1: the loop is positive at one side and negative at the other
    f = MultivaluedMap(MultiSpace((2,)), [1, 0, 1])
    g = local_graph(f, (1,))
    assert g.edges == {(1, 1, -1), (1, 1, 1)}
    assert g.variations[(1, 1, -1)] == {-1}
    assert g.variations[(1, 1, 1)] == {1}
    assert cycle_signs(g) == {1, -1}
    assert len(enumerate_cycles(g)) == 2


def test_remark_extra_negative_edge_in_conversion():
    from mvbool import BooleanConversion, is_compatible

    f = MultivaluedMap(MultiSpace((2,)), [0, 0, 1])
    F = BooleanConversion.from_mapping(
        f.space, {bits("00"): bits("00"), bits("10"): bits("00"), bits("11"): bits("10"), bits("01"): bits("11")}
    )
    assert is_compatible(F, f)
    assert global_graph(f).edges == {(1, 1, 1)}
    assert global_graph(F).has_edge(P(1, 1), P(1, 2), -1)


# -- cycles ---------------------------------------------------------------------------------


def test_cycle_examples():
    c = enumerate_cycles(local_graph(example("richard_stepwise").map, (1, 1)))
    assert [(x.vertices, x.sign) for x in c] == [((1,), 1), ((2,), 1)]
    F = extend_via_psi(example("ex1_pos_not_preserved").map)
    c = enumerate_cycles(local_graph(F, bits("1100")))
    assert len(c) == 1 and len(c[0]) == 4 and c[0].sign == 1
    assert has_cycle(local_graph(F, bits("1010")), "negative")
    assert enumerate_cycles(SignedDigraph.empty((1, 2))) == []
    loop = SignedDigraph((1,), {(1, 1, 1)})
    assert not has_cycle(loop, "negative")
    assert has_cycle(loop, "positive")


def test_explicit_fig1_conversion_acyclic():
    assert not has_cycle(global_graph(example("fig1").conversion))


def test_cycle_budget():
    vs = tuple(range(5))
    complete = SignedDigraph(vs, {(a, b, 1) for a in vs for b in vs})
    with pytest.raises(CycleBudgetExceeded):
        enumerate_cycles(complete, budget=10)


def test_unknown_sign_filter():
    with pytest.raises(ValueError):
        has_cycle(SignedDigraph.empty((1,)), "odd")


signed_graphs = st.integers(1, 6).flatmap(
    lambda n: st.sets(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from((1, -1))),
        max_size=3 * n,
    ).map(lambda es: SignedDigraph(tuple(range(n)), frozenset(es)))
)


@settings(max_examples=300)
@given(signed_graphs)
def test_cycles_match_permutation_oracle(g):
    got = {(c.vertices, c.signs) for c in enumerate_cycles(g)}
    assert got == cycles_oracle(g.vertices, g.edges)
    signs = {c.sign for c in enumerate_cycles(g)}
    assert cycle_signs(g) == signs
    assert has_cycle(g) == bool(signs)
    assert has_cycle(g, "positive") == (1 in signs)
    assert has_cycle(g, "negative") == (-1 in signs)
    assert len(enumerate_cycles(g, "negative")) == sum(1 for c in got if _prod(c[1]) < 0)


def _prod(signs):
    out = 1
    for s in signs:
        out *= s
    return out


def test_cycle_order_deterministic():
    g = SignedDigraph((1, 2, 3), {(1, 2, 1), (2, 1, -1), (2, 3, 1), (3, 2, 1), (3, 3, -1)})
    c = enumerate_cycles(g)
    assert [(x.vertices, x.signs) for x in c] == [((3,), (-1,)), ((1, 2), (1, -1)), ((2, 3), (1, 1))]


# -- scans ------------------------------------------------------------------------------------


def test_scan_richard_no_negative_cycles():
    assert scan_local_cycles(extend_via_psi(example("richard_stepwise").map), "negative") == []


def test_scan_fig1_psi_extension():
    found = scan_local_cycles(extend_via_psi(example("fig1").map))
    pairs = {(x, c.vertices) for x, c in found}
    assert (bits("001"), (P(1, 2),)) in pairs
    assert (bits("010"), (P(1, 2), P(2, 1))) in pairs


# -- non-usual graphs -------------------------------------------------------------------------


def test_nonusual_fig1_example():
    g = nonusual_graph(example("fig1").map, (1, 0), (0, 1))
    assert g.has_edge(1, 2)
    assert not g.has_edge(2, 1)


def test_nonusual_identical_states():
    with pytest.raises(IdenticalStates):
        nonusual_graph(example("fig1").map, (1, 0), (1, 0))


def test_nonusual_constant_direction_empty():
    # x and y differ only in a component whose update is constant
    f = MultivaluedMap.from_function(MultiSpace((2, 2)), lambda x: (1, x[1]))
    assert not nonusual_graph(f, (0, 1), (2, 1)).edges


def test_nonusual_fig1_acyclic():
    f = example("fig1").map
    for x in f.space.states():
        for y in f.space.states():
            if x != y:
                assert not has_cycle(nonusual_graph(f, x, y))


def _nonusual_oracle(f, x, y):
    diff = [k for k in range(len(x)) if x[k] != y[k]]
    eps = {k: sgn(y[k] - x[k]) for k in diff}
    fx = f(x)
    edges = set()
    for j in diff:
        nb = list(x)
        nb[j] += eps[j]
        if not 0 <= nb[j] <= f.space.levels[j]:
            continue
        fn = f(tuple(nb))
        for i in diff:
            s = eps[j] * sgn(fn[i] - fx[i])
            lo, hi = min(fx[i], fn[i]), max(fx[i], fn[i])
            if s and lo < x[i] + eps[i] / 2 < hi:
                edges.add((j + 1, i + 1, s))
    return edges


@settings(max_examples=60)
@given(maps())
def test_nonusual_matches_definition_and_sign_pattern(f):
    states = list(f.space.states())
    by_pattern = {}
    for x in states:
        for y in states:
            if x == y:
                continue
            g = nonusual_graph(f, x, y)
            assert set(g.edges) == _nonusual_oracle(f, x, y)
            assert g.edges <= local_graph(f, x).edges
            pattern = (x, tuple(sgn(b - a) for a, b in zip(x, y)))
            assert by_pattern.setdefault(pattern, g.edges) == g.edges
    # nonusual_graphs covers every (state, sign pattern) that occurs
    covered = {(x, tuple(sgn(b - a) for a, b in zip(x, y))): g.edges for x, y, g in nonusual_graphs(f)}
    assert covered == by_pattern


# -- single-step graphs -------------------------------------------------------------------------


def test_richard_graph_examples():
    f = example("fig1").map
    assert richard_graph(f, (1, 0)).edges == {(2, 1, 1)}
    assert not richard_graph(f, (2, 1)).edges


@settings(max_examples=80)
@given(maps())
def test_richard_graph_subgraph_of_local_graph(f):
    for x in f.space.states():
        g = richard_graph(f, x)
        assert g.is_subgraph_of(local_graph(f, x))
        fx = f(x)
        assert all(fx[j - 1] != x[j - 1] for j, _, _ in g.edges)
