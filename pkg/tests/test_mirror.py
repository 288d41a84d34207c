from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import embed_oracle, maps
from mvbool import (
    MultiSpace,
    MultivaluedMap,
    binarise,
    check_mirror_theorem,
    difference_set,
    example,
    extend_via_psi,
    find_mirror_pairs,
    is_mirror_pair,
    partial_conversion,
)
from mvbool.errors import IdenticalStates, SpaceMismatch
from mvbool.mirror import mirror_pair_ranks
from mvbool.verdicts import PASS, VACUOUS


def _mirror_oracle(f, x, y):
    fx, fy = f(x), f(y)
    for i in range(len(x)):
        if x[i] == y[i]:
            continue
        lo, hi = min(x[i], y[i]), max(x[i], y[i])
        if not (fx[i] <= lo and hi <= fy[i]) and not (fy[i] <= lo and hi <= fx[i]):
            return False
    return True


def test_difference_set_examples():
    assert difference_set((1, 1), (1, 1)) == frozenset()
    assert difference_set((0, 1), (2, 1)) == {1}
    assert difference_set((0, 0), (1, 2)) == {1, 2}
    with pytest.raises(SpaceMismatch):
        difference_set((0,), (0, 1))


def test_two_minus_x_pair():
    f = example("two_minus_x").map
    assert is_mirror_pair(f, (0,), (2,))
    pairs = [(p.x, p.y) for p in find_mirror_pairs(f)]
    assert ((0,), (2,)) in pairs


def test_constant_map_has_no_pairs():
    # c_i <= x_i, y_i <= c_i cannot hold when x_i != y_i
    f = MultivaluedMap.constant(MultiSpace((2, 1)), (1, 0))
    assert find_mirror_pairs(f) == []
    assert check_mirror_theorem(f).status == VACUOUS


def test_identity_pairs_follow_the_definition():
    # with f = id the first chain reads x_i <= y_i, so every pair of distinct
    # states is mirror; the local graphs carry positive loops everywhere
    space = MultiSpace((2, 1))
    f = MultivaluedMap.identity(space)
    n = space.size
    assert len(find_mirror_pairs(f)) == n * (n - 1) // 2
    assert check_mirror_theorem(f).status == PASS


def test_identical_states_rejected():
    with pytest.raises(IdenticalStates):
        is_mirror_pair(example("two_minus_x").map, (1,), (1,))


def test_mirror_report_orientation():
    f = example("two_minus_x").map
    rep = find_mirror_pairs(f)[0]
    assert rep.components == {1}
    assert rep.orientation[1] in ("up", "down", "both")


def test_boolean_reduction():
    # on B^n a pair is mirror iff the images differ on every differing component
    F = extend_via_psi(example("fig1").map)
    for x, y in combinations(list(F.space.states()), 2):
        diff = difference_set(x, y)
        fx, fy = F(x), F(y)
        assert is_mirror_pair(F, x, y) == all(fx[i - 1] != fy[i - 1] for i in diff)


def test_mirror_theorem_two_minus_x():
    v = check_mirror_theorem(example("two_minus_x").map)
    assert v.status == PASS
    a, b = v.witnesses["witness_states"]
    assert a != b


@settings(max_examples=100)
@given(maps())
def test_mirror_pairs_match_definition(f):
    states = list(f.space.states())
    expected = [(x, y) for x, y in combinations(states, 2) if _mirror_oracle(f, x, y)]
    assert [(p.x, p.y) for p in find_mirror_pairs(f)] == expected


@settings(max_examples=100)
@given(maps())
def test_mirror_pairs_embed_both_ways(f):
    # a pair is mirror for f iff its embedding is mirror for the partial conversion,
    # and every such pair is mirror for any total conversion
    space = f.space
    fb = partial_conversion(f)
    bspace = space.boolean_space
    emb = {x: embed_oracle(space.levels, x) for x in space.states()}
    for x, y in combinations(list(space.states()), 2):
        assert is_mirror_pair(f, x, y) == is_mirror_pair(fb, emb[x], emb[y])
    part = {tuple(sorted(p)) for p in mirror_pair_ranks(fb)}
    for F in (extend_via_psi(f), binarise(f)):
        total = set(mirror_pair_ranks(F))
        assert part <= total
    assert all(bspace.rank(emb[x]) >= 0 for x in emb)


@settings(max_examples=150)
@given(maps())
def test_mirror_theorem_never_fails(f):
    v = check_mirror_theorem(f, conjecture=True)
    assert v.ok
    if v.status == PASS:
        assert len(set(map(tuple, v.witnesses["witness_states"]))) == 2
