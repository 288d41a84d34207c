import pytest
from hypothesis import given, settings

from conftest import maps
from mvbool import (
    STATEMENTS,
    MultiSpace,
    MultivaluedMap,
    check_facts,
    counterexample_report,
    example,
    example_ids,
    stepwise,
    verify_statement,
)
from mvbool.checks import MAX_BOOLEAN_DIM, random_map, verify_all
from mvbool.core import IndexPair as P
from mvbool.errors import BudgetExceeded, UnknownExample, UnknownStatement
from mvbool.verdicts import FAIL, PASS, VACUOUS

REGISTRY_IDS = [
    "sec2_example",
    "fig1",
    "ex1_pos_not_preserved",
    "ex2_not_stepwise",
    "richard_stepwise",
    "two_minus_x",
    "fig5_asymptotic",
]


# -- registry -----------------------------------------------------------------------------


def test_registry_ids():
    assert example_ids() == REGISTRY_IDS
    with pytest.raises(UnknownExample):
        example("fig9")


def test_registry_examples():
    fig1 = example("fig1")
    assert len(list(fig1.map.items())) == 6
    assert fig1.map((1, 1)) == (2, 1)
    assert fig1.conversion is not None
    assert example("richard_stepwise").map((2, 2)) == (3, 3)
    assert example("richard_stepwise").map((0, 0)) == (0, 1)
    assert example("richard_stepwise").map((1, 1)) == (0, 0)
    assert example("richard_stepwise").map((3, 3)) == (3, 2)
    assert example("two_minus_x").map((1,)) == (1,)


@pytest.mark.parametrize("eid", REGISTRY_IDS)
def test_registry_facts_rederive(eid):
    results = check_facts(eid)
    assert results
    bad = [(r.fact.anchor, r.fact.kind, r.actual) for r in results if not r.ok]
    assert not bad


@pytest.mark.parametrize("eid", REGISTRY_IDS)
def test_registry_never_falsified(eid):
    # a FAIL with the hypotheses holding on a registry instance would refute a statement
    for v in verify_all(eid):
        assert not v.falsified, v.records()
        if v.status == FAIL:
            assert not v.hypotheses_hold and v.notes


# -- statement verdicts -------------------------------------------------------------------------


def test_prop1_richard_passes():
    v = verify_statement("prop1", "richard_stepwise")
    assert v.status == PASS and v.hypotheses_hold


def test_thm2_richard_no_negative_transfer():
    v = verify_statement("thm2", "richard_stepwise")
    assert v.status == PASS
    assert v.witnesses["negative_transfers"] == 0
    assert "no local negative cycle in the conversion" in v.notes


def test_prop1_example2_fails_outside_hypotheses():
    v = verify_statement("prop1", "ex2_not_stepwise")
    assert v.status == FAIL
    assert not v.hypotheses_hold
    assert not v.falsified
    assert "escaping_edge" in v.counterexample
    src, dst = v.counterexample["escaping_edge"]
    space = example("ex2_not_stepwise").space
    from mvbool import is_admissible

    assert is_admissible(space, src) and not is_admissible(space, dst)


def test_compat_uses_stepwise_version():
    v = verify_statement("compat", "ex2_not_stepwise")
    assert v.status == PASS and v.hypotheses_hold


def test_explicit_conversion_argument():
    ex = example("fig1")
    v = verify_statement("prop1", ex, ex.conversion)
    assert v.status == PASS
    # the explicit table is not the psi-extension, so the fiber statement is out of scope
    v = verify_statement("lemma3", ex.map, ex.conversion)
    assert not v.hypotheses_hold
    assert verify_statement("lemma3", ex.map).hypotheses_hold


def test_thm4_on_two_minus_x():
    v = verify_statement("thm4", "two_minus_x")
    assert v.status == PASS
    assert v.witnesses["mirror_pairs"] >= 1


def test_thm3_thm4_vacuous_without_pairs():
    f = MultivaluedMap.constant(MultiSpace((2, 1)), (1, 0))
    assert verify_statement("thm4", f).status == VACUOUS
    assert verify_statement("thm3", f).status == VACUOUS


def test_unknown_statement_and_budget():
    with pytest.raises(UnknownStatement):
        verify_statement("thm99", "fig1")
    big = MultivaluedMap.identity(MultiSpace((3,) * 5))
    assert big.space.boolean_dim > MAX_BOOLEAN_DIM
    with pytest.raises(BudgetExceeded):
        verify_statement("prop1", big)


def test_records_are_key_value_lines():
    v = verify_statement("prop1", "ex2_not_stepwise")
    lines = v.records()
    assert lines[:3] == ["statement=prop1", "verdict=FAIL", "hypotheses=violated"]
    assert all("=" in line for line in lines)


def test_statement_list():
    assert STATEMENTS[:2] == ("prop1", "prop2")
    assert len(STATEMENTS) == len(set(STATEMENTS)) == 21


def test_verify_all_matches_individual_checks():
    f = random_map(7)
    together = [(v.statement, v.status) for v in verify_all(f)]
    alone = [(s, verify_statement(s, f).status) for s in STATEMENTS]
    assert together == alone


def test_random_map_reproducible():
    assert random_map(3) == random_map(3)
    f = random_map(11)
    assert f.space.n <= 3 and max(f.space.levels) <= 3


@settings(max_examples=40, deadline=None)
@given(maps())
def test_statements_hold_on_random_maps(f):
    for g in (f, stepwise(f)):
        for v in verify_all(g):
            assert not v.falsified, v.records()


def test_first_and_second_conjecture_instances():
    # two attractors force a positive cycle; cyclic attractors force negative cycles
    seen = {"thm8": 0, "thm9": 0, "thm10": 0}
    for seed in range(200):
        f = random_map(seed)
        for v in verify_all(f, statements=("thm8", "thm9", "thm10")):
            assert v.ok
            if v.status == PASS:
                seen[v.statement] += 1
    assert all(seen.values()), seen


# -- headline report -------------------------------------------------------------------------


def test_counterexample_report():
    rep = counterexample_report()
    assert rep.fixed_points == 0
    assert len(rep.attractors) == 1 and len(rep.attractors[0]) == 12
    assert rep.attractor_matches_outer_cycle
    assert rep.negative_local_cycles == 0
    # within each block positive, block 1 -> block 2 negative, block 2 -> block 1 positive
    b1 = [P(1, k) for k in (1, 2, 3)]
    b2 = [P(2, k) for k in (1, 2, 3)]
    expected = (
        {(a, b, 1) for a in b1 for b in b1}
        | {(a, b, 1) for a in b2 for b in b2}
        | {(a, b, -1) for a in b1 for b in b2}
        | {(b, a, 1) for a in b1 for b in b2}
    )
    assert rep.global_edges == expected
    assert len(rep.global_edges) == 36
    assert rep.binarised_attractor_sizes == [28]
    assert not rep.binarised_attractor_is_cycle
    assert "attractor_is_outer_cycle=true" in rep.records()
