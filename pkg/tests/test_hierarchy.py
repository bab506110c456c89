import pytest
from hypothesis import given
from hypothesis import strategies as st

from hostlab.errors import BoundExceeded, ConfigError
from hostlab.formula import ordinal_predicate, parse
from hostlab.hf import EMPTY, HfSet, fn_view, is_ordinal, von_neumann
from hostlab.hierarchy import (
    SAFE_BATTERY,
    TierConfig,
    build_stage,
    check_A2,
    check_A3,
    check_A4,
    check_A5,
    collection_build,
    enumerate_functions,
    ordinals_of,
    safe_battery,
    stage_structure,
    universe_lemma_check,
)
from oracles import code_of, complete_brute, naive_satisfies, stage_codes, stage_sizes


# -- stages ---------------------------------------------------------------------


def test_stage_sizes_match_tower():
    assert [len(build_stage(k)) for k in range(6)] == stage_sizes(5)


@pytest.mark.parametrize("k", range(5))
def test_stage_is_initial_segment_of_codes(k):
    assert [code_of(m) for m in build_stage(k).set.members] == stage_codes(k)


@pytest.mark.parametrize("k", range(5))
def test_stage_membership_is_rank(k):
    v = build_stage(k).set
    for m in build_stage(min(k + 1, 4)).set.members:
        assert (m in v) == (m.rank < k)


@pytest.mark.parametrize("k", range(5))
def test_ordinals_of_stage(k):
    o = ordinals_of(build_stage(k))
    assert o == von_neumann(k) and is_ordinal(o)
    assert o not in build_stage(k).set
    assert o in build_stage(k + 1).set


def test_stage_bounds():
    with pytest.raises(BoundExceeded):
        build_stage(6)
    with pytest.raises(ConfigError):
        build_stage(-1)
    assert stage_structure("V2").universe == build_stage(2).set.members
    with pytest.raises(ConfigError):
        stage_structure("W2")


# -- tier configurations -----------------------------------------------------------


@pytest.mark.parametrize("text", ["3,2", "2,2", "", "a,b", "-1,2", "4,6"])
def test_bad_configs(text):
    with pytest.raises(ConfigError):
        TierConfig.parse(text)


def test_config_basics():
    t = TierConfig.parse("2,3,4")
    assert len(t) == 3 and str(t) == "2,3,4"
    assert t.interpretation(1) == {0: build_stage(2).set, 1: build_stage(3).set}
    assert t.evaluation_structure(0).universe == build_stage(3).set.members
    assert t.evaluation_structure(2).universe == build_stage(5).set.members
    with pytest.raises(ConfigError):
        t.stage(3)


# -- A2 -----------------------------------------------------------------------------


def test_A2_completeness_matches_brute_force():
    for a in check_A2(TierConfig((1, 2, 3))):
        assert a.complete == complete_brute(build_stage(a.k).set)
        assert a.complete


def test_A2_audit_is_skipped_at_stage_five():
    audits = check_A2(TierConfig((2, 5)), battery=[])
    assert audits[1].audit is None and "V_5" in audits[1].skipped
    assert audits[1].complete


def test_A2_failures_on_stage_three():
    a = check_A2(TierConfig((3,)))[0]
    assert set(a.audit.failures) == {"Z3", "Z5", "Z6", "Z7", "F1_literal"}


# -- A3 -----------------------------------------------------------------------------


def test_A3_small_chain():
    (step,) = check_A3(TierConfig((1, 2)), 1, 1)
    assert not step.verdict.holds
    assert step.to_json()["witness_formula"] == "exists y. a in y"
    assert step.to_json()["parameters"] == {"a": "{}"}


def test_A3_depth_zero_holds():
    (step,) = check_A3(TierConfig((2, 3)), 0, 2)
    assert step.verdict.holds


# -- A4 and collection building ----------------------------------------------------------


def test_collection_build_examples():
    t = TierConfig((3, 4))
    assert collection_build(t, 0, "X != X") == EMPTY
    assert collection_build(t, 0, ordinal_predicate("X")) == von_neumann(3)
    assert collection_build(t, 0, "X = X") == build_stage(3).set


@pytest.mark.parametrize("text", ["X in C1", "X = #100", "X = Y", "exists y. y = y"])
def test_collection_build_rejects(text):
    with pytest.raises(ConfigError):
        collection_build(TierConfig((2, 3)), 0, text)


@pytest.mark.parametrize("phi", SAFE_BATTERY)
def test_collection_build_matches_naive(phi):
    t = TierConfig((2, 3))
    f = parse(phi)
    ev = t.evaluation_structure(0)
    want = [y for y in build_stage(2).set.members if naive_satisfies(ev.universe, f, {"X": y}, ev.tiers)]
    assert collection_build(t, 0, f) == HfSet(want)


def test_A4_all_members_of_next_tier():
    recs = check_A4(TierConfig((2, 3, 4)))
    assert len(recs) == 2 * len(safe_battery())
    assert all(r.subset_of_tier and r.member_of_next for r in recs)


@given(st.sets(st.sampled_from(build_stage(3).set.members)))
def test_any_subset_of_a_tier_is_in_the_next(xs):
    assert HfSet(xs) in build_stage(4).set


# -- A5 -----------------------------------------------------------------------------


def _replacement_oracle(k):
    """(functions, failures) by counting range codes directly."""
    codes = stage_codes(k)
    limit = len(codes)
    total = fails = 0
    from itertools import product

    for d in codes:
        dom = [i for i in codes if d >> i & 1]
        for vals in product(codes, repeat=len(dom)):
            total += 1
            rng = sum(1 << v for v in set(vals))
            fails += rng >= limit
    return total, fails


@pytest.mark.parametrize("k", [1, 2, 3])
def test_A5_counts_match_oracle(k):
    rep = check_A5(TierConfig((k, k + 1)), 0)
    total, fails = _replacement_oracle(k)
    assert rep.functions == total
    assert len(rep.failures) == fails
    assert rep.status == ("fails" if fails else "holds")


def test_A5_failures_live_at_rank_k():
    rep = check_A5(TierConfig((3, 4)), 0)
    assert rep.failure_ranks == (3,)
    assert rep.passing_ranks == (0, 1, 2)
    for case in rep.failures:
        assert fn_view(case.function).range == case.range
        assert case.range not in build_stage(3).set


def test_A5_cap_gives_sampled():
    rep = check_A5(TierConfig((3,)), 0, cap=10)
    assert rep.sampled and rep.functions == 10
    # a failure found before the cap is conclusive
    assert rep.status == ("fails" if rep.failures else "sampled")
    assert check_A5(TierConfig((3,)), 0, cap=1).status == "sampled"
    with pytest.raises(BoundExceeded):
        list(enumerate_functions(build_stage(3).set.members, build_stage(3).set.members, cap=3))


# -- universe lemma -------------------------------------------------------------------


def test_universe_lemma_holds():
    recs = universe_lemma_check(TierConfig((2, 3, 4)))
    assert all(r.holds and r.built_size == r.carrier_size for r in recs)


def test_universe_lemma_catches_a_broken_builder():
    def drop_one(t, n, f):
        s = collection_build(t, n, f)
        return HfSet(s.members[1:])

    recs = universe_lemma_check(TierConfig((2, 3)), builder=drop_one)
    assert not any(r.holds for r in recs)
