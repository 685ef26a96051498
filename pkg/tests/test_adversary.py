import pytest

from limitlab.adversary import (
    Budgets,
    CoolsepSession,
    KindMismatchError,
    coolsep_diagnose,
    coolsep_session,
    gsmon_diagnose,
    gsmon_session,
    sd_diagnose,
    sd_session,
    totalpsd_diagnose,
    totalpsd_session,
)
from limitlab.canonical import (
    Workbench,
    always_change,
    constant_learner,
    family_overgeneralizer,
    min_consistent,
    set_copier,
)
from limitlab.hypospace import NO, YES
from limitlab.learnkit import Learner, psd_learner, sd_learner

FAST = Budgets(search_bound=50, mind_change_goal=10, error_goal=5)


def copier_as_psd():
    h = set_copier()
    return Learner("Psd", "set-copier^Psd",
                   lambda view, budget: h.apply(view[0], budget))


def constant_nat_psd(session):
    return constant_learner(Workbench(session.registry).p2, "Psd")


def constant_nat_sd(session):
    return constant_learner(Workbench(session.registry).p2, "Sd")


# -- order-of-presentation session ------------------------------------------

def test_coolsep_rejects_wrong_kind():
    with pytest.raises(KindMismatchError):
        coolsep_session(set_copier(), FAST)


def test_coolsep_family_membership():
    s = coolsep_session(family_overgeneralizer, FAST)
    assert s.registry.decide(s.family_index(0), s.element(0, 5)) is YES
    assert s.registry.decide(s.family_index(0), s.element(1, 0)) is NO


def test_coolsep_f_against_overgeneralizer():
    s = coolsep_session(family_overgeneralizer, FAST)
    for j in range(11):
        assert s.f(j) == 1


def test_coolsep_f_against_copier():
    s = coolsep_session(copier_as_psd(), FAST)
    assert s.f(0) is None


def test_coolsep_capped_index_geometry():
    s = coolsep_session(family_overgeneralizer, FAST)
    f1 = s.f(1)
    assert s.registry.decide(s.capped_index(1), s.element(1, f1)) is YES
    assert s.registry.decide(s.capped_index(1), s.element(1, f1 + 1)) is NO


def test_coolsep_union_geometry():
    """Marked elements sit in the capped language but outside the union of
    pre-overgeneralization prefixes, whose elements all sit inside."""
    s = coolsep_session(family_overgeneralizer, FAST)
    e = s.union_index()
    for j in range(6):
        fj = s.f(j)
        marked = s.element(j, fj)
        assert s.registry.decide(s.capped_index(j), marked) is YES
        assert s.registry.decide(e, marked) is NO
        for x in s.element_prefix(j, fj):
            assert s.registry.decide(e, x) is YES


def test_coolsep_union_enumeration_monotone():
    s = coolsep_session(family_overgeneralizer, FAST)
    for b in range(0, 12, 3):
        assert (s.registry.enumerate(s.union_index(), b)
                <= s.registry.enumerate(s.union_index(), b + 3))


def test_coolsep_witness_text_blocks():
    s = coolsep_session(family_overgeneralizer, FAST)
    t = s.witness_text()
    assert t.prefix(3) == (s.element(0, 0), s.element(1, 0), s.element(2, 0))


def test_coolsep_diagnose_overgeneralizer():
    s = coolsep_session(family_overgeneralizer, FAST)
    report = coolsep_diagnose(s, 5)
    assert report.variant == "WrongForever"
    positions = report.evidence[0]["wrong_positions"]
    assert len(positions) >= 5
    for rec in positions:
        assert s.registry.member(rec["hypothesis"], rec["element"], 500)
        assert s.registry.decide(s.union_index(), rec["element"]) is NO


def test_coolsep_diagnose_copier():
    s = coolsep_session(copier_as_psd(), FAST)
    report = coolsep_diagnose(s, 5)
    assert report.variant == "FailsToOvergeneralize"
    assert report.evidence[0]["family"] == 0
    assert report.evidence[0]["search_bound"] == FAST.search_bound


def test_coolsep_diagnose_goal_zero():
    s = coolsep_session(family_overgeneralizer, FAST)
    report = coolsep_diagnose(s, 0)
    assert report.variant == "WrongForever"
    assert report.evidence[0]["wrong_positions"] == []


def test_coolsep_deterministic():
    r1 = coolsep_diagnose(coolsep_session(family_overgeneralizer, FAST), 5)
    r2 = coolsep_diagnose(coolsep_session(family_overgeneralizer, FAST), 5)
    assert r1.dumps() == r2.dumps()


# -- mind-change extension session ------------------------------------------

def test_gsmon_always_change():
    s = gsmon_session(always_change(), FAST)
    report = gsmon_diagnose(s, 10)
    assert report.variant == "InfiniteMindChanges"
    assert report.evidence[0]["count"] == 10
    # replay the recorded steps against the session's own prefixes
    for step in report.evidence[0]["steps"]:
        i = step["stage"]
        assert s._hstar(s.sigma(i)) == step["before"]
        assert s._hstar(s.sigma(i + 1)) == step["after"]
        assert step["before"] != step["after"]


def test_gsmon_goal_zero_vacuous():
    s = gsmon_session(always_change(), FAST)
    assert gsmon_diagnose(s, 0).variant == "InfiniteMindChanges"


def test_gsmon_min_consistent_definitive():
    report = gsmon_diagnose(gsmon_session(min_consistent(), FAST), 10)
    assert report.definitive
    assert report.variant == "InfiniteMindChanges"


def test_gsmon_monotonicity_trap_on_constant_learner():
    s = gsmon_session(constant_nat_psd, FAST)
    report = gsmon_diagnose(s, 10)
    assert report.variant == "MonotonicityTrap"
    ev = report.evidence[0]
    assert all(rec["member"] for rec in ev["membership_after_singleton_block"])
    assert all(rec["equals_base"] for rec in ev["state_coincidence"])
    # the confusable pair differs exactly by the kept elements
    l1, l2 = ev["confusable_languages"]["L1"], ev["confusable_languages"]["L2"]
    d1 = s.registry.enumerate(l1, 500)
    d2 = s.registry.enumerate(l2, 500)
    assert ev["kept_elements"][0] in d1 and ev["kept_elements"][1] in d2


def test_gsmon_singleton_not_learned():
    never = psd_learner(lambda view: 0, name="empty-guess")
    report = gsmon_diagnose(gsmon_session(never, FAST), 10)
    assert report.variant == "SingletonNotLearned"


def test_gsmon_a_indices_self_referential():
    s = gsmon_session(always_change(), FAST)
    from limitlab.coding import pair

    d = frozenset({5, 6})
    a = s.a(d)
    assert s.registry.enumerate(a, 100) == d | {pair(a, 0)}
    assert s.a(d) == a  # memoized


# -- totality-forcing partially set-driven session --------------------------

def test_totalpsd_copier_changes_forever():
    report = totalpsd_diagnose(totalpsd_session(copier_as_psd(), FAST), 10)
    assert report.variant == "InfiniteMindChanges"


def test_totalpsd_constant_confused_pair():
    s = totalpsd_session(constant_nat_psd, FAST)
    report = totalpsd_diagnose(s, 10)
    assert report.variant == "ConfusedPair"
    ev = report.evidence[0]
    assert ev["element_outside_L"]
    assert ev["shared_hypothesis"]["before"] == ev["shared_hypothesis"]["after"]
    assert s.registry.decide(s.e, ev["element"]) is NO
    assert s.registry.decide(s.e_prime, ev["element"]) is YES


def test_totalpsd_totality_violation():
    bad = psd_learner(lambda view: None, name="silent")
    report = totalpsd_diagnose(totalpsd_session(bad, FAST), 10)
    assert report.variant == "TotalityViolated"


def test_totalpsd_paired_languages_disagree_only_at_failure():
    s = totalpsd_session(constant_nat_psd, FAST)
    totalpsd_diagnose(s, 10)
    # P(0) failed, so L = W_e is empty while L' holds a(0)
    assert s.registry.enumerate(s.e, 50) == frozenset()
    assert s.a(0) in s.registry.enumerate(s.e_prime, 50)


# -- set-driven probe session -----------------------------------------------

def test_sd_copier_changes_forever():
    s = sd_session(set_copier(), FAST)
    report = sd_diagnose(s, 10)
    assert report.variant == "InfiniteMindChanges"
    for rec in report.evidence[0]["changes"]:
        assert rec["before"] != rec["after"]


def test_sd_constant_confused_pair():
    s = sd_session(constant_nat_sd, FAST)
    report = sd_diagnose(s, 10)
    assert report.variant == "ConfusedPair"
    ev = report.evidence[0]
    assert ev["stage"] == 0
    assert ev["reinvoked_equal"]


def test_sd_rejects_wrong_kind():
    with pytest.raises(KindMismatchError):
        sd_session(min_consistent(), FAST)


def test_sd_totality_violation():
    bad = sd_learner(lambda d: None, name="silent")
    report = sd_diagnose(sd_session(bad, FAST), 10)
    assert report.variant == "TotalityViolated"


def test_sd_halting_probe_tracks_repeat():
    s = sd_session(constant_nat_sd, FAST)
    assert s.repeat_at() == 0
    assert s.registry.halts_within(s.halting_probe, 1)
    s2 = sd_session(set_copier(), FAST)
    assert s2.repeat_at() is None
    assert not s2.registry.halts_within(s2.halting_probe, 10**6)


def test_sd_goal_zero_vacuous():
    report = sd_diagnose(sd_session(set_copier(), FAST), 0)
    assert report.variant == "InfiniteMindChanges"


def test_reports_serialize_deterministically():
    r1 = sd_diagnose(sd_session(set_copier(), FAST), 10)
    r2 = sd_diagnose(sd_session(set_copier(), FAST), 10)
    assert r1.dumps() == r2.dumps()
    payload = r1.to_json()
    assert set(payload) == {"theorem", "variant", "evidence", "budgets",
                            "learner"}
