from __future__ import annotations

import dataclasses

import pytest

from acspectra.bounds import (
    PROFILES,
    BoundProfile,
    depth_class_checks,
    depth_hypothesis_scan,
    noncommutative_monoid,
    profile,
    profile_names,
    resolve_witness,
    verify,
    verify_all,
)
from acspectra.errors import UnknownNameError
from acspectra.groupoids import find_isomorphism
from acspectra.identities import catalog_identity, satisfies_identity
from acspectra.registry import ANTI_ISOMORPHIC_PAIRS, registry
from acspectra.sequences import bound_formula

IDENTITY_ROWS = [p for p in PROFILES if p.identity_labels]


class TestCatalog:
    def test_completeness(self):
        names = profile_names()
        assert len(names) == len(set(names)) == 13 + 5
        assert {"Thm1.2", "Thm6.1", "Thm6.2", "Thm6.4", "Thm7.1"} <= set(names)
        assert len(IDENTITY_ROWS) == 14

    def test_examples(self):
        p = profile("Thm4.4")
        assert set(p.identity_labels) == {"3", "7", "12"}
        assert p.ac_bound.name == "n(2^{n-1}-1)"
        assert p.witnesses == ("SC271", "SC356")
        p = profile("Prop5.1")
        assert set(p.identity_labels) == {"2", "11"}
        assert (p.assoc_bound.name, p.ac_bound.name) == ("F(n+1)-1", "B(n,2)-1")
        assert p.witnesses == ("SC79", "SC1701")
        p = profile("Thm1.2")
        assert p.identity_labels == ("2",) and p.witnesses == ("SC1108", "SC2407", "SC3093")
        with pytest.raises(UnknownNameError):
            profile("Thm9.9")

    def test_two_one_start(self):
        p = profile("Prop4.2")
        assert (p.start_assoc, p.start_ac) == (2, 1)

    @pytest.mark.parametrize("p", PROFILES, ids=lambda p: p.name)
    def test_oracles_defined_from_start(self, p):
        for n in range(p.start_assoc, 30):
            if p.assoc_bound is not None:
                assert p.assoc_bound.defined(n)
        for n in range(p.start_ac, 30):
            if p.ac_bound is not None:
                assert p.ac_bound.defined(n)

    @pytest.mark.parametrize("p", PROFILES, ids=lambda p: p.name)
    def test_witnesses_resolve(self, p):
        for name in p.witnesses + p.dual_witnesses:
            assert resolve_witness(name).size in (2, 3)

    @pytest.mark.parametrize("p", IDENTITY_ROWS, ids=lambda p: p.name)
    def test_witnesses_satisfy_identities(self, p):
        for name in p.witnesses:
            g = registry(name)
            assert all(satisfies_identity(g, catalog_identity(lab)) for lab in p.identity_labels)
        for name in p.dual_witnesses:
            g = registry(name)
            assert all(satisfies_identity(g, catalog_identity(lab).mirrored()) for lab in p.identity_labels)

    def test_duals_are_opposites_of_witnesses(self):
        pairs = {frozenset(p) for p in ANTI_ISOMORPHIC_PAIRS}
        for p in PROFILES:
            for dual in p.dual_witnesses:
                assert any(frozenset((w, dual)) in pairs for w in p.witnesses)

    def test_describe(self):
        d = profile("Thm7.1").describe()
        assert d["ac_bound"] == "n!*s^a_n" and d["assoc_bound"] is None
        assert profile("Thm6.2").describe()["depth_hypothesis"] == {"kind": "leftmost-left", "modulus": 3}


class TestVerify:
    def test_attains(self):
        r = verify(profile("Thm4.4"), registry("SC271"), 8, 6)
        assert r.verdict == "attains" and not r.failed
        assert all(r.hypotheses.values())
        assert [c.value for c in r.checks if c.kind == "ac"] == [1, 2, 9, 28, 75, 186]

    def test_projection(self):
        r = verify(profile("Prop3.1"), registry("SC275"), 6, 6)
        assert r.verdict == "attains"
        assert [c.value for c in r.checks if c.kind == "associative"] == [1] * 6
        assert [c.value for c in r.checks if c.kind == "ac"] == [1, 2, 3, 4, 5, 6]

    def test_hypothesis_not_met(self):
        r = verify(profile("Thm4.4"), registry("SC2302"), 6, 6)
        assert r.verdict == "hypothesis not met"
        # a-b: (7) fails since w-x+y-z differs from w-x+y+z
        assert r.hypotheses["3"] and r.hypotheses["12"] and not r.hypotheses["7"]
        assert r.checks and not r.failed

    def test_opposite_needs_mirrored_hypothesis(self):
        g = registry("SC1610")
        assert verify(profile("Thm4.4"), g, 6, 5).verdict == "hypothesis not met"
        r = verify(profile("Thm4.4"), g, 6, 5, mirrored=True)
        assert r.verdict == "attains" and r.mirrored and r.expected_attains

    def test_holds_below_bound(self):
        # SC405 satisfies (2) and (7) yet stays strictly below those bounds
        r = verify(profile("Prop4.1"), registry("SC405"), 8, 6)
        assert r.verdict == "holds" and not r.failed

    def test_violation_is_detected(self):
        tight = dataclasses.replace(profile("Prop5.1"), ac_bound=bound_formula("n"))
        r = verify(tight, registry("SC79"), 6, 5)
        assert r.verdict == "violation" and r.failed

    def test_implication_flag(self):
        # ac attains n on SC275 but the associative bound 2 is never reached
        p = BoundProfile("fake", ("1",), bound_formula("2"), bound_formula("n"), 1, 1, ())
        r = verify(p, registry("SC275"), 5, 5)
        assert r.verdict == "violation" and any("without" in note for note in r.notes)
        r = verify(dataclasses.replace(p, implication=False), registry("SC275"), 5, 5)
        assert r.verdict == "holds"

    def test_expected_witness_not_attained(self):
        r = verify(profile("Prop4.1"), registry("SC405"), 8, 6, expected_attains=True)
        assert r.verdict == "not attained" and r.failed

    def test_depth_profile(self):
        r = verify(profile("Thm6.1"), registry("SC2302"), 8, 6)
        assert r.hypotheses == {"depth:right:2": True}
        assert r.verdict == "attains"
        assert verify(profile("Thm6.1"), registry("SC79"), 6, 5).verdict == "hypothesis not met"

    def test_relative_profile(self):
        r = verify(profile("Thm7.1"), noncommutative_monoid(), 6, 6)
        assert r.verdict == "attains"
        assert r.hypotheses == {}
        r = verify(profile("Thm7.1"), registry("SC79"), 6, 6)
        assert r.verdict == "holds" and not r.failed

    def test_report_dict(self):
        d = verify(profile("Prop3.2"), registry("SC7"), 5, 5).to_dict()
        assert d["verdict"] == "attains" and d["failed"] is False
        assert {c["relation"] for c in d["checks"] if c["in_range"]} == {"="}


class TestDepthHypotheses:
    @pytest.mark.parametrize(
        "name, kind, k, mirrored",
        [
            ("SC2302", "right", 2, False),
            ("SC2155", "right", 2, True),
            ("SC3242", "leftmost-left", 3, False),
            ("SC3302", "leftmost-left", 3, True),
            ("SC2346", "full", 2, False),
        ],
    )
    def test_witnesses_characterised(self, name, kind, k, mirrored):
        scan = depth_hypothesis_scan(registry(name), kind, k, 5, mirrored)
        assert scan.implies and scan.iff

    def test_failing_hypothesis(self):
        assert not depth_hypothesis_scan(registry("SC79"), "full", 2, 4).implies
        # SC275 only sees the leftmost variable, which the right-depth key does not determine
        assert not depth_hypothesis_scan(registry("SC275"), "right", 2, 4).implies
        scan = depth_hypothesis_scan(registry("SC275"), "leftmost-left", 1, 5)
        assert scan.implies and scan.iff

    def test_class_count_checks(self):
        checks = depth_class_checks(8, 6)
        assert checks and all(c.ok for c in checks)
        right2 = next(c for c in checks if (c.kind, c.modulus, c.n) == ("right", 2, 6))
        assert right2.count == 16


def test_anti_isomorphism_used_for_duals():
    assert find_isomorphism(registry("SC3242"), registry("SC3302"), anti=True) is not None


def test_monoid_witness():
    m = noncommutative_monoid()
    assert m.identity_element() == 0 and m.is_associative() and not m.is_commutative()


def test_verify_all_subset_threads():
    one = verify_all(6, 5, profiles=["Thm5.2", "Thm4.4"], threads=1)
    two = verify_all(6, 5, profiles=["Thm5.2", "Thm4.4"], threads=3)
    assert [r.to_dict() for r in one] == [r.to_dict() for r in two]
    assert [r.profile for r in one] == ["Thm4.4"] * 4 + ["Thm5.2"] * 4
    assert all(r.verdict == "attains" for r in one)
