from __future__ import annotations

import itertools
from collections import defaultdict
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acspectra.errors import MalformedTermError, SizeLimitError
from acspectra.groupoids import Groupoid, evaluate
from acspectra.identities import catalog_identity, satisfies_identity
from acspectra.registry import ANTI_ISOMORPHIC_PAIRS, TABLES, all_groupoids, registry
from acspectra import spectrum as spectrum_module
from acspectra.spectrum import (
    DepthClassQuery,
    FunctionTable,
    ac_spectrum,
    associative_spectrum,
    compose_split,
    count_depth_classes,
    induced_table,
    spectrum,
)
from acspectra.terms import (
    Leaf,
    egg_partition,
    enumerate_bracketings,
    enumerate_full_linear_terms,
    leftmost_bracketing,
    leftmost_decomposition,
    parse_term,
    relabel,
    rooted_ordered_partition,
    rooted_partition,
    standard_variant,
)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def brute_table(g: Groupoid, t) -> tuple[int, ...]:
    n = t.size
    return tuple(evaluate(g, t, a) for a in itertools.product(range(g.size), repeat=n))


def brute_spectrum(g: Groupoid, terms) -> int:
    """Oracle independent of both engines: pure-Python evaluation."""
    return len({brute_table(g, t) for t in terms})


def two_element_groupoids() -> list[Groupoid]:
    return [
        Groupoid(((a, b), (c, d)), name=f"T{a}{b}{c}{d}")
        for a, b, c, d in itertools.product((0, 1), repeat=4)
    ]


groupoids3 = st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3).map(Groupoid)


class TestFunctionTable:
    def test_layout_first_argument_most_significant(self):
        g = registry("SC2302")
        f = induced_table(g, parse_term("x1x2"))
        assert f.arity == 2 and f.base == 3
        assert tuple(f.values) == tuple(v for row in g.table for v in row)
        assert f(0, 1) == 2

    def test_identity_and_projection(self):
        g = registry("SC405")
        assert induced_table(g, Leaf(1)) == FunctionTable.identity(3)
        assert induced_table(registry("SC275"), parse_term("x2x1")) == FunctionTable.projection(3, 2, 2)

    def test_packing_two_bits(self):
        f = FunctionTable.projection(3, 7, 1)
        assert len(f.packed) == 547
        assert hash(f) == hash(FunctionTable.projection(3, 7, 1))
        assert f != FunctionTable.projection(3, 7, 2)

    def test_validation(self):
        with pytest.raises(ValueError):
            FunctionTable(2, 2, np.zeros(3, dtype=np.uint8))
        with pytest.raises(ValueError):
            FunctionTable(1, 2, np.array([0, 2], dtype=np.uint8))
        with pytest.raises(MalformedTermError):
            induced_table(registry("SC79"), parse_term("x1x3"))

    @given(groupoids3, st.integers(1, 5), st.data())
    @settings(max_examples=40, deadline=None)
    def test_induced_matches_evaluate(self, g, n, data):
        terms = list(enumerate_full_linear_terms(n))
        t = terms[data.draw(st.integers(0, len(terms) - 1))]
        assert tuple(induced_table(g, t).values) == brute_table(g, t)


class TestComposeSplit:
    def test_identity_pair_gives_cayley_table(self):
        g = registry("SC2302")
        idf = FunctionTable.identity(3)
        assert compose_split(idf, idf, [1], g) == induced_table(g, parse_term("x1x2"))

    def test_noncontiguous_positions(self):
        g = registry("SC79")
        idf = FunctionTable.identity(3)
        first = compose_split(FunctionTable.projection(3, 2, 1), idf, [1, 3], g)
        second = compose_split(FunctionTable.projection(3, 2, 2), idf, [1, 3], g)
        for a in itertools.product(range(3), repeat=3):
            # the right factor always reads the complementary position 2
            assert first(*a) == g.op(a[0], a[1])
            assert second(*a) == g.op(a[2], a[1])

    def test_associative_groupoid(self):
        g = registry("SC275")
        idf = FunctionTable.identity(3)
        xy = compose_split(idf, idf, [1], g)
        assert compose_split(xy, idf, [1, 2], g) == compose_split(idf, xy, [1], g)

    @pytest.mark.parametrize("positions", [[], [2, 1], [1, 2, 3], [0], [4]])
    def test_malformed_positions(self, positions):
        idf = FunctionTable.identity(3)
        xy = compose_split(idf, idf, [1], registry("SC79"))
        with pytest.raises(ValueError):
            compose_split(xy, idf, positions, registry("SC79"))

    @given(groupoids3, st.data())
    @settings(max_examples=30, deadline=None)
    def test_matches_term_evaluation(self, g, data):
        terms = list(enumerate_full_linear_terms(4))
        t = terms[data.draw(st.integers(0, len(terms) - 1))]
        left, right = t.left, t.right
        positions = sorted(left.labels())
        rank = {v: i + 1 for i, v in enumerate(positions)}
        rest = sorted(right.labels())
        rank_r = {v: i + 1 for i, v in enumerate(rest)}
        f = induced_table(g, relabel(left, rank))
        h = induced_table(g, relabel(right, rank_r))
        assert compose_split(f, h, positions, g) == induced_table(g, t)


class TestEngines:
    def test_examples(self):
        assert associative_spectrum(registry("SC405"), 8).values == [1, 1, 2, 3, 3, 3, 3, 3]
        assert associative_spectrum(registry("SC79"), 8).values == [1, 1, 2, 4, 7, 12, 20, 33]
        assert ac_spectrum(registry("SC275"), 7).values == [1, 2, 3, 4, 5, 6, 7]
        assert ac_spectrum(registry("SC1066"), 7).values == [1, 1, 3, 7, 15, 31, 63]
        assert ac_spectrum(registry("SC2346"), 7).values == [1, 1, 3, 5, 11, 21, 43]

    def test_associative_groupoids_have_trivial_spectrum(self):
        for g in all_groupoids():
            if g.is_associative():
                assert associative_spectrum(g, 7).values == [1] * 7

    def test_brute_oracle_small(self):
        for name in ("SC79", "SC2302", "SC41", "SC229", "N"):
            g = registry(name)
            for n in range(1, 5):
                assert associative_spectrum(g, n).value(n) == brute_spectrum(g, enumerate_bracketings(n))
                assert ac_spectrum(g, n).value(n) == brute_spectrum(g, enumerate_full_linear_terms(n))

    @given(groupoids3)
    @settings(max_examples=25, deadline=None)
    def test_engines_agree_on_random_groupoids(self, g):
        for kind in ("associative", "ac"):
            assert spectrum(g, kind, 5, "dp").values == spectrum(g, kind, 5, "naive").values

    def test_report_fields(self):
        r = ac_spectrum(registry("SC79"), 4)
        assert r.groupoid == "SC79" and r.kind == "ac" and r.engine == "dp"
        assert len(r.seconds) == len(r.distinct_bytes) == 4
        assert not r.truncated
        assert "seconds" not in r.to_dict() and "seconds" in r.to_dict(timings=True)

    def test_thread_count_does_not_change_results(self, monkeypatch):
        g = registry("SC258")
        one = ac_spectrum(g, 5, threads=1)
        # tiny blocks force many work items through the pool
        monkeypatch.setattr(spectrum_module, "_BLOCK_ENTRIES", 1 << 10)
        four = ac_spectrum(g, 5, threads=4)
        assert one.values == four.values == [1, 2, 12, 96, 880]
        assert one.to_dict() == four.to_dict()

    def test_truncation_keeps_prefix(self):
        r = ac_spectrum(registry("SC229"), 6, max_functions=1000)
        assert r.truncated and r.truncation_reason
        assert r.values == [1, 2, 12, 108]
        r = associative_spectrum(registry("SC229"), 9, max_entries=3**6)
        assert r.truncated and r.values == [1, 1, 2, 5, 14, 42]

    def test_limits(self):
        g = registry("SC79")
        with pytest.raises(SizeLimitError):
            associative_spectrum(g, 11)
        with pytest.raises(SizeLimitError):
            ac_spectrum(g, 7, engine="naive")
        with pytest.raises(SizeLimitError):
            ac_spectrum(g, 0)
        with pytest.raises(ValueError):
            spectrum(g, "other", 3)  # type: ignore[arg-type]
        assert associative_spectrum(registry("SC275"), 11, n_limit=11).values == [1] * 11


class TestSpectrumInvariants:
    @pytest.mark.parametrize("name", sorted(TABLES))
    def test_catalan_bounds_and_commutativity(self, name):
        g = registry(name)
        a = associative_spectrum(g, 8).values
        ac = ac_spectrum(g, 5).values
        assert a[0] == ac[0] == 1
        assert all(1 <= a[n - 1] <= catalan(n - 1) for n in range(1, 9))
        assert all(1 <= ac[n - 1] <= factorial(n) * catalan(n - 1) for n in range(1, 6))
        assert (ac[1] == 1) == g.is_commutative()

    @pytest.mark.parametrize("a, b", ANTI_ISOMORPHIC_PAIRS)
    def test_anti_isomorphic_pairs_share_spectra(self, a, b):
        g, h = registry(a), registry(b)
        assert associative_spectrum(g, 8).values == associative_spectrum(h, 8).values
        assert ac_spectrum(g, 5).values == ac_spectrum(h, 5).values


def _tail_rewrite(t, which):
    d = leftmost_decomposition(t)
    return leftmost_bracketing([d.head, *(standard_variant(s, which) for s in d.tail)])


def _groupoids_satisfying(*labels_any_of: tuple[str, ...]):
    """Groupoids satisfying, for some alternative, all identities of that alternative."""
    pool = all_groupoids() + two_element_groupoids()
    out = []
    for g in pool:
        if any(all(satisfies_identity(g, catalog_identity(lab)) for lab in alt) for alt in labels_any_of):
            out.append(g)
    return out


class TestRewriteSoundness:
    """Terms rewritten into standard forms induce the same function."""

    @pytest.mark.criterion(8)
    def test_tails_to_left_and_right_combs(self):
        gs = _groupoids_satisfying(("7",))
        assert sum(not g.is_associative() for g in gs) >= 5
        for g in gs:
            for n in range(1, 6):
                for t in enumerate_full_linear_terms(n):
                    f = induced_table(g, t)
                    assert f == induced_table(g, _tail_rewrite(t, "R"))
                    assert f == induced_table(g, _tail_rewrite(t, "L"))

    @pytest.mark.criterion(8)
    def test_tails_sorted(self):
        gs = _groupoids_satisfying(("7", "5"), ("7", "2"))
        assert sum(not g.is_associative() for g in gs) >= 3
        for g in gs:
            for n in range(1, 6):
                for t in enumerate_full_linear_terms(n):
                    f = induced_table(g, t)
                    assert f == induced_table(g, _tail_rewrite(t, "R<"))
                    assert f == induced_table(g, _tail_rewrite(t, "L<"))

    @pytest.mark.criterion(8)
    def test_tail_blocks_permute(self):
        gs = _groupoids_satisfying(("3",))
        assert sum(not g.is_associative() for g in gs) >= 5
        for g in gs:
            for n in range(1, 6):
                for t in enumerate_full_linear_terms(n):
                    d = leftmost_decomposition(t)
                    f = induced_table(g, t)
                    for i in range(d.m - 1):
                        tail = list(d.tail)
                        tail[i], tail[i + 1] = tail[i + 1], tail[i]
                        assert f == induced_table(g, leftmost_bracketing([d.head, *tail]))

    @pytest.mark.criterion(8)
    def test_tails_sorted_without_seven(self):
        gs = _groupoids_satisfying(("5", "3"))
        assert sum(not g.is_associative() for g in gs) >= 3
        for g in gs:
            for n in range(1, 6):
                for t in enumerate_full_linear_terms(n):
                    assert induced_table(g, t) == induced_table(g, _tail_rewrite(t, "L<"))

    def test_rewrites_fail_without_hypothesis(self):
        g = registry("SC229")
        assert not satisfies_identity(g, catalog_identity("7"))
        assert any(
            induced_table(g, t) != induced_table(g, _tail_rewrite(t, "R"))
            for t in enumerate_full_linear_terms(4)
        )


def _classes(g, key, n, mirrored=False):
    by_key: dict = defaultdict(set)
    by_fn: dict = defaultdict(set)
    for t in enumerate_full_linear_terms(n):
        k = key(t)
        f = induced_table(g, t).packed
        by_key[k].add(f)
        by_fn[f].add(k)
    return by_key, by_fn


class TestStructuralCharacterisations:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_eggs_determine_functions_on_sc79(self, n):
        by_key, by_fn = _classes(registry("SC79"), egg_partition, n)
        assert all(len(v) == 1 for v in by_key.values())
        assert all(len(v) == 1 for v in by_fn.values())

    @pytest.mark.parametrize("name", ["SC41", "SC96"])
    @pytest.mark.parametrize("n", range(1, 6))
    def test_rooted_partitions(self, name, n):
        by_key, _ = _classes(registry(name), rooted_partition, n)
        assert all(len(v) == 1 for v in by_key.values())
        assert len(by_key) == ac_spectrum(registry(name), n).value(n)

    @pytest.mark.parametrize("name", ["SC262", "SC1812", "SC2446"])
    @pytest.mark.parametrize("n", range(1, 6))
    def test_rooted_ordered_partitions(self, name, n):
        by_key, _ = _classes(registry(name), rooted_ordered_partition, n)
        assert all(len(v) == 1 for v in by_key.values())
        assert len(by_key) == ac_spectrum(registry(name), n).value(n)


class TestDepthClasses:
    def test_examples(self):
        assert count_depth_classes(DepthClassQuery(5, 2, "right", "bracketings")) == 8
        assert count_depth_classes(DepthClassQuery(3, 2, "full", "full-linear")) == 3
        for scope in ("bracketings", "full-linear"):
            for n in range(1, 6):
                assert count_depth_classes(DepthClassQuery(n, 1, "full", scope)) == 1

    @pytest.mark.parametrize("kind", ["full", "left", "right", "leftmost-left"])
    @pytest.mark.parametrize("k", [2, 3])
    @pytest.mark.parametrize("n", range(1, 6))
    def test_fast_matches_enumeration(self, kind, k, n):
        q = DepthClassQuery(n, k, kind, "full-linear")
        assert count_depth_classes(q, "fast") == count_depth_classes(q, "enumerate")

    def test_large_modulus_is_catalan(self):
        for n in range(1, 10):
            assert count_depth_classes(DepthClassQuery(n, 50, "full", "bracketings")) == catalan(n - 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            DepthClassQuery(0, 2)
        with pytest.raises(ValueError):
            DepthClassQuery(3, 2, "diagonal")
        with pytest.raises(SizeLimitError):
            count_depth_classes(DepthClassQuery(8, 2, "full", "full-linear"))

    def test_right_depth_mod_three_on_a_weighted_sum(self):
        # a*b = a + 2b on Z/7: 2 has order 3, so term functions are governed by right depth mod 3
        z7 = Groupoid(tuple(tuple((a + 2 * b) % 7 for b in range(7)) for a in range(7)))
        for n in range(1, 5):
            q = DepthClassQuery(n, 3, "right", "full-linear")
            assert ac_spectrum(z7, n).value(n) == count_depth_classes(q)
