"""Cycle enumeration, canonical forms, and classification matching."""

import pytest
from hypothesis import given, strategies as st

from oracles import brute_force_cycles, canonical_form
from pancakes.cycles import (
    FAMILIES,
    UNMATCHED,
    CensusReport,
    Cycle,
    CycleFamily,
    FamilyMatch,
    InfeasibleSizeError,
    UnsupportedLengthError,
    canonicalize,
    enumerate_cycles,
    families_for,
    match_form,
    verify_classification,
)
from pancakes.graphs import GraphKind, PancakeGraph

PLAIN = GraphKind.PLAIN
BURNT = GraphKind.BURNT


def graph(kind, n):
    return PancakeGraph(kind, n)


label_sequences = st.lists(
    st.integers(min_value=1, max_value=9), min_size=1, max_size=12
).map(tuple)


class TestCanonicalize:
    def test_rotates_to_maximal(self):
        assert canonicalize((2, 3, 2, 3, 2, 3)) == (3, 2, 3, 2, 3, 2)

    def test_already_maximal(self):
        assert canonicalize((3, 2, 3, 2, 3, 2)) == (3, 2, 3, 2, 3, 2)

    def test_rotation_invariant_sequence(self):
        assert canonicalize((4, 1, 4, 1, 4, 1, 4, 1)) == (4, 1, 4, 1, 4, 1, 4, 1)

    def test_reversal_needed(self):
        # no rotation of the input equals the canonical form; its reversal's does
        assert canonicalize((5, 2, 3, 4)) == (5, 4, 3, 2)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            canonicalize(())

    def test_matches_independent_oracle(self):
        for labels in [(2, 3, 2, 3, 2, 3), (4, 2, 4, 3, 1), (1, 2, 3), (7,)]:
            assert canonicalize(labels) == canonical_form(labels)

    @given(label_sequences)
    def test_idempotent(self, labels):
        once = canonicalize(labels)
        assert canonicalize(once) == once

    @given(label_sequences, st.integers(min_value=0, max_value=11))
    def test_rotation_invariant(self, labels, s):
        s %= len(labels)
        rotated = labels[s:] + labels[:s]
        assert canonicalize(rotated) == canonicalize(labels)

    @given(label_sequences)
    def test_reversal_invariant(self, labels):
        assert canonicalize(labels[::-1]) == canonicalize(labels)

    @given(label_sequences)
    def test_result_is_a_rotation_of_input_or_reversal(self, labels):
        c = canonicalize(labels)
        doubled = labels + labels
        rev = labels[::-1]
        assert any(
            doubled[r : r + len(labels)] == c for r in range(len(labels))
        ) or any((rev + rev)[r : r + len(labels)] == c for r in range(len(labels)))


class TestEnumerate:
    def test_p3_contains_exactly_its_own_six_cycle(self):
        cycles = enumerate_cycles(graph(PLAIN, 3), 6)
        assert len(cycles) == 1
        assert cycles[0].labels == (3, 2, 3, 2, 3, 2)
        assert cycles[0].ranks == (0, 1, 2, 3, 4, 5)  # all of P_3

    def test_bp2_is_a_single_eight_cycle(self):
        cycles = enumerate_cycles(graph(BURNT, 2), 8)
        assert len(cycles) == 1
        assert cycles[0].labels == (2, 1, 2, 1, 2, 1, 2, 1)
        assert cycles[0].ranks == tuple(range(8))

    def test_p3_has_no_seven_cycles(self):
        assert enumerate_cycles(graph(PLAIN, 3), 7) == []

    @pytest.mark.parametrize(
        "kind,n,length",
        [
            (PLAIN, 3, 6),
            (PLAIN, 3, 7),
            (PLAIN, 4, 6),
            (PLAIN, 4, 7),
            (PLAIN, 4, 8),
            (PLAIN, 4, 9),
            (PLAIN, 5, 6),
            (PLAIN, 5, 7),
            (PLAIN, 5, 8),
            (BURNT, 2, 8),
            (BURNT, 2, 9),
            (BURNT, 3, 8),
            (BURNT, 3, 9),
            (BURNT, 4, 8),
        ],
    )
    def test_matches_exhaustive_label_walk_oracle(self, kind, n, length):
        g = graph(kind, n)
        cycles = enumerate_cycles(g, length)
        keyed = {
            (c.labels, tuple(sorted(g.unrank(r).entries for r in c.ranks)))
            for c in cycles
        }
        assert len(keyed) == len(cycles)
        assert keyed == brute_force_cycles(n, kind is BURNT, length)

    def test_girth_no_short_cycles(self):
        for n in (3, 4, 5):
            for length in (3, 4, 5):
                assert enumerate_cycles(graph(PLAIN, n), length) == []
        for n in (2, 3, 4):
            for length in (3, 4, 5, 6, 7):
                assert enumerate_cycles(graph(BURNT, n), length) == []

    def test_output_sorted_and_deterministic(self):
        first = enumerate_cycles(graph(PLAIN, 4), 8)
        second = enumerate_cycles(graph(PLAIN, 4), 8)
        assert first == second
        assert first == sorted(first, key=lambda c: (c.labels, c.ranks))

    def test_every_cycle_passes_through_identity(self):
        for c in enumerate_cycles(graph(PLAIN, 4), 9):
            assert c.ranks[0] == 0
            assert len(c.ranks) == 9 == c.length

    def test_length_bounds(self):
        with pytest.raises(UnsupportedLengthError):
            enumerate_cycles(graph(PLAIN, 4), 2)
        with pytest.raises(UnsupportedLengthError):
            enumerate_cycles(graph(PLAIN, 4), 13)

    def test_node_budget_refusal(self):
        with pytest.raises(InfeasibleSizeError, match="budget"):
            enumerate_cycles(graph(PLAIN, 10), 12, node_budget=10_000)

    def test_degenerate_graphs_have_no_cycles(self):
        assert enumerate_cycles(graph(PLAIN, 2), 6) == []
        assert enumerate_cycles(graph(BURNT, 1), 4) == []


class TestFamilies:
    def test_ids_and_lengths(self):
        by_length = {}
        for fam in FAMILIES:
            by_length.setdefault((fam.kind, fam.length), []).append(fam.id)
        assert by_length[(PLAIN, 6)] == [1]
        assert by_length[(PLAIN, 7)] == [2]
        assert by_length[(PLAIN, 8)] == list(range(3, 11))
        assert by_length[(PLAIN, 9)] == list(range(11, 21))
        assert by_length[(BURNT, 8)] == list(range(23, 27))
        assert by_length[(BURNT, 9)] == [27, 28]

    def test_families_for_selects_and_orders(self):
        fams = families_for(PLAIN, 8)
        assert [f.id for f in fams] == list(range(3, 11))
        with pytest.raises(UnsupportedLengthError):
            families_for(PLAIN, 10)
        with pytest.raises(UnsupportedLengthError):
            families_for(BURNT, 6)

    def test_every_instance_traces_a_simple_cycle(self):
        for fam in FAMILIES:
            for params in fam.all_instances(7):
                labels = fam.build(**params)
                assert len(labels) == fam.length, (fam.id, params)
                g = graph(fam.kind, max(labels))
                v = g.identity
                seen = {v}
                for lab in labels[:-1]:
                    v = g.apply(v, lab)
                    assert v not in seen, (fam.id, params)
                    seen.add(v)
                assert g.apply(v, labels[-1]) == g.identity, (fam.id, params)

    def test_instances_are_injective_within_each_family(self):
        # raw template sequences: canonical forms may legitimately coincide
        # for symmetric parameter swaps that rotate into the same cycle
        for fam in FAMILIES:
            seen = {}
            for params in fam.all_instances(6):
                labels = fam.build(**params)
                key = tuple(sorted(params.items()))
                assert labels not in seen, (fam.id, key, seen[labels])
                seen[labels] = key

    def test_largest_label_is_k(self):
        for fam in FAMILIES:
            for params in fam.all_instances(7):
                labels = fam.build(**params)
                k = params.get("k")
                if k is not None:
                    assert max(labels) == k, (fam.id, params)


class TestMatchForm:
    def test_plain_six_cycle(self):
        assert match_form((3, 2, 3, 2, 3, 2), PLAIN) == FamilyMatch(1, ())

    def test_plain_seven_cycle(self):
        m = match_form((4, 3, 4, 3, 2, 4, 2), PLAIN)
        assert m == FamilyMatch(2, (("k", 4),))

    def test_burnt_alternating(self):
        m = match_form((3, 1, 3, 1, 3, 1, 3, 1), BURNT)
        assert m == FamilyMatch(26, (("k", 3),))

    def test_input_is_canonicalized_first(self):
        assert match_form((2, 3, 2, 3, 2, 3), PLAIN) == FamilyMatch(1, ())

    def test_unmatched_form(self):
        assert match_form((5, 2, 5, 2, 5, 2), PLAIN) is UNMATCHED

    def test_unmatched_is_a_singleton(self):
        m = match_form((5, 2, 5, 2, 5, 2), PLAIN)
        assert m is UNMATCHED and repr(m) == "UNMATCHED"

    def test_unsupported_lengths(self):
        with pytest.raises(UnsupportedLengthError):
            match_form((2, 3, 2, 3, 2), PLAIN)
        with pytest.raises(UnsupportedLengthError):
            match_form((2, 1, 2, 1, 2, 1), BURNT)

    def test_matched_instance_reproduces_form(self):
        # every form enumerated in moderate graphs round-trips through its match
        for kind, n, length in [(PLAIN, 5, 8), (PLAIN, 5, 9), (BURNT, 4, 8), (BURNT, 4, 9)]:
            g = graph(kind, n)
            for c in enumerate_cycles(g, length):
                m = match_form(c.labels, kind)
                assert m is not UNMATCHED, c.labels
                fam = next(f for f in FAMILIES if f.id == m.family_id)
                assert canonicalize(fam.build(**dict(m.params))) == c.labels

    def test_nine_cycle_written_in_non_maximal_rotation(self):
        # a burnt 9-cycle template instance whose raw sequence is not its own
        # canonical form still matches its family
        fam27 = next(f for f in FAMILIES if f.id == 27)
        raw = fam27.build(i=2, j=1, k=4)
        form = canonicalize(raw)
        assert form != raw
        m = match_form(form, BURNT)
        assert m is not UNMATCHED
        assert m.family_id in (27, 28)


class TestVerifyClassification:
    @pytest.mark.parametrize(
        "kind,n,length",
        [(PLAIN, 4, 6), (PLAIN, 4, 7), (PLAIN, 4, 8), (PLAIN, 4, 9),
         (PLAIN, 5, 6), (PLAIN, 5, 7), (PLAIN, 5, 8), (PLAIN, 5, 9),
         (BURNT, 2, 8), (BURNT, 3, 8), (BURNT, 4, 8),
         (BURNT, 3, 9), (BURNT, 4, 9)],
    )
    def test_zero_unmatched(self, kind, n, length):
        report = verify_classification(graph(kind, n), length)
        assert report.ok
        assert report.unmatched == ()
        assert report.total == report.matched_total

    def test_seven_cycle_census_instances(self):
        report = verify_classification(graph(PLAIN, 5), 7)
        assert set(report.per_family) == {2}
        assert report.per_family[2].instances == ((("k", 4),), (("k", 5),))

    def test_burnt_eight_cycle_census(self):
        report = verify_classification(graph(BURNT, 3), 8)
        assert report.total == 6
        assert {fid: t.count for fid, t in report.per_family.items()} == {
            23: 2, 25: 2, 26: 2,
        }

    def test_burnt_nine_cycle_census(self):
        report = verify_classification(graph(BURNT, 4), 9)
        assert report.total == 48
        assert {fid: t.count for fid, t in report.per_family.items()} == {
            27: 36, 28: 12,
        }

    def test_plain_eight_cycle_forms_match_instantiations(self):
        found = {c.labels for c in enumerate_cycles(graph(PLAIN, 4), 8)}
        expected = set()
        for fam in families_for(PLAIN, 8):
            for params in fam.all_instances(4):
                expected.add(canonicalize(fam.build(**params)))
        assert found == expected
        # the fixed all-max-alternating family is present
        assert (4, 3, 4, 3, 4, 3, 4, 3) in found

    def test_report_fields(self):
        report = verify_classification(graph(BURNT, 2), 8)
        assert report.kind is BURNT and report.n == 2 and report.length == 8
        assert report.total == 1
        assert report.per_family == {26: report.per_family[26]}
        assert report.per_family[26].count == 1
        assert report.per_family[26].instances == ((("k", 2),),)

    def test_empty_census_is_ok(self):
        report = verify_classification(graph(BURNT, 2), 9)
        assert report.total == 0 and report.ok and report.per_family == {}
