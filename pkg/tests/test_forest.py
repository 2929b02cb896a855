import json

import pytest

from stirling_forests.forest import (
    Forest,
    ForestInvariantError,
    ForestSyntaxError,
    LabeledTree,
    NodeClass,
    classify_label,
    enumerate_forests,
    enumerate_trees,
    forest_class,
    forest_stats,
    forest_to_json,
    in_bar,
    label_sets,
    parse_forest,
    removable_labels,
    serialize_forest,
    tree_from_json,
    tree_to_json,
    validate_forest,
)
from stirling_forests.stirling import LimitError, count_k_stirling

FIG1 = "1[10;;9] 2[;;3] 4[5[;6;],8;;7]"
FIG4 = "1[;3,7;] 2[4[;;6];;5] 8"

BAR_3_2 = [
    "1 2 3",
    "1[2;] 3",
    "1[3;] 2",
    "1[;3] 2",
    "1[;2[3;]]",
    "1[;2[;3]]",
    "1[;2] 3",
    "1 2[;3]",
    "1[;2,3]",
]
HAT_3_2 = [
    "1 2[3;]",
    "1[2[3;];]",
    "1[2[;3];]",
    "1[3;2]",
    "1[2,3;]",
    "1[2;3]",
]


class TestParseSerialize:
    def test_fig4_roundtrip(self):
        f = parse_forest(FIG4, 3)
        assert serialize_forest(f) == FIG4
        assert len(f.trees) == 3
        assert f.trees[2] == LabeledTree(8)

    def test_singleton(self):
        f = parse_forest("5", 2)
        assert f.trees == (LabeledTree(5),)

    def test_duplicate_label_rejected(self):
        with pytest.raises(ForestInvariantError) as err:
            parse_forest("1[2;1]", 2)
        assert err.value.label == 1

    def test_whitespace_tolerated(self):
        assert serialize_forest(parse_forest("  1[ ;2 ]   3 ", 2)) == "1[;2] 3"

    def test_syntax_error_carries_position(self):
        with pytest.raises(ForestSyntaxError) as err:
            parse_forest("1[2;", 2)
        assert err.value.position == 4

    def test_wrong_slot_count(self):
        with pytest.raises(ForestSyntaxError):
            parse_forest("1[2]", 2)

    @pytest.mark.parametrize("k,n", [(1, 4), (2, 4), (3, 3)])
    def test_roundtrip_over_enumeration(self, k, n):
        for f in enumerate_forests(range(1, n + 1), k):
            assert parse_forest(serialize_forest(f), k) == f

    def test_json_roundtrip(self):
        f = parse_forest(FIG1, 3)
        assert [tree_from_json(json.loads(json.dumps(o))) for o in forest_to_json(f)] == list(
            f.trees
        )
        assert "slots" not in tree_to_json(LabeledTree(5))


class TestValidate:
    def test_valid(self):
        assert validate_forest(parse_forest("1[;2,3]", 2)) == []

    def test_slot_not_increasing(self):
        f = parse_forest("1[;3,2]", 2, validate=False)
        assert any("not increasing" in msg for _, msg in validate_forest(f))

    def test_roots_not_increasing(self):
        f = parse_forest("2[;3] 1", 2, validate=False)
        assert any("roots not increasing" in msg for _, msg in validate_forest(f))

    def test_unpruned_rejected(self):
        f = Forest(2, (LabeledTree(1, ((), ())),))
        assert any("pruned" in msg for _, msg in validate_forest(f))

    def test_path_not_increasing(self):
        f = parse_forest("2[1;]", 2, validate=False)
        assert any("path" in msg for _, msg in validate_forest(f))


class TestClassification:
    def test_fig1_old_and_young(self):
        f = parse_forest(FIG1, 3)
        assert classify_label(f, 6) is NodeClass.OLD_LEAF
        assert classify_label(f, 8) is NodeClass.OLD_LEAF
        assert classify_label(f, 5) is NodeClass.YOUNG_INTERNAL
        assert classify_label(f, 7) is NodeClass.YOUNG_LEAF
        assert classify_label(f, 4) is NodeClass.ROOT
        assert classify_label(f, 10) is NodeClass.OLD_LEAF

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            classify_label(parse_forest("1", 2), 7)


class TestStats:
    def test_all_singletons(self):
        st = forest_stats(parse_forest("1 2 3", 2))
        assert st.as_dict() == {
            "lleaf": 3, "si": 3, "oleaf": 0, "yleaf": 0,
            "oint": 0, "lint": 0, "rleaf": 0,
        }

    def test_fig4(self):
        st = forest_stats(parse_forest(FIG4, 3))
        assert st.lleaf == 5
        assert st.si == 1

    def test_chain(self):
        st = forest_stats(parse_forest("1[2[3;];]", 2))
        assert st.as_dict() == {
            "lleaf": 1, "si": 0, "oleaf": 1, "yleaf": 0,
            "oint": 1, "lint": 2, "rleaf": 0,
        }

    @pytest.mark.parametrize("k,n", [(1, 5), (2, 5), (3, 4)])
    def test_leaf_split_relation(self, k, n):
        for f in enumerate_forests(range(1, n + 1), k):
            st = forest_stats(f)
            assert st.oleaf + st.yleaf + st.si == st.lleaf


class TestLabelSets:
    def test_starred_keeps_non_final_singleton(self):
        sets = label_sets(parse_forest("1 2[3;]", 2))
        assert sets["Si"] == sets["Si_star"] == {1}
        assert sets["Oint"] == sets["Oint_star"] == set()
        assert sets["Oleaf"] == {3}

    def test_final_singleton_removed(self):
        sets = label_sets(parse_forest("1[2;] 3", 2))
        assert sets["Si"] == {3}
        assert sets["Si_star"] == set()
        assert sets["Oleaf"] == {2}

    def test_old_internal_grand_child_of_last_root_removed(self):
        sets = label_sets(parse_forest("1[;2[3;]]", 2))
        assert sets["Oint"] == {2}
        assert sets["Oint_star"] == set()


class TestRemovable:
    def test_fig1(self):
        rem = removable_labels(parse_forest(FIG1, 3))
        assert rem == {"old": {3}, "young": set()}

    def test_removable_young_example(self):
        # the young leaf 5 qualifies, 7 does not (pulling 7 down leaves 6
        # behind in the middle slot)
        for first_tree in ("1[3;2;]", "1[2;3;]"):
            rem = removable_labels(parse_forest(f"{first_tree} 4[;6,8;5,7]", 3))
            assert rem["young"] == {5}
            assert rem["old"] == set()

    def test_simple_old(self):
        assert removable_labels(parse_forest("1[;2] 3", 2))["old"] == {2}

    def test_blocked_by_next_root(self):
        assert removable_labels(parse_forest("1[;3] 2", 2)) == {"old": set(), "young": set()}

    @pytest.mark.parametrize("k,n", [(1, 5), (2, 5), (3, 4)])
    def test_definitional_young_matches_derived_criterion(self, k, n):
        # derived form: in the last slot of the last root, with every tree of
        # the earlier slots rooted above it
        for f in enumerate_forests(range(1, n + 1), k):
            expected = set()
            if f.trees and f.trees[-1].slots is not None:
                last = f.trees[-1]
                grand = list(last.grand_children())
                top = max(s.label for s in grand)
                for s in last.slots[-1]:
                    if s.slots is None and s.label != top and all(
                        t.label > s.label
                        for slot in last.slots[: k - 1]
                        for t in slot
                    ):
                        expected.add(s.label)
            assert removable_labels(f)["young"] == expected


class TestClassesAndEnumeration:
    def test_fig2_all_bar(self):
        for text in BAR_3_2:
            assert forest_class(parse_forest(text, 2))["in_bar"] is True

    def test_fig3_all_hat(self):
        for text in HAT_3_2:
            assert forest_class(parse_forest(text, 2))["in_bar"] is False

    def test_star_excludes_young_leaves(self):
        cls = forest_class(parse_forest("1[;2,3]", 2))
        assert cls == {"in_bar": True, "in_star": False}

    def test_bar_hat_split_at_3_2(self):
        forests = list(enumerate_forests([1, 2, 3], 2))
        assert len(forests) == 15
        texts = {serialize_forest(f) for f in forests}
        assert texts == set(BAR_3_2) | set(HAT_3_2)
        assert sum(1 for f in forests if in_bar(f)) == 9

    def test_singleton_label_set(self):
        assert list(enumerate_forests([1], 3)) == [Forest(3, (LabeledTree(1),))]

    def test_count_3_3(self):
        assert sum(1 for _ in enumerate_forests([1, 2, 3], 3)) == 28

    @pytest.mark.parametrize("k,n", [(1, 5), (2, 4), (3, 4)])
    def test_counts_and_validity(self, k, n):
        forests = list(enumerate_forests(range(1, n + 1), k))
        assert len(forests) == count_k_stirling(n, k)
        assert len(set(forests)) == len(forests)
        for f in forests:
            assert validate_forest(f) == []

    def test_trees_are_one_block_forests(self):
        trees = set(enumerate_trees([1, 2, 3], 2))
        singles = {
            f.trees[0] for f in enumerate_forests([1, 2, 3], 2) if len(f.trees) == 1
        }
        assert trees == singles

    def test_guard(self):
        with pytest.raises(LimitError):
            next(enumerate_forests(range(1, 9), 2, max_objects=10**5))

    def test_general_label_sets(self):
        forests = list(enumerate_forests([2, 5, 9], 2))
        assert len(forests) == 15
        assert all(sorted(f.labels()) == [2, 5, 9] for f in forests)
