import pytest
from hypothesis import given, strategies as st

from symworld.core import (
    Action, ActionSet, Observation, Origin, canonicalize, normalize_score, split_of, split_seeds,
)


@pytest.mark.parametrize("raw, expected", [
    ("take 20 apples", "take 20 apples"),
    ("  Take  20\tApples ", "take 20 apples"),
    ("`read map`", "read map"),
    ("'put 56 apples in box'.", "put 56 apples in box"),
    ('"Next step to Pantry!"', "next step to pantry"),
])
def test_canonicalize(raw, expected):
    assert canonicalize(raw) == expected


@given(st.text())
def test_canonicalize_is_idempotent(s):
    once = canonicalize(s)
    assert canonicalize(once) == once


def test_action_rejects_non_canonical_text():
    with pytest.raises(ValueError):
        Action("Take coin")
    with pytest.raises(ValueError):
        Action("")


def test_action_set_union_keeps_order_and_origin():
    s = ActionSet.union(["look around", "read map"], ["next step to pantry"])
    assert s.texts() == ["look around", "read map", "next step to pantry"]
    assert [a.origin for a in s] == [Origin.ENVIRONMENT, Origin.ENVIRONMENT, Origin.MODULE]
    assert "read map" in s and Action("read map") in s
    assert s.get("frobnicate") is None


def test_action_set_refuses_duplicates():
    with pytest.raises(ValueError):
        ActionSet.union(["sort ascending"], ["sort ascending"])


def test_observation_items_must_appear_in_text():
    Observation("You see 25 g of oak.", items=("25 g of oak",))
    with pytest.raises(ValueError):
        Observation("You see nothing.", items=("25 g of oak",))


def test_normalize_score():
    assert normalize_score(0, 4) == 0.0
    assert normalize_score(4, 4) == 1.0
    assert normalize_score(3, 6) == 0.5
    assert normalize_score(9, 6) == 1.0
    with pytest.raises(ValueError):
        normalize_score(-1, 2)


def test_splits_are_disjoint():
    assert split_of(0) == "train" and split_of(999) == "train"
    assert split_of(1000) == "dev" and split_of(2000) == "test"
    assert split_of(3000) is None
    assert split_seeds("test", 3) == [2000, 2001, 2002]
    assert split_seeds("dev", 2, offset=5) == [1005, 1006]


def test_split_seeds_warn_past_range():
    with pytest.warns(UserWarning):
        split_seeds("train", 5, offset=998)
