import random

import pytest

from incalg.preorder_core import (
    PreorderError,
    close_relations,
    load_preorder_text,
    preorder_descriptor,
    preorder_to_text,
)


def test_close_relations_transitivity(chain3):
    assert chain3.leq("a", "c")
    assert chain3.lt("a", "c")
    assert not chain3.leq("c", "a")
    assert chain3.leq("b", "b")


def test_close_relations_rejects_bad_labels():
    with pytest.raises(PreorderError):
        close_relations(["a", "a"], [])
    with pytest.raises(PreorderError):
        close_relations(["a", "b c"], [])
    with pytest.raises(PreorderError):
        close_relations(["a", "#b"], [])
    with pytest.raises(PreorderError):
        close_relations([], [])
    with pytest.raises(PreorderError):
        close_relations(["a"], [("a", "z")])


def test_interval_and_comparable_pairs(chain3):
    assert chain3.interval("a", "c") == ("a", "b", "c")
    assert chain3.interval("a", "b") == ("a", "b")
    pairs = chain3.comparable_pairs()
    assert ("a", "a") in pairs
    assert ("a", "c") in pairs
    assert ("c", "a") not in pairs
    assert len(pairs) == 6


def test_equivalence_and_quotient(preorder_21):
    assert preorder_21.sim("a1", "a2")
    assert not preorder_21.sim("a1", "b1")
    q = preorder_21.quotient()
    assert q.classes == (("a1", "a2"), ("b1",))
    assert q.reps == ("a1", "b1")
    assert q.rep("a2") == "a1"
    assert q.lt("a2", "b1")
    assert q.strict_pairs() == [("a1", "b1")]


def test_quotient_of_poset_is_identity(crown):
    q = crown.quotient()
    assert q.n_classes == len(crown.elements)
    assert q.as_preorder() == crown


def test_quotient_interval_within_class():
    """Inside one equivalence class every interval is the whole class."""
    p = close_relations("xyz", [("x", "y"), ("y", "z"), ("z", "x")])
    assert p.interval("x", "y") == ("x", "y", "z")
    q = p.quotient()
    assert q.n_classes == 1
    assert q.height() == 0


def test_quotient_classwise_strictness(preorder_21):
    # a strict class relation holds between every pair of members
    for s in ("a1", "a2"):
        assert preorder_21.lt(s, "b1")
        assert not preorder_21.leq("b1", s)


def test_height_and_interval_length(chain3, crown):
    assert chain3.quotient().height() == 2
    assert crown.quotient().height() == 1
    assert chain3.quotient().interval_length("a", "c") == 2
    with pytest.raises(PreorderError):
        crown.quotient().interval_length("c", "a")


def test_connected_components():
    p = close_relations("abcd", [("a", "b")])
    q = p.quotient()
    assert q.connected_components() == [("a", "b"), ("c",), ("d",)]
    assert not q.is_connected()


def test_load_preorder_text_round_trip(crown):
    text = preorder_to_text(crown)
    again = load_preorder_text(text)
    assert again == crown
    assert preorder_to_text(again) == text


def test_load_preorder_text_comments_and_errors():
    p = load_preorder_text("# header\nelements a b  # trailing\nrel a b\n\n")
    assert p.lt("a", "b")
    with pytest.raises(PreorderError) as err:
        load_preorder_text("elements a b\nrel a\n")
    assert "line 2" in str(err.value)
    with pytest.raises(PreorderError) as err:
        load_preorder_text("elements a b\nrel a z\n")
    assert "z" in str(err.value)
    with pytest.raises(PreorderError):
        load_preorder_text("elements a b\nelements c\n")
    with pytest.raises(PreorderError):
        load_preorder_text("rel a b\n")
    with pytest.raises(PreorderError):
        load_preorder_text("elements a b\nfoo a b\n")


def test_descriptor_is_one_line(crown, preorder_21):
    for p in (crown, preorder_21):
        d = preorder_descriptor(p)
        assert "\n" not in d
        assert d.startswith("elements")


def test_random_closure_is_transitive(seed=414):
    rng = random.Random(seed)
    labels = ["p", "q", "r", "s", "t"]
    for _ in range(100):
        gens = [
            (labels[rng.randrange(5)], labels[rng.randrange(5)]) for _ in range(6)
        ]
        p = close_relations(labels, gens)
        for x in labels:
            assert p.leq(x, x)
            for y in labels:
                for z in labels:
                    if p.leq(x, y) and p.leq(y, z):
                        assert p.leq(x, z)


def test_quotient_equivalence_classes_partition(seed=98):
    rng = random.Random(seed)
    labels = ["u", "v", "w", "x"]
    for _ in range(60):
        gens = [
            (labels[rng.randrange(4)], labels[rng.randrange(4)]) for _ in range(5)
        ]
        q = close_relations(labels, gens).quotient()
        seen = [lab for cls in q.classes for lab in cls]
        assert sorted(seen) == sorted(labels)
