import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_avoids, partial_words, periodic_words, sets
from unavoid.words import (
    AlphabetMismatch,
    HOLE,
    LengthMismatch,
    PartialWord,
    PeriodicWord,
    SetFileError,
    UniformSet,
    WordError,
    avoids_set,
    build_X0,
    compatible,
    meets,
    parse_set_text,
    rename_letters,
    rename_periodic,
    word,
)


def test_parse_roundtrip():
    w = word("aa--b")
    assert w.symbols == (0, 0, HOLE, HOLE, 1)
    assert str(w) == "aa--b"
    assert w.holes == 2 and w.defined == (0, 1, 4)


def test_parse_accepts_diamond():
    assert word("a⋄⋄b") == word("a--b")


@pytest.mark.parametrize(
    "u,v,expected",
    [("aa-cb", "aa--b", True), ("---", "abc", True), ("ab", "ac", False)],
)
def test_compatible_examples(u, v, expected):
    assert compatible(word(u), word(v)) is expected


def test_compatible_length_mismatch():
    with pytest.raises(LengthMismatch):
        compatible(word("ab"), word("abc"))


def test_strengthen_weaken_examples():
    assert word("aa--b").strengthen(2, 2) == word("aac-b")
    assert word("aa--b").weaken(1) == word("a---b")
    with pytest.raises(WordError):
        word("ab").strengthen(0, 1)
    with pytest.raises(WordError):
        word("a-").weaken(1)


@given(partial_words(max_size=8))
def test_strengthen_then_weaken_is_identity(w):
    for pos in w.hole_positions:
        assert w.strengthen(pos, 1).weaken(pos) == w


@given(partial_words(max_size=8), partial_words(max_size=8))
def test_compatible_symmetric(u, v):
    if len(u) == len(v):
        assert compatible(u, v) == compatible(v, u)


@given(partial_words(max_size=8))
def test_weakening_relation(w):
    for pos, _ in w.defined_items:
        assert w.weaken(pos).is_weakening_of(w)
        assert w.weaken(pos).weakens_factor_of(PartialWord((0,) + w.symbols + (1,)))


@pytest.mark.parametrize(
    "base,u,expected",
    [("a", "a--a", 0), ("aaacccbbb", "a--b", None), ("ab", "a--a", None), ("ab", "a-a", 0), ("ab", "b-b", 1)],
)
def test_meets_examples(base, u, expected):
    assert meets(PeriodicWord.parse(base, 3), word(u)) == expected


@given(periodic_words(), partial_words(max_size=12))
def test_meets_smallest_offset_matches_unrolled(w, u):
    text = [w[i] for i in range(w.period + len(u))]
    hits = [i for i in range(w.period) if all(s == HOLE or text[i + j] == s for j, s in enumerate(u))]
    assert meets(w, u) == (hits[0] if hits else None)


@given(periodic_words(), sets(k=3, max_len=7))
def test_avoids_set_matches_unrolled(w, X):
    assert avoids_set(w, X) == brute_avoids(w, X)


@given(periodic_words(), st.integers(0, 20))
def test_avoidance_rotation_invariant(w, r):
    X = UniformSet(["a-a", "bc", "c--b"], 3)
    assert avoids_set(w, X) == avoids_set(w.rotate(r), X)


def test_avoids_set_examples():
    seven = UniformSet(["a--a", "b--b", "c--c", "a--b", "c--a", "b--c"], 3)
    assert avoids_set(PeriodicWord.parse("aaacccbbb", 3), seven)
    assert not avoids_set(PeriodicWord.parse("a", 2), build_X0(2, 4))
    assert avoids_set(PeriodicWord.parse("aaabbb", 2), UniformSet(["a--a", "b--b"], 2))


def test_avoids_set_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        avoids_set(PeriodicWord.parse("ab", 2), build_X0(3, 4))


def test_build_X0():
    assert build_X0(2, 4) == UniformSet(["a--a", "b--b", "a--b"], 2)
    X = build_X0(3, 6)
    assert len(X) == 6 and X.uniform_length == 6
    assert set(map(str, X)) == {"a----a", "b----b", "c----c", "a----b", "a----c", "b----c"}
    assert build_X0(1, 5) == UniformSet(["a---a"], 1)


def test_rename_letters():
    X = build_X0(2, 4)
    assert rename_letters(X, [1, 0]) == UniformSet(["b--b", "a--a", "b--a"], 2)
    assert rename_letters(X, [0, 1]) == X
    with pytest.raises(WordError):
        rename_letters(X, [0, 0])


def test_renaming_maps_eight_sets_into_two_classes():
    # each of the eight choices of orientation is X0 under some renaming, or its one cyclic variant
    from itertools import permutations, product

    m = 4
    base = {"aa": "a--a", "bb": "b--b", "cc": "c--c"}
    choices = [("a--b", "b--a"), ("a--c", "c--a"), ("b--c", "c--b")]
    classes = []
    for pick in product(*choices):
        X = UniformSet(list(base.values()) + list(pick), 3)
        orbit = {rename_letters(X, p) for p in permutations(range(3))}
        if not any(c & orbit for c in classes):
            classes.append(orbit)
        else:
            next(c for c in classes if c & orbit).update(orbit)
    assert len(classes) == 2
    assert sorted(len(c) for c in classes) == [2, 6]
    assert build_X0(3, m) in max(classes, key=len)


def test_rename_periodic_preserves_avoidance():
    X = UniformSet(["a--a", "b--b", "c--c", "a--b", "c--a", "b--c"], 3)
    w = PeriodicWord.parse("aaacccbbb", 3)
    perm = [1, 2, 0]
    assert avoids_set(rename_periodic(w, perm), rename_letters(X, perm))


def test_primitive():
    assert str(PeriodicWord.parse("abab", 2).primitive()) == "ab"
    assert str(PeriodicWord.parse("aab", 2).primitive()) == "aab"


def test_uniform_set_order_and_equality():
    X = UniformSet(["b-b", "a-a", "a-a"])
    assert len(X) == 2 and [str(w) for w in X] == ["b-b", "a-a"]
    assert X == UniformSet(["a-a", "b-b"], 2)
    assert X.replace(["a-a"], ["ab"]) == UniformSet(["b-b", "ab"], 2)
    with pytest.raises(WordError):
        X.replace(["cc"], [])


def test_trivial():
    assert UniformSet(["--"], 2).is_trivial
    assert not build_X0(2, 4).is_trivial


def test_parse_set_text():
    X = parse_set_text("# comment\nk=3\na--a\n\nb--c\n")
    assert X.k == 3 and len(X) == 2
    with pytest.raises(SetFileError) as e:
        parse_set_text("k=2\nab\nac\n")
    assert e.value.lineno == 3
    with pytest.raises(SetFileError):
        parse_set_text("a-x?\n")
    with pytest.raises(SetFileError):
        parse_set_text("# nothing\n")


@given(sets())
def test_set_text_roundtrip(X):
    assert parse_set_text(X.to_text()) == X
