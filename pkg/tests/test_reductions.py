import random

import pytest
from hypothesis import given

from conftest import sets
from unavoid import reductions as R
from unavoid.decider import decide_exact
from unavoid.suites import (
    instance_expand,
    instance_factoring,
    instance_hole_truncation,
    instance_prefix_suffix,
)
from unavoid.theory import Eq2Instance
from unavoid.words import UniformSet, word


def avoidable(X):
    return decide_exact(X).avoidable


def test_factoring_examples():
    assert R.factoring(UniformSet(["abba", "-b"], 2)) == UniformSet(["-b"], 2)
    X = UniformSet(["a--a", "b--b"], 2)
    assert R.factoring(X) == X


def test_prefix_suffix_example():
    X = UniformSet(["abb", "-a", "-b"], 2)
    tr = R.ReductionTrace()
    Y = R.prefix_suffix(X, word("abb"), trace=tr)
    assert Y == UniformSet(["ab", "-a", "-b"], 2)
    assert avoidable(X) == avoidable(Y)
    assert tr.replay(X) == Y
    wit, missing = R.prefix_suffix_witness(X, word("abb"))
    assert missing is None
    assert str(wit[0][0]) == "b" and str(wit[0][1]) == "-a"
    # longest suffix first: x itself weakens "ab" + "b"
    assert str(wit[1][0]) == "ab" and str(wit[1][1]) == "abb"
    wit, _ = R.prefix_suffix_witness(X, word("abb"), allow_self=False)
    assert str(wit[1][0]) == "b" and str(wit[1][1]) == "-b"


def test_prefix_suffix_errors():
    X = UniformSet(["abb", "-a", "-b"], 2)
    with pytest.raises(R.ReductionError):
        R.prefix_suffix(X, word("ab-"))
    with pytest.raises(R.ReductionError):
        R.prefix_suffix(X, word("aa"))
    # -a: y = "-", witness for b needs a weakening of "-b" or "b": -b is present, for a: -a is x itself
    assert R.prefix_suffix_applicable(X, word("-a"), allow_self=True)
    with pytest.raises(R.ReductionError, match="a"):
        R.prefix_suffix(X, word("-a"), allow_self=False)


def test_hole_truncation_examples():
    assert R.hole_truncation(UniformSet(["ab--", "c"], 3)) == UniformSet(["ab", "c"], 3)
    X = UniformSet(["a-b"], 2)
    assert R.hole_truncation(X) == X
    assert R.hole_truncation(UniformSet(["--ab-"], 2)) == UniformSet(["ab"], 2)


def test_expand_examples():
    assert R.expand(UniformSet(["a-b"], 2), word("a-b"), [1]) == UniformSet(["aab", "abb"], 2)
    assert len(R.expand(UniformSet(["a-b"], 3), word("a-b"), [1])) == 3
    with pytest.raises(R.ReductionError):
        R.expand(UniformSet(["a-b"], 2), word("a-b"), [0])


def test_apply_ops_and_trace():
    X = UniformSet(["ab--", "c"], 3)
    tr = R.ReductionTrace()
    Y = R.apply_ops(X, ["hole-truncation"], tr)
    assert Y == UniformSet(["ab", "c"], 3)
    assert tr.lines() == ["hole-truncation: remove ab--", "hole-truncation: add ab"]
    Z = R.apply_ops(UniformSet(["a-b"], 2), ["expand:a-b:1"])
    assert Z == UniformSet(["aab", "abb"], 2)
    with pytest.raises(R.ReductionError):
        R.apply_ops(X, ["bogus"])


def test_derived_Y_shape():
    Y = R.derive_prop_iff_Y(5, 0, 1)
    assert len(Y) == 9 and Y.k == 3
    assert {len(w) for w in Y} == {2, 3, 5}
    assert not avoidable(Y) and not avoidable(Eq2Instance(5, 0, 1).to_set())
    with pytest.raises(R.ReductionError):
        R.derive_prop_iff_Y(6, 0, 1)


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_derived_Y_matches_source(m):
    y = (m - 3) // 2
    for x1 in range(m - 2):
        assert avoidable(R.derive_prop_iff_Y(m, x1, y)) == avoidable(Eq2Instance(m, x1, y).to_set())


@given(sets(max_len=6))
def test_factoring_preserves_verdict(X):
    assert avoidable(R.factoring(X)) == avoidable(X)


@given(sets(max_len=6))
def test_hole_truncation_preserves_verdict(X):
    assert avoidable(R.hole_truncation(X)) == avoidable(X)


@given(sets(max_len=6))
def test_prefix_suffix_all_preserves_verdict(X):
    tr = R.ReductionTrace()
    Y = R.prefix_suffix_all(X, trace=tr)
    assert avoidable(Y) == avoidable(X)
    assert tr.replay(X) == Y


@pytest.mark.parametrize(
    "make,apply",
    [
        (instance_factoring, lambda X, a: R.factoring(X)),
        (instance_prefix_suffix, lambda X, a: R.prefix_suffix(X, a)),
        (instance_hole_truncation, lambda X, a: R.hole_truncation(X)),
        (instance_expand, lambda X, a: R.expand(X, *a)),
    ],
    ids=["factoring", "prefix-suffix", "hole-truncation", "expand"],
)
def test_planted_instances_are_applicable(make, apply):
    rng = random.Random(7)
    for _ in range(100):
        k = rng.choice((2, 3))
        X, arg = make(rng, k, 6)
        Y = apply(X, arg)
        assert Y != X
        assert avoidable(X) == avoidable(Y)
