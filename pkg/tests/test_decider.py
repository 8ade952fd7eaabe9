import pytest
from hypothesis import given, settings

from conftest import brute_unavoidable, sets
from unavoid.decider import (
    Avoidable,
    GraphTooLarge,
    PERIOD_SEARCH,
    TRIVIAL,
    Unavoidable,
    Unknown,
    WINDOW_GRAPH,
    WindowGraphConfig,
    decide,
    decide_bounded_period,
    decide_exact,
    search_period,
)
from unavoid.theory import ConjectureInstance
from unavoid.words import PeriodicWord, UniformSet, avoids_set, build_X0

SEVEN = UniformSet(["a--a", "b--b", "c--c", "a--b", "c--a", "b--c"], 3)


def test_exact_examples():
    assert decide_exact(build_X0(2, 4)) == Unavoidable(WINDOW_GRAPH)
    assert str(decide_exact(build_X0(2, 5))) == "Unavoidable (window-graph)"
    v = decide_exact(UniformSet(["a--a"], 2), minimize=True)
    assert isinstance(v, Avoidable) and v.period == 1
    assert avoids_set(PeriodicWord.parse("ab", 2), UniformSet(["a--a"], 2))


def test_seventh_set_avoided_by_block_word():
    v = decide_exact(SEVEN, minimize=True)
    assert isinstance(v, Avoidable)
    # frozen: smallest period found by the search
    assert str(v.certificate) == "aaacccbbb"
    assert avoids_set(PeriodicWord.parse("aaacccbbb", 3), SEVEN)


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_X0_unavoidable(m):
    for k in (2, 3):
        assert not decide_exact(build_X0(k, m)).avoidable


def test_trivial_short_circuit():
    assert decide(UniformSet(["--"], 2)) == Unavoidable(TRIVIAL)
    assert decide_exact(UniformSet(["-"], 3)) == Unavoidable(TRIVIAL)


def test_bounded_period_examples():
    X = ConjectureInstance(12, 6, 3).to_set()
    v = decide_bounded_period(X, 23)
    assert isinstance(v, Avoidable) and v.method == PERIOD_SEARCH
    assert v.period <= 5
    assert avoids_set(PeriodicWord.parse("ababc", 3), X)
    assert decide_bounded_period(build_X0(3, 5), 9) == Unknown(9)
    v = decide_bounded_period(UniformSet(["a--a", "b--b"], 2), 7)
    assert str(v.certificate) == "ab"


def test_search_period_lexicographic():
    assert search_period(UniformSet(["a--a", "b--b"], 2), 6) == (0, 0, 0, 1, 1, 1)
    assert search_period(build_X0(2, 4), 6) is None


def test_large_instance_never_unavoidable():
    v = decide(ConjectureInstance(50, 30, 10).to_set())
    assert not isinstance(v, Unavoidable)
    if isinstance(v, Avoidable):
        assert avoids_set(v.certificate, ConjectureInstance(50, 30, 10).to_set())


def test_graph_cap():
    with pytest.raises(GraphTooLarge):
        decide_exact(build_X0(3, 6), WindowGraphConfig(max_nodes=10))
    v = decide(build_X0(3, 6), P_max=5, cfg=WindowGraphConfig(max_nodes=10))
    assert isinstance(v, Unknown)


@given(sets(max_len=5))
def test_certificates_are_valid(X):
    v = decide_exact(X, minimize=True)
    if isinstance(v, Avoidable):
        assert avoids_set(v.certificate, X)


@settings(max_examples=60)
@given(sets(k=2, max_len=4))
def test_exact_matches_brute_force(X):
    # a cycle in the window graph has length <= k^(L-1), so this bound is exhaustive
    bound = X.k ** max(X.max_length - 1, 1)
    assert (not decide_exact(X).avoidable) == brute_unavoidable(X, bound)


@given(sets(max_len=5))
def test_routes_agree(X):
    exact = decide_exact(X, minimize=True)
    search = decide_bounded_period(X, X.k ** max(X.max_length - 1, 1))
    if X.is_trivial:
        return
    assert exact.avoidable == isinstance(search, Avoidable)
    if exact.avoidable:
        assert search.period == exact.period


@given(sets(max_len=5))
def test_reversal_and_strengthening_monotone(X):
    v = decide_exact(X).avoidable
    assert decide_exact(X.reversed()).avoidable == v
    if not v:
        return
    for w in X:
        for pos in w.hole_positions:
            Y = X.replace([w], [w.strengthen(pos, 0)])
            assert decide_exact(Y).avoidable
            break
