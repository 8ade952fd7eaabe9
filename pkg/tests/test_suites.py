import numpy as np
import pytest

from unavoid import suites as S
from unavoid.decider import decide_exact
from unavoid.theory import max_fill


@pytest.mark.parametrize(
    "name,m_max",
    [("prop3", 9), ("harder", 9), ("iff", 9), ("2bottom", 11), ("partner", 6), ("derived-Y", 9), ("tab1r3", 15)],
)
def test_suite_passes(name, m_max):
    res = S.run_suite(name, m_max)
    assert res.checked > 0
    assert res.ok, res.failures[:5]


def test_unknown_suite():
    with pytest.raises(KeyError):
        S.run_suite("nope")


def test_reductions_suite_small():
    res = S.suite_reductions(count=40, seed=3)
    assert res.ok and res.checked == 200
    assert all("40 instances" in line for line in res.info)


def test_binary_kernel_m4_against_decider():
    assert S.cross_check_binary(4) == []


def test_binary_kernel_sample_m6():
    fills, unav = S.binary_unavoidable_table(6)
    rng = np.random.default_rng(0)
    picks = list(rng.choice(len(unav), 300, replace=False)) + list(np.flatnonzero(unav)[:50])
    for i in picks:
        assert (not decide_exact(S.binary_set_from_index(6, int(i))).avoidable) == bool(unav[i])


def test_binary_index_layout():
    X = S.binary_set_from_index(4, 0)
    assert X == S.binary_set_from_index(4, 0)
    assert [str(w) for w in X] == ["a--a", "b--b", "a--b"]
    assert len(S._fillings(5)) == 27


@pytest.mark.parametrize("m", [4, 5])
def test_max_fill_routes(m):
    assert S.max_fill_binary(m) == max_fill(m)
    got, sizes = S.max_fill_levelwise(2, m)
    assert got == max_fill(m) and sizes[0] == 1


def test_levelwise_k3_m4():
    got, sizes = S.max_fill_levelwise(3, 4)
    assert got == 3
    # frozen from the run that fixed these values
    assert sizes == [1, 10, 23, 4]
