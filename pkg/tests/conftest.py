import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from unavoid.words import HOLE, PartialWord, PeriodicWord, UniformSet

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def partial_words(k=3, min_size=1, max_size=6, defined=True):
    sym = st.sampled_from([HOLE] + list(range(k)))
    ws = st.lists(sym, min_size=min_size, max_size=max_size).map(lambda s: PartialWord(tuple(s)))
    if defined:
        ws = ws.filter(lambda w: w.defined_items)
    return ws


@st.composite
def sets(draw, k=None, max_len=5, max_words=4):
    k = k or draw(st.integers(2, 3))
    words = draw(st.lists(partial_words(k, 1, max_len), min_size=1, max_size=max_words))
    return UniformSet(words, k)


@st.composite
def periodic_words(draw, k=3, max_period=8):
    base = draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=max_period))
    return PeriodicWord.parse("".join("abc"[s] for s in base), k)


def brute_avoids(w: PeriodicWord, X: UniformSet) -> bool:
    """Unroll the periodic word far enough and check every factor position directly."""
    L = X.max_length
    text = [w[i] for i in range(w.period + L)]
    for x in X:
        for i in range(w.period):
            if all(s == HOLE or text[i + j] == s for j, s in enumerate(x.symbols)):
                return False
    return True


def brute_unavoidable(X: UniformSet, max_period: int) -> bool:
    """No periodic word with period <= max_period avoids X (exhaustive)."""
    for p in range(1, max_period + 1):
        for base in itertools.product(range(X.k), repeat=p):
            if brute_avoids(PeriodicWord(X.alphabet, base), X):
                return False
    return True


@pytest.fixture
def tmp_set(tmp_path):
    def write(text, name="set.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
