"""Verification suites comparing closed-form statements with the deciders."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

import numpy as np

from . import reductions as R
from . import theory as T
from .decider import decide_exact
from .patterns import audit_eq2, audit_family, eq1_families, tab1r3_iff_check
from .words import HOLE, PartialWord, PeriodicWord, UniformSet, avoids_set, build_X0


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    info: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what) -> None:
        self.failures.append(what)


def _avoidable(X: UniformSet) -> bool:
    return decide_exact(X).avoidable


def suite_prop3(m_max: int = 12) -> SuiteResult:
    """One interior a in ``a..a`` and one interior b in ``b..b``: predicate vs window graph."""
    res = SuiteResult("prop3")
    for m in range(3, m_max + 1):
        for x1 in range(m - 2):
            for y1 in range(m - 2):
                got = _avoidable(T.two_same_fills_set(m, x1, y1))
                res.checked += 1
                if got != T.two_same_fills_avoidable(m, x1, y1):
                    res.fail((m, x1, y1, got))
    return res


def suite_harder(m_max: int = 12) -> SuiteResult:
    """Endpoint-letter fills of ``a..b`` / ``b..c``: predicate vs window graph."""
    res = SuiteResult("harder")
    for m in range(3, m_max + 1):
        for case in T.ENDPOINT_CASES:
            for x1 in range(m - 2):
                x = T.endpoint_split_param(case, x1, m - 3 - x1)
                unav = not _avoidable(T.endpoint_fill_set(case, m, x1))
                res.checked += 1
                if unav != T.endpoint_fill_unavoidable(case, m, x):
                    res.fail((case, m, x1, unav))
    return res


def suite_iff(m_max: int = 11) -> SuiteResult:
    """Equal-gap sufficient condition implies both sets are unavoidable."""
    res = SuiteResult("iff")
    for y in range(0, (m_max - 3) // 2 + 1):
        m = 2 * y + 3
        for x1 in range(m - 2):
            if not T.equal_gap_unavoidable(m, x1, y):
                continue
            inst = T.Eq2Instance(m, x1, y)
            for X in (inst.to_set(), inst.flipped_b_word()):
                res.checked += 1
                if _avoidable(X):
                    res.fail((m, x1, y, str(X)))
    return res


def suite_2bottom(m_max: int = 15) -> SuiteResult:
    """Three interior b's in ``a..b`` over ``{a,b}``: predicate vs window graph."""
    res = SuiteResult("2bottom")
    for m in range(4, m_max + 1):
        for x1 in range(m - 3):
            for x2 in range(m - 3 - x1):
                x3 = m - 4 - x1 - x2
                unav = not _avoidable(T.binary_three_b_set(m, x1, x2, x3))
                res.checked += 1
                if unav != T.binary_three_b_unavoidable(m, x1, x2, x3):
                    res.fail((m, x1, x2, x3, unav))
    return res


def _r3_word(p: int, q: int) -> PeriodicWord:
    return PeriodicWord.parse("ab" * p + "a" + "bc" * q, 3)


def suite_tab1r3(m_max: int = 60, pq_max: int = 5) -> SuiteResult:
    """``((ab)^p a (bc)^q)^Z``: residue conditions vs direct avoidance, all splits."""
    res = SuiteResult("tab1r3")
    pairs = [(p, q) for q in range(1, pq_max + 1) for p in range(0, pq_max + 1 - q)]
    for m in range(3, m_max + 1):
        for p, q in pairs:
            w = _r3_word(p, q)
            for x1 in range(m - 2):
                for y1 in range(m - 2):
                    got = avoids_set(w, T.ConjectureInstance(m, x1, y1).to_set())
                    res.checked += 1
                    if got != tab1r3_iff_check(m, x1, y1, p, q):
                        res.fail((m, x1, y1, p, q, got))
    return res


def suite_partner(m_max: int = 7) -> SuiteResult:
    """Swapping ``(x1, x2, y1, y2) -> (y2, y1, x2, x1)`` keeps the verdict and is an involution."""
    res = SuiteResult("partner")
    for m in range(3, m_max + 1):
        for x1 in range(m - 2):
            for y1 in range(m - 2):
                inst = T.ConjectureInstance(m, x1, y1)
                par = T.swap_partner(inst)
                res.checked += 1
                if T.swap_partner(par) != inst or par.to_set() != T.swap_partner_set(inst):
                    res.fail(("shape", inst))
                elif _avoidable(inst.to_set()) != _avoidable(par.to_set()):
                    res.fail(("verdict", inst))
    return res


def suite_patterns(m_max: int = 60) -> SuiteResult:
    """Soundness of every active family: condition implies avoidance."""
    res = SuiteResult("patterns")
    for f in eq1_families():
        a = audit_family(f, m_max)
        res.checked += a.checked
        res.failures += [(f.id, str(i), t) for i, t in a.soundness_violations]
    for a in audit_eq2(min(m_max, 40)).values():
        res.checked += a.checked
        res.failures += [(a.family, str(i), t) for i, t in a.soundness_violations]
    return res


# --- reductions ----------------------------------------------------------------------


def _rand_word(rng: random.Random, k: int, n: int, hole_p: float = 0.35) -> PartialWord:
    return PartialWord(tuple(HOLE if rng.random() < hole_p else rng.randrange(k) for _ in range(n)))


def _rand_defined_word(rng, k, n, hole_p=0.35) -> PartialWord:
    while True:
        w = _rand_word(rng, k, n, hole_p)
        if w.defined_items:
            return w


def _weaken_randomly(rng, w: PartialWord, p: float = 0.4) -> PartialWord:
    return PartialWord(tuple(HOLE if s != HOLE and rng.random() < p else s for s in w.symbols))


def random_set(rng: random.Random, k: int, L: int, size: Optional[int] = None) -> UniformSet:
    size = size or rng.randint(1, 4)
    return UniformSet([_rand_defined_word(rng, k, rng.randint(1, L)) for _ in range(size)], k)


def instance_factoring(rng, k, L):
    X = random_set(rng, k, L)
    x = _rand_defined_word(rng, k, L, 0.2)
    i = rng.randrange(len(x))
    j = rng.randint(i + 1, len(x))
    y = _weaken_randomly(rng, PartialWord(x.symbols[i:j]))
    return UniformSet(list(X) + [x, y], k), None


def instance_prefix_suffix(rng, k, L, allow_self=True):
    for _ in range(1000):
        x = _rand_defined_word(rng, k, rng.randint(2, L), 0.3)
        if x.symbols[-1] == HOLE:
            x = PartialWord(x.symbols[:-1] + (rng.randrange(k),))
        y = x.symbols[:-1]
        words = [x]
        for b in range(k):
            j = rng.randint(0, len(y))
            zb = PartialWord(y[j:] + (b,))
            v = _weaken_randomly(rng, zb, 0.3)
            if v.defined_items:
                words.append(v)
        X = UniformSet(words + list(random_set(rng, k, L, rng.randint(0, 2))), k)
        if R.prefix_suffix_applicable(X, x, allow_self):
            return X, x
    raise RuntimeError("no applicable prefix-suffix instance found")


def instance_hole_truncation(rng, k, L):
    X = random_set(rng, k, L - 1)
    w = _rand_defined_word(rng, k, rng.randint(1, L - 1))
    pad = L - len(w)
    lead = rng.randint(0, pad)
    w = PartialWord((HOLE,) * lead + w.symbols + (HOLE,) * (pad - lead))
    return UniformSet(list(X) + [w], k), None


def instance_expand(rng, k, L):
    X = random_set(rng, k, L)
    x = _rand_defined_word(rng, k, rng.randint(2, L), 0.5)
    holes = x.hole_positions
    if not holes:
        return instance_expand(rng, k, L)
    pos = rng.sample(list(holes), min(len(holes), rng.randint(1, 2)))
    return UniformSet(list(X) + [x], k), (x, pos)


def suite_reductions(count: int = 500, seed: int = 0, L: int = 6) -> SuiteResult:
    """Each operation keeps the window-graph verdict on random applicable sets."""
    res = SuiteResult("reductions")
    rng = random.Random(seed)
    ops: list[tuple[str, Callable]] = [
        ("factoring", lambda: _check(instance_factoring, lambda X, a: R.factoring(X))),
        ("prefix-suffix", lambda: _check(instance_prefix_suffix, lambda X, a: R.prefix_suffix(X, a))),
        (
            "prefix-suffix-strict",
            lambda: _check(
                lambda r, k, L: instance_prefix_suffix(r, k, L, False), lambda X, a: R.prefix_suffix(X, a, False)
            ),
        ),
        ("hole-truncation", lambda: _check(instance_hole_truncation, lambda X, a: R.hole_truncation(X))),
        ("expand", lambda: _check(instance_expand, lambda X, a: R.expand(X, a[0], a[1]))),
    ]

    def _check(make, apply):
        k = rng.choice((2, 3))
        X, arg = make(rng, k, L)
        Y = apply(X, arg)
        return X, Y

    for name, run in ops:
        changed = 0
        for _ in range(count):
            X, Y = run()
            res.checked += 1
            changed += X != Y
            if _avoidable(X) != _avoidable(Y):
                res.fail((name, str(X), str(Y)))
        res.info.append(f"{name}: {count} instances, {changed} changed")
    return res


def suite_derived_Y(m_max: int = 9) -> SuiteResult:
    """The nine-word derived set has the same verdict as its source set."""
    res = SuiteResult("derived-Y")
    for y in range(0, (m_max - 3) // 2 + 1):
        m = 2 * y + 3
        for x1 in range(m - 2):
            a = _avoidable(T.Eq2Instance(m, x1, y).to_set())
            b = _avoidable(R.derive_prop_iff_Y(m, x1, y))
            res.checked += 1
            if a != b:
                res.fail((m, x1, y, a, b))
    return res


# --- maximum fill counts -------------------------------------------------------------


def _fillings(m: int):
    """All interior fillings of a length-m binary word as tuples over {HOLE, 0, 1}."""
    return list(product((HOLE, 0, 1), repeat=m - 2))


def _compat_mask(first: int, last: int, interior: tuple, m: int) -> np.ndarray:
    """Windows (big-endian, length m) compatible with the word ``first interior last``."""
    W = 1 << m
    idx = np.arange(W)
    ok = np.ones(W, dtype=bool)
    syms = (first,) + interior + (last,)
    for pos, s in enumerate(syms):
        if s != HOLE:
            ok &= ((idx >> (m - 1 - pos)) & 1) == s
    return ok


def binary_unavoidable_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Every strengthening of the binary X0 of length m (k = 2).

    Returns ``(fills, unavoidable)`` flattened over the ``3^(3(m-2))`` sets in
    the order (filling of a..a, of b..b, of a..b), each filling indexed as in
    ``itertools.product((HOLE, a, b), repeat=m-2)``.  Cycle detection prunes
    sinks from the window graph until a fixpoint.
    """
    F = _fillings(m)
    nf = np.array([sum(s != HOLE for s in f) for f in F])
    masks = [np.array([_compat_mask(a, b, f, m) for f in F]) for a, b in ((0, 0), (1, 1), (0, 1))]
    n = len(F)
    forb = masks[0][:, None, None, :] | masks[1][None, :, None, :] | masks[2][None, None, :, :]
    allowed = ~forb.reshape(n**3, 1 << m)
    fills = (nf[:, None, None] + nf[None, :, None] + nf[None, None, :]).reshape(-1)
    N = 1 << (m - 1)
    u = np.arange(N)
    e0, e1 = 2 * u, 2 * u + 1
    d0, d1 = e0 % N, e1 % N
    alive = np.ones((n**3, N), dtype=bool)
    while True:
        has_out = (allowed[:, e0] & alive[:, d0]) | (allowed[:, e1] & alive[:, d1])
        nxt = alive & has_out
        if np.array_equal(nxt, alive):
            break
        alive = nxt
    unavoidable = ~alive.any(axis=1)
    return fills, unavoidable


def binary_set_from_index(m: int, index: int) -> UniformSet:
    F = _fillings(m)
    n = len(F)
    i, rest = divmod(index, n * n)
    j, l = divmod(rest, n)
    words = [PartialWord((a,) + F[f] + (b,)) for (a, b), f in zip(((0, 0), (1, 1), (0, 1)), (i, j, l))]
    return UniformSet(words, 2)


def max_fill_binary(m: int) -> int:
    fills, unav = binary_unavoidable_table(m)
    return int(fills[unav].max())


def _strengthenings(X: UniformSet):
    for w in X:
        for pos in w.hole_positions:
            for c in range(X.k):
                yield X.replace([w], [w.strengthen(pos, c)])


def max_fill_levelwise(k: int, m: int, limit: int = 200000) -> tuple[int, list[int]]:
    """Largest number of filled holes keeping X0(k, m) unavoidable.

    Unavoidable sets are closed under weakening, so every unavoidable set with
    ``f + 1`` fills strengthens one with ``f`` fills; level ``f + 1`` is built
    from level ``f`` only.  Returns the maximum and the level sizes.
    """
    level = {build_X0(k, m)}
    sizes = [1]
    f = 0
    while True:
        nxt = set()
        for X in level:
            for Y in _strengthenings(X):
                if Y not in nxt and not decide_exact(Y).avoidable:
                    nxt.add(Y)
            if len(nxt) > limit:
                raise RuntimeError(f"level {f + 1} exceeds {limit} sets")
        if not nxt:
            return f, sizes
        level = nxt
        sizes.append(len(nxt))
        f += 1


def cross_check_binary(m: int) -> list[int]:
    """Indices where the pruning kernel and :func:`decide_exact` disagree."""
    _, unav = binary_unavoidable_table(m)
    return [i for i in range(len(unav)) if decide_exact(binary_set_from_index(m, i)).avoidable == unav[i]]


def suite_mainresult(m_max: int = 6, k3_m_max: Optional[int] = None, cross_m_max: int = 5) -> SuiteResult:
    """Maximum fill count: exhaustive for k = 2, level-wise for k = 3.

    For ``m <= cross_m_max`` every binary verdict of the kernel is also
    recomputed with the window-graph decider.
    """
    res = SuiteResult("mainresult-smallm")
    k3_m_max = m_max if k3_m_max is None else k3_m_max
    for m in range(4, m_max + 1):
        got = max_fill_binary(m)
        res.checked += 1
        res.info.append(f"k=2 m={m}: max fill {got}, H={3 * (m - 2) - got}")
        if got != T.max_fill(m) or 3 * (m - 2) - got != T.min_holes(2, m).holes:
            res.fail(("k=2", m, got))
        if m <= cross_m_max:
            bad = cross_check_binary(m)
            res.checked += 1
            if bad:
                res.fail(("kernel", m, [str(binary_set_from_index(m, i)) for i in bad[:3]]))
    for m in range(4, k3_m_max + 1):
        got, sizes = max_fill_levelwise(3, m)
        res.checked += 1
        res.info.append(f"k=3 m={m}: max fill {got}, level sizes {sizes}")
        if got != T.max_fill(m):
            res.fail(("k=3", m, got))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "prop3": suite_prop3,
    "harder": suite_harder,
    "iff": suite_iff,
    "2bottom": suite_2bottom,
    "tab1r3": suite_tab1r3,
    "partner": suite_partner,
    "patterns": suite_patterns,
    "reductions": suite_reductions,
    "derived-Y": suite_derived_Y,
    "mainresult-smallm": suite_mainresult,
}


def run_suite(name: str, m_max: Optional[int] = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    fn = SUITES[name]
    if name == "reductions":
        return fn()
    return fn(m_max) if m_max is not None else fn()
