"""Closed-form avoidability criteria for strengthenings of the canonical set X0.

Letters ``a, b, c, d`` are indices ``0..3``.  Most builders work over the
ternary alphabet and return the strengthened set together with nothing else;
predicates return plain booleans.  Predicates for one-directional statements
say so in their docstring: ``False`` there means "no claim".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .decider import Verdict, decide, decide_bounded_period
from .words import HOLE, Alphabet, PartialWord, PeriodicWord, UniformSet, avoids_set, build_X0

A, B, C, D = 0, 1, 2, 3

CONJECTURE_NOTE = "conditional on the X2 avoidability conjecture"


class ParameterError(ValueError):
    pass


def nu(p: int, n: int) -> int:
    """Exponent of the largest power of ``p`` dividing ``n``."""
    if p < 2:
        raise ParameterError(f"valuation base must be >= 2, got {p}")
    if n < 1:
        raise ParameterError(f"valuation argument must be >= 1, got {n}")
    q = 0
    while n % p == 0:
        n //= p
        q += 1
    return q


def nu2(n: int) -> int:
    if n < 1:
        raise ParameterError(f"valuation argument must be >= 1, got {n}")
    return (n & -n).bit_length() - 1


def min_size_bound(k: int) -> int:
    """Fewest words in a non-trivial unavoidable uniform set over ``k`` letters."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    return k + k * (k - 1) // 2


def spaced(letters: Sequence[int], gaps: Sequence[int]) -> PartialWord:
    """``letters[0] -^gaps[0] letters[1] -^gaps[1] ... letters[-1]``."""
    if len(gaps) != len(letters) - 1:
        raise ParameterError("need exactly one gap between consecutive letters")
    if any(g < 0 for g in gaps):
        raise ParameterError(f"negative gap in {tuple(gaps)}")
    syms: list[int] = [letters[0]]
    for g, c in zip(gaps, letters[1:]):
        syms.extend([HOLE] * g)
        syms.append(c)
    return PartialWord(tuple(syms))


def bare(i: int, j: int, m: int) -> PartialWord:
    """``a_i -^(m-2) a_j``."""
    return spaced((i, j), (m - 2,))


def _split(m: int, x1: int, what: str = "x1") -> int:
    if m < 3:
        raise ParameterError(f"m must be >= 3, got {m}")
    if not 0 <= x1 <= m - 3:
        raise ParameterError(f"{what}={x1} outside 0..{m - 3} for m={m}")
    return m - 3 - x1


@dataclass(frozen=True)
class ConjectureInstance:
    """One set ``T0 + {a -^x1 b -^x2 b, b -^y1 b -^y2 c, a -^(m-2) c}`` over ``{a,b,c}``."""

    m: int
    x1: int
    y1: int

    def __post_init__(self):
        _split(self.m, self.x1, "x1")
        _split(self.m, self.y1, "y1")

    @property
    def x2(self) -> int:
        return self.m - 3 - self.x1

    @property
    def y2(self) -> int:
        return self.m - 3 - self.y1

    @property
    def in_conjecture_region(self) -> bool:
        return self.y1 <= self.x2 <= self.x1 <= self.y2

    def to_set(self) -> UniformSet:
        m = self.m
        return UniformSet(
            [
                bare(A, A, m),
                bare(B, B, m),
                bare(C, C, m),
                spaced((A, B, B), (self.x1, self.x2)),
                spaced((B, B, C), (self.y1, self.y2)),
                bare(A, C, m),
            ],
            Alphabet(3),
        )

    def __str__(self) -> str:
        return f"(m={self.m}, x1={self.x1}, y1={self.y1})"


@dataclass(frozen=True)
class Eq2Instance:
    """``X0 - {a..a, b..c} + {a -^x1 a -^x2 a, b -^y1 c -^y2 c}`` over ``{a,b,c}``."""

    m: int
    x1: int
    y1: int

    def __post_init__(self):
        _split(self.m, self.x1, "x1")
        _split(self.m, self.y1, "y1")

    @property
    def x2(self) -> int:
        return self.m - 3 - self.x1

    @property
    def y2(self) -> int:
        return self.m - 3 - self.y1

    def to_set(self) -> UniformSet:
        m = self.m
        return build_X0(3, m).replace(
            [bare(A, A, m), bare(B, C, m)],
            [spaced((A, A, A), (self.x1, self.x2)), spaced((B, C, C), (self.y1, self.y2))],
        )

    def flipped_b_word(self) -> UniformSet:
        """Same set with ``b -^y2 b -^y1 c`` in place of ``b -^y1 c -^y2 c``."""
        m = self.m
        return build_X0(3, m).replace(
            [bare(A, A, m), bare(B, C, m)],
            [spaced((A, A, A), (self.x1, self.x2)), spaced((B, B, C), (self.y2, self.y1))],
        )

    def __str__(self) -> str:
        return f"(m={self.m}, x1={self.x1}, y1={self.y1})"


# --- filling the same-endpoint words --------------------------------------------------


def same_letter_fill_set(m: int, gaps: Sequence[int], k: int = 3) -> UniformSet:
    """X0 with ``a -^(m-2) a`` replaced by ``a -^g0 a -^g1 ... a`` (interior a's only)."""
    w = spaced((A,) * (len(gaps) + 1), gaps)
    if len(w) != m:
        raise ParameterError(f"gaps {tuple(gaps)} give length {len(w)}, not {m}")
    return build_X0(k, m).replace([bare(A, A, m)], [w])


def other_letter_fill_set(m: int, x1: int, k: int = 3) -> UniformSet:
    """X0 with ``a -^(m-2) a`` replaced by ``a -^x1 b -^x2 a``."""
    x2 = _split(m, x1)
    return build_X0(k, m).replace([bare(A, A, m)], [spaced((A, B, A), (x1, x2))])


def two_same_fills_set(m: int, x1: int, y1: int) -> UniformSet:
    """X0 over ``{a,b,c}`` with one interior a in ``a..a`` and one interior b in ``b..b``."""
    x2 = _split(m, x1, "x1")
    y2 = _split(m, y1, "y1")
    return build_X0(3, m).replace(
        [bare(A, A, m), bare(B, B, m)],
        [spaced((A, A, A), (x1, x2)), spaced((B, B, B), (y1, y2))],
    )


def two_same_fills_avoidable(m: int, x1: int, y1: int) -> bool:
    """Avoidability of :func:`two_same_fills_set`: m odd and the 2-adic valuations
    of ``x1+1`` and ``y1+1`` agree and are below that of ``m-1``."""
    _split(m, x1, "x1")
    _split(m, y1, "y1")
    r, s, t = nu2(x1 + 1), nu2(y1 + 1), nu2(m - 1)
    return m % 2 == 1 and r == s and r < t


def triple_fill_set(
    m: int, xs: tuple[int, int], ys: tuple[int, int], zs: tuple[int, int]
) -> UniformSet:
    """X0 over ``{a,b,c}`` with one same-letter interior fill in each of ``a..a, b..b, c..c``."""
    words = []
    for letter, pair in zip((A, B, C), (xs, ys, zs)):
        if sum(pair) != m - 3 or min(pair) < 0:
            raise ParameterError(f"split {pair} does not sum to m-3={m - 3}")
        words.append(spaced((letter,) * 3, pair))
    return build_X0(3, m).replace([bare(A, A, m), bare(B, B, m), bare(C, C, m)], words)


def triple_fill_avoidable() -> bool:
    """Filling one hole in each same-endpoint word always gives an avoidable set."""
    return True


# --- filling the distinct-endpoint words ----------------------------------------------

END_FILL_KINDS = ("c-into-ac", "a-into-ac")


def end_fill_set(m: int, x1: int, which: str) -> UniformSet:
    """X0 over ``{a,b,c}`` with ``a..c`` replaced by ``a -^x1 c -^x2 c`` or ``a -^x1 a -^x2 c``."""
    x2 = _split(m, x1)
    if which == "c-into-ac":
        w = spaced((A, C, C), (x1, x2))
    elif which == "a-into-ac":
        w = spaced((A, A, C), (x1, x2))
    else:
        raise ParameterError(f"unknown fill kind {which!r}; expected one of {END_FILL_KINDS}")
    return build_X0(3, m).replace([bare(A, C, m)], [w])


def end_fill_avoider(m: int, x1: int, which: str) -> PeriodicWord | None:
    """Explicit avoiding word for :func:`end_fill_set` in the divisible case.

    Returns None when the divisibility fails; the set is then avoidable by a
    word not given in closed form.
    """
    X = end_fill_set(m, x1, which)
    x2 = m - 3 - x1
    s, t = x1 + 1, x2 + 1
    if which == "c-into-ac":
        if t % s:
            return None
        text = "a" * s + "b" * t + "c" * s + "a" * t + "b" * s + "c" * t
    else:
        if s % t:
            return None
        text = "a" * s + "b" * t + "c" * s
    w = PeriodicWord.parse(text, 3)
    assert avoids_set(w, X), f"{w} fails to avoid {X}"
    return w


ENDPOINT_CASES = (1, 2, 3, 4)


def endpoint_fill_set(case: int, m: int, x1: int) -> UniformSet:
    """One endpoint-letter fill in ``a..b`` (cases 1, 2) or ``b..c`` (cases 3, 4).

    1: ``a -^x1 b -^x2 b``; 2: ``a -^x1 a -^x2 b``; 3: ``b -^x1 b -^x2 c``;
    4: ``b -^x1 c -^x2 c``.
    """
    x2 = _split(m, x1)
    table = {
        1: (bare(A, B, m), (A, B, B)),
        2: (bare(A, B, m), (A, A, B)),
        3: (bare(B, C, m), (B, B, C)),
        4: (bare(B, C, m), (B, C, C)),
    }
    if case not in table:
        raise ParameterError(f"case must be 1..4, got {case}")
    old, letters = table[case]
    return build_X0(3, m).replace([old], [spaced(letters, (x1, x2))])


def endpoint_split_param(case: int, x1: int, x2: int) -> int:
    """The gap whose valuation decides :func:`endpoint_fill_set` (x1 for cases 1, 4; x2 for 2, 3)."""
    if case in (1, 4):
        return x1
    if case in (2, 3):
        return x2
    raise ParameterError(f"case must be 1..4, got {case}")


def endpoint_fill_unavoidable(case: int, m: int, x: int) -> bool:
    """Unavoidable iff ``nu2(x+1) <= nu2(m-1)``, ``x`` chosen by :func:`endpoint_split_param`."""
    if case not in ENDPOINT_CASES:
        raise ParameterError(f"case must be 1..4, got {case}")
    _split(m, x, "x")
    return nu2(x + 1) <= nu2(m - 1)


def binary_three_b_set(m: int, x1: int, x2: int, x3: int) -> UniformSet:
    """``{a..a, b..b, a -^x1 b -^x2 b -^x3 b}`` over ``{a,b}``."""
    if min(x1, x2, x3) < 0 or x1 + x2 + x3 != m - 4:
        raise ParameterError(f"gaps ({x1}, {x2}, {x3}) must be >= 0 and sum to m-4={m - 4}")
    return UniformSet([bare(A, A, m), bare(B, B, m), spaced((A, B, B, B), (x1, x2, x3))], Alphabet(2))


def binary_three_b_unavoidable(m: int, x1: int, x2: int, x3: int) -> bool:
    if min(x1, x2, x3) < 0 or x1 + x2 + x3 != m - 4:
        raise ParameterError(f"gaps ({x1}, {x2}, {x3}) must be >= 0 and sum to m-4={m - 4}")
    s, t, r = nu2(m - 1), nu2(x1 + 1), nu2(x1 + x2 + 2)
    if s < t or s < r:
        return False
    return (
        x1 == x2
        or x1 == x3
        or (m == 7 * (x1 + 1) + 1 and x2 + 1 in (2 * (x1 + 1), 4 * (x1 + 1)))
    )


def mixed_fill_word(m: int, a_positions: Sequence[int], b_positions: Sequence[int]) -> PartialWord:
    """``a -^(m-2) b`` with a's at ``a_positions`` and b's at ``b_positions`` (all interior)."""
    syms = [HOLE] * m
    syms[0], syms[-1] = A, B
    for pos, letter in [(p, A) for p in a_positions] + [(p, B) for p in b_positions]:
        if not 1 <= pos <= m - 2 or syms[pos] != HOLE:
            raise ParameterError(f"bad interior position {pos}")
        syms[pos] = letter
    return PartialWord(tuple(syms))


def binary_with(m: int, x: PartialWord) -> UniformSet:
    return UniformSet([bare(A, A, m), bare(B, B, m), x], Alphabet(2))


# --- region sets ----------------------------------------------------------------------


def swap_partner(inst: ConjectureInstance) -> ConjectureInstance:
    """Instance of the same avoidability with ``(x1, x2, y1, y2) -> (y2, y1, x2, x1)``."""
    return ConjectureInstance(inst.m, inst.y2, inst.x2)


def swap_partner_set(inst: ConjectureInstance) -> UniformSet:
    """The partner set written directly from the swapped gaps (independent of :func:`swap_partner`)."""
    m = inst.m
    return build_X0(3, m).replace(
        [bare(A, B, m), bare(B, C, m)],
        [spaced((A, B, B), (inst.y2, inst.y1)), spaced((B, B, C), (inst.x2, inst.x1))],
    )


def midpoint_avoider(inst: ConjectureInstance) -> PeriodicWord:
    """``(a^p c^q b^p)^Z`` with ``p + q = m - 1`` avoiding the instance's set.

    Needs ``x1 <= x2`` and ``x1 <= y1``.  The word avoids exactly when
    ``x1 + 1 <= q <= p <= x2 + 1`` and ``q <= y1 + 1`` (the last ``q`` b's of a
    block see a c at distance ``m - 1``, so a b at distance ``y1 + 1`` must not
    be reachable from them).  ``q`` is the midpoint ``floor((m-1)/2)`` capped
    at ``y1 + 1``.
    """
    if inst.x1 > inst.x2:
        raise ParameterError(f"needs x1 <= x2, got {inst}")
    if inst.x1 > inst.y1:
        raise ParameterError(f"needs x1 <= y1, got {inst}")
    m = inst.m
    q = min((m - 1) // 2, inst.y1 + 1)
    p = m - 1 - q
    assert inst.x1 + 1 <= q <= p <= inst.x2 + 1, (p, q, inst)
    w = PeriodicWord.parse("a" * p + "c" * q + "b" * p, 3)
    assert avoids_set(w, inst.to_set()), f"{w} fails on {inst}"
    return w


def midpoint_applicable(inst: ConjectureInstance) -> bool:
    return inst.x1 <= inst.x2 and inst.x1 <= inst.y1


def even_fill_applicable(inst: ConjectureInstance) -> bool:
    """Sufficient condition for an avoiding word of period at most ``m``."""
    x1, x2, y1 = inst.x1, inst.x2, inst.y1
    return (x1 % 2 == 0 and y1 % 2 == 0 and y1 <= x2 <= x1) or (y1 == 0 and x2 <= x1)


def even_fill_certificate(inst: ConjectureInstance) -> Verdict:
    """Period search bounded by ``m`` (the condition guarantees success)."""
    return decide_bounded_period(inst.to_set(), inst.m)


def switched_sets(inst: ConjectureInstance) -> dict[str, UniformSet]:
    """The chain X2 -> X2' -> Y2' -> Y2 of gap-switched variants.

    Implications: X2 avoidable => X2' avoidable; X2' and Y2' equivalent;
    Y2' avoidable => Y2 avoidable.
    """
    m, x1, x2, y1, y2 = inst.m, inst.x1, inst.x2, inst.y1, inst.y2
    X2 = inst.to_set()
    X2p = X2.replace([spaced((A, B, B), (x1, x2))], [spaced((A, A, B), (x2, x1))])
    Y2p = X2p.replace(
        [spaced((A, A, B), (x2, x1)), spaced((B, B, C), (y1, y2))],
        [spaced((A, A, B), (y2, y1)), spaced((B, C, C), (x1, x2))],
    )
    Y2 = Y2p.replace([spaced((A, A, B), (y2, y1))], [spaced((A, B, B), (y1, y2))])
    return {"X2": X2, "X2'": X2p, "Y2'": Y2p, "Y2": Y2}


# --- equal-gap sets -------------------------------------------------------------------


def equal_gap_unavoidable(m: int, x1: int, y: int) -> bool:
    """Sufficient test when ``y1 = y2 = y``: unavoidable if ``nu2(x1+1) != nu2(y+1)``.

    ``False`` makes no claim.
    """
    if m != 2 * y + 3:
        raise ParameterError(f"needs m = 2y+3, got m={m}, y={y}")
    _split(m, x1)
    return nu2(x1 + 1) != nu2(y + 1)


# --- larger alphabets -----------------------------------------------------------------


def disjoint_pair_set(m: int, x1: int, x2: int, y1: int, y2: int, k: int = 4) -> UniformSet:
    """X0 over ``k >= 4`` letters with ``a -^x1 b -^x2 b`` and ``c -^y1 d -^y2 d``."""
    if k < 4:
        raise ParameterError(f"needs at least 4 letters, got k={k}")
    if x1 + x2 != m - 3 or y1 + y2 != m - 3 or min(x1, x2, y1, y2) < 0:
        raise ParameterError("splits must be non-negative and sum to m-3")
    return build_X0(k, m).replace(
        [bare(A, B, m), bare(C, D, m)],
        [spaced((A, B, B), (x1, x2)), spaced((C, D, D), (y1, y2))],
    )


_ORDERINGS = {
    1: ("x1", "y1", "y2", "x2"),
    2: ("x1", "y2", "y1", "x2"),
    3: ("y1", "x1", "x2", "y2"),
    4: ("y2", "x1", "x2", "y1"),
    5: ("x2", "y1", "y2", "x1"),
    6: ("x2", "y2", "y1", "x1"),
    7: ("y1", "x2", "x1", "y2"),
    8: ("y2", "x2", "x1", "y1"),
}


def disjoint_pair_case(x1: int, x2: int, y1: int, y2: int) -> int:
    vals = {"x1": x1, "x2": x2, "y1": y1, "y2": y2}
    for case, order in _ORDERINGS.items():
        seq = [vals[n] for n in order]
        if all(a <= b for a, b in zip(seq, seq[1:])):
            return case
    raise AssertionError(f"no ordering case for {vals}")  # the eight cover all orders


def disjoint_pair_avoider(m: int, x1: int, x2: int, y1: int, y2: int, k: int = 4) -> PeriodicWord:
    """Avoiding word for :func:`disjoint_pair_set`.

    Cases 4, 5, 6, 8 use ``v_p u_q ~v_p ~u_q`` with ``p = y2+1`` (``v``, ``u`` the
    block words of widths ``x2+1`` and ``y2+1``; ``~`` swaps a<->b and c<->d).
    Cases 1, 2, 3, 7 use ``a^p c^q b^p d^q`` with ``p = y1+1``.
    """
    X = disjoint_pair_set(m, x1, x2, y1, y2, k)
    case = disjoint_pair_case(x1, x2, y1, y2)
    if case in (4, 5, 6, 8):
        p = y2 + 1
        q = m - 1 - p
        assert q > x2 and p > y2 and q > 0
        v = ([A] * (x2 + 1) + [B] * (x2 + 1)) * (p // (2 * x2 + 2) + 1)
        u = ([C] * (y2 + 1) + [D] * (y2 + 1)) * (q // (2 * y2 + 2) + 1)
        flip = {A: B, B: A, C: D, D: C}
        vp, uq = v[:p], u[:q]
        base = vp + uq + [flip[s] for s in vp] + [flip[s] for s in uq]
    else:
        p = y1 + 1
        q = m - 1 - p
        assert 0 < p <= x2 + 1 and 0 < q <= y2 + 1
        base = [A] * p + [C] * q + [B] * p + [D] * q
    w = PeriodicWord(Alphabet(k), tuple(base))
    assert avoids_set(w, X), f"case {case}: {w} fails to avoid {X}"
    return w


def far_endpoint_set(k: int, m: int, i: int, p: int, letter: int, pos: int) -> UniformSet:
    """X0 with ``a_i -^(m-2) a_(i+p)`` strengthened at interior ``pos`` (``i`` is 1-based)."""
    if i < 1 or p < 2 or i + p > k:
        raise ParameterError(f"needs i >= 1, p >= 2, i+p <= k; got i={i}, p={p}, k={k}")
    if not 1 <= pos <= m - 2:
        raise ParameterError(f"interior position {pos} outside 1..{m - 2}")
    old = bare(i - 1, i + p - 1, m)
    return build_X0(k, m).replace([old], [old.strengthen(pos, letter)])


def far_endpoint_check(k: int, m: int, i: int, p: int, letter: int, pos: int, P_max: int | None = None) -> Verdict:
    """Decide :func:`far_endpoint_set`; expected Avoidable for every interior fill."""
    return decide(far_endpoint_set(k, m, i, p, letter, pos), P_max if P_max is not None else 2 * m - 1)


# --- hole counts ----------------------------------------------------------------------


class HoleCount(NamedTuple):
    holes: int
    max_fill: int
    note: str = CONJECTURE_NOTE


def max_fill(m: int) -> int:
    """Most holes of X0 that can be filled keeping it unavoidable: m-1 (m even), m (m odd)."""
    if m < 4:
        raise ParameterError(f"needs m >= 4, got {m}")
    return m - 1 if m % 2 == 0 else m


def min_holes(k: int, m: int) -> HoleCount:
    """Fewest holes in an unavoidable m-uniform set of minimum size over ``k`` letters."""
    if k < 2:
        raise ParameterError(f"needs k >= 2, got {k}")
    f = max_fill(m)
    return HoleCount(min_size_bound(k) * (m - 2) - f, f)
