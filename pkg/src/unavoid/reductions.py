"""Set operations that preserve avoidability.

Each operation returns a new set and, when given a :class:`ReductionTrace`,
records every word it removes or adds so the result can be replayed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .words import HOLE, PartialWord, UniformSet, WordError

REMOVE = "remove"
ADD = "add"


class ReductionError(WordError):
    pass


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)

    def record(self, op: str, action: str, w: PartialWord) -> None:
        self.steps.append((op, action, w))

    def replay(self, X: UniformSet) -> UniformSet:
        words = list(X.words)
        for _, action, w in self.steps:
            if action == REMOVE:
                words.remove(w)
            elif w not in words:
                words.append(w)
        return UniformSet(words, X.alphabet)

    def lines(self) -> list[str]:
        return [f"{op}: {action} {w}" for op, action, w in self.steps]


def _swap(X: UniformSet, old: Sequence[PartialWord], new: Iterable[PartialWord], op: str, trace) -> UniformSet:
    new = list(new)
    if trace is not None:
        for w in old:
            trace.record(op, REMOVE, w)
        for w in new:
            if w not in X or w in old:
                trace.record(op, ADD, w)
    return X.replace(old, new)


def factoring(X: UniformSet, trace: Optional[ReductionTrace] = None) -> UniformSet:
    """Drop every word having another member that weakens one of its factors."""
    while True:
        for x in X:
            if any(y != x and y.weakens_factor_of(x) for y in X):
                X = _swap(X, [x], [], "factoring", trace)
                break
        else:
            return X


def prefix_suffix_witness(
    X: UniformSet, x: PartialWord, allow_self: bool = True
) -> tuple[dict[int, tuple[PartialWord, PartialWord]], Optional[int]]:
    """Witnesses ``(z, v)`` for each letter, and the first letter lacking one.

    For ``x = y a`` and letter ``b``: a suffix ``z`` of ``y`` (longest first)
    and ``v`` in ``X`` weakening ``z b``.  With ``allow_self=False``, ``v = x``
    is not accepted.
    """
    y = PartialWord(x.symbols[:-1])
    found: dict[int, tuple[PartialWord, PartialWord]] = {}
    pool = [v for v in X if allow_self or v != x]
    for b in X.alphabet:
        for j in range(len(y) + 1):
            zb = PartialWord(y.symbols[j:] + (b,))
            v = next((v for v in pool if v.is_weakening_of(zb)), None)
            if v is not None:
                found[b] = (PartialWord(y.symbols[j:]), v)
                break
        else:
            return found, b
    return found, None


def prefix_suffix(
    X: UniformSet, x: PartialWord, allow_self: bool = True, trace: Optional[ReductionTrace] = None
) -> UniformSet:
    """Replace ``x = y a`` by ``y`` when every one-letter extension of a suffix of ``y``
    is weakened by a member of ``X``."""
    if x not in X:
        raise ReductionError(f"{x} is not in the set")
    if not len(x) or x.symbols[-1] == HOLE:
        raise ReductionError(f"{x} does not end in a letter")
    _, missing = prefix_suffix_witness(X, x, allow_self)
    if missing is not None:
        raise ReductionError(
            f"no suffix z of {PartialWord(x.symbols[:-1])} and word v with v weakening z{X.alphabet.char(missing)}"
        )
    return _swap(X, [x], [PartialWord(x.symbols[:-1])], "prefix-suffix", trace)


def prefix_suffix_applicable(X: UniformSet, x: PartialWord, allow_self: bool = True) -> bool:
    if not len(x) or x.symbols[-1] == HOLE:
        return False
    return prefix_suffix_witness(X, x, allow_self)[1] is None


def prefix_suffix_all(
    X: UniformSet, allow_self: bool = True, trace: Optional[ReductionTrace] = None
) -> UniformSet:
    """Apply :func:`prefix_suffix` to the first applicable word until none applies."""
    while True:
        x = next((x for x in X if prefix_suffix_applicable(X, x, allow_self)), None)
        if x is None:
            return X
        X = prefix_suffix(X, x, allow_self, trace)


def _strip(w: PartialWord) -> PartialWord:
    s = w.symbols
    lo, hi = 0, len(s)
    while hi > lo and s[hi - 1] == HOLE:
        hi -= 1
    while lo < hi and s[lo] == HOLE:
        lo += 1
    return PartialWord(s[lo:hi])


def hole_truncation(X: UniformSet, trace: Optional[ReductionTrace] = None) -> UniformSet:
    """Strip trailing holes, and leading holes (the mirror image of the same rule)."""
    old = [w for w in X if _strip(w) != w]
    if not old:
        return X
    return _swap(X, old, [_strip(w) for w in old], "hole-truncation", trace)


def expand(
    X: UniformSet, x: PartialWord, positions: Iterable[int], trace: Optional[ReductionTrace] = None
) -> UniformSet:
    """Replace ``x`` by all fillings of the chosen holes."""
    if x not in X:
        raise ReductionError(f"{x} is not in the set")
    pos = sorted(set(positions))
    for p in pos:
        if not 0 <= p < len(x) or x.symbols[p] != HOLE:
            raise ReductionError(f"position {p} of {x} is not a hole")
    fills = []
    for letters in product(range(X.k), repeat=len(pos)):
        s = list(x.symbols)
        for p, c in zip(pos, letters):
            s[p] = c
        fills.append(PartialWord(tuple(s)))
    return _swap(X, [x], fills, "expand", trace)


def derive_prop_iff_Y(m: int, x1: int, y: int) -> UniformSet:
    """The nine-word set with the same avoidability as the ``y1 = y2 = y`` set
    ``X0 - {a..a, b..c} + {a -^x1 a -^x2 a, b -^y c -^y c}`` (``m = 2y + 3``)."""
    if y < 0 or m != 2 * y + 3:
        raise ReductionError(f"needs m = 2y+3 with y >= 0, got m={m}, y={y}")
    if not 0 <= x1 <= m - 3:
        raise ReductionError(f"x1={x1} outside 0..{m - 3}")
    g = "-" * y
    words = [
        "a" + "-" * x1 + "a",
        f"b{g}b",
        f"b{g}c",
        f"c{g}b",
        f"c{g}c",
        f"a{g}a{g}b",
        f"a{g}a{g}c",
        f"b{g}a{g}b",
        f"c{g}a{g}c",
    ]
    return UniformSet(words, 3)


OPS = ("factoring", "prefix-suffix", "hole-truncation", "expand")


def apply_ops(X: UniformSet, ops: Sequence[str], trace: Optional[ReductionTrace] = None) -> UniformSet:
    """Apply named operations in order.

    ``expand`` takes the form ``expand:<word>:<pos>,<pos>``; ``prefix-suffix``
    may name a word (``prefix-suffix:<word>``) or run to a fixpoint.
    """
    for op in ops:
        name, _, rest = op.partition(":")
        if name == "factoring":
            X = factoring(X, trace)
        elif name == "hole-truncation":
            X = hole_truncation(X, trace)
        elif name == "prefix-suffix":
            X = prefix_suffix(X, PartialWord.parse(rest), trace=trace) if rest else prefix_suffix_all(X, trace=trace)
        elif name == "expand":
            w, _, pos = rest.partition(":")
            if not w or not pos:
                raise ReductionError("expand needs expand:<word>:<pos>[,<pos>...]")
            X = expand(X, PartialWord.parse(w), [int(p) for p in pos.split(",")], trace)
        else:
            raise ReductionError(f"unknown operation {name!r}; expected one of {', '.join(OPS)}")
    return X
