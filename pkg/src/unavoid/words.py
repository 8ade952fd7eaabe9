"""Partial words, periodic words and finite sets of partial words.

Letters are stored as integer indices ``0..k-1`` and rendered ``a..z``; a hole
is stored as :data:`HOLE` and rendered ``-`` in text.  Every value type here is
immutable once built.
"""
from __future__ import annotations

import string
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

HOLE = -1
HOLE_CHAR = "-"
HOLE_ALIASES = HOLE_CHAR + "\u22c4"  # "-" or the diamond
LETTERS = string.ascii_lowercase


class WordError(ValueError):
    """Malformed word, set or edit."""


class LengthMismatch(WordError):
    pass


class AlphabetMismatch(WordError):
    pass


class SetFileError(WordError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Alphabet:
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= len(LETTERS):
            raise WordError(f"alphabet size must be in 1..26, got {self.k}")

    @property
    def letters(self) -> str:
        return LETTERS[: self.k]

    def char(self, index: int) -> str:
        if index == HOLE:
            return HOLE_CHAR
        if not 0 <= index < self.k:
            raise WordError(f"letter index {index} outside alphabet of size {self.k}")
        return LETTERS[index]

    def index(self, ch: str) -> int:
        if ch == HOLE_CHAR:
            return HOLE
        i = LETTERS.find(ch)
        if i < 0 or i >= self.k:
            raise WordError(f"{ch!r} is not a letter of {self.letters!r}")
        return i

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.k))


def _parse_symbols(text: str) -> tuple[int, ...]:
    out = []
    for ch in text:
        if ch in HOLE_ALIASES:
            out.append(HOLE)
        elif ch in LETTERS:
            out.append(LETTERS.index(ch))
        else:
            raise WordError(f"bad character {ch!r} in word {text!r}")
    return tuple(out)


@dataclass(frozen=True, order=True)
class PartialWord:
    """A finite word over letters and holes."""

    symbols: tuple[int, ...]
    _items: tuple[tuple[int, int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        syms = tuple(self.symbols)
        if any(s != HOLE and s < 0 for s in syms):
            raise WordError(f"invalid symbol in {syms}")
        object.__setattr__(self, "symbols", syms)
        object.__setattr__(
            self, "_items", tuple((i, s) for i, s in enumerate(syms) if s != HOLE)
        )

    @classmethod
    def parse(cls, text: str) -> PartialWord:
        return cls(_parse_symbols(text))

    def __str__(self) -> str:
        return "".join(HOLE_CHAR if s == HOLE else LETTERS[s] for s in self.symbols)

    def __repr__(self) -> str:
        return f"PartialWord({str(self)!r})"

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    @property
    def defined(self) -> tuple[int, ...]:
        """Defined positions, ascending."""
        return tuple(i for i, _ in self._items)

    @property
    def defined_items(self) -> tuple[tuple[int, int], ...]:
        """``(position, letter)`` pairs for the defined positions."""
        return self._items

    @property
    def holes(self) -> int:
        return len(self.symbols) - len(self._items)

    @property
    def hole_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s == HOLE)

    @property
    def is_total(self) -> bool:
        return len(self._items) == len(self.symbols)

    def max_letter(self) -> int:
        return max((s for _, s in self._items), default=HOLE)

    def _check_pos(self, pos: int) -> None:
        if not 0 <= pos < len(self.symbols):
            raise WordError(f"position {pos} out of range for word of length {len(self)}")

    def strengthen(self, pos: int, letter: int) -> PartialWord:
        self._check_pos(pos)
        if self.symbols[pos] != HOLE:
            raise WordError(f"position {pos} of {self} is already defined")
        if letter < 0:
            raise WordError(f"cannot strengthen with {letter}")
        return PartialWord(self.symbols[:pos] + (letter,) + self.symbols[pos + 1 :])

    def weaken(self, pos: int) -> PartialWord:
        self._check_pos(pos)
        if self.symbols[pos] == HOLE:
            raise WordError(f"position {pos} of {self} is already a hole")
        return PartialWord(self.symbols[:pos] + (HOLE,) + self.symbols[pos + 1 :])

    def reversed(self) -> PartialWord:
        return PartialWord(self.symbols[::-1])

    def renamed(self, perm: Sequence[int]) -> PartialWord:
        return PartialWord(tuple(HOLE if s == HOLE else perm[s] for s in self.symbols))

    def is_weakening_of(self, other: PartialWord) -> bool:
        """True if ``other`` has the same length and agrees with every letter of ``self``.

        Holes of ``self`` may sit over letters or holes of ``other``.
        """
        if len(self) != len(other):
            return False
        osym = other.symbols
        return all(osym[i] == c for i, c in self._items)

    def weakens_factor_of(self, other: PartialWord) -> bool:
        """True if ``self`` is a weakening of some factor of ``other``."""
        n = len(self)
        if n > len(other):
            return False
        osym = other.symbols
        for start in range(len(other) - n + 1):
            if all(osym[start + i] == c for i, c in self._items):
                return True
        return False


def word(text: str) -> PartialWord:
    """Shorthand constructor: ``word("a--b")``."""
    return PartialWord.parse(text)


def compatible(u: PartialWord, v: PartialWord) -> bool:
    if len(u) != len(v):
        raise LengthMismatch(f"cannot compare {u} and {v}: lengths {len(u)} != {len(v)}")
    vs = v.symbols
    return all(vs[i] == HOLE or vs[i] == c for i, c in u.defined_items)


@dataclass(frozen=True)
class PeriodicWord:
    """The two-sided infinite word ``base^Z``."""

    alphabet: Alphabet
    base: tuple[int, ...]

    def __post_init__(self):
        base = tuple(self.base)
        if not base:
            raise WordError("periodic word needs a non-empty base")
        for s in base:
            if not 0 <= s < self.alphabet.k:
                raise WordError(f"base symbol {s} is not a letter of a {self.alphabet.k}-letter alphabet")
        object.__setattr__(self, "base", base)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | int | None = None) -> PeriodicWord:
        syms = _parse_symbols(text)
        if alphabet is None:
            alphabet = Alphabet(max(syms, default=0) + 1)
        elif isinstance(alphabet, int):
            alphabet = Alphabet(alphabet)
        return cls(alphabet, syms)

    @property
    def period(self) -> int:
        return len(self.base)

    def __str__(self) -> str:
        return "".join(LETTERS[s] for s in self.base)

    def __repr__(self) -> str:
        return f"PeriodicWord({str(self)!r}, k={self.alphabet.k})"

    def __getitem__(self, i: int) -> int:
        return self.base[i % len(self.base)]

    def rotate(self, r: int) -> PeriodicWord:
        r %= len(self.base)
        return PeriodicWord(self.alphabet, self.base[r:] + self.base[:r])

    def renamed(self, perm: Sequence[int]) -> PeriodicWord:
        return PeriodicWord(self.alphabet, tuple(perm[s] for s in self.base))

    def primitive(self) -> PeriodicWord:
        """Same infinite word, written with its smallest period."""
        b = self.base
        n = len(b)
        for d in range(1, n + 1):
            if n % d == 0 and b == b[:d] * (n // d):
                return PeriodicWord(self.alphabet, b[:d])
        return self


class UniformSet:
    """A finite set of partial words over one alphabet.

    Word order is kept as given (duplicates dropped) so that printed sets read
    the way they were built; equality and hashing ignore order.
    """

    __slots__ = ("alphabet", "words", "_frozen")

    def __init__(
        self,
        words: Iterable[PartialWord | str],
        alphabet: Alphabet | int | None = None,
    ):
        seen = {}
        for w in words:
            if isinstance(w, str):
                w = PartialWord.parse(w)
            seen.setdefault(w, None)
        ws = tuple(seen)
        top = max((w.max_letter() for w in ws), default=HOLE)
        if alphabet is None:
            alphabet = Alphabet(max(top + 1, 1))
        elif isinstance(alphabet, int):
            alphabet = Alphabet(alphabet)
        if top >= alphabet.k:
            raise AlphabetMismatch(
                f"letter {LETTERS[top]!r} outside alphabet {alphabet.letters!r}"
            )
        self.alphabet = alphabet
        self.words = ws
        self._frozen = frozenset(ws)

    @property
    def k(self) -> int:
        return self.alphabet.k

    @property
    def uniform_length(self) -> int | None:
        lengths = {len(w) for w in self.words}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    @property
    def is_trivial(self) -> bool:
        """Contains the empty word or an all-hole word; such sets are unavoidable."""
        return any(not w.defined_items for w in self.words)

    def __iter__(self) -> Iterator[PartialWord]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w) -> bool:
        if isinstance(w, str):
            w = PartialWord.parse(w)
        return w in self._frozen

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniformSet):
            return NotImplemented
        return self.alphabet == other.alphabet and self._frozen == other._frozen

    def __hash__(self) -> int:
        return hash((self.alphabet, self._frozen))

    def __repr__(self) -> str:
        return f"UniformSet({[str(w) for w in self.words]}, k={self.k})"

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.words) + "}"

    def replace(self, old: Iterable[PartialWord | str], new: Iterable[PartialWord | str]) -> UniformSet:
        """``(self - old) | new``, keeping positions of surviving words."""
        drop = {PartialWord.parse(w) if isinstance(w, str) else w for w in old}
        missing = drop - self._frozen
        if missing:
            raise WordError(f"words not in set: {sorted(str(w) for w in missing)}")
        kept = [w for w in self.words if w not in drop]
        return UniformSet(kept + list(new), self.alphabet)

    def reversed(self) -> UniformSet:
        return UniformSet((w.reversed() for w in self.words), self.alphabet)

    def to_text(self, header: bool = True) -> str:
        lines = [f"k={self.k}"] if header else []
        lines += [str(w) for w in self.words]
        return "\n".join(lines) + "\n"


def meets(w: PeriodicWord, u: PartialWord) -> int | None:
    """Smallest offset ``i`` in ``[0, period)`` where ``w`` has a factor compatible with ``u``."""
    if u.max_letter() >= w.alphabet.k:
        raise AlphabetMismatch(f"{u} uses letters outside the alphabet of {w!r}")
    base = w.base
    p = len(base)
    items = u.defined_items
    if not items:
        return 0
    # Reduce offsets mod p once; factors may wrap around the base many times.
    reduced = [(j % p, c) for j, c in items]
    for i in range(p):
        for j, c in reduced:
            if base[(i + j) % p] != c:
                break
        else:
            return i
    return None


def avoids_set(w: PeriodicWord, X: UniformSet) -> bool:
    if w.alphabet.k != X.k:
        raise AlphabetMismatch(f"periodic word over k={w.alphabet.k}, set over k={X.k}")
    return all(meets(w, x) is None for x in X)


def build_X0(k: int, m: int) -> UniformSet:
    """The canonical set ``{a_i -^(m-2) a_j : i <= j}`` over ``k`` letters."""
    if m < 2:
        raise WordError(f"X0 needs m >= 2, got {m}")
    alphabet = Alphabet(k)
    holes = (HOLE,) * (m - 2)
    same = [PartialWord((i,) + holes + (i,)) for i in range(k)]
    distinct = [PartialWord((i,) + holes + (j,)) for i in range(k) for j in range(i + 1, k)]
    X = UniformSet(same + distinct, alphabet)
    assert len(X) == k + comb(k, 2)
    return X


def _check_perm(perm: Sequence[int] | Mapping[int, int], k: int) -> tuple[int, ...]:
    if isinstance(perm, Mapping):
        perm = tuple(perm.get(i, i) for i in range(k))
    perm = tuple(perm)
    if len(perm) != k or sorted(perm) != list(range(k)):
        raise WordError(f"{perm} is not a permutation of 0..{k - 1}")
    return perm


def rename_letters(X: UniformSet, perm: Sequence[int] | Mapping[int, int]) -> UniformSet:
    perm = _check_perm(perm, X.k)
    return UniformSet((w.renamed(perm) for w in X), X.alphabet)


def rename_periodic(w: PeriodicWord, perm: Sequence[int] | Mapping[int, int]) -> PeriodicWord:
    return w.renamed(_check_perm(perm, w.alphabet.k))


def parse_set_text(text: str, k: int | None = None) -> UniformSet:
    """Parse the line-oriented set format (``-`` = hole, ``#`` comments, optional ``k=<int>``)."""
    header_k = None
    words = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("k="):
            if header_k is not None or words:
                raise SetFileError(lineno, "header k=<int> must come first and only once")
            try:
                header_k = int(line[2:])
            except ValueError:
                raise SetFileError(lineno, f"bad header {line!r}") from None
            if not 1 <= header_k <= 26:
                raise SetFileError(lineno, f"alphabet size {header_k} outside 1..26")
            continue
        try:
            w = PartialWord.parse(line)
        except WordError as exc:
            raise SetFileError(lineno, str(exc)) from None
        bound = k if k is not None else header_k
        if bound is not None and w.max_letter() >= bound:
            raise SetFileError(lineno, f"word {line!r} uses letters beyond k={bound}")
        words.append(w)
    if not words:
        raise SetFileError(0, "no words in set")
    size = k if k is not None else header_k
    return UniformSet(words, size)


def read_set_file(path: str | Path, k: int | None = None) -> UniformSet:
    return parse_set_text(Path(path).read_text(encoding="utf-8"), k)
