"""Catalog of periodic avoiding-word families for the X2-shaped ternary sets.

Each family pairs a word shape with residue conditions on ``(m, x1, y1)``.
A parameter tuple compiles to a :class:`Residues` record (one modulus, the
required residue of ``m``, allowed residues of ``x1`` and ``y1``), so a
condition check is three table look-ups.

Family ids are stable strings (``T1.R3``, ``T2.R1``, ``T4(Eq2).R1``, ...)
used in sweep records and CLI output.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

import numpy as np

from .decider import Avoidable, CertificateError, decide_bounded_period
from .theory import ConjectureInstance, Eq2Instance, even_fill_applicable, midpoint_applicable, midpoint_avoider
from .words import Alphabet, PeriodicWord, avoids_set

log = logging.getLogger(__name__)

IFF = "iff"
SUFFICIENT = "sufficient"

ACTIVE = "active"
QUARANTINED = "quarantined"
EXPERIMENTAL = "experimental"

TERNARY = Alphabet(3)


@dataclass(frozen=True)
class Residues:
    """``m = m_res (mod M)``, ``x1 mod M`` in ``x_res``, ``y1 mod M`` in ``y_res``.

    ``None`` means unconstrained.  ``y_exact`` lists literal values of ``y1``
    accepted regardless of residue.
    """

    modulus: int
    m_res: int
    x_res: Optional[frozenset] = None
    y_res: Optional[frozenset] = None
    y_exact: frozenset = frozenset()

    def m_ok(self, m: int) -> bool:
        return m % self.modulus == self.m_res

    def x_ok(self, x1: int) -> bool:
        return self.x_res is None or x1 % self.modulus in self.x_res

    def y_ok(self, y1: int) -> bool:
        return y1 in self.y_exact or self.y_res is None or y1 % self.modulus in self.y_res

    def holds(self, m: int, x1: int, y1: int) -> bool:
        return self.m_ok(m) and self.x_ok(x1) and self.y_ok(y1)

    def x_table(self) -> np.ndarray:
        return _table(self.modulus, self.x_res)

    def y_table(self) -> np.ndarray:
        return _table(self.modulus, self.y_res)


def _table(M: int, res: Optional[frozenset]) -> np.ndarray:
    if res is None:
        return np.ones(M, dtype=bool)
    t = np.zeros(M, dtype=bool)
    t[list(res)] = True
    return t


def _rs(M: int, values) -> frozenset:
    return frozenset(v % M for v in values)


def _res(M: int, m_res: int, xs=None, ys=None, y_exact=()) -> Residues:
    return Residues(
        M,
        m_res % M,
        None if xs is None else _rs(M, xs),
        None if ys is None else _rs(M, ys),
        frozenset(y_exact),
    )


@dataclass(frozen=True, eq=False)
class PatternFamily:
    id: str
    shape: str
    param_names: tuple
    strength: str
    params: Callable[[int], Iterator[tuple]]
    residues: Callable[[tuple], Residues]
    build: Callable[[tuple], str]
    derive: Optional[Callable[[int, int, int], tuple]] = None
    status: str = ACTIVE
    note: str = ""

    def word(self, params: tuple) -> PeriodicWord:
        return PeriodicWord.parse(self.build(params), TERNARY)

    @property
    def active(self) -> bool:
        return self.status == ACTIVE

    def __repr__(self) -> str:
        return f"PatternFamily({self.id} {self.shape})"


@dataclass(frozen=True, eq=False)
class Eq2Family:
    """Family for the ``a..a..a / b..c..c`` sets; params come straight from the instance."""

    id: str
    shape: str
    condition: Callable[[Eq2Instance], Optional[tuple]]
    build: Callable[[int, tuple], str]
    strength: str = SUFFICIENT
    status: str = ACTIVE

    def word(self, m: int, params: tuple) -> PeriodicWord:
        return PeriodicWord.parse(self.build(m, params), TERNARY)


# --- single-table (parametric) rows ---------------------------------------------------


def _p_r1(B):
    for p in range(1, B // 2 + 1):
        yield (p,)


def _r_r1(t):
    (p,) = t
    return _res(2 * p, p + 1, xs=[-1])


def _r_r2(t):
    (p,) = t
    return _res(2 * p, p + 1, ys=[p - 1])


def _p_r3(B):
    for s in range(1, (B - 1) // 2 + 1):
        for q in range(1, s + 1):
            yield (s - q, q)


def _r_r3(t):
    p, q = t
    M = 2 * (p + q) + 1
    return _res(M, 2, xs=[2 * j - 1 for j in range(q + 1)], ys=[2 * k - 1 for k in range(q, q + p + 2)])


def _p_r4(B):
    for p in range(0, B):
        for q in range(1, B):
            b0 = 2 * p + 2 * q + 1
            if b0 + 2 > B:
                break
            for r in range(1, B):
                if r * b0 + 2 > B:
                    break
                yield (p, q, r)


def _r_r4(t):
    p, q, r = t
    b0 = 2 * p + 2 * q + 1
    M = r * b0 + 2
    xs = [b0 * j + 2 * k - 1 for j in range(r + 1) for k in range(1, r + 1)]
    ts = list(range(q, p + q)) + [0]
    ys = [(2 * q + 2 * r + 1) * s + 2 * tt + 1 for s in range(r) for tt in ts]
    return _res(M, 2, xs=xs, ys=ys)


def _p_r5(B):
    for p in range(0, B):
        for q in range(1, B):
            b0 = 2 * p + 2 * q + 1
            if b0 - 2 > B:
                break
            for r in range(0, B):
                if (r + 1) * b0 - 2 > B:
                    break
                yield (p, q, r)


def _r_r5(t):
    p, q, r = t
    b0 = 2 * p + 2 * q + 1
    M = (r + 1) * b0 - 2
    xs = [b0 * j + 2 * k for j in range(r + 1) for k in range(p, p + q)]
    ys = [b0 * s + 2 * tt for s in range(r + 1) for tt in range(-1, p + 1)]
    return _res(M, 0, xs=xs, ys=ys)


def _w_r5(t):
    p, q, r = t
    return ("ab" * p + "a" + "cb" * q) * r + "ab" * p + "a" + "cb" * (q - 1)


def _p_pqr(lo_p, lo_r, strict_p, strict_r, total):
    def gen(B):
        for q in range(1, B + 1):
            for p in range(lo_p, q + (0 if strict_p else 1)):
                for r in range(lo_r, q + (0 if strict_r else 1)):
                    if q <= p + r and total(p, q, r) <= B and total(p, q, r) >= 1:
                        yield (p, q, r)

    return gen


def _sorted_gen(gen):
    def g(B):
        return iter(sorted(gen(B)))

    return g


_p_r67 = _sorted_gen(_p_pqr(1, 1, False, False, lambda p, q, r: p + q + r))
_p_r8 = _sorted_gen(_p_pqr(0, 1, True, False, lambda p, q, r: 2 * p + 2 * q + 2 * r - 1))
_p_r9 = _sorted_gen(_p_pqr(1, 0, False, True, lambda p, q, r: 2 * p + 2 * q + 2 * r - 1))


def _r_r6(t):
    p, q, r = t
    M = p + q + r
    return _res(M, q + 1, xs=range(p + q - 1, p + q + r), ys=range(q - 1, p + q))


def _r_r7(t):
    p, q, r = t
    M = p + q + r
    return _res(M, p + r + 1, xs=range(-1, r), ys=range(r - 1, p + r))


def _r_r8(t):
    p, q, r = t
    M = 2 * p + 2 * q + 2 * r - 1
    xs = list(range(p + q - 1, p + q + r - 1)) + list(range(2 * p + 2 * q + r - 1, 2 * p + 2 * q + 2 * r - 1))
    ys = list(range(q - 1, p + q)) + list(range(p + 2 * q + r - 2, 2 * p + 2 * q + r - 1))
    return _res(M, p + r + 2 * q, xs=xs, ys=ys)


def _r_r9(t):
    p, q, r = t
    M = 2 * p + 2 * q + 2 * r - 1
    xs = list(range(1, r)) + list(range(p + r + q - 1, p + 2 * r + q))
    ys = list(range(r - 1, p + r)) + list(range(2 * p + r, 2 * p + 2 * r + q - 1))
    return _res(M, p + r + 1, xs=xs, ys=ys)


def _p_r1011(B):
    for p in range(1, B + 1):
        for q in range(1, B + 1):
            if 2 * p * q + 1 > B:
                break
            for r in range(1, q + 1):
                if 2 * p * q + r > B:
                    break
                yield (p, q, r)


def _r_r10(t):
    p, q, r = t
    M = 2 * p * q + r
    xs = [-1] + [2 * q * j + k for j in range(p) for k in range(q + r - 1, 2 * q)]
    return _res(M, q + 1, xs=xs, ys=[q - 1])


def _r_r11(t):
    p, q, r = t
    M = 2 * p * q + r
    xs = [-1] + [2 * q * j + k for j in range(p) for k in range(r - 1, r + q - 1)]
    return _res(M, -q + 1, xs=xs, ys=[-q - 1, q - 1])


def _p_r12(B):
    for p in range(0, B):
        if 4 * p + 3 > B:
            break
        for q in range(1, B + 1):
            if (4 * p + 3) * q > B:
                break
            yield (p, q)


def _r_r12(t):
    p, q = t
    M = (4 * p + 3) * q
    xs = [-1] + [4 * q * j + k - 1 for j in range(p + 1) for k in range(2 * q, 3 * q + 1)]
    return _res(M, -2 * q + 1, xs=xs, ys=[-2 * q - 1, 2 * q - 1])


def _p_r13(B):
    for q in range(1, B + 1):
        if 2 * q + 2 > B:
            break
        for p in range(1, q + 1):
            for t in range(1, B + 1):
                if t * (2 * q + 1) + 1 > B:
                    break
                yield (p, q, t)


def _r_r13(tt):
    p, q, t = tt
    r = q + 1 - p
    M = t * (p + q + r) + 1
    xs = [(2 * q + 1) * j + k - 1 for j in range(t + 1) for k in range(1, r + 1)]
    ys = [(2 * q + 1) * h + i for h in range(t + 1) for i in range(r, q + 1)]
    return _res(M, q + 2, xs=xs, ys=ys)


def _w_r13(tt):
    p, q, t = tt
    r = q + 1 - p
    return ("a" * p + "c" * r + "b" * q) * t + "b"


def _single(res: Residues):
    def gen(B):
        if res.modulus <= B:
            yield ()

    return gen, (lambda t: res)


def _fixed(shape_text: str, res: Residues, text: str, fid: str, derive=None, build=None, status=ACTIVE, note=""):
    gen, rfun = _single(res)
    return PatternFamily(
        fid,
        shape_text,
        (),
        SUFFICIENT,
        gen,
        rfun,
        build or (lambda t: text),
        derive,
        status,
        note,
    )


def _eq1_families() -> list[PatternFamily]:
    F = PatternFamily
    rows = [
        F("T1.R1", "(a^p b^p)^Z", ("p",), IFF, _p_r1, _r_r1, lambda t: "a" * t[0] + "b" * t[0]),
        F("T1.R2", "(b^p c^p)^Z", ("p",), IFF, _p_r1, _r_r2, lambda t: "b" * t[0] + "c" * t[0]),
        F("T1.R3", "((ab)^p a (bc)^q)^Z", ("p", "q"), IFF, _p_r3, _r_r3, lambda t: "ab" * t[0] + "a" + "bc" * t[1]),
        F(
            "T1.R4",
            "(ab((ab)^p a (bc)^q)^r)^Z",
            ("p", "q", "r"),
            IFF,
            _p_r4,
            _r_r4,
            lambda t: "ab" + ("ab" * t[0] + "a" + "bc" * t[1]) * t[2],
        ),
        F("T1.R5", "(((ab)^p a (cb)^q)^r (ab)^p a (cb)^(q-1))^Z", ("p", "q", "r"), IFF, _p_r5, _r_r5, _w_r5),
        F("T1.R6", "(a^p b^q c^r)^Z", ("p", "q", "r"), IFF, _p_r67, _r_r6, lambda t: "a" * t[0] + "b" * t[1] + "c" * t[2]),
        F("T1.R7", "(a^p c^r b^q)^Z", ("p", "q", "r"), IFF, _p_r67, _r_r7, lambda t: "a" * t[0] + "c" * t[2] + "b" * t[1]),
        F(
            "T1.R8",
            "(a^(p+1) b^(q-1) c^r a^p b^q c^(r-1))^Z",
            ("p", "q", "r"),
            IFF,
            _p_r8,
            _r_r8,
            lambda t: "a" * (t[0] + 1) + "b" * (t[1] - 1) + "c" * t[2] + "a" * t[0] + "b" * t[1] + "c" * (t[2] - 1),
        ),
        F(
            "T1.R9",
            "(a^(p-1) c^(r+1) b^(q-1) a^p c^r b^q)^Z",
            ("p", "q", "r"),
            IFF,
            _p_r9,
            _r_r9,
            lambda t: "a" * (t[0] - 1) + "c" * (t[2] + 1) + "b" * (t[1] - 1) + "a" * t[0] + "c" * t[2] + "b" * t[1],
        ),
        F(
            "T1.R10",
            "(a^r (b^q c^q)^p)^Z",
            ("p", "q", "r"),
            IFF,
            _p_r1011,
            _r_r10,
            lambda t: "a" * t[2] + ("b" * t[1] + "c" * t[1]) * t[0],
        ),
        F(
            "T1.R11",
            "(a^r (c^q b^q)^p)^Z",
            ("p", "q", "r"),
            IFF,
            _p_r1011,
            _r_r11,
            lambda t: "a" * t[2] + ("c" * t[1] + "b" * t[1]) * t[0],
        ),
        F(
            "T1.R12",
            "(a^q b^q c^q (c^q b^2q c^q)^p)^Z",
            ("p", "q"),
            IFF,
            _p_r12,
            _r_r12,
            lambda t: "a" * t[1] + "b" * t[1] + "c" * t[1] + ("c" * t[1] + "b" * (2 * t[1]) + "c" * t[1]) * t[0],
        ),
        F("T1.R13", "((a^p c^r b^q)^t b)^Z, r = q+1-p", ("p", "q", "t"), IFF, _p_r13, _r_r13, _w_r13),
    ]
    rows += [
        _fixed("(ab)^Z", _res(2, 0, xs=[1], ys=[0, 1]), "ab", "T2.R1"),
        _fixed("(bc)^Z", _res(2, 0, xs=[0, 1], ys=[0]), "bc", "T2.R2"),
        _fixed(
            "((ab)^p a (cb)^q)^Z, p = y1/2, 2(p+q)+1 = m",
            _res(2, 1, xs=[0], ys=[0]),
            "",
            "T2.R3",
            derive=lambda m, x1, y1: (y1 // 2, (m - 1 - y1) // 2),
            build=lambda t: "ab" * t[0] + "a" + "cb" * t[1],
        ),
        _fixed("(abc)^Z", _res(3, 2, xs=[1, 2], ys=[0, 1]), "abc", "T3.R1"),
        _fixed("(acb)^Z", _res(3, 0, xs=[0, 2], ys=[0, 1]), "acb", "T3.R2"),
        _fixed(
            "(ab(abc)^p)^Z, 3p+2 = m-1",
            _res(3, 1, xs=[1], ys=[0], y_exact=[1]),
            "",
            "T3.R3",
            derive=lambda m, x1, y1: ((m - 1) // 3 - 1,),
            build=lambda t: "ab" + "abc" * t[0],
            status=EXPERIMENTAL,
            note="'=v' read as the literal value y1 = v",
        ),
        _fixed(
            "((acb)^p b)^Z, 3p+1 = m-3",
            _res(3, 1, xs=[0], ys=[1], y_exact=[0]),
            "",
            "T3.R4",
            derive=lambda m, x1, y1: ((m - 1) // 3 - 1,),
            build=lambda t: "acb" * t[0] + "b",
            status=EXPERIMENTAL,
            note="'=v' read as the literal value y1 = v",
        ),
        _fixed("(a^2 b^2)^Z", _res(4, 3, xs=[3]), "aabb", "T4.R1"),
        _fixed("(b^2 c^2)^Z", _res(4, 3, ys=[1]), "bbcc", "T4.R2"),
    ]
    return rows


# Outcome of the empirical audit (see ``audit_family``), frozen here so the
# registry is deterministic.  A test re-runs the audit and compares.
AUDIT_RANGE = 30  # converse (IFF) checks run for m <= AUDIT_RANGE
QUARANTINE: dict[str, str] = {
    "T1.R4": "condition holds but word meets the set, e.g. m=10, x1=6, y1=0 with (p,q,r)=(0,1,2)",
    "T1.R5": "condition holds but word meets the set, e.g. m=4, x1=1, y1=0 with (p,q,r)=(0,1,0)",
    "T1.R9": "condition holds but word meets the set, e.g. m=10, x1=4, y1=0 with (p,q,r)=(1,2,1)",
    "T1.R11": "condition holds but word meets the set, e.g. m=13, x1=6, y1=1 with (p,q,r)=(3,2,2)",
}
DEMOTED: dict[str, str] = {
    "T1.R4": "word avoids without the condition, e.g. m=7, x1=4, y1=0 with (p,q,r)=(0,1,1)",
    "T1.R9": "word avoids without the condition, e.g. m=5, x1=1, y1=1 with (p,q,r)=(1,1,0)",
    "T1.R10": "word avoids without the condition, e.g. m=5, x1=1, y1=1 with (p,q,r)=(1,1,1)",
    "T1.R11": "word avoids without the condition, e.g. m=11, x1=5, y1=2 with (p,q,r)=(1,2,2)",
    "T1.R12": "word avoids without the condition, e.g. m=9, x1=3, y1=2 with (p,q)=(0,2)",
}


def _apply_audit(f: PatternFamily) -> PatternFamily:
    from dataclasses import replace

    if f.id in QUARANTINE and f.status == ACTIVE:
        f = replace(f, status=QUARANTINED, note=QUARANTINE[f.id])
    if f.id in DEMOTED and f.strength == IFF:
        f = replace(f, strength=SUFFICIENT, note=DEMOTED[f.id])
    return f


# --- equal-gap families ---------------------------------------------------------------


def _eq2_r1(inst: Eq2Instance):
    # the word avoids exactly when y1 is odd (y2 even), whatever x1
    return () if inst.m % 2 == 0 and inst.y1 % 2 == 1 else None


def _eq2_r2(inst: Eq2Instance):
    return () if inst.m % 2 == 1 and inst.x1 % 2 == 0 and inst.y1 % 2 == 0 else None


def _eq2_r3(inst: Eq2Instance):
    if inst.y1 <= inst.x1 <= inst.x2 <= inst.y2:
        return (inst.x1 + 1, inst.x2 + 1)
    return None


def _eq2_r4(inst: Eq2Instance):
    if inst.y2 <= inst.x1 <= inst.x2 <= inst.y1:
        return (inst.x1 + 1, inst.x2 + 1)
    return None


def _block_prefix(width: int, q: int) -> str:
    u = ("b" * width + "c" * width) * (q // (2 * width) + 1)
    return u[:q]


def _bar(s: str) -> str:
    return s.translate(str.maketrans("bc", "cb"))


def _eq2_families() -> list[Eq2Family]:
    return [
        Eq2Family(
            "T4(Eq2).R1",
            "(a(bc)^((m-2)/2) a(cb)^((m-2)/2))^Z",
            _eq2_r1,
            lambda m, t: "a" + "bc" * ((m - 2) // 2) + "a" + "cb" * ((m - 2) // 2),
        ),
        Eq2Family(
            "T4(Eq2).R2",
            "((ab)^((m-1)/2) (ac)^((m-1)/2))^Z",
            _eq2_r2,
            lambda m, t: "ab" * ((m - 1) // 2) + "ac" * ((m - 1) // 2),
        ),
        Eq2Family(
            "T4(Eq2).R3",
            "(a^p b^q a^p c^q)^Z, p = x1+1, q = x2+1",
            _eq2_r3,
            lambda m, t: "a" * t[0] + "b" * t[1] + "a" * t[0] + "c" * t[1],
        ),
        Eq2Family(
            "T4(Eq2).R4",
            "(a^p u_q a^p ~u_q)^Z, u = (b^(y2+1) c^(y2+1))^N",
            _eq2_r4_cond,
            _eq2_r4_build,
        ),
    ]


def _eq2_r4_cond(inst: Eq2Instance):
    """Smallest ``q`` (with ``p = m-1-q``) whose word avoids; None if the ordering fails."""
    if not inst.y2 <= inst.x1 <= inst.x2 <= inst.y1:
        return None
    X = inst.to_set()
    for q in range(1, inst.m - 1):
        t = (inst.m - 1 - q, q, inst.y2 + 1)
        if avoids_set(PeriodicWord.parse(_eq2_r4_build(inst.m, t), TERNARY), X):
            return t
    raise CertificateError(f"no feasible q for {inst}")


def _eq2_r4_build(m: int, t: tuple) -> str:
    p, q, width = t
    u = _block_prefix(width, q)
    return "a" * p + u + "a" * p + _bar(u)


# --- registry -------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _registry_all() -> tuple:
    return tuple(_apply_audit(f) for f in _eq1_families())


def registry(include_experimental: bool = False, include_quarantined: bool = False) -> list:
    """Every family: Eq1 rows (active, plus optional experimental/quarantined) then Eq2 rows."""
    out: list = []
    for f in _registry_all():
        if f.status == ACTIVE or (f.status == EXPERIMENTAL and include_experimental) or (
            f.status == QUARANTINED and include_quarantined
        ):
            out.append(f)
    return out + list(eq2_registry())


def eq1_families(include_experimental: bool = False, include_quarantined: bool = False) -> list[PatternFamily]:
    return [f for f in registry(include_experimental, include_quarantined) if isinstance(f, PatternFamily)]


@lru_cache(maxsize=None)
def eq2_registry() -> tuple:
    return tuple(_eq2_families())


def family(fid: str):
    for f in list(_registry_all()) + list(eq2_registry()):
        if f.id == fid:
            return f
    raise KeyError(fid)


def registry_hash(families=None) -> str:
    import hashlib

    fams = families if families is not None else eq1_families()
    text = ";".join(f"{f.id}:{f.status}:{f.strength}" for f in fams)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


# --- candidate enumeration ------------------------------------------------------------


@lru_cache(maxsize=64)
def _grouped(fid: str, bound: int) -> dict:
    """Parameter tuples with modulus <= bound, grouped by (modulus, residue of m)."""
    f = family(fid)
    groups: dict[tuple[int, int], list] = {}
    for t in f.params(bound):
        r = f.residues(t)
        if r.modulus <= bound:
            groups.setdefault((r.modulus, r.m_res), []).append((t, r))
    return groups


def _bound_for(limit: int) -> int:
    b = 64
    while b < limit:
        b *= 2
    return b


@lru_cache(maxsize=4096)
def candidates(fid: str, m: int, mod_bound: int | None = None) -> tuple:
    """``(params, Residues)`` pairs whose ``m`` congruence holds, modulus <= ``mod_bound``
    (default ``2m``), sorted lexicographically by params."""
    B = 2 * m if mod_bound is None else mod_bound
    groups = _grouped(fid, _bound_for(B))
    out = []
    for M in range(1, B + 1):
        out.extend(groups.get((M, m % M), ()))
    out.sort(key=lambda tr: tr[0])
    return tuple(out)


def eval_condition(f: PatternFamily, inst: ConjectureInstance, mod_bound: int | None = None) -> Optional[tuple]:
    """Lexicographically smallest params whose condition holds, else None."""
    for t, r in candidates(f.id, inst.m, mod_bound):
        if r.x_ok(inst.x1) and r.y_ok(inst.y1):
            return f.derive(inst.m, inst.x1, inst.y1) if f.derive else t
    return None


def condition_holds(f: PatternFamily, inst: ConjectureInstance, params: tuple) -> bool:
    if f.derive:
        return f.residues(()).holds(inst.m, inst.x1, inst.y1) and f.derive(inst.m, inst.x1, inst.y1) == params
    return f.residues(params).holds(inst.m, inst.x1, inst.y1)


def tab1r3_iff_check(m: int, x1: int, y1: int, p: int, q: int) -> bool:
    """Residue conditions under which ``((ab)^p a (bc)^q)^Z`` avoids the instance's set."""
    if q <= 0 or p < 0:
        raise ValueError(f"needs p >= 0 and q > 0, got p={p}, q={q}")
    return _r_r3((p, q)).holds(m, x1, y1)


# --- matching -------------------------------------------------------------------------


@dataclass(frozen=True)
class Match:
    family: str
    params: tuple
    word: PeriodicWord


@dataclass(frozen=True)
class MatchReport:
    instance: ConjectureInstance
    matches: tuple = field(default_factory=tuple)

    @property
    def uncovered(self) -> bool:
        return not self.matches

    @property
    def ids(self) -> tuple:
        return tuple(mt.family for mt in self.matches)

    def best(self) -> Optional[Match]:
        """Match with the shortest certificate (ties: registry order)."""
        if not self.matches:
            return None
        return min(self.matches, key=lambda mt: mt.word.primitive().period)


EVEN_FILL = "P.even-fill"
MIDPOINT = "P.midpoint"
PSEUDO_FAMILIES = (EVEN_FILL, MIDPOINT)


def _pseudo_matches(inst: ConjectureInstance) -> list[Match]:
    out = []
    if even_fill_applicable(inst):
        v = decide_bounded_period(inst.to_set(), inst.m)
        if not isinstance(v, Avoidable):
            raise CertificateError(f"even-fill condition holds but no word of period <= m for {inst}")
        out.append(Match(EVEN_FILL, (), v.certificate))
    if midpoint_applicable(inst):
        out.append(Match(MIDPOINT, (), midpoint_avoider(inst)))
    return out


def _checked(f: PatternFamily, inst: ConjectureInstance, params: tuple, X) -> Match:
    w = f.word(params)
    if not avoids_set(w, X):
        raise CertificateError(f"{f.id} params {params}: {w} meets the set of {inst}")
    return Match(f.id, params, w)


def match_families(
    inst: ConjectureInstance, families: list[PatternFamily] | None = None, pseudo: bool = True
) -> MatchReport:
    """All families whose conditions hold, each word verified to avoid the set."""
    fams = eq1_families() if families is None else families
    X = inst.to_set()
    out = []
    for f in fams:
        t = eval_condition(f, inst)
        if t is not None:
            out.append(_checked(f, inst, t, X))
    if pseudo:
        out.extend(_pseudo_matches(inst))
    return MatchReport(inst, tuple(out))


def region_layer(m: int) -> list[ConjectureInstance]:
    """Conjecture-region instances with this ``m``, ordered by ``(x1, y1)``."""
    out = []
    for x1 in range(m - 2):
        x2 = m - 3 - x1
        if x2 > x1:
            continue
        for y1 in range(0, x2 + 1):
            if x1 <= m - 3 - y1:
                out.append(ConjectureInstance(m, x1, y1))
    return out


def first_params_layer(f: PatternFamily, insts: list[ConjectureInstance], mod_bound: int | None = None) -> list:
    """Vectorized :func:`eval_condition` over instances sharing one ``m``."""
    if not insts:
        return []
    m = insts[0].m
    assert all(i.m == m for i in insts)
    xs = np.array([i.x1 for i in insts])
    ys = np.array([i.y1 for i in insts])
    best: list = [None] * len(insts)
    todo = np.ones(len(insts), dtype=bool)
    y_exact = np.zeros(len(insts), dtype=bool)
    for t, r in candidates(f.id, m, mod_bound):
        M = r.modulus
        mask = todo & r.x_table()[xs % M]
        if not mask.any():
            continue
        yok = r.y_table()[ys % M]
        if r.y_exact:
            y_exact[:] = np.isin(ys, list(r.y_exact))
            yok = yok | y_exact
        mask &= yok
        for i in np.flatnonzero(mask):
            best[i] = f.derive(m, int(xs[i]), int(ys[i])) if f.derive else t
        todo &= ~mask
        if not todo.any():
            break
    return best


def match_layer(
    m: int, families: list[PatternFamily] | None = None, pseudo: bool = True
) -> list[MatchReport]:
    """:func:`match_families` for a whole conjecture-region layer."""
    fams = eq1_families() if families is None else families
    insts = region_layer(m)
    per_family = [first_params_layer(f, insts) for f in fams]
    reports = []
    for idx, inst in enumerate(insts):
        X = None
        out = []
        for f, params in zip(fams, per_family):
            t = params[idx]
            if t is not None:
                X = X or inst.to_set()
                out.append(_checked(f, inst, t, X))
        if pseudo:
            out.extend(_pseudo_matches(inst))
        reports.append(MatchReport(inst, tuple(out)))
    return reports


# --- empirical audit ------------------------------------------------------------------


def violation_profile(word: PeriodicWord, m: int) -> tuple[bool, np.ndarray, np.ndarray]:
    """Which parts of an X2 instance ``word`` meets, for every split at once.

    Returns ``(base, xbad, ybad)``: ``base`` when it meets one of the four
    unsplit words; ``xbad[x1]`` when it meets ``a -^x1 b -^x2 b``; ``ybad[y1]``
    when it meets ``b -^y1 b -^y2 c``.
    """
    w = np.array(word.base)
    P = len(w)
    idx = np.arange(P)
    end = w[(idx + m - 1) % P]
    a, b, c = 0, 1, 2
    base = bool(np.any((w == end) | ((w == a) & (end == c))))
    xbad = np.zeros(m - 2, dtype=bool)
    ybad = np.zeros(m - 2, dtype=bool)
    for s in range(m - 2):
        mid = w[(idx + s + 1) % P]
        xbad[s] = np.any((w == a) & (mid == b) & (end == b))
        ybad[s] = np.any((w == b) & (mid == b) & (end == c))
    return base, xbad, ybad


@dataclass
class AuditResult:
    family: str
    soundness_violations: list = field(default_factory=list)
    converse_violations: list = field(default_factory=list)
    checked: int = 0


def audit_family(f: PatternFamily, m_max: int, converse_m_max: int | None = None, limit: int = 20) -> AuditResult:
    """Check condition => avoidance (and, up to ``converse_m_max``, avoidance => condition
    for the same params) over conjecture-region instances, moduli <= 2m."""
    res = AuditResult(f.id)
    for m in range(4, m_max + 1):
        insts = region_layer(m)
        if not insts:
            continue
        xs = np.array([i.x1 for i in insts])
        ys = np.array([i.y1 for i in insts])
        do_conv = converse_m_max is not None and m <= converse_m_max and not f.derive
        cands = candidates(f.id, m) if not do_conv else _all_params_for(f, m)
        for t, r in cands:
            if f.derive:
                cond = np.array([r.holds(m, int(x), int(y)) for x, y in zip(xs, ys)])
                for i in np.flatnonzero(cond):
                    tt = f.derive(m, int(xs[i]), int(ys[i]))
                    res.checked += 1
                    if not avoids_set(f.word(tt), insts[i].to_set()):
                        res.soundness_violations.append((insts[i], tt))
                continue
            cond = np.full(len(insts), r.m_ok(m)) & r.x_table()[xs % r.modulus] & r.y_table()[ys % r.modulus]
            if r.y_exact:
                cond |= r.m_ok(m) & r.x_table()[xs % r.modulus] & np.isin(ys, list(r.y_exact))
            if not cond.any() and not do_conv:
                continue
            base, xbad, ybad = violation_profile(f.word(t), m)
            avoid = ~(base | xbad[xs] | ybad[ys])
            res.checked += int(cond.sum())
            for i in np.flatnonzero(cond & ~avoid):
                if len(res.soundness_violations) < limit:
                    res.soundness_violations.append((insts[i], t))
            if do_conv:
                for i in np.flatnonzero(avoid & ~cond):
                    if len(res.converse_violations) < limit:
                        res.converse_violations.append((insts[i], t))
    return res


def _all_params_for(f: PatternFamily, m: int) -> list:
    """Every parameter tuple with modulus <= 2m, regardless of the m congruence."""
    groups = _grouped(f.id, _bound_for(2 * m))
    out = [tr for (M, _), lst in groups.items() if M <= 2 * m for tr in lst]
    out.sort(key=lambda tr: tr[0])
    return out


def audit_eq2(m_max: int, limit: int = 20) -> dict[str, AuditResult]:
    """Condition => avoidance for the ``a..a..a / b..c..c`` families, every split, ``m <= m_max``."""
    out = {f.id: AuditResult(f.id) for f in eq2_registry()}
    for m in range(3, m_max + 1):
        for x1 in range(m - 2):
            for y1 in range(m - 2):
                inst = Eq2Instance(m, x1, y1)
                X = None
                for f in eq2_registry():
                    t = f.condition(inst)
                    if t is None:
                        continue
                    X = X or inst.to_set()
                    res = out[f.id]
                    res.checked += 1
                    if not avoids_set(f.word(m, t), X) and len(res.soundness_violations) < limit:
                        res.soundness_violations.append((inst, t))
    return out
