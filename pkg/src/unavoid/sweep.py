"""Exhaustive sweep over the conjecture region with resumable, checksummed records.

Records file layout (UTF-8, one record per line)::

    # unavoid-sweep 1<TAB>m_lo=3<TAB>m_hi=100<TAB>registry=<hash><TAB>range=...
    m  x1  y1  verdict  period  certificate  families  millis  checksum

``families`` is a comma-separated id list or ``-``; ``millis`` is ``-`` unless
timing was requested, which keeps files byte-identical across runs.
"""
from __future__ import annotations

import logging
import os
import random
import time
import zlib
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterator, Optional

from . import __version__
from .decider import Avoidable, decide_bounded_period
from .patterns import match_layer, region_layer, registry_hash
from .theory import ConjectureInstance
from .words import PeriodicWord, avoids_set

log = logging.getLogger(__name__)

FORMAT = "unavoid-sweep 1"
RANGE_NOTE = "range=m_lo..m_hi inclusive, m_lo=3 calibrated (41650 instances up to 100)"
DEFAULT_M_LO = 3

AVOIDABLE = "Avoidable"
UNKNOWN = "Unknown"


class SweepError(RuntimeError):
    pass


class CorruptRecords(SweepError):
    pass


class VerificationError(SweepError):
    pass


def _checksum(body: str) -> str:
    return f"{zlib.crc32(body.encode()):08x}"


@dataclass(frozen=True)
class SweepRecord:
    m: int
    x1: int
    y1: int
    verdict: str
    period: Optional[int]
    certificate: str
    families: tuple
    millis: Optional[int] = None

    @property
    def instance(self) -> ConjectureInstance:
        return ConjectureInstance(self.m, self.x1, self.y1)

    @property
    def key(self) -> tuple:
        return (self.m, self.x1, self.y1)

    def body(self) -> str:
        return "\t".join(
            [
                str(self.m),
                str(self.x1),
                str(self.y1),
                self.verdict,
                "-" if self.period is None else str(self.period),
                self.certificate or "-",
                ",".join(self.families) or "-",
                "-" if self.millis is None else str(self.millis),
            ]
        )

    def to_line(self) -> str:
        b = self.body()
        return f"{b}\t{_checksum(b)}\n"

    @classmethod
    def from_line(cls, line: str, lineno: int = 0) -> "SweepRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 9:
            raise CorruptRecords(f"line {lineno}: expected 9 fields, got {len(parts)}")
        body = "\t".join(parts[:8])
        if _checksum(body) != parts[8]:
            raise CorruptRecords(f"line {lineno}: checksum mismatch for record {' '.join(parts[:3])}")
        try:
            m, x1, y1 = int(parts[0]), int(parts[1]), int(parts[2])
            period = None if parts[4] == "-" else int(parts[4])
            millis = None if parts[7] == "-" else int(parts[7])
        except ValueError as e:
            raise CorruptRecords(f"line {lineno}: {e}") from None
        fams = () if parts[6] == "-" else tuple(parts[6].split(","))
        cert = "" if parts[5] == "-" else parts[5]
        return cls(m, x1, y1, parts[3], period, cert, fams, millis)

    def verify(self) -> None:
        """Re-check the record's internal invariants and its certificate."""
        inst = self.instance
        if self.verdict == AVOIDABLE:
            w = PeriodicWord.parse(self.certificate, 3)
            if w.period != self.period:
                raise VerificationError(f"record {self.key}: period {self.period} != |{self.certificate}|")
            if self.period >= 2 * self.m:
                raise VerificationError(f"record {self.key}: period {self.period} not below 2m")
            if not avoids_set(w, inst.to_set()):
                raise VerificationError(f"record {self.key}: certificate {self.certificate} meets the set")
        elif self.verdict == UNKNOWN:
            if self.families:
                raise VerificationError(f"record {self.key}: matched families but Unknown verdict")
        else:
            raise VerificationError(f"record {self.key}: bad verdict {self.verdict!r}")


@dataclass
class SweepReport:
    m_lo: int
    m_hi: int
    total: int = 0
    avoidable: int = 0
    unknown: int = 0
    uncovered: list = field(default_factory=list)
    unknown_instances: list = field(default_factory=list)
    max_period: int = 0
    verified: int = 0

    def add(self, r: SweepRecord) -> None:
        self.total += 1
        if r.verdict == AVOIDABLE:
            self.avoidable += 1
            self.max_period = max(self.max_period, r.period or 0)
            if not r.families:
                self.uncovered.append(r.key)
        else:
            self.unknown += 1
            self.unknown_instances.append(r.key)

    def lines(self) -> list[str]:
        out = [
            f"m range: {self.m_lo}..{self.m_hi}",
            f"total: {self.total}",
            f"avoidable: {self.avoidable}",
            f"unknown: {self.unknown}",
            f"uncovered: {len(self.uncovered)}",
            f"max period: {self.max_period}",
        ]
        out += [f"  uncovered m={m} x1={x1} y1={y1}" for m, x1, y1 in self.uncovered]
        out += [f"  UNKNOWN m={m} x1={x1} y1={y1}" for m, x1, y1 in self.unknown_instances]
        return out


def enumerate_instances(m_lo: int, m_hi: int) -> list[ConjectureInstance]:
    """Conjecture-region instances ordered by ``(m, x1, y1)``."""
    if not 3 <= m_lo <= m_hi:
        raise ValueError(f"need 3 <= m_lo <= m_hi, got {m_lo}, {m_hi}")
    out: list[ConjectureInstance] = []
    for m in range(m_lo, m_hi + 1):
        out.extend(region_layer(m))
    return out


def count_instances(m_lo: int, m_hi: int) -> int:
    return len(enumerate_instances(m_lo, m_hi))


def header(m_lo: int, m_hi: int) -> str:
    return f"# {FORMAT}\tversion={__version__}\tm_lo={m_lo}\tm_hi={m_hi}\tregistry={registry_hash()}\t{RANGE_NOTE}\n"


def _decide_layer(args) -> list[SweepRecord]:
    m, skip, timing = args
    out = []
    for rep in match_layer(m):
        inst = rep.instance
        if (inst.m, inst.x1, inst.y1) in skip:
            continue
        t0 = time.perf_counter()
        best = rep.best()
        cert = best.word.primitive() if best else None
        if cert is None or cert.period >= 2 * m:
            v = decide_bounded_period(inst.to_set(), 2 * m - 1)
            cert = v.certificate if isinstance(v, Avoidable) else None
        millis = int((time.perf_counter() - t0) * 1000) if timing else None
        if cert is None:
            log.warning("no avoiding word of period < 2m for %s", inst)
            out.append(SweepRecord(m, inst.x1, inst.y1, UNKNOWN, None, "", (), millis))
        else:
            text = "".join("abc"[s] for s in cert.base)
            out.append(SweepRecord(m, inst.x1, inst.y1, AVOIDABLE, cert.period, text, rep.ids, millis))
    return out


def _read_existing(path: str, m_lo: int, m_hi: int) -> list[SweepRecord]:
    """Complete, checksummed records already in ``path``; drops a torn last line."""
    with open(path, "r+", encoding="utf-8") as fh:
        data = fh.read()
        if not data:
            return []
        if not data.endswith("\n"):
            cut = data.rfind("\n") + 1
            log.info("dropping incomplete trailing line in %s", path)
            data = data[:cut]
            fh.seek(0)
            fh.truncate()
            fh.write(data)
    lines = data.splitlines(keepends=True)
    if not lines:
        return []
    if lines[0] != header(m_lo, m_hi):
        raise CorruptRecords(f"{path}: header does not match this sweep ({lines[0].strip()!r})")
    recs = []
    expect = iter(enumerate_instances(m_lo, m_hi))
    for n, line in enumerate(lines[1:], start=2):
        r = SweepRecord.from_line(line, n)
        inst = next(expect, None)
        if inst is None or (inst.m, inst.x1, inst.y1) != r.key:
            raise CorruptRecords(f"line {n}: record {r.key} out of order")
        r.verify()
        recs.append(r)
    return recs


def run_sweep(
    m_lo: int,
    m_hi: int,
    out_path: str,
    resume: bool = False,
    jobs: int = 1,
    timing: bool = False,
) -> SweepReport:
    """Decide every conjecture-region instance with ``m_lo <= m <= m_hi``.

    Pattern families are tried first; otherwise a period search with bound
    ``2m - 1``.  Records are written in ``(m, x1, y1)`` order whatever ``jobs``.
    """
    enumerate_instances(m_lo, m_hi)  # validates the range
    report = SweepReport(m_lo, m_hi)
    done: list[SweepRecord] = []
    if resume and os.path.exists(out_path):
        done = _read_existing(out_path, m_lo, m_hi)
    mode = "a" if done else "w"
    skip = {r.key for r in done}
    for r in done:
        report.add(r)
    last_m = done[-1].m if done else m_lo
    tasks = [(m, skip if m == last_m else frozenset(), timing) for m in range(last_m, m_hi + 1)]
    with open(out_path, mode, encoding="utf-8") as fh:
        if mode == "w":
            fh.write(header(m_lo, m_hi))
        for recs in _map(tasks, jobs):
            for r in recs:
                fh.write(r.to_line())
                report.add(r)
            fh.flush()
    if report.unknown:
        log.warning("%d instance(s) without an avoiding word of period < 2m", report.unknown)
    return report


def _map(tasks, jobs: int) -> Iterator[list[SweepRecord]]:
    if jobs <= 1:
        yield from map(_decide_layer, tasks)
        return
    with Pool(jobs) as pool:
        yield from pool.imap(_decide_layer, tasks)


def read_records(path: str) -> tuple[Optional[str], list[SweepRecord]]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.readlines()
    head = None
    recs = []
    for n, line in enumerate(lines, start=1):
        if line.startswith("#"):
            if n == 1:
                head = line
            continue
        if not line.strip():
            continue
        recs.append(SweepRecord.from_line(line, n))
    return head, recs


def _header_range(head: Optional[str]) -> tuple[int, int]:
    if not head:
        return 0, 0
    fields = dict(p.split("=", 1) for p in head.strip("# \n").split("\t") if "=" in p)
    return int(fields.get("m_lo", 0)), int(fields.get("m_hi", 0))


def summarize(path: str, sample: float = 0.01, seed: int = 0) -> SweepReport:
    """Recount a records file and re-verify a random sample of records."""
    head, recs = read_records(path)
    m_lo, m_hi = _header_range(head)
    report = SweepReport(m_lo, m_hi)
    for r in recs:
        report.add(r)
    if recs and sample > 0:
        rng = random.Random(seed)
        k = max(1, round(sample * len(recs))) if sample < 1 else len(recs)
        for r in rng.sample(recs, min(k, len(recs))):
            r.verify()
            report.verified += 1
    return report


