import re

import pytest

from unavoid import sweep as S
from unavoid.theory import ConjectureInstance


def test_counts():
    assert S.count_instances(4, 4) == 1
    assert S.enumerate_instances(4, 4) == [ConjectureInstance(4, 1, 0)]
    assert S.count_instances(3, 3) == 1
    brute = sum(
        1
        for x1 in range(5)
        for y1 in range(5)
        if y1 <= 4 - x1 <= x1 <= 4 - y1
    )
    assert S.count_instances(7, 7) == brute
    with pytest.raises(ValueError):
        S.enumerate_instances(2, 5)


def test_calibrated_total():
    # the range starting at m = 3 is the one giving the published total
    assert S.count_instances(3, 100) == 41650
    assert S.count_instances(4, 100) == 41649


def test_record_roundtrip():
    r = S.SweepRecord(12, 6, 3, S.AVOIDABLE, 3, "acb", ("T1.R3", "T1.R7"))
    line = r.to_line()
    assert S.SweepRecord.from_line(line) == r
    r.verify()
    bad = line.replace("acb", "abc")
    with pytest.raises(S.CorruptRecords):
        S.SweepRecord.from_line(bad)


def test_verify_catches_bad_certificate():
    r = S.SweepRecord(12, 6, 3, S.AVOIDABLE, 2, "ab", ())
    with pytest.raises(S.VerificationError):
        r.verify()


def test_small_sweep(tmp_path):
    out = tmp_path / "s.tsv"
    rep = S.run_sweep(3, 20, str(out))
    assert rep.total == S.count_instances(3, 20) == 330
    assert rep.unknown == 0 and rep.avoidable == 330
    assert rep.uncovered == [(10, 4, 1)]
    assert rep.max_period < 40
    text = out.read_text()
    assert text.startswith("# unavoid-sweep 1")
    again = S.summarize(str(out), sample=1.0)
    assert again.total == 330 and again.verified == 330
    assert again.uncovered == rep.uncovered


def test_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    S.run_sweep(3, 16, str(a), jobs=1)
    S.run_sweep(3, 16, str(b), jobs=2)
    assert a.read_bytes() == b.read_bytes()


def test_resume_after_interrupt_is_byte_identical(tmp_path):
    full = tmp_path / "full.tsv"
    S.run_sweep(3, 18, str(full))
    data = full.read_bytes()
    part = tmp_path / "part.tsv"
    # cut inside a record line, as a killed run would leave it
    cut = data.index(b"\n", len(data) // 2) - 5
    part.write_bytes(data[:cut])
    S.run_sweep(3, 18, str(part), resume=True)
    assert part.read_bytes() == data


def test_resume_rejects_other_range(tmp_path):
    out = tmp_path / "s.tsv"
    S.run_sweep(3, 8, str(out))
    with pytest.raises(S.CorruptRecords):
        S.run_sweep(3, 9, str(out), resume=True)


def test_summarize_tampered(tmp_path):
    out = tmp_path / "s.tsv"
    S.run_sweep(3, 10, str(out))
    lines = out.read_text().splitlines(keepends=True)
    rec = S.SweepRecord.from_line(lines[5])
    forged = S.SweepRecord(rec.m, rec.x1, rec.y1, rec.verdict, rec.period, "a" * rec.period, rec.families)
    lines[5] = forged.to_line()
    out.write_text("".join(lines))
    with pytest.raises(S.VerificationError, match=re.escape(f"record {rec.key}")):
        S.summarize(str(out), sample=1.0)
    lines[5] = lines[5].replace("\t" + rec.verdict, "\tUnknown")
    out.write_text("".join(lines))
    with pytest.raises(S.CorruptRecords):
        S.summarize(str(out), sample=1.0)


def test_summarize_empty(tmp_path):
    out = tmp_path / "e.tsv"
    out.write_text("")
    rep = S.summarize(str(out))
    assert rep.total == 0 and rep.unknown == 0 and rep.uncovered == []
