"""Command-line interface: ``unavoid <command> ...``.

Exit codes: 0 Avoidable / pass, 1 Unavoidable / failure, 2 Unknown,
64 usage or parse error, 65 window graph over the node cap, 66 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .decider import Avoidable, GraphTooLarge, Unavoidable, WindowGraphConfig, decide, decide_exact
from .patterns import eq2_registry, match_families
from .reductions import ReductionError, ReductionTrace, apply_ops
from .suites import SUITES, run_suite
from .sweep import DEFAULT_M_LO, SweepError, run_sweep, summarize
from .theory import ConjectureInstance, Eq2Instance, ParameterError, min_holes
from .words import SetFileError, WordError, read_set_file

EXIT_AVOIDABLE = 0
EXIT_UNAVOIDABLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_TOO_LARGE = 65
EXIT_IO = 66

ENV_MAX_NODES = "UNAVOID_MAX_NODES"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _max_nodes(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(ENV_MAX_NODES)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_NODES}={env!r} is not an integer") from None
    return WindowGraphConfig.max_nodes


def _verdict_code(v) -> int:
    if isinstance(v, Avoidable):
        return EXIT_AVOIDABLE
    if isinstance(v, Unavoidable):
        return EXIT_UNAVOIDABLE
    return EXIT_UNKNOWN


def cmd_decide(args) -> int:
    X = read_set_file(args.setfile, args.k)
    cfg = WindowGraphConfig(_max_nodes(args.max_nodes))
    if args.exact:
        v = decide_exact(X, cfg, minimize=True)
    else:
        v = decide(X, args.period_max, cfg)
    print(v)
    if isinstance(v, Avoidable):
        print(f"certificate: {v.certificate}")
    print(f"method: {getattr(v, 'method', 'period-search')}")
    return _verdict_code(v)


def _print_set(X) -> None:
    sys.stdout.write(X.to_text(header=True))


def cmd_x2(args) -> int:
    if args.eq2:
        inst = Eq2Instance(args.m, args.x1, args.y1)
        _print_set(inst.to_set())
        print(f"# x2={inst.x2} y2={inst.y2}")
        print(f"# y1_eq_y2={str(inst.y1 == inst.y2).lower()}")
        hits = [f.id for f in eq2_registry() if f.condition(inst) is not None]
        print(f"# families: {', '.join(hits) or '-'}")
        return 0
    inst = ConjectureInstance(args.m, args.x1, args.y1)
    _print_set(inst.to_set())
    print(f"# x2={inst.x2} y2={inst.y2}")
    print(f"# region={str(inst.in_conjecture_region).lower()}")
    rep = match_families(inst)
    print(f"# families: {', '.join(rep.ids) or '-'}")
    best = rep.best()
    if best is not None:
        print(f"# avoider: {best.word} ({best.family})")
    return 0


def cmd_sweep(args) -> int:
    rep = run_sweep(args.m_lo, args.m_max, args.out, resume=args.resume, jobs=args.jobs, timing=args.timing)
    for line in rep.lines():
        print(line)
    return EXIT_UNKNOWN if rep.unknown else 0


def cmd_summarize(args) -> int:
    rep = summarize(args.records, sample=args.sample, seed=args.seed)
    for line in rep.lines():
        print(line)
    print(f"re-verified: {rep.verified}")
    return EXIT_UNKNOWN if rep.unknown else 0


def cmd_verify(args) -> int:
    res = run_suite(args.suite, args.m_max)
    for line in res.info:
        print(line)
    for f in res.failures[: args.show]:
        print(f"FAIL {f}")
    status = "pass" if res.ok else f"FAIL ({len(res.failures)} failures)"
    print(f"{res.name}: {res.checked} checks, {status}")
    return 0 if res.ok else 1


def cmd_holes(args) -> int:
    h = min_holes(args.k, args.m)
    print(f"H = {h.holes} ({h.note}), max_fill = {h.max_fill}")
    return 0


def cmd_reduce(args) -> int:
    X = read_set_file(args.setfile, args.k)
    trace = ReductionTrace()
    Y = apply_ops(X, args.ops, trace)
    sys.stdout.write(Y.to_text(header=True))
    for line in trace.lines():
        print(f"# {line}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="unavoid", description="Avoidability of sets of partial words.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decide", help="decide a set file")
    d.add_argument("setfile")
    d.add_argument("--k", type=int, help="alphabet size (default: header or largest letter)")
    d.add_argument("--period-max", type=int, help="period bound when the graph is too large (default 2L-1)")
    d.add_argument("--exact", action="store_true", help="window graph only; exit 65 if over the cap")
    d.add_argument("--max-nodes", type=int, help=f"window-graph node cap (env {ENV_MAX_NODES}, default 2^24)")
    d.set_defaults(func=cmd_decide)

    for name in ("x2", "x2eq2"):
        x = sub.add_parser(name, help="print an a..b..b / b..b..c set (x2eq2: a..a..a / b..c..c)")
        x.add_argument("--m", type=int, required=True)
        x.add_argument("--x1", type=int, required=True)
        x.add_argument("--y1", type=int, default=0)
        x.add_argument("--eq2", action="store_true", default=name == "x2eq2")
        x.set_defaults(func=cmd_x2)

    s = sub.add_parser("sweep", help="decide every conjecture-region set up to --m-max")
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--m-lo", type=int, default=DEFAULT_M_LO)
    s.add_argument("--out", required=True)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="record per-instance milliseconds")
    s.set_defaults(func=cmd_sweep)

    sm = sub.add_parser("summarize", help="recount a sweep records file")
    sm.add_argument("records")
    sm.add_argument("--sample", type=float, default=0.01, help="fraction of records to re-verify")
    sm.add_argument("--seed", type=int, default=0)
    sm.set_defaults(func=cmd_summarize)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--m-max", type=int)
    v.add_argument("--show", type=int, default=10, help="failures to print")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("holes", help="minimum hole count for a minimum-size set")
    h.add_argument("--k", type=int, required=True)
    h.add_argument("--m", type=int, required=True)
    h.set_defaults(func=cmd_holes)

    r = sub.add_parser("reduce", help="apply reduction operations in order")
    r.add_argument("setfile")
    r.add_argument("--k", type=int)
    r.add_argument("--ops", nargs="+", required=True, metavar="OP")
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except GraphTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except SetFileError as e:
        print(f"error: {args.setfile}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ParameterError, ReductionError, WordError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SweepError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
