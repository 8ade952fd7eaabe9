"""Deciding avoidability of a finite set of partial words.

Two routes:

* :func:`decide_exact` builds the factor-window graph (nodes are the total
  words of length ``L-1``, ``L`` the longest word in the set; an edge is a
  length-``L`` window none of whose suffixes is compatible with a word of the
  set).  The set is avoidable iff the graph has a directed cycle, and the labels
  along a cycle give a periodic avoiding word.
* :func:`decide_bounded_period` looks for a ``p``-periodic avoiding word for
  ``p = 1, 2, ...`` with a small backtracking solver.  It can prove
  avoidability but never unavoidability.

Every :class:`Avoidable` verdict re-checks its certificate when constructed.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .words import HOLE, PeriodicWord, UniformSet, avoids_set

WINDOW_GRAPH = "window-graph"
PERIOD_SEARCH = "period-search"
PATTERN = "pattern"
TRIVIAL = "trivial"


class CertificateError(AssertionError):
    """A claimed avoiding word meets the set."""


class GraphTooLarge(ValueError):
    def __init__(self, nodes: int, cap: int):
        super().__init__(f"window graph needs {nodes} nodes, cap is {cap}")
        self.nodes = nodes
        self.cap = cap


class Verdict:
    label = ""

    @property
    def avoidable(self) -> bool:
        return isinstance(self, Avoidable)


@dataclass(frozen=True)
class Avoidable(Verdict):
    certificate: PeriodicWord
    method: str
    X: InitVar[UniformSet]
    family: Optional[str] = None
    label = "Avoidable"

    def __post_init__(self, X):
        if not avoids_set(self.certificate, X):
            raise CertificateError(f"{self.certificate} does not avoid {X}")

    @property
    def period(self) -> int:
        return self.certificate.period

    def __str__(self) -> str:
        return f"Avoidable period {self.period}: {self.certificate}"


@dataclass(frozen=True)
class Unavoidable(Verdict):
    method: str
    label = "Unavoidable"

    def __str__(self) -> str:
        return f"Unavoidable ({self.method})"


@dataclass(frozen=True)
class Unknown(Verdict):
    period_bound_tried: int
    label = "Unknown"

    def __str__(self) -> str:
        return f"Unknown (no avoiding word of period <= {self.period_bound_tried})"


@dataclass(frozen=True)
class WindowGraphConfig:
    max_nodes: int = 2**24

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")


def window_nodes(X: UniformSet) -> int:
    return X.k ** max(X.max_length - 1, 0)


def forbidden_windows(X: UniformSet, L: int) -> np.ndarray:
    """Flat boolean mask over the ``k**L`` total windows of length ``L``.

    Window index is the big-endian base-``k`` value of the word.  A window is
    forbidden when one of its suffixes is compatible with a word of ``X``.
    """
    k = X.k
    cube = np.zeros((k,) * L, dtype=bool)
    for x in X:
        if len(x) > L:
            raise ValueError(f"word {x} longer than window {L}")
        idx = (slice(None),) * (L - len(x)) + tuple(
            slice(None) if s == HOLE else s for s in x.symbols
        )
        cube[idx] = True
    return cube.reshape(-1)


def _cycle_from_graph(allowed: np.ndarray, k: int, N: int) -> list[int] | None:
    """Labels of a directed cycle, or None.

    Picks the smallest node lying on a cycle, then walks forward inside its
    strongly connected component taking the smallest usable label each step.
    """
    wins = np.flatnonzero(allowed)
    if wins.size == 0:
        return None
    src = wins // k
    dst = wins % N
    self_loop = np.zeros(N, dtype=bool)
    self_loop[src[src == dst]] = True
    graph = csr_matrix((np.ones(wins.size, dtype=np.int8), (src, dst)), shape=(N, N))
    ncomp, comp = connected_components(graph, directed=True, connection="strong")
    sizes = np.bincount(comp, minlength=ncomp)
    cyclic = (sizes[comp] > 1) | self_loop
    on_cycle = np.flatnonzero(cyclic)
    if on_cycle.size == 0:
        return None
    start = int(on_cycle[0])
    target = comp[start]
    if sizes[target] == 1:
        c = next(c for c in range(k) if allowed[start * k + c] and (start * k + c) % N == start)
        return [c]
    ok = allowed.tolist()
    comp_l = comp.tolist()
    seen: dict[int, int] = {}
    labels: list[int] = []
    u = start
    while u not in seen:
        seen[u] = len(labels)
        for c in range(k):
            w = u * k + c
            if ok[w] and comp_l[w % N] == target:
                labels.append(c)
                u = w % N
                break
        else:  # pragma: no cover - every node of a non-trivial SCC has an exit inside it
            raise AssertionError("walk left its strongly connected component")
    return labels[seen[u]:]


def decide_exact(
    X: UniformSet, cfg: WindowGraphConfig | None = None, minimize: bool = False
) -> Verdict:
    """Exact verdict via the factor-window graph (never :class:`Unknown`).

    With ``minimize`` an avoidable set gets a certificate of smallest period,
    found by the period search bounded by the cycle length.
    """
    cfg = cfg or WindowGraphConfig()
    if X.is_trivial:
        return Unavoidable(TRIVIAL)
    k = X.k
    if len(X) == 0:
        return Avoidable(PeriodicWord(X.alphabet, (0,)), WINDOW_GRAPH, X)
    L = X.max_length
    N = k ** (L - 1)
    if N > cfg.max_nodes:
        raise GraphTooLarge(N, cfg.max_nodes)
    allowed = ~forbidden_windows(X, L)
    labels = _cycle_from_graph(allowed, k, N)
    if labels is None:
        return Unavoidable(WINDOW_GRAPH)
    cert = PeriodicWord(X.alphabet, tuple(labels)).primitive()
    if minimize and cert.period > 1:
        shortest = decide_bounded_period(X, cert.period)
        assert isinstance(shortest, Avoidable)
        cert = shortest.certificate
    return Avoidable(cert, WINDOW_GRAPH, X)


def period_constraints(X: UniformSet, p: int) -> list[tuple[tuple[int, int], ...]]:
    """Forbidden simultaneous assignments for a ``p``-periodic word.

    Each entry is a sorted tuple of ``(variable, letter)`` pairs.  Offsets where
    two defined positions of a word fold onto one variable with different
    letters can never match and give no constraint.
    """
    out = set()
    for x in X:
        items = x.defined_items
        for i in range(p):
            assign: dict[int, int] = {}
            for j, c in items:
                v = (i + j) % p
                prev = assign.setdefault(v, c)
                if prev != c:
                    break
            else:
                out.add(tuple(sorted(assign.items())))
    return sorted(out)


def search_period(X: UniformSet, p: int) -> tuple[int, ...] | None:
    """Lexicographically smallest base word of length ``p`` whose ``^Z`` avoids ``X``.

    Backtracking over positions in index order, letters in alphabet order, with
    propagation: once every pair but one of a forbidden tuple is fixed, the
    remaining letter is struck from its variable's domain.  Variables whose
    domain shrinks to one letter count as fixed.
    """
    k = X.k
    full = (1 << k) - 1
    dom = [full] * p
    cons = period_constraints(X, p)
    lits: list[tuple[tuple[int, int], ...]] = []
    occ = [[[] for _ in range(k)] for _ in range(p)]
    for t in cons:
        if len(t) == 1:
            (v, c), = t
            dom[v] &= ~(1 << c)
            continue
        cid = len(lits)
        lits.append(t)
        for v, c in t:
            occ[v][c].append(cid)
    if any(d == 0 for d in dom):
        return None
    size = [len(t) for t in lits]
    cnt = [0] * len(lits)
    fixed = [-1] * p
    trail: list[tuple] = []

    def assign(v0: int, c0: int) -> bool:
        queue = [(v0, c0)]
        while queue:
            v, c = queue.pop()
            if fixed[v] != -1:
                if fixed[v] != c:
                    return False
                continue
            fixed[v] = c
            trail.append((0, v, 0))
            if dom[v] != 1 << c:
                trail.append((1, v, dom[v]))
                dom[v] = 1 << c
            for cid in occ[v][c]:
                cnt[cid] += 1
                trail.append((2, cid, 0))
                n = size[cid]
                if cnt[cid] == n:
                    return False
                if cnt[cid] == n - 1:
                    for vj, cj in lits[cid]:
                        if fixed[vj] != cj:
                            break
                    if fixed[vj] != -1:
                        continue
                    bit = 1 << cj
                    if dom[vj] & bit:
                        trail.append((1, vj, dom[vj]))
                        dom[vj] &= ~bit
                        d = dom[vj]
                        if d == 0:
                            return False
                        if d & (d - 1) == 0:
                            queue.append((vj, d.bit_length() - 1))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            kind, a, b = trail.pop()
            if kind == 0:
                fixed[a] = -1
            elif kind == 1:
                dom[a] = b
            else:
                cnt[a] -= 1

    # Domains that are already singletons propagate before any choice.
    for v in range(p):
        d = dom[v]
        if fixed[v] == -1 and d & (d - 1) == 0:
            if not assign(v, d.bit_length() - 1):
                return None

    # Explicit stack of (variable, letters still to try, trail mark).
    stack: list[tuple[int, list[int], int]] = []
    v = _next_free(fixed, 0)
    if v is None:
        return tuple(fixed)
    stack.append((v, [c for c in range(k) if dom[v] >> c & 1], len(trail)))
    while stack:
        v, options, mark = stack[-1]
        undo(mark)
        if not options:
            stack.pop()
            continue
        c = options.pop(0)
        if not assign(v, c):
            continue
        nxt = _next_free(fixed, v + 1)
        if nxt is None:
            return tuple(fixed)
        stack.append((nxt, [c for c in range(k) if dom[nxt] >> c & 1], len(trail)))
    return None


def _next_free(fixed: list[int], start: int) -> int | None:
    for i in range(start, len(fixed)):
        if fixed[i] == -1:
            return i
    return None


def decide_bounded_period(X: UniformSet, P_max: int, p_min: int = 1) -> Verdict:
    """Avoidable with the first period ``p <= P_max`` that works, else Unknown."""
    if P_max < 1:
        raise ValueError("P_max must be >= 1")
    if X.is_trivial:
        return Unknown(P_max)
    for p in range(p_min, P_max + 1):
        base = search_period(X, p)
        if base is not None:
            return Avoidable(PeriodicWord(X.alphabet, base), PERIOD_SEARCH, X)
    return Unknown(P_max)


def decide(
    X: UniformSet,
    P_max: int | None = None,
    cfg: WindowGraphConfig | None = None,
    minimize: bool = True,
) -> Verdict:
    """Exact decision when the window graph fits under the cap, period search otherwise."""
    cfg = cfg or WindowGraphConfig()
    if X.is_trivial:
        return Unavoidable(TRIVIAL)
    if window_nodes(X) <= cfg.max_nodes:
        return decide_exact(X, cfg, minimize=minimize)
    if P_max is None:
        P_max = 2 * X.max_length - 1
    return decide_bounded_period(X, P_max)
