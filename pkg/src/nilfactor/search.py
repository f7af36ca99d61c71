"""
Exhaustive backtracking search for complete factorizations of any finite group.

Blocks are filled left to right.  For every block but the last, elements are
added in increasing id order (so each block is enumerated as a lexicographic
sequence of subsets) and a candidate is rejected as soon as it reuses an
element or makes two partial products ``a_1 ... a_i`` coincide.  Element sets
and coverage are Python int bitmasks.

Once ``P = A_1 ... A_{k-1}`` is fixed, the last block must tile ``G`` by right
translates ``P y`` with unused ``y``; that is an exact cover problem, solved
by branching on the uncovered element with the fewest candidate translates.
Every possible last block is visited exactly once.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import SizesMismatch, SizeTooSmall
from .factorize import (
    CompleteFactorization,
    construct_complete_factorization,
    verify_complete_factorization,
)
from .group import ElementSet, GroupTable

__all__ = [
    "Status",
    "SearchProblem",
    "SearchOutcome",
    "search_complete_factorization",
    "cross_check",
    "DEFAULT_NODE_BUDGET",
    "DEFAULT_TIME_BUDGET",
]

DEFAULT_NODE_BUDGET = 10 ** 8
DEFAULT_TIME_BUDGET = 60.0
MODES = ("first", "count", "exists")


class Status(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchProblem:
    """``mode`` is ``"first"`` (first witness), ``"count"`` (count all) or ``"exists"``.

    A ``time_budget`` of None disables the clock, which makes node counts
    and outcomes fully reproducible.
    """

    group: GroupTable
    sizes: tuple[int, ...]
    mode: str = "exists"
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float | None = DEFAULT_TIME_BUDGET
    canonicalize: bool | None = None

    def __post_init__(self):
        sizes = tuple(int(m) for m in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if self.mode not in MODES:
            raise ValueError(f"unknown search mode {self.mode!r}; expected one of {MODES}")
        if not sizes:
            raise SizesMismatch("at least one block size is required")
        for m in sizes:
            if m < 1:
                raise SizeTooSmall(f"block sizes must be positive, got {m}")
        prod = 1
        for m in sizes:
            prod *= m
        if prod != self.group.order:
            raise SizesMismatch(f"sizes {list(sizes)} multiply to {prod}, not {self.group.order}")

    @property
    def canonical(self) -> bool:
        if self.canonicalize is None:
            return self.mode == "exists"
        return self.canonicalize


@dataclass
class SearchOutcome:
    status: Status
    witness: CompleteFactorization | None
    nodes: int
    count: int | None = None
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def to_json(self, include_elapsed: bool = True) -> dict:
        out = {
            "status": self.status.value,
            "witness": [b.tolist() for b in self.witness.blocks] if self.witness else None,
            "nodes": self.nodes,
        }
        if self.count is not None:
            out["count"] = self.count
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


class _Stop(Exception):
    pass


class _BudgetHit(Exception):
    pass


class _Searcher:
    def __init__(self, problem: SearchProblem, first_element: int | None = None):
        g = problem.group
        self.problem = problem
        self.g = g
        self.n = g.order
        self.sizes = problem.sizes
        self.k = len(self.sizes)
        table = g.table.tolist()
        # cols[y][p] = p * y
        self.cols = [list(c) for c in zip(*table)] if self.n > 1 else [[0]]
        self.table = table
        self.inv = g.inverse.tolist()
        self.full = (1 << self.n) - 1
        self.first_element = first_element
        self.stop_at_first = problem.mode != "count"
        self.nodes = 0
        self.count = 0
        self.witness: list[list[int]] | None = None
        self.deadline = None
        if problem.time_budget is not None:
            self.deadline = time.monotonic() + problem.time_budget
        self.blocks: list[list[int]] = []
        self._tiling_memo: dict[int, bool] = {}

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.problem.node_budget:
            raise _BudgetHit
        if self.deadline is not None and not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise _BudgetHit

    def run(self) -> Status:
        try:
            self._block(0, [0], 0)
        except _Stop:
            return Status.FOUND
        except _BudgetHit:
            return Status.FOUND if self.witness is not None and self.stop_at_first else Status.BUDGET_EXCEEDED
        return Status.FOUND if self.count else Status.EXHAUSTED

    def _found(self):
        blocks = [list(b) for b in self.blocks]
        report = verify_complete_factorization(self.g, blocks)
        if not report.passed:
            raise AssertionError(f"search produced an invalid witness {blocks}: {report}")
        self.count += 1
        if self.witness is None:
            self.witness = blocks
        if self.stop_at_first:
            raise _Stop

    def _block(self, i: int, prefix: list[int], used: int):
        if i == self.k - 1:
            self.blocks.append([])
            cols = self.cols
            translates = []
            for y in range(self.n):
                if used >> y & 1:
                    continue
                mask = 0
                for p in prefix:
                    mask |= 1 << cols[y][p]
                translates.append((y, mask))
            self._last(translates, 0)
            self.blocks.pop()
            return
        remaining = sum(self.sizes[i:])
        if self.n - bin(used).count("1") < remaining:
            return
        self.blocks.append([])
        start, stop = 0, self.n
        if i == 0 and self.first_element is not None:
            start, stop = self.first_element, self.first_element + 1
        self._pick(i, prefix, used, start, stop, 0, [])
        self.blocks.pop()

    def _pick(self, i, prefix, used, start, stop, cover, products):
        chosen = self.blocks[-1]
        need = self.sizes[i] - len(chosen)
        if need == 0:
            if self._tiles(cover, products):
                self._block(i + 1, products, used)
            return
        cols = self.cols
        for y in range(start, min(stop, self.n - need + 1)):
            if used >> y & 1:
                continue
            col = cols[y]
            row = [col[p] for p in prefix]
            mask = 0
            for x in row:
                mask |= 1 << x
            if mask & cover:
                continue
            self._tick()
            chosen.append(y)
            self._pick(i, prefix, used | 1 << y, y + 1, self.n, cover | mask, products + row)
            chosen.pop()

    def _tiles(self, key: int, prefix: list[int]) -> bool:
        """Whether right translates of the prefix product can partition ``G``.

        Unique representation forces ``A_1...A_i`` to tile ``G`` this way,
        whatever the later blocks are, so failing here prunes soundly.
        """
        hit = self._tiling_memo.get(key)
        if hit is not None:
            return hit
        cols = self.cols
        seen = set()
        translates = []
        for y in range(self.n):
            mask = 0
            for p in prefix:
                mask |= 1 << cols[y][p]
            if mask not in seen:
                seen.add(mask)
                translates.append(mask)
        ok = self._cover_exists(translates, 0)
        self._tiling_memo[key] = ok
        return ok

    def _cover_exists(self, translates, cover) -> bool:
        if cover == self.full:
            return True
        best = None
        rest = self.full & ~cover
        while rest:
            low = rest & -rest
            rest ^= low
            opts = [m for m in translates if m & low]
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
        for mask in best:
            if self._cover_exists([m for m in translates if not m & mask], cover | mask):
                return True
        return False

    def _last(self, translates, cover):
        """Exact cover of the uncovered elements by the still-valid translates.

        ``translates`` holds ``(y, P*y as bitmask)`` for every unused ``y``
        whose translate avoids ``cover``.  Branching is on the uncovered
        element with the fewest covering translates (smallest id on ties).
        """
        if cover == self.full:
            self._found()
            return
        best_u, best = -1, None
        rest = self.full & ~cover
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            opts = [t for t in translates if t[1] & low]
            if best is None or len(opts) < len(best):
                best_u, best = u, opts
                if not opts:
                    return
                if len(opts) == 1:
                    break
        chosen = self.blocks[-1]
        for y, mask in best:
            self._tick()
            chosen.append(y)
            nxt = [t for t in translates if not t[1] & mask and t[0] != y]
            self._last(nxt, cover | mask)
            chosen.pop()


def _first_candidates(problem: SearchProblem) -> list[int]:
    """Depth-1 split points: the smallest element of ``A_1``.

    With canonicalization the minimal unused id (always 0 here) is tried
    first; the remaining split points follow in id order.  No candidate is
    ever dropped.
    """
    cands = list(range(problem.group.order - problem.sizes[0] + 1))
    if problem.canonical:
        cands.sort(key=lambda a: (a != 0, a))
    return cands


def _run_shard(problem: SearchProblem, first: int):
    s = _Searcher(problem, first_element=first)
    status = s.run()
    return status, s.count, s.nodes, s.witness


def _outcome(problem, witness, status, nodes, count, start):
    fact = None
    if witness is not None:
        fact = CompleteFactorization(tuple(ElementSet(b) for b in witness), problem.sizes)
    return SearchOutcome(
        status=status,
        witness=fact,
        nodes=nodes,
        count=count if problem.mode == "count" else None,
        elapsed=time.monotonic() - start,
    )


def search_complete_factorization(problem: SearchProblem, threads: int = 1) -> SearchOutcome:
    """Depth-first search for complete factorizations with the given block sizes.

    ``Status.EXHAUSTED`` is only reported after the whole tree was traversed.
    With ``threads > 1`` the tree is split on the smallest element of ``A_1``
    and shards run in worker processes; node counts are then summed over
    whichever shards ran.
    """
    start = time.monotonic()
    if threads <= 1:
        nodes = count = 0
        witness = None
        for first in _first_candidates(problem):
            remaining = problem.node_budget - nodes
            shard_problem = problem if remaining == problem.node_budget else _with_budget(problem, remaining, start)
            status, c, nd, w = _run_shard(shard_problem, first)
            nodes += nd
            count += c
            if witness is None and w is not None:
                witness = w
            if status is Status.BUDGET_EXCEEDED:
                return _outcome(problem, witness, status, nodes, count, start)
            if witness is not None and problem.mode != "count":
                return _outcome(problem, witness, Status.FOUND, nodes, count, start)
        final = Status.FOUND if count else Status.EXHAUSTED
        return _outcome(problem, witness, final, nodes, count, start)

    cands = _first_candidates(problem)
    results = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {a: pool.submit(_run_shard, problem, a) for a in cands}
        for a in cands:
            results[a] = futures[a].result()
            if problem.mode != "count" and results[a][3] is not None:
                for b in cands:
                    if b not in results:
                        futures[b].cancel()
                break
    nodes = sum(r[2] for r in results.values())
    count = sum(r[1] for r in results.values())
    witness = next((results[a][3] for a in cands if a in results and results[a][3] is not None), None)
    if witness is not None and problem.mode != "count":
        return _outcome(problem, witness, Status.FOUND, nodes, count, start)
    over = any(r[0] is Status.BUDGET_EXCEEDED for r in results.values()) or nodes > problem.node_budget
    if over:
        return _outcome(problem, witness, Status.BUDGET_EXCEEDED, nodes, count, start)
    return _outcome(problem, witness, Status.FOUND if count else Status.EXHAUSTED, nodes, count, start)


def _with_budget(problem: SearchProblem, nodes: int, start: float) -> SearchProblem:
    secs = problem.time_budget
    if secs is not None:
        secs = max(0.0, secs - (time.monotonic() - start))
    return SearchProblem(problem.group, problem.sizes, problem.mode, nodes, secs, problem.canonicalize)


def cross_check(g: GroupTable, sizes: Sequence[int], node_budget: int = DEFAULT_NODE_BUDGET,
                time_budget: float | None = DEFAULT_TIME_BUDGET) -> bool:
    """True iff the construction succeeds and exhaustive search also finds a witness."""
    fact = construct_complete_factorization(g, sizes)
    if not verify_complete_factorization(g, fact.blocks).passed:
        return False
    outcome = search_complete_factorization(
        SearchProblem(g, tuple(sizes), mode="exists", node_budget=node_budget, time_budget=time_budget)
    )
    return outcome.found
