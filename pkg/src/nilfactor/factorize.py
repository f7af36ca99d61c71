"""
Complete factorizations of nilpotent groups, and brute-force verifiers.

Given a chain ``H_1 < ... < H_k = G`` the construction takes right
transversals ``T_i`` of ``H_{i-1}`` in ``H_i`` (``T_1 = H_1``), shifts the
middle ones by elements ``h_i`` that normalize ``H_i`` without lying in it,
and repairs the last transversal by swapping two representatives::

    A_1 = T_1
    A_i = T_i h_i                        (2 <= i <= k-1)
    A_k = (T_k - {t, s}) | {t', s'}

where ``t`` and ``s`` represent the cosets ``H_{k-1}`` and ``H_{k-1} h_{k-1}``,
``t'`` lies in ``H_2 - H_1`` and ``s'`` in ``H_{k-1} h_{k-1} - A_{k-1}``.
Every free choice defaults to the minimal element id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import KTooSmall, NormalizerTrivial, SizesMismatch, SizeTooSmall
from .group import (
    ElementSet,
    GroupTable,
    Subgroup,
    multiply_sets,
    normalizer,
    right_transversal,
)
from .structure import SubgroupChain, subgroup_chain_for_orders

__all__ = [
    "ConstructionTrace",
    "CompleteFactorization",
    "VerifyReport",
    "construct_complete_factorization",
    "build_blocks_from_chain",
    "verify_complete_factorization",
    "verify_factorization",
    "factorization_from_json",
]


@dataclass(frozen=True)
class ConstructionTrace:
    chain: SubgroupChain
    transversals: tuple[ElementSet, ...]
    shifts: tuple[int, ...]  # h_2 .. h_{k-1}
    t: int
    s: int
    t_prime: int
    s_prime: int

    def shift(self, i: int) -> int:
        """``h_i`` for the 1-based block index ``2 <= i <= k-1``."""
        return self.shifts[i - 2]

    def to_json(self) -> dict:
        return {
            "chain_orders": self.chain.orders,
            "shifts": list(self.shifts),
            "t": self.t,
            "s": self.s,
            "t_prime": self.t_prime,
            "s_prime": self.s_prime,
        }


@dataclass(frozen=True)
class CompleteFactorization:
    blocks: tuple[ElementSet, ...]
    sizes: tuple[int, ...]
    witness: ConstructionTrace | None = None

    def to_json(self) -> dict:
        out = {"sizes": list(self.sizes), "blocks": [b.tolist() for b in self.blocks]}
        if self.witness is not None:
            out["trace"] = self.witness.to_json()
        return out


def factorization_from_json(obj: dict) -> list[ElementSet]:
    """Blocks of a factorization JSON document (the trace is ignored)."""
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise ValueError("'blocks' must be a list of lists of element ids")
    return [ElementSet(b) for b in blocks]


@dataclass
class VerifyReport:
    """Outcome of a factorization check.

    ``disjoint`` is None for plain (non-complete) verification.  Witnesses:
    ``overlap`` is ``(i, j, element)`` for the first pair of blocks sharing
    an element; ``collision`` is ``(element, indices_1, indices_2)`` giving two
    index tuples into the blocks whose products coincide; ``missing`` is the
    first element never reached.
    """

    passed: bool
    sizes_ok: bool
    size_product: int
    unique: bool
    disjoint: bool | None = None
    overlap: tuple[int, int, int] | None = None
    collision: tuple[int, tuple[int, ...], tuple[int, ...]] | None = None
    missing: int | None = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "sizes_ok": self.sizes_ok,
            "size_product": self.size_product,
            "unique": self.unique,
        }
        if self.disjoint is not None:
            out["disjoint"] = self.disjoint
        if self.overlap is not None:
            out["overlap"] = list(self.overlap)
        if self.collision is not None:
            e, a, b = self.collision
            out["collision"] = {"element": e, "indices": [list(a), list(b)]}
        if self.missing is not None:
            out["missing"] = self.missing
        return out


def _first_overlap(g: GroupTable, blocks: Sequence[ElementSet]):
    owner = np.full(g.order, -1, dtype=np.int64)
    for j, b in enumerate(blocks):
        prev = owner[b.members]
        hit = np.flatnonzero(prev >= 0)
        if len(hit):
            x = int(b.members[hit[0]])
            return (int(prev[hit[0]]), j, x)
        owner[b.members] = j
    return None


def _coverage(g: GroupTable, blocks: Sequence[ElementSet]):
    """Left-to-right product enumeration with a multiplicity check at every prefix.

    A collision in a prefix product persists in the full product, so the
    running array never holds more than ``n`` entries.
    """
    sizes = [len(b) for b in blocks]
    cur = np.zeros(1, dtype=np.int64)
    for i, b in enumerate(blocks):
        cur = g.table[cur[:, None], b.members[None, :]].ravel().astype(np.int64)
        counts = np.bincount(cur, minlength=g.order)
        dup = np.flatnonzero(counts > 1)
        if len(dup):
            x = int(dup[0])
            pos = np.flatnonzero(cur == x)[:2]
            shape = sizes[: i + 1]
            first = tuple(int(v) for v in np.unravel_index(pos[0], shape))
            second = tuple(int(v) for v in np.unravel_index(pos[1], shape))
            return False, (x, first, second), None
    counts = np.bincount(cur, minlength=g.order)
    miss = np.flatnonzero(counts == 0)
    if len(miss):
        return False, None, int(miss[0])
    return True, None, None


def _verify(g: GroupTable, blocks, complete: bool) -> VerifyReport:
    blocks = [ElementSet(b) for b in blocks]
    if not blocks:
        raise ValueError("at least one block is required")
    for b in blocks:
        g.check_set(b)
    prod = 1
    for b in blocks:
        prod *= len(b)
    sizes_ok = prod == g.order
    unique, collision, missing = _coverage(g, blocks) if all(len(b) for b in blocks) else (False, None, 0)
    overlap = _first_overlap(g, blocks) if complete else None
    disjoint = (overlap is None) if complete else None
    passed = sizes_ok and unique and (disjoint is not False)
    return VerifyReport(
        passed=passed,
        sizes_ok=sizes_ok,
        size_product=prod,
        unique=unique,
        disjoint=disjoint,
        overlap=overlap,
        collision=collision,
        missing=missing,
    )


def verify_complete_factorization(g: GroupTable, blocks: Sequence) -> VerifyReport:
    """Check sizes, pairwise disjointness and unique representation of every element."""
    return _verify(g, blocks, complete=True)


def verify_factorization(g: GroupTable, blocks: Sequence) -> VerifyReport:
    """As :func:`verify_complete_factorization` but blocks may overlap."""
    return _verify(g, blocks, complete=False)


def _check_sizes(g: GroupTable, sizes: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(int(m) for m in sizes)
    if len(sizes) < 3:
        raise KTooSmall(f"complete factorization needs at least 3 blocks, got {len(sizes)}")
    for m in sizes:
        if m < 2:
            raise SizeTooSmall(f"every block size must be at least 2, got {m}")
    prod = 1
    for m in sizes:
        prod *= m
    if prod != g.order:
        raise SizesMismatch(f"sizes {list(sizes)} multiply to {prod}, not {g.order}")
    return sizes


def construct_complete_factorization(g: GroupTable, sizes: Sequence[int]) -> CompleteFactorization:
    """Complete factorization of a nilpotent group with ``|A_i| = sizes[i]``.

    Checks run in a fixed order: block count, each size, the product of
    sizes, and only then nilpotency.
    """
    sizes = _check_sizes(g, sizes)
    chain = subgroup_chain_for_orders(g, sizes)
    return build_blocks_from_chain(g, chain)


def build_blocks_from_chain(
    g: GroupTable,
    chain: SubgroupChain,
    shifts: Sequence[int] | None = None,
    t_prime: int | None = None,
    s_prime: int | None = None,
    transversals: Sequence[ElementSet] | None = None,
) -> CompleteFactorization:
    """Blocks from an explicit chain.

    ``shifts`` (``h_2..h_{k-1}``), ``t_prime``, ``s_prime`` and
    ``transversals`` (``T_1..T_k``) override the minimal-id defaults; any
    override is checked against the conditions the construction needs.
    """
    H = [h.elements for h in chain.subgroups]
    k = len(H)
    if k < 3:
        raise KTooSmall(f"complete factorization needs at least 3 blocks, got {k}")

    if transversals is None:
        T = [H[0]] + [right_transversal(g, chain[i - 1], chain[i]) for i in range(1, k)]
    else:
        T = [ElementSet(x) for x in transversals]
        if len(T) != k or T[0] != H[0]:
            raise ValueError("need k transversals with T_1 = H_1")
        for i in range(1, k):
            if len(T[i]) * len(H[i - 1]) != len(H[i]) or multiply_sets(g, H[i - 1], T[i]) != H[i]:
                raise ValueError(f"T_{i + 1} is not a right transversal of H_{i} in H_{i + 1}")

    # h_i for i = 2..k-1 (0-based positions 1..k-2)
    h = []
    for pos in range(1, k - 1):
        norm = normalizer(g, chain[pos], chain[pos + 1]).elements
        outside = norm - H[pos]
        if shifts is None:
            if not len(outside):
                raise NormalizerTrivial(f"H_{pos + 1} is its own normalizer in H_{pos + 2}")
            h.append(outside.min())
        else:
            x = int(shifts[pos - 1])
            if x not in outside:
                raise ValueError(f"h_{pos + 1} = {x} does not normalize H_{pos + 1} from outside it")
            h.append(x)
    if shifts is not None and len(shifts) != k - 2:
        raise ValueError(f"expected {k - 2} shifts, got {len(shifts)}")

    A = [T[0]] + [ElementSet(g.table[T[pos].members, h[pos - 1]]) for pos in range(1, k - 1)]

    last_coset = ElementSet(g.table[H[k - 2].members, h[-1]])  # H_{k-1} h_{k-1}
    (t,) = (T[k - 1] & H[k - 2]).tolist()
    (s,) = (T[k - 1] & last_coset).tolist()

    t_pool = H[1] - H[0]
    s_pool = last_coset - A[k - 2]
    if t_prime is None:
        t_prime = t_pool.min()
    elif t_prime not in t_pool:
        raise ValueError(f"t' = {t_prime} is not in H_2 - H_1")
    if s_prime is None:
        s_prime = s_pool.min()
    elif s_prime not in s_pool:
        raise ValueError(f"s' = {s_prime} is not in H_(k-1) h_(k-1) - A_(k-1)")

    A.append((T[k - 1] - ElementSet([t, s])) | ElementSet([t_prime, s_prime]))
    trace = ConstructionTrace(
        chain=chain,
        transversals=tuple(T),
        shifts=tuple(int(x) for x in h),
        t=int(t),
        s=int(s),
        t_prime=int(t_prime),
        s_prime=int(s_prime),
    )
    return CompleteFactorization(tuple(A), chain.sizes, trace)
