"""
Nilpotency, Sylow decomposition and subgroup chains with prescribed orders.

A finite nilpotent group is the direct product of its Sylow subgroups, so a
chain with orders ``m_1, m_1*m_2, ...`` is built one prime at a time: inside
each Sylow p-subgroup we climb a full chain ``1 = Q_0 < Q_1 < ... < Q_e``
(``|Q_j| = p^j``) and then multiply together the right prefix of every
per-prime chain.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arith import prime_factorize
from .errors import ChainStepFailed, NotNilpotent, SizesMismatch, SizeTooSmall
from .group import (
    ElementSet,
    GroupTable,
    Subgroup,
    element_orders,
    generated_subgroup,
    multiply_sets,
    normalizer,
)

__all__ = [
    "SylowDecomposition",
    "SubgroupChain",
    "prime_factorize",
    "is_nilpotent",
    "is_nilpotent_central_series",
    "sylow_decomposition",
    "p_group_chain",
    "subgroup_chain_for_orders",
    "chain_from_subgroups",
]


@dataclass(frozen=True)
class SylowDecomposition:
    primes: tuple[int, ...]
    components: tuple[Subgroup, ...]
    exponents: tuple[int, ...]

    def component(self, p: int) -> Subgroup:
        return self.components[self.primes.index(p)]


@dataclass(frozen=True)
class SubgroupChain:
    """``H_1 < H_2 < ... < H_k = G`` with ``|H_i| = m_1 * ... * m_i``."""

    sizes: tuple[int, ...]
    subgroups: tuple[Subgroup, ...]

    @property
    def orders(self) -> list[int]:
        return [h.order for h in self.subgroups]

    def __len__(self):
        return len(self.subgroups)

    def __getitem__(self, i) -> Subgroup:
        return self.subgroups[i]


def _p_parts(g: GroupTable) -> list[tuple[int, int, ElementSet]]:
    orders = element_orders(g)
    out = []
    for p, e in prime_factorize(g.order):
        q = orders.copy()
        while True:
            div = q % p == 0
            if not div.any():
                break
            q[div] //= p
        out.append((p, e, ElementSet.from_mask(q == 1)))
    return out


def is_nilpotent(g: GroupTable) -> bool:
    """True iff, for every prime p, the p-power-order elements form a subgroup."""
    for p, e, part in _p_parts(g):
        if len(part) != p ** e or multiply_sets(g, part, part) != part:
            return False
    return True


def is_nilpotent_central_series(g: GroupTable) -> bool:
    """Upper central series test: iterate ``Z_{i+1}/Z_i = Z(G/Z_i)`` until it stalls."""
    t = g.table
    inv = g.inverse
    ids = np.arange(g.order)
    # comm[x, y] = x^-1 y^-1 x y
    comm = t[t[inv[:, None], inv[None, :]], t[ids[:, None], ids[None, :]]]
    current = np.zeros(g.order, dtype=bool)
    current[0] = True
    while True:
        nxt = current[comm].all(axis=1)
        if nxt.all():
            return True
        if np.array_equal(nxt, current):
            return False
        current = nxt


def sylow_decomposition(g: GroupTable) -> SylowDecomposition:
    primes, comps, exps = [], [], []
    for p, e, part in _p_parts(g):
        if len(part) != p ** e:
            raise NotNilpotent(f"{len(part)} elements of {p}-power order, expected {p ** e}")
        if multiply_sets(g, part, part) != part:
            raise NotNilpotent(f"{p}-power-order elements are not closed under multiplication")
        primes.append(p)
        comps.append(Subgroup(part))
        exps.append(e)
    return SylowDecomposition(tuple(primes), tuple(comps), tuple(exps))


def _pow(g: GroupTable, x: int, k: int) -> int:
    return g.power(x, k)


def p_group_chain(g: GroupTable, p_component: Subgroup, p: int) -> list[Subgroup]:
    """Full chain ``{0} = Q_0 < ... < Q_e = p_component`` with ``|Q_j| = p^j``.

    Each step takes the minimal-id element of ``N(Q_j) \\ Q_j``, pushes it
    down by p-th powers until its p-th power lands in ``Q_j``, and adjoins it.
    """
    target = p_component.order
    q = Subgroup(ElementSet([0]))
    chain = [q]
    while q.order < target:
        norm = normalizer(g, q, p_component)
        outside = norm.elements - q.elements
        if not len(outside):
            raise ChainStepFailed(f"normalizer of a subgroup of order {q.order} is not larger")
        x = outside.min()
        seen = 0
        while _pow(g, x, p) not in q.elements:
            x = _pow(g, x, p)
            seen += 1
            if seen > target:
                raise ChainStepFailed(f"element {x} does not have {p}-power order")
        nxt = generated_subgroup(g, q.elements | ElementSet([x]))
        if nxt.order != p * q.order:
            raise ChainStepFailed(f"step from order {q.order} reached {nxt.order}, not {p * q.order}")
        q = nxt
        chain.append(q)
    return chain


@functools.lru_cache(maxsize=128)
def _prime_chains(g: GroupTable) -> dict[int, list[Subgroup]]:
    dec = sylow_decomposition(g)
    return {p: p_group_chain(g, comp, p) for p, comp in zip(dec.primes, dec.components)}


def subgroup_chain_for_orders(g: GroupTable, sizes: Sequence[int]) -> SubgroupChain:
    """Chain ``H_1 < ... < H_k = G`` with ``|H_i| = m_1 * ... * m_i``.

    ``sizes`` are used in the given order; they are never sorted.
    """
    sizes = tuple(int(m) for m in sizes)
    if not sizes:
        raise SizeTooSmall("at least one size is required")
    for m in sizes:
        if m < 2:
            raise SizeTooSmall(f"every size must be at least 2, got {m}")
    if int(np.prod(sizes, dtype=object)) != g.order:
        raise SizesMismatch(f"sizes {list(sizes)} multiply to {int(np.prod(sizes, dtype=object))}, not {g.order}")
    if not is_nilpotent(g):
        raise NotNilpotent("group is not nilpotent")
    chains = _prime_chains(g)
    subgroups = []
    d = 1
    for m in sizes:
        d *= m
        h = ElementSet([0])
        for p, a in prime_factorize(d):
            h = multiply_sets(g, h, chains[p][a].elements)
        subgroups.append(Subgroup(h))
    return SubgroupChain(sizes, tuple(subgroups))


def chain_from_subgroups(g: GroupTable, subgroups: Sequence[Subgroup | ElementSet]) -> SubgroupChain:
    """Wrap an explicit increasing chain of subgroups ending at ``G``."""
    subs = [s if isinstance(s, Subgroup) else Subgroup(ElementSet(s)) for s in subgroups]
    prev = ElementSet([0])
    sizes = []
    for h in subs:
        if multiply_sets(g, h.elements, h.elements) != h.elements or 0 not in h.elements:
            raise ValueError(f"{h.elements} is not a subgroup")
        if not prev.issubset(h.elements) or h.order == len(prev):
            raise ValueError("chain is not strictly increasing")
        sizes.append(h.order // len(prev))
        prev = h.elements
    if not subs or subs[-1].order != g.order:
        raise ValueError("chain must end at the whole group")
    return SubgroupChain(tuple(sizes), tuple(subs))
