"""Built-in group collections and ordered factorizations of integers."""

from __future__ import annotations

import random

from .group import GroupTable, make_from_permutations
from .groupspec import parse_group_spec


def invariant_factor_lists(n: int) -> list[list[int]]:
    """Every list ``d_1 | d_2 | ... | d_r`` of integers >= 2 with product ``n``.

    These are exactly the invariant factors of the abelian groups of order n.
    """
    out = []

    def rec(rest: int, prev: int, acc: list[int]):
        if rest == 1:
            out.append(acc)
            return
        for d in range(prev, rest + 1):
            # remaining factors are multiples of d, so d must divide all of rest
            if rest % d == 0 and d % (acc[-1] if acc else 1) == 0:
                tail = rest // d
                if tail == 1 or tail % d == 0:
                    rec(tail, d, acc + [d])

    if n == 1:
        return [[]]
    rec(n, 2, [])
    return out


def abelian_specs(max_order: int, min_order: int = 2) -> list[str]:
    specs = []
    for n in range(min_order, max_order + 1):
        for factors in invariant_factor_lists(n):
            specs.append("abelian:" + ",".join(map(str, factors)))
    return specs


# Dic3 = Z3 : Z4, supersolvable and not nilpotent
_PERMUTATION_GROUPS = {
    "perm-dicyclic-12": (7, ["(0 1 2)", "(1 2)(3 4 5 6)"]),
}

NILPOTENT_EXTRAS = (
    "dihedral:4",
    "quaternion",
    "heisenberg:2",
    "heisenberg:3",
    "quaternion x cyclic:3",
    "elem-abelian:2^5",
)

SUPERSOLVABLE_PROBE_SPECS = (
    "dihedral:3",
    "dihedral:5",
    "dihedral:6",
    "dihedral:7",
    "dihedral:9",
    "dihedral:10",
    "dihedral:11",
    "dihedral:12",
    "dihedral:3 x cyclic:2",
    "dihedral:3 x cyclic:3",
    "dihedral:3 x cyclic:4",
    "dihedral:3 x abelian:2,2",
    "dihedral:5 x cyclic:2",
    "dihedral:6 x cyclic:2",
    "perm-dicyclic-12",
)


def named_group(name: str) -> GroupTable:
    """A catalog name: either a group spec or one of the permutation groups above."""
    if name in _PERMUTATION_GROUPS:
        degree, gens = _PERMUTATION_GROUPS[name]
        return make_from_permutations(degree, gens)
    return parse_group_spec(name)


def nilpotent_catalog(max_abelian_order: int = 64) -> list[tuple[str, GroupTable]]:
    """Abelian groups up to ``max_abelian_order`` plus a few nonabelian nilpotent ones."""
    names = abelian_specs(max_abelian_order)
    names += [s for s in NILPOTENT_EXTRAS if s not in names]
    return [(s, named_group(s)) for s in names]


def probe_catalog(max_order: int = 24) -> list[tuple[str, GroupTable]]:
    out = []
    for name in SUPERSOLVABLE_PROBE_SPECS:
        g = named_group(name)
        if g.order <= max_order:
            out.append((name, g))
    return out


def ordered_factorizations(n: int, min_parts: int = 1, min_part: int = 2) -> list[tuple[int, ...]]:
    """All ordered tuples of integers >= ``min_part`` with product ``n``."""
    found = []

    def rec(rest, acc):
        if rest == 1:
            if len(acc) >= min_parts:
                found.append(tuple(acc))
            return
        for d in range(min_part, rest + 1):
            if rest % d == 0:
                rec(rest // d, acc + [d])

    if min_part <= 1:
        raise ValueError("min_part must be at least 2")
    rec(n, [])
    return found


def sampled_factorizations(n: int, min_parts: int = 3, cap: int = 200, seed: int = 0) -> list[tuple[int, ...]]:
    """Ordered factorizations of ``n`` into ``min_parts`` or more parts, at most ``cap``."""
    facts = ordered_factorizations(n, min_parts=min_parts)
    if len(facts) <= cap:
        return facts
    return sorted(random.Random(seed).sample(facts, cap))
