"""
The two worked constructions: Z_2^n with blocks of size 2 and Z_{10^n} with
blocks of size 10, built with hand-picked chains, transversals, shifts and
swap elements instead of the minimal-id defaults.
"""

from __future__ import annotations

from .errors import InvalidOrder
from .factorize import CompleteFactorization, build_blocks_from_chain
from .group import ElementSet, GroupTable, generated_subgroup, make_abelian, make_cyclic, max_order
from .structure import chain_from_subgroups


def unit_vector(n: int, i: int) -> int:
    """Id of ``e_i`` (1-based) in ``make_abelian([2] * n)``; ``e_1`` is the top bit."""
    return 1 << (n - i)


def z2n_example(n: int) -> tuple[GroupTable, CompleteFactorization]:
    """Z_2^n, chain ``H_i = <e_1..e_i>``, ``T_i = {0, e_i}``, ``h_i = e_{i+1}``,
    ``t' = e_2`` and ``s' = e_1 + e_n``."""
    if n < 3:
        raise InvalidOrder(f"need n >= 3, got {n}")
    g = make_abelian([2] * n)
    e = [None] + [unit_vector(n, i) for i in range(1, n + 1)]
    chain = chain_from_subgroups(g, [generated_subgroup(g, e[1:i + 1]) for i in range(1, n + 1)])
    transversals = [chain[0].elements] + [ElementSet([0, e[i]]) for i in range(2, n + 1)]
    fact = build_blocks_from_chain(
        g,
        chain,
        shifts=[e[i + 1] for i in range(2, n)],
        t_prime=e[2],
        s_prime=e[1] ^ e[n],
        transversals=transversals,
    )
    return g, fact


def z10n_example(n: int) -> tuple[GroupTable, CompleteFactorization]:
    """Z_{10^n}, chain ``H_i = <10^(n-i)>``, ``T_i = 10^(n-i) * {0..9}``,
    ``h_i = 10^(n-i-1)``, ``t' = 10^(n-2)`` and ``s' = 101``."""
    if n < 3:
        raise InvalidOrder(f"need n >= 3, got {n}")
    if 10 ** n > max_order():
        raise InvalidOrder(f"10^{n} exceeds the size cap {max_order()}")
    g = make_cyclic(10 ** n)
    chain = chain_from_subgroups(g, [generated_subgroup(g, [10 ** (n - i) % 10 ** n]) for i in range(1, n + 1)])
    transversals = [ElementSet(10 ** (n - i) * d for d in range(10)) for i in range(1, n + 1)]
    fact = build_blocks_from_chain(
        g,
        chain,
        shifts=[10 ** (n - i - 1) for i in range(2, n)],
        t_prime=10 ** (n - 2),
        s_prime=101,
        transversals=transversals,
    )
    return g, fact
