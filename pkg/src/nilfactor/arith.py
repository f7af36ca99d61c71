"""Small integer helpers."""

from __future__ import annotations


def prime_factorize(n: int) -> list[tuple[int, int]]:
    """Return the ascending list of ``(prime, exponent)`` pairs of ``n``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factorize(n) == [(n, 1)]


def is_prime_power(n: int) -> bool:
    return n == 1 or len(prime_factorize(n)) == 1
