"""
Finite groups as dense Cayley tables.

Every group is a ``GroupTable`` over element ids ``0..n-1`` with the identity
always at id 0.  Subsets of a group are ``ElementSet`` values (sorted, no
duplicates) and subgroups wrap an ``ElementSet`` known to be closed.

All objects here are immutable once built; the numpy arrays they hold are
marked read-only.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .arith import is_prime
from .errors import (
    GroupTooLarge,
    InvalidOrder,
    InvalidPermutation,
    NotAGroup,
)

DEFAULT_MAX_ORDER = 65536
ASSOCIATIVITY_BOUND = 512
_SAMPLED_TRIPLES = 20000


def max_order() -> int:
    """Size cap for constructed groups; ``NILFACTOR_MAX_ORDER`` overrides it."""
    value = os.environ.get("NILFACTOR_MAX_ORDER")
    if value:
        return int(value)
    return DEFAULT_MAX_ORDER


def _check_size(n: int) -> None:
    cap = max_order()
    if n > cap:
        raise GroupTooLarge(f"group order {n} exceeds the size cap {cap}")


def _id_dtype(n: int):
    return np.uint16 if n <= 65536 else np.int32


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class ElementSet:
    """An ascending, duplicate-free set of element ids."""

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[int] | np.ndarray = ()):
        if isinstance(members, ElementSet):
            self._members = members._members
            return
        if not isinstance(members, np.ndarray):
            members = np.fromiter((int(x) for x in members), dtype=np.int64)
        arr = np.unique(members.astype(np.int64, copy=False))
        self._members = _frozen(arr)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> ElementSet:
        out = cls.__new__(cls)
        out._members = _frozen(np.flatnonzero(mask).astype(np.int64))
        return out

    @property
    def members(self) -> np.ndarray:
        return self._members

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[self._members] = True
        return m

    def tolist(self) -> list[int]:
        return self._members.tolist()

    def min(self) -> int:
        return int(self._members[0])

    def __len__(self):
        return len(self._members)

    def __iter__(self):
        return iter(self._members.tolist())

    def __contains__(self, x):
        i = np.searchsorted(self._members, x)
        return bool(i < len(self._members) and self._members[i] == x)

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return np.array_equal(self._members, other._members)

    def __hash__(self):
        return hash(self._members.tobytes())

    def __le__(self, other: ElementSet) -> bool:
        return self.issubset(other)

    def __repr__(self):
        return f"ElementSet({self.tolist()})"

    def issubset(self, other: ElementSet) -> bool:
        return bool(np.isin(self._members, other._members, assume_unique=True).all())

    def isdisjoint(self, other: ElementSet) -> bool:
        return len(np.intersect1d(self._members, other._members, assume_unique=True)) == 0

    def intersection(self, other: ElementSet) -> ElementSet:
        return ElementSet(np.intersect1d(self._members, other._members, assume_unique=True))

    def union(self, other: ElementSet) -> ElementSet:
        return ElementSet(np.union1d(self._members, other._members))

    def difference(self, other: ElementSet) -> ElementSet:
        return ElementSet(np.setdiff1d(self._members, other._members, assume_unique=True))

    __and__ = intersection
    __or__ = union
    __sub__ = difference


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Dense Cayley table; ``table[a, b]`` is the id of ``a * b``.

    ``fully_validated`` is False only for tables read from outside whose
    associativity was checked by sampling rather than exhaustively.
    """

    order: int
    table: np.ndarray
    inverse: np.ndarray
    labels: tuple[str, ...] | None = None
    fully_validated: bool = True

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, x: int, k: int) -> int:
        result, base = 0, int(x)
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def powers_all(self, k: int) -> np.ndarray:
        """Vector of ``x**k`` for every element ``x``."""
        idx = np.arange(self.order)
        result = np.zeros(self.order, dtype=np.int64)
        base = idx.copy()
        while k:
            if k & 1:
                result = self.table[result, base].astype(np.int64)
            base = self.table[base, base].astype(np.int64)
            k >>= 1
        return result

    def elements(self) -> ElementSet:
        return ElementSet(np.arange(self.order))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def check_set(self, s: ElementSet) -> None:
        if len(s) and (s.members[0] < 0 or s.members[-1] >= self.order):
            raise ValueError(f"element ids out of range for a group of order {self.order}")

    def to_json(self) -> dict:
        out = {"order": self.order, "table": self.table.astype(np.int64).tolist()}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True)
class Subgroup:
    elements: ElementSet

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# -- construction -----------------------------------------------------------


def _trusted(table: np.ndarray, labels=None, inverse=None) -> GroupTable:
    n = table.shape[0]
    table = np.ascontiguousarray(table, dtype=_id_dtype(n))
    if inverse is None:
        rows, cols = np.nonzero(table == 0)
        inverse = np.empty(n, dtype=np.int64)
        inverse[rows] = cols
    inverse = np.asarray(inverse, dtype=np.int64)
    return GroupTable(
        order=n,
        table=_frozen(table),
        inverse=_frozen(inverse),
        labels=tuple(labels) if labels is not None else None,
    )


def make_cyclic(n: int) -> GroupTable:
    """Z_n with ``a * b = (a + b) mod n``."""
    if n < 1:
        raise InvalidOrder(f"cyclic group order must be positive, got {n}")
    _check_size(n)
    idx = np.arange(n, dtype=np.int64)
    table = np.empty((n, n), dtype=_id_dtype(n))
    step = max(1, (1 << 22) // n)
    for start in range(0, n, step):
        rows = idx[start:start + step]
        table[start:start + step] = (rows[:, None] + idx[None, :]) % n
    return _trusted(table, inverse=(-idx) % n)


def make_direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    """Direct product; the pair ``(x, y)`` has id ``x * |b| + y``."""
    n = a.order * b.order
    _check_size(n)
    nb = b.order
    table = np.empty((n, n), dtype=_id_dtype(n))
    tb = b.table.astype(np.int64)
    for x in range(a.order):
        row = a.table[x].astype(np.int64) * nb
        table[x * nb:(x + 1) * nb] = (row[None, :, None] + tb[:, None, :]).reshape(nb, n)
    inverse = (a.inverse[:, None] * b.order + b.inverse[None, :]).reshape(n)
    labels = None
    if a.labels or b.labels:
        labels = [f"({a.label(x)},{b.label(y)})" for x in range(a.order) for y in range(b.order)]
    return _trusted(table, labels=labels, inverse=inverse)


def make_abelian(invariant_factors: Sequence[int]) -> GroupTable:
    """Direct sum of cyclic groups, first factor most significant in the id."""
    factors = [int(f) for f in invariant_factors]
    for f in factors:
        if f < 2:
            raise InvalidOrder(f"cyclic factors must be at least 2, got {f}")
    _check_size(int(np.prod(factors, dtype=object)) if factors else 1)
    g = make_cyclic(1)
    for f in factors:
        g = make_direct_product(g, make_cyclic(f))
    return g


def make_dihedral(m: int) -> GroupTable:
    """Dihedral group of order ``2m``.

    Ids ``0..m-1`` are the rotations ``r^i`` and ``m..2m-1`` the reflections
    ``s r^i``.
    """
    if m < 1:
        raise InvalidOrder(f"dihedral parameter must be positive, got {m}")
    n = 2 * m
    _check_size(n)
    i = np.arange(m)
    rot = (i[:, None] + i[None, :]) % m   # r^i r^j, s r^i r^j
    flip = (i[None, :] - i[:, None]) % m  # r^i s r^j, s r^i s r^j
    table = np.block([[rot, m + flip], [m + rot, flip]])
    labels = [f"r{k}" for k in range(m)] + [f"sr{k}" for k in range(m)]
    return _trusted(table, labels=labels)


_QUAT_UNITS = ("1", "i", "j", "k")
# unit products as (sign, unit): row * column
_QUAT_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def make_quaternion() -> GroupTable:
    """Q8; id ``2*u + neg`` encodes the signed unit ``±u``."""
    table = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            sign, unit = _QUAT_MUL[a // 2, b // 2]
            neg = (a % 2) ^ (b % 2) ^ (sign < 0)
            table[a, b] = 2 * unit + neg
    labels = [("-" if x % 2 else "") + _QUAT_UNITS[x // 2] for x in range(8)]
    return _trusted(table, labels=labels)


def make_heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over Z_p.

    The matrix with entries ``a`` (1,2), ``b`` (2,3), ``c`` (1,3) has id
    ``a*p^2 + b*p + c``.
    """
    if not is_prime(p):
        raise InvalidOrder(f"heisenberg group needs a prime, got {p}")
    n = p ** 3
    _check_size(n)
    ids = np.arange(n)
    a, b, c = ids // (p * p), (ids // p) % p, ids % p
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    table = na * p * p + nb * p + nc
    return _trusted(table)


def parse_cycles(text: str, degree: int) -> list[int]:
    """Turn cycle notation like ``"(0 1 2)(3 4)"`` into an image list."""
    images = list(range(degree))
    body = text.strip()
    if body in ("", "()"):
        return images
    if not (body.startswith("(") and body.endswith(")")):
        raise InvalidPermutation(f"bad cycle notation {text!r}")
    for chunk in body[1:-1].split(")("):
        pts = [int(tok) for tok in chunk.replace(",", " ").split()]
        if len(set(pts)) != len(pts):
            raise InvalidPermutation(f"repeated point in cycle ({chunk})")
        for x in pts:
            if not 0 <= x < degree:
                raise InvalidPermutation(f"point {x} outside 0..{degree - 1}")
        for x, y in zip(pts, pts[1:] + pts[:1]):
            images[x] = y
    return images


def make_from_permutations(degree: int, generators: Sequence) -> GroupTable:
    """Close a permutation group and return its Cayley table.

    Generators are image lists (``p[i]`` is the image of ``i``) or cycle
    strings.  Products apply the left factor first: ``(a*b)[i] = b[a[i]]``.
    """
    if degree < 1:
        raise InvalidOrder(f"degree must be positive, got {degree}")
    gens = []
    for g in generators:
        if isinstance(g, str):
            g = parse_cycles(g, degree)
        g = [int(x) for x in g]
        if sorted(g) != list(range(degree)):
            raise InvalidPermutation(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(tuple(g))
    cap = max_order()
    ident = tuple(range(degree))
    perms = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in index:
                    if len(perms) >= cap:
                        raise GroupTooLarge(f"permutation group exceeds the size cap {cap}")
                    index[y] = len(perms)
                    perms.append(y)
                    nxt.append(y)
        frontier = nxt
    n = len(perms)
    P = np.array(perms, dtype=np.int64).reshape(n, degree)
    # row keys for vectorized id lookup
    radix = np.int64(degree)
    if degree ** degree < 2 ** 62:
        weights = radix ** np.arange(degree - 1, -1, -1, dtype=np.int64)
        keys = P @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]

        def lookup(rows):
            return order[np.searchsorted(sorted_keys, rows @ weights)]
    else:
        def lookup(rows):
            return np.array([index[tuple(r)] for r in rows.tolist()])
    table = np.empty((n, n), dtype=_id_dtype(n))
    for a in range(n):
        # (a*b)[i] = b[a[i]] for all b at once
        table[a] = lookup(P[:, P[a]])
    return _trusted(table)


def make_from_table(table, order: int | None = None, labels=None,
                    exhaustive_bound: int = ASSOCIATIVITY_BOUND,
                    seed: int = 0) -> GroupTable:
    """Validate a raw Cayley table and relabel its identity to id 0.

    Associativity is checked on every triple up to ``exhaustive_bound``
    elements; above that a seeded random sample is checked and the result
    carries ``fully_validated=False``.
    """
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if order is not None and order != n:
        raise NotAGroup(f"declared order {order} but table has {n} rows")
    _check_size(n)
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup(f"table entries must lie in [0, {n})")
    ref = np.arange(n)
    srt = np.sort(t, axis=1)
    bad = np.flatnonzero((srt != ref).any(axis=1))
    if len(bad):
        raise NotAGroup(f"row {bad[0]} is not a permutation", witness=("row", int(bad[0])))
    srt = np.sort(t, axis=0)
    bad = np.flatnonzero((srt != ref[:, None]).any(axis=0))
    if len(bad):
        raise NotAGroup(f"column {bad[0]} is not a permutation", witness=("column", int(bad[0])))
    ids = np.flatnonzero((t == ref).all(axis=1) & (t.T == ref).all(axis=1))
    if not len(ids):
        raise NotAGroup("no identity element")
    e = int(ids[0])
    if e != 0:
        sigma = ref.copy()
        sigma[[0, e]] = [e, 0]
        t = sigma[t[np.ix_(sigma, sigma)]]
        if labels is not None:
            labels = list(labels)
            labels[0], labels[e] = labels[e], labels[0]
    if labels is not None and len(labels) != n:
        raise NotAGroup(f"expected {n} labels, got {len(labels)}")
    witness = _associativity_witness(t, exhaustive_bound, seed)
    if witness is not None:
        a, b, c = witness
        raise NotAGroup(f"associativity fails at ({a}, {b}, {c})", witness=("triple", witness))
    g = _trusted(t, labels=labels)
    if n > exhaustive_bound:
        g = GroupTable(g.order, g.table, g.inverse, g.labels, fully_validated=False)
    return g


def _associativity_witness(t: np.ndarray, bound: int, seed: int):
    n = t.shape[0]
    if n <= bound:
        for a in range(n):
            # (a*b)*c versus a*(b*c) over all b, c
            left = t[t[a]]
            right = t[a][t]
            diff = np.argwhere(left != right)
            if len(diff):
                b, c = diff[0]
                return (a, int(b), int(c))
        return None
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, _SAMPLED_TRIPLES))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if len(bad):
        i = bad[0]
        return (int(a[i]), int(b[i]), int(c[i]))
    return None


def group_from_json(obj: dict) -> GroupTable:
    if "table" not in obj:
        raise NotAGroup("JSON group is missing 'table'")
    return make_from_table(obj["table"], order=obj.get("order"), labels=obj.get("labels"))


def validate_group(g: GroupTable, exhaustive_bound: int = ASSOCIATIVITY_BOUND) -> None:
    """Check every GroupTable invariant, raising NotAGroup on the first failure."""
    t = g.table.astype(np.int64)
    n = g.order
    ref = np.arange(n)
    if t.shape != (n, n):
        raise NotAGroup(f"table shape {t.shape} does not match order {n}")
    if not (np.array_equal(t[0], ref) and np.array_equal(t[:, 0], ref)):
        raise NotAGroup("element 0 is not the identity")
    if (np.sort(t, axis=1) != ref).any() or (np.sort(t, axis=0) != ref[:, None]).any():
        raise NotAGroup("table is not a Latin square")
    if not (t[ref, g.inverse] == 0).all():
        raise NotAGroup("inverse array is wrong")
    witness = _associativity_witness(t, exhaustive_bound, 0)
    if witness is not None:
        raise NotAGroup(f"associativity fails at {witness}", witness=("triple", witness))


# -- elementary operations --------------------------------------------------


def multiply_sets(g: GroupTable, a: ElementSet, b: ElementSet) -> ElementSet:
    """The product set ``{x*y : x in a, y in b}``."""
    if not len(a) or not len(b):
        return ElementSet()
    return ElementSet(g.table[np.ix_(a.members, b.members)].ravel())


def generated_subgroup(g: GroupTable, seed: ElementSet | Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    gens = np.unique(np.fromiter((int(x) for x in seed), dtype=np.int64))
    gens = gens[gens != 0]
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    # right multiplication by generators reaches everything in a finite group
    while len(frontier) and len(gens):
        cand = np.unique(g.table[np.ix_(frontier, gens)].ravel()).astype(np.int64)
        frontier = cand[~mask[cand]]
        mask[frontier] = True
    return Subgroup(ElementSet.from_mask(mask))


def is_subgroup(g: GroupTable, s: ElementSet) -> bool:
    if 0 not in s:
        return False
    return multiply_sets(g, s, s) == s


def as_subgroup(g: GroupTable, s: ElementSet | Iterable[int]) -> Subgroup:
    s = ElementSet(s)
    if not is_subgroup(g, s):
        raise ValueError(f"{s} is not a subgroup")
    return Subgroup(s)


def whole_group(g: GroupTable) -> Subgroup:
    return Subgroup(g.elements())


def element_order(g: GroupTable, x: int) -> int:
    t, y = 1, int(x)
    while y != 0:
        y = int(g.table[y, x])
        t += 1
    return t


def element_orders(g: GroupTable) -> np.ndarray:
    """Orders of all elements at once, by stripping prime factors from ``n``."""
    from .arith import prime_factorize

    n = g.order
    orders = np.full(n, n, dtype=np.int64)
    for p, e in prime_factorize(n):
        for _ in range(e):
            cand = orders // p
            # x^(ord/p) == 1 means the order can drop by p; done per exponent
            hit = np.zeros(n, dtype=bool)
            for value in np.unique(cand[orders % p == 0]):
                sel = (cand == value) & (orders % p == 0)
                pw = g.powers_all(int(value))
                hit |= sel & (pw == 0)
            orders = np.where(hit, orders // p, orders)
    return orders


def conjugate_set(g: GroupTable, h: ElementSet, x: int) -> ElementSet:
    """``x^-1 h x``."""
    return ElementSet(g.table[g.table[g.inverse[x], h.members], x])


def normalizer(g: GroupTable, h: Subgroup, ambient: Subgroup) -> Subgroup:
    """``{x in ambient : x^-1 h x = h}``."""
    amb = ambient.elements.members
    hm = h.elements.members
    inside = h.elements.mask(g.order)
    conj = g.table[g.table[g.inverse[amb][:, None], hm[None, :]], amb[:, None]]
    keep = inside[conj].all(axis=1)
    return Subgroup(ElementSet(amb[keep]))


def right_cosets(g: GroupTable, h: Subgroup, ambient: Subgroup) -> list[ElementSet]:
    """Right cosets ``h*x`` inside ``ambient``, ordered by their minimal id."""
    out = []
    covered = np.zeros(g.order, dtype=bool)
    hm = h.elements.members
    for x in ambient.elements.members.tolist():
        if covered[x]:
            continue
        coset = g.table[hm, x].astype(np.int64)
        covered[coset] = True
        out.append(ElementSet(coset))
    return out


def right_transversal(g: GroupTable, h: Subgroup, ambient: Subgroup) -> ElementSet:
    """Minimal-id representative of every right coset of ``h`` in ``ambient``.

    The identity is always the representative of ``h`` itself.
    """
    if not h.elements.issubset(ambient.elements):
        raise ValueError("subgroup is not contained in the ambient subgroup")
    return ElementSet([c.min() for c in right_cosets(g, h, ambient)])


def center(g: GroupTable) -> Subgroup:
    comm = (g.table == g.table.T).all(axis=1)
    return Subgroup(ElementSet.from_mask(comm))
