"""Partitions and the index sets built from them.

A partition is a weakly decreasing tuple of positive integers.  On top of
that this module enumerates

* partition pairs ``(lam, mu)`` with ``mu`` a sub-partition of ``lam`` of
  length at most ``r`` (the indices of the basis of omega_{n,r}),
* partition lists ``(lam, (m_1, ..., m_r))`` (the basis for lists of line
  bundles),
* monomial indices ``(nu, mu)`` of degree-n monomials in the tangent Chern
  classes ``u_i`` and the bundle Chern classes ``v_j``,

together with the bijection ``epsilon(nu, mu) = (nu + mu^t, mu^t)`` and the
v-degree ordering used to lay out the pairing matrix.
"""
from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    >>> Partition((2, 1)).transpose()
    Partition(2, 1)
    >>> Partition.from_parts([1, 3, 1])
    Partition(3, 1, 1)
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts):
        """Build a partition from parts in any order (zeros are dropped)."""
        return cls(sorted((p for p in parts if p), reverse=True))

    @classmethod
    def from_exponents(cls, exponents):
        """``exponents[i]`` is the multiplicity of the part ``i + 1``."""
        parts = []
        for i in range(len(exponents) - 1, -1, -1):
            parts.extend([i + 1] * exponents[i])
        return cls(parts)

    def __repr__(self):
        return f"Partition({', '.join(map(str, self))})"

    def __str__(self):
        if not self:
            return "∅"
        if max(self) < 10:
            return "".join(map(str, self))
        return "(" + ",".join(map(str, self)) + ")"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def exponents(self, k: int | None = None) -> tuple[int, ...]:
        """Multiplicities of the parts ``1..k`` (``k`` defaults to the largest part)."""
        if k is None:
            k = self[0] if self else 0
        if self and self[0] > k:
            raise ValueError(f"{self!r} has a part larger than {k}")
        counts = Counter(self)
        return tuple(counts[i] for i in range(1, k + 1))

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p >= i) for i in range(1, self[0] + 1))

    def contains(self, other) -> bool:
        """True if the multiset of parts of ``other`` is contained in ours."""
        mine = Counter(self)
        return all(mine[p] >= c for p, c in Counter(other).items())

    def union(self, other) -> "Partition":
        return Partition.from_parts(tuple(self) + tuple(other))

    def difference(self, other) -> "Partition":
        counts = Counter(self)
        counts.subtract(Counter(other))
        if any(c < 0 for c in counts.values()):
            raise ValueError(f"{other!r} is not a sub-partition of {self!r}")
        return Partition.from_parts(counts.elements())


EMPTY = Partition()


@functools.lru_cache(maxsize=None)
def _partitions(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, max_part), 0, -1):
        out.extend((k,) + rest for rest in _partitions(n - k, k))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def enumerate_partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_part is None:
        max_part = n
    return tuple(Partition(p) for p in _partitions(n, max_part))


def partition_count(n: int) -> int:
    return len(_partitions(n, n)) if n >= 0 else 0


def sub_partitions(lam, r: int) -> tuple[Partition, ...]:
    """Inequivalent sub-partitions of ``lam`` of length at most ``r``.

    Sub-partitions differing only by a permutation of equal parts are the
    same multiset selection, so each one appears once.  Ordered by length,
    then descending lexicographically.
    """
    counts = sorted(Counter(lam).items(), reverse=True)
    found = []
    for picks in itertools.product(*(range(c + 1) for _, c in counts)):
        if sum(picks) > r:
            continue
        parts = []
        for (part, _), k in zip(counts, picks):
            parts.extend([part] * k)
        found.append(Partition(parts))
    found.sort(key=lambda p: (len(p), tuple(-x for x in p)))
    return tuple(found)


@dataclass(frozen=True)
class PartitionPair:
    """``(lam, mu)`` with ``mu`` a sub-partition of ``lam``."""

    lam: Partition
    mu: Partition

    def __post_init__(self):
        object.__setattr__(self, "lam", Partition(self.lam))
        object.__setattr__(self, "mu", Partition(self.mu))
        if not self.lam.contains(self.mu):
            raise ValueError(f"{self.mu!r} is not a sub-partition of {self.lam!r}")

    @property
    def n(self) -> int:
        return self.lam.size

    def __str__(self):
        return f"({self.lam},{self.mu})"

    def to_json(self):
        return {"lambda": list(self.lam), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, obj):
        return cls(Partition(obj["lambda"]), Partition(obj["mu"]))


@dataclass(frozen=True)
class PartitionList:
    """``(lam, (m_1, ..., m_r))`` whose non-zero entries form a sub-partition of ``lam``."""

    lam: Partition
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", Partition(self.lam))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if any(x < 0 for x in self.m):
            raise ValueError(f"list entries must be non-negative: {self.m}")
        if not self.lam.contains(self.mu):
            raise ValueError(f"non-zero entries of {self.m} are not a sub-partition of {self.lam!r}")

    @property
    def mu(self) -> Partition:
        return Partition.from_parts(self.m)

    @property
    def r(self) -> int:
        return len(self.m)

    def __str__(self):
        return f"({self.lam},({','.join(map(str, self.m))}))"

    def to_json(self):
        return {"lambda": list(self.lam), "m": list(self.m)}

    @classmethod
    def from_json(cls, obj):
        return cls(Partition(obj["lambda"]), tuple(obj["m"]))


@dataclass(frozen=True)
class MonomialIndex:
    """The monomial ``prod u_i^{l_i} prod v_j^{m_j}`` stored as ``(nu, mu)``.

    ``nu = 1^{l_1} 2^{l_2} ...`` collects the tangent classes and
    ``mu = 1^{m_1} ... r^{m_r}`` the bundle classes.
    """

    nu: Partition
    mu: Partition

    def __post_init__(self):
        object.__setattr__(self, "nu", Partition(self.nu))
        object.__setattr__(self, "mu", Partition(self.mu))

    @classmethod
    def from_exponents(cls, u_exponents, v_exponents):
        return cls(Partition.from_exponents(u_exponents), Partition.from_exponents(v_exponents))

    @property
    def degree(self) -> int:
        return self.nu.size + self.mu.size

    def u_exponents(self, n: int | None = None) -> tuple[int, ...]:
        return self.nu.exponents(n)

    def v_exponents(self, r: int) -> tuple[int, ...]:
        return self.mu.exponents(r)

    def name(self) -> str:
        """Human readable form, e.g. ``u1^2 v1``; the empty monomial is ``1``."""
        words = []
        for letter, part in (("u", self.nu), ("v", self.mu)):
            for i, k in sorted(Counter(part).items(), reverse=True):
                words.append(f"{letter}{i}" + (f"^{k}" if k > 1 else ""))
        return " ".join(words) or "1"

    def __str__(self):
        return self.name()

    def to_json(self):
        return {"nu": list(self.nu), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, obj):
        return cls(Partition(obj["nu"]), Partition(obj["mu"]))


def v_degree_key(q: MonomialIndex, r: int):
    """Sort key realising the canonical order on Q_{n,r}.

    The v-degree ``(m_1, ..., m_r)`` is compared from ``m_r`` down to
    ``m_1``; inside one block (same ``mu``) larger ``nu`` in lexicographic
    order comes first.  Within a block all ``nu`` have the same size, so
    negating the parts gives the descending order.
    """
    return tuple(reversed(q.v_exponents(r))), tuple(-p for p in q.nu)


def block_key(q: MonomialIndex, r: int) -> tuple[int, ...]:
    return tuple(reversed(q.v_exponents(r)))


def canonical_order(q1: MonomialIndex, q2: MonomialIndex) -> int:
    """Three-way comparison: -1 if ``q1`` precedes ``q2``, 0 if equal, 1 otherwise."""
    r = max([1, *q1.mu[:1], *q2.mu[:1]])
    k1, k2 = v_degree_key(q1, r), v_degree_key(q2, r)
    return (k1 > k2) - (k1 < k2)


@functools.lru_cache(maxsize=None)
def enumerate_monomials(n: int, r: int) -> tuple[MonomialIndex, ...]:
    """Q_{n,r}: degree-n monomials in ``u_1..u_n`` and ``v_1..v_r``, canonically ordered."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be non-negative")
    out = []
    for k in range(n + 1):
        for mu in enumerate_partitions(k, r):
            for nu in enumerate_partitions(n - k):
                out.append(MonomialIndex(nu, mu))
    out.sort(key=lambda q: v_degree_key(q, r))
    return tuple(out)


def epsilon(q: MonomialIndex) -> PartitionPair:
    mt = q.mu.transpose()
    return PartitionPair(q.nu.union(mt), mt)


def epsilon_inverse(pair: PartitionPair) -> MonomialIndex:
    return MonomialIndex(pair.lam.difference(pair.mu), pair.mu.transpose())


def is_pair_of(pair: PartitionPair, n: int, r: int) -> bool:
    return pair.lam.size == n and pair.mu.length <= r


@functools.lru_cache(maxsize=None)
def enumerate_pairs(n: int, r: int) -> tuple[PartitionPair, ...]:
    """P_{n,r}, listed in the canonical order of the corresponding monomials."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be non-negative")
    pairs = [PartitionPair(lam, mu)
             for lam in enumerate_partitions(n)
             for mu in sub_partitions(lam, r)]
    pairs.sort(key=lambda p: v_degree_key(epsilon_inverse(p), r))
    return tuple(pairs)


@functools.lru_cache(maxsize=None)
def enumerate_lists(n: int, r: int) -> tuple[PartitionList, ...]:
    """P_{n,1^r}, each element once."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be non-negative")
    out = []
    for lam in enumerate_partitions(n):
        for mu in sub_partitions(lam, r):
            padded = tuple(mu) + (0,) * (r - len(mu))
            for m in sorted(set(itertools.permutations(padded)), reverse=True):
                out.append(PartitionList(lam, m))
    return tuple(out)
