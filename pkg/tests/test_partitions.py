import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from bundlecob.partitions import (
    EMPTY,
    MonomialIndex,
    Partition,
    PartitionList,
    PartitionPair,
    canonical_order,
    enumerate_lists,
    enumerate_monomials,
    enumerate_pairs,
    enumerate_partitions,
    epsilon,
    epsilon_inverse,
    partition_count,
    sub_partitions,
)


def brute_partitions(n):
    """Partitions of n from all compositions, deduplicated by sorting."""
    out = set()
    for cuts in itertools.product([0, 1], repeat=max(n - 1, 0)):
        parts, cur = [], 1
        for c in cuts:
            if c:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        if n:
            parts.append(cur)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def brute_subs(lam, r):
    out = set()
    for k in range(min(r, len(lam)) + 1):
        for pos in itertools.combinations(range(len(lam)), k):
            out.add(tuple(sorted((lam[i] for i in pos), reverse=True)))
    return out


partitions = st.integers(0, 12).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_partition_validation():
    assert Partition((3, 1, 1)) == (3, 1, 1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.from_parts([1, 3, 2]) == (3, 2, 1)
    assert Partition.from_exponents((2, 0, 1)) == (3, 1, 1)
    assert str(EMPTY) == "∅" and str(Partition((2, 1))) == "21"


def test_enumerate_small():
    assert enumerate_partitions(0) == (EMPTY,)
    assert enumerate_partitions(3) == ((3,), (2, 1), (1, 1, 1))
    assert len(enumerate_partitions(5)) == 7


@pytest.mark.parametrize("n", range(0, 13))
def test_enumerate_matches_brute_force(n):
    got = enumerate_partitions(n)
    assert len(set(got)) == len(got)
    assert set(got) == brute_partitions(n)
    assert list(got) == sorted(got, reverse=True)
    assert partition_count(n) == len(got)


def test_transpose_examples():
    assert Partition((3,)).transpose() == (1, 1, 1)
    assert Partition((2, 1)).transpose() == (2, 1)
    assert EMPTY.transpose() == EMPTY
    assert Partition((4, 2, 1)).transpose() == (3, 2, 1, 1)


@given(partitions)
def test_transpose_involution(p):
    t = p.transpose()
    assert t.transpose() == p
    assert t.size == p.size
    assert t.length == (p[0] if p else 0)


def test_sub_partitions_examples():
    assert set(sub_partitions(Partition((2, 1)), 2)) == {(), (2,), (1,), (2, 1)}
    assert set(sub_partitions(Partition((1, 1, 1)), 2)) == {(), (1,), (1, 1)}
    assert sub_partitions(Partition((1, 1)), 0) == ((),)


@given(partitions, st.integers(0, 5))
def test_sub_partitions_are_multiset_selections(lam, r):
    got = sub_partitions(lam, r)
    assert len(set(got)) == len(got)
    assert set(got) == brute_subs(lam, r)
    for mu in got:
        assert not Counter(mu) - Counter(lam)


def test_pairs_3_2():
    expected = {
        ((3,), ()), ((3,), (3,)),
        ((2, 1), ()), ((2, 1), (2,)), ((2, 1), (1,)), ((2, 1), (2, 1)),
        ((1, 1, 1), ()), ((1, 1, 1), (1,)), ((1, 1, 1), (1, 1)),
    }
    got = enumerate_pairs(3, 2)
    assert len(got) == 9
    assert {(p.lam, p.mu) for p in got} == expected


def test_pairs_edge_cases():
    assert [(p.lam, p.mu) for p in enumerate_pairs(4, 0)] == [(lam, ()) for lam in enumerate_partitions(4)]
    assert [(p.lam, p.mu) for p in enumerate_pairs(0, 3)] == [((), ())]


def test_pair_validation():
    with pytest.raises(ValueError):
        PartitionPair(Partition((2, 1)), Partition((3,)))
    with pytest.raises(ValueError):
        PartitionPair(Partition((2,)), Partition((1,)))


def test_lists_examples():
    assert len(enumerate_lists(3, 2)) == 14
    expected = {
        ((3,), (0, 0)), ((3,), (3, 0)), ((3,), (0, 3)),
        ((2, 1), (0, 0)), ((2, 1), (2, 0)), ((2, 1), (1, 0)), ((2, 1), (0, 1)),
        ((2, 1), (0, 2)), ((2, 1), (2, 1)), ((2, 1), (1, 2)),
        ((1, 1, 1), (0, 0)), ((1, 1, 1), (1, 0)), ((1, 1, 1), (0, 1)), ((1, 1, 1), (1, 1)),
    }
    assert {(pl.lam, pl.m) for pl in enumerate_lists(3, 2)} == expected
    assert {(pl.lam, pl.m) for pl in enumerate_lists(1, 2)} == {((1,), (0, 0)), ((1,), (1, 0)), ((1,), (0, 1))}
    assert {(pl.lam, pl.m) for pl in enumerate_lists(3, 0)} == {(lam, ()) for lam in enumerate_partitions(3)}


def brute_lists(n, r):
    out = set()
    for lam in enumerate_partitions(n):
        for m in itertools.product(range(n + 1), repeat=r):
            nz = [x for x in m if x]
            if not Counter(nz) - Counter(lam):
                out.add((lam, m))
    return out


def degree_monomial_count(n, weights):
    """Monomials of degree n in variables of the given degrees, by exhaustive search."""
    count = 0

    def rec(i, left):
        nonlocal count
        if i == len(weights):
            count += left == 0
            return
        for e in range(left // weights[i] + 1):
            rec(i + 1, left - e * weights[i])

    rec(0, n)
    return count


@pytest.mark.parametrize("n,r", [(n, r) for n in range(0, 6) for r in range(0, 4)])
def test_lists_brute_force_and_count(n, r):
    got = enumerate_lists(n, r)
    assert len(set(got)) == len(got)
    assert {(pl.lam, pl.m) for pl in got} == brute_lists(n, r)
    assert len(got) == degree_monomial_count(n, list(range(1, n + 1)) + [1] * r)


def test_list_validation():
    with pytest.raises(ValueError):
        PartitionList(Partition((2, 1)), (2, 2))
    pl = PartitionList(Partition((2, 1)), (1, 2))
    assert pl.mu == (2, 1) and pl.r == 2


def test_monomials_3_2():
    got = enumerate_monomials(3, 2)
    names = {q.name() for q in got}
    assert names == {"u3", "u2 u1", "u1^3", "u2 v1", "u1^2 v1", "u1 v1^2", "u1 v2", "v2 v1", "v1^3"}
    assert {q.name() for q in enumerate_monomials(1, 1)} == {"u1", "v1"}
    assert len(enumerate_monomials(6, 0)) == partition_count(6)


def test_monomial_exponents():
    q = MonomialIndex.from_exponents((2, 0, 1), (1, 1))
    assert q.nu == (3, 1, 1) and q.mu == (2, 1)
    assert q.degree == 8
    assert q.v_exponents(3) == (1, 1, 0)
    assert q.name() == "u3 u1^2 v2 v1"
    assert MonomialIndex(EMPTY, EMPTY).name() == "1"
    with pytest.raises(ValueError):
        MonomialIndex(Partition((1,)), (1, 2))


def test_epsilon_examples():
    assert epsilon(MonomialIndex(Partition((3,)), EMPTY)) == PartitionPair(Partition((3,)), EMPTY)
    assert epsilon(MonomialIndex(Partition((1,)), Partition((1, 1)))) == PartitionPair(Partition((2, 1)), Partition((2,)))
    assert epsilon(MonomialIndex(EMPTY, Partition((2, 1)))) == PartitionPair(Partition((2, 1)), Partition((2, 1)))


@pytest.mark.parametrize("n", range(0, 9))
def test_epsilon_bijection(n):
    for r in range(0, 5):
        qs = enumerate_monomials(n, r)
        ps = enumerate_pairs(n, r)
        images = [epsilon(q) for q in qs]
        assert len(set(images)) == len(qs) == len(ps)
        assert set(images) == set(ps)
        assert all(epsilon_inverse(epsilon(q)) == q for q in qs)


@pytest.mark.parametrize("n", range(0, 11))
def test_rank_identity(n):
    for r in range(0, 6):
        expected = sum(partition_count(n - k) for k in range(n + 1)
                       for lam in enumerate_partitions(k) if len(lam) <= r)
        assert len(enumerate_pairs(n, r)) == expected


def test_canonical_order_examples():
    a = MonomialIndex(Partition((1,)), Partition((2,)))        # u1 v2
    b = MonomialIndex(Partition((1,)), Partition((1, 1)))      # u1 v1^2
    assert canonical_order(a, b) == 1 and canonical_order(b, a) == -1
    c = MonomialIndex(Partition((2,)), EMPTY)
    d = MonomialIndex(Partition((1, 1)), EMPTY)
    assert canonical_order(c, d) == -1
    assert canonical_order(a, a) == 0


@settings(max_examples=60)
@given(st.integers(0, 6), st.integers(0, 3), st.data())
def test_canonical_order_is_total(n, r, data):
    qs = enumerate_monomials(n, r)
    x, y, z = (data.draw(st.sampled_from(qs)) for _ in range(3))
    assert canonical_order(x, y) == -canonical_order(y, x)
    assert (canonical_order(x, y) == 0) == (x == y)
    if canonical_order(x, y) <= 0 and canonical_order(y, z) <= 0:
        assert canonical_order(x, z) <= 0


def test_enumerate_monomials_sorted():
    for n in range(6):
        for r in range(4):
            qs = enumerate_monomials(n, r)
            assert all(canonical_order(a, b) == -1 for a, b in zip(qs, qs[1:]))


def test_json_roundtrip():
    p = enumerate_pairs(3, 2)[5]
    assert PartitionPair.from_json(p.to_json()) == p
    assert set(p.to_json()) == {"lambda", "mu"}
    pl = enumerate_lists(3, 2)[4]
    assert PartitionList.from_json(pl.to_json()) == pl
    q = enumerate_monomials(3, 2)[4]
    assert MonomialIndex.from_json(q.to_json()) == q
