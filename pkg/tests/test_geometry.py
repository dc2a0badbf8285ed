import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracle
from bundlecob.geometry import (
    ChernVector,
    ClassSpec,
    DimensionMismatchError,
    GeneratorSpec,
    HeterogeneousClassError,
    SpaceTower,
    chern_invariant,
    chern_vector,
    generator_chern_vector,
    phi,
    phi_list,
    split_chern_classes,
    tangent_total_chern,
)
from bundlecob.partitions import (
    EMPTY,
    MonomialIndex,
    Partition,
    PartitionList,
    PartitionPair,
    enumerate_pairs,
)
from bundlecob.ring import format_rational, graded_ring, integrate


def pp(lam, mu):
    return PartitionPair(Partition(lam), Partition(mu))


def test_tangent_examples():
    P1 = SpaceTower.projective((1,))
    h = P1.ring.h(0)
    assert tangent_total_chern(P1) == 1 + 2 * h
    S = SpaceTower.projective((2, 1))
    h1, h2 = S.ring.h(0), S.ring.h(1)
    assert tangent_total_chern(S) == 1 + 3 * h1 + 2 * h2 + 3 * h1 ** 2 + 6 * h1 * h2 + 6 * h1 ** 2 * h2
    T = P1.with_level((1,))
    h, xi = T.ring.h(0), T.ring.xi()
    assert tangent_total_chern(T) == (1 + 2 * h) * (1 + xi) * (1 + xi + h)
    assert tangent_total_chern(T) == 1 + 3 * h + 2 * xi + 4 * h * xi


def test_hypersurface_tangent():
    # a quadric surface in P^3 has Euler characteristic 4 and c_1^2 = 8
    P3 = SpaceTower.projective((3,))
    Q = P3.restrict(2 * P3.ring.h(0))
    assert Q.dimension == 2
    g = GeneratorSpec(Q, ())
    cv = generator_chern_vector(g).as_dict()
    assert cv[MonomialIndex(Partition((2,)), EMPTY)] == 4
    assert cv[MonomialIndex(Partition((1, 1)), EMPTY)] == 8
    # a cubic surface: chi = 9, K^2 = 3
    C = P3.restrict(3 * P3.ring.h(0))
    cv = generator_chern_vector(GeneratorSpec(C, ())).as_dict()
    assert cv[MonomialIndex(Partition((2,)), EMPTY)] == 9
    assert cv[MonomialIndex(Partition((1, 1)), EMPTY)] == 3


def test_split_chern_examples():
    R = graded_ring((1, 1))
    h1, h2 = R.h(0), R.h(1)
    c1, c2 = split_chern_classes((h1, h2))
    assert c1 == h1 + h2 and c2 == h1 * h2
    assert all(c == 0 for c in split_chern_classes((R.zero(),) * 3))
    P2 = graded_ring((2,))
    h = P2.h(0)
    c1, c2 = split_chern_classes((h, -h))
    assert c1 == 0 and c2 == -h * h
    assert split_chern_classes(()) == ()


def test_chern_invariant_examples():
    g = phi(pp((2, 1), (2, 1)), 2)
    assert chern_invariant(g, MonomialIndex(EMPTY, Partition((2, 1)))) == 1
    pt = GeneratorSpec(SpaceTower(), (0, 0, 0))
    assert chern_invariant(pt, MonomialIndex(EMPTY, EMPTY)) == 1
    S = SpaceTower.projective((1, 1))
    g = GeneratorSpec(S, ((1, 1),))
    assert chern_invariant(g, MonomialIndex(EMPTY, Partition((1, 1)))) == 2
    with pytest.raises(DimensionMismatchError):
        chern_invariant(g, MonomialIndex(Partition((1,)), EMPTY))
    with pytest.raises(DimensionMismatchError):
        chern_invariant(g, MonomialIndex(EMPTY, Partition((2,))))


def test_chern_vector_examples():
    cv = chern_vector(ClassSpec.of(phi(pp((2,), (2,)), 1)))
    assert [q.name() for q in cv.order] == ["u2", "u1^2", "u1 v1", "v1^2"]
    assert cv.values == (3, 9, 3, 1)
    S = SpaceTower.projective((1, 1))
    assert chern_vector(GeneratorSpec(S, ((1, 1),))).values == (4, 8, 4, 2)
    assert chern_vector(ClassSpec(), 3, 2).is_zero()
    with pytest.raises(ValueError):
        chern_vector(ClassSpec())


def test_chern_vector_linear_and_aggregating():
    a = phi(pp((2,), (2,)), 1)
    b = GeneratorSpec(SpaceTower.projective((1, 1)), ((1, 1),))
    c = ClassSpec(((2, a), (-1, b), (1, a)))
    assert chern_vector(c) == 3 * chern_vector(a) - chern_vector(b)
    assert chern_vector(ClassSpec(((1, a), (-1, a)))).is_zero()


def test_heterogeneous_class():
    a = phi(pp((2,), ()), 1)
    b = phi(pp((3,), ()), 1)
    with pytest.raises(HeterogeneousClassError):
        ClassSpec.of(a, b)
    with pytest.raises(HeterogeneousClassError):
        ClassSpec.of(a, phi(pp((2,), ()), 2))
    with pytest.raises(DimensionMismatchError):
        chern_vector(ClassSpec.of(a), 3, 1)


def test_phi_examples():
    assert phi(pp((3,), (3,)), 2).name() == "[P3, O+O(1)]"
    assert phi(pp((2, 1), (2, 1)), 2).name() == "[P2xP1, O(1,0)+O(0,1)]"
    assert phi(pp((1, 1, 1), ()), 2).name() == "[P1xP1xP1, O^2]"
    assert phi(pp((), ()), 5).name() == "[P0, O^5]"
    # repeated parts land on distinct factors
    g = phi(pp((1, 1, 1), (1, 1)), 2)
    assert [l.linear_coefficients() for l in g.lines] == [(1, 0, 0), (0, 1, 0)]
    with pytest.raises(ValueError):
        phi(pp((2, 1), (2, 1)), 1)


def test_phi_list_examples():
    pl = PartitionList(Partition((3,)), (0, 3))
    assert phi_list(pl).list_name() == "[P3, (O, O(1))]"
    pl = PartitionList(Partition((2, 1)), (1, 2))
    assert phi_list(pl).list_name() == "[P2xP1, (O(0,1), O(1,0))]"
    pl = PartitionList(Partition((1, 1, 1)), (1, 1))
    assert phi_list(pl).list_name() == "[P1xP1xP1, (O(1,0,0), O(0,1,0))]"


@pytest.mark.parametrize("n", range(0, 6))
def test_top_bundle_entry_is_one(n):
    for r in range(0, 4):
        for p in enumerate_pairs(n, r):
            if p.mu.size != n:
                continue
            cv = chern_vector(phi(p, r))
            q = MonomialIndex(EMPTY, p.mu.transpose())
            assert cv[q] == 1


@pytest.mark.parametrize("n", range(0, 9))
def test_euler_characteristic(n):
    g = GeneratorSpec(SpaceTower.projective((n,) if n else ()), ())
    top = MonomialIndex(Partition((n,)) if n else EMPTY, EMPTY)
    assert chern_invariant(g, top) == n + 1


def test_space_validation():
    P2 = SpaceTower.projective((2,))
    with pytest.raises(ValueError):
        P2.restrict(P2.ring.h(0) ** 2)
    Z = P2.restrict(P2.ring.h(0))
    with pytest.raises(ValueError):
        Z.with_level((1,))
    assert SpaceTower((2,), (), P2.ring.one()).multiplier is None
    with pytest.raises(ValueError):
        GeneratorSpec(P2, (P2.ring.h(0) ** 2,))


@st.composite
def generators(draw, max_dim=4):
    k = draw(st.integers(0, 2))
    dims = tuple(sorted((draw(st.integers(1, 2)) for _ in range(k)), reverse=True))
    nlevels = draw(st.integers(0, max(0, min(2, max_dim - sum(dims)))))
    levels = [tuple(draw(st.integers(-2, 2)) for _ in range(k + j)) for j in range(nlevels)]
    space = SpaceTower(dims, tuple(levels))
    ng = space.ring.ngens
    mult = None
    if ng and draw(st.booleans()):
        mult = tuple(draw(st.integers(0, 2)) for _ in range(ng))
        if any(mult):
            space = SpaceTower(dims, tuple(levels), space.ring.linear(mult))
        else:
            mult = None
    lines = [tuple(draw(st.integers(-1, 2)) for _ in range(ng)) for _ in range(draw(st.integers(0, 2)))]
    return GeneratorSpec(space, tuple(space.ring.linear(l) for l in lines)), (dims, levels, mult, lines)


@settings(max_examples=40, deadline=None)
@given(generators())
def test_chern_vector_matches_sympy_oracle(data):
    g, (dims, levels, mult, lines) = data
    cv = generator_chern_vector(g)
    expected = oracle.chern_vector(dims, levels, mult, lines, cv.order)
    assert [sp.Rational(format_rational(x)) for x in cv.values] == expected


def test_chern_vector_independent_of_line_order():
    S = SpaceTower.projective((2, 1)).with_level((1, -1))
    a = GeneratorSpec(S, ((1, 0, 0), (0, 1, 1), 0))
    b = GeneratorSpec(S, (0, (0, 1, 1), (1, 0, 0)))
    assert generator_chern_vector(a) == generator_chern_vector(b)


def test_one_level_pushforward_formula():
    # integral over P(O+N) -> P^2 of xi^3 is pi_*(xi^3) = n^2 = 4 for N = O(2)
    # (xi^2 = -n xi, so xi^3 = n^2 xi)
    T = SpaceTower.projective((2,)).with_level((2,))
    xi = T.ring.xi()
    assert integrate(xi ** 3) == 4
    assert integrate(xi ** 2 * T.ring.h(0)) == -2


def test_chern_vector_arith_and_errors():
    a = chern_vector(phi(pp((2,), ()), 1))
    assert (a + a) - 2 * a == ChernVector.zero(2, 1)
    with pytest.raises(DimensionMismatchError):
        a + ChernVector.zero(2, 0)
    with pytest.raises(ValueError):
        ChernVector(2, 1, (1, 2))
