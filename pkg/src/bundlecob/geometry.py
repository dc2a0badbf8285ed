"""Geometric generators [Y, E] and their Chern invariants.

``Y`` is a tower of P^1-bundles ``P(O + N_j)`` over a product of projective
spaces, optionally cut down to a hypersurface ``Z`` which is recorded only
through its class (the fundamental multiplier).  ``E`` is split: a list of
first Chern classes of line bundles, zero standing for a trivial factor.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .partitions import (
    MonomialIndex,
    Partition,
    PartitionList,
    PartitionPair,
    enumerate_monomials,
    is_pair_of,
)
from .ring import (
    GradedRing,
    Rational,
    TruncatedPolynomial,
    as_rational,
    format_rational,
    graded_ring,
)


class DimensionMismatchError(ValueError):
    """A Chern invariant was requested in the wrong degree or rank."""


class HeterogeneousClassError(ValueError):
    """A class mixes generators of different dimensions or ranks."""


def _degree_one(a: TruncatedPolynomial, what: str):
    if not a.is_homogeneous(1):
        raise ValueError(f"{what} must be a degree-1 class, got {a}")


@dataclass(frozen=True)
class SpaceTower:
    """``P^dims`` followed by P^1-bundles with first Chern classes ``levels``.

    ``levels[j]`` lists the coefficients of ``c_1(N_j)`` on ``h_1..h_k`` and
    the earlier ``xi``'s.  A non-None ``multiplier`` is the class of a
    hypersurface ``Z`` in the ambient tower; the space is then ``Z`` itself
    and all integrals are taken against ``[Z]``.
    """

    dims: tuple[int, ...] = ()
    levels: tuple[tuple[Rational, ...], ...] = ()
    multiplier: TruncatedPolynomial | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "levels",
                           tuple(tuple(as_rational(c) for c in lv) for lv in self.levels))
        ring = self.ring
        if self.multiplier is not None:
            f = ring.constant(0) + self.multiplier
            if not (f.is_homogeneous(0) or f.is_homogeneous(1)) or not f:
                raise ValueError(f"multiplier must be a non-zero class of degree 0 or 1, got {f}")
            if f == 1:
                f = None
            object.__setattr__(self, "multiplier", f)
        if self.dimension < 0:
            raise ValueError("negative dimension")

    @classmethod
    def projective(cls, dims) -> "SpaceTower":
        return cls(tuple(dims))

    @property
    def ring(self) -> GradedRing:
        return graded_ring(self.dims, self.levels)

    @property
    def multiplier_degree(self) -> int:
        if self.multiplier is None:
            return 0
        return max(self.multiplier.degrees())

    @property
    def dimension(self) -> int:
        return sum(self.dims) + len(self.levels) - self.multiplier_degree

    @property
    def fundamental_class(self) -> TruncatedPolynomial:
        return self.ring.one() if self.multiplier is None else self.multiplier

    def with_level(self, nclass) -> "SpaceTower":
        """Add the bundle ``P(O + N)`` with ``c_1(N) = nclass`` on top."""
        if self.multiplier is not None:
            raise ValueError("add bundle levels before restricting to a hypersurface")
        if isinstance(nclass, TruncatedPolynomial):
            if nclass.ring != self.ring:
                raise ValueError("level class must live in the current top ring")
            _degree_one(nclass, "level class")
            coeffs = nclass.linear_coefficients()
        else:
            coeffs = tuple(as_rational(c) for c in nclass)
            coeffs += (0,) * (self.ring.ngens - len(coeffs))
        return SpaceTower(self.dims, self.levels + (coeffs,))

    def restrict(self, zclass: TruncatedPolynomial) -> "SpaceTower":
        """The hypersurface of class ``zclass`` inside this space."""
        if self.multiplier is not None:
            raise ValueError("space is already restricted")
        _degree_one(zclass, "hypersurface class")
        return SpaceTower(self.dims, self.levels, self.ring.pullback(zclass))

    def name(self) -> str:
        base = "x".join(f"P{d}" for d in self.dims) or "P0"
        for lv in self.levels:
            base = f"P(O+N[{','.join(format_rational(c) for c in lv)}])->{base}"
        if self.multiplier is not None:
            base = f"Z[{self.multiplier}]⊂{base}"
        return base


@dataclass(frozen=True)
class GeneratorSpec:
    """The pair ``[Y, L_1 + ... + L_r]`` with ``lines`` the classes ``c_1(L_i)``."""

    space: SpaceTower
    lines: tuple[TruncatedPolynomial, ...] = ()

    def __post_init__(self):
        ring = self.space.ring
        lines = []
        for i, l in enumerate(self.lines):
            if isinstance(l, TruncatedPolynomial):
                l = ring.pullback(l) if l.ring != ring else l
            elif l == 0:
                l = ring.zero()
            else:
                l = ring.linear(l)
            _degree_one(l, f"line class {i}")
            lines.append(l)
        object.__setattr__(self, "lines", tuple(lines))

    @property
    def rank(self) -> int:
        return len(self.lines)

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def ring(self) -> GradedRing:
        return self.space.ring

    def name(self) -> str:
        return f"[{self.space.name()}, {_bundle_name(self)}]"

    def list_name(self) -> str:
        return f"[{self.space.name()}, ({', '.join(_line_name(self, l) for l in self.lines)})]"


def _line_name(g: GeneratorSpec, l: TruncatedPolynomial) -> str:
    if not l:
        return "O"
    coeffs = l.linear_coefficients()
    k = g.ring.nbase
    if any(coeffs[k:]) or not g.space.dims:
        return f"L[{l}]"
    return "O(" + ",".join(format_rational(c) for c in coeffs[:k]) + ")"


def _bundle_name(g: GeneratorSpec) -> str:
    if not g.lines:
        return "0"
    words = []
    trivial = sum(1 for l in g.lines if not l)
    if trivial:
        words.append("O" if trivial == 1 else f"O^{trivial}")
    words.extend(_line_name(g, l) for l in g.lines if l)
    return "+".join(words)


@dataclass(frozen=True)
class ClassSpec:
    """A formal rational combination of generators of one dimension and rank."""

    terms: tuple[tuple[Rational, GeneratorSpec], ...] = field(default_factory=tuple)

    def __post_init__(self):
        terms = tuple((as_rational(c), g) for c, g in self.terms)
        object.__setattr__(self, "terms", terms)
        dims = {g.dimension for _, g in terms}
        ranks = {g.rank for _, g in terms}
        if len(dims) > 1 or len(ranks) > 1:
            raise HeterogeneousClassError(
                f"class mixes dimensions {sorted(dims)} and ranks {sorted(ranks)}")

    @classmethod
    def of(cls, *generators) -> "ClassSpec":
        return cls(tuple((1, g) for g in generators))

    @property
    def dimension(self) -> int | None:
        return self.terms[0][1].dimension if self.terms else None

    @property
    def rank(self) -> int | None:
        return self.terms[0][1].rank if self.terms else None

    def __add__(self, other):
        if isinstance(other, GeneratorSpec):
            other = ClassSpec.of(other)
        return ClassSpec(self.terms + other.terms)

    def __sub__(self, other):
        if isinstance(other, GeneratorSpec):
            other = ClassSpec.of(other)
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c) -> "ClassSpec":
        c = as_rational(c)
        return ClassSpec(tuple((c * x, g) for x, g in self.terms))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)


# -- Chern classes ---------------------------------------------------------

def _graded_pieces(a: TruncatedPolynomial) -> list[TruncatedPolynomial]:
    return [a.degree_part(k) for k in range(a.ring.dimension + 1)]


@functools.lru_cache(maxsize=2048)
def tangent_total_chern(space: SpaceTower) -> TruncatedPolynomial:
    """Total Chern class of the tangent bundle of ``space``.

    Each ``P^d`` factor contributes ``(1 + h)^(d + 1)``, each bundle level
    ``(1 + xi)(1 + xi + n)`` and a hypersurface of class ``z`` divides by
    ``1 + z``.
    """
    ring = space.ring
    total = ring.one()
    for i, d in enumerate(space.dims):
        total = total * (1 + ring.h(i)) ** (d + 1)
    for j in range(ring.nlevels):
        xi = ring.xi(j)
        total = total * (1 + xi) * (1 + xi + ring.level_class(j))
    if space.multiplier_degree == 1:
        z = space.multiplier
        inverse = ring.one()
        term = ring.one()
        for _ in range(ring.dimension):
            term = term * (-z)
            inverse = inverse + term
        total = total * inverse
    return total


def tangent_chern_classes(space: SpaceTower) -> list[TruncatedPolynomial]:
    """``[c_0, c_1, ..., c_D]`` with ``D`` the ambient ring dimension."""
    return _graded_pieces(tangent_total_chern(space))


def split_chern_classes(lines, ring: GradedRing | None = None) -> tuple[TruncatedPolynomial, ...]:
    """``(c_1, ..., c_r)`` of a split bundle: elementary symmetric functions of the roots."""
    lines = tuple(lines)
    if not lines:
        return ()
    if ring is None:
        ring = lines[0].ring
    e = [ring.one()] + [ring.zero()] * len(lines)
    for l in lines:
        for k in range(len(lines), 0, -1):
            e[k] = e[k] + e[k - 1] * l
    return tuple(e[1:])


class _TowerData:
    """Per-space cache of the tangent classes and ``F * prod u_i`` products."""

    def __init__(self, space: SpaceTower):
        self.space = space
        self.ring = space.ring
        self.u = tangent_chern_classes(space)
        self._fu = {(): space.fundamental_class}
        self._dual = {}

    def fu(self, nu: tuple[int, ...]) -> TruncatedPolynomial:
        hit = self._fu.get(nu)
        if hit is None:
            i = nu[0]
            c = self.u[i] if i < len(self.u) else self.ring.zero()
            hit = self.fu(nu[1:]) * c
            self._fu[nu] = hit
        return hit

    def dual(self, nu: tuple[int, ...]) -> dict[int, Rational]:
        """``F * u^nu`` as the functional ``b -> integral of F * u^nu * b``."""
        hit = self._dual.get(nu)
        if hit is None:
            hit = self.ring.functional(self.fu(nu))
            self._dual[nu] = hit
        return hit


@functools.lru_cache(maxsize=2048)
def _tower_data(space: SpaceTower) -> _TowerData:
    return _TowerData(space)


def _v_power(v, memo, mu: tuple[int, ...]) -> TruncatedPolynomial:
    hit = memo.get(mu)
    if hit is None:
        hit = _v_power(v, memo, mu[1:]) * v[mu[0] - 1]
        memo[mu] = hit
    return hit


def _generator_values(g: GeneratorSpec, order) -> list[Rational]:
    data = _tower_data(g.space)
    ring = data.ring
    v = split_chern_classes(g.lines, ring)
    memo = {(): ring.one()}
    out = []
    for q in order:
        w = data.dual(tuple(q.nu))
        b = _v_power(v, memo, tuple(q.mu))._c
        out.append(sum(x * b[j] for j, x in w.items() if j in b))
    return out


@functools.lru_cache(maxsize=65536)
def _cached_vector(space: SpaceTower, lines: frozenset) -> tuple[Rational, ...]:
    # Chern classes of a split bundle are symmetric in the roots, so the
    # multiset of lines is a complete key.
    g = GeneratorSpec(space, tuple(l for l, k in lines for _ in range(k)))
    return tuple(_generator_values(g, enumerate_monomials(g.dimension, g.rank)))


def _generator_vector(g: GeneratorSpec) -> tuple[Rational, ...]:
    counts = {}
    for l in g.lines:
        counts[l] = counts.get(l, 0) + 1
    return _cached_vector(g.space, frozenset(counts.items()))


def chern_invariant(g: GeneratorSpec, theta: MonomialIndex) -> Rational:
    """``integral over Y of theta(c(T_Y), c(E))``."""
    if theta.degree != g.dimension:
        raise DimensionMismatchError(
            f"monomial {theta} has degree {theta.degree}, space has dimension {g.dimension}")
    if theta.mu and theta.mu[0] > g.rank:
        raise DimensionMismatchError(f"monomial {theta} uses c_j(E) with j > rank {g.rank}")
    return _generator_values(g, [theta])[0]


@dataclass(frozen=True)
class ChernVector:
    """All Chern invariants of a class, in the canonical order of Q_{n,r}."""

    n: int
    r: int
    values: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_rational(x) for x in self.values))
        if len(self.values) != len(self.order):
            raise ValueError(f"expected {len(self.order)} values, got {len(self.values)}")

    @classmethod
    def zero(cls, n: int, r: int) -> "ChernVector":
        return cls(n, r, (0,) * len(enumerate_monomials(n, r)))

    @property
    def order(self) -> tuple[MonomialIndex, ...]:
        return enumerate_monomials(self.n, self.r)

    def __getitem__(self, q: MonomialIndex) -> Rational:
        return self.values[self.order.index(q)]

    def as_dict(self) -> dict[MonomialIndex, Rational]:
        return dict(zip(self.order, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def _check(self, other):
        if (self.n, self.r) != (other.n, other.r):
            raise DimensionMismatchError(f"C_{{{self.n},{self.r}}} vs C_{{{other.n},{other.r}}}")

    def __add__(self, other: "ChernVector") -> "ChernVector":
        self._check(other)
        return ChernVector(self.n, self.r, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ChernVector") -> "ChernVector":
        self._check(other)
        return ChernVector(self.n, self.r, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, c) -> "ChernVector":
        c = as_rational(c)
        return ChernVector(self.n, self.r, tuple(c * a for a in self.values))

    __rmul__ = __mul__


def generator_chern_vector(g: GeneratorSpec) -> ChernVector:
    return ChernVector(g.dimension, g.rank, _generator_vector(g))


def chern_vector(c, n: int | None = None, r: int | None = None) -> ChernVector:
    """Chern vector of a :class:`ClassSpec` (or a single generator).

    ``n`` and ``r`` are only needed for an empty class; when given they must
    agree with the generators.
    """
    if isinstance(c, GeneratorSpec):
        c = ClassSpec.of(c)
    if c.terms:
        if n is not None and n != c.dimension or r is not None and r != c.rank:
            raise DimensionMismatchError(
                f"class has dimension {c.dimension} and rank {c.rank}, expected {n} and {r}")
        n, r = c.dimension, c.rank
    elif n is None or r is None:
        raise ValueError("an empty class needs explicit n and r")
    order = enumerate_monomials(n, r)
    weights = {}
    for coeff, g in c.terms:
        weights[g] = weights.get(g, 0) + coeff
    acc = [0] * len(order)
    for g, w in weights.items():
        if not w:
            continue
        for k, x in enumerate(_generator_vector(g)):
            acc[k] += w * x
    return ChernVector(n, r, tuple(acc))


# -- basis generators ------------------------------------------------------

def _assign_factors(lam: Partition, parts) -> list[int]:
    """Distinct factor indices of ``lam`` carrying the given parts, left to right."""
    used = set()
    out = []
    for m in parts:
        for i, p in enumerate(lam):
            if p == m and i not in used:
                used.add(i)
                out.append(i)
                break
        else:
            raise ValueError(f"part {m} is not available in {lam!r}")
    return out


def phi(pair: PartitionPair, r: int) -> GeneratorSpec:
    """``[P^lam, O^(r - l(mu)) + sum_{m in mu} L_m]``."""
    if not is_pair_of(pair, pair.lam.size, r):
        raise ValueError(f"{pair} has mu longer than r={r}")
    space = SpaceTower.projective(pair.lam)
    ring = space.ring
    lines = [ring.zero()] * (r - pair.mu.length)
    lines += [ring.h(i) for i in _assign_factors(pair.lam, pair.mu)]
    return GeneratorSpec(space, tuple(lines))


def phi_list(pl: PartitionList) -> GeneratorSpec:
    """``[P^lam, (L_{m_1}, ..., L_{m_r})]`` with ``L_0`` trivial."""
    space = SpaceTower.projective(pl.lam)
    ring = space.ring
    nonzero = [m for m in pl.m if m]
    factors = iter(_assign_factors(pl.lam, nonzero))
    lines = tuple(ring.h(next(factors)) if m else ring.zero() for m in pl.m)
    return GeneratorSpec(space, lines)


def projective_space_with_hyperplane(a: int) -> GeneratorSpec:
    """``[P^a, O(1)]``; for ``a = 0`` the hyperplane class is zero."""
    if a == 0:
        return GeneratorSpec(SpaceTower(), (graded_ring().zero(),))
    space = SpaceTower.projective((a,))
    return GeneratorSpec(space, (space.ring.h(0),))


__all__ = [
    "ChernVector", "ClassSpec", "DimensionMismatchError", "GeneratorSpec",
    "HeterogeneousClassError", "SpaceTower", "chern_invariant", "chern_vector",
    "generator_chern_vector", "phi", "phi_list", "projective_space_with_hyperplane",
    "split_chern_classes", "tangent_chern_classes", "tangent_total_chern",
]
