"""Truncated polynomial arithmetic in intersection rings of P^1-bundle towers.

The rings handled here are

    Q[h_1, ..., h_k, xi_1, ..., xi_L] / (h_i^{d_i + 1}, xi_j^2 + n_j xi_j)

i.e. the rational intersection ring of ``P^{d_1} x ... x P^{d_k}`` followed by
``L`` successive projective bundles ``P(O + N_j)``, where ``n_j = c_1(N_j)`` is
a degree-1 class in the generators introduced before ``xi_j`` and
``xi_j = c_1(O(1))`` on the j-th bundle.

Elements are stored sparsely on the monomial basis ``h^a xi^e`` with
``a_i <= d_i`` and ``e_j <= 1``.  Coefficients are exact: Python ints when
integral, :class:`fractions.Fraction` otherwise.
"""
from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = int | Fraction


class RingMismatchError(ValueError):
    """Operands live in different rings."""


def as_rational(x) -> Rational:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x.strip()))
    if isinstance(x, _RationalABC):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    """Canonical ``"p/q"`` form, with ``q`` omitted when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GradedRing:
    """Intersection ring of ``P^dims`` with a tower of ``P(O + N_j)`` bundles.

    ``levels[j]`` holds the coefficients of ``n_j`` on the generators that
    precede ``xi_j``: the ``h_i`` followed by ``xi_0 .. xi_{j-1}``.  Use
    :func:`graded_ring` to obtain shared instances; the multiplication table
    is built lazily and cached on the instance.
    """

    def __init__(self, dims=(), levels=()):
        self.dims = tuple(int(d) for d in dims)
        if any(d < 0 for d in self.dims):
            raise ValueError(f"projective space dimensions must be >= 0: {self.dims}")
        self.levels = tuple(tuple(as_rational(c) for c in lv) for lv in levels)
        k = len(self.dims)
        for j, lv in enumerate(self.levels):
            if len(lv) != k + j:
                raise ValueError(
                    f"level {j} needs {k + j} coefficients (h's then earlier xi's), got {len(lv)}")
        self.nbase = k
        self.nlevels = len(self.levels)
        self.ngens = k + self.nlevels
        self.caps = self.dims + (1,) * self.nlevels
        self.dimension = sum(self.dims) + self.nlevels
        self.basis = tuple(itertools.product(*(range(c + 1) for c in self.caps)))
        self.index = {e: i for i, e in enumerate(self.basis)}
        self.degrees = tuple(sum(e) for e in self.basis)
        self.top = self.index[self.caps]
        self._reduced = {}
        self._table = {}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self.dims == other.dims and self.levels == other.levels

    def __hash__(self):
        return hash((self.dims, self.levels))

    def __repr__(self):
        return f"GradedRing(dims={self.dims}, levels={self.levels})"

    def __reduce__(self):
        return graded_ring, (self.dims, self.levels)

    # -- reduction -------------------------------------------------------
    def _reduce(self, exps: tuple[int, ...]) -> dict[int, Rational]:
        """Normal form of a raw monomial as ``{basis index: coefficient}``."""
        hit = self._reduced.get(exps)
        if hit is not None:
            return hit
        k = self.nbase
        out = {}
        if all(exps[i] <= self.dims[i] for i in range(k)):
            top = None
            for j in range(self.nlevels - 1, -1, -1):
                if exps[k + j] >= 2:
                    top = j
                    break
            if top is None:
                out = {self.index[exps]: 1}
            else:
                # xi^2 = -n xi: trade one xi for -n, whose generators all precede xi
                pos = k + top
                lowered = list(exps)
                lowered[pos] -= 1
                for g, c in enumerate(self.levels[top]):
                    if not c:
                        continue
                    e = list(lowered)
                    e[g] += 1
                    for idx, v in self._reduce(tuple(e)).items():
                        s = out.get(idx, 0) - c * v
                        if s:
                            out[idx] = s
                        else:
                            out.pop(idx, None)
        self._reduced[exps] = out
        return out

    def product_terms(self, i: int, j: int):
        key = (i, j) if i <= j else (j, i)
        hit = self._table.get(key)
        if hit is None:
            if self.degrees[i] + self.degrees[j] > self.dimension:
                hit = ()
            else:
                raw = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
                hit = tuple(self._reduce(raw).items())
            self._table[key] = hit
        return hit

    # -- constructors ----------------------------------------------------
    def element(self, coeffs: dict[int, Rational]) -> "TruncatedPolynomial":
        return TruncatedPolynomial(self, {i: c for i, c in coeffs.items() if c})

    def zero(self):
        return TruncatedPolynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = as_rational(c)
        return TruncatedPolynomial(self, {0: c} if c else {})

    def gen(self, g: int):
        if not 0 <= g < self.ngens:
            raise IndexError(f"generator {g} out of range for {self!r}")
        e = [0] * self.ngens
        e[g] = 1
        return self.from_terms({tuple(e): 1})

    def h(self, i: int):
        if not 0 <= i < self.nbase:
            raise IndexError(f"no base generator h_{i}")
        return self.gen(i)

    def xi(self, j: int = -1):
        if not self.nlevels:
            raise IndexError("ring has no bundle level")
        if j < 0:
            j += self.nlevels
        return self.gen(self.nbase + j)

    def linear(self, coeffs) -> "TruncatedPolynomial":
        """The degree-1 class ``sum c_g * gen_g`` (shorter coefficient lists are zero padded)."""
        coeffs = [as_rational(c) for c in coeffs]
        if len(coeffs) > self.ngens:
            raise ValueError(f"{len(coeffs)} coefficients for {self.ngens} generators")
        terms = {}
        for g, c in enumerate(coeffs):
            if c:
                e = [0] * self.ngens
                e[g] = 1
                terms[tuple(e)] = c
        return self.from_terms(terms)

    def from_terms(self, terms) -> "TruncatedPolynomial":
        """Reduce an arbitrary ``{exponent tuple: coefficient}`` mapping."""
        acc = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != self.ngens or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent vector {exps} for {self.ngens} generators")
            c = as_rational(c)
            for idx, v in self._reduce(exps).items():
                acc[idx] = acc.get(idx, 0) + c * v
        return self.element(acc)

    def level_class(self, j: int = -1) -> "TruncatedPolynomial":
        """``n_j`` pulled back to this ring."""
        if j < 0:
            j += self.nlevels
        return self.linear(self.levels[j])

    # -- tower structure -------------------------------------------------
    @property
    def base_ring(self) -> "GradedRing":
        if not self.nlevels:
            raise ValueError("ring has no bundle level")
        return graded_ring(self.dims, self.levels[:-1])

    def pullback(self, a: "TruncatedPolynomial") -> "TruncatedPolynomial":
        """Pull ``a`` back from the ring below the top level (or return it unchanged)."""
        if a.ring == self:
            return a
        base = self.base_ring
        if a.ring != base:
            raise RingMismatchError(f"cannot pull back from {a.ring!r} to {self!r}")
        return TruncatedPolynomial(self, {self.index[base.basis[i] + (0,)]: c for i, c in a._c.items()})

    def functional(self, a: "TruncatedPolynomial") -> dict[int, Rational]:
        """Coefficients ``w`` with ``pair(a, b) == sum(w[j] * b[j])`` for every ``b``."""
        w = {}
        top = self.top
        degrees = self.degrees
        dim = self.dimension
        for i, x in a._c.items():
            want = dim - degrees[i]
            for j in range(len(self.basis)):
                if degrees[j] != want:
                    continue
                for k, c in self.product_terms(i, j):
                    if k == top:
                        w[j] = w.get(j, 0) + x * c
        return {j: c for j, c in w.items() if c}

    def pair(self, a: "TruncatedPolynomial", b: "TruncatedPolynomial") -> Rational:
        """Top-degree coefficient of ``a * b``, i.e. the integral of the product."""
        total = 0
        top = self.top
        degrees = self.degrees
        dim = self.dimension
        table = self._table
        for i, x in a._c.items():
            want = dim - degrees[i]
            for j, y in b._c.items():
                if degrees[j] != want:
                    continue
                key = (i, j) if i <= j else (j, i)
                terms = table.get(key)
                if terms is None:
                    terms = self.product_terms(i, j)
                for k, c in terms:
                    if k == top:
                        total += x * y * c
        return total


@functools.lru_cache(maxsize=4096)
def graded_ring(dims=(), levels=()) -> GradedRing:
    """Shared ring instance for the given presentation."""
    return GradedRing(tuple(dims), tuple(tuple(as_rational(c) for c in lv) for lv in levels))


class TruncatedPolynomial:
    """Immutable sparse element of a :class:`GradedRing`."""

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, ring: GradedRing, coeffs: dict[int, Rational]):
        self.ring = ring
        self._c = coeffs
        self._hash = None

    # -- inspection ------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Rational]:
        basis = self.ring.basis
        return {basis[i]: c for i, c in sorted(self._c.items())}

    def coefficient(self, exps) -> Rational:
        idx = self.ring.index.get(tuple(exps))
        return 0 if idx is None else self._c.get(idx, 0)

    def degree_part(self, k: int) -> "TruncatedPolynomial":
        deg = self.ring.degrees
        return TruncatedPolynomial(self.ring, {i: c for i, c in self._c.items() if deg[i] == k})

    def degrees(self) -> set[int]:
        return {self.ring.degrees[i] for i in self._c}

    def is_homogeneous(self, k: int | None = None) -> bool:
        d = self.degrees()
        if k is None:
            return len(d) <= 1
        return d <= {k}

    def linear_coefficients(self) -> tuple[Rational, ...]:
        """Coefficients on the generators of a degree-1 (or zero) element."""
        if not self.is_homogeneous(1):
            raise ValueError(f"{self} is not a degree-1 class")
        out = [0] * self.ring.ngens
        for i, c in self._c.items():
            out[self.ring.basis[i].index(1)] = c
        return tuple(out)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, TruncatedPolynomial):
            return self.ring == other.ring and self._c == other._c
        try:
            other = as_rational(other)
        except TypeError:
            return NotImplemented
        return self._c == ({0: other} if other else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"TruncatedPolynomial({self})"

    def __str__(self):
        if not self._c:
            return "0"
        k = self.ring.nbase
        names = [f"h{i + 1}" if self.ring.nbase > 1 else "h" for i in range(k)]
        names += [f"xi{j + 1}" if self.ring.nlevels > 1 else "xi" for j in range(self.ring.nlevels)]
        words = []
        for exps, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(n + (f"^{e}" if e > 1 else "") for n, e in zip(names, exps) if e)
            if not mono:
                words.append(format_rational(c))
            elif c == 1:
                words.append(mono)
            elif c == -1:
                words.append("-" + mono)
            else:
                words.append(f"{format_rational(c)}*{mono}")
        return " + ".join(words).replace("+ -", "- ")

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "TruncatedPolynomial":
        if isinstance(other, TruncatedPolynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._c)
        for i, c in other._c.items():
            s = acc.get(i, 0) + c
            if s:
                acc[i] = s
            else:
                acc.pop(i, None)
        return TruncatedPolynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPolynomial(self.ring, {i: -c for i, c in self._c.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedPolynomial):
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            return scalar_mul(self, c)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        return power(self, k)


def add(a: TruncatedPolynomial, b) -> TruncatedPolynomial:
    return a + b


def negate(a: TruncatedPolynomial) -> TruncatedPolynomial:
    return -a


def scalar_mul(a: TruncatedPolynomial, c) -> TruncatedPolynomial:
    c = as_rational(c)
    if not c:
        return a.ring.zero()
    return TruncatedPolynomial(a.ring, {i: c * x for i, x in a._c.items()})


def mul(a: TruncatedPolynomial, b: TruncatedPolynomial) -> TruncatedPolynomial:
    """Product, fully reduced by the truncation and Grothendieck relations."""
    if b.ring is not a.ring:
        b = a._coerce(b)
    ring = a.ring
    table = ring._table
    acc = {}
    get = acc.get
    for i, x in a._c.items():
        for j, y in b._c.items():
            terms = table.get((i, j) if i <= j else (j, i))
            if terms is None:
                terms = ring.product_terms(i, j)
            for k, c in terms:
                acc[k] = get(k, 0) + x * y * c
    return TruncatedPolynomial(ring, {k: c for k, c in acc.items() if c})


def power(a: TruncatedPolynomial, k: int) -> TruncatedPolynomial:
    if k < 0:
        raise ValueError("negative powers are not defined")
    result = a.ring.one()
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def pushdown(a: TruncatedPolynomial) -> TruncatedPolynomial:
    """Integrate over the fibre of the top P^1-bundle: ``x + y*xi  |->  y``."""
    ring = a.ring
    if not ring.nlevels:
        raise ValueError("pushdown needs a ring with at least one bundle level")
    base = ring.base_ring
    out = {}
    for i, c in a._c.items():
        exps = ring.basis[i]
        if exps[-1]:
            out[base.index[exps[:-1]]] = c
    return TruncatedPolynomial(base, out)


def integrate(a: TruncatedPolynomial) -> Rational:
    """Degree of the top-dimensional part of ``a``."""
    while a.ring.nlevels:
        a = pushdown(a)
    return a._c.get(a.ring.top, 0)


def substitute(a: TruncatedPolynomial, images, target: GradedRing) -> TruncatedPolynomial:
    """Evaluate ``a`` with generator ``g`` replaced by ``images[g]`` in ``target``.

    This is a ring homomorphism only when the images satisfy the relations of
    ``a.ring``; the caller is responsible for that.
    """
    images = [target.constant(0) + im for im in images]
    if len(images) != a.ring.ngens:
        raise ValueError(f"need {a.ring.ngens} images, got {len(images)}")
    out = target.zero()
    for exps, c in a.terms.items():
        term = target.constant(c)
        for im, e in zip(images, exps):
            if e:
                term = term * power(im, e)
        out = out + term
    return out


def embed(a: TruncatedPolynomial, positions, target: GradedRing) -> TruncatedPolynomial:
    """Re-index ``a`` into ``target``: generator ``g`` becomes ``positions[g]``.

    Valid when ``target`` carries the same truncation on the image
    generators, as for factor inclusions of products.
    """
    out = {}
    for i, c in a._c.items():
        e = [0] * target.ngens
        for g, x in zip(positions, a.ring.basis[i]):
            e[g] = x
        out[target.index[tuple(e)]] = c
    return TruncatedPolynomial(target, out)
