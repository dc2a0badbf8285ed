"""Explicit double point relations and their Chern-number vanishing check.

Conventions, fixed once: on ``P(O + N) -> Z`` the class ``xi = c_1(O(1))``
satisfies ``xi^2 = -c_1(N) xi`` and integrates to 1 on a fibre.  Twisting a
line bundle by ``O(+-1)`` adds ``+-xi`` to its first Chern class.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .geometry import ClassSpec, GeneratorSpec, SpaceTower, chern_vector
from .partitions import enumerate_partitions
from .ring import TruncatedPolynomial, format_rational

FAMILIES = ("pb", "pb-first", "nc")


def _as_class(ring, c) -> TruncatedPolynomial:
    if isinstance(c, TruncatedPolynomial):
        if c.ring != ring:
            raise ValueError(f"class {c} does not live on the base P^lambda")
        if not c.is_homogeneous(1):
            raise ValueError(f"expected a degree-1 class, got {c}")
        return c
    if c == 0:
        return ring.zero()
    coeffs = tuple(c)
    if len(coeffs) != ring.ngens:
        raise ValueError(f"expected {ring.ngens} coefficients, got {len(coeffs)}")
    return ring.linear(coeffs)


def _setup(lam, nclass, lines):
    base = SpaceTower.projective(lam)
    n = _as_class(base.ring, nclass)
    ls = [_as_class(base.ring, l) for l in lines]
    return base, n, ls


def projective_bundle_relation(lam, nclass, lines) -> ClassSpec:
    """``[P(B), L(-1)] - [P(B), L+N] + [P(B), L+N(1)] - [P(B), L]`` with ``B = O + N``."""
    base, n, ls = _setup(lam, nclass, lines)
    tower = base.with_level(n)
    ring = tower.ring
    xi = ring.xi()
    n = ring.pullback(n)
    ls = [ring.pullback(l) for l in ls]

    def gen(shift):
        return GeneratorSpec(tower, tuple(l + shift for l in ls))

    return ClassSpec((
        (1, gen(-xi)),
        (-1, gen(n)),
        (1, gen(n + xi)),
        (-1, gen(ring.zero())),
    ))


def first_bundle_relation(lam, nclass, lines) -> ClassSpec:
    """``[P(B), L] - [P(B), L(1)] - [P(O + N*), L(-1)] + [P(B), L - N]``."""
    base, n, ls = _setup(lam, nclass, lines)
    tower = base.with_level(n)
    dual = base.with_level(-n)
    ring, dring = tower.ring, dual.ring
    xi, dxi = ring.xi(), dring.xi()
    up = [ring.pullback(l) for l in ls]
    dup = [dring.pullback(l) for l in ls]
    n = ring.pullback(n)
    return ClassSpec((
        (1, GeneratorSpec(tower, tuple(up))),
        (-1, GeneratorSpec(tower, tuple(l + xi for l in up))),
        (-1, GeneratorSpec(dual, tuple(l - dxi for l in dup))),
        (1, GeneratorSpec(tower, tuple(l - n for l in up))),
    ))


def normal_cone_relation(lam, zclass, lines) -> ClassSpec:
    """Degeneration of ``Y = P^lam`` to the normal cone of a divisor ``Z``.

    ``[Y, L] - [Y, L(Z)] - [P(O_Z + O_Z(Z)), L(-1)] + [P(O_Z + O_Z(Z)), L(Z)]``,
    with the bundle over ``Z`` realised inside ``P(O + O(Z)) -> Y`` cut by ``[Z]``.
    """
    base, z, ls = _setup(lam, zclass, lines)
    if not z:
        raise ValueError("the hypersurface class must be non-zero")
    cone = base.with_level(z)
    ring = cone.ring
    restricted = cone.restrict(ring.pullback(z))
    xi = ring.xi()
    zz = ring.pullback(z)
    up = [ring.pullback(l) for l in ls]
    return ClassSpec((
        (1, GeneratorSpec(base, tuple(ls))),
        (-1, GeneratorSpec(base, tuple(l + z for l in ls))),
        (-1, GeneratorSpec(restricted, tuple(l - xi for l in up))),
        (1, GeneratorSpec(restricted, tuple(l + zz for l in up))),
    ))


@dataclass
class VanishingReport:
    ok: bool
    nonzero: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "nonzero": self.nonzero}


def verify_vanishing(c: ClassSpec, n: int | None = None, r: int | None = None) -> VanishingReport:
    """Passes iff every Chern invariant of ``c`` is zero."""
    if not c.terms and (n is None or r is None):
        return VanishingReport(True)
    cv = chern_vector(c, n, r)
    bad = [{"monomial": q.name(), "value": format_rational(x)}
           for q, x in zip(cv.order, cv.values) if x]
    return VanishingReport(not bad, bad)


# -- parameter sweeps ------------------------------------------------------

def _vectors(length: int, values):
    return itertools.product(values, repeat=length)


def _line_lists(length: int, max_lines: int, values):
    for r in range(max_lines + 1):
        yield from itertools.product(list(_vectors(length, values)), repeat=r)


def _bases(family: str, max_dim: int):
    sizes = range(1, max_dim + 1) if family == "nc" else range(0, max_dim)
    for size in sizes:
        yield from enumerate_partitions(size)


def _cases_over(family: str, lam, n_values, line_values, max_lines, degrees):
    if family == "nc":
        for i in range(len(lam)):
            for d in degrees:
                z = tuple(d if k == i else 0 for k in range(len(lam)))
                for lines in _line_lists(len(lam), max_lines, line_values):
                    params = {"lambda": list(lam), "zclass": list(z),
                              "lines": [list(l) for l in lines]}
                    yield params, normal_cone_relation(lam, z, lines)
        return
    build = projective_bundle_relation if family == "pb" else first_bundle_relation
    for nvec in _vectors(len(lam), n_values):
        for lines in _line_lists(len(lam), max_lines, line_values):
            params = {"lambda": list(lam), "nclass": list(nvec),
                      "lines": [list(l) for l in lines]}
            yield params, build(lam, nvec, lines)


def relation_cases(family: str, max_dim: int, n_values=range(-2, 3), line_values=(-1, 0, 1),
                   max_lines: int = 2, degrees=(1, 2, 3)):
    """Yield ``(parameters, ClassSpec)`` for one family up to total dimension ``max_dim``.

    For ``pb``/``pb-first`` the relations live in dimension ``|lam| + 1`` and
    ``c_1(N)`` runs over all coefficient vectors in ``n_values``; for ``nc``
    the dimension is ``|lam|`` and ``Z`` has class ``d * h_i`` on one factor.
    Lines run over every ordered list of at most ``max_lines`` classes with
    coefficients in ``line_values``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    for lam in _bases(family, max_dim):
        yield from _cases_over(family, lam, n_values, line_values, max_lines, degrees)


def _run_base(args):
    family, lam, sweep = args
    cases = passes = 0
    failures = []
    for params, c in _cases_over(family, lam, **sweep):
        cases += 1
        report = verify_vanishing(c)
        if report.ok:
            passes += 1
        else:
            failures.append({"parameters": params, "nonzero": report.nonzero})
    return cases, passes, failures


def run_family(family: str, max_dim: int, workers: int = 1, n_values=range(-2, 3),
               line_values=(-1, 0, 1), max_lines: int = 2, degrees=(1, 2, 3)) -> dict:
    """Check every relation of a family; returns ``{family, cases, passes, failures}``.

    With ``workers > 1`` the bases ``P^lam`` are spread over processes; the
    report is assembled in base order, so it does not depend on ``workers``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    sweep = {"n_values": tuple(n_values), "line_values": tuple(line_values),
             "max_lines": max_lines, "degrees": tuple(degrees)}
    jobs = [(family, lam, sweep) for lam in _bases(family, max_dim)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_base, jobs))
    else:
        parts = [_run_base(job) for job in jobs]
    failures = [f for _, _, fs in parts for f in fs]
    return {"family": family, "max_dim": max_dim,
            "cases": sum(p[0] for p in parts), "passes": sum(p[1] for p in parts),
            "failures": failures}
