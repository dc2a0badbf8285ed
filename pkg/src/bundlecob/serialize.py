"""JSON forms of generators, classes and Chern vectors.

Rationals are always strings ("3", "-1/2"); integers are accepted on input.
Degree-1 classes are arrays of coefficients on ``h_1..h_k, xi_1..xi_j``.
"""
from __future__ import annotations

import json

from .geometry import ChernVector, ClassSpec, GeneratorSpec, SpaceTower, phi
from .partitions import MonomialIndex
from .ring import as_rational, format_rational


class SpecError(ValueError):
    """Malformed JSON input; the message names the offending field or line."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


# -- writers ---------------------------------------------------------------

def _linear(a) -> list[str]:
    return [format_rational(c) for c in a.linear_coefficients()]


def generator_to_json(g: GeneratorSpec) -> dict:
    s = g.space
    if s.multiplier is None:
        mult = None
    elif s.multiplier.is_homogeneous(0):
        mult = format_rational(s.multiplier.coefficient((0,) * s.ring.ngens))
    else:
        mult = _linear(s.multiplier)
    return {
        "base": list(s.dims),
        "levels": [[format_rational(c) for c in lv] for lv in s.levels],
        "multiplier": mult,
        "lines": [_linear(l) for l in g.lines],
    }


def class_to_json(c: ClassSpec, n: int | None = None, r: int | None = None) -> dict:
    return {
        "n": c.dimension if c.terms else n,
        "r": c.rank if c.terms else r,
        "terms": [{"coeff": format_rational(x), "generator": generator_to_json(g)} for x, g in c],
    }


def chern_vector_to_json(cv: ChernVector) -> dict:
    return {
        "n": cv.n,
        "r": cv.r,
        "order": [q.to_json() for q in cv.order],
        "names": [q.name() for q in cv.order],
        "values": [format_rational(x) for x in cv.values],
    }


# -- readers ---------------------------------------------------------------

def _rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecError(where, f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return as_rational(x)
    except (ValueError, ZeroDivisionError):
        raise SpecError(where, f"not a rational number: {x!r}") from None


def _int(x, where, minimum=0):
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise SpecError(where, f"expected an integer >= {minimum}, got {x!r}")
    return x


def _list(x, where):
    if not isinstance(x, list):
        raise SpecError(where, f"expected an array, got {type(x).__name__}")
    return x


def _field(obj, key, where, default=...):
    if not isinstance(obj, dict):
        raise SpecError(where, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        if default is ...:
            raise SpecError(where, f"missing field {key!r}")
        return default
    return obj[key]


def _coeffs(x, length, where):
    if x == 0 and not isinstance(x, bool):
        return (0,) * length
    items = _list(x, where)
    if len(items) > length:
        raise SpecError(where, f"expected at most {length} coefficients, got {len(items)}")
    vals = tuple(_rational(c, f"{where}[{i}]") for i, c in enumerate(items))
    return vals + (0,) * (length - len(vals))


def generator_from_json(obj, where: str = "generator") -> GeneratorSpec:
    base = _list(_field(obj, "base", where), f"{where}.base")
    dims = tuple(_int(d, f"{where}.base[{i}]", 1) for i, d in enumerate(base))
    if list(dims) != sorted(dims, reverse=True):
        raise SpecError(f"{where}.base", "parts must be weakly decreasing")
    levels = []
    for j, lv in enumerate(_list(_field(obj, "levels", where, []), f"{where}.levels")):
        levels.append(_coeffs(lv, len(dims) + j, f"{where}.levels[{j}]"))
    try:
        space = SpaceTower(dims, tuple(levels))
        ring = space.ring
        mult = _field(obj, "multiplier", where, None)
        if mult is not None:
            mw = f"{where}.multiplier"
            if isinstance(mult, list):
                z = ring.linear(_coeffs(mult, ring.ngens, mw))
            else:
                z = ring.constant(_rational(mult, mw))
            try:
                space = SpaceTower(dims, tuple(levels), z)
            except ValueError as exc:
                raise SpecError(mw, str(exc)) from None
        lines = tuple(
            ring.linear(_coeffs(l, ring.ngens, f"{where}.lines[{i}]"))
            for i, l in enumerate(_list(_field(obj, "lines", where), f"{where}.lines")))
        return GeneratorSpec(space, lines)
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(where, str(exc)) from None


def class_from_json(obj, where: str = "class") -> ClassSpec:
    """A ClassSpec object, or a bare generator object read as ``1 * generator``.

    Declared ``n``/``r`` are checked against every term before anything is computed.
    """
    if isinstance(obj, dict) and "terms" not in obj and "base" in obj:
        return ClassSpec.of(generator_from_json(obj, where))
    terms = []
    for k, t in enumerate(_list(_field(obj, "terms", where), f"{where}.terms")):
        tw = f"{where}.terms[{k}]"
        coeff = _rational(_field(t, "coeff", tw, 1), f"{tw}.coeff")
        g = generator_from_json(_field(t, "generator", tw), f"{tw}.generator")
        terms.append((coeff, g))
    n = _field(obj, "n", where, None)
    r = _field(obj, "r", where, None)
    for key, want, attr in (("n", n, "dimension"), ("r", r, "rank")):
        if want is None:
            continue
        _int(want, f"{where}.{key}")
        for k, (_, g) in enumerate(terms):
            if getattr(g, attr) != want:
                raise SpecError(f"{where}.terms[{k}].generator",
                                f"{attr} {getattr(g, attr)} does not match declared {key} = {want}")
    try:
        return ClassSpec(tuple(terms))
    except ValueError as exc:
        raise SpecError(f"{where}.terms", str(exc)) from None


def class_dims(obj, c: ClassSpec) -> tuple[int | None, int | None]:
    """``(n, r)`` of a parsed class, falling back to the declared fields when it is empty."""
    if c.terms:
        return c.dimension, c.rank
    if isinstance(obj, dict):
        return obj.get("n"), obj.get("r")
    return None, None


def chern_vector_from_json(obj, where: str = "chern_vector") -> ChernVector:
    n = _int(_field(obj, "n", where), f"{where}.n")
    r = _int(_field(obj, "r", where), f"{where}.r")
    values = [_rational(x, f"{where}.values[{i}]")
              for i, x in enumerate(_list(_field(obj, "values", where), f"{where}.values"))]
    order = _field(obj, "order", where, None)
    if order is not None:
        got = tuple(MonomialIndex.from_json(q) for q in _list(order, f"{where}.order"))
        cv = ChernVector.zero(n, r)
        if got != cv.order:
            raise SpecError(f"{where}.order", "monomials are not in the canonical order of Q_{n,r}")
    try:
        return ChernVector(n, r, tuple(values))
    except ValueError as exc:
        raise SpecError(f"{where}.values", str(exc)) from None


def coefficients_to_json(coeffs, r: int) -> list[dict]:
    """A decomposition as an ordered list of ``{lambda, mu, name, coeff}`` records."""
    return [{"lambda": list(p.lam), "mu": list(p.mu), "name": phi(p, r).name(),
             "coeff": format_rational(c)} for p, c in coeffs.items()]


def polynomial_to_json(a) -> list[dict]:
    return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in a.terms.items()]


def polynomial_from_json(obj, ring, where: str = "polynomial"):
    terms = {}
    for k, t in enumerate(_list(obj, where)):
        tw = f"{where}[{k}]"
        exps = tuple(_int(e, f"{tw}.exponents[{i}]")
                     for i, e in enumerate(_list(_field(t, "exponents", tw), f"{tw}.exponents")))
        if len(exps) != ring.ngens:
            raise SpecError(f"{tw}.exponents", f"expected {ring.ngens} exponents, got {len(exps)}")
        c = _rational(_field(t, "coeff", tw), f"{tw}.coeff")
        terms[exps] = terms.get(exps, 0) + c
    try:
        return ring.from_terms(terms)
    except ValueError as exc:
        raise SpecError(where, str(exc)) from None


__all__ = [
    "SpecError", "dumps", "loads", "generator_to_json", "class_to_json",
    "chern_vector_to_json", "generator_from_json", "class_from_json", "class_dims",
    "chern_vector_from_json", "coefficients_to_json", "polynomial_to_json", "polynomial_from_json",
]
