"""Coordinates of classes in the basis phi(lam, mu), and external products."""
from __future__ import annotations

from .geometry import (
    ChernVector,
    ClassSpec,
    GeneratorSpec,
    SpaceTower,
    chern_vector,
    generator_chern_vector,
    phi,
    projective_space_with_hyperplane,
)
from .linalg import ExactSolver, SingularMatrixError
from .pairing import MatrixCache, PairingMatrix, build_matrix
from .partitions import PartitionPair
from .ring import Rational, embed, format_rational, graded_ring


class SingularPairingError(RuntimeError):
    """M_{n,r} failed to factor.  The matrix is provably nonsingular, so this is a bug."""


class ReconstructionError(RuntimeError):
    """A computed decomposition does not reproduce the input Chern vector."""


_solvers: dict[tuple[int, int, int], ExactSolver] = {}


def _solver(m: PairingMatrix) -> ExactSolver:
    key = (m.n, m.r, hash(m.rows))
    s = _solvers.get(key)
    if s is None:
        cols = [list(col) for col in zip(*m.rows)] if m.rows else []
        try:
            s = ExactSolver(cols)
        except SingularMatrixError as exc:
            raise SingularPairingError(
                f"pairing matrix M_{{{m.n},{m.r}}} is singular; this indicates a bug") from exc
        _solvers[key] = s
    return s


def decompose(target, n: int | None = None, r: int | None = None,
              matrix: PairingMatrix | None = None,
              cache: MatrixCache | None = None) -> dict[PartitionPair, Rational]:
    """Coefficients ``x`` with ``sum x[p] * chern_vector(phi(p)) == chern_vector(target)``.

    ``target`` is a ClassSpec, a GeneratorSpec or a ChernVector.  The system
    ``M^T x = target`` is solved exactly; zero coefficients are omitted.
    """
    if isinstance(target, ChernVector):
        cv = target
        if (n is not None and n != cv.n) or (r is not None and r != cv.r):
            raise ValueError(f"Chern vector lives in C_{{{cv.n},{cv.r}}}, not C_{{{n},{r}}}")
    else:
        cv = chern_vector(target, n, r)
    m = matrix if matrix is not None else build_matrix(cv.n, cv.r, cache=cache)
    if (m.n, m.r) != (cv.n, cv.r):
        raise ValueError("matrix does not match the target's dimension and rank")
    x = _solver(m).solve(cv.values)
    return {pair: c for pair, c in zip(m.generators, x) if c}


def reconstruct(coeffs: dict[PartitionPair, Rational], n: int, r: int) -> ChernVector:
    out = ChernVector.zero(n, r)
    for pair, c in coeffs.items():
        out = out + c * generator_chern_vector(phi(pair, r))
    return out


def external_product(g1: GeneratorSpec, g2: GeneratorSpec) -> GeneratorSpec:
    """``[Y1 x Y2, p1^* E1 (x) p2^* E2]`` for split bundles: roots add pairwise."""
    s1, s2 = g1.space, g2.space
    if s1.multiplier is not None or s2.multiplier is not None:
        raise ValueError("external products are only defined here for unrestricted towers")
    k1, k2 = len(s1.dims), len(s2.dims)
    L1 = len(s1.levels)
    levels = []
    for lv in s1.levels:
        levels.append(tuple(lv[:k1]) + (0,) * k2 + tuple(lv[k1:]))
    for lv in s2.levels:
        levels.append((0,) * k1 + tuple(lv[:k2]) + (0,) * L1 + tuple(lv[k2:]))
    space = SpaceTower(s1.dims + s2.dims, tuple(levels))
    ring = space.ring
    pos1 = list(range(k1)) + [k1 + k2 + j for j in range(L1)]
    pos2 = [k1 + i for i in range(k2)] + [k1 + k2 + L1 + j for j in range(len(s2.levels))]
    a = [embed(l, pos1, ring) for l in g1.lines]
    b = [embed(l, pos2, ring) for l in g2.lines]
    return GeneratorSpec(space, tuple(x + y for x in a for y in b))


def point(rank: int = 1) -> GeneratorSpec:
    """``[P^0, O^rank]``, the unit for external products when ``rank == 1``."""
    return GeneratorSpec(SpaceTower(), (graded_ring().zero(),) * rank)


def question(a: int, b: int, cache: MatrixCache | None = None) -> dict[PartitionPair, Rational]:
    """Decomposition of ``[P^a x P^b, O(1,1)]`` in the basis of omega_{a+b,1}."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    g = external_product(projective_space_with_hyperplane(a), projective_space_with_hyperplane(b))
    coeffs = decompose(ClassSpec.of(g), a + b, 1, cache=cache)
    if reconstruct(coeffs, a + b, 1) != generator_chern_vector(g):
        raise ReconstructionError(f"decomposition of [P{a}xP{b}, O(1,1)] does not reconstruct")
    return coeffs


def format_decomposition(coeffs: dict[PartitionPair, Rational], r: int) -> str:
    """Signed sum such as ``-2*[P2, O] + 2*[P2, O(1)]``."""
    if not coeffs:
        return "0"
    words = []
    for pair, c in coeffs.items():
        name = phi(pair, r).name()
        if c == 1:
            words.append(f"+ {name}")
        elif c == -1:
            words.append(f"- {name}")
        elif c < 0:
            words.append(f"- {format_rational(-c)}*{name}")
        else:
            words.append(f"+ {format_rational(c)}*{name}")
    text = " ".join(words)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
