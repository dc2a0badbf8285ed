"""The pairing matrix M_{n,r} between basis generators and Chern monomials.

Row ``q`` holds the Chern vector of ``phi(epsilon(q))``; column ``q'`` is
the monomial ``C(q')``.  Rows and columns follow the canonical order of
Q_{n,r}, which makes the matrix block lower triangular with blocks indexed
by ``mu``.
"""
from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import linalg
from .geometry import generator_chern_vector, phi
from .partitions import (
    MonomialIndex,
    PartitionPair,
    block_key,
    enumerate_monomials,
    enumerate_pairs,
    enumerate_partitions,
    epsilon,
    partition_count,
)
from .ring import Rational, as_rational, format_rational

CACHE_ENV = "BUNDLECOB_CACHE_DIR"


@dataclass(frozen=True)
class PairingMatrix:
    n: int
    r: int
    index: tuple[MonomialIndex, ...]
    rows: tuple[tuple[Rational, ...], ...]

    def __post_init__(self):
        size = len(self.index)
        if len(self.rows) != size or any(len(row) != size for row in self.rows):
            raise ValueError(f"pairing matrix must be {size}x{size}")
        if any(q.degree != self.n for q in self.index):
            raise ValueError(f"index of M_{{{self.n},{self.r}}} has monomials of the wrong degree")

    @property
    def size(self) -> int:
        return len(self.index)

    @property
    def generators(self) -> tuple[PartitionPair, ...]:
        """Partition pairs labelling the rows."""
        return tuple(epsilon(q) for q in self.index)

    def entry(self, row: MonomialIndex, col: MonomialIndex) -> Rational:
        return self.rows[self.index.index(row)][self.index.index(col)]

    def block_positions(self) -> dict[tuple, list[int]]:
        blocks = {}
        for k, q in enumerate(self.index):
            blocks.setdefault(tuple(q.mu), []).append(k)
        return blocks

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "index": [q.to_json() for q in self.index],
            "rows": [[format_rational(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, obj) -> "PairingMatrix":
        return cls(
            int(obj["n"]), int(obj["r"]),
            tuple(MonomialIndex.from_json(q) for q in obj["index"]),
            tuple(tuple(as_rational(x) for x in row) for row in obj["rows"]),
        )


def _row(args):
    q, r = args
    return generator_chern_vector(phi(epsilon(q), r)).values


def compute_matrix(n: int, r: int, workers: int = 1) -> PairingMatrix:
    """Build M_{n,r} from scratch, optionally spreading rows over processes."""
    index = enumerate_monomials(n, r)
    jobs = [(q, r) for q in index]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_row(job) for job in jobs]
    return PairingMatrix(n, r, index, tuple(tuple(row) for row in rows))


class MatrixCache:
    """On-disk JSON cache of pairing matrices, one file per ``(n, r)``."""

    def __init__(self, directory=None):
        if directory is None:
            directory = os.environ.get(CACHE_ENV) or ".bundlecob-cache"
        self.directory = Path(directory)

    def path(self, n: int, r: int) -> Path:
        return self.directory / f"pairing_n{n}_r{r}.json"

    def load(self, n: int, r: int) -> PairingMatrix | None:
        p = self.path(n, r)
        if not p.exists():
            return None
        try:
            m = PairingMatrix.from_json(json.loads(p.read_text()))
        except (ValueError, KeyError, TypeError):
            return None
        if (m.n, m.r) != (n, r) or m.index != enumerate_monomials(n, r):
            return None
        return m

    def store(self, m: PairingMatrix) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        target = self.path(m.n, m.r)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=target.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(m.to_json(), fh, separators=(",", ":"))
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return target


_memo: dict[tuple[int, int], PairingMatrix] = {}


def build_matrix(n: int, r: int, cache: MatrixCache | None = None, workers: int = 1) -> PairingMatrix:
    """M_{n,r}, reusing the in-process memo and, if given, the disk cache."""
    if n < 0 or r < 0:
        raise ValueError("n and r must be non-negative")
    m = _memo.get((n, r))
    if m is None and cache is not None:
        m = cache.load(n, r)
    if m is None:
        m = compute_matrix(n, r, workers)
    if cache is not None and not cache.path(n, r).exists():
        cache.store(m)
    _memo[(n, r)] = m
    return m


# -- verification ----------------------------------------------------------

@dataclass
class Report:
    ok: bool
    checked: int = 0
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "violations": self.violations}


def verify_block_triangular(m: PairingMatrix) -> Report:
    """Every entry above the block diagonal (row block < column block) must vanish."""
    keys = [block_key(q, m.r) for q in m.index]
    violations = []
    checked = 0
    for i, row in enumerate(m.rows):
        for j, x in enumerate(row):
            if keys[i] < keys[j]:
                checked += 1
                if x != 0:
                    violations.append({
                        "row": m.index[i].name(), "column": m.index[j].name(),
                        "row_position": i, "column_position": j, "value": format_rational(x),
                    })
    return Report(not violations, checked, violations)


def verify_diagonal_blocks(m: PairingMatrix) -> Report:
    """The ``mu`` diagonal block must equal M_{n-|mu|,0} entrywise."""
    violations = []
    checked = 0
    for mu, pos in m.block_positions().items():
        ref = build_matrix(m.n - sum(mu), 0)
        nus = [tuple(m.index[k].nu) for k in pos]
        if nus != [tuple(q.nu) for q in ref.index]:
            violations.append({"mu": list(mu), "reason": "block index does not match M_{n-|mu|,0}"})
            continue
        for a, i in enumerate(pos):
            for b, j in enumerate(pos):
                checked += 1
                if m.rows[i][j] != ref.rows[a][b]:
                    violations.append({
                        "mu": list(mu), "row": m.index[i].name(), "column": m.index[j].name(),
                        "value": format_rational(m.rows[i][j]),
                        "expected": format_rational(ref.rows[a][b]),
                    })
    return Report(not violations, checked, violations)


def determinant(m: PairingMatrix) -> Rational:
    return linalg.determinant(m.rows)


def chern_dimension(n: int, r: int) -> int:
    """Number of degree-n monomials in ``u_1..u_n`` (degree i) and ``v_1..v_r`` (degree j).

    Counted as a coefficient of prod 1/(1 - t^i) * prod 1/(1 - t^j), which
    does not go through Q_{n,r} at all.
    """
    ways = [1] + [0] * n
    for weight in list(range(1, n + 1)) + list(range(1, r + 1)):
        for k in range(weight, n + 1):
            ways[k] += ways[k - weight]
    return ways[n]


def rank_sum(n: int, r: int) -> int:
    """``sum over lam with l(lam) <= r, |lam| <= n of p(n - |lam|)``."""
    total = 0
    for k in range(n + 1):
        short = sum(1 for lam in enumerate_partitions(k) if len(lam) <= r)
        total += short * partition_count(n - k)
    return total


def dimension_counts(n: int, r: int) -> dict[str, int]:
    return {
        "pairs": len(enumerate_pairs(n, r)),
        "monomials": len(enumerate_monomials(n, r)),
        "chern_dim": chern_dimension(n, r),
        "rank_sum": rank_sum(n, r),
    }


def dimension_identity(n: int, r: int) -> bool:
    return len(set(dimension_counts(n, r).values())) == 1


def verification_report(m: PairingMatrix) -> dict:
    tri = verify_block_triangular(m)
    diag = verify_diagonal_blocks(m)
    det = determinant(m)
    ident = dimension_identity(m.n, m.r)
    return {
        "block_triangular": tri.to_json(),
        "diagonal_blocks": diag.to_json(),
        "determinant": format_rational(det),
        "nonsingular": det != 0,
        "dimension_identity": ident,
        "counts": dimension_counts(m.n, m.r),
        "ok": tri.ok and diag.ok and det != 0 and ident,
    }
