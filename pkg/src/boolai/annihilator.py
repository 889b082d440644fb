"""Annihilators and exact algebraic immunity via GF(2) linear algebra.

An annihilator of degree <= d of a function with support S is a nonzero
vector in the kernel of the evaluation matrix whose rows are the points of S
and whose columns are the monomials of degree <= d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .core import AnfPolynomial, BooleanFunction, degree, moebius

F_SIDE = "f"
COMPLEMENT_SIDE = "1+f"

# work unit = rows * columns of an elimination; 2**15 x 2**12
DEFAULT_MAX_WORK = 1 << 27


class CostLimitError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _monomial_basis(n: int, d: int) -> tuple:
    out = []
    for k in range(d + 1):
        level = sorted(sum(1 << i for i in c) for c in combinations(range(n), k))
        out.extend(level)
    return tuple(out)


def monomial_basis(n: int, d: int) -> list[int]:
    """Monomial masks of degree <= d, ordered by (degree, mask value)."""
    if not 0 <= d <= n:
        raise ValueError(f"degree {d} out of range 0..{n}")
    return list(_monomial_basis(n, d))


def basis_size(n: int, d: int) -> int:
    return sum(comb(n, i) for i in range(d + 1))


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix with bit-packed rows (column j is bit j of a row)."""

    rows: int
    cols: int
    packed: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_dense(cls, dense) -> "Gf2Matrix":
        a = np.asarray(dense, dtype=bool)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(a.shape[0], a.shape[1], np.packbits(a, axis=1, bitorder="little"))

    @classmethod
    def from_row_ints(cls, rows: Sequence[int], cols: int) -> "Gf2Matrix":
        nbytes = max(1, (cols + 7) // 8)
        buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
        return cls(len(rows), cols, packed.copy())

    def dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=bool)
        bits = np.unpackbits(self.packed, axis=1, bitorder="little")
        return bits[:, : self.cols].astype(bool)

    def row_ints(self) -> list[int]:
        return [int.from_bytes(r.tobytes(), "little") for r in self.packed]

    def column_ints(self) -> list[int]:
        """Each column as an int whose bit i is entry (i, column)."""
        return _pack_rows(self.dense().T)

    def mul_vector(self, v: int) -> int:
        """M @ v over GF(2), as an int over row indices."""
        out = 0
        for i, r in enumerate(self.row_ints()):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out


def _pack_rows(a: np.ndarray) -> list[int]:
    if a.shape[1] == 0:
        return [0] * a.shape[0]
    packed = np.packbits(a, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def _eval_columns(points: np.ndarray, monomials: Sequence[int]) -> list[int]:
    """Column ints of the evaluation matrix: bit k set iff monomial divides point k."""
    if len(points) == 0:
        return [0] * len(monomials)
    if len(points) <= 64:
        pts = [int(p) for p in points]
        cols = []
        for u in monomials:
            c = 0
            for k, p in enumerate(pts):
                if p & u == u:
                    c |= 1 << k
            cols.append(c)
        return cols
    out: list[int] = []
    m = np.asarray(monomials, dtype=np.int64)
    chunk = max(1, (1 << 24) // len(points))
    for s in range(0, len(m), chunk):
        mm = m[s : s + chunk, None]
        out.extend(_pack_rows((points[None, :] & mm) == mm))
    return out


def evaluation_matrix(points, monomials: Sequence[int]) -> Gf2Matrix:
    pts = np.asarray(points, dtype=np.int64).reshape(-1)
    m = np.asarray(monomials, dtype=np.int64)
    if len(pts) == 0:
        return Gf2Matrix(0, len(m), np.zeros((0, max(1, (len(m) + 7) // 8)), dtype=np.uint8))
    dense = (pts[:, None] & m[None, :]) == m[None, :]
    return Gf2Matrix.from_dense(dense)


class _ColumnEliminator:
    """Incremental column elimination, lowest-index pivot first.

    Columns live in the low ``nrows`` bits; bit ``nrows + j`` tags column j so a
    column that reduces to zero yields the kernel vector that produced it.
    """

    def __init__(self, nrows: int):
        self.nrows = nrows
        self.low = (1 << nrows) - 1
        self.pivots: dict[int, int] = {}
        self.ncols = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, column: int):
        """Add the next column; return its kernel relation if it is dependent."""
        v = column | (1 << (self.nrows + self.ncols))
        self.ncols += 1
        low = self.low
        pivots = self.pivots
        while v & low:
            p = pivots.get((v & -v).bit_length() - 1)
            if p is None:
                pivots[(v & -v).bit_length() - 1] = v
                return None
            v ^= p
        return v >> self.nrows


def kernel_basis(m: Gf2Matrix) -> tuple[int, list[int]]:
    """Rank and a kernel basis; vector bit j is the coefficient of column j."""
    el = _ColumnEliminator(m.rows)
    basis = []
    for c in m.column_ints():
        rel = el.add(c)
        if rel is not None:
            basis.append(rel)
    if el.rank + len(basis) != m.cols:
        raise AssertionError("rank-nullity violated")
    return el.rank, basis


def rank(m: Gf2Matrix) -> int:
    return kernel_basis(m)[0]


# ---------------------------------------------------------------------------
# Annihilators


def _side_function(f: BooleanFunction, side: str) -> BooleanFunction:
    if side == F_SIDE:
        return f
    if side == COMPLEMENT_SIDE:
        return f.complement()
    raise ValueError(f"unknown side {side!r}")


def _relation_to_anf(n: int, monomials: Sequence[int], rel: int) -> AnfPolynomial:
    coeffs = 0
    j = 0
    while rel:
        if rel & 1:
            coeffs |= 1 << monomials[j]
        rel >>= 1
        j += 1
    return AnfPolynomial(n, coeffs)


def verify_annihilator(g: AnfPolynomial, f: BooleanFunction) -> bool:
    """True iff g * f == 0 pointwise (the zero polynomial passes trivially)."""
    if g.n != f.n:
        raise ValueError(f"dimension mismatch: {g.n} vs {f.n}")
    return moebius(g.coeffs, g.n) & f.table == 0


@dataclass(frozen=True)
class AnnihilatorWitness:
    g: AnfPolynomial
    side: str
    degree: int
    target: BooleanFunction = field(repr=False)

    def __post_init__(self):
        if self.g.is_zero():
            raise ValueError("the zero polynomial is not an annihilator witness")
        if not verify_annihilator(self.g, _side_function(self.target, self.side)):
            raise ValueError(f"g does not annihilate side {self.side}")
        if degree(self.g) != self.degree:
            raise ValueError(f"witness degree {degree(self.g)} != claimed {self.degree}")


@dataclass(frozen=True)
class RankRecord:
    """Evidence row: the evaluation matrix of ``side`` up to degree d has this rank."""

    side: str
    degree: int
    rows: int
    cols: int
    rank: int

    @property
    def nullity(self) -> int:
        return self.cols - self.rank


@dataclass(frozen=True)
class AiResult:
    ai: int
    witness: AnnihilatorWitness
    evidence: tuple = ()

    def __post_init__(self):
        if self.witness.degree != self.ai:
            raise ValueError("witness degree must equal the AI")
        for r in self.evidence:
            if r.degree < self.ai and r.nullity:
                raise ValueError(f"evidence shows a kernel below the AI at {r}")


def annihilator_space_dimension(f: BooleanFunction, d: int) -> int:
    """dim {g : deg g <= d, g f = 0}."""
    if not 0 <= d <= f.n:
        raise ValueError(f"degree {d} out of range 0..{f.n}")
    mons = _monomial_basis(f.n, d)
    r, basis = kernel_basis(evaluation_matrix(f.support(), mons))
    return len(basis)


def annihilator_basis(f: BooleanFunction, d: int) -> list[AnfPolynomial]:
    """Basis of the annihilators of f with degree <= d."""
    mons = _monomial_basis(f.n, d)
    _, basis = kernel_basis(evaluation_matrix(f.support(), mons))
    return [_relation_to_anf(f.n, mons, v) for v in basis]


def min_annihilator_degree(f: BooleanFunction, d_max: int):
    """Smallest d <= d_max with a nonzero annihilator of f, as (d, witness).

    Recomputes the kernel at every degree. Returns None if no annihilator of
    degree <= d_max exists.
    """
    pts = f.support()
    for d in range(0, min(d_max, f.n) + 1):
        mons = _monomial_basis(f.n, d)
        _, basis = kernel_basis(evaluation_matrix(pts, mons))
        if basis:
            g = _relation_to_anf(f.n, mons, basis[0])
            return d, AnnihilatorWitness(g, F_SIDE, d, f)
    return None


class _SideSearch:
    def __init__(self, f: BooleanFunction, side: str):
        self.f = f
        self.side = side
        self.points = _side_function(f, side).support()
        self.elim = _ColumnEliminator(len(self.points))
        self.monomials: list[int] = []

    def extend(self, d: int):
        """Add every degree-d monomial column; return the first relation found."""
        level = [u for u in _monomial_basis(self.f.n, d) if u.bit_count() == d]
        for u, col in zip(level, _eval_columns(self.points, level)):
            self.monomials.append(u)
            rel = self.elim.add(col)
            if rel is not None:
                return rel
        return None


def ai_search(f: BooleanFunction, d_max: int | None = None, *, max_work: int | None = None):
    """Exact AI if it is <= d_max, else None.

    Columns are added in (degree, mask) order on both sides; the first
    dependent column has minimal degree, so one elimination pass per side
    replaces a rank computation per degree. Raises CostLimitError before a
    degree level whose elimination exceeds ``max_work`` (rows * columns).
    """
    n = f.n
    if d_max is None:
        d_max = (n + 1) // 2
    sides = [_SideSearch(f, F_SIDE), _SideSearch(f, COMPLEMENT_SIDE)]
    evidence = []
    for d in range(0, min(d_max, n) + 1):
        if max_work is not None:
            cols = basis_size(n, d)
            work = max(len(s.points) for s in sides) * cols
            if work > max_work:
                raise CostLimitError(
                    f"degree {d} needs an elimination of {work} > {max_work} work units"
                )
        for s in sides:
            rel = s.extend(d)
            if rel is not None:
                g = _relation_to_anf(n, s.monomials, rel)
                w = AnnihilatorWitness(g, s.side, d, f)
                return AiResult(d, w, tuple(evidence))
            evidence.append(RankRecord(s.side, d, len(s.points), len(s.monomials), s.elim.rank))
    return None


def exact_ai(f: BooleanFunction, *, max_work: int | None = None) -> AiResult:
    res = ai_search(f, (f.n + 1) // 2, max_work=max_work)
    if res is None:
        # cannot happen: AI(f) <= ceil(n/2)
        raise AssertionError(f"no annihilator up to degree ceil(n/2) for {f!r}")
    return res


def exact_ai_per_degree(f: BooleanFunction) -> int:
    """Exact AI by an independent rank computation at every degree."""
    for d in range(0, f.n + 1):
        for side in (f, f.complement()):
            if annihilator_space_dimension(side, d):
                return d
    raise AssertionError("unreachable")
