"""Exact rational scalars and dense linear algebra over Q.

All structure-constant computations in this package run on
``fractions.Fraction`` entries, so ranks, kernels and solves are
tolerance-free.  Matrices are small (dims <= ~20 on the dense path), so
plain row-major lists of Fractions are used.  A sparse integer echelon
is provided for the large stacked systems arising in commutant
computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

Q = Fraction

QVector = tuple[Fraction, ...]


def rational(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def parse_rational(s: str) -> Fraction:
    """Parse the JSON wire format 'p/q' (or plain 'p')."""
    s = s.strip()
    if "/" in s:
        p, _, q = s.partition("/")
        den = int(q)
        if den <= 0:
            raise ValueError(f"denominator must be positive in {s!r}")
        return Fraction(int(p), den)
    return Fraction(int(s))


def format_rational(x: Fraction) -> str:
    """Serialize a Fraction as 'p/q', or 'p' when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Dense matrix with exact rational entries (row-major)."""

    def __init__(self, rows: Sequence[Sequence]):
        self.entries = [[rational(x) for x in row] for row in rows]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in RationalMatrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[Q(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.entries[i][i] = Q(1)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(x) for x in row) for row in self.entries
        )
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def copy_rows(self) -> list[list[Fraction]]:
        return [row[:] for row in self.entries]

    def matvec(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        return [
            sum((row[j] * v[j] for j in range(self.cols)), Q(0))
            for row in self.entries
        ]


def _echelonize(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place forward elimination with partial pivoting on |entry|.

    Returns the echelon rows and the list of pivot column indices.
    """
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        # largest absolute entry limits coefficient blow-up at desk scale
        best, best_row = None, -1
        for i in range(r, n_rows):
            a = rows[i][c]
            if a != 0 and (best is None or abs(a) > best):
                best, best_row = abs(a), i
        if best_row < 0:
            continue
        rows[r], rows[best_row] = rows[best_row], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: RationalMatrix) -> int:
    """Rank by exact Gaussian elimination."""
    _, pivots = _echelonize(m.copy_rows())
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> list[QVector]:
    """Basis of the right null space; m @ v == 0 exactly for each v."""
    rows, pivots = _echelonize(m.copy_rows())
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis: list[QVector] = []
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        # reduced echelon: pivot rows read off the dependent coordinates
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def solve(m: RationalMatrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of m x = b, or None when inconsistent."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch in solve")
    aug = [row[:] + [rational(x)] for row, x in zip(m.entries, b)]
    rows, pivots = _echelonize(aug)
    # a pivot in the augmented column means inconsistency
    if m.cols in pivots:
        return None
    x = [Q(0)] * m.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][m.cols]
    return x


class SubspaceBasis:
    """Incremental reduced-echelon basis of a rational subspace."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list[Fraction]] = {}  # lead column -> row

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = [rational(x) for x in v]
        for c in sorted(self._rows):
            if w[c] != 0:
                f = w[c]
                row = self._rows[c]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert v; returns True when it enlarged the span."""
        w = self.reduce(v)
        lead = next((c for c in range(self.dim) if w[c] != 0), None)
        if lead is None:
            return False
        piv = w[lead]
        w = [x / piv for x in w]
        # keep the stored rows fully reduced against the new one
        for c, row in list(self._rows.items()):
            if row[lead] != 0:
                f = row[lead]
                self._rows[c] = [a - f * b for a, b in zip(row, w)]
        self._rows[lead] = w
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self.reduce(v))

    @property
    def size(self) -> int:
        return len(self._rows)

    def vectors(self) -> list[QVector]:
        return [tuple(self._rows[c]) for c in sorted(self._rows)]


def span_basis(vectors: Iterable[Sequence[Fraction]], dim: int) -> list[QVector]:
    """Reduced-echelon basis of the span of the given vectors."""
    sp = SubspaceBasis(dim)
    for v in vectors:
        sp.add(v)
    return sp.vectors()


def span_closure(
    vectors: Iterable[Sequence[Fraction]],
    extend: Callable[[QVector, QVector], Sequence[Fraction]],
    dim: int,
) -> list[QVector]:
    """Smallest subspace containing ``vectors`` and closed under ``extend``
    against the ambient standard basis.

    Each round applies ``extend(b, e_j)`` for b in the current basis and
    e_j ambient; terminates because the span dimension strictly grows.
    """
    ambient = [
        tuple(Q(1) if i == j else Q(0) for i in range(dim)) for j in range(dim)
    ]
    sp = SubspaceBasis(dim)
    frontier = []
    for v in vectors:
        if sp.add(v):
            frontier = sp.vectors()
    while frontier:
        new_frontier = []
        for b in list(sp.vectors()):
            for e in ambient:
                w = tuple(rational(x) for x in extend(b, e))
                if sp.add(w):
                    new_frontier.append(w)
        frontier = new_frontier
    return sp.vectors()


class SparseIntEchelon:
    """Fraction-free row echelon over Z for large sparse integer systems.

    Rows are dicts {column: int}.  Only the rank is tracked; used for
    kernel *dimension* computations where the dense path would be slow.
    """

    def __init__(self):
        self._rows: dict[int, dict[int, int]] = {}  # lead column -> row

    @staticmethod
    def _normalize(row: dict[int, int]) -> dict[int, int]:
        g = 0
        for v in row.values():
            g = gcd(g, abs(v))
            if g == 1:
                break
        if g > 1:
            row = {c: v // g for c, v in row.items()}
        return row

    def add(self, row: dict[int, int]) -> bool:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            lead = min(row)
            piv = self._rows.get(lead)
            if piv is None:
                row = self._normalize(row)
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                self._rows[lead] = row
                return True
            a, b = piv[lead], row[lead]
            new = {}
            for c in set(row) | set(piv):
                v = a * row.get(c, 0) - b * piv.get(c, 0)
                if v != 0:
                    new[c] = v
            if len(new) > 8:
                new = self._normalize(new)
            row = new
        return False

    @property
    def rank(self) -> int:
        return len(self._rows)


def sparse_kernel_dim(rows: Iterable[dict[int, int]], cols: int) -> int:
    """cols - rank for a sparse integer system given as dict rows."""
    ech = SparseIntEchelon()
    for row in rows:
        ech.add(row)
    return cols - ech.rank
