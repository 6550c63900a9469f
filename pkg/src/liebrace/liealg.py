"""Lie algebras given by exact structure constants.

A ``LieAlgebra`` is a structure-constant tensor c[i][j][k] over Q,
meaning [e_i, e_j] = sum_k c[i][j][k] e_k.  The module provides bracket
evaluation, Jacobi verification, derived / lower central series, the
Killing form, the radical (Killing-orthogonal complement of the derived
algebra), an ad-commutant simplicity discriminator, and the six-way
classification ab / nil / solv / simp / ssimp / mixed.

Classification always runs on exact rational tensors; series and rank
computations are tolerance-free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactlin import (
    Q,
    QVector,
    RationalMatrix,
    SubspaceBasis,
    format_rational,
    kernel_basis,
    parse_rational,
    rational,
    solve,
    sparse_kernel_dim,
)

CLASS_LABELS = ("ab", "nil", "solv", "simp", "ssimp", "mixed")


class LieAlgebra:
    """Finite-dimensional real Lie algebra as a rational tensor."""

    def __init__(self, name: str, dim: int, c):
        self.name = name
        self.dim = dim
        self.c = tuple(
            tuple(tuple(rational(x) for x in row) for row in plane) for plane in c
        )
        if len(self.c) != dim or any(
            len(p) != dim or any(len(r) != dim for r in p) for p in self.c
        ):
            raise ValueError("structure tensor must be dim x dim x dim")

    @classmethod
    def from_brackets(cls, name: str, dim: int, brackets: dict) -> "LieAlgebra":
        """Build from sparse {(i, j): {k: coeff}} with i < j; the
        antisymmetric completion is implied."""
        c = [[[Q(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not 0 <= i < j < dim:
                raise ValueError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
            for k, v in coeffs.items():
                v = rational(v)
                c[i][j][k] = v
                c[j][i][k] = -v
        return cls(name, dim, c)

    def bracket_basis(self, i: int, j: int) -> QVector:
        return self.c[i][j]

    def is_antisymmetric(self) -> bool:
        n = self.dim
        return all(
            self.c[i][j][k] == -self.c[j][i][k]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        )

    def is_abelian(self) -> bool:
        return all(
            x == 0 for plane in self.c for row in plane for x in row
        )

    def ad_matrix(self, i: int) -> list[list[Fraction]]:
        """Matrix of ad(e_i): column j holds the coordinates of [e_i, e_j]."""
        n = self.dim
        return [[self.c[i][j][k] for j in range(n)] for k in range(n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.c == other.c
        )

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> list[Fraction]:
    """[x, y] for rational coordinate vectors x, y."""
    n = g.dim
    if len(x) != n or len(y) != n:
        raise ValueError("vector dimension does not match the algebra")
    x = [rational(v) for v in x]
    y = [rational(v) for v in y]
    out = [Q(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            f = x[i] * y[j]
            row = g.c[i][j]
            for k in range(n):
                if row[k] != 0:
                    out[k] += f * row[k]
    return out


def jacobi_check(g: LieAlgebra) -> tuple[bool, tuple[int, int, int] | None]:
    """Exact Jacobi identity over all basis triples.

    Returns (True, None) or (False, first violating (i, j, k))."""
    n = g.dim
    basis = [[Q(1) if a == b else Q(0) for a in range(n)] for b in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            cij = g.c[i][j]
            for k in range(j + 1, n):
                total = bracket(g, cij, basis[k])
                for t, v in enumerate(bracket(g, g.c[j][k], basis[i])):
                    total[t] += v
                for t, v in enumerate(bracket(g, g.c[k][i], basis[j])):
                    total[t] += v
                if any(v != 0 for v in total):
                    return False, (i, j, k)
    return True, None


def _bracket_span(g: LieAlgebra, left: list[QVector], right: list[QVector]) -> list[QVector]:
    sp = SubspaceBasis(g.dim)
    for x in left:
        for y in right:
            sp.add(bracket(g, x, y))
    return sp.vectors()


def _ambient_basis(n: int) -> list[QVector]:
    return [tuple(Q(1) if i == j else Q(0) for i in range(n)) for j in range(n)]


def derived_series(g: LieAlgebra) -> tuple[list[int], bool]:
    """Dims of g >= [g,g] >= [[g,g],[g,g]] >= ... until stable.

    Solvable iff the terminal dimension is 0."""
    current = _ambient_basis(g.dim)
    dims = [g.dim]
    while True:
        nxt = _bracket_span(g, current, current)
        dims.append(len(nxt))
        if len(nxt) == 0 or len(nxt) == len(current):
            return dims, dims[-1] == 0
        current = nxt


def lower_central_series(g: LieAlgebra) -> tuple[list[int], bool]:
    """Dims of g >= [g,g] >= [g,[g,g]] >= ... until stable.

    Nilpotent iff the terminal dimension is 0."""
    ambient = _ambient_basis(g.dim)
    current = ambient
    dims = [g.dim]
    while True:
        nxt = _bracket_span(g, ambient, current)
        dims.append(len(nxt))
        if len(nxt) == 0 or len(nxt) == len(current):
            return dims, dims[-1] == 0
        current = nxt


def derived_subalgebra(g: LieAlgebra) -> list[QVector]:
    return _bracket_span(g, _ambient_basis(g.dim), _ambient_basis(g.dim))


def killing_form(g: LieAlgebra) -> RationalMatrix:
    """K[i][j] = trace(ad e_i . ad e_j)."""
    n = g.dim
    k = RationalMatrix.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            # trace(A B) = sum_{a,b} A[a][b] B[b][a] with A[k][m] = c[i][m][k]
            t = Q(0)
            for a in range(n):
                for b in range(n):
                    t += g.c[i][b][a] * g.c[j][a][b]
            k.entries[i][j] = t
            k.entries[j][i] = t
    return k


def killing_rank(g: LieAlgebra) -> int:
    from .exactlin import rank

    return rank(killing_form(g))


def killing_signature(g: LieAlgebra) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of the Killing form, computed by
    exact symmetric congruence diagonalization."""
    n = g.dim
    a = killing_form(g).copy_rows()

    def add_row_col(dst, src, f):
        for t in range(n):
            a[dst][t] += f * a[src][t]
        for t in range(n):
            a[t][dst] += f * a[t][src]

    def swap_row_col(i, j):
        a[i], a[j] = a[j], a[i]
        for t in range(n):
            a[t][i], a[t][j] = a[t][j], a[t][i]

    pos = neg = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            pivot = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if pivot is not None:
                swap_row_col(i, pivot)
            else:
                off = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if off is None:
                    zero += 1
                    continue
                add_row_col(i, off, Q(1))
        piv = a[i][i]
        for j in range(i + 1, n):
            if a[j][i] != 0:
                add_row_col(j, i, -a[j][i] / piv)
        if piv > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, zero


def radical(g: LieAlgebra) -> list[QVector]:
    """Maximal solvable ideal, as the Killing-orthogonal complement of the
    derived algebra (Cartan's characterization in characteristic zero)."""
    derived = derived_subalgebra(g)
    if not derived:
        return _ambient_basis(g.dim)
    k = killing_form(g)
    rows = [k.matvec(d) for d in derived]
    return kernel_basis(RationalMatrix(rows))


def center(g: LieAlgebra) -> list[QVector]:
    """{x : [x, e_i] = 0 for all i}, via one stacked kernel computation."""
    n = g.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([g.c[j][i][k] for j in range(n)])
    return kernel_basis(RationalMatrix(rows))


def ad_commutant_dim(g: LieAlgebra) -> int:
    """dim {M in End(g) : M ad(e_i) = ad(e_i) M for all i}.

    The stacked system has n^2 unknowns M[a][b] and n^3 equations; it is
    integer after clearing denominators and very sparse, so the sparse
    echelon is used.  Equals 1 exactly for absolutely simple algebras.
    """
    n = g.dim
    # scale the tensor to integers once
    den = 1
    for plane in g.c:
        for row in plane:
            for x in row:
                if x.denominator != 1:
                    den = den * x.denominator // __import__("math").gcd(den, x.denominator)
    ci = [[[int(x * den) for x in row] for row in plane] for plane in g.c]

    def unknown(a, b):
        return a * n + b

    def rows():
        for i in range(n):
            ad = [[ci[i][j][k] for j in range(n)] for k in range(n)]  # ad[k][j]
            for p in range(n):
                for q in range(n):
                    row: dict[int, int] = {}
                    for c_ in range(n):
                        v = ad[c_][q]  # (M ad)[p][q] takes M[p][c] ad[c][q]
                        if v:
                            row[unknown(p, c_)] = row.get(unknown(p, c_), 0) + v
                        w = ad[p][c_]  # (ad M)[p][q] takes ad[p][c] M[c][q]
                        if w:
                            row[unknown(c_, q)] = row.get(unknown(c_, q), 0) - w
                    if row:
                        yield row

    return sparse_kernel_dim(rows(), n * n)


def classify(g: LieAlgebra) -> str:
    """Six-way label with fixed precedence: ab, nil, solv, simp, ssimp, mixed.

    The simp/ssimp split uses the ad-commutant dimension, which is a valid
    discriminator for absolutely simple real factors (all catalog entries);
    a complex simple algebra viewed as real would be mislabeled.
    """
    if g.is_abelian():
        return "ab"
    _, nilpotent = lower_central_series(g)
    if nilpotent:
        return "nil"
    _, solvable = derived_series(g)
    if solvable:
        return "solv"
    if len(radical(g)) == 0:
        return "simp" if ad_commutant_dim(g) == 1 else "ssimp"
    return "mixed"


def direct_sum(g1: LieAlgebra, g2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Block-diagonal structure constants."""
    n1, n2 = g1.dim, g2.dim
    n = n1 + n2
    c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                c[i][j][k] = g1.c[i][j][k]
    for i in range(n2):
        for j in range(n2):
            for k in range(n2):
                c[n1 + i][n1 + j][n1 + k] = g2.c[i][j][k]
    return LieAlgebra(name or f"{g1.name}+{g2.name}", n, c)


def opposite(g: LieAlgebra, name: str | None = None) -> LieAlgebra:
    """Same space with the negated bracket; isomorphic to g via x -> -x.

    This is the normal form of the second factor of a product transported
    through (a1, a2) -> a1 . a2^{-1}."""
    c = [
        [[-x for x in row] for row in plane] for plane in g.c
    ]
    return LieAlgebra(name or f"{g.name}^op", g.dim, c)


def invariant_battery(g: LieAlgebra) -> dict:
    """Necessary isomorphism invariants: dim, series dims, Killing
    rank/signature, center dim, class label.  Two isomorphic algebras have
    identical batteries; a mismatch certifies non-isomorphism."""
    d_dims, _ = derived_series(g)
    l_dims, _ = lower_central_series(g)
    pos, neg, zero = killing_signature(g)
    return {
        "dim": g.dim,
        "derived_dims": d_dims,
        "lower_central_dims": l_dims,
        "killing_rank": pos + neg,
        "killing_signature": [pos, neg, zero],
        "center_dim": len(center(g)),
        "class": classify(g),
    }


# ---------------------------------------------------------------------------
# JSON wire format


def to_json(g: LieAlgebra) -> dict:
    """{"name", "dim", "brackets": [{"i", "j", "coeffs": [{"k", "c"}]}]}
    listing only i < j pairs; antisymmetric completion implied."""
    brackets = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            coeffs = [
                {"k": k, "c": format_rational(v)}
                for k, v in enumerate(g.c[i][j])
                if v != 0
            ]
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return {"name": g.name, "dim": g.dim, "brackets": brackets}


def from_json(data: dict) -> LieAlgebra:
    dim = int(data["dim"])
    sparse: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in data.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        sparse[(i, j)] = {
            int(c["k"]): parse_rational(str(c["c"])) for c in entry["coeffs"]
        }
    return LieAlgebra.from_brackets(str(data.get("name", "anonymous")), dim, sparse)


# ---------------------------------------------------------------------------
# Catalog tensors.  Matrix-defined algebras are generated from explicit
# integer matrix bases so the constants cannot drift from the group charts.


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(m)), Q(0)) for j in range(p)]
        for i in range(n)
    ]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matrix_structure_constants(name: str, mats: list[list[list]]) -> LieAlgebra:
    """Structure constants of span{mats} under the matrix commutator.

    Raises if the span is not closed under commutators."""
    mats = [[[rational(x) for x in row] for row in m] for m in mats]
    n = len(mats)
    d = len(mats[0])
    cols = RationalMatrix(
        [[mats[k][a][b] for k in range(n)] for a in range(d) for b in range(d)]
    )
    c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            comm = _mat_sub(_mat_mul(mats[i], mats[j]), _mat_mul(mats[j], mats[i]))
            rhs = [comm[a][b] for a in range(d) for b in range(d)]
            coeffs = solve(cols, rhs)
            if coeffs is None:
                raise ValueError(f"{name}: commutator [{i},{j}] leaves the span")
            for k in range(n):
                c[i][j][k] = coeffs[k]
                c[j][i][k] = -coeffs[k]
    return LieAlgebra(name, n, c)


def _e(d: int, a: int, b: int):
    m = [[Q(0)] * d for _ in range(d)]
    m[a][b] = Q(1)
    return m


def abelian_algebra(n: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(name or f"abelian{n}", n, [[[Q(0)] * n] * n] * n)


def heisenberg3_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets("heisenberg3", 3, {(0, 1): {2: 1}})


def aff1_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets("aff1", 2, {(0, 1): {1: 1}})


def so2_algebra() -> LieAlgebra:
    return abelian_algebra(1, "so2")


def so3_basis_matrices():
    l1 = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
    l2 = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    l3 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    return [l1, l2, l3]


def so3_algebra() -> LieAlgebra:
    return matrix_structure_constants("so3", so3_basis_matrices())


def su2_algebra() -> LieAlgebra:
    # unit-quaternion generators i/2, j/2, k/2 satisfy the same cyclic
    # relations as so3
    g = so3_algebra()
    return LieAlgebra("su2", g.dim, g.c)


def sl2_basis_matrices():
    w = [[0, -1], [1, 0]]
    h = [[1, 0], [0, -1]]
    e = [[0, 1], [0, 0]]
    return [w, h, e]


def sl2_algebra() -> LieAlgebra:
    """sl2 in the Iwasawa-adapted chart basis (W; H, E)."""
    return matrix_structure_constants("sl2", sl2_basis_matrices())


def an_basis_matrices(n: int):
    mats = [
        _mat_sub(_e(n, i, i), _e(n, i + 1, i + 1)) for i in range(n - 1)
    ]
    mats += [_e(n, a, b) for a in range(n) for b in range(a + 1, n)]
    return mats


def an_algebra(n: int) -> LieAlgebra:
    """Lie algebra of the AN Iwasawa factor of SL_n: traceless diagonal
    plus strictly upper triangular."""
    return matrix_structure_constants(f"an{n}", an_basis_matrices(n))


def sl3_basis_matrices():
    return so3_basis_matrices() + an_basis_matrices(3)


def sl3_algebra() -> LieAlgebra:
    """sl3 in the Iwasawa-adapted chart basis (so3 block; an3 block)."""
    return matrix_structure_constants("sl3", sl3_basis_matrices())


def gl_algebra(n: int) -> LieAlgebra:
    """gl_n commutator tensor in the elementary-matrix basis E_ab,
    ordered row-major."""
    mats = [_e(n, a, b) for a in range(n) for b in range(n)]
    return matrix_structure_constants(f"gl{n}", mats)


def so3_semidirect_r3_algebra() -> LieAlgebra:
    """so(3) acting on R^3 by its vector representation: basis
    (L1, L2, L3; v1, v2, v3) with [L_i, v_j] = L_i e_j and [v, v] = 0."""
    ls = so3_basis_matrices()
    c = [[[Q(0)] * 6 for _ in range(6)] for _ in range(6)]
    so3 = so3_algebra()
    for i in range(3):
        for j in range(3):
            for k in range(3):
                c[i][j][k] = so3.c[i][j][k]
    for i in range(3):
        for j in range(3):
            for k in range(3):
                v = rational(ls[i][k][j])
                c[i][3 + j][3 + k] = v
                c[3 + j][i][3 + k] = -v
    return LieAlgebra("so3:r3", 6, c)
