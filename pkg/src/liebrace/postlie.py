"""Post-Lie algebra structures and integrability obstructions.

A ``PostLieStructure`` is a dot Lie algebra together with a bilinear
triangle product t[i][j][k] (e_i > e_j = sum_k t[i][j][k] e_k).  The circ
bracket is always *derived* from (dot, triangle) via

    [x, y]_circ = [x, y]_dot + x > y - y > x,

following the uniqueness remark for the sub-adjacent bracket; only the
remaining two compatibility identities are checked:

    (2)  x > [y, z] = [x > y, z] + [y, x > z]        (x > . is a derivation)
    (3)  [x, y]_circ > z = x > (y > z) - y > (x > z)

The obstruction scan turns the structural theorems for connected Lie skew
braces into machine-checkable non-integrability findings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import Q, format_rational, parse_rational, rational
from .liealg import (
    LieAlgebra,
    classify,
    from_json as liealg_from_json,
    invariant_battery,
    jacobi_check,
    to_json as liealg_to_json,
)

SOLVABLE_CLASSES = ("ab", "nil", "solv")
NILPOTENT_CLASSES = ("ab", "nil")

CONNECTED_CAVEAT = (
    "obstruction applies to integration into a connected Lie skew brace"
)


class PostLieStructure:
    """Dot bracket plus triangle product on one rational vector space."""

    def __init__(self, dot: LieAlgebra, triangle):
        self.dot = dot
        n = dot.dim
        self.triangle = tuple(
            tuple(tuple(rational(x) for x in row) for row in plane)
            for plane in triangle
        )
        if len(self.triangle) != n or any(
            len(p) != n or any(len(r) != n for r in p) for p in self.triangle
        ):
            raise ValueError("triangle tensor must be dim x dim x dim")

    @property
    def dim(self) -> int:
        return self.dot.dim

    @classmethod
    def from_pairs(cls, dot: LieAlgebra, pairs: dict) -> "PostLieStructure":
        """Build from sparse {(i, j): {k: coeff}}; no symmetry implied."""
        n = dot.dim
        t = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in pairs.items():
            for k, v in coeffs.items():
                t[i][j][k] = rational(v)
        return cls(dot, t)

    def triangle_apply(self, x, y) -> list[Fraction]:
        """x > y for rational coordinate vectors."""
        n = self.dim
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
                row = self.triangle[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += f * row[k]
        return out

    def triangle_is_zero(self) -> bool:
        return all(
            x == 0 for plane in self.triangle for row in plane for x in row
        )


def derive_circ(p: PostLieStructure, check: bool = True) -> LieAlgebra:
    """Sub-adjacent bracket [x,y]_circ = [x,y]_dot + x>y - y>x.

    With check=True a Jacobi failure raises, signalling that p is not a
    valid post-Lie structure."""
    n = p.dim
    c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = (
                    p.dot.c[i][j][k] + p.triangle[i][j][k] - p.triangle[j][i][k]
                )
    circ = LieAlgebra(f"{p.dot.name}:circ", n, c)
    if check:
        ok, triple = jacobi_check(circ)
        if not ok:
            raise ValueError(
                f"derived circ bracket violates Jacobi at basis triple {triple}; "
                "not a post-Lie structure"
            )
    return circ


def check_axioms(p: PostLieStructure) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Exact verification of identities (2) and (3) on all basis triples.

    Identity (1) holds by construction of the derived circ bracket.
    Returns (True, None) or (False, (axiom, i, j, k)) for the first
    violation."""
    n = p.dim
    circ = derive_circ(p, check=False)
    basis = [[Q(1) if a == b else Q(0) for a in range(n)] for b in range(n)]
    from .liealg import bracket

    for i in range(n):
        for j in range(n):
            for k in range(n):
                # (2): e_i > [e_j, e_k] = [e_i > e_j, e_k] + [e_j, e_i > e_k]
                lhs = p.triangle_apply(basis[i], p.dot.c[j][k])
                rhs = bracket(p.dot, p.triangle[i][j], basis[k])
                for t, v in enumerate(bracket(p.dot, basis[j], p.triangle[i][k])):
                    rhs[t] += v
                if lhs != rhs:
                    return False, (2, i, j, k)
                # (3): [e_i, e_j]_circ > e_k = e_i > (e_j > e_k) - e_j > (e_i > e_k)
                lhs = p.triangle_apply(circ.c[i][j], basis[k])
                rhs = p.triangle_apply(basis[i], p.triangle[j][k])
                for t, v in enumerate(p.triangle_apply(basis[j], p.triangle[i][k])):
                    rhs[t] -= v
                if lhs != rhs:
                    return False, (3, i, j, k)
    return True, None


def check_prelie(p: PostLieStructure) -> bool:
    """Left-symmetry of associators: x>(y>z) - y>(x>z) = (x>y)>z - (y>x)>z.

    Requires a zero dot bracket."""
    if not p.dot.is_abelian():
        raise ValueError("pre-Lie check requires a zero dot bracket")
    n = p.dim
    basis = [[Q(1) if a == b else Q(0) for a in range(n)] for b in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = p.triangle_apply(basis[i], p.triangle[j][k])
                for t, v in enumerate(p.triangle_apply(basis[j], p.triangle[i][k])):
                    lhs[t] -= v
                rhs = p.triangle_apply(p.triangle[i][j], basis[k])
                for t, v in enumerate(p.triangle_apply(p.triangle[j][i], basis[k])):
                    rhs[t] -= v
                if lhs != rhs:
                    return False
    return True


@dataclass
class ObstructionReport:
    """Outcome of one obstruction rule.

    fired=True certifies (via exact classification evidence) that the
    structure cannot arise from a connected Lie skew brace."""

    rule: str  # S2 | R1 | R2-necessary | dim1
    fired: bool
    detail: str
    caveat: str = CONNECTED_CAVEAT

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "fired": self.fired,
            "detail": self.detail,
            "caveat": self.caveat,
        }


def obstruction_scan(p: PostLieStructure) -> list[ObstructionReport]:
    """Apply the structural rules as integrability obstructions.

    S2: a solvable dot class with a non-solvable circ class is impossible
    (solvability passes from dot to circ).  R1: nilpotent circ forces a
    solvable dot.  R2-necessary: semisimple circ forces dot isomorphic to
    circ, so any differing isomorphism invariant is an obstruction.  A
    dedicated rule covers the 1-dimensional case, where a nonzero triangle
    is incompatible with the vanishing differential of the lambda map."""
    circ = derive_circ(p, check=False)
    dot_label = classify(p.dot)
    circ_label = classify(circ)
    reports = []

    s2 = dot_label in SOLVABLE_CLASSES and circ_label not in SOLVABLE_CLASSES
    reports.append(
        ObstructionReport(
            "S2",
            s2,
            f"dot class {dot_label}, circ class {circ_label}"
            + ("; solvability must carry over to circ" if s2 else ""),
        )
    )

    r1 = circ_label in NILPOTENT_CLASSES and dot_label not in SOLVABLE_CLASSES
    reports.append(
        ObstructionReport(
            "R1",
            r1,
            f"circ class {circ_label}, dot class {dot_label}"
            + ("; nilpotent circ forces solvable dot" if r1 else ""),
        )
    )

    if circ_label in ("simp", "ssimp"):
        bd, bc = invariant_battery(p.dot), invariant_battery(circ)
        diffs = sorted(k for k in bd if bd[k] != bc[k])
        reports.append(
            ObstructionReport(
                "R2-necessary",
                bool(diffs),
                f"semisimple circ forces dot isomorphic to circ; differing "
                f"invariants: {diffs}" if diffs else
                "semisimple circ; all computed invariants of dot and circ agree",
            )
        )
    else:
        reports.append(
            ObstructionReport(
                "R2-necessary", False, f"circ class {circ_label} is not semisimple"
            )
        )

    dim1 = p.dim == 1 and not p.triangle_is_zero()
    reports.append(
        ObstructionReport(
            "dim1",
            dim1,
            "nonzero triangle product on a 1-dimensional space; the lambda "
            "differential of the only candidate brace is zero" if dim1 else
            "not a 1-dimensional structure with nonzero triangle",
        )
    )
    return reports


def gln_prelie(n: int) -> PostLieStructure:
    """Matrix multiplication as a pre-Lie product on n x n matrices:
    zero dot bracket, E_ab > E_cd = delta_bc E_ad.  The derived circ
    bracket is the gl_n commutator."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = n * n
    from .liealg import abelian_algebra

    dot = abelian_algebra(dim, f"gl{n}-dot")

    def idx(a: int, b: int) -> int:
        return a * n + b

    pairs: dict[tuple[int, int], dict[int, int]] = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if b == c:
                        pairs[(idx(a, b), idx(c, d))] = {idx(a, d): 1}
    return PostLieStructure.from_pairs(dot, pairs)


# ---------------------------------------------------------------------------
# JSON wire format


def to_json(p: PostLieStructure) -> dict:
    """{"dot": <LieAlgebra>, "triangle": [{"i","j","coeffs":[{"k","c"}]}]}
    with all (i, j) pairs listed (no symmetry implied)."""
    triangle = []
    for i in range(p.dim):
        for j in range(p.dim):
            coeffs = [
                {"k": k, "c": format_rational(v)}
                for k, v in enumerate(p.triangle[i][j])
                if v != 0
            ]
            if coeffs:
                triangle.append({"i": i, "j": j, "coeffs": coeffs})
    return {"dot": liealg_to_json(p.dot), "triangle": triangle}


def from_json(data: dict) -> PostLieStructure:
    dot = liealg_from_json(data["dot"])
    pairs: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in data.get("triangle", []):
        pairs[(int(entry["i"]), int(entry["j"]))] = {
            int(c["k"]): parse_rational(str(c["c"])) for c in entry["coeffs"]
        }
    return PostLieStructure.from_pairs(dot, pairs)
