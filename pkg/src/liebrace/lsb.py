"""Lie skew brace instances and their numerical verification.

An ``LsbInstance`` realizes two group laws (dot and circ) on one chart
with a shared identity, built by one of four constructions:

* trivial / opposite-trivial on a catalog group,
* direct products of instances,
* Zappa-Szep: an exact factorization G = G1 G2 induces
  a o b = a1 . b . a2,
* semidirect twist: dot is the direct product of two groups, circ the
  semidirect product with the first factor acting on the second.

Verification draws seeded samples in the chart box [-1, 1]^dim and
checks the brace identity, the lambda-action properties and simple
transitivity, reporting max residuals.  ``extract_postlie`` recovers the
post-Lie algebra by finite differences, rationalizes, and re-checks the
axioms exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .liealg import LieAlgebra, abelian_algebra, direct_sum, opposite

Q0 = Fraction(0)
from .matgrp import (
    Abelian,
    Group,
    Product,
    Semidirect,
    SpecialLinear,
    bracket_tensor_numeric,
    group_from_json,
    iwasawa,
    rationalize_tensor,
    so3_algebra,
    so2_algebra,
    an_algebra,
)
from .postlie import PostLieStructure, check_axioms, derive_circ

FACTORIZATIONS = ("h3_normal_split", "aff1_split", "semidirect_split", "iwasawa_k_an")


# ---------------------------------------------------------------------------
# Spec builders (plain dicts; the JSON wire format is the in-memory format)


def trivial(group: dict) -> dict:
    return {"construction": "trivial", "group": group}


def opposite_trivial(group: dict) -> dict:
    return {"construction": "opposite-trivial", "group": group}


def product(factors: list[dict]) -> dict:
    return {"construction": "product", "factors": factors}


def zappa(group: dict, factorization: str) -> dict:
    return {"construction": "zappa", "group": group, "factorization": factorization}


def semidirect_twist(g1: dict, g2: dict, action: str) -> dict:
    return {
        "construction": "semidirect-twist",
        "g1": g1,
        "g2": g2,
        "action": action,
    }


class LsbInstance:
    """Realized pair of group laws; elements are dot-group elements."""

    def __init__(self, spec, group: Group, circ, circ_inv, expected_circ, name,
                 factors=None, split=None):
        self.spec = spec
        self.group = group
        self.dim = group.dim
        self.circ = circ
        self.circ_inv = circ_inv
        self._expected_circ = expected_circ
        self.name = name
        self.factors = factors
        self.split = split

    # dot-law conveniences
    def dot(self, a, b):
        return self.group.multiply(a, b)

    def dot_inv(self, a):
        return self.group.inverse(a)

    def identity(self):
        return self.group.identity()

    def distance(self, a, b) -> float:
        return self.group.distance(a, b)

    def lambda_map(self, a, b):
        """lambda_a(b) = a^{-1} . (a o b)."""
        return self.dot(self.dot_inv(a), self.circ(a, b))

    def rho(self, a, b):
        """The affine action orbit map rho(a)(b) = a . lambda_a(b)."""
        return self.dot(a, self.lambda_map(a, b))

    def expected_circ_algebra(self) -> LieAlgebra | None:
        """Closed-form exact circ tensor in the chart basis, when the
        construction determines one."""
        return self._expected_circ

    def mutated(self, delta: float = 0.1) -> "LsbInstance":
        """Copy with one circ-law output coordinate shifted by delta."""
        g = self.group
        return LsbInstance(
            self.spec, g,
            lambda a, b: g.perturb(self.circ(a, b), delta),
            self.circ_inv, self._expected_circ, f"{self.name}:mutated",
            self.factors, self.split,
        )


def _split_for(factorization: str, group: Group):
    if factorization == "h3_normal_split":
        if group.name != "heisenberg3":
            raise ValueError("h3_normal_split applies to heisenberg3")

        def split(a):
            return np.array([0.0, a[1], a[2]]), np.array([a[0], 0.0, 0.0])

        return split
    if factorization == "aff1_split":
        if group.name != "aff1":
            raise ValueError("aff1_split applies to aff1")

        def split(a):
            return np.array([0.0, a[1]]), np.array([a[0], 0.0])

        return split
    if factorization == "semidirect_split":
        if not isinstance(group, Semidirect):
            raise ValueError("semidirect_split applies to semidirect groups")
        e1, e2 = group.g1.identity(), group.g2.identity()

        def split(a):
            return (e1, a[1]), (a[0], e2)

        return split
    if factorization == "iwasawa_k_an":
        if not isinstance(group, SpecialLinear):
            raise ValueError("iwasawa_k_an applies to sl(n)")

        def split(a):
            k, d, n = iwasawa(group, a)
            return k, d @ n

        return split
    raise ValueError(f"unknown factorization {factorization!r}")


def _zappa_expected(factorization: str, group: Group) -> LieAlgebra:
    """Chart-basis circ tensor of a zappa instance.

    Transporting the direct product through (a1, a2) -> a1 . a2^{-1}
    keeps the G1-block bracket and negates the G2-block bracket."""
    if factorization == "h3_normal_split":
        return abelian_algebra(3)
    if factorization == "aff1_split":
        return abelian_algebra(2)
    if factorization == "semidirect_split":
        # chart order (acting block, normal block) = (G2-part, G1-part)
        return direct_sum(
            opposite(group.g1.algebra()), group.g2.algebra(),
            name=f"{group.name}:circ",
        )
    if factorization == "iwasawa_k_an":
        if group.n == 2:
            return direct_sum(so2_algebra(), opposite(an_algebra(2)), name="so2+an2^op")
        return direct_sum(so3_algebra(), opposite(an_algebra(3)), name="so3+an3^op")
    raise ValueError(f"unknown factorization {factorization!r}")


def realize(spec: dict) -> LsbInstance:
    """Build the instance described by a construction spec."""
    kind = spec.get("construction")
    if kind == "trivial":
        g = group_from_json(spec["group"])
        return LsbInstance(
            spec, g, g.multiply, g.inverse, g.algebra(), f"trivial[{g.name}]"
        )
    if kind == "opposite-trivial":
        g = group_from_json(spec["group"])
        return LsbInstance(
            spec, g,
            lambda a, b: g.multiply(b, a),
            g.inverse, opposite(g.algebra()), f"opposite-trivial[{g.name}]",
        )
    if kind == "product":
        factors = [realize(f) for f in spec["factors"]]
        group = Product([f.group for f in factors])
        expected = None
        if all(f.expected_circ_algebra() is not None for f in factors):
            expected = factors[0].expected_circ_algebra()
            for f in factors[1:]:
                expected = direct_sum(expected, f.expected_circ_algebra())

        def circ(a, b):
            return tuple(f.circ(x, y) for f, x, y in zip(factors, a, b))

        def circ_inv(a):
            return tuple(f.circ_inv(x) for f, x in zip(factors, a))

        return LsbInstance(
            spec, group, circ, circ_inv, expected,
            "product[" + ", ".join(f.name for f in factors) + "]",
            factors=factors,
        )
    if kind == "zappa":
        g = group_from_json(spec["group"])
        factorization = spec["factorization"]
        split = _split_for(factorization, g)

        def circ(a, b):
            a1, a2 = split(a)
            return g.multiply(g.multiply(a1, b), a2)

        def circ_inv(a):
            a1, a2 = split(a)
            return g.multiply(g.inverse(a1), g.inverse(a2))

        return LsbInstance(
            spec, g, circ, circ_inv, _zappa_expected(factorization, g),
            f"zappa[{g.name};{factorization}]", split=split,
        )
    if kind == "semidirect-twist":
        g1 = group_from_json(spec["g1"])
        g2 = group_from_json(spec["g2"])
        sd = Semidirect(g1, g2, spec["action"])
        group = Product([g1, g2])
        return LsbInstance(
            spec, group, sd.multiply, sd.inverse, sd.algebra(),
            f"semidirect-twist[{g1.name}, {g2.name}; {spec['action']}]",
        )
    raise ValueError(f"unknown construction {kind!r}")


# ---------------------------------------------------------------------------
# Verification reports


@dataclass
class Report:
    check: str
    samples: int
    seed: int
    tol: float
    max_residual: float
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def _samples(inst: LsbInstance, count: int, seed: int, width: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield tuple(inst.group.random_element(rng) for _ in range(width))


def verify_lsb(inst: LsbInstance, samples: int = 200, seed: int = 42,
               tol: float = 1e-9) -> Report:
    """Check a o (b . c) = (a o b) . a^{-1} . (a o c) on random triples."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    worst = 0.0
    worst_at = None
    for i, (a, b, c) in enumerate(_samples(inst, samples, seed, 3)):
        lhs = inst.circ(a, inst.dot(b, c))
        rhs = inst.dot(
            inst.dot(inst.circ(a, b), inst.dot_inv(a)), inst.circ(a, c)
        )
        r = inst.distance(lhs, rhs)
        if r > worst:
            worst, worst_at = r, i
    return Report(
        "lsb-identity", samples, seed, tol, worst, worst < tol,
        {"worst_sample": worst_at if worst_at is not None else 0},
    )


def verify_lambda_properties(inst: LsbInstance, samples: int = 100,
                             seed: int = 42, tol: float = 1e-8) -> Report:
    """Automorphism, homomorphism, the post-Lie group compatibility and
    the reconstruction a o b = a . lambda_a(b)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    worst = {"automorphism": 0.0, "homomorphism": 0.0,
             "postlie-group": 0.0, "reconstruction": 0.0}
    for a, b, c in _samples(inst, samples, seed, 3):
        lam_a_b = inst.lambda_map(a, b)
        r = inst.distance(
            inst.lambda_map(a, inst.dot(b, c)),
            inst.dot(lam_a_b, inst.lambda_map(a, c)),
        )
        worst["automorphism"] = max(worst["automorphism"], r)
        lam_lam = inst.lambda_map(a, inst.lambda_map(b, c))
        r = inst.distance(inst.lambda_map(inst.circ(a, b), c), lam_lam)
        worst["homomorphism"] = max(worst["homomorphism"], r)
        # (a . (a |> b)) |> c = a |> (b |> c) with a |> b := lambda_a(b)
        r = inst.distance(inst.lambda_map(inst.dot(a, lam_a_b), c), lam_lam)
        worst["postlie-group"] = max(worst["postlie-group"], r)
        r = inst.distance(inst.circ(a, b), inst.dot(a, lam_a_b))
        worst["reconstruction"] = max(worst["reconstruction"], r)
    m = max(worst.values())
    return Report("lambda-properties", samples, seed, tol, m, m < tol, dict(worst))


def verify_simple_transitivity(inst: LsbInstance, samples: int = 100,
                               seed: int = 42, tol: float = 1e-8) -> Report:
    """rho(a)(e) = a and rho(a o b)(c) = rho(a)(rho(b)(c))."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    e = inst.identity()
    worst = {"orbit-at-identity": 0.0, "action-property": 0.0}
    for a, b, c in _samples(inst, samples, seed, 3):
        r = inst.distance(inst.rho(a, e), a)
        worst["orbit-at-identity"] = max(worst["orbit-at-identity"], r)
        r = inst.distance(inst.rho(inst.circ(a, b), c), inst.rho(a, inst.rho(b, c)))
        worst["action-property"] = max(worst["action-property"], r)
    m = max(worst.values())
    return Report("simple-transitivity", samples, seed, tol, m, m < tol, dict(worst))


def lambda_nontrivial(inst: LsbInstance, samples: int = 100, seed: int = 42,
                      threshold: float = 1e-6) -> tuple[bool, float]:
    """Whether lambda deviates from the identity map on samples."""
    worst = 0.0
    for a, b in _samples(inst, samples, seed, 2):
        worst = max(worst, inst.distance(inst.lambda_map(a, b), b))
    return worst > threshold, worst


# ---------------------------------------------------------------------------
# Post-Lie extraction


@dataclass
class Extraction:
    structure: PostLieStructure
    circ: LieAlgebra
    dot_float: np.ndarray
    circ_float: np.ndarray
    triangle_float: np.ndarray
    axiom1_residual: float
    axioms_pass: bool
    axioms_violation: tuple | None


def extract_postlie(inst: LsbInstance, h: float = 1e-3,
                    consistency_tol: float = 1e-4,
                    blockwise: bool = True) -> Extraction:
    """Differentiate the instance at the identity.

    triangle[i][j] is the mixed second derivative of
    log(lambda_{exp(s e_i)}(exp(t e_j))); dot and circ tensors come from
    the group-commutator extraction of each law.  The float tensors must
    satisfy circ - dot = antisymmetrization(triangle) within
    ``consistency_tol``; they are then rationalized (denominator <= 8)
    and the post-Lie axioms are re-checked exactly.

    Product instances have componentwise laws, so their tensors are
    block-diagonal; with ``blockwise`` the factors are extracted
    separately and assembled (the assembled structure is still checked
    exactly).
    """
    if blockwise and inst.factors is not None:
        return _extract_product(inst, h, consistency_tol)
    g = inst.group
    n = inst.dim
    basis = np.eye(n)

    def mixed(i, j, hh):
        def m(s, t):
            return g.log_chart(
                inst.lambda_map(g.exp_chart(s * basis[i]), g.exp_chart(t * basis[j]))
            )

        return (m(hh, hh) - m(hh, -hh) - m(-hh, hh) + m(-hh, -hh)) / (4.0 * hh * hh)

    triangle = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            triangle[i, j] = (4.0 * mixed(i, j, h / 2.0) - mixed(i, j, h)) / 3.0

    dot_float = bracket_tensor_numeric(
        n, g.exp_chart, g.log_chart, g.multiply, g.inverse, h
    )
    circ_float = bracket_tensor_numeric(
        n, g.exp_chart, g.log_chart, inst.circ, inst.circ_inv, h
    )

    antisym = triangle - np.transpose(triangle, (1, 0, 2))
    axiom1_residual = float(np.max(np.abs(circ_float - dot_float - antisym)))
    if axiom1_residual > consistency_tol:
        raise ValueError(
            f"extraction inconsistent: |circ - dot - antisym(triangle)| = "
            f"{axiom1_residual:.3e} exceeds {consistency_tol}"
        )

    dot = LieAlgebra(f"{inst.name}:dot", n, rationalize_tensor(dot_float))
    structure = PostLieStructure(dot, rationalize_tensor(triangle))
    circ = LieAlgebra(f"{inst.name}:circ", n, rationalize_tensor(circ_float))
    derived = derive_circ(structure, check=False)
    if derived.c != circ.c:
        raise ValueError(
            "extraction inconsistent: rationalized circ does not equal "
            "dot + antisymmetrized triangle"
        )
    ok, violation = check_axioms(structure)
    return Extraction(
        structure, circ, dot_float, circ_float, triangle,
        axiom1_residual, ok, violation,
    )


def _extract_product(inst: LsbInstance, h: float, consistency_tol: float) -> Extraction:
    parts = [extract_postlie(f, h, consistency_tol) for f in inst.factors]
    n = inst.dim
    dims = [f.dim for f in inst.factors]
    offsets = np.cumsum([0] + dims)

    def assemble_float(pick):
        out = np.zeros((n, n, n))
        for p, o, d in zip(parts, offsets, dims):
            out[o : o + d, o : o + d, o : o + d] = pick(p)
        return out

    dot_float = assemble_float(lambda p: p.dot_float)
    circ_float = assemble_float(lambda p: p.circ_float)
    triangle_float = assemble_float(lambda p: p.triangle_float)

    dot = parts[0].structure.dot
    circ = parts[0].circ
    for p in parts[1:]:
        dot = direct_sum(dot, p.structure.dot)
        circ = direct_sum(circ, p.circ)
    dot = LieAlgebra(f"{inst.name}:dot", n, dot.c)
    circ = LieAlgebra(f"{inst.name}:circ", n, circ.c)
    triangle = [[[Q0] * n for _ in range(n)] for _ in range(n)]
    for p, o, d in zip(parts, offsets, dims):
        t = p.structure.triangle
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    triangle[o + i][o + j][o + k] = t[i][j][k]
    structure = PostLieStructure(dot, triangle)
    ok, violation = check_axioms(structure)
    return Extraction(
        structure, circ, dot_float, circ_float, triangle_float,
        max(p.axiom1_residual for p in parts), ok, violation,
    )
