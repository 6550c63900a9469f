"""Catalog of parametrized Lie groups with exact laws and charts.

Every group exposes: ``multiply``, ``inverse``, ``identity``, a chart
around the identity (``exp_chart`` / ``log_chart`` with d(exp)_0 = id),
and its exact catalog Lie algebra in the chart basis.  Elements are
plain data owned by their group object: coordinate vectors for globally
charted kinds, square matrices for matrix kinds, unit quaternions for
su2, and tuples of factor elements for products and semidirect products.

Charts are global for the solvable and nilpotent kinds and local near
the identity for the compact kinds; random sampling stays inside the
coordinate box [-1, 1] to keep logarithms convergent.

Bracket extraction uses the group-commutator second derivative in the
chart; this is chart-invariant for any chart with identity derivative,
so composite kinds may use the componentwise chart of their factors.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.linalg import expm, logm

from .exactlin import Q, rational
from .liealg import (
    LieAlgebra,
    abelian_algebra,
    aff1_algebra,
    an_algebra,
    an_basis_matrices,
    direct_sum,
    heisenberg3_algebra,
    sl2_basis_matrices,
    sl2_algebra,
    sl3_basis_matrices,
    sl3_algebra,
    so2_algebra,
    so3_algebra,
    so3_basis_matrices,
    su2_algebra,
)


def _to_float(mats):
    return [np.array([[float(x) for x in row] for row in m]) for m in mats]


class Group:
    """Base of the catalog; subclasses fix the law, chart and algebra."""

    name: str
    dim: int

    def multiply(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def identity(self):
        raise NotImplementedError

    def exp_chart(self, v):
        raise NotImplementedError

    def log_chart(self, a):
        raise NotImplementedError

    def algebra(self) -> LieAlgebra:
        raise NotImplementedError

    def element_array(self, a) -> np.ndarray:
        """Canonical flat representation used for residual norms."""
        raise NotImplementedError

    def perturb(self, a, delta: float):
        """Shift one canonical output coordinate (mutation testing)."""
        raise NotImplementedError

    def validate_element(self, a, tol: float = 1e-10) -> bool:
        return True

    def to_json(self) -> dict:
        raise NotImplementedError

    def distance(self, a, b) -> float:
        return float(np.max(np.abs(self.element_array(a) - self.element_array(b))))

    def random_element(self, rng: np.random.Generator):
        return self.exp_chart(rng.uniform(-1.0, 1.0, self.dim))

    def __repr__(self):
        return f"<group {self.name}>"


class _CoordGroup(Group):
    """Groups whose elements are coordinate vectors."""

    def identity(self):
        return np.zeros(self.dim)

    def element_array(self, a):
        return np.asarray(a, dtype=float)

    def perturb(self, a, delta):
        out = np.array(a, dtype=float)
        out[0] += delta
        return out


class Abelian(_CoordGroup):
    def __init__(self, n: int):
        self.name = f"abelian{n}"
        self.dim = n

    def multiply(self, a, b):
        return np.asarray(a) + np.asarray(b)

    def inverse(self, a):
        return -np.asarray(a)

    def exp_chart(self, v):
        return np.asarray(v, dtype=float)

    def log_chart(self, a):
        return np.asarray(a, dtype=float)

    def algebra(self):
        return abelian_algebra(self.dim)

    def to_json(self):
        return {"group": "abelian", "n": self.dim}


class Heisenberg3(_CoordGroup):
    """R^3 with (x,y,z).(x',y',z') = (x+x', y+y', z+z'+xy')."""

    name = "heisenberg3"
    dim = 3

    def multiply(self, a, b):
        return np.array([a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])

    def inverse(self, a):
        return np.array([-a[0], -a[1], -a[2] + a[0] * a[1]])

    def exp_chart(self, v):
        # step-2 nilpotent: one-parameter subgroups are quadratic in t
        return np.array([v[0], v[1], v[2] + v[0] * v[1] / 2.0])

    def log_chart(self, a):
        return np.array([a[0], a[1], a[2] - a[0] * a[1] / 2.0])

    def algebra(self):
        return heisenberg3_algebra()

    def to_json(self):
        return {"group": "heisenberg3"}


def _expm1_over(a: float) -> float:
    # (e^a - 1)/a, stable near 0
    if abs(a) < 1e-6:
        return 1.0 + a / 2.0 + a * a / 6.0
    return np.expm1(a) / a


class Aff1(_CoordGroup):
    """Aff(R) in coordinates (a, b): (a,b).(a',b') = (a+a', b + e^a b')."""

    name = "aff1"
    dim = 2

    def multiply(self, x, y):
        return np.array([x[0] + y[0], x[1] + np.exp(x[0]) * y[1]])

    def inverse(self, x):
        return np.array([-x[0], -np.exp(-x[0]) * x[1]])

    def exp_chart(self, v):
        return np.array([v[0], v[1] * _expm1_over(v[0])])

    def log_chart(self, a):
        return np.array([a[0], a[1] / _expm1_over(a[0])])

    def algebra(self):
        return aff1_algebra()

    def to_json(self):
        return {"group": "aff1"}


class _MatrixGroup(Group):
    """Matrix kinds: elements are square float matrices; the chart is the
    matrix exponential over a fixed algebra basis."""

    basis: list[np.ndarray]

    def _init_basis(self, mats):
        self.basis = _to_float(mats)
        self.dim = len(self.basis)
        self.size = self.basis[0].shape[0]
        stack = np.column_stack([m.flatten() for m in self.basis])
        self._coord_proj = np.linalg.pinv(stack)

    def multiply(self, a, b):
        return np.asarray(a) @ np.asarray(b)

    def inverse(self, a):
        return np.linalg.inv(np.asarray(a))

    def identity(self):
        return np.eye(self.size)

    def exp_chart(self, v):
        m = sum(float(c) * x for c, x in zip(v, self.basis))
        return expm(m)

    def log_chart(self, a):
        lg = logm(np.asarray(a))
        if np.max(np.abs(lg.imag)) > 1e-9:
            raise ValueError(f"{self.name}: element outside the chart's log domain")
        return self._coord_proj @ lg.real.flatten()

    def element_array(self, a):
        return np.asarray(a, dtype=float).flatten()

    def perturb(self, a, delta):
        out = np.array(a, dtype=float)
        out[0, 0] += delta
        return out


class SpecialLinear(_MatrixGroup):
    def __init__(self, n: int):
        if n not in (2, 3):
            raise ValueError("sl catalog covers n in {2, 3}")
        self.n = n
        self.name = f"sl{n}"
        self._init_basis(sl2_basis_matrices() if n == 2 else sl3_basis_matrices())

    def algebra(self):
        return sl2_algebra() if self.n == 2 else sl3_algebra()

    def validate_element(self, a, tol=1e-10):
        return abs(np.linalg.det(np.asarray(a)) - 1.0) < tol

    def to_json(self):
        return {"group": "sl", "n": self.n}


class SO3(_MatrixGroup):
    name = "so3"

    def __init__(self):
        self._init_basis(so3_basis_matrices())

    def algebra(self):
        return so3_algebra()

    def inverse(self, a):
        return np.asarray(a).T

    def validate_element(self, a, tol=1e-10):
        a = np.asarray(a)
        return (
            abs(np.linalg.det(a) - 1.0) < tol
            and np.max(np.abs(a.T @ a - np.eye(3))) < 10 * tol
        )

    def to_json(self):
        return {"group": "so", "n": 3}


class SO2(_CoordGroup):
    """Rotation angle chart, local near the identity."""

    name = "so2"
    dim = 1

    def multiply(self, a, b):
        return np.asarray(a) + np.asarray(b)

    def inverse(self, a):
        return -np.asarray(a)

    def exp_chart(self, v):
        return np.asarray(v, dtype=float)

    def log_chart(self, a):
        return np.asarray(a, dtype=float)

    def matrix(self, a):
        c, s = np.cos(a[0]), np.sin(a[0])
        return np.array([[c, -s], [s, c]])

    def algebra(self):
        return so2_algebra()

    def to_json(self):
        return {"group": "so", "n": 2}


class SU2(Group):
    """Unit quaternions (w, x, y, z); chart coords v rotate by angle |v|,
    i.e. exp(v) = (cos(|v|/2), sin(|v|/2) v_hat)."""

    name = "su2"
    dim = 3

    def multiply(self, a, b):
        w1, x1, y1, z1 = a
        w2, x2, y2, z2 = b
        return np.array(
            [
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            ]
        )

    def inverse(self, a):
        return np.array([a[0], -a[1], -a[2], -a[3]])

    def identity(self):
        return np.array([1.0, 0.0, 0.0, 0.0])

    def exp_chart(self, v):
        v = np.asarray(v, dtype=float)
        theta = np.linalg.norm(v)
        if theta < 1e-12:
            return np.array([1.0, v[0] / 2.0, v[1] / 2.0, v[2] / 2.0])
        return np.concatenate(
            [[np.cos(theta / 2.0)], np.sin(theta / 2.0) * v / theta]
        )

    def log_chart(self, a):
        w = float(np.clip(a[0], -1.0, 1.0))
        vec = np.asarray(a[1:], dtype=float)
        s = np.linalg.norm(vec)
        if s < 1e-12:
            return 2.0 * vec
        theta = 2.0 * np.arctan2(s, w)
        return theta * vec / s

    def rotate(self, a, v):
        """Adjoint action on R^3: conjugation q v q^{-1} on pure parts."""
        q = np.concatenate([[0.0], np.asarray(v, dtype=float)])
        out = self.multiply(self.multiply(a, q), self.inverse(a))
        return out[1:]

    def element_array(self, a):
        return np.asarray(a, dtype=float)

    def perturb(self, a, delta):
        out = np.array(a, dtype=float)
        out[0] += delta
        return out

    def validate_element(self, a, tol=1e-10):
        return abs(np.linalg.norm(np.asarray(a)) - 1.0) < tol

    def algebra(self):
        return su2_algebra()

    def to_json(self):
        return {"group": "su2"}


class TriangularAN(_MatrixGroup):
    """AN Iwasawa factor of SL_n, parametrized by (traceless log-diagonal,
    strict upper entries); exp/log are closed-form in this chart."""

    def __init__(self, n: int):
        if n not in (2, 3):
            raise ValueError("an catalog covers n in {2, 3}")
        self.n = n
        self.name = f"an{n}"
        self._init_basis(an_basis_matrices(n))

    def algebra(self):
        return an_algebra(self.n)

    def exp_chart(self, v):
        n = self.n
        diag_gen = sum(float(c) * x for c, x in zip(v[: n - 1], self.basis[: n - 1]))
        a = np.diag(np.exp(np.diag(diag_gen)))
        nm = np.eye(n)
        idx = n - 1
        for r in range(n):
            for c in range(r + 1, n):
                nm[r, c] = float(v[idx])
                idx += 1
        return a @ nm

    def log_chart(self, m):
        n = self.n
        m = np.asarray(m)
        d = np.diag(m)
        if np.any(d <= 0):
            raise ValueError("an element must have positive diagonal")
        ell = np.log(d)
        t = np.cumsum(ell)[: n - 1]
        nm = np.diag(1.0 / d) @ m
        u = [nm[r, c] for r in range(n) for c in range(r + 1, n)]
        return np.concatenate([t, u])

    def validate_element(self, a, tol=1e-10):
        a = np.asarray(a)
        lower_ok = all(
            abs(a[r, c]) < tol for r in range(self.n) for c in range(r)
        )
        return lower_ok and np.all(np.diag(a) > 0)

    def to_json(self):
        return {"group": "an", "n": self.n}


# ---------------------------------------------------------------------------
# Automorphism actions for semidirect products (g1 acts on g2)


class Action:
    """Named Lie group homomorphism g1 -> Aut(g2) with its exact
    derivative matrices D_i (one per g1 chart basis direction)."""

    def __init__(self, action_id, g1, g2, apply_fn, derivative):
        self.action_id = action_id
        self.g1 = g1
        self.g2 = g2
        self._apply = apply_fn
        self.derivative = derivative  # list of g2.dim x g2.dim Fraction rows

    def __call__(self, a, b):
        return self._apply(a, b)


def make_action(action_id: str, g1: Group, g2: Group) -> Action:
    if action_id == "aff1_exp":
        if not (isinstance(g1, Abelian) and g1.dim == 1 and isinstance(g2, Abelian) and g2.dim == 1):
            raise ValueError("aff1_exp needs abelian(1) acting on abelian(1)")
        return Action(
            action_id, g1, g2,
            lambda a, b: np.exp(a[0]) * np.asarray(b),
            [[[Q(1)]]],
        )
    if action_id == "h3_shear":
        if not (isinstance(g1, Abelian) and g1.dim == 1 and isinstance(g2, Abelian) and g2.dim == 2):
            raise ValueError("h3_shear needs abelian(1) acting on abelian(2)")
        return Action(
            action_id, g1, g2,
            lambda a, b: np.array([b[0], b[1] + a[0] * b[0]]),
            [[[Q(0), Q(0)], [Q(1), Q(0)]]],
        )
    if action_id == "h3_dilation":
        if not (isinstance(g1, Abelian) and g1.dim == 1 and isinstance(g2, Heisenberg3)):
            raise ValueError("h3_dilation needs abelian(1) acting on heisenberg3")
        return Action(
            action_id, g1, g2,
            lambda a, b: np.array(
                [np.exp(a[0]) * b[0], np.exp(a[0]) * b[1], np.exp(2.0 * a[0]) * b[2]]
            ),
            [[[Q(1), Q(0), Q(0)], [Q(0), Q(1), Q(0)], [Q(0), Q(0), Q(2)]]],
        )
    if action_id == "inner":
        if g1.to_json() != g2.to_json():
            raise ValueError("inner action needs both factors equal")
        alg = g1.algebra()
        deriv = [
            [[alg.c[i][j][k] for j in range(alg.dim)] for k in range(alg.dim)]
            for i in range(alg.dim)
        ]
        return Action(
            action_id, g1, g2,
            lambda a, b: g1.multiply(g1.multiply(a, b), g1.inverse(a)),
            deriv,
        )
    if action_id == "su2_adjoint":
        if not (isinstance(g1, SU2) and isinstance(g2, Abelian) and g2.dim == 3):
            raise ValueError("su2_adjoint needs su2 acting on abelian(3)")
        ls = so3_basis_matrices()
        deriv = [
            [[rational(ls[i][k][j]) for j in range(3)] for k in range(3)]
            for i in range(3)
        ]
        return Action(action_id, g1, g2, lambda a, b: g1.rotate(a, b), deriv)
    raise ValueError(f"unknown action {action_id!r}")


class Product(Group):
    def __init__(self, factors: list[Group]):
        self.factors = list(factors)
        self.name = "x".join(f.name for f in self.factors)
        self.dim = sum(f.dim for f in self.factors)

    def _split(self, v):
        out, i = [], 0
        for f in self.factors:
            out.append(np.asarray(v[i : i + f.dim], dtype=float))
            i += f.dim
        return out

    def multiply(self, a, b):
        return tuple(f.multiply(x, y) for f, x, y in zip(self.factors, a, b))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def exp_chart(self, v):
        return tuple(f.exp_chart(p) for f, p in zip(self.factors, self._split(v)))

    def log_chart(self, a):
        return np.concatenate(
            [f.log_chart(x) for f, x in zip(self.factors, a)]
        )

    def element_array(self, a):
        return np.concatenate(
            [f.element_array(x) for f, x in zip(self.factors, a)]
        )

    def perturb(self, a, delta):
        return (self.factors[0].perturb(a[0], delta),) + tuple(a[1:])

    def validate_element(self, a, tol=1e-10):
        return all(f.validate_element(x, tol) for f, x in zip(self.factors, a))

    def algebra(self):
        alg = self.factors[0].algebra()
        for f in self.factors[1:]:
            alg = direct_sum(alg, f.algebra())
        return alg

    def to_json(self):
        return {"group": "product", "factors": [f.to_json() for f in self.factors]}


class Semidirect(Group):
    """g1 acting on g2: (a1, b1).(a2, b2) = (a1 a2, b1 . action(a1)(b2)).

    The second factor is the normal subgroup."""

    def __init__(self, g1: Group, g2: Group, action_id: str):
        self.g1, self.g2 = g1, g2
        self.action = make_action(action_id, g1, g2)
        self.name = f"{g1.name}:|x{g2.name}"
        self.dim = g1.dim + g2.dim

    def multiply(self, a, b):
        return (
            self.g1.multiply(a[0], b[0]),
            self.g2.multiply(a[1], self.action(a[0], b[1])),
        )

    def inverse(self, a):
        inv1 = self.g1.inverse(a[0])
        return (inv1, self.action(inv1, self.g2.inverse(a[1])))

    def identity(self):
        return (self.g1.identity(), self.g2.identity())

    def exp_chart(self, v):
        # componentwise chart; admissible (identity derivative), which is
        # all the bracket and lambda differentiation needs
        return (
            self.g1.exp_chart(np.asarray(v[: self.g1.dim], dtype=float)),
            self.g2.exp_chart(np.asarray(v[self.g1.dim :], dtype=float)),
        )

    def log_chart(self, a):
        return np.concatenate([self.g1.log_chart(a[0]), self.g2.log_chart(a[1])])

    def element_array(self, a):
        return np.concatenate(
            [self.g1.element_array(a[0]), self.g2.element_array(a[1])]
        )

    def perturb(self, a, delta):
        return (self.g1.perturb(a[0], delta), a[1])

    def validate_element(self, a, tol=1e-10):
        return self.g1.validate_element(a[0], tol) and self.g2.validate_element(a[1], tol)

    def algebra(self):
        """Exact semidirect sum: [(x1,x2),(y1,y2)] =
        ([x1,y1], [x2,y2] + D(x1) y2 - D(y1) x2)."""
        a1, a2 = self.g1.algebra(), self.g2.algebra()
        n1, n2 = a1.dim, a2.dim
        n = n1 + n2
        c = [[[Q(0)] * n for _ in range(n)] for _ in range(n)]
        for i in range(n1):
            for j in range(n1):
                for k in range(n1):
                    c[i][j][k] = a1.c[i][j][k]
        for i in range(n2):
            for j in range(n2):
                for k in range(n2):
                    c[n1 + i][n1 + j][n1 + k] = a2.c[i][j][k]
        d = self.action.derivative
        for i in range(n1):
            for j in range(n2):
                for k in range(n2):
                    v = rational(d[i][k][j])
                    c[i][n1 + j][n1 + k] = v
                    c[n1 + j][i][n1 + k] = -v
        return LieAlgebra(self.name, n, c)

    def to_json(self):
        return {
            "group": "semidirect",
            "g1": self.g1.to_json(),
            "g2": self.g2.to_json(),
            "action": self.action.action_id,
        }


# named composites used by the existence-table witnesses
def dilation_semidirect_h3() -> Semidirect:
    return Semidirect(Abelian(1), Heisenberg3(), "h3_dilation")


def ad_semidirect(h: Group) -> Semidirect:
    return Semidirect(h, h, "inner")


def adjoint_semidirect_su2() -> Semidirect:
    return Semidirect(SU2(), Abelian(3), "su2_adjoint")


def group_from_json(data: dict) -> Group:
    kind = data.get("group")
    if kind == "abelian":
        return Abelian(int(data["n"]))
    if kind == "heisenberg3":
        return Heisenberg3()
    if kind == "aff1":
        return Aff1()
    if kind == "sl":
        return SpecialLinear(int(data["n"]))
    if kind == "so":
        return SO3() if int(data["n"]) == 3 else SO2()
    if kind == "su2":
        return SU2()
    if kind == "an":
        return TriangularAN(int(data["n"]))
    if kind == "product":
        return Product([group_from_json(f) for f in data["factors"]])
    if kind == "semidirect":
        return Semidirect(
            group_from_json(data["g1"]),
            group_from_json(data["g2"]),
            str(data["action"]),
        )
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# Iwasawa decomposition


def iwasawa(g: Group, m: np.ndarray):
    """g = k a n for g in SL_n: Gram-Schmidt QR with positive-diagonal
    normalization, then R split into diagonal and unit upper parts."""
    if not isinstance(g, SpecialLinear):
        raise ValueError("iwasawa factorization is provided for sl(n) only")
    m = np.asarray(m, dtype=float)
    q, r = np.linalg.qr(m)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    k = q * d
    r = r * d[:, None]
    a = np.diag(np.diag(r))
    n = np.diag(1.0 / np.diag(r)) @ r
    return k, a, n


# ---------------------------------------------------------------------------
# Numerical bracket extraction and rationalization


def bracket_tensor_numeric(dim, exp_fn, log_fn, mul_fn, inv_fn, h: float = 1e-3):
    """c[i][j][.] as the t^2 coefficient of
    log(exp(t e_i) exp(t e_j) exp(t e_i)^-1 exp(t e_j)^-1),
    by central differences with one Richardson level."""
    basis = np.eye(dim)

    def comm_log(i, j, t):
        x, y = exp_fn(t * basis[i]), exp_fn(t * basis[j])
        k = mul_fn(mul_fn(mul_fn(x, y), inv_fn(x)), inv_fn(y))
        return log_fn(k)

    c = np.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue

            def second(t):
                return (comm_log(i, j, t) + comm_log(i, j, -t)) / (2.0 * t * t)

            c[i, j] = (4.0 * second(h / 2.0) - second(h)) / 3.0
    return c


def structure_constants_numeric(g: Group, h: float = 1e-3) -> np.ndarray:
    """Float structure tensor of the group law in its chart."""
    return bracket_tensor_numeric(
        g.dim, g.exp_chart, g.log_chart, g.multiply, g.inverse, h
    )


class InconclusiveExtraction(ValueError):
    """A numerically extracted entry is not near a small rational."""


def rationalize_value(
    x: float, max_den: int = 8, zero_tol: float = 1e-4, fit_tol: float = 1e-4
) -> Fraction:
    if abs(x) < zero_tol:
        return Q(0)
    frac = Fraction(x).limit_denominator(max_den)
    if abs(x - float(frac)) > fit_tol:
        raise InconclusiveExtraction(
            f"extraction inconclusive: {x!r} is not within {fit_tol} of a "
            f"rational with denominator <= {max_den}"
        )
    return frac


def rationalize_tensor(c: np.ndarray, **kw) -> list:
    return [
        [[rationalize_value(float(x), **kw) for x in row] for row in plane]
        for plane in c
    ]


def numeric_algebra(g: Group, name: str | None = None, h: float = 1e-3) -> LieAlgebra:
    """Extract, rationalize and wrap the group's chart Lie algebra."""
    c = rationalize_tensor(structure_constants_numeric(g, h))
    return LieAlgebra(name or f"{g.name}:numeric", g.dim, c)
