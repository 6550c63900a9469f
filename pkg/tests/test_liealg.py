import random
from fractions import Fraction as Q

import pytest

from liebrace import liealg as la
from liebrace.exactlin import RationalMatrix, rank
from liebrace.liealg import (
    LieAlgebra,
    abelian_algebra,
    ad_commutant_dim,
    aff1_algebra,
    an_algebra,
    bracket,
    center,
    classify,
    derived_series,
    direct_sum,
    from_json,
    gl_algebra,
    heisenberg3_algebra,
    invariant_battery,
    jacobi_check,
    killing_form,
    killing_signature,
    lower_central_series,
    opposite,
    radical,
    sl2_algebra,
    sl3_algebra,
    so2_algebra,
    so3_algebra,
    so3_semidirect_r3_algebra,
    su2_algebra,
    to_json,
)

H3 = heisenberg3_algebra()
E = lambda n, i: [Q(1) if j == i else Q(0) for j in range(n)]


def test_bracket_heisenberg():
    assert bracket(H3, E(3, 0), E(3, 1)) == [Q(0), Q(0), Q(1)]


def test_bracket_antisymmetry_on_diagonal():
    rng = random.Random(3)
    g = sl3_algebra()
    for _ in range(10):
        x = [Q(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(g.dim)]
        assert all(v == 0 for v in bracket(g, x, x))


def test_bracket_abelian():
    g = abelian_algebra(3)
    assert bracket(g, E(3, 0), E(3, 1)) == [Q(0)] * 3


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        bracket(H3, [1, 0], [0, 1, 0])


def test_jacobi_pass():
    for g in (H3, abelian_algebra(4), sl2_algebra(), sl3_algebra(), su2_algebra()):
        assert jacobi_check(g) == (True, None)


def test_jacobi_fail_reports_triple():
    # [e1,e2]=e3, [e1,e3]=e1: the cyclic sum at (e1,e2,e3) is -e3 != 0
    broken = LieAlgebra.from_brackets("broken", 3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    ok, triple = jacobi_check(broken)
    assert not ok
    assert triple == (0, 1, 2)


def test_derived_series():
    assert derived_series(aff1_algebra()) == ([2, 1, 0], True)
    assert derived_series(H3) == ([3, 1, 0], True)
    assert derived_series(sl2_algebra()) == ([3, 3], False)


def test_lower_central_series():
    assert lower_central_series(H3) == ([3, 1, 0], True)
    assert lower_central_series(aff1_algebra()) == ([2, 1, 1], False)
    assert lower_central_series(abelian_algebra(5)) == ([5, 0], True)


def test_killing_abelian_zero():
    assert killing_form(abelian_algebra(3)) == RationalMatrix.zeros(3, 3)


def test_killing_sl2_hef_basis():
    # classic basis [h,e]=2e, [h,f]=-2f, [e,f]=h
    g = LieAlgebra.from_brackets(
        "sl2-hef", 3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    )
    assert killing_form(g) == RationalMatrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])


def test_killing_heisenberg_zero():
    assert killing_form(H3) == RationalMatrix.zeros(3, 3)


def test_radical_dims():
    assert len(radical(sl2_algebra())) == 0
    assert len(radical(H3)) == 3
    solv2 = aff1_algebra()
    assert len(radical(direct_sum(so3_algebra(), solv2))) == 2


def test_ad_commutant_dims():
    assert ad_commutant_dim(sl2_algebra()) == 1
    assert ad_commutant_dim(direct_sum(sl2_algebra(), sl2_algebra())) == 2
    assert ad_commutant_dim(abelian_algebra(3)) == 9


def test_classify_catalog():
    assert classify(abelian_algebra(2)) == "ab"
    assert classify(H3) == "nil"
    assert classify(aff1_algebra()) == "solv"
    assert classify(an_algebra(2)) == "solv"
    assert classify(an_algebra(3)) == "solv"
    assert classify(sl2_algebra()) == "simp"
    assert classify(sl3_algebra()) == "simp"
    assert classify(so3_algebra()) == "simp"
    assert classify(su2_algebra()) == "simp"
    assert classify(direct_sum(sl2_algebra(), sl2_algebra())) == "ssimp"
    assert classify(gl_algebra(2)) == "mixed"
    assert classify(so3_semidirect_r3_algebra()) == "mixed"


def test_classify_spec_examples():
    assert classify(direct_sum(so2_algebra(), an_algebra(2))) == "solv"
    mix = direct_sum(so3_algebra(), an_algebra(3))
    assert classify(mix) == "mixed"
    assert len(radical(mix)) == 5


def test_classify_precedence_exclusive():
    # each catalog algebra lands in exactly one label by precedence
    for g in (
        abelian_algebra(1),
        H3,
        aff1_algebra(),
        sl2_algebra(),
        direct_sum(sl2_algebra(), sl2_algebra()),
        gl_algebra(2),
    ):
        assert classify(g) in la.CLASS_LABELS


def test_direct_sum_classification():
    assert classify(direct_sum(abelian_algebra(1), abelian_algebra(2))) == "ab"
    assert classify(direct_sum(H3, abelian_algebra(1))) == "nil"


def _padded(dims, length):
    return dims + [dims[-1]] * (length - len(dims))


def test_direct_sum_derived_dims_add():
    pairs = [
        (H3, aff1_algebra()),
        (sl2_algebra(), H3),
        (an_algebra(2), abelian_algebra(2)),
    ]
    for g1, g2 in pairs:
        d1, _ = derived_series(g1)
        d2, _ = derived_series(g2)
        ds, _ = derived_series(direct_sum(g1, g2))
        n = max(len(d1), len(d2), len(ds))
        assert _padded(ds, n) == [
            a + b for a, b in zip(_padded(d1, n), _padded(d2, n))
        ]


def test_center_dims():
    assert len(center(H3)) == 1
    assert len(center(direct_sum(abelian_algebra(3), su2_algebra()))) == 3
    assert len(center(so3_semidirect_r3_algebra())) == 0


def test_radical_iff_killing_nonsingular():
    for g in (
        abelian_algebra(2),
        H3,
        aff1_algebra(),
        sl2_algebra(),
        sl3_algebra(),
        so3_algebra(),
        direct_sum(sl2_algebra(), sl2_algebra()),
        gl_algebra(2),
        so3_semidirect_r3_algebra(),
    ):
        semisimple = len(radical(g)) == 0
        assert semisimple == (rank(killing_form(g)) == g.dim)


def test_derived_contained_in_lower_central():
    for g in (H3, aff1_algebra(), sl2_algebra(), gl_algebra(2), an_algebra(3)):
        d, _ = derived_series(g)
        l, _ = lower_central_series(g)
        n = max(len(d), len(l))
        assert all(a <= b for a, b in zip(_padded(d, n), _padded(l, n)))


def test_killing_ad_invariance():
    rng = random.Random(21)
    for g in (sl2_algebra(), so3_algebra(), aff1_algebra(), gl_algebra(2)):
        k = killing_form(g)

        def kform(u, v):
            return sum(a * b for a, b in zip(k.matvec(u), v))

        for _ in range(10):
            x, y, z = (
                [Q(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(g.dim)]
                for _ in range(3)
            )
            assert kform(bracket(g, x, y), z) + kform(y, bracket(g, x, z)) == 0


def test_killing_signature():
    # sl2 has signature (2, 1); so3 is negative definite
    assert killing_signature(sl2_algebra()) == (2, 1, 0)
    assert killing_signature(so3_algebra()) == (0, 3, 0)
    assert killing_signature(H3) == (0, 0, 3)


def test_opposite_isomorphism_invariants():
    g = sl3_algebra()
    assert jacobi_check(opposite(g)) == (True, None)
    assert invariant_battery(opposite(g)) == invariant_battery(g)


def test_json_roundtrip():
    for g in (H3, sl3_algebra(), gl_algebra(2)):
        again = from_json(to_json(g))
        assert again.c == g.c
        assert again.dim == g.dim


def test_from_brackets_rejects_bad_pairs():
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets("bad", 2, {(1, 0): {0: 1}})
