import numpy as np
import pytest

from liebrace import lsb
from liebrace.liealg import (
    aff1_algebra,
    an_algebra,
    classify,
    direct_sum,
    invariant_battery,
    opposite,
    sl2_algebra,
    so2_algebra,
)
from liebrace.matgrp import group_from_json

AB1 = {"group": "abelian", "n": 1}
AB2 = {"group": "abelian", "n": 2}
AB3 = {"group": "abelian", "n": 3}
H3 = {"group": "heisenberg3"}
SL2 = {"group": "sl", "n": 2}
SL3 = {"group": "sl", "n": 3}

AFF_TWIST = lsb.semidirect_twist(AB1, AB1, "aff1_exp")
H3_ZAPPA = lsb.zappa(H3, "h3_normal_split")
SL2_ZAPPA = lsb.zappa(SL2, "iwasawa_k_an")


def test_trivial_circ_equals_dot():
    inst = lsb.realize(lsb.trivial(SL2))
    rng = np.random.default_rng(0)
    for _ in range(10):
        a, b = (inst.group.random_element(rng) for _ in range(2))
        assert inst.distance(inst.circ(a, b), inst.dot(a, b)) < 1e-15


def test_opposite_trivial_reverses():
    inst = lsb.realize(lsb.opposite_trivial(SL2))
    rng = np.random.default_rng(0)
    a, b = (inst.group.random_element(rng) for _ in range(2))
    assert inst.distance(inst.circ(a, b), inst.dot(b, a)) < 1e-15


def test_zappa_split_reconstructs():
    for spec in (H3_ZAPPA, SL2_ZAPPA, lsb.zappa({"group": "aff1"}, "aff1_split")):
        inst = lsb.realize(spec)
        rng = np.random.default_rng(1)
        e = inst.identity()
        a1, a2 = inst.split(e)
        assert inst.distance(inst.dot(a1, a2), e) < 1e-12
        for _ in range(20):
            a = inst.group.random_element(rng)
            a1, a2 = inst.split(a)
            assert inst.distance(inst.dot(a1, a2), a) < 1e-10


def test_semidirect_twist_aff_law():
    inst = lsb.realize(AFF_TWIST)
    rng = np.random.default_rng(2)
    for _ in range(20):
        a, b = (inst.group.random_element(rng) for _ in range(2))
        got = inst.circ(a, b)
        expect = (a[0] + b[0], a[1] + np.exp(a[0][0]) * b[1])
        assert inst.distance(got, expect) < 1e-14


def test_circ_inverse_is_two_sided():
    for spec in (AFF_TWIST, H3_ZAPPA, SL2_ZAPPA, lsb.trivial(H3)):
        inst = lsb.realize(spec)
        rng = np.random.default_rng(3)
        e = inst.identity()
        for _ in range(10):
            a = inst.group.random_element(rng)
            assert inst.distance(inst.circ(a, inst.circ_inv(a)), e) < 1e-10
            assert inst.distance(inst.circ(inst.circ_inv(a), a), e) < 1e-10


def test_lambda_trivial_brace_is_identity():
    inst = lsb.realize(lsb.trivial(SL2))
    rng = np.random.default_rng(4)
    for _ in range(10):
        a, b = (inst.group.random_element(rng) for _ in range(2))
        assert inst.distance(inst.lambda_map(a, b), b) < 1e-13


def test_lambda_aff_closed_form():
    inst = lsb.realize(AFF_TWIST)
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = (inst.group.random_element(rng) for _ in range(2))
        lam = inst.lambda_map(a, b)
        expect = (b[0], np.exp(a[0][0]) * b[1])
        assert inst.distance(lam, expect) < 1e-13


def test_lambda_fixed_points():
    # lambda_e = id and lambda_a(e) = e on every construction kind
    for spec in (lsb.trivial(H3), AFF_TWIST, H3_ZAPPA, SL2_ZAPPA,
                 lsb.product([AFF_TWIST, H3_ZAPPA])):
        inst = lsb.realize(spec)
        rng = np.random.default_rng(6)
        e = inst.identity()
        for _ in range(10):
            a = inst.group.random_element(rng)
            assert inst.distance(inst.lambda_map(e, a), a) < 1e-12
            assert inst.distance(inst.lambda_map(a, e), e) < 1e-12


def test_verify_lsb_trivial():
    report = lsb.verify_lsb(lsb.realize(lsb.trivial(SL2)), 100, 42, 1e-12)
    assert report.passed


def test_verify_lsb_zappa_sl2():
    report = lsb.verify_lsb(lsb.realize(SL2_ZAPPA), 200, 42, 1e-9)
    assert report.passed


def test_verify_lsb_detects_corruption():
    inst = lsb.realize(SL2_ZAPPA).mutated(0.1)
    report = lsb.verify_lsb(inst, 200, 42, 1e-6)
    assert not report.passed
    assert report.max_residual > 1e-2


def test_lambda_properties_zappa_sl3():
    report = lsb.verify_lambda_properties(lsb.realize(lsb.zappa(SL3, "iwasawa_k_an")),
                                          100, 42, 1e-8)
    assert report.passed
    assert set(report.detail) == {
        "automorphism", "homomorphism", "postlie-group", "reconstruction"
    }


def test_simple_transitivity():
    for spec in (lsb.trivial(H3), SL2_ZAPPA, lsb.product([AFF_TWIST, H3_ZAPPA])):
        report = lsb.verify_simple_transitivity(lsb.realize(spec), 100, 42, 1e-8)
        assert report.passed


def test_rho_orbit_identity_exact():
    inst = lsb.realize(SL2_ZAPPA)
    rng = np.random.default_rng(7)
    for _ in range(10):
        a = inst.group.random_element(rng)
        assert inst.distance(inst.rho(a, inst.identity()), a) < 1e-12


def test_samples_must_be_positive():
    inst = lsb.realize(lsb.trivial(H3))
    with pytest.raises(ValueError):
        lsb.verify_lsb(inst, 0)


def test_extract_trivial_h3_zero_triangle():
    ext = lsb.extract_postlie(lsb.realize(lsb.trivial(H3)))
    assert ext.structure.triangle_is_zero()
    assert ext.axioms_pass
    assert np.max(np.abs(ext.triangle_float)) < 1e-8


def test_extract_aff_twist_closed_form():
    ext = lsb.extract_postlie(lsb.realize(AFF_TWIST))
    expect = np.zeros((2, 2, 2))
    expect[0, 1, 1] = 1.0  # x > y = (0, x1 y2)
    assert np.max(np.abs(ext.triangle_float - expect)) < 1e-5
    assert classify(ext.structure.dot) == "ab"
    assert ext.circ.c == aff1_algebra().c
    assert ext.axioms_pass


def test_extract_zappa_sl2_tensors():
    ext = lsb.extract_postlie(lsb.realize(SL2_ZAPPA))
    assert ext.structure.dot.c == sl2_algebra().c
    # circ is K x AN transported through (a1, a2) -> a1 a2^{-1}: the
    # second block carries the opposite (isomorphic) an2 bracket
    expected = direct_sum(so2_algebra(), opposite(an_algebra(2)))
    assert ext.circ.c == expected.c
    assert ext.circ.c == lsb.realize(SL2_ZAPPA).expected_circ_algebra().c
    assert invariant_battery(ext.circ) == invariant_battery(
        direct_sum(so2_algebra(), an_algebra(2))
    )
    assert ext.axioms_pass


def test_extract_triangle_matches_lambda_projection():
    # zappa lambda is conjugation by the inverse AN part, so
    # e_i > e_j = -[proj_AN e_i, e_j] in the chart basis (W; H, E)
    from liebrace.liealg import bracket

    ext = lsb.extract_postlie(lsb.realize(SL2_ZAPPA))
    sl2 = sl2_algebra()
    for i in range(3):
        proj = [0, int(i == 1), int(i == 2)]  # kills the W component
        for j in range(3):
            ej = [int(j == t) for t in range(3)]
            expect = [-x for x in bracket(sl2, proj, ej)]
            assert list(ext.structure.triangle[i][j]) == expect


def test_product_residual_is_max_of_factors():
    f1 = lsb.realize(AFF_TWIST)
    f2 = lsb.realize(H3_ZAPPA)
    prod = lsb.realize(lsb.product([AFF_TWIST, H3_ZAPPA]))
    rng = np.random.default_rng(8)

    def residual(inst, a, b, c):
        lhs = inst.circ(a, inst.dot(b, c))
        rhs = inst.dot(inst.dot(inst.circ(a, b), inst.dot_inv(a)), inst.circ(a, c))
        return inst.distance(lhs, rhs)

    for _ in range(5):
        a, b, c = (prod.group.random_element(rng) for _ in range(3))
        assert residual(prod, a, b, c) == max(
            residual(f1, a[0], b[0], c[0]), residual(f2, a[1], b[1], c[1])
        )


def test_blockwise_extraction_matches_generic():
    spec = lsb.product([AFF_TWIST, H3_ZAPPA])
    inst = lsb.realize(spec)
    eb = lsb.extract_postlie(inst, blockwise=True)
    eg = lsb.extract_postlie(inst, blockwise=False)
    assert eb.structure.dot.c == eg.structure.dot.c
    assert eb.circ.c == eg.circ.c
    assert eb.structure.triangle == eg.structure.triangle


def test_expected_circ_algebra_per_construction():
    cases = [
        (lsb.trivial(H3), "nil"),
        (lsb.opposite_trivial(H3), "nil"),
        (H3_ZAPPA, "ab"),
        (lsb.zappa({"group": "aff1"}, "aff1_split"), "ab"),
        (AFF_TWIST, "solv"),
        (SL2_ZAPPA, "solv"),
    ]
    for spec, label in cases:
        inst = lsb.realize(spec)
        expected = inst.expected_circ_algebra()
        assert expected is not None
        assert classify(expected) == label
        ext = lsb.extract_postlie(inst)
        assert ext.circ.c == expected.c


def test_lambda_nontrivial_flag():
    nontrivial, dev = lsb.lambda_nontrivial(lsb.realize(SL2_ZAPPA))
    assert nontrivial and dev > 1e-3
    trivial_flag, dev = lsb.lambda_nontrivial(lsb.realize(lsb.trivial(SL2)))
    assert not trivial_flag


def test_unknown_construction():
    with pytest.raises(ValueError):
        lsb.realize({"construction": "mystery"})


def test_unknown_factorization():
    with pytest.raises(ValueError):
        lsb.realize(lsb.zappa(H3, "aff1_split"))
