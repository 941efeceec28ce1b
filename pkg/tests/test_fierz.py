"""Rank-one endomorphisms, covariant expansion, and the quadratic identities."""

import random
from fractions import Fraction

import pytest

import oracles
from grafclifford.bilinear import b_eval
from grafclifford.errors import DimensionMismatch, StructureError
from grafclifford.exterior import Form
from grafclifford.fierz import (
    Covariant,
    FierzVerdict,
    IdentityResult,
    check_fierz,
    covariant,
    endo_E,
    fundamental_identity_holds,
    reconstruct_check,
)
from grafclifford.classify import majorana_project
from grafclifford.linalg import mat_vec


def _unit(d, i):
    return tuple(1 if j == i else 0 for j in range(d))


def test_endomorphism_action_on_basis_vectors(rep12, pr12):
    rng = random.Random(31)
    alpha = oracles.rand_vector(rng, rep12.d)
    beta = oracles.rand_vector(rng, rep12.d)
    e = endo_E(pr12, alpha, beta)
    for j in range(rep12.d):
        gamma = _unit(rep12.d, j)
        weight = b_eval(pr12, gamma, beta)
        assert mat_vec(e, gamma) == tuple(weight * a for a in alpha)
    with pytest.raises(DimensionMismatch):
        endo_E(pr12, alpha[:-1], beta)


def test_fundamental_identity_on_random_quadruples(rep12, pr12, rep90, pr90, rep04, pr04):
    rng = random.Random(32)
    for rep, pairing in ((rep12, pr12), (rep90, pr90), (rep04, pr04)):
        for _ in range(5):
            quad = [oracles.rand_vector(rng, rep.d) for _ in range(4)]
            assert fundamental_identity_holds(pairing, *quad)


def test_covariant_scalar_component_is_the_pairing_value(
    rep12, st12, pr12, rep90, st90, pr90, rep04, st04, pr04
):
    rng = random.Random(33)
    for rep, st, pairing in ((rep12, st12, pr12), (rep90, st90, pr90), (rep04, st04, pr04)):
        alpha = oracles.rand_vector(rng, rep.d)
        beta = oracles.rand_vector(rng, rep.d)
        cov = covariant(rep, st, pairing, alpha, beta)
        pref = Fraction(rep.abs.k_const, 1 << rep.signature.n)
        assert cov.components[0].scalar_part() == pref * b_eval(pairing, alpha, beta)


def test_covariant_structure_case_must_match(rep12, st90, pr12):
    with pytest.raises(StructureError):
        covariant(rep12, st90, pr12, (1, 0, 0, 0), (0, 1, 0, 0))


def test_components_reassemble_the_endomorphism(
    rep12, st12, pr12, rep90, st90, pr90, rep04, st04, pr04
):
    rng = random.Random(34)
    for rep, st, pairing in ((rep12, st12, pr12), (rep90, st90, pr90), (rep04, st04, pr04)):
        for _ in range(3):
            alpha = oracles.rand_vector(rng, rep.d)
            beta = oracles.rand_vector(rng, rep.d)
            cov = covariant(rep, st, pairing, alpha, beta)
            assert reconstruct_check(rep, st, pairing, cov, alpha, beta)
            tampered = Covariant(
                cov.case, (cov.components[0].scale(2),) + cov.components[1:]
            )
            assert not reconstruct_check(rep, st, pairing, tampered, alpha, beta)


def test_covariant_matches_ordered_tuple_expansion(rep12, st12, pr12):
    rng = random.Random(35)
    for _ in range(4):
        alpha = oracles.rand_vector(rng, rep12.d)
        beta = oracles.rand_vector(rng, rep12.d)
        cov = covariant(rep12, st12, pr12, alpha, beta)
        oracle = oracles.ordered_tuple_covariant(rep12, st12, pr12, alpha, beta)
        assert tuple(cov) == tuple(oracle)


def test_quadratic_identities_normal_case(rep90, st90, pr90):
    rng = random.Random(36)
    for _ in range(2):
        quad = [oracles.rand_vector(rng, rep90.d, box=3) for _ in range(4)]
        verdict = check_fierz(rep90, st90, pr90, *quad)
        assert verdict.case == "normal"
        assert [r.identity for r in verdict.results] == ["normal"]
        assert verdict.passed


def test_quadratic_identities_almost_complex_case(rep12, st12, pr12):
    rng = random.Random(37)
    for _ in range(5):
        quad = [
            majorana_project(rep12, st12, oracles.rand_vector(rng, rep12.d))
            for _ in range(4)
        ]
        verdict = check_fierz(rep12, st12, pr12, *quad)
        assert verdict.case == "almost_complex"
        assert [r.identity for r in verdict.results] == [
            "almost_complex_i",
            "almost_complex_ii",
        ]
        assert verdict.passed


def test_quadratic_identities_quaternionic_case(rep04, st04, pr04):
    rng = random.Random(38)
    for _ in range(4):
        quad = [oracles.rand_vector(rng, rep04.d) for _ in range(4)]
        verdict = check_fierz(rep04, st04, pr04, *quad)
        assert verdict.case == "quaternionic"
        assert [r.identity for r in verdict.results] == [
            "quaternionic_scalar",
            "quaternionic_vector_1",
            "quaternionic_vector_2",
            "quaternionic_vector_3",
        ]
        assert verdict.passed


def test_identity_result_reporting_shapes(rep12):
    sig = rep12.signature
    residual = Form.from_mask_dict(sig, {0: 2, 0b011: -1})
    bad = IdentityResult("demo", residual.is_zero(), residual)
    assert not bad.passed
    by_grade = bad.residual_by_grade()
    assert set(by_grade) == {0, 2}
    assert by_grade[0].scalar_part() == 2
    obj = FierzVerdict("normal", (bad,)).to_json_obj()
    assert obj["case"] == "normal"
    assert obj["passed"] is False
    assert obj["results"][0]["identity"] == "demo"
    assert set(obj["results"][0]["residual_by_grade"]) == {"0", "2"}