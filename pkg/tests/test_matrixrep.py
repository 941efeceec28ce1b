"""Matrix representations: generators, blade operators, commutant structure."""

import random
from fractions import Fraction

import pytest

import oracles
from grafclifford.errors import StructureError
from grafclifford.exterior import Form, Metric, Signature
from grafclifford.graf import graf_product, volume_square_sign
from grafclifford.linalg import (
    identity,
    is_scalar_matrix,
    mat_add,
    mat_mul,
    mat_scale,
)
from grafclifford.matrixrep import (
    CASE_ALMOST_COMPLEX,
    CASE_NORMAL,
    CASE_QUATERNIONIC,
    abs_type,
    build_rep,
    build_structure,
    commutant_basis,
    d_square_target,
    lambda_form,
    rep_from_json,
    verify_generators,
)

SIG12 = Signature(1, 2)
SIG90 = Signature(9, 0)
SIG04 = Signature(0, 4)


def test_abs_type_for_the_three_geometries():
    t12 = abs_type(SIG12)
    assert (t12.case, t12.rep_dim, t12.commutant_dim) == (CASE_ALMOST_COMPLEX, 4, 2)
    t90 = abs_type(SIG90)
    assert (t90.case, t90.rep_dim, t90.commutant_dim) == (CASE_NORMAL, 16, 1)
    t04 = abs_type(SIG04)
    assert (t04.case, t04.rep_dim, t04.commutant_dim) == (CASE_QUATERNIONIC, 8, 4)
    assert t12.k_const == 2 and t90.k_const == 16 and t04.k_const == 2


def test_case_follows_the_mod8_class():
    for p in range(7):
        for q in range(7):
            if p + q > 9 or p + q == 0:
                continue
            t = abs_type(Signature(p, q))
            cls = (p - q) % 8
            if cls in (0, 1, 2):
                assert t.case == CASE_NORMAL
            elif cls in (3, 7):
                assert t.case == CASE_ALMOST_COMPLEX
            else:
                assert t.case == CASE_QUATERNIONIC


def test_generators_satisfy_the_clifford_relation(rep12, rep90, rep04):
    for rep in (rep12, rep90, rep04):
        verify_generators(rep.generators, rep.metric)
        gens = rep.generators
        met = rep.metric
        for i, gi in enumerate(gens):
            for j, gj in enumerate(gens):
                anti = mat_add(mat_mul(gi, gj), mat_mul(gj, gi))
                expected = mat_scale(identity(rep.d), 2 * met.entry(i + 1, j + 1))
                assert anti == expected


def test_blade_matrix_is_the_ordered_generator_product(rep12, rep04, rep90):
    rng = random.Random(25)
    for rep in (rep12, rep04):
        masks = range(1 << rep.signature.n)
        for mask in masks:
            expected = identity(rep.d)
            for i in range(rep.signature.n):
                if mask >> i & 1:
                    expected = mat_mul(expected, rep.generators[i])
            assert rep.blade_matrix(mask) == expected
    for _ in range(25):
        mask = rng.randrange(1 << 9)
        expected = identity(rep90.d)
        for i in range(9):
            if mask >> i & 1:
                expected = mat_mul(expected, rep90.generators[i])
        assert rep90.blade_matrix(mask) == expected


def test_lambda_form_is_linear_and_respects_blades(rep12):
    rng = random.Random(26)
    for _ in range(10):
        f = oracles.rand_form(rng, SIG12)
        g = oracles.rand_form(rng, SIG12)
        lf, lg = lambda_form(rep12, f), lambda_form(rep12, g)
        assert lambda_form(rep12, f + g) == mat_add(lf, lg)
        for mask, coeff in f.mask_items():
            single = Form.from_mask_dict(SIG12, {mask: coeff})
            assert lambda_form(rep12, single) == mat_scale(rep12.blade_matrix(mask), coeff)


def test_lambda_form_is_a_product_homomorphism(rep12, rep90, rep04):
    rng = random.Random(27)
    for rep in (rep12, rep90, rep04):
        met = rep.metric
        for _ in range(8):
            f = oracles.rand_form(rng, rep.signature)
            g = oracles.rand_form(rng, rep.signature)
            assert lambda_form(rep, graf_product(f, g, met)) == mat_mul(
                lambda_form(rep, f), lambda_form(rep, g)
            )


def test_volume_action_and_volume_sign(rep12, rep90):
    assert rep90.volume_matrix() == identity(rep90.d)
    rep90_neg = build_rep(SIG90, volume_sign=-1)
    assert rep90_neg.volume_matrix() == mat_scale(identity(rep90_neg.d), -1)
    j = rep12.volume_matrix()
    assert is_scalar_matrix(mat_mul(j, j)) == -1


def test_commutant_dimensions(rep12, rep90, rep04):
    assert len(commutant_basis(rep12)) == 2
    assert len(commutant_basis(rep90)) == 1
    assert len(commutant_basis(rep04)) == 4
    for rep in (rep12, rep90, rep04):
        for m in commutant_basis(rep):
            for g in rep.generators:
                assert mat_mul(m, g) == mat_mul(g, m)


def test_structure_fields_by_case(rep12, st12, rep90, st90, rep04, st04):
    assert st90.case == CASE_NORMAL
    assert st90.J is None and st90.D is None and st90.H is None
    assert st90.d_square_sign is None

    assert st12.case == CASE_ALMOST_COMPLEX
    assert st12.J == rep12.volume_matrix()
    assert is_scalar_matrix(mat_mul(st12.J, st12.J)) == -1
    assert is_scalar_matrix(mat_mul(st12.D, st12.D)) == d_square_target(SIG12) == 1
    assert st12.d_square_sign == 1
    assert mat_mul(st12.D, st12.J) == mat_scale(mat_mul(st12.J, st12.D), -1)
    for g in rep12.generators:
        assert mat_mul(st12.D, g) == mat_scale(mat_mul(g, st12.D), -1)

    assert st04.case == CASE_QUATERNIONIC
    h1, h2, h3 = st04.H
    for h in (h1, h2, h3):
        assert is_scalar_matrix(mat_mul(h, h)) == -1
        for g in rep04.generators:
            assert mat_mul(h, g) == mat_mul(g, h)
    assert mat_mul(h1, h2) in (h3, mat_scale(h3, -1))
    assert mat_mul(h1, h2) == mat_scale(mat_mul(h2, h1), -1)


def test_d_square_target_only_in_almost_complex_case():
    assert d_square_target(SIG12) == 1
    assert d_square_target(Signature(3, 0)) == -1
    with pytest.raises(StructureError):
        d_square_target(SIG90)


def test_rep_json_round_trip(rep12):
    rebuilt = rep_from_json(rep12.to_json())
    assert rebuilt.signature == rep12.signature
    assert rebuilt.generators == rep12.generators
    assert rebuilt.volume_sign == rep12.volume_sign
    assert rebuilt.metric == rep12.metric


def test_build_rep_with_scaled_metric():
    sig = Signature(2, 0)
    met = Metric(sig, [[4, 0], [0, 1]])
    rep = build_rep(sig, metric=met)
    verify_generators(rep.generators, met)
    for i, gi in enumerate(rep.generators):
        sq = is_scalar_matrix(mat_mul(gi, gi))
        assert sq == met.entry(i + 1, i + 1)


def test_volume_sign_validation():
    with pytest.raises(ValueError):
        build_rep(SIG90, volume_sign=2)
