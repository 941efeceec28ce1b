"""Spinor/pinor classification, reduced-row flagging, census, product battery."""

import random
from fractions import Fraction

import pytest

import oracles
from grafclifford.bilinear import Pairing
from grafclifford.classify import (
    CLASS_NAMES_12,
    CLASS_NAMES_90,
    Covariants12,
    Covariants90,
    appendix_check,
    census,
    check_reduced_12,
    check_reduced_90,
    class_report,
    classify_12,
    classify_90,
    covariants_12,
    covariants_90,
    majorana_project,
    real_structure_isometric,
)
from grafclifford.errors import (
    DimensionMismatch,
    NotASpinor,
    StructureError,
    UnsupportedSignature,
)
from grafclifford.exterior import Form, Signature
from grafclifford.linalg import identity, mat_vec

SIG12 = Signature(1, 2)
SIG90 = Signature(9, 0)

APPENDIX_ROW_IDS = [
    "scalar-square-projector-replay",
    "scalar-square",
    "scalar-vector",
    "scalar-quadform",
    "vector-scalar",
    "vector-square",
    "vector-quadform-full",
    "vector-quadform",
    "quadform-scalar",
    "quadform-vector-full",
    "quadform-vector",
    "quadform-square",
]


# -- real-spinor projection ------------------------------------------------------------


def test_majorana_projection_properties(rep12, st12, st90):
    rng = random.Random(41)
    for _ in range(5):
        raw = oracles.rand_vector(rng, rep12.d)
        proj = majorana_project(rep12, st12, raw)
        assert mat_vec(st12.D, proj) == proj
        assert majorana_project(rep12, st12, proj) == proj
    with pytest.raises(DimensionMismatch):
        majorana_project(rep12, st12, (1, 0))
    with pytest.raises(StructureError):
        majorana_project(rep12, st90, (1, 0, 0, 0))


def test_real_structure_isometry_splits_the_pairings(st12, pairings12):
    by_iso = {p.isotropy: p for p in pairings12}
    assert real_structure_isometric(by_iso[1], st12)
    assert not real_structure_isometric(by_iso[-1], st12)


# -- (1,2) covariants and classes --------------------------------------------------------


def test_covariants_12_scalar_always_vanishes(rep12, st12, pr12):
    rng = random.Random(42)
    for _ in range(10):
        vec = majorana_project(rep12, st12, oracles.rand_vector(rng, rep12.d))
        cov = covariants_12(rep12, st12, pr12, vec)
        assert cov.phi0.is_zero()
        assert cov.phi2.grades() <= {2}


def test_covariants_12_rejects_bad_inputs(rep12, st12, pr12, pairings12, rep90, st90, pr90):
    moved = None
    for i in range(rep12.d):
        basis = tuple(1 if j == i else 0 for j in range(rep12.d))
        if mat_vec(st12.D, basis) != basis:
            moved = basis
            break
    assert moved is not None
    with pytest.raises(NotASpinor):
        covariants_12(rep12, st12, pr12, moved)
    anti = next(p for p in pairings12 if p.isotropy == -1)
    fixed = majorana_project(rep12, st12, (1, 0, 0, 0))
    with pytest.raises(StructureError):
        covariants_12(rep12, st12, anti, fixed)
    with pytest.raises(UnsupportedSignature):
        covariants_12(rep90, st90, pr90, (1,) + (0,) * 15)


def test_reduced_rows_and_classes_12(rep12, st12, pr12):
    rng = random.Random(43)
    seen = set()
    for _ in range(15):
        vec = majorana_project(rep12, st12, oracles.rand_vector(rng, rep12.d))
        cov = covariants_12(rep12, st12, pr12, vec)
        verdict = check_reduced_12(cov, cov.phi0.scalar_part())
        assert verdict.master.identity == "two-component-square"
        assert [r.identity for r in verdict.rows] == [
            "rank2-double-contraction",
            "rank2-single-contraction",
        ]
        assert verdict.passed
        assert verdict.flagged == ()
        index = classify_12(cov)
        assert index in {1, 3}
        assert CLASS_NAMES_12[index]
        seen.add(index)
    assert 3 in seen
    zero = covariants_12(rep12, st12, pr12, (0,) * rep12.d)
    assert classify_12(zero) == 1


def test_classify_12_rejects_non_solutions():
    fake = Covariants12(Form.scalar(SIG12, 1), Form.zero(SIG12))
    with pytest.raises(NotASpinor):
        classify_12(fake)


# -- (9,0) covariants and classes --------------------------------------------------------


def test_covariants_90_basis_spinor(rep90, pr90):
    vec = (1,) + (0,) * 15
    cov = covariants_90(rep90, pr90, vec)
    assert cov.psi0 == Form.scalar(SIG90, 1)
    assert classify_90(cov) in {2, 3, 6, 8}


def test_covariants_90_rejects_bad_inputs(rep90, rep12, pr12):
    wrong_type = Pairing(identity(rep90.d), sigma=1, tau=-1)
    with pytest.raises(StructureError):
        covariants_90(rep90, wrong_type, (1,) + (0,) * 15)
    with pytest.raises(DimensionMismatch):
        covariants_90(rep90, Pairing(identity(rep90.d), 1, 1), (1, 0))
    with pytest.raises(UnsupportedSignature):
        covariants_90(rep12, pr12, (1, 0, 0, 0))


def test_reduced_system_90_on_random_spinors(rep90, pr90):
    rng = random.Random(44)
    for _ in range(6):
        vec = oracles.rand_vector(rng, rep90.d, box=3)
        cov = covariants_90(rep90, pr90, vec)
        b = cov.psi0.scalar_part()
        assert b == sum(a * a for a in vec)
        verdict = check_reduced_90(cov, b)
        assert verdict.master.identity == "truncated-master"
        assert verdict.master.passed
        assert verdict.clearance is not None
        assert verdict.clearance.identity == "volume-image-clearance"
        assert verdict.clearance.passed
        by_id = {r.identity: r for r in verdict.rows}
        assert by_id["grade2-row"].passed
        assert by_id["grade3-row"].passed
        assert by_id["grade0-row"].residual == cov.psi0.scale(-16 * b)
        assert by_id["grade1-row"].residual == cov.psi1.scale(-16 * b)
        assert by_id["grade4-row"].residual == cov.psi4.scale(-32 * b)
        expected_flags = tuple(
            name
            for name, comp in (
                ("grade0-row", cov.psi0),
                ("grade1-row", cov.psi1),
                ("grade4-row", cov.psi4),
            )
            if not comp.is_zero()
        )
        assert verdict.flagged == expected_flags
        index = classify_90(cov)
        assert CLASS_NAMES_90[index]
        if b:
            assert "psi0 != 0" in CLASS_NAMES_90[index]


def test_reduced_system_90_on_the_zero_spinor(rep90, pr90):
    cov = covariants_90(rep90, pr90, (0,) * rep90.d)
    verdict = check_reduced_90(cov, 0)
    assert verdict.passed
    assert verdict.flagged == ()
    assert classify_90(cov) == 7


def test_classify_90_hand_injected_covariants():
    one = Form.scalar(SIG90, 1)
    zero = Form.zero(SIG90)
    e1 = Form.from_mask_dict(SIG90, {1: 1})

    inj3 = Covariants90(one, e1, zero)
    verdict = check_reduced_90(inj3, Fraction(1, 8))
    assert verdict.master.passed
    assert verdict.flagged == ("grade0-row", "grade1-row")
    assert classify_90(inj3, Fraction(1, 8)) == 3

    inj6 = Covariants90(one, zero, zero)
    verdict6 = check_reduced_90(inj6, Fraction(1, 16))
    assert verdict6.master.passed
    assert verdict6.flagged == ("grade0-row",)
    assert classify_90(inj6, Fraction(1, 16)) == 6

    with pytest.raises(NotASpinor):
        classify_90(Covariants90(one, zero, zero))


# -- reports, census, identity battery ---------------------------------------------------


def test_class_report_fields(rep12, st12, pr12, rep90, st90, pr90, rep04, st04, pr04):
    report = class_report(rep12, st12, pr12, (3, -1, 2, 5))
    assert report.signature == SIG12
    assert report.class_index in {1, 3}
    assert report.class_pattern == CLASS_NAMES_12[report.class_index]
    assert [name for name, _ in report.covariants] == ["phi0", "phi2"]
    assert report.pairing_hash == pr12.content_hash()
    obj = report.to_json_obj()
    assert obj["signature"] == [1, 2]
    assert set(obj["covariants"]) == {"phi0", "phi2"}

    basis = (1,) + (0,) * 15
    report90 = class_report(rep90, st90, pr90, basis)
    assert report90.class_pattern.startswith("psi0 != 0")
    assert [name for name, _ in report90.covariants] == ["psi0", "psi1", "psi4"]

    with pytest.raises(UnsupportedSignature):
        class_report(rep04, st04, pr04, (1, 0, 0, 0))


def test_census_is_deterministic_and_structured():
    first = census(SIG12, 25, 7)
    second = census((1, 2), 25, 7)
    assert first.to_json() == second.to_json()
    by_iso = {sec.isotropy: sec for sec in first.sections}
    assert set(by_iso) == {1, -1}
    assert by_iso[1].compatible
    assert dict(by_iso[1].counts) == {3: 25}
    assert [index for index, _ in by_iso[1].representatives] == [3]
    assert not by_iso[-1].compatible
    assert by_iso[-1].surviving_ranks == (1,)
    obj = first.to_json_obj()
    assert sorted(obj) == ["box", "samples", "sections", "seed", "signature", "volume_sign"]
    incompatible = next(
        s for s in obj["sections"] if not s["real_structure_compatible"]
    )
    assert incompatible["surviving_ranks"] == [1]
    compatible = next(s for s in obj["sections"] if s["real_structure_compatible"])
    assert compatible["classes"]["3"]["count"] == 25
    assert compatible["classes"]["3"]["pattern"] == CLASS_NAMES_12[3]
    assert "representative" in compatible["classes"]["3"]


def test_census_on_the_pinor_signature():
    report = census(SIG90, 6, 3)
    (section,) = report.sections
    assert section.compatible
    assert dict(section.counts) == {8: 6}
    empty = census(SIG90, 0, 3)
    assert empty.sections[0].counts == ()


def test_census_input_validation():
    with pytest.raises(ValueError):
        census(SIG12, -1, 0)
    with pytest.raises(UnsupportedSignature):
        census((2, 2), 1, 0)


def test_product_identity_battery():
    verdict = appendix_check(SIG90, 3, 11)
    assert verdict.passed
    assert [row.identity for row in verdict.rows] == APPENDIX_ROW_IDS
    assert all(row.passed for row in verdict.rows)
    obj = verdict.to_json_obj()
    assert obj["trials"] == 3
    assert obj["passed"] is True

    vacuous = appendix_check(SIG90, 0, 11)
    assert vacuous.passed
    assert vacuous.rows == ()

    with pytest.raises(UnsupportedSignature):
        appendix_check(SIG12, 1, 0)