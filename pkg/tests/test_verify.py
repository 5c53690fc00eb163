"""Bound formulas, attainment reports, family matching, quotient
attainment, and the classification sweep."""

from fractions import Fraction

import pytest

from pgh import catalog, verify


# -- bounds ----------------------------------------------------------


def test_bounds_values():
    assert verify.bounds(3, 1, 2) == {"green": 3, "niroomand": 2, "rai": 2}
    assert verify.bounds(5, 1, 2) == {"green": 10, "niroomand": 7, "rai": 3}
    assert verify.bounds(6, 3, 3) == {"green": 15, "niroomand": 8, "rai": 8}
    assert verify.bounds(7, 4, 3)["rai"] == 10


def test_bounds_domain_errors():
    with pytest.raises(ValueError):
        verify.bounds(0, 0, 1)
    with pytest.raises(ValueError):
        verify.bounds(3, 3, 1)
    with pytest.raises(ValueError):
        verify.bounds(3, 1, 3)


def test_bounds_integrality_assert():
    with pytest.raises(AssertionError):
        verify.bounds(4, 1, 2)


def test_bound_monotonicity():
    for n in range(2, 9):
        for k in range(0, n):
            for d in range(1, n - k + 1):
                green2 = n * (n - 1)
                nir2 = (n - k - 1) * (n + k - 2) + 2
                rai2 = (d - 1) * (n + k - 2) + 2
                assert rai2 <= nir2


# -- reports ---------------------------------------------------------


def test_report_e1():
    r = verify.report(catalog.extraspecial_e1(3))
    assert r.attains_rai and r.attains_niroomand
    assert r.capable
    assert r.family_match == "G1(p=3,n=3)"
    assert r.multiplier_exponent == 2
    assert r.t == 1


def test_report_d8():
    r = verify.report(catalog.dihedral8())
    assert not r.attains_rai
    assert r.multiplier.order == 2


def test_report_nonhomocyclic_negative():
    # type (a) with G/G' of type (9, 3): must not attain
    r = verify.report(catalog.min_nonabelian_a(3, 2, 2))
    assert r.quotient_type.divisors == (9, 3)
    assert not r.attains_rai


def test_report_half_integral_bound():
    r = verify.report(catalog.modular_group(3, 4))
    assert r.rai_exponent == Fraction(5, 2)
    assert not r.attains_rai


def test_report_invariants_hold_across_catalog():
    for P in [catalog.g2(3, 2), catalog.g4(3, 2), catalog.g5(3),
              catalog.quaternion8(), catalog.elementary_abelian(3, 3)]:
        r = verify.report(P)
        assert r.t >= 0
        assert r.rai_exponent <= r.niroomand_exponent
        if r.attains_rai:
            assert r.multiplier_exponent == r.rai_exponent


@pytest.mark.parametrize("builder,tag", [
    (lambda: catalog.g1(3, 5), "G1(p=3,n=5)"),
    (lambda: catalog.g2(3, 2), "G2(p=3,m=2)"),
    (lambda: catalog.g3(3), "G3(p=3)"),
    (lambda: catalog.g4(3, 2), "G4(p=3,m=2)"),
    (lambda: catalog.g5(3), "G5(p=3)"),
])
def test_family_match_positive(builder, tag):
    assert verify.family_match(builder()) == tag


@pytest.mark.slow
def test_family_match_g6():
    assert verify.family_match(catalog.g6()) == "G6(p=3)"


def test_family_match_negative():
    assert verify.family_match(catalog.modular_group(3, 4)) is None
    assert verify.family_match(catalog.quaternion8()) is None
    assert verify.family_match(catalog.min_nonabelian_a(3, 2, 2)) is None


def test_report_json_schema():
    r = verify.report(catalog.g4(3, 2))
    doc = r.to_json_dict("G4(p=3,m=2)")
    assert doc["group"] == "G4(p=3,m=2)"
    assert doc["multiplier"] == [9, 9]
    assert doc["bounds"] == {"green": 15, "niroomand": 10, "rai": 4}
    assert doc["attains"] == {"niroomand": False, "rai": True}
    assert doc["capable"] is True
    assert doc["family"] == "G4(p=3,m=2)"


def test_report_record_includes_checks():
    doc = verify.report_record(catalog.g2(3, 2), "G2(p=3,m=2)")
    assert doc["group"] == "G2(p=3,m=2)"
    assert isinstance(doc["checks"], list) and doc["checks"]
    assert all(set(c) == {"name", "pass"} for c in doc["checks"])
    assert all(c["pass"] for c in doc["checks"])


# -- condition battery -----------------------------------------------


def test_conditions_all_pass_for_attainers():
    for P in [catalog.extraspecial_e1(3), catalog.g2(3, 2), catalog.g3(3),
              catalog.g4(3, 2), catalog.g5(3)]:
        for check in verify.check_attainer_conditions(P):
            assert check.passed, check


def test_conditions_center_structure_g2():
    checks = {c.name: c for c in
              verify.check_attainer_conditions(catalog.g2(3, 2))}
    c = checks["center_structure"]
    assert c.applicable and c.passed
    assert "(3, 3, 3)" in c.detail or "[3, 3, 3]" in c.detail


def test_conditions_inapplicable_pass():
    checks = verify.check_attainer_conditions(catalog.quaternion8())
    for c in checks:
        assert c.passed


# -- quotient attainment ---------------------------------------------


def test_quotient_attainment_g4():
    qa = verify.check_quotient_attainment(catalog.g4(3, 2))
    assert qa.all_ok
    assert len(qa.central_results) == 1
    desc, expected2, actual2, ok = qa.central_results[0]
    assert expected2 == 2 * 3  # log exponent 3, doubled
    assert ok


def test_quotient_attainment_g5():
    # [PAPER] 13 central order-3 subgroups inside G5'
    qa = verify.check_quotient_attainment(catalog.g5(3))
    assert qa.all_ok
    assert len(qa.central_results) == 13


@pytest.mark.slow
def test_quotient_attainment_g6():
    qa = verify.check_quotient_attainment(catalog.g6())
    assert qa.all_ok
    assert qa.gamma_results == ((3, True),)


def test_quotient_attainment_precondition():
    with pytest.raises(ValueError):
        verify.check_quotient_attainment(catalog.extraspecial_e1(3))


# -- sweeps ----------------------------------------------------------


def test_sweep_p3():
    sw = verify.sweep_classification(3, max_exponent=4)
    assert sw.classification_ok
    assert sw.class2_classification_ok
    table_attainers = {n for n in sw.attainers if n.startswith("order_")}
    # at orders 27 and 81 the only attainers are E1 and E1 x Z3
    assert table_attainers == {"order_p3_4", "order_p4_9"}


def test_sweep_p2_no_attainers():
    sw = verify.sweep_classification(2, max_exponent=4)
    assert sw.classification_ok
    assert sw.attainers == ()


def test_sweep_p5():
    sw = verify.sweep_classification(5, max_exponent=4)
    assert sw.classification_ok
    assert sw.class2_classification_ok


@pytest.mark.slow
def test_sweep_p3_deep_includes_g6():
    sw = verify.sweep_classification(3, max_exponent=4, deep=True)
    assert sw.classification_ok
    assert "G6" in sw.attainers


def test_sweep_json_deterministic():
    a = verify.sweep_classification(3, max_exponent=3).to_json_dict()
    b = verify.sweep_classification(3, max_exponent=3).to_json_dict()
    import json
    assert json.dumps(a) == json.dumps(b)
