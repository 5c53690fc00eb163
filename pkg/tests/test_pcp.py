"""Polycyclic presentations: collection, consistency, subgroup and
series machinery, quotients, and abelian invariants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgh import catalog
from pgh.pcp import (AbelianType, PcPresentation, abelian_invariants,
                     abelianization_type, center, derived_subgroup,
                     direct_product, frattini_subgroup, full_subgroup,
                     lower_central_series, nilpotency_class, quotient,
                     structure_stats, subgroup_closure, trivial_subgroup)


@pytest.fixture
def d8():
    return catalog.dihedral8()


@pytest.fixture
def q8():
    return catalog.quaternion8()


@pytest.fixture
def e1():
    return catalog.extraspecial_e1(3)


def test_order_property(d8, e1):
    assert d8.order == 8
    assert e1.order == 27


def test_identity_and_inverse(e1):
    for x in [e1.gen(0), e1.gen(1), e1.mult(e1.gen(0), e1.gen(1))]:
        assert e1.mult(x, e1.inv(x)) == e1.identity()
        assert e1.mult(e1.inv(x), x) == e1.identity()


def test_element_orders_d8(d8):
    # [TRIVIAL] D8: reflection s has order 2, rotation r has order 4
    assert d8.element_order(d8.gen(1)) == 2
    assert d8.element_order(d8.gen(0)) == 4


def test_q8_unique_involution(q8):
    # [TRIVIAL] Q8 has exactly one element of order 2
    involutions = 0
    import itertools
    for vec in itertools.product(range(2), repeat=3):
        if q8.element_order(vec) == 2:
            involutions += 1
    assert involutions == 1


def test_commutator_convention(e1):
    # [x, y] = x^-1 y^-1 x y; in E1, [b, a] = c^-1 per the stored rule
    a, b = e1.gen(0), e1.gen(1)
    lhs = e1.commutator(b, a)
    assert lhs == e1.inv(e1.gen(2))


def test_inconsistent_presentation_rejected():
    # g2 central of order p but g1^p = g2 forces order p^2 on g1's image:
    # inconsistent power overlap must be detected
    with pytest.raises(ValueError):
        PcPresentation(3, 2, [((1, 1),), ()], {(1, 0): ((1, 1),)})


def test_consistency_checks_cover_trivial_group():
    P = catalog.extraspecial_e1(5)
    for tag, lhs, rhs in P.consistency_checks():
        assert lhs == rhs


def test_center_of_extraspecial(e1):
    z = center(e1)
    assert z.order == 3
    assert z.basis == derived_subgroup(e1).basis


def test_center_of_d8(d8):
    assert center(d8).order == 2


def test_lower_central_series_q8(q8):
    series = lower_central_series(q8)
    assert [s.order for s in series] == [8, 2, 1]
    assert nilpotency_class(q8) == 2


def test_frattini_subgroup_elementary_abelian():
    P = catalog.elementary_abelian(5, 3)
    assert frattini_subgroup(P).order == 1


def test_frattini_subgroup_d8(d8):
    assert frattini_subgroup(d8).order == 2


def test_subgroup_closure_normal(e1):
    sub = subgroup_closure(e1, [e1.gen(0)])
    # <a> has order 3; its normal closure picks up the commutators
    normal = subgroup_closure(e1, [e1.gen(0)], normal=True)
    assert sub.order == 3
    assert normal.order == 9


def test_subgroup_membership(e1):
    der = derived_subgroup(e1)
    assert der.contains(e1.gen(2))
    assert not der.contains(e1.gen(0))


def test_quotient_central(e1):
    Q, proj = quotient(e1, center(e1))
    assert Q.order == 9
    assert abelianization_type(Q).divisors == (3, 3)
    x = proj(e1.gen(0))
    assert Q.element_order(x) == 3


def test_quotient_projection_is_homomorphism(q8):
    Q, proj = quotient(q8, derived_subgroup(q8))
    for x in q8.gens():
        for y in q8.gens():
            assert proj(q8.mult(x, y)) == Q.mult(proj(x), proj(y))


def test_abelian_invariants_of_section():
    P = catalog.homocyclic(3, 2, 2)
    t = abelian_invariants(P, full_subgroup(P))
    assert t.divisors == (9, 9)


def test_structure_stats_g2():
    st_ = structure_stats(catalog.g2(3, 2))
    assert (st_.n, st_.k, st_.d) == (5, 1, 2)
    assert st_.nilpotency_class == 2
    assert st_.quotient_type.divisors == (9, 9)


def test_direct_product_orders():
    P = direct_product(catalog.dihedral8(), catalog.cyclic(2, 2))
    assert P.order == 32
    assert nilpotency_class(P) == 2


def test_abelian_type_validation():
    with pytest.raises(ValueError):
        AbelianType((3, 9))
    t = AbelianType.from_divisors([3, 9, 1])
    assert t.divisors == (9, 3)
    assert t.order == 27
    assert t.exponent == 9
    assert not t.is_homocyclic()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(1, 3))
def test_homocyclic_structure(p, e, r):
    P = catalog.homocyclic(p, e, r)
    assert P.order == p ** (e * r)
    assert center(P).order == P.order
    t = abelian_invariants(P, full_subgroup(P))
    assert t.divisors == tuple([p ** e] * r)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 26), st.integers(0, 26))
def test_collection_agrees_with_symmetric_group_model(p, i, j):
    # associativity spot check in E1(p): (xy)z == x(yz) for random triples
    P = catalog.extraspecial_e1(p)
    x = (i % p, (i // p) % p, (i // p // p) % p)
    y = (j % p, (j // p) % p, (j // p // p) % p)
    z = P.gen(0)
    assert P.mult(P.mult(x, y), z) == P.mult(x, P.mult(y, z))
