"""Epicenters, capability, cover-independence, and exterior pairing."""

import pytest

from pgh import catalog
from pgh.capability import (epicenter, epicenter_crosscheck, exterior_pair,
                            is_capable)
from pgh.homology import stem_cover
from pgh.pcp import derived_subgroup


@pytest.mark.parametrize("builder", [
    lambda: catalog.extraspecial_e1(3),
    lambda: catalog.g1(3, 4),
    lambda: catalog.g2(3, 2),
    lambda: catalog.g3(3),
    lambda: catalog.g4(3, 2),
    lambda: catalog.g5(3),
    lambda: catalog.dihedral8(),
    lambda: catalog.elementary_abelian(3, 2),
])
def test_capable_groups(builder):
    assert is_capable(stem_cover(builder()))


@pytest.mark.slow
def test_capable_g6():
    assert is_capable(stem_cover(catalog.g6()))


def test_q8_not_capable():
    cover = stem_cover(catalog.quaternion8())
    assert not is_capable(cover)
    assert epicenter(cover).order == 2


def test_cyclic_not_capable():
    cover = stem_cover(catalog.cyclic(3, 2))
    assert not is_capable(cover)
    assert epicenter(cover).order == 9


@pytest.mark.parametrize("m", [2, 3])
def test_noncapable_family_epicenter_is_derived(m):
    # the minimal non-abelian type (a) family with n = m - 1 has
    # epicenter exactly G', of order p
    P = catalog.min_nonabelian_a(3, m, m - 1)
    cover = stem_cover(P)
    epi = epicenter(cover)
    der = derived_subgroup(P)
    assert not is_capable(cover)
    assert epi.order == 3
    assert epi.issubset(der) and der.issubset(epi)


@pytest.mark.parametrize("m", [2, 3])
def test_exterior_identities_noncapable_family(m):
    # (b ^ a)^(p^(m-1)) = 1 and a ^ [a, b] = 1
    P = catalog.min_nonabelian_a(3, m, m - 1)
    cover = stem_cover(P)
    a, b = P.gen(0), P.gen(1)
    assert exterior_pair(cover, b, a).pow(3 ** (m - 1)).is_identity()
    assert exterior_pair(cover, a, P.commutator(a, b)).is_identity()


def test_exterior_pair_bilinearity_center():
    # a ^ z is trivial for central z in an extraspecial group's pairing
    # with its own commutator subgroup lifted through the cover
    P = catalog.extraspecial_e1(3)
    cover = stem_cover(P)
    a, b = P.gen(0), P.gen(1)
    w = exterior_pair(cover, a, b)
    assert w.pow(3).is_identity()
    assert not w.is_identity()


@pytest.mark.parametrize("builder", [
    lambda: catalog.extraspecial_e1(3),
    lambda: catalog.g2(3, 2),
    lambda: catalog.g4(3, 2),
    lambda: catalog.quaternion8(),
    lambda: catalog.min_nonabelian_a(3, 2, 1),
    lambda: catalog.g3(3),
])
def test_epicenter_cover_independent(builder):
    assert epicenter_crosscheck(builder())
