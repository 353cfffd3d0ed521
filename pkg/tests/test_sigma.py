import random

import pytest

from diffcoh.abelian import (
    GroupHom,
    TRIVIAL_GROUP,
    cyclic_group,
    enumerate_elements,
    free_group,
    group_from_factors,
    identity_hom,
)
from diffcoh.sigma import (
    FiniteGroup,
    FiniteSigmaGroup,
    SigmaModule,
    as_orbits,
    coinvariants,
    cyclic_table,
    invariants,
    point_difference_cohomology,
    sigma_group_from_module,
    symmetric_group_s3,
)
from tests.test_abelian import random_group, random_hom


def scalar_module(group, k):
    n = group.ncoords
    return SigmaModule(group, GroupHom(group, group, [[k if i == j else 0 for j in range(n)] for i in range(n)]))


def test_invariants_examples():
    z = free_group(1)
    g, _ = invariants(scalar_module(z, 1))
    assert g == z
    g, _ = invariants(scalar_module(z, 2))
    assert g == TRIVIAL_GROUP
    # (Z/8, x3): ker(x2) = {0, 4}, oracle by enumeration
    z8 = cyclic_group(8)
    mod = scalar_module(z8, 3)
    by_enum = [e.coords for e in enumerate_elements(z8) if mod.difference_map()(e).is_zero()]
    assert by_enum == [(0,), (4,)]
    g, incl = invariants(mod)
    assert g == cyclic_group(2)
    assert sorted(incl(e).coords for e in enumerate_elements(g)) == by_enum


def test_coinvariants_examples():
    z = free_group(1)
    g, _ = coinvariants(scalar_module(z, 1))
    assert g == z
    g, _ = coinvariants(scalar_module(z, 4))
    assert g == cyclic_group(3)
    # (Z/6, x(-1)): coker(x(-2)); image is 2Z/6
    z6 = cyclic_group(6)
    g, _ = coinvariants(scalar_module(z6, -1))
    assert g == cyclic_group(2)


def test_point_cohomology_examples():
    z = free_group(1)
    h = point_difference_cohomology(scalar_module(z, 1))
    assert h[0] == z and h[1] == z and h[2] == TRIVIAL_GROUP
    z7 = cyclic_group(7)
    h = point_difference_cohomology(scalar_module(z7, 3))
    assert h[0] == TRIVIAL_GROUP and h[1] == TRIVIAL_GROUP
    # (Z + Z, swap)
    zz = group_from_factors([0, 0])
    swap = GroupHom(zz, zz, [[0, 1], [1, 0]])
    h = point_difference_cohomology(SigmaModule(zz, swap))
    assert h[0] == free_group(1) and h[1] == free_group(1)


def test_finite_kernel_cokernel_orders_match():
    rng = random.Random(11)
    checked = 0
    while checked < 30:
        g = random_group(rng)
        if not g.is_finite() or g.is_trivial():
            continue
        endo = random_hom(rng, g, g)
        mod = SigmaModule(g, endo)
        ginv, _ = invariants(mod)
        gco, _ = coinvariants(mod)
        assert ginv.order() == gco.order()
        checked += 1


def test_as_orbits_s3_conjugacy():
    s3 = symmetric_group_s3()
    sg = FiniteSigmaGroup(s3, tuple(range(6)))
    orbits = as_orbits(sg)
    assert len(orbits) == 3
    assert sorted(len(o) for o in orbits) == [1, 2, 3]
    assert s3.identity in orbits[0]


def test_as_orbits_abelian():
    z5 = cyclic_table(5)
    sg = FiniteSigmaGroup(z5, tuple(range(5)))
    assert len(as_orbits(sg)) == 5
    # endo x2 on Z/5: single orbit (coker of x1 = 0)
    sg = FiniteSigmaGroup(z5, tuple((2 * i) % 5 for i in range(5)))
    orbits = as_orbits(sg)
    assert len(orbits) == 1 and len(orbits[0]) == 5


def test_as_orbits_match_coinvariants():
    rng = random.Random(23)
    checked = 0
    while checked < 15:
        g = random_group(rng, max_coords=2)
        if not g.is_finite() or g.is_trivial() or g.order() > 30:
            continue
        mod = SigmaModule(g, random_hom(rng, g, g))
        sg, maps = sigma_group_from_module(mod)
        orbits = as_orbits(sg)
        co, proj = coinvariants(mod)
        assert len(orbits) == co.order()
        # orbit of identity = image of (s - id), exactly
        diff = mod.difference_map()
        img = sorted(
            maps["index"][diff(e).coords] for e in enumerate_elements(g)
        )
        assert sorted(set(img)) == orbits[0]
        checked += 1


def test_orbit_cap():
    z5 = cyclic_table(5)
    sg = FiniteSigmaGroup(z5, tuple(range(5)))
    with pytest.raises(ValueError, match="cap"):
        as_orbits(sg, cap=3)


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(["e", "a"], [[0, 1], [1, 1]])
    z4 = cyclic_table(4)
    with pytest.raises(ValueError, match="homomorphism"):
        FiniteSigmaGroup(z4, (0, 2, 1, 3))
