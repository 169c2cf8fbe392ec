import random
from fractions import Fraction

import pytest

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    HirzebruchSurface,
    ProjectivePlaneDeg,
    ValidationError,
)
from hkcover.invariants import cover_chern
from hkcover.nc_cover import (
    Component,
    ModelError,
    NormalCrossingModel,
    abelian_l1_model,
    blowup_homogeneous,
    cover_c1sq_nc,
    cover_euler_nc,
    model_from_dict,
    nc_summary,
)

from strategies import random_combo, random_surface


def abelian_euler_by_strata(n):
    # complement of D: e(Z) - e(D) = 1 - (4*0 + 2 - 4) = 3, fibre n^3
    # four punctured elliptic curves (e = -1 each) and the exceptional
    # curve minus four points (e = -2), fibre n^2
    # four crossings, fibre n
    return 3 * n**3 + (4 * -1 + -2) * n**2 + 4 * n


def abelian_c1sq_by_hand(n):
    x = Fraction(n - 1, n)
    ksq, kd, dsq = -1, 4 * 1 - 1, 5 * -1 + 2 * 4
    return n**3 * (ksq + 2 * x * kd + x * x * dsq)


def test_abelian_fixture():
    m = abelian_l1_model()
    assert m.k == 4 and len(m.components) == 5 and m.double_points == 4
    assert (m.canonical_degree, m.divisor_square) == (3, 3)


@pytest.mark.parametrize("n, euler", [(3, 39), (2, 8)])
def test_abelian_euler(n, euler):
    assert abelian_euler_by_strata(n) == euler
    assert cover_euler_nc(abelian_l1_model(), n) == euler


def test_abelian_c1sq():
    assert abelian_c1sq_by_hand(3) == 117
    assert cover_c1sq_nc(abelian_l1_model(), 3) == 117 == 3 * 39


@pytest.mark.parametrize("n", range(2, 21))
def test_abelian_gap_law(n):
    m = abelian_l1_model()
    e, c1sq = cover_euler_nc(m, n), cover_c1sq_nc(m, n)
    assert e == abelian_euler_by_strata(n)
    assert c1sq == abelian_c1sq_by_hand(n)
    assert 3 * e - c1sq == n * (n - 3) ** 2
    assert nc_summary(m, n)["ball_quotient_necessary"] is (n == 3)


def test_homogeneous_examples():
    m = blowup_homogeneous(HirzebruchSurface(2), ArrangementCombinatorics(5, {2: 40}))
    assert len(m.components) == 5 and not any(c.is_exceptional for c in m.components)
    assert (m.base_euler, m.double_points) == (4, 40)
    assert (cover_euler_nc(m, 2), cover_c1sq_nc(m, 2)) == (144, 48)

    m = blowup_homogeneous(ProjectivePlaneDeg(3), ArrangementCombinatorics(11, {6: 33}))
    assert sum(c.is_exceptional for c in m.components) == 33
    assert len(m.components) == 44
    assert m.double_points == 198
    assert m.base_euler == 3 + 33


def test_homogeneous_degenerate():
    # permissive k with no singular points at all
    from hkcover.arrangements import NefEffectiveCanonical

    surface = NefEffectiveCanonical(0, 0, 1, 0)
    combo = ArrangementCombinatorics(3, {2: 3})
    m = blowup_homogeneous(surface, combo)
    assert len(m.components) == 3 and m.double_points == 3


def test_homogeneous_with_profiles():
    surface, combo = ProjectivePlaneDeg(3), ArrangementCombinatorics(11, {6: 33})
    profiles = [CurveProfile(j, {6: 18}) for j in range(11)]
    m = blowup_homogeneous(surface, combo, profiles)
    assert all(c.self_int == 9 - 18 for c in m.components if not c.is_exceptional)
    inv = cover_chern(surface, combo, 2)
    assert (cover_euler_nc(m, 2), cover_c1sq_nc(m, 2)) == (inv.total_c2, inv.total_c1sq)


def test_homogeneous_rejects_bad_profiles():
    surface, combo = ProjectivePlaneDeg(3), ArrangementCombinatorics(11, {6: 33})
    profiles = [CurveProfile(j, {6: 18}) for j in range(10)] + [CurveProfile(10, {6: 17})]
    with pytest.raises(ValidationError, match="profile inconsistency"):
        blowup_homogeneous(surface, combo, profiles)
    with pytest.raises(ValidationError, match="R1"):
        blowup_homogeneous(surface, ArrangementCombinatorics(11, {6: 32}))


def test_homogeneous_equivalence_random():
    rng = random.Random(7)
    for _ in range(150):
        surface = random_surface(rng)
        combo = random_combo(rng, surface, 5, 9)
        n = rng.randint(2, 6)
        m = blowup_homogeneous(surface, combo)
        inv = cover_chern(surface, combo, n)
        assert cover_euler_nc(m, n) == inv.total_c2
        assert cover_c1sq_nc(m, n) == inv.total_c1sq


def test_adjunction_is_enforced():
    with pytest.raises(ModelError, match="adjunction"):
        NormalCrossingModel(3, (Component("L", 0, 1, -3),), {}, 3, 9)


@pytest.mark.parametrize(
    "pairwise, match",
    [
        ({("A", "Z"): 1}, "unknown component"),
        ({("A", "A"): 1}, "itself"),
        ({("A", "B"): -1}, "negative"),
        ({("A", "B"): 1, ("B", "A"): 2}, "conflicting"),
    ],
)
def test_pairwise_is_validated(pairwise, match):
    comps = (Component("A", 2, 1, -3), Component("B", 2, 1, -3))
    with pytest.raises(ModelError, match=match):
        NormalCrossingModel(3, comps, pairwise, 3, 9)


def test_non_integer_c1sq_is_rejected():
    # a single line in the plane with k = 2 gives a fractional c1^2 at n = 2
    model = NormalCrossingModel(2, (Component("L", 2, 1, -3),), {}, 3, 9)
    with pytest.raises(ModelError, match="not an integer"):
        cover_c1sq_nc(model, 2)


def test_model_json_errors():
    with pytest.raises(ModelError, match="'base'"):
        model_from_dict({"k": 4, "components": []})
    m = model_from_dict(abelian_l1_model().to_dict())
    assert m == abelian_l1_model()
