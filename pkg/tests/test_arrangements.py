import pytest
from hypothesis import given

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    HirzebruchSurface,
    NefEffectiveCanonical,
    ProjectivePlaneDeg,
    ValidationError,
    arrangement_from_dict,
    f_moments,
    surface_parameters,
    validate_combinatorics,
    validate_profiles,
)

from strategies import arrangements


@pytest.mark.parametrize(
    "surface, expected",
    [
        (HirzebruchSurface(2), (4, -6, 4, 8, 4)),
        (ProjectivePlaneDeg(2), (4, -6, 3, 9, 0)),
        (NefEffectiveCanonical(0, 0, 1, 0), (1, 0, 0, 0, 0)),
    ],
)
def test_surface_parameters(surface, expected):
    assert tuple(surface_parameters(surface)) == expected


@pytest.mark.parametrize(
    "build, bound",
    [
        (lambda: HirzebruchSurface(-1), "e >= 0"),
        (lambda: ProjectivePlaneDeg(1), "d >= 2"),
        (lambda: NefEffectiveCanonical(0, 0, 0, 0), "a >= 1"),
        (lambda: NefEffectiveCanonical(0, 0, 1, -1), "b >= 0"),
        (lambda: NefEffectiveCanonical(0, 1, 1, 0), "delta"),
    ],
)
def test_surface_bounds_are_named(build, bound):
    with pytest.raises(ValidationError, match=bound):
        build()


def test_f_moments_examples():
    assert f_moments(ArrangementCombinatorics(5, {2: 40})) == (40, 80, 160)
    assert f_moments(ArrangementCombinatorics(11, {2: 0, 6: 33})) == (33, 198, 1188)
    assert f_moments(ArrangementCombinatorics(5, {})) == (0, 0, 0)


def test_f_moments_against_loop():
    t = {2: 0, 6: 33}
    loop = [0, 0, 0]
    for r in range(2, 12):
        for i in range(3):
            loop[i] += r**i * t.get(r, 0)
    assert f_moments(ArrangementCombinatorics(11, t)) == tuple(loop)


def test_combinatorics_normalises_zeros():
    assert ArrangementCombinatorics(11, {2: 0, 6: 33}) == ArrangementCombinatorics(11, {6: 33})
    assert hash(ArrangementCombinatorics(11, {2: 0, 6: 33})) == hash(ArrangementCombinatorics(11, {6: 33}))


@pytest.mark.parametrize(
    "k, t, match",
    [(2, {}, "k must be"), (5, {6: 1}, "exceeds k"), (5, {2: -1}, ">= 0"), (5, {1: 3}, ">= 2")],
)
def test_combinatorics_rejects_malformed(k, t, match):
    with pytest.raises(ValidationError, match=match):
        ArrangementCombinatorics(k, t)


def test_validate_examples():
    report = validate_combinatorics(HirzebruchSurface(2), ArrangementCombinatorics(5, {2: 40}))
    assert report.ok and all(r.passed for r in report.results)
    assert "= 80" in report.get("R1").detail

    report = validate_combinatorics(ProjectivePlaneDeg(3), ArrangementCombinatorics(11, {6: 33}))
    assert report.ok and all(r.passed for r in report.results)
    assert "990" in report.get("R1").detail

    report = validate_combinatorics(HirzebruchSurface(2), ArrangementCombinatorics(5, {2: 39}))
    assert not report.ok
    assert [r.rule for r in report.failures()] == ["R1"]
    assert "80" in report.get("R1").detail and "78" in report.get("R1").detail


def test_multiplicity_caps():
    # F_e: multiplicities must stay below k - 2
    combo = ArrangementCombinatorics(7, {2: 156 - 12, 4: 1})
    assert validate_combinatorics(HirzebruchSurface(4), combo).get("R2").passed
    combo = ArrangementCombinatorics(7, {2: 168 - 10, 5: 1})
    assert not validate_combinatorics(HirzebruchSurface(2), combo).get("R2").passed
    # the plane: no point on all curves
    combo = ArrangementCombinatorics(5, {2: 30, 5: 1})
    assert not validate_combinatorics(ProjectivePlaneDeg(2), combo).get("R2").passed
    combo = ArrangementCombinatorics(5, {2: 34, 4: 1})
    assert validate_combinatorics(ProjectivePlaneDeg(2), combo).get("R2").passed


def test_small_k_strict_and_permissive():
    combo = ArrangementCombinatorics(4, {2: 6})
    surface = NefEffectiveCanonical(0, 0, 1, 0)
    strict = validate_combinatorics(surface, combo)
    assert not strict.ok and strict.failures()[0].rule == "R3"
    loose = validate_combinatorics(surface, combo, strict=False)
    assert loose.ok and [w.rule for w in loose.warnings()] == ["R3"]


def test_lemma_bound_is_a_warning():
    # hypothetical counts below e + 6 (possible only with f0 < k) are reported, not rejected
    # 4*272 + 2*210 + 12 = 4*380
    combo = ArrangementCombinatorics(20, {17: 4, 15: 2, 4: 1})
    report = validate_combinatorics(HirzebruchSurface(2), combo)
    assert report.get("R1").passed
    assert report.ok
    assert [w.rule for w in report.warnings()] == ["R4"]


def test_profiles_examples():
    surface, combo = ProjectivePlaneDeg(3), ArrangementCombinatorics(11, {6: 33})
    profiles = [CurveProfile(j, {6: 18}) for j in range(11)]
    report = validate_profiles(surface, combo, profiles)
    assert report.ok and [r.rule for r in report.results] == ["P1", "P2", "P3"]

    surface, combo = HirzebruchSurface(2), ArrangementCombinatorics(5, {2: 40})
    profiles = [CurveProfile(j, {2: 16}) for j in range(5)]
    assert validate_profiles(surface, combo, profiles).ok

    profiles[0] = CurveProfile(0, {2: 17})
    report = validate_profiles(surface, combo, profiles)
    assert not report.get("P2").passed


def test_profiles_length_mismatch():
    with pytest.raises(ValidationError, match="expected 5"):
        validate_profiles(HirzebruchSurface(2), ArrangementCombinatorics(5, {2: 40}), [CurveProfile(0, {2: 16})])


def test_curve_profile_derived_counts():
    p = CurveProfile(3, {2: 4, 3: 2, 6: 1})
    assert (p.r_j, p.gamma, p.r2) == (7, 3, 4)
    assert p.r_j == p.gamma + p.r2


@given(arrangements())
def test_moment_difference_identity(case):
    surface, combo = case
    f0, f1, f2 = f_moments(combo)
    assert f2 - f1 == sum(r * (r - 1) * c for r, c in combo.t.items())
    assert f0 <= f1 <= f2


@given(arrangements())
def test_validation_is_deterministic(case):
    surface, combo = case
    first = validate_combinatorics(surface, combo)
    assert first == validate_combinatorics(surface, combo)
    assert first.to_dict() == validate_combinatorics(surface, combo).to_dict()
    assert first.get("R1").passed


@given(arrangements(k_max=9))
def test_accepted_profiles_imply_identity(case):
    surface, combo = case
    # spread each point over r consecutive curves; whenever the result is
    # accepted, summing per-curve counts must reproduce the global identity
    k = combo.k
    counts = [dict() for _ in range(k)]
    cursor = 0
    for r, c in combo.t.items():
        for _ in range(c):
            for i in range(r):
                prof = counts[(cursor + i) % k]
                prof[r] = prof.get(r, 0) + 1
            cursor = (cursor + r) % k
    profiles = [CurveProfile(j, counts[j]) for j in range(k)]
    report = validate_profiles(surface, combo, profiles)
    assert report.get("P2").passed
    if report.get("P1").passed:
        assert report.get("P3").passed
        a = surface_parameters(surface).a
        assert a * (k * k - k) == sum(r * (r - 1) * c for r, c in combo.t.items())


def test_arrangement_json_roundtrip():
    data = {
        "surface": {"type": "hirzebruch", "e": 2},
        "k": 5,
        "t": {"2": 40},
        "star_property": True,
        "profiles": [{"j": j, "r_profile": {"2": 16}} for j in range(5)],
    }
    surface, combo, profiles = arrangement_from_dict(data)
    assert surface == HirzebruchSurface(2)
    assert combo == ArrangementCombinatorics(5, {2: 40}, True)
    assert len(profiles) == 5 and profiles[0].r2 == 16


@pytest.mark.parametrize(
    "data, field",
    [
        ({"k": 5, "t": {}}, "surface"),
        ({"surface": {"type": "torus"}, "k": 5}, "surface.type"),
        ({"surface": {"type": "plane"}, "k": 5}, "'d'"),
        ({"surface": {"type": "plane", "d": 2}}, "'k'"),
    ],
)
def test_arrangement_json_errors_name_field(data, field):
    with pytest.raises(ValidationError, match=field):
        arrangement_from_dict(data)
