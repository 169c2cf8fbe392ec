"""Cover invariants from a normal-crossing model of the blown-up base.

After blowing up every point of multiplicity >= 3, the branch divisor D
(strict transforms plus exceptional curves) has only ordinary double
points.  The Kummer cover of group order ``n^(k-1)`` then has

* ``e(Y)`` from stratifying Z into the open complement of D, the smooth
  part of each component, and the double points, with fibres of size
  ``n^(k-1)``, ``n^(k-2)`` and ``n^(k-3)``;
* ``c1^2(Y) = n^(k-1) (K_Z + (n-1)/n D)^2``.

This handles arrangements whose members live in different classes, which
the closed forms in :mod:`hkcover.invariants` cannot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    SurfaceModel,
    ValidationError,
    surface_parameters,
    validate_combinatorics,
    validate_profiles,
)
from hkcover.invariants import DomainError

DATA_DIR = Path(__file__).parent / "data"


class ModelError(ValueError):
    """Raised when a model's intersection data is inconsistent."""


@dataclass(frozen=True)
class Component:
    id: str
    euler: int
    self_int: int
    k_deg: int
    is_exceptional: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "euler": self.euler,
            "self_int": self.self_int,
            "k_deg": self.k_deg,
            "exceptional": self.is_exceptional,
        }


@dataclass(frozen=True)
class NormalCrossingModel:
    k: int
    components: tuple[Component, ...]
    pairwise: Mapping[tuple[str, str], int]
    base_euler: int
    base_ksq: int

    def __post_init__(self):
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ModelError("component ids must be unique")
        for c in self.components:
            if c.euler != -(c.self_int + c.k_deg):
                raise ModelError(
                    f"component {c.id!r} fails adjunction: euler {c.euler} != "
                    f"-(self_int + k_deg) = {-(c.self_int + c.k_deg)}"
                )
        known = set(ids)
        canon = {}
        for (i, j), count in self.pairwise.items():
            if i not in known or j not in known:
                raise ModelError(f"pairwise entry ({i!r}, {j!r}) names an unknown component")
            if i == j:
                raise ModelError(f"pairwise entry ({i!r}, {j!r}) pairs a component with itself")
            if count < 0:
                raise ModelError(f"pairwise count for ({i!r}, {j!r}) is negative")
            key = (i, j) if i < j else (j, i)
            if key in canon and canon[key] != count:
                raise ModelError(f"conflicting pairwise counts for {key}")
            if count:
                canon[key] = count
        object.__setattr__(self, "pairwise", dict(sorted(canon.items())))

    @property
    def double_points(self) -> int:
        return sum(self.pairwise.values())

    def double_points_on(self, cid: str) -> int:
        return sum(c for (i, j), c in self.pairwise.items() if cid in (i, j))

    @property
    def divisor_square(self) -> int:
        return sum(c.self_int for c in self.components) + 2 * self.double_points

    @property
    def canonical_degree(self) -> int:
        return sum(c.k_deg for c in self.components)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "base": {"euler": self.base_euler, "ksq": self.base_ksq},
            "components": [c.to_dict() for c in self.components],
            "pairwise": [[i, j, c] for (i, j), c in self.pairwise.items()],
        }


def model_from_dict(data: Mapping) -> NormalCrossingModel:
    try:
        comps = tuple(
            Component(
                str(c["id"]),
                int(c["euler"]),
                int(c["self_int"]),
                int(c["k_deg"]),
                bool(c.get("exceptional", False)),
            )
            for c in data["components"]
        )
        pairwise = {}
        for entry in data.get("pairwise", []):
            i, j, count = entry
            key = (str(i), str(j))
            pairwise[key] = pairwise.get(key, 0) + int(count)
        return NormalCrossingModel(
            int(data["k"]), comps, pairwise, int(data["base"]["euler"]), int(data["base"]["ksq"])
        )
    except KeyError as exc:
        raise ModelError(f"model: missing field {exc.args[0]!r}") from None


def load_model(path) -> NormalCrossingModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def abelian_l1_model() -> NormalCrossingModel:
    """Four elliptic curves through one point of an abelian surface, blown up."""
    return load_model(DATA_DIR / "abelian_l1.json")


def _round_robin_profiles(combo: ArrangementCombinatorics) -> list[tuple[int, list[int]]]:
    """Assign each singular point to ``r`` distinct curves, cycling through them.

    Returns ``(r, curve indices)`` per point.  Only the totals matter for
    the homogeneous invariants.
    """
    k = combo.k
    cursor = 0
    points = []
    for r in sorted(combo.t, reverse=True):
        for _ in range(combo.t[r]):
            points.append((r, [(cursor + i) % k for i in range(r)]))
            cursor = (cursor + r) % k
    return points


def _points_from_profiles(combo: ArrangementCombinatorics, profiles: list[CurveProfile]):
    """Incidence lists realising ``profiles``: greedy by remaining capacity."""
    remaining = {p.j: dict(p.r_profile) for p in profiles}
    points = []
    for r in sorted(combo.t, reverse=True):
        for _ in range(combo.t[r]):
            avail = sorted(
                (j for j in remaining if remaining[j].get(r, 0) > 0),
                key=lambda j: (-remaining[j][r], j),
            )
            if len(avail) < r:
                raise ValidationError(f"profiles cannot host an {r}-fold point")
            chosen = avail[:r]
            for j in chosen:
                remaining[j][r] -= 1
            points.append((r, chosen))
    return points


def blowup_homogeneous(
    surface: SurfaceModel,
    combo: ArrangementCombinatorics,
    profiles: list[CurveProfile] | None = None,
) -> NormalCrossingModel:
    """Blow up the essential points of a single-class arrangement.

    With ``profiles`` the incidences follow them; otherwise points are
    spread over the curves round-robin.
    """
    report = validate_combinatorics(surface, combo, strict=False)
    if not report.get("R1").passed:
        raise ValidationError("combinatorics fail the counting identity (R1)")
    p = surface_parameters(surface)
    if profiles is not None:
        prep = validate_profiles(surface, combo, profiles)
        if not prep.ok:
            raise ValidationError("profile inconsistency: " + ", ".join(r.rule for r in prep.failures()))
        labels = [pr.j for pr in profiles]
        points = _points_from_profiles(combo, profiles)
    else:
        labels = list(range(combo.k))
        points = [(r, [labels[i] for i in idx]) for r, idx in _round_robin_profiles(combo)]

    gamma = {j: 0 for j in labels}
    pairwise: dict[tuple[str, str], int] = {}
    exceptional = []
    for idx, (r, through) in enumerate(points):
        if r == 2:
            key = tuple(sorted((f"C{through[0]}", f"C{through[1]}")))
            pairwise[key] = pairwise.get(key, 0) + 1
            continue
        eid = f"E{idx}"
        exceptional.append(Component(eid, 2, -1, -1, True))
        for j in through:
            gamma[j] += 1
            pairwise[(f"C{j}", eid)] = 1

    strict = [Component(f"C{j}", -(p.a + p.b), p.a - gamma[j], p.b + gamma[j]) for j in labels]
    m = len(exceptional)
    return NormalCrossingModel(
        combo.k, tuple(strict + exceptional), pairwise, p.euler + m, p.ksq - m
    )


def cover_euler_nc(model: NormalCrossingModel, n: int) -> int:
    """``e(Y) = n^(k-1) e(Z - D) + n^(k-2) sum_j e(D_j^o) + n^(k-3) N``."""
    if n < 2:
        raise DomainError(f"exponent n must be >= 2, got {n}")
    N = model.double_points
    open_part = model.base_euler - sum(c.euler for c in model.components) + N
    smooth_parts = sum(c.euler - model.double_points_on(c.id) for c in model.components)
    k = model.k
    total = Fraction(n) ** (k - 1) * open_part + Fraction(n) ** (k - 2) * smooth_parts + Fraction(n) ** (k - 3) * N
    if total.denominator != 1:
        raise ModelError(f"e(Y) = {total} is not an integer; check k = {k}")
    return int(total)


def cover_c1sq_nc(model: NormalCrossingModel, n: int) -> int:
    """``c1^2(Y) = n^(k-1) (K_Z + (n-1)/n D)^2``, expanded exactly."""
    if n < 2:
        raise DomainError(f"exponent n must be >= 2, got {n}")
    x = Fraction(n - 1, n)
    square = model.base_ksq + 2 * x * model.canonical_degree + x * x * model.divisor_square
    total = Fraction(n) ** (model.k - 1) * square
    if total.denominator != 1:
        raise ModelError(f"c1^2(Y) = {total} is not an integer; intersection data is inconsistent")
    return int(total)


def nc_summary(model: NormalCrossingModel, n: int) -> dict:
    e = cover_euler_nc(model, n)
    c1sq = cover_c1sq_nc(model, n)
    return {"e": e, "c1sq": c1sq, "bmy_gap": 3 * e - c1sq, "ball_quotient_necessary": 3 * e == c1sq}

