"""Base surfaces, arrangement combinatorics and their counting identities.

An arrangement is only ever seen through its numbers: the count ``k`` of
curves and the multiplicity histogram ``t[r]`` (number of points where
exactly ``r`` curves meet).  Every base surface reduces to four integers
``(a, b, e(W), K_W^2)`` where ``a`` is the self-intersection of a member
curve and ``b`` its canonical degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Union


class ValidationError(ValueError):
    """Raised for malformed inputs (bad surface bounds, inconsistent profiles)."""


class InvalidArrangementError(ValidationError):
    """Raised when combinatorics fail the counting identity; carries the report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        failed = ", ".join(r.rule for r in report.failures())
        super().__init__(f"arrangement rejected: {failed}")


# --------------------------------------------------------------------------
# surfaces


class SurfaceParameters(NamedTuple):
    a: int
    b: int
    euler: int
    ksq: int
    delta: int


@dataclass(frozen=True)
class HirzebruchSurface:
    """The ruled surface F_e; arrangement curves are sections in |(e+1)F + Γ|."""

    e: int

    def __post_init__(self):
        if not isinstance(self.e, int) or self.e < 0:
            raise ValidationError(f"HirzebruchSurface requires e >= 0, got e={self.e}")

    kind = "hirzebruch"

    def parameters(self) -> SurfaceParameters:
        return SurfaceParameters(self.e + 2, -self.e - 4, 4, 8, 4)


@dataclass(frozen=True)
class NefEffectiveCanonical:
    """A surface W with K_W nef and effective, curves from an ample system |A|.

    ``a = A^2`` and ``b = K_W . C_j``.
    """

    euler: int
    ksq: int
    a: int
    b: int

    kind = "nef_canonical"

    def __post_init__(self):
        if self.a < 1:
            raise ValidationError(f"NefEffectiveCanonical requires a >= 1 (A ample), got a={self.a}")
        if self.b < 0:
            raise ValidationError(f"NefEffectiveCanonical requires b >= 0 (K_W nef), got b={self.b}")
        if 3 * self.euler - self.ksq < 0:
            raise ValidationError(
                "NefEffectiveCanonical requires delta = 3*euler - ksq >= 0, "
                f"got {3 * self.euler - self.ksq}"
            )

    def parameters(self) -> SurfaceParameters:
        return SurfaceParameters(self.a, self.b, self.euler, self.ksq, 3 * self.euler - self.ksq)


@dataclass(frozen=True)
class ProjectivePlaneDeg:
    """The projective plane carrying a configuration of smooth degree-d curves."""

    d: int

    kind = "plane"

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValidationError(f"ProjectivePlaneDeg requires d >= 2, got d={self.d}")

    def parameters(self) -> SurfaceParameters:
        return SurfaceParameters(self.d * self.d, -3 * self.d, 3, 9, 0)


SurfaceModel = Union[HirzebruchSurface, NefEffectiveCanonical, ProjectivePlaneDeg]


def surface_parameters(surface: SurfaceModel) -> SurfaceParameters:
    """Return ``(a, b, e(W), K_W^2, delta)`` with ``delta = 3 e(W) - K_W^2``."""
    if not isinstance(surface, (HirzebruchSurface, NefEffectiveCanonical, ProjectivePlaneDeg)):
        raise ValidationError(f"unknown surface model {surface!r}")
    return surface.parameters()


def surface_to_dict(surface: SurfaceModel) -> dict:
    if isinstance(surface, HirzebruchSurface):
        return {"type": "hirzebruch", "e": surface.e}
    if isinstance(surface, ProjectivePlaneDeg):
        return {"type": "plane", "d": surface.d}
    return {
        "type": "nef_canonical",
        "euler": surface.euler,
        "ksq": surface.ksq,
        "a": surface.a,
        "b": surface.b,
    }


def surface_from_dict(data: Mapping) -> SurfaceModel:
    kind = data.get("type")
    try:
        if kind == "hirzebruch":
            return HirzebruchSurface(int(data["e"]))
        if kind == "plane":
            return ProjectivePlaneDeg(int(data["d"]))
        if kind == "nef_canonical":
            return NefEffectiveCanonical(
                int(data["euler"]), int(data["ksq"]), int(data["a"]), int(data["b"])
            )
    except KeyError as exc:
        raise ValidationError(f"surface: missing field {exc.args[0]!r}") from None
    raise ValidationError(f"surface.type: unknown surface type {kind!r}")


# --------------------------------------------------------------------------
# combinatorics


def _clean_counts(counts: Mapping[int, int], what: str) -> Mapping[int, int]:
    out = {}
    for r, c in counts.items():
        r, c = int(r), int(c)
        if r < 2:
            raise ValidationError(f"{what}: multiplicity r={r} must be >= 2")
        if c < 0:
            raise ValidationError(f"{what}: count at r={r} must be >= 0, got {c}")
        if c:
            out[r] = c
    return MappingProxyType(dict(sorted(out.items())))


@dataclass(frozen=True)
class ArrangementCombinatorics:
    """``k`` curves and the sparse histogram ``t[r]`` of r-fold points.

    Zero counts are dropped so that equal histograms compare equal.
    ``star_property`` records whether four members meet only in double and
    triple points; it only matters on Hirzebruch surfaces.
    """

    k: int
    t: Mapping[int, int] = field(default_factory=dict)
    star_property: bool = False

    def __post_init__(self):
        if self.k < 3:
            raise ValidationError(f"k must be >= 3, got k={self.k}")
        t = _clean_counts(self.t, "t")
        if t and max(t) > self.k:
            raise ValidationError(f"t: multiplicity r={max(t)} exceeds k={self.k}")
        object.__setattr__(self, "t", t)

    def __hash__(self):
        return hash((self.k, tuple(self.t.items()), self.star_property))

    def count(self, r: int) -> int:
        return self.t.get(r, 0)

    @property
    def t2(self) -> int:
        return self.t.get(2, 0)

    def f(self, i: int) -> int:
        return sum(r**i * c for r, c in self.t.items())

    @property
    def essential_points(self) -> int:
        return sum(c for r, c in self.t.items() if r >= 3)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "t": {str(r): c for r, c in self.t.items()},
            "star_property": self.star_property,
        }


def f_moments(combo: ArrangementCombinatorics) -> tuple[int, int, int]:
    """``(f0, f1, f2)`` with ``f_i = sum_r r^i t_r``."""
    return combo.f(0), combo.f(1), combo.f(2)


@dataclass(frozen=True)
class CurveProfile:
    """How many r-fold points of the arrangement lie on curve ``j``."""

    j: int
    r_profile: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "r_profile", _clean_counts(self.r_profile, f"profile {self.j}"))

    def __hash__(self):
        return hash((self.j, tuple(self.r_profile.items())))

    def count(self, r: int) -> int:
        return self.r_profile.get(r, 0)

    @property
    def r_j(self) -> int:
        return sum(self.r_profile.values())

    @property
    def gamma(self) -> int:
        return sum(c for r, c in self.r_profile.items() if r >= 3)

    @property
    def r2(self) -> int:
        return self.r_profile.get(2, 0)

    def to_dict(self) -> dict:
        return {"j": self.j, "r_profile": {str(r): c for r, c in self.r_profile.items()}}


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class RuleResult:
    rule: str
    passed: bool
    severity: str  # "error" or "warning"
    detail: str

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "passed": self.passed,
            "severity": self.severity,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[RuleResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if r.severity == "error")

    def failures(self) -> list[RuleResult]:
        return [r for r in self.results if not r.passed and r.severity == "error"]

    def warnings(self) -> list[RuleResult]:
        return [r for r in self.results if not r.passed and r.severity == "warning"]

    def get(self, rule: str) -> RuleResult:
        for r in self.results:
            if r.rule == rule:
                return r
        raise KeyError(rule)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "rules": [r.to_dict() for r in self.results]}


def counting_identity_holds(a: int, combo: ArrangementCombinatorics) -> bool:
    f0, f1, f2 = f_moments(combo)
    return a * (combo.k**2 - combo.k) == f2 - f1


def max_multiplicity(surface: SurfaceModel, k: int) -> int:
    """Largest multiplicity a definitional arrangement on ``surface`` may have."""
    if isinstance(surface, HirzebruchSurface):
        return k - 3  # strictly below k - 2
    return k - 1  # no point on all k curves


def validate_combinatorics(
    surface: SurfaceModel, combo: ArrangementCombinatorics, strict: bool = True
) -> ValidationReport:
    """Check the counting identity and the family's definitional constraints.

    Rules: R1 ``a(k^2-k) = f2 - f1``; R2 multiplicity cap; R3 ``k >= 5``
    where the family demands it (a warning when ``strict`` is off); R4 the
    ``f0 >= e + 6`` bound on Hirzebruch surfaces, always a warning.
    """
    a = surface_parameters(surface).a
    k = combo.k
    f0, f1, f2 = f_moments(combo)
    lhs = a * (k * k - k)
    results = [
        RuleResult(
            "R1",
            lhs == f2 - f1,
            "error",
            f"a(k^2-k) = {a}*{k * k - k} = {lhs}; f2 - f1 = {f2} - {f1} = {f2 - f1}",
        )
    ]

    cap = max_multiplicity(surface, k)
    over = [r for r in combo.t if r > cap]
    if isinstance(surface, HirzebruchSurface):
        rule = f"t_r = 0 for r >= k-2 = {k - 2}"
    else:
        rule = f"t_k = 0 (k = {k})"
    detail = rule if not over else f"{rule}; violated at r = {over}"
    results.append(RuleResult("R2", not over, "error", detail))

    needs_five = isinstance(surface, (HirzebruchSurface, NefEffectiveCanonical))
    r3_ok = k >= 5 or not needs_five
    results.append(
        RuleResult(
            "R3",
            r3_ok,
            "error" if strict else "warning",
            f"k = {k}" + ("" if not needs_five else " (family requires k >= 5)"),
        )
    )

    if isinstance(surface, HirzebruchSurface):
        floor = surface.e + 6
        results.append(
            RuleResult("R4", f0 >= floor, "warning", f"f0 = {f0}, lower bound e + 6 = {floor}")
        )
    return ValidationReport(tuple(results))


def validate_profiles(
    surface: SurfaceModel,
    combo: ArrangementCombinatorics,
    profiles: Iterable[CurveProfile],
) -> ValidationReport:
    """Check per-curve incidence counts against the arrangement.

    P1: each curve carries ``sum_r (r-1) r_{j,r} = a(k-1)``.
    P2: ``sum_j r_{j,r} = r t_r`` for every multiplicity.
    P3: the identity obtained by summing P1 over all curves, which must
    agree with R1 whenever P1 and P2 hold.
    """
    profiles = list(profiles)
    k = combo.k
    if len(profiles) != k:
        raise ValidationError(f"profiles: expected {k} entries, got {len(profiles)}")
    a = surface_parameters(surface).a
    target = a * (k - 1)

    results = []
    bad = [p.j for p in profiles if sum((r - 1) * c for r, c in p.r_profile.items()) != target]
    results.append(
        RuleResult(
            "P1",
            not bad,
            "error",
            f"sum_r (r-1) r_(j,r) = a(k-1) = {target} on every curve"
            + (f"; fails on curves {bad}" if bad else ""),
        )
    )

    multiplicities = sorted(set(combo.t) | {r for p in profiles for r in p.r_profile})
    bad_r = [r for r in multiplicities if sum(p.count(r) for p in profiles) != r * combo.count(r)]
    results.append(
        RuleResult(
            "P2",
            not bad_r,
            "error",
            "sum_j r_(j,r) = r t_r for every r" + (f"; fails at r = {bad_r}" if bad_r else ""),
        )
    )

    if not bad and not bad_r:
        summed = sum((r - 1) * c for p in profiles for r, c in p.r_profile.items())
        f0, f1, f2 = f_moments(combo)
        consistent = summed == k * target == f2 - f1
        results.append(
            RuleResult(
                "P3",
                consistent,
                "error",
                f"summed profiles {summed} = k a(k-1) = {k * target} = f2 - f1 = {f2 - f1}",
            )
        )
    return ValidationReport(tuple(results))


# --------------------------------------------------------------------------
# JSON input


def arrangement_from_dict(
    data: Mapping,
) -> tuple[SurfaceModel, ArrangementCombinatorics, list[CurveProfile] | None]:
    """Parse the arrangement JSON document used by the command line."""
    if "surface" not in data:
        raise ValidationError("missing field 'surface'")
    surface = surface_from_dict(data["surface"])
    if "k" not in data:
        raise ValidationError("missing field 'k'")
    try:
        t = {int(r): int(c) for r, c in data.get("t", {}).items()}
    except (TypeError, ValueError, AttributeError):
        raise ValidationError("t: expected an object mapping multiplicities to counts") from None
    combo = ArrangementCombinatorics(int(data["k"]), t, bool(data.get("star_property", False)))
    profiles = None
    if data.get("profiles") is not None:
        profiles = [
            CurveProfile(int(p["j"]), {int(r): int(c) for r, c in p.get("r_profile", {}).items()})
            for p in data["profiles"]
        ]
    return surface, combo, profiles
