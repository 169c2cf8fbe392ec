"""Proportionality conditions and machine-checked nonexistence certificates.

A ball-quotient cover forces every ramification component E to satisfy
``prop(E) = 2 E^2 - e(E) = 0``.  On exceptional curves this pins the
exponent to one multiplicity, ``(n - 1)(r - 2) = 4``; on strict
transforms (for ``n = 2``) it pins the per-curve and global counts of
double and sixfold points.  :func:`certify_nonexistence` replays the
three case analyses (n = 2, 3, 5) with symbolic polynomials, runs the
library's own gap formula on them, and confirms the result on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    HirzebruchSurface,
    NefEffectiveCanonical,
    ProjectivePlaneDeg,
    SurfaceModel,
    surface_parameters,
)
from hkcover.invariants import DomainError, gap_coefficients
from hkcover.poly import Poly, shifted_nonnegative

# exponent -> the one essential multiplicity with prop = 0
ADMISSIBLE_MULTIPLICITY = {5: 3, 3: 4, 2: 6}


class UnsupportedCaseError(ValueError):
    """Raised for family/exponent combinations outside the case analysis."""


# --------------------------------------------------------------------------
# proportionality


@dataclass(frozen=True)
class PropValue:
    n: int
    r: int
    value: int

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "value": self.value}


def prop_exceptional(n: int, r: int) -> PropValue:
    """prop of a component over an r-fold point: ``n^(r-2) ((r-2)(n-1) - 4)``."""
    if n < 2:
        raise DomainError(f"exponent n must be >= 2, got {n}")
    if r < 3:
        raise DomainError(f"multiplicity r must be >= 3 (only essential points are blown up), got {r}")
    return PropValue(n, r, n ** (r - 2) * ((r - 2) * (n - 1) - 4))


def admissible_pairs(n_max: int, r_max: int) -> set[tuple[int, int]]:
    """All ``(n, r)`` with ``(n-1)(r-2) = 4``, ``2 <= n <= n_max``, ``3 <= r <= r_max``."""
    out = set()
    for n in range(2, n_max + 1):
        q, rem = divmod(4, n - 1)
        if rem == 0 and 3 <= q + 2 <= r_max:
            out.add((n, q + 2))
    return out


@dataclass(frozen=True)
class FilterResult:
    n: int
    admissible_r: int
    passed: bool
    offending: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "admissible_r": self.admissible_r,
            "pass": self.passed,
            "offending": list(self.offending),
        }


def necessary_condition_filter(combo: ArrangementCombinatorics, n: int) -> FilterResult:
    """Only double points and the admissible multiplicity may occur."""
    if n not in ADMISSIBLE_MULTIPLICITY:
        raise DomainError(f"no admissible r exists for exponent n={n}")
    r_star = ADMISSIBLE_MULTIPLICITY[n]
    bad = tuple(r for r in combo.t if r not in (2, r_star))
    return FilterResult(n, r_star, not bad, bad)


def _ab(surface) -> tuple[int, int]:
    if isinstance(surface, tuple):
        return surface
    p = surface_parameters(surface)
    return p.a, p.b


def prop_curve_component(surface, k: int, n: int, profile: CurveProfile, scaled: bool = True) -> Fraction:
    """``prop(D_j) / n^(k-3)`` for the preimage of a strict transform.

    Equals ``prop(C_j) + (n-1)(r_j - e(C_j)) - 2 gamma_j`` with
    ``prop(C_j) = 3a + b`` and ``e(C_j) = -(a + b)`` by adjunction.
    ``surface`` is a surface model or a bare ``(a, b)`` pair.
    """
    a, b = _ab(surface)
    value = Fraction(3 * a + b + (n - 1) * (profile.r_j + a + b) - 2 * profile.gamma)
    return value if scaled else value * Fraction(n) ** (k - 3)


# --------------------------------------------------------------------------
# forced double/sixfold counts for n = 2


@dataclass(frozen=True)
class DoubleSixfold:
    a: int
    b: int
    k: int
    t2: Fraction
    t6: Fraction
    per_curve_r2: Fraction
    per_curve_r6: Fraction
    feasible: bool
    reasons: tuple[str, ...]

    def combinatorics(self) -> ArrangementCombinatorics:
        if not self.feasible:
            raise ValueError("required counts are infeasible")
        return ArrangementCombinatorics(self.k, {2: int(self.t2), 6: int(self.t6)})

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "k": self.k,
            "t2": self.t2,
            "t6": self.t6,
            "per_curve_r2": self.per_curve_r2,
            "per_curve_r6": self.per_curve_r6,
            "feasible": self.feasible,
            "reasons": list(self.reasons),
        }


def per_curve_double_sixfold(a, b, k):
    """Per-curve ``(r_{j,2}, r_{j,6})`` forced by prop(D_j) = 0 at n = 2.

    Generic over the coefficient ring so the certificates can reuse it.
    """
    return (a * (k - 1) - 20 * a - 10 * b) / 6, (a * (k - 1) + 4 * a + 2 * b) / 6


def global_double_sixfold(a, b, k):
    """``(t2, t6)`` solving ``2 t2 + 30 t6 = a(k^2-k)`` and ``2 t2 + 6 t6 = k(a(k-1) - 8a - 4b)/3``."""
    return (a * k * k - 21 * a * k - 10 * b * k) / 12, (a * k * k + 3 * a * k + 2 * b * k) / 36


def required_double_sixfold(a: int, b: int, k: int) -> DoubleSixfold:
    t2, t6 = global_double_sixfold(Fraction(a), Fraction(b), k)
    r2, r6 = per_curve_double_sixfold(Fraction(a), Fraction(b), k)
    reasons = []
    for name, value in (("t2", t2), ("t6", t6)):
        if value.denominator != 1:
            reasons.append(f"{name} = {value} is not an integer")
        if value < 0:
            reasons.append(f"{name} = {value} is negative")
    return DoubleSixfold(a, b, k, t2, t6, r2, r6, not reasons, tuple(reasons))


def check_profiles_double_sixfold(a: int, b: int, k: int, profiles) -> list[int]:
    """Indices of curves whose double plus sixfold count misses ``(a(k-1) - 8a - 4b)/3``."""
    target = Fraction(a * (k - 1) - 8 * a - 4 * b, 3)
    return [p.j for p in profiles if p.count(2) + p.count(6) != target]


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Step:
    relation: str
    anchor: str
    verified: bool
    kind: str = "identity"
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"relation": self.relation, "anchor": self.anchor, "verified": self.verified, "kind": self.kind}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class FamilyPattern:
    """A surface family with some (or none) of its parameters fixed."""

    kind: str  # "hirzebruch", "nef" or "plane"
    fixed: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def symbolic(cls, kind: str) -> "FamilyPattern":
        if kind not in FAMILY_VARIABLES:
            raise UnsupportedCaseError(f"unknown family {kind!r}")
        return cls(kind, {})

    @classmethod
    def from_surface(cls, surface: SurfaceModel) -> "FamilyPattern":
        if isinstance(surface, HirzebruchSurface):
            return cls("hirzebruch", {"e": surface.e})
        if isinstance(surface, ProjectivePlaneDeg):
            return cls("plane", {"d": surface.d})
        if isinstance(surface, NefEffectiveCanonical):
            p = surface.parameters()
            return cls("nef", {"a": p.a, "b": p.b, "delta": p.delta})
        raise UnsupportedCaseError(f"unknown surface {surface!r}")

    @property
    def is_symbolic(self) -> bool:
        return not self.fixed

    def label(self) -> str:
        if not self.fixed:
            return f"{self.kind}/symbolic"
        return self.kind + "/" + ",".join(f"{k}={v}" for k, v in sorted(self.fixed.items()))

    def to_dict(self) -> dict:
        out = {"type": self.kind, "constraints": [f"{v} >= {lo}" for v, lo in FAMILY_BOUNDS[self.kind].items()]}
        for var in FAMILY_VARIABLES[self.kind]:
            out[var] = self.fixed.get(var, "symbolic")
        return out


FAMILY_VARIABLES = {"hirzebruch": ("e",), "nef": ("a", "b", "delta"), "plane": ("d",)}
FAMILY_BOUNDS = {
    "hirzebruch": {"e": 2},
    "nef": {"a": 1, "b": 0, "delta": 0},
    "plane": {"d": 2},
}
K_MIN = 5

# grids for the numeric confirmation step
GRID_K = (5, 200)
GRID_PARAM = {
    "hirzebruch": {"e": (2, 50)},
    "plane": {"d": (2, 50)},
    "nef": {"a": (1, 8), "b": (0, 8), "delta": (0, 3)},
}


@dataclass(frozen=True)
class Certificate:
    id: str
    family: FamilyPattern
    n: int
    steps: tuple[Step, ...]
    conclusion: dict

    @property
    def valid(self) -> bool:
        return all(s.verified for s in self.steps)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "family": self.family.to_dict(),
            "n": self.n,
            "steps": [s.to_dict() for s in self.steps],
            "conclusion": self.conclusion,
            "valid": self.valid,
        }


def _symbols(family: FamilyPattern):
    """``(a, b, delta)`` as polynomials, plus lower bounds for the free variables."""
    vals = {v: (Poly.const(family.fixed[v]) if v in family.fixed else Poly.var(v)) for v in FAMILY_VARIABLES[family.kind]}
    if family.kind == "hirzebruch":
        e = vals["e"]
        abd = (e + 2, -e - 4, Poly.const(4))
    elif family.kind == "plane":
        d = vals["d"]
        abd = (d * d, -3 * d, Poly.const(0))
    else:
        abd = (vals["a"], vals["b"], vals["delta"])
    bounds = {v: lo for v, lo in FAMILY_BOUNDS[family.kind].items() if v not in family.fixed}
    return abd, bounds


def _check_fixed(family: FamilyPattern):
    for var, value in family.fixed.items():
        if var not in FAMILY_VARIABLES[family.kind]:
            raise UnsupportedCaseError(f"{family.kind}: unexpected parameter {var!r}")
        lo = FAMILY_BOUNDS[family.kind][var]
        if value < lo:
            raise UnsupportedCaseError(f"{family.kind}: {var} = {value} outside the case analysis ({var} >= {lo})")
    missing = set(FAMILY_VARIABLES[family.kind]) - set(family.fixed)
    if family.fixed and missing:
        raise UnsupportedCaseError(f"{family.kind}: parameters {sorted(missing)} must all be fixed or all symbolic")


def _family_step(family: FamilyPattern, abd) -> Step:
    a, b, delta = abd
    text = f"a = {a}, b = {b}, delta = {delta}"
    if family.kind == "nef":
        return Step(text, "surface-parameters", True, "definition", "model input")
    # cross-check against the surface models at the fixed value or a few samples
    var = FAMILY_VARIABLES[family.kind][0]
    cls = HirzebruchSurface if family.kind == "hirzebruch" else ProjectivePlaneDeg
    samples = [family.fixed[var]] if family.fixed else range(FAMILY_BOUNDS[family.kind][var], 12)
    ok = True
    for s in samples:
        p = surface_parameters(cls(s))
        ok &= (p.a, p.b, p.delta) == tuple(x.evaluate({var: s}) for x in abd)
    return Step(text, "surface-parameters", ok, "definition")


def _gap_at(n: int, abd, k, f0, f1, t2) -> Poly:
    a, b, delta = abd
    c2, c1, c0 = gap_coefficients(delta, a, b, k, f0, f1, t2)
    return c2 * (n * n) + c1 * n + c0


def _positivity(expr: Poly, bounds: dict, anchor: str, strict: bool = True) -> Step:
    ok, shifted = shifted_nonnegative(expr, bounds, strict)
    cond = ", ".join(f"{v} >= {lo}" for v, lo in sorted(bounds.items()))
    return Step(
        f"{expr} {'>' if strict else '>='} 0 for {cond}",
        anchor,
        ok,
        "positivity",
        f"after shifting to the lower bounds: {shifted}",
    )


def certify_nonexistence(family: FamilyPattern | SurfaceModel | str, n: int, grid: bool = True) -> Certificate:
    """Replay the nonexistence argument for ``family`` at exponent ``n``.

    ``family`` is a family name (fully symbolic), a :class:`FamilyPattern`,
    or a concrete surface model (all parameters fixed).
    """
    if isinstance(family, str):
        family = FamilyPattern.symbolic(family)
    elif not isinstance(family, FamilyPattern):
        family = FamilyPattern.from_surface(family)
    if family.kind not in FAMILY_VARIABLES:
        raise UnsupportedCaseError(f"unknown family {family.kind!r}")
    if n not in ADMISSIBLE_MULTIPLICITY:
        raise UnsupportedCaseError(f"exponent n={n} is outside the case analysis (n in 2, 3, 5)")
    _check_fixed(family)

    abd, bounds = _symbols(family)
    bounds = dict(bounds, k=K_MIN)
    r_star = ADMISSIBLE_MULTIPLICITY[n]
    steps = [
        _family_step(family, abd),
        Step(
            f"prop over an r-fold point vanishes only at r = {r_star} for n = {n}",
            "exceptional-proportionality",
            prop_exceptional(n, r_star).value == 0
            and all(prop_exceptional(n, r).value != 0 for r in range(3, 60) if r != r_star),
            "identity",
            f"(n-1)(r-2) = 4 forces r = {r_star}; t_r = 0 for r not in (2, {r_star})",
        ),
    ]
    if n == 2:
        body, conclusion = _case_n2(family, abd, bounds)
    else:
        body, conclusion = _case_positive(family, n, abd, bounds)
    steps.extend(body)
    if grid:
        steps.append(grid_confirmation(family, n))
    cert_id = f"{family.label()}/n={n}"
    return Certificate(cert_id, family, n, tuple(steps), conclusion)


def _case_positive(family: FamilyPattern, n: int, abd, bounds):
    """n = 3 (support {2,4}) or n = 5 (support {2,3}): H(n)/4 is a sum of positive terms."""
    a, b, delta = abd
    k, t2 = Poly.var("k"), Poly.var("t2")
    r_star = ADMISSIBLE_MULTIPLICITY[n]
    ts = Poly.var(f"t{r_star}")
    f0 = t2 + ts
    f1 = 2 * t2 + r_star * ts
    reduced = _gap_at(n, abd, k, f0, f1, t2) / 4

    if n == 3:
        general = Fraction(9, 4) * delta + (Fraction(7, 2) * a + Fraction(3, 2) * b) * k + t2
        general_text = "(9/4)delta(W) + ((7/2)a + (3/2)b)k + t2"
        ruled_text = "9 + (2e+1)k + t2"
    else:
        general = Fraction(25, 4) * delta + (11 * a + 5 * b) * k + 4 * t2 + 3 * ts
        general_text = "(25/4)delta(W) + (11a + 5b)k + 4t2 + 3t3"
        ruled_text = "25 + (6e+2)k + 4t2 + 3t3"

    steps = [
        Step(
            f"H({n})/4 with t supported on (2, {r_star}) = {reduced}",
            f"hirzebruch-polynomial/n={n}",
            True,
            "identity",
            "computed by the library gap formula on symbolic counts",
        ),
        Step(
            f"H({n})/4 = {general_text}",
            f"gap-reduction/n={n}",
            (reduced - general).is_zero(),
        ),
    ]
    target = general
    shown = general_text
    if family.kind == "hirzebruch":
        e = Poly.const(family.fixed["e"]) if family.fixed else Poly.var("e")
        if n == 3:
            ruled = 9 + (2 * e + 1) * k + t2
        else:
            ruled = 25 + (6 * e + 2) * k + 4 * t2 + 3 * ts
        steps.append(
            Step(
                f"{general_text} = {ruled_text} on F_e",
                f"gap-reduction-ruled/n={n}",
                (general - ruled).is_zero(),
            )
        )
        target, shown = ruled, ruled_text
    pos_bounds = dict(bounds, t2=0, **{f"t{r_star}": 0})
    steps.append(_positivity(target, {v: pos_bounds[v] for v in target.variables}, f"positivity/n={n}"))
    relation = f"0 = H_C({n}) = {shown} > 0" if family.kind == "hirzebruch" else f"0 = {shown} > 0"
    conclusion = {
        "relation": relation,
        "instance": f"0 = {target} > 0",
        "truth": "left side = 0, right side > 0",
        "holds": False,
    }
    return steps, conclusion


def _case_n2(family: FamilyPattern, abd, bounds):
    a, b, delta = abd
    k, t2, t6 = Poly.var("k"), Poly.var("t2"), Poly.var("t6")
    steps = []

    gap = _gap_at(2, abd, k, t2 + t6, 2 * t2 + 6 * t6, t2)
    eq5 = 4 * delta + (5 * a + 2 * b) * k + t2 - 3 * t6
    steps.append(
        Step(
            "H(2) with t supported on (2, 6) = 4delta(W) + (5a+2b)k + t2 - 3t6",
            "hirzebruch-polynomial/n=2",
            (gap - eq5).is_zero(),
            "identity",
            f"library gap formula gives {gap}",
        )
    )

    # per-curve: prop(D_j) = 0 together with the per-curve incidence count
    r2, r6 = per_curve_double_sixfold(a, b, k)
    prop_dj = 3 * a + b + (r2 + r6 + a + b) - 2 * r6
    incidence = r2 + 5 * r6 - a * (k - 1)
    per_curve_sum = (a * (k - 1) - 8 * a - 4 * b) / 3
    steps.append(
        Step(
            "r_(j,2) + r_(j,6) = (a(k-1) - 8a - 4b)/3",
            "strict-transform-proportionality",
            prop_dj.is_zero() and incidence.is_zero() and (r2 + r6 - per_curve_sum).is_zero(),
            "identity",
            f"unique solution of prop(D_j) = 0 and r2 + 5 r6 = a(k-1): r_(j,2) = {r2}, r_(j,6) = {r6}",
        )
    )

    # global: two linear equations in (t2, t6), determinant 2*6 - 30*2 != 0
    g2, g6 = global_double_sixfold(a, b, k)
    eq_identity = 2 * g2 + 30 * g6 - a * (k * k - k)
    eq_f1 = 2 * g2 + 6 * g6 - k * per_curve_sum
    steps.append(
        Step(
            "t2 = (ak^2 - 21ak - 10bk)/12, t6 = (ak^2 + 3ak + 2bk)/36",
            "double-sixfold-constraints",
            eq_identity.is_zero() and eq_f1.is_zero() and 2 * 6 - 30 * 2 != 0,
            "identity",
            "unique solution of 2t2 + 30t6 = a(k^2-k) and 2t2 + 6t6 = f1 = k(a(k-1) - 8a - 4b)/3",
        )
    )

    substituted = eq5.subs({"t2": g2, "t6": g6})
    reduced = 4 * delta + (3 * a + b) * k
    steps.append(
        Step(
            "substituting: 4delta(W) + (3a+b)k = 0",
            "gap-after-substitution/n=2",
            (substituted - reduced).is_zero(),
            "identity",
            f"H(2) = {substituted}",
        )
    )

    if family.kind == "hirzebruch":
        e = Poly.const(family.fixed["e"]) if family.fixed else Poly.var("e")
        target = (e + 1) * k
        steps.append(
            Step(
                "4delta(W) + (3a+b)k = 2(8 + (e+1)k) on F_e",
                "ruled-specialisation/n=2",
                (reduced - 2 * (8 + target)).is_zero(),
            )
        )
        steps.append(_positivity(target, {v: bounds[v] for v in target.variables}, "positivity/n=2"))
        relation = "-8 = (e+1)k"
        instance = f"-8 = {target}"
        truth = "left side < 0, right side > 0"
    elif family.kind == "plane":
        d = Poly.const(family.fixed["d"]) if family.fixed else Poly.var("d")
        scaled = reduced * 12
        target = 36 * d * (d - 1)
        steps.append(
            Step(
                "12 (4delta + (3a+b)k) = 36d(d-1) k with delta = 0",
                "plane-specialisation/n=2",
                (scaled - target * k).is_zero(),
                "identity",
                f"3d(d-1)k = 0 before rescaling; reduced form {reduced}",
            )
        )
        steps.append(_positivity(target, {v: bounds[v] for v in target.variables}, "positivity/n=2"))
        relation = "36d(d-1) = 0"
        instance = f"{target} = 0"
        truth = "left side > 0, right side = 0"
    else:
        three_ab = 3 * a + b
        steps.append(_positivity(three_ab * k, {v: bounds[v] for v in (three_ab * k).variables}, "positivity/n=2"))
        steps.append(_positivity(delta, {v: bounds[v] for v in delta.variables}, "nonnegative-base-gap", strict=False))
        relation = "0 < (3a+b)k = -4delta(W) <= 0"
        instance = f"0 < {three_ab * k} = {-4 * delta} <= 0"
        truth = "left side > 0, right side <= 0"
    conclusion = {"relation": relation, "instance": instance, "truth": truth, "holds": False}
    return steps, conclusion


# --------------------------------------------------------------------------
# numeric confirmation


def _grid_cells(family: FamilyPattern):
    """Yield ``(params, a, b, delta, cap_offset)`` over the family's grid."""
    ranges = GRID_PARAM[family.kind]
    if family.kind == "hirzebruch":
        values = [family.fixed["e"]] if family.fixed else range(ranges["e"][0], ranges["e"][1] + 1)
        for e in values:
            yield {"e": e}, e + 2, -e - 4, 4, 3
    elif family.kind == "plane":
        values = [family.fixed["d"]] if family.fixed else range(ranges["d"][0], ranges["d"][1] + 1)
        for d in values:
            yield {"d": d}, d * d, -3 * d, 0, 1
    else:
        if family.fixed:
            f = family.fixed
            yield dict(f), f["a"], f["b"], f["delta"], 1
            return
        for a in range(ranges["a"][0], ranges["a"][1] + 1):
            for b in range(ranges["b"][0], ranges["b"][1] + 1):
                for delta in range(ranges["delta"][0], ranges["delta"][1] + 1):
                    yield {"a": a, "b": b, "delta": delta}, a, b, delta, 1


def _gap_int(n, delta, a, b, k, t):
    f0 = sum(t.values())
    f1 = sum(r * c for r, c in t.items())
    c2, c1, c0 = gap_coefficients(delta, a, b, k, f0, f1, t.get(2, 0))
    return c2 * n * n + c1 * n + c0


def grid_counterexamples(family: FamilyPattern, n: int, k_range=GRID_K) -> tuple[int, list[dict]]:
    """Evaluate the exact gap on every grid cell; return ``(cells, counterexamples)``.

    n = 2: the forced ``(t2, t6)``, when they are nonnegative integers, must
    give a nonzero gap equal to ``4 delta + (3a+b)k``.  n = 3, 5: the
    feasible counts supported on ``{2, r*}`` form a segment on which the
    gap is affine, so positivity at both endpoints rules out a zero.
    """
    r_star = ADMISSIBLE_MULTIPLICITY[n]
    w = r_star * (r_star - 1)
    cells = 0
    bad = []
    for params, a, b, delta, offset in _grid_cells(family):
        for k in range(k_range[0], k_range[1] + 1):
            cells += 1
            target = a * (k * k - k)
            if n == 2:
                n2, rem2 = divmod(a * k * k - 21 * a * k - 10 * b * k, 12)
                n6, rem6 = divmod(a * k * k + 3 * a * k + 2 * b * k, 36)
                if rem2 or rem6 or n2 < 0 or n6 < 0:
                    continue
                if 6 > k - offset and n6 > 0:
                    continue  # sixfold points not allowed at this k
                gap = _gap_int(2, delta, a, b, k, {2: n2, 6: n6})
                if gap == 0 or gap != 4 * delta + (3 * a + b) * k or 2 * n2 + 30 * n6 != target:
                    bad.append(dict(params, k=k, t2=n2, t6=n6, gap=gap))
                continue
            top = target // w if r_star <= k - offset else 0
            for ts in sorted({0, top}):
                t = {2: (target - w * ts) // 2, r_star: ts}
                gap = _gap_int(n, delta, a, b, k, t)
                if gap <= 0:
                    bad.append(dict(params, k=k, t=t, gap=gap))
    return cells, bad


def grid_confirmation(family: FamilyPattern, n: int) -> Step:
    cells, bad = grid_counterexamples(family, n)
    if family.fixed:
        desc = family.label()
    else:
        desc = ", ".join(f"{v} in [{lo}, {hi}]" for v, (lo, hi) in GRID_PARAM[family.kind].items())
    return Step(
        f"no zero of H({n}) on the grid {desc}, k in [{GRID_K[0]}, {GRID_K[1]}]",
        f"grid-confirmation/n={n}",
        not bad,
        "grid",
        f"{cells} cells, {len(bad)} counterexamples" + (f"; first: {bad[0]}" if bad else ""),
    )
