"""Chern numbers of the Hirzebruch-Kummer cover and the BMY gap.

All arithmetic is exact.  The closed forms are written once, in
:func:`scaled_chern_formulas` and :func:`gap_coefficients`, over any ring
that supports ``+`` and ``*``; the certificate code feeds them symbolic
polynomials, everything else feeds them integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from hkcover.arrangements import (
    ArrangementCombinatorics,
    CurveProfile,
    HirzebruchSurface,
    InvalidArrangementError,
    NefEffectiveCanonical,
    SurfaceModel,
    f_moments,
    surface_parameters,
    validate_combinatorics,
)

# The printed linear term of the c2 formula drops the factor k; we restore it
# since that is the only form that specialises to the ruled-surface formula.
C2_LINEAR_TERM_NOTE = (
    "linear term of scaled c2 uses -(a+b)k (not -(a+b)); required to match "
    "the Hirzebruch-surface specialisation 2n(k - f1 + f0)"
)


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a formula."""


def scaled_chern_formulas(euler, ksq, a, b, k, f0, f1, t2, n):
    """``(c2/n^(k-3), c1^2/n^(k-3))`` of the cover, as ring elements."""
    lin = -(a + b) * k - 2 * f1 + 2 * f0
    c2 = n * n * (euler + (a + b) * k + f1 - f0) + n * lin + f1 - t2
    c1sq = n * n * (ksq + (a + 2 * b) * k + 3 * f1 - 4 * f0) + 2 * n * lin + a * k + f1 - f0 + t2
    return c2, c1sq


def gap_coefficients(delta, a, b, k, f0, f1, t2):
    """Coefficients ``(n^2, n, 1)`` of ``H(n) = (3 c2 - c1^2) / n^(k-3)``."""
    return (
        delta + (2 * a + b) * k + f0,
        -(a + b) * k - 2 * f1 + 2 * f0,
        -a * k + 2 * f1 + f0 - 4 * t2,
    )


@dataclass(frozen=True)
class ChernInvariants:
    n: int
    k: int
    scaled_c2: Fraction
    scaled_c1sq: Fraction
    total_c2: int
    total_c1sq: int
    bmy_gap_scaled: Fraction

    @property
    def total_gap(self) -> int:
        return 3 * self.total_c2 - self.total_c1sq

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "scaled_c2": self.scaled_c2,
            "scaled_c1sq": self.scaled_c1sq,
            "total_c2": self.total_c2,
            "total_c1sq": self.total_c1sq,
            "bmy_gap_scaled": self.bmy_gap_scaled,
            "bmy_gap_total": self.total_gap,
        }


@dataclass(frozen=True)
class HirzebruchQuadratic:
    """``H(n) = c2_coeff n^2 + c1_coeff n + c0_coeff``."""

    c2_coeff: Fraction
    c1_coeff: Fraction
    c0_coeff: Fraction

    def __call__(self, n) -> Fraction:
        return self.c2_coeff * n * n + self.c1_coeff * n + self.c0_coeff

    evaluate = __call__

    def to_dict(self) -> dict:
        return {"c2_coeff": self.c2_coeff, "c1_coeff": self.c1_coeff, "c0_coeff": self.c0_coeff}


def _checked(surface: SurfaceModel, combo: ArrangementCombinatorics):
    report = validate_combinatorics(surface, combo, strict=False)
    if not report.get("R1").passed:
        raise InvalidArrangementError(report)
    return surface_parameters(surface)


def cover_chern(surface: SurfaceModel, combo: ArrangementCombinatorics, n: int) -> ChernInvariants:
    """Chern numbers of the exponent-``n`` cover branched along ``combo``."""
    if n < 2:
        raise DomainError(f"exponent n must be >= 2, got {n}")
    p = _checked(surface, combo)
    f0, f1, _ = f_moments(combo)
    c2, c1sq = scaled_chern_formulas(p.euler, p.ksq, p.a, p.b, combo.k, f0, f1, combo.t2, n)
    scale = n ** (combo.k - 3)
    return ChernInvariants(
        n=n,
        k=combo.k,
        scaled_c2=Fraction(c2),
        scaled_c1sq=Fraction(c1sq),
        total_c2=c2 * scale,
        total_c1sq=c1sq * scale,
        bmy_gap_scaled=Fraction(3 * c2 - c1sq),
    )


def hirzebruch_polynomial(surface: SurfaceModel, combo: ArrangementCombinatorics) -> HirzebruchQuadratic:
    p = _checked(surface, combo)
    f0, f1, _ = f_moments(combo)
    coeffs = gap_coefficients(p.delta, p.a, p.b, combo.k, f0, f1, combo.t2)
    return HirzebruchQuadratic(*(Fraction(c) for c in coeffs))


# --------------------------------------------------------------------------
# positivity gates


@dataclass(frozen=True)
class ApplicabilityReport:
    status: str  # "applicable", "not_applicable" or "unknown"
    reasons: tuple[str, ...]
    values: dict
    count_source: str | None = None

    @property
    def applicable(self) -> bool:
        return self.status == "applicable"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "reasons": list(self.reasons),
            "values": self.values,
            "count_source": self.count_source,
        }


def bmy_applicability(
    surface: SurfaceModel,
    combo: ArrangementCombinatorics,
    profiles: Iterable[CurveProfile] | None = None,
    n: int = 2,
) -> ApplicabilityReport:
    """Decide whether the positivity argument licenses the BMY inequality.

    On F_e the log-canonical divisor is written with coefficients bounded
    below by ``(2n-1)/n - 3/2`` and ``(n-1)/n - 1/2``; its degree on each
    strict transform is at least
    ``-2 - (e+2)/n + (n-1)/n * #{singular points on the curve}``.  The
    point count comes from ``profiles`` (smallest over all curves) when
    given, otherwise from the floor ``e + 6``.
    """
    if isinstance(surface, NefEffectiveCanonical):
        ok = n >= 2
        return ApplicabilityReport(
            "applicable" if ok else "not_applicable",
            ("K effective by construction (K_W nef and effective)",) if ok else ("n < 2",),
            {"n": n},
        )
    if not isinstance(surface, HirzebruchSurface):
        return ApplicabilityReport(
            "unknown",
            ("no positivity gate for this surface family",),
            {"n": n},
        )

    e = surface.e
    reasons = []
    ap_bound = Fraction(2 * n - 1, n) - Fraction(3, 2)
    bj_bound = Fraction(n - 1, n) - Fraction(1, 2)
    profiles = list(profiles) if profiles is not None else None
    if profiles:
        count = min(p.r_j for p in profiles)
        source = "profiles"
    else:
        count = e + 6
        source = "lemma_floor"
    dc_bound = -2 - Fraction(e + 2, n) + Fraction(n - 1, n) * count

    if n < 2:
        reasons.append("n < 2")
    if e < 2:
        reasons.append(f"e = {e} < 2")
    if not combo.star_property:
        reasons.append("(•) fails")
    if ap_bound < 0:
        reasons.append(f"a_p lower bound {ap_bound} < 0")
    if bj_bound < 0:
        reasons.append(f"b_j lower bound {bj_bound} < 0")
    if dc_bound < 0:
        reasons.append(f"D.C_j' lower bound {dc_bound} < 0")
    if source == "lemma_floor":
        reasons.append("no profiles given: singular points per curve taken as the floor e + 6")

    blocking = [r for r in reasons if not r.startswith("no profiles")]
    return ApplicabilityReport(
        "not_applicable" if blocking else "applicable",
        tuple(reasons),
        {
            "n": n,
            "e": e,
            "a_p_lower_bound": ap_bound,
            "b_j_lower_bound": bj_bound,
            "singular_points_per_curve": count,
            "D_dot_C_lower_bound": dc_bound,
        },
        source,
    )
