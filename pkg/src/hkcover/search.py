"""Exhaustive enumeration of arrangement combinatorics and parameter scans.

Feasible combinatorics are the solutions of the bounded knapsack

    sum_r r(r-1) t_r = a(k^2 - k),    t_r >= 0,

over the multiplicities a family allows.  Scans are split into
independent ``(parameters, k)`` cells; results are merged in sorted cell
order so the output does not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from hkcover.arrangements import (
    ArrangementCombinatorics,
    HirzebruchSurface,
    NefEffectiveCanonical,
    ProjectivePlaneDeg,
    SurfaceModel,
    ValidationError,
    max_multiplicity,
    surface_parameters,
)
from hkcover.ball_quotient import (
    ADMISSIBLE_MULTIPLICITY,
    FamilyPattern,
    certify_nonexistence,
    necessary_condition_filter,
    required_double_sixfold,
)
from hkcover.invariants import DomainError, hirzebruch_polynomial

DEFAULT_MAX_SUM = 10_000
DEFAULT_MAX_COUNT = 5_000_000
MODES = ("lemma_f0", "theorem_scan", "gap_minimum")
FAMILIES = ("hirzebruch", "nef_canonical", "plane")
LEMMA_ASSUMPTION = "f0 >= k assumed as an external side-condition (not re-proved)"


class EnumerationCapExceeded(RuntimeError):
    """Raised when an enumeration hits its count or sum cap."""

    def __init__(self, count: int, reason: str):
        self.count = count
        self.reason = reason
        super().__init__(f"enumeration cap exceeded after {count} solutions: {reason}")


# --------------------------------------------------------------------------
# enumeration


def allowed_multiplicities(surface: SurfaceModel, k: int) -> list[int]:
    return list(range(2, max_multiplicity(surface, k) + 1))


def _knapsack(weights: tuple[int, ...], target: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative ``x`` with ``sum(w * x) == target``, lexicographic in ``x``."""
    m = len(weights)
    # gcd of the weights from position i on decides whether a remainder is reachable
    tail_gcd = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        tail_gcd[i] = gcd(weights[i], tail_gcd[i + 1])

    @lru_cache(maxsize=None)
    def feasible(i: int, rest: int) -> bool:
        if i == m:
            return rest == 0
        g = tail_gcd[i]
        if rest % g:
            return False
        if i == m - 1:
            return True
        return any(feasible(i + 1, rest - x * weights[i]) for x in range(rest // weights[i] + 1))

    counts = [0] * m

    def walk(i: int, rest: int):
        if i == m - 1:
            counts[i] = rest // weights[i]
            yield tuple(counts)
            return
        for x in range(rest // weights[i] + 1):
            nxt = rest - x * weights[i]
            if feasible(i + 1, nxt):
                counts[i] = x
                yield from walk(i + 1, nxt)
        counts[i] = 0

    if m == 0:
        if target == 0:
            yield ()
        return
    if feasible(0, target):
        yield from walk(0, target)


def enumerate_combinatorics(
    surface: SurfaceModel,
    k: int,
    multiplicities: Sequence[int] | None = None,
    max_count: int | None = DEFAULT_MAX_COUNT,
    max_sum: int | None = DEFAULT_MAX_SUM,
) -> Iterator[ArrangementCombinatorics]:
    """Every histogram with ``sum r(r-1) t_r = a(k^2-k)`` over the allowed multiplicities.

    Order is lexicographic with the largest multiplicity varying slowest.
    ``multiplicities`` restricts the support (intersected with the allowed
    range); restricting to ``{2, r*}`` yields exactly the histograms that
    would pass :func:`necessary_condition_filter`.
    """
    a = surface_parameters(surface).a
    target = a * (k * k - k)
    if max_sum is not None and target > max_sum:
        raise EnumerationCapExceeded(0, f"target sum {target} exceeds cap {max_sum}")
    allowed = allowed_multiplicities(surface, k)
    if multiplicities is not None:
        allowed = [r for r in allowed if r in set(multiplicities)]
    rs = sorted(allowed, reverse=True)
    weights = tuple(r * (r - 1) for r in rs)
    count = 0
    for counts in _knapsack(weights, target):
        count += 1
        if max_count is not None and count > max_count:
            raise EnumerationCapExceeded(count - 1, f"more than {max_count} solutions")
        yield ArrangementCombinatorics(k, dict(zip(rs, counts)))


# --------------------------------------------------------------------------
# scan specification


@dataclass(frozen=True)
class SearchSpec:
    family: str
    params: dict  # name -> (lo, hi); nef_canonical also carries fixed euler/ksq
    k_range: tuple[int, int]
    n_set: tuple[int, ...] = (2, 3, 5)
    mode: str = "theorem_scan"
    max_count: int = DEFAULT_MAX_COUNT
    max_sum: int = DEFAULT_MAX_SUM
    time_budget: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"family: unknown family {self.family!r}")
        if self.mode not in MODES:
            raise ValidationError(f"mode: unknown mode {self.mode!r}")
        for name, (lo, hi) in list(self.params.items()) + [("k_range", self.k_range)]:
            if lo > hi:
                raise ValidationError(f"{name}: empty range [{lo}, {hi}]")
        if self.max_count <= 0 or self.max_sum <= 0:
            raise ValidationError("caps: limits must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValidationError("caps.time_budget must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "SearchSpec":
        family = data.get("family")
        names = {"hirzebruch": ("e",), "plane": ("d",), "nef_canonical": ("a", "b")}.get(family)
        if names is None:
            raise ValidationError(f"family: unknown family {family!r}")
        params = {}
        for name in names:
            key = f"{name}_range"
            if key not in data:
                raise ValidationError(f"missing field {key!r}")
            lo, hi = data[key]
            params[name] = (int(lo), int(hi))
        if family == "nef_canonical":
            params["euler"] = (int(data.get("euler", 0)),) * 2
            params["ksq"] = (int(data.get("ksq", 0)),) * 2
        if "k_range" not in data:
            raise ValidationError("missing field 'k_range'")
        caps = data.get("caps", {})
        return cls(
            family=family,
            params=params,
            k_range=tuple(int(x) for x in data["k_range"]),
            n_set=tuple(int(n) for n in data.get("n", (2, 3, 5))),
            mode=data.get("mode", "theorem_scan"),
            max_count=int(caps.get("max_count", DEFAULT_MAX_COUNT)),
            max_sum=int(caps.get("max_sum", DEFAULT_MAX_SUM)),
            time_budget=caps.get("time_budget"),
        )

    def cells(self) -> list[tuple[tuple[tuple[str, int], ...], int]]:
        """Sorted ``(params, k)`` cells."""
        grids = [[]]
        for name in sorted(self.params):
            lo, hi = self.params[name]
            grids = [g + [(name, v)] for g in grids for v in range(lo, hi + 1)]
        return [(tuple(g), k) for g in grids for k in range(self.k_range[0], self.k_range[1] + 1)]


def surface_for(family: str, params: dict) -> SurfaceModel:
    if family == "hirzebruch":
        return HirzebruchSurface(params["e"])
    if family == "plane":
        return ProjectivePlaneDeg(params["d"])
    return NefEffectiveCanonical(params["euler"], params["ksq"], params["a"], params["b"])


def _pattern(family: str) -> FamilyPattern:
    return FamilyPattern.symbolic({"nef_canonical": "nef"}.get(family, family))


# --------------------------------------------------------------------------
# cell workers (module level so they pickle)


def _theorem_cell(job):
    family, params, k, n_set, max_count, max_sum, deadline = job
    params = dict(params)
    out = {"params": params, "k": k, "per_n": {}, "complete": True}
    if deadline is not None and time.time() > deadline:
        out.update(complete=False, note="time budget exhausted before this cell")
        return out
    surface = surface_for(family, params)
    p = surface_parameters(surface)
    for n in n_set:
        r_star = ADMISSIBLE_MULTIPLICITY[n]
        req = required_double_sixfold(p.a, p.b, k) if n == 2 else None
        enumerated = hits = consistent = 0
        hit_list = []
        try:
            for combo in enumerate_combinatorics(surface, k, (2, r_star), max_count, max_sum):
                enumerated += 1
                if not necessary_condition_filter(combo, n).passed:
                    continue
                gap = hirzebruch_polynomial(surface, combo)(n)
                if req is not None and req.feasible and combo.t == req.combinatorics().t:
                    consistent += 1
                if gap == 0:
                    hits += 1
                    hit_list.append(combo.to_dict())
            status = {"complete": True}
        except EnumerationCapExceeded as exc:
            status = {"complete": False, "cap": exc.reason}
            out["complete"] = False
        entry = {
            "enumerated": enumerated,
            "hits": hits,
            "witnesses": hit_list,
            **status,
        }
        if req is not None:
            entry["required_double_sixfold_feasible"] = req.feasible
            entry["matching_required_counts"] = consistent
        out["per_n"][str(n)] = entry
    return out


def _gap_cell(job):
    family, params, k, n_set, max_count, max_sum, deadline = job
    params = dict(params)
    rows = []
    if deadline is not None and time.time() > deadline:
        for n in n_set:
            rows.append({"params": params, "k": k, "n": n, "complete": False, "note": "time budget exhausted"})
        return rows
    surface = surface_for(family, params)
    for n in n_set:
        support = (2, ADMISSIBLE_MULTIPLICITY[n]) if n in ADMISSIBLE_MULTIPLICITY else None
        best = witness = None
        row = {"params": params, "k": k, "n": n, "complete": True}
        try:
            for combo in enumerate_combinatorics(surface, k, support, max_count, max_sum):
                gap = hirzebruch_polynomial(surface, combo)(n)
                if best is None or gap < best:
                    best, witness = gap, combo
        except EnumerationCapExceeded as exc:
            row.update(complete=False, cap=exc.reason)
        if best is None:
            row.update(min_gap=None, witness=None, note="no feasible combinatorics")
        else:
            row.update(min_gap=best, witness=witness.to_dict())
        rows.append(row)
    return rows


def _lemma_cell(job):
    e, k, max_count, max_sum = job
    surface = HirzebruchSurface(e)
    cell = {"e": e, "k": k, "enumerated": 0, "with_f0_ge_k": 0, "counterexamples": [], "complete": True}
    try:
        for combo in enumerate_combinatorics(surface, k, None, max_count, max_sum):
            cell["enumerated"] += 1
            f0 = combo.f(0)
            if f0 < k:
                continue
            cell["with_f0_ge_k"] += 1
            if f0 < e + 6:
                cell["counterexamples"].append(combo.to_dict())
    except EnumerationCapExceeded as exc:
        cell.update(complete=False, cap=exc.reason)
    return cell


def _run(worker, jobs, workers: int | None):
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(jobs) <= 1:
        return [worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


# --------------------------------------------------------------------------
# reports


@dataclass
class ScanReport:
    mode: str
    family: str
    cells: list
    valid: bool
    complete: bool
    certificates: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "family": self.family,
            "valid": self.valid,
            "complete": self.complete,
            "certificates": self.certificates,
            "assumptions": self.assumptions,
            "cells": self.cells,
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for cell in self.cells:
            if self.mode == "gap_minimum":
                rows.append(
                    {
                        **{f"param_{k}": v for k, v in sorted(cell["params"].items())},
                        "k": cell["k"],
                        "n": cell["n"],
                        "min_gap": "" if cell.get("min_gap") is None else str(cell["min_gap"]),
                        "witness_t": _t_text(cell.get("witness")),
                        "complete": cell["complete"],
                        "note": cell.get("note", ""),
                    }
                )
            elif self.mode == "lemma_f0":
                rows.append(
                    {
                        "param_e": cell["e"],
                        "k": cell["k"],
                        "enumerated": cell["enumerated"],
                        "with_f0_ge_k": cell["with_f0_ge_k"],
                        "counterexamples": len(cell["counterexamples"]),
                        "complete": cell["complete"],
                    }
                )
            else:
                row = {f"param_{k}": v for k, v in sorted(cell["params"].items())}
                row["k"] = cell["k"]
                for n, entry in sorted(cell["per_n"].items()):
                    row[f"n{n}_enumerated"] = entry["enumerated"]
                    row[f"n{n}_hits"] = entry["hits"]
                row["complete"] = cell["complete"]
                rows.append(row)
        return rows

    def to_csv(self) -> str:
        rows = self.csv_rows()
        buf = io.StringIO()
        if rows:
            fieldnames = list(rows[0])
            for row in rows[1:]:
                fieldnames += [k for k in row if k not in fieldnames]
            writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()


def _t_text(witness) -> str:
    if not witness:
        return ""
    return ";".join(f"t{r}={c}" for r, c in witness["t"].items())


def _deadline(spec: SearchSpec):
    return None if spec.time_budget is None else time.time() + float(spec.time_budget)


def theorem_scan(spec: SearchSpec, workers: int | None = 1) -> ScanReport:
    """Look for H(n) = 0 among all filter-passing combinatorics of every cell."""
    bad_n = [n for n in spec.n_set if n not in ADMISSIBLE_MULTIPLICITY]
    if bad_n:
        raise DomainError(f"theorem_scan only covers n in 2, 3, 5; got {bad_n}")
    n_set = tuple(sorted(set(spec.n_set)))
    deadline = _deadline(spec)
    jobs = [(spec.family, p, k, n_set, spec.max_count, spec.max_sum, deadline) for p, k in spec.cells()]
    cells = _run(_theorem_cell, jobs, workers)
    hits = sum(entry["hits"] for c in cells for entry in c["per_n"].values())
    complete = all(c["complete"] for c in cells)
    certs = {}
    for n in n_set:
        cert = certify_nonexistence(_pattern(spec.family), n)
        certs[str(n)] = {"id": cert.id, "valid": cert.valid}
    # a capped cell proves nothing, so VALID needs completeness as well
    return ScanReport("theorem_scan", spec.family, cells, hits == 0 and complete, complete, certs)


def gap_minimum(spec: SearchSpec, workers: int | None = 1) -> ScanReport:
    """Smallest H(n) per cell over enumerated (filter-passing where defined) combinatorics."""
    n_set = tuple(sorted(set(spec.n_set)))
    deadline = _deadline(spec)
    jobs = [(spec.family, p, k, n_set, spec.max_count, spec.max_sum, deadline) for p, k in spec.cells()]
    rows = [row for chunk in _run(_gap_cell, jobs, workers) for row in chunk]
    complete = all(r["complete"] for r in rows)
    return ScanReport("gap_minimum", spec.family, rows, complete, complete)


def verify_lemma_f0(
    e_range: tuple[int, int],
    k_range: tuple[int, int],
    max_count: int = DEFAULT_MAX_COUNT,
    max_sum: int = DEFAULT_MAX_SUM,
    workers: int | None = 1,
) -> ScanReport:
    """Search F_e arrangements with ``f0 >= k`` for one violating ``f0 >= e + 6``."""
    if e_range[0] < 0:
        raise DomainError("e must be >= 0")
    if k_range[0] < 5:
        raise DomainError("rational section arrangements need k >= 5")
    jobs = [
        (e, k, max_count, max_sum)
        for e in range(e_range[0], e_range[1] + 1)
        for k in range(k_range[0], k_range[1] + 1)
    ]
    cells = _run(_lemma_cell, jobs, workers)
    found = sum(len(c["counterexamples"]) for c in cells)
    complete = all(c["complete"] for c in cells)
    return ScanReport(
        "lemma_f0", "hirzebruch", cells, found == 0 and complete, complete, assumptions=[LEMMA_ASSUMPTION]
    )


def run_search(spec: SearchSpec, workers: int | None = 1) -> ScanReport:
    if spec.mode == "theorem_scan":
        return theorem_scan(spec, workers)
    if spec.mode == "gap_minimum":
        return gap_minimum(spec, workers)
    if spec.family != "hirzebruch":
        raise ValidationError("mode lemma_f0 requires family 'hirzebruch'")
    return verify_lemma_f0(spec.params["e"], spec.k_range, spec.max_count, spec.max_sum, workers)
