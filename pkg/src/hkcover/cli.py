"""Command-line entry point.

Every subcommand writes one JSON document (or a CSV table) to stdout and
diagnostics to stderr.  Exit codes: 0 success or VALID, 1 validation
failure or INVALID result, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from hkcover.arrangements import (
    ValidationError,
    arrangement_from_dict,
    surface_to_dict,
    validate_combinatorics,
    validate_profiles,
)
from hkcover.ball_quotient import (
    FamilyPattern,
    UnsupportedCaseError,
    certify_nonexistence,
    necessary_condition_filter,
)
from hkcover.invariants import (
    C2_LINEAR_TERM_NOTE,
    DomainError,
    bmy_applicability,
    cover_chern,
    hirzebruch_polynomial,
)
from hkcover.nc_cover import ModelError, load_model, nc_summary
from hkcover.search import (
    DEFAULT_MAX_COUNT,
    DEFAULT_MAX_SUM,
    SearchSpec,
    run_search,
    verify_lemma_f0,
)
from hkcover.serialize import dumps, jsonable


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_arrangement(path):
    return arrangement_from_dict(_load_json(path))


def _sum_cap(default=DEFAULT_MAX_SUM) -> int:
    env = os.environ.get("HK_CAP_SUM")
    if env is None:
        return default
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"HK_CAP_SUM must be an integer, got {env!r}") from None


# --------------------------------------------------------------------------
# subcommands; each returns (document, exit code)


def cmd_validate(args):
    surface, combo, profiles = _load_arrangement(args.arrangement)
    report = validate_combinatorics(surface, combo, strict=args.strictness == "strict")
    doc = {
        "surface": surface_to_dict(surface),
        "combinatorics": combo.to_dict(),
        "report": report.to_dict(),
    }
    ok = report.ok
    if profiles is not None:
        prep = validate_profiles(surface, combo, profiles)
        doc["profiles_report"] = prep.to_dict()
        ok = ok and prep.ok
    for r in report.failures():
        print(f"rule {r.rule} failed: {r.detail}", file=sys.stderr)
    return doc, 0 if ok else 1


def _arrangement_or_fail(args):
    surface, combo, profiles = _load_arrangement(args.arrangement)
    report = validate_combinatorics(surface, combo, strict=False)
    if not report.get("R1").passed:
        print(f"rule R1 failed: {report.get('R1').detail}", file=sys.stderr)
        return None, {"report": report.to_dict()}
    return (surface, combo, profiles), report


def cmd_invariants(args):
    loaded, report = _arrangement_or_fail(args)
    if loaded is None:
        return report, 1
    surface, combo, profiles = loaded
    inv = cover_chern(surface, combo, args.exponent)
    doc = {
        "surface": surface_to_dict(surface),
        "combinatorics": combo.to_dict(),
        "invariants": inv.to_dict(),
        "applicability": bmy_applicability(surface, combo, profiles, args.exponent).to_dict(),
        # only R1 blocks the computation; every other finding is passed on
        "warnings": [r.to_dict() for r in report.results if not r.passed],
        "notes": [C2_LINEAR_TERM_NOTE],
    }
    return doc, 0


def cmd_hpoly(args):
    loaded, report = _arrangement_or_fail(args)
    if loaded is None:
        return report, 1
    surface, combo, _ = loaded
    return {
        "surface": surface_to_dict(surface),
        "combinatorics": combo.to_dict(),
        "hirzebruch_polynomial": hirzebruch_polynomial(surface, combo).to_dict(),
        "notes": [C2_LINEAR_TERM_NOTE],
    }, 0


def cmd_filter(args):
    _, combo, _ = _load_arrangement(args.arrangement)
    result = necessary_condition_filter(combo, args.exponent)
    return result.to_dict(), 0 if result.passed else 1


def cmd_certify(args):
    kind = args.family
    if args.symbolic:
        pattern = FamilyPattern.symbolic(kind)
    else:
        needed = {"hirzebruch": ("e",), "plane": ("d",), "nef": ("a", "b", "delta")}[kind]
        values = {name: getattr(args, name) for name in needed}
        missing = [f"--{n}" for n, v in values.items() if v is None]
        if missing:
            raise UsageError(f"certify --family {kind} needs {' '.join(missing)} or --symbolic")
        pattern = FamilyPattern(kind, values)
    cert = certify_nonexistence(pattern, args.exponent)
    return cert.to_dict(), 0 if cert.valid else 1


def cmd_search(args):
    data = _load_json(args.spec)
    caps = dict(data.get("caps", {}))
    caps["max_sum"] = _sum_cap(caps.get("max_sum", DEFAULT_MAX_SUM))
    if args.max_count is not None:
        caps["max_count"] = args.max_count
    spec = SearchSpec.from_dict(dict(data, caps=caps))
    report = run_search(spec, args.workers)
    return report, 0 if report.valid else 1


def cmd_nccover(args):
    model = load_model(args.model) if os.path.exists(args.model) else None
    if model is None:
        raise UsageError(f"cannot read {args.model}: no such file")
    return nc_summary(model, args.exponent), 0


def cmd_lemma(args):
    report = verify_lemma_f0(
        (args.e_min, args.e_max),
        (args.k_min, args.k_max),
        max_count=args.max_count or DEFAULT_MAX_COUNT,
        max_sum=_sum_cap(),
        workers=args.workers,
    )
    return report, 0 if report.valid else 1


# --------------------------------------------------------------------------
# output


def _pretty(value, indent=0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(_pretty(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(item)}")
        return "\n".join(lines)
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_pretty(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item)}")
        return "\n".join(lines)
    return pad + json.dumps(value)


def render(doc, fmt: str) -> str:
    if fmt == "csv":
        if not hasattr(doc, "to_csv"):
            raise UsageError("csv output is only available for search and lemma-f0")
        return doc.to_csv()
    if fmt == "pretty":
        return _pretty(jsonable(doc)) + "\n"
    return dumps(doc) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--strictness", choices=("strict", "permissive"), default="strict")
    common.add_argument("--workers", type=int, default=None, help="worker processes for search (default: all cores)")
    common.add_argument("--max-count", type=int, default=None, help="enumeration count cap")

    parser = argparse.ArgumentParser(
        prog="hkcover",
        description="Chern invariants of Hirzebruch-Kummer covers and ball-quotient checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an arrangement's combinatorics")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="Chern numbers of the cover")
    p.add_argument("arrangement")
    p.add_argument("--exponent", "-n", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("hpoly", parents=[common], help="the Hirzebruch polynomial H(n)")
    p.add_argument("arrangement")
    p.set_defaults(func=cmd_hpoly)

    p = sub.add_parser("filter", parents=[common], help="ball-quotient multiplicity filter")
    p.add_argument("arrangement")
    p.add_argument("--exponent", "-n", type=int, required=True)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("certify", parents=[common], help="replay a nonexistence certificate")
    p.add_argument("--family", choices=("hirzebruch", "nef", "plane"), required=True)
    p.add_argument("--exponent", "-n", type=int, choices=(2, 3, 5), required=True)
    p.add_argument("--e", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", parents=[common], help="run a search spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("nccover", parents=[common], help="invariants of a normal-crossing model")
    p.add_argument("model")
    p.add_argument("--exponent", "-n", type=int, required=True)
    p.set_defaults(func=cmd_nccover)

    p = sub.add_parser("lemma-f0", parents=[common], help="scan for violations of f0 >= e + 6")
    p.add_argument("--e-min", type=int, default=2)
    p.add_argument("--e-max", type=int, required=True)
    p.add_argument("--k-min", type=int, default=5)
    p.add_argument("--k-max", type=int, required=True)
    p.set_defaults(func=cmd_lemma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.func(args)
        text = render(doc, args.format)
    except (UsageError, ValidationError, ModelError, DomainError, UnsupportedCaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
