"""carlitz_rank.cli — the `carlitz-rank` command.

    carlitz-rank field --field 3^2
    carlitz-rank crk --field 7 --perm 0,2,4,6,1,3,5
    carlitz-rank crk --field 3^2 --form 1,0,1,0
    carlitz-rank mu --field 7 --form 1,0,1,0 --g 0,1
    carlitz-rank curve --field 11 --k 2 --b 1 --c 3
    carlitz-rank verify main --field 5 --field 7 --n-max 2 --k-max 3
    carlitz-rank verify monomial --acceptance --workers 4 --out report.json
    carlitz-rank example-f9

Exit codes: 0 PASS, 1 counterexample found, 2 bad configuration or usage,
3 internal error. Reports go to stdout unless --out is given; logs go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

from .bounds import collision_count
from .campaign import CampaignConfig, CampaignKind, FieldRef
from .carlitz import CarlitzForm, carlitz_rank, classify, expand_form, pole_set
from .curves import curve_affine_count
from .errors import (
    BoundsError,
    CampaignError,
    CarlitzRankError,
    FieldError,
    FormError,
    IoFailureError,
)
from .field import FieldSpec, construct_field, generators, primitive_element
from .harness import run_campaign
from .poly import PermMap, Poly

logger = logging.getLogger("carlitz_rank")

EXIT_PASS, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

VERIFY_KINDS = {
    "main": CampaignKind.MAIN,
    "monomial": CampaignKind.MONOMIAL,
    "corollary": CampaignKind.COROLLARY,
    "example-f9": CampaignKind.EXAMPLE_F9,
    "mu": CampaignKind.MU_SWEEP,
    "curve": CampaignKind.CURVE_SWEEP,
}


def _codes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _field_ref(text: str) -> FieldRef:
    try:
        return FieldRef.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected P, P^R or P,R, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carlitz-rank",
        description="Carlitz rank and permutation-difference bounds over finite fields.")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_field(p: argparse.ArgumentParser, *, many: bool = False) -> None:
        p.add_argument("--field", type=_field_ref, action="append" if many else "store",
                       help="GF(q) as P, P^R or P,R" + (" (repeatable)" if many else ""))
        p.add_argument("--p", type=int, help="characteristic (with --r)")
        p.add_argument("--r", type=int, default=1, help="extension degree")

    p_field = sub.add_parser("field", help="describe GF(p^r)")
    with_field(p_field)

    p_crk = sub.add_parser("crk", help="Carlitz rank of a permutation or a form")
    with_field(p_crk)
    target = p_crk.add_mutually_exclusive_group(required=True)
    target.add_argument("--perm", type=_codes, help="image table f(0),...,f(q-1)")
    target.add_argument("--form", help="form coefficients a0,a1,...")
    p_crk.add_argument("--cap", type=int, default=None)

    p_mu = sub.add_parser("mu", help="collision count of an L1 form and g")
    with_field(p_mu)
    p_mu.add_argument("--form", required=True)
    p_mu.add_argument("--g", type=_codes, required=True, help="g coefficients, lowest first")

    p_curve = sub.add_parser("curve", help="point counts of y^(k+1) = b(x-1)/(c x(x^k-1))")
    with_field(p_curve)
    p_curve.add_argument("--k", type=int, required=True)
    p_curve.add_argument("--b", type=int, required=True)
    p_curve.add_argument("--c", type=int, required=True)

    p_verify = sub.add_parser("verify", help="run a verification campaign")
    p_verify.add_argument("kind", choices=sorted(VERIFY_KINDS))
    with_field(p_verify, many=True)
    p_verify.add_argument("--acceptance", action="store_true",
                          help="start from the campaign's acceptance grid")
    p_verify.add_argument("--n-max", type=int)
    p_verify.add_argument("--k-max", type=int)
    p_verify.add_argument("--budget", type=int, help="pairs per cell; 0 = exhaustive")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--samples", type=int, help="oracle / curve samples per cell")
    p_verify.add_argument("--workers", type=int)
    p_verify.add_argument("--out")
    p_verify.add_argument("--format", choices=["json", "csv"])

    p_example = sub.add_parser("example-f9", help="the rank-3 example over F_9")
    p_example.add_argument("--out")
    p_example.add_argument("--format", choices=["json", "csv"])
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _spec(args: argparse.Namespace) -> FieldSpec:
    if args.field is not None:
        return args.field.spec()
    if args.p is None:
        raise argparse.ArgumentTypeError("give --field or --p")
    return construct_field(args.p, args.r)


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _cmd_field(args: argparse.Namespace) -> int:
    spec = _spec(args)
    _emit({"p": spec.p, "r": spec.r, "q": spec.q, "modulus": list(spec.modulus),
           "primitive_element": primitive_element(spec),
           "generators": generators(spec)})
    return EXIT_PASS


def _cmd_crk(args: argparse.Namespace) -> int:
    spec = _spec(args)
    if args.form is not None:
        form = CarlitzForm.parse(spec, args.form)
        perm = expand_form(form)
        extra = {"form": str(form), "length": form.n, "form_class": classify(form).value,
                 "poles": [x if isinstance(x, int) else x.value for x in pole_set(form).points]}
    else:
        perm = PermMap.from_codes(spec, args.perm)
        extra = {}
    result = carlitz_rank(perm, cap=args.cap)
    _emit({"q": spec.q, "images": list(perm.images), "rank": result.rank,
           "cap": result.cap,
           "witness": str(result.witness) if result.witness else None, **extra})
    return EXIT_PASS


def _cmd_mu(args: argparse.Namespace) -> int:
    spec = _spec(args)
    report = collision_count(CarlitzForm.parse(spec, args.form), Poly(spec, args.g))
    _emit(report.model_dump(mode="json"))
    return EXIT_PASS


def _cmd_curve(args: argparse.Namespace) -> int:
    report = curve_affine_count(_spec(args), args.k, args.b, args.c)
    _emit(report.model_dump(mode="json"))
    return EXIT_PASS


def _campaign_values(args: argparse.Namespace, kind: CampaignKind) -> dict[str, Any]:
    values: dict[str, Any] = {}
    if getattr(args, "field", None):
        values["fields"] = args.field
    elif getattr(args, "p", None) is not None:
        values["fields"] = [FieldRef(p=args.p, r=args.r)]
    for flag, name in (("n_max", "n_max"), ("k_max", "k_max"), ("budget", "budget"),
                       ("seed", "seed"), ("workers", "workers"), ("out", "out"),
                       ("format", "format")):
        value = getattr(args, flag, None)
        if value is not None:
            values[name] = value
    samples = getattr(args, "samples", None)
    if samples is not None:
        values["curve_samples" if kind is CampaignKind.CURVE_SWEEP else "oracle_samples"] = samples
    return values


def _cmd_verify(args: argparse.Namespace, kind: CampaignKind) -> int:
    values = _campaign_values(args, kind)
    if getattr(args, "acceptance", False) or kind is CampaignKind.EXAMPLE_F9:
        config = CampaignConfig.acceptance(kind, **values)
    else:
        config = CampaignConfig.build(campaign=kind, **values)
    report = run_campaign(config)
    if config.out is None:
        sys.stdout.write(report.render(config.format))
    else:
        print(f"{kind.value}: {report.verdict} -> {config.out}", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_COUNTEREXAMPLE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "field":
            return _cmd_field(args)
        if args.command == "crk":
            return _cmd_crk(args)
        if args.command == "mu":
            return _cmd_mu(args)
        if args.command == "curve":
            return _cmd_curve(args)
        if args.command == "example-f9":
            return _cmd_verify(args, CampaignKind.EXAMPLE_F9)
        return _cmd_verify(args, VERIFY_KINDS[args.kind])
    except IoFailureError as exc:
        logger.error("%s", exc)
        return EXIT_INTERNAL
    except (FieldError, FormError, BoundsError, CampaignError,
            argparse.ArgumentTypeError, ValueError) as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CarlitzRankError as exc:
        logger.error("%s", exc)
        return EXIT_INTERNAL
    except Exception:
        logger.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
