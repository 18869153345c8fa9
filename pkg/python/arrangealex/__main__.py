"""Twisted Alexander polynomials of complex line arrangements.

For more information on the different commands run ``<command> --help``.

Exit status: 0 if all requested checks pass, 1 if a check fails and 2 for
invalid input or inapplicable formulas.
"""
import argparse
import fractions
import json
import logging
import sys

import numpy as np
import yaml

from . import corpus, verify
from .arrangement import incidence_summary, projective_points
from .closed_forms import closed_form_report
from .config import EngineConfig
from .errors import ArrangealexError, InapplicableError, InputError
from .fields import (
    CyclotomicElement,
    GaussianRational,
    format_rational,
)
from .fox import (
    TwistSpec,
    require_valid,
    twisted_invariants,
    zero_weight_loops,
)
from .laurent import LaurentPoly, divides
from .marked_graph import verify_assumptions
from .presentation import FreeWord, arvola, strand_history
from .roots import falk_distinguish, jump_loci_report

SCHEMA = "arrangealex/1"

logger = logging.getLogger(__name__)


class ExactEncoder(json.JSONEncoder):
    """JSON encoder that writes exact values in their text form."""

    def default(self, obj):
        if isinstance(obj, fractions.Fraction):
            return format_rational(obj)
        if isinstance(obj, (GaussianRational, LaurentPoly, FreeWord)):
            return obj.to_text()
        if isinstance(obj, CyclotomicElement):
            return obj.to_json()
        if isinstance(obj, np.integer):
            return int(obj)
        if hasattr(obj, "to_json"):
            return obj.to_json()
        return json.JSONEncoder.default(self, obj)


def dumps(payload: dict) -> str:
    """Deterministic JSON text of a payload."""
    return json.dumps(
        dict(payload, schema=SCHEMA),
        cls=ExactEncoder,
        sort_keys=True,
        indent=2,
    )


def _output(args, payload: dict):
    text = dumps(payload)
    if args.format == "pretty":
        text = yaml.safe_dump(
            json.loads(text), default_flow_style=False, sort_keys=True
        ).rstrip()
    print(text)


def _twist(args, arr) -> TwistSpec:
    if getattr(args, "twist", None):
        return TwistSpec.load_file(args.twist)
    return TwistSpec.trivial(len(arr))


def cmd_present(args):
    arr = corpus.load_arrangement(args.arrangement)
    result = arvola(arr, args.seed, args.config)
    strands = {
        str(line): [w.pretty() for w in strand_history(result.graph, line)]
        for line in arr.line_numbers
    }
    payload = {
        "command": "present",
        "arrangement": arr.fingerprint(),
        "shear": result.frame.shear,
        "presentation": result.presentation.to_json(),
        "strand_words": strands,
    }
    return payload, True


def cmd_graph(args):
    arr = corpus.load_arrangement(args.arrangement)
    result = arvola(arr, args.seed, args.config)
    report = verify_assumptions(result.sheared, result.frame)
    payload = {
        "command": "graph",
        "arrangement": arr.fingerprint(),
        "graph": result.graph.to_json(),
        "assumptions": report.to_json(),
    }
    if args.dump:
        payload["frame"] = result.frame.to_json()
        payload["sheared_arrangement"] = result.sheared.to_json()
        payload["projective_points"] = [
            p.to_json() for p in projective_points(arr)
        ]
    return payload, report.passed


def cmd_invariants(args):
    arr = corpus.load_arrangement(args.arrangement)
    spec = _twist(args, arr)
    pres = arvola(arr, args.seed, args.config).presentation
    require_valid(pres, spec, args.relaxed_epsilon)
    summary = incidence_summary(arr)
    invariants = twisted_invariants(pres, spec, args.config)
    jump = jump_loci_report(
        invariants.delta0,
        invariants.delta1,
        spec.dim,
        summary.euler_chi,
        args.config,
    )
    payload = {
        "command": "invariants",
        "arrangement": arr.fingerprint(),
        "twist": spec.fingerprint(),
        "incidence": summary.to_json(),
        "invariants": invariants.to_json(),
        "jump_loci": jump.to_json(),
        "zero_weight_loops": zero_weight_loops(pres, spec),
    }
    return payload, True


def _report(args):
    arr = corpus.load_arrangement(args.arrangement)
    spec = _twist(args, arr)
    pres = arvola(arr, args.seed, args.config).presentation
    report = closed_form_report(
        arr, spec, args.seed, args.config, args.relaxed_epsilon, pres
    )
    return arr, spec, pres, report


def cmd_wstar(args):
    arr, spec, pres, report = _report(args)
    invariants = twisted_invariants(pres, spec, args.config)
    wstar = report.delta1_wstar.expanded()
    ok = divides(invariants.delta1, wstar)
    payload = {
        "command": "wstar",
        "arrangement": report.arrangement_hash,
        "twist": report.twist_hash,
        "delta0": report.delta0,
        "delta1": invariants.delta1,
        "delta1_wstar": report.delta1_wstar.to_json(),
        "torsion_ratio": report.torsion_ratio.to_json(),
        "delta1_divides_wstar": ok,
    }
    return payload, ok and report.torsion_ratio.passed


def cmd_boundary(args):
    arr, spec, pres, report = _report(args)
    if report.boundary_ratio is None:
        raise InapplicableError(
            "The boundary ratio is only available for d = 1"
        )
    wstar = report.delta1_wstar.expanded()
    boundary = report.boundary_ratio.expanded() * report.delta0
    ok = divides(wstar, boundary)
    payload = {
        "command": "boundary",
        "arrangement": report.arrangement_hash,
        "twist": report.twist_hash,
        "boundary_ratio": report.boundary_ratio.to_json(),
        "delta0": report.delta0,
        "delta1_wstar": wstar,
        "wstar_divides_boundary": ok,
    }
    return payload, ok


def cmd_bounds(args):
    arr, spec, pres, report = _report(args)
    payload = {
        "command": "bounds",
        "arrangement": report.arrangement_hash,
        "twist": report.twist_hash,
        "divisor_bound": report.divisor_bound.to_json(),
        "refined_bound": (
            None
            if report.refined_bound is None
            else report.refined_bound.to_json()
        ),
        "infinity_bound": report.infinity_bound.to_json(),
    }
    passed = True
    if args.check_roots:
        checks = verify.check_twist(
            arr,
            pres,
            "twist",
            spec,
            args.seed,
            args.config,
            args.relaxed_epsilon,
        )
        payload["checks"] = [check.to_json() for check in checks]
        passed = all(check.passed for check in checks)
    return payload, passed


def cmd_falk(args):
    first = corpus.load_arrangement(args.first)
    second = corpus.load_arrangement(args.second)
    certificate = falk_distinguish(first, second, args.config)
    payload = {"command": "falk", "certificate": certificate.to_json()}
    return payload, certificate.verdict == "distinguished"


def cmd_verify(args):
    reports = []
    if not args.no_corpus:
        reports += verify.verify_corpus(
            args.config, args.jobs, args.seed_override
        )
    if args.arrangement:
        arr = corpus.load_arrangement(args.arrangement)
        if args.twist:
            twists = [("twist", TwistSpec.load_file(args.twist))]
        else:
            twists = corpus.standard_twists(arr)
        reports.append(
            verify.verify_arrangement(
                "input",
                arr,
                twists,
                args.seed,
                args.config,
                args.relaxed_epsilon,
            )
        )
    passed = all(report.passed for report in reports)
    payload = {
        "command": "verify",
        "passed": passed,
        "cases": [report.to_json() for report in reports],
    }
    return payload, passed


def _error_payload(error: ArrangealexError) -> dict:
    return {"error": {"code": error.code, "message": str(error)}}


def run(args) -> int:
    """Run the selected command and print its output.

    Returns:
        The exit status.
    """
    try:
        payload, passed = args.func(args)
    except (InputError, InapplicableError) as e:
        print(e, file=sys.stderr)
        _output(args, _error_payload(e))
        return 2
    except ArrangealexError as e:
        print(e, file=sys.stderr)
        _output(args, _error_payload(e))
        return 1
    except OSError as e:
        print(e, file=sys.stderr)
        _output(
            args, {"error": {"code": "input_error", "message": str(e)}}
        )
        return 2
    _output(args, payload)
    return 0 if passed else 1


def _add_arrangement(sub):
    sub.add_argument(
        "arrangement",
        type=str,
        help="Arrangement JSON file or name of a bundled corpus case.",
    )


def _add_twist(sub):
    sub.add_argument(
        "--twist",
        type=str,
        help="""Twist JSON file with "epsilon" and optionally "rho".
            Default: trivial 1-dimensional representation, epsilon = 1.
        """,
    )


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser("arrangealex", description=__doc__)
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log INFO messages (-v) or DEBUG messages (-vv) to stderr.",
    )
    parser.add_argument(
        "--config",
        type=str,
        help="YAML file overriding the engine configuration.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="Seed of the frame search.  Default: seed of the config.",
    )
    parser.add_argument(
        "--relaxed-epsilon",
        action="store_true",
        help="Accept negative meridian weights (zero is never accepted).",
    )
    parser.add_argument(
        "--format",
        choices=["json", "pretty"],
        default="json",
        help="Output format.  Default: %(default)s.",
    )
    subparsers = parser.add_subparsers(title="command", dest="command")
    subparsers.required = True

    sub = subparsers.add_parser(
        "present",
        description="""Presentation of the fundamental group of the
            complement, with the words carried by every strand.
        """,
    )
    _add_arrangement(sub)
    sub.set_defaults(func=cmd_present)

    sub = subparsers.add_parser(
        "graph", description="Marked 2-graph and its assumption report."
    )
    _add_arrangement(sub)
    sub.add_argument(
        "--dump",
        action="store_true",
        help="Include the frame, the sheared lines and projective points.",
    )
    sub.set_defaults(func=cmd_graph)

    sub = subparsers.add_parser(
        "invariants",
        description="Twisted Alexander polynomials, ranks and jump loci.",
    )
    _add_arrangement(sub)
    _add_twist(sub)
    sub.set_defaults(func=cmd_invariants)

    sub = subparsers.add_parser(
        "wstar",
        description="""Alexander polynomial of the punctured tubular
            neighbourhood and the torsion ratio check.
        """,
    )
    _add_arrangement(sub)
    _add_twist(sub)
    sub.set_defaults(func=cmd_wstar)

    sub = subparsers.add_parser(
        "boundary",
        description="Boundary manifold ratio (1-dimensional twists only).",
    )
    _add_arrangement(sub)
    _add_twist(sub)
    sub.set_defaults(func=cmd_boundary)

    sub = subparsers.add_parser(
        "bounds", description="Divisor, refined and infinity bounds."
    )
    _add_arrangement(sub)
    _add_twist(sub)
    sub.add_argument(
        "--check-roots",
        action="store_true",
        help="Also run the divisibility and root containment checks.",
    )
    sub.set_defaults(func=cmd_bounds)

    sub = subparsers.add_parser(
        "falk",
        description="""Search a twist whose boundary ratios separate two
            arrangements by root multiplicity parity.
        """,
    )
    sub.add_argument("--first", type=str, default="falk_a1")
    sub.add_argument("--second", type=str, default="falk_a2")
    sub.set_defaults(func=cmd_falk)

    sub = subparsers.add_parser(
        "verify",
        description="Run all checks on the corpus and an optional input.",
    )
    sub.add_argument("--arrangement", type=str)
    _add_twist(sub)
    sub.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="Number of worker processes.  Default: %(default)s.",
    )
    sub.add_argument(
        "--no-corpus",
        action="store_true",
        help="Only check the given arrangement.",
    )
    sub.set_defaults(func=cmd_verify)

    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """Parse the command line and load the engine configuration.

    Raises:
        InputError: if the configuration file is invalid.
        OSError: if the configuration file cannot be read.
    """
    args = make_parser().parse_args(argv)
    try:
        args.config = (
            EngineConfig.load_file(args.config)
            if args.config
            else EngineConfig()
        )
    except yaml.YAMLError as e:
        raise InputError("Invalid configuration: {}".format(e)) from e
    # verify keeps the per-case seeds unless --seed is given
    args.seed_override = args.seed
    if args.seed is None:
        args.seed = args.config.seed
    return args


def main(argv=None):
    try:
        args = parse_args(argv)
    except (InputError, OSError) as e:
        print(e, file=sys.stderr)
        sys.exit(2)

    level = [logging.WARNING, logging.INFO, logging.DEBUG][
        min(args.verbose, 2)
    ]
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    sys.exit(run(args))


if __name__ == "__main__":
    main()
