"""Run every check of the engine on arrangements and twists.

A check is a named predicate with a pass flag and an optional witness.  The
corpus run fans cases out over a process pool and merges the results by
case name.
"""
import concurrent.futures
import logging
import typing

from . import corpus as corpus_module
from .arrangement import Arrangement, incidence_summary
from .closed_forms import closed_form_report
from .config import EngineConfig
from .errors import ArrangealexError
from .fox import TwistSpec, twisted_invariants, validate_representation
from .laurent import divides
from .marked_graph import verify_assumptions
from .presentation import Presentation, arvola
from .roots import falk_distinguish, root_containment

logger = logging.getLogger(__name__)


class CheckResult(typing.NamedTuple):
    name: str
    passed: bool
    witness: typing.Optional[str] = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": self.witness,
        }


class CaseReport(typing.NamedTuple):
    name: str
    checks: typing.List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [check.to_json() for check in self.checks],
        }


def _divides(name, p, q) -> CheckResult:
    ok = divides(p, q)
    witness = None if ok else "{} does not divide {}".format(
        p.to_text(), q.to_text()
    )
    return CheckResult(name, ok, witness)


def check_twist(
    arr: Arrangement,
    pres: Presentation,
    twist_name: str,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> typing.List[CheckResult]:
    """All per-twist checks on one arrangement."""
    prefix = twist_name + ":"
    validation = validate_representation(pres, spec, relaxed)
    if not validation.passed:
        return [
            CheckResult(
                prefix + "representation", False, validation.witness
            )
        ]

    chi = incidence_summary(arr).euler_chi
    invariants = twisted_invariants(pres, spec, config)
    report = closed_form_report(arr, spec, seed, config, relaxed, pres)
    wstar = report.delta1_wstar.expanded()
    divisor = report.divisor_bound.expanded()
    infinity = report.infinity_bound.expanded()

    checks = [
        CheckResult(prefix + "representation", True),
        CheckResult(
            prefix + "h1_free_rank",
            invariants.h1_free_rank == 0 or relaxed,
            "rank {}".format(invariants.h1_free_rank),
        ),
        CheckResult(
            prefix + "h2_free_rank",
            invariants.h2_free_rank == spec.dim * chi or relaxed,
            "rank {} for d*chi = {}".format(
                invariants.h2_free_rank, spec.dim * chi
            ),
        ),
        _divides(prefix + "delta1_divides_wstar", invariants.delta1, wstar),
        _divides(
            prefix + "delta1_divides_divisor", invariants.delta1, divisor
        ),
        CheckResult(
            prefix + "delta0_root_containment",
            root_containment(invariants.delta0, infinity),
        ),
        CheckResult(
            prefix + "delta1_root_containment",
            root_containment(invariants.delta1, infinity),
        ),
        CheckResult(prefix + "torsion_ratio", report.torsion_ratio.passed),
    ]
    if invariants.delta0_minors_agree is not None:
        checks.append(
            CheckResult(
                prefix + "delta0_minor_gcd", invariants.delta0_minors_agree
            )
        )
    if report.refined_bound is not None:
        refined = report.refined_bound.expanded()
        checks.append(
            _divides(prefix + "refined_divides_divisor", refined, divisor)
        )
        checks.append(
            _divides(
                prefix + "delta1_divides_refined", invariants.delta1, refined
            )
        )
    if report.boundary_ratio is not None:
        boundary = report.boundary_ratio.expanded() * report.delta0
        checks.append(
            _divides(prefix + "wstar_divides_boundary", wstar, boundary)
        )
    # witnesses only matter on failure
    return [
        check if not check.passed else check._replace(witness=None)
        for check in checks
    ]


def verify_arrangement(
    name: str,
    arr: Arrangement,
    twists: typing.Sequence[typing.Tuple[str, TwistSpec]],
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CaseReport:
    """Frame assumptions plus :func:`check_twist` for every twist.

    Input errors of single twists are reported as failed checks.
    """
    checks = []
    try:
        result = arvola(arr, seed, config)
    except ArrangealexError as e:
        return CaseReport(name, [CheckResult("frame", False, str(e))])
    report = verify_assumptions(result.sheared, result.frame)
    checks.append(
        CheckResult(
            "assumptions",
            report.passed,
            None
            if report.passed
            else ", ".join(c.name for c in report.failures()),
        )
    )
    for twist_name, spec in twists:
        try:
            checks += check_twist(
                arr,
                result.presentation,
                twist_name,
                spec,
                seed,
                config,
                relaxed,
            )
        except ArrangealexError as e:
            checks.append(CheckResult(twist_name + ":error", False, str(e)))
    logger.info("%s: %d checks", name, len(checks))
    return CaseReport(name, checks)


def verify_case(
    name: str,
    config: typing.Optional[EngineConfig] = None,
    seed: typing.Optional[int] = None,
) -> CaseReport:
    """Check one corpus case with the standard twists.

    The frame seed stored with the case is used unless ``seed`` is given.
    """
    case = corpus_module.load_case(name)
    if seed is None:
        seed = case.seed
    return verify_arrangement(
        name,
        case.arrangement,
        corpus_module.standard_twists(case.arrangement),
        seed,
        config,
    )


def verify_falk(config: typing.Optional[EngineConfig] = None) -> CaseReport:
    """The parity certificate separating the two Falk arrangements."""
    first = corpus_module.load_case("falk_a1").arrangement
    second = corpus_module.load_case("falk_a2").arrangement
    try:
        certificate = falk_distinguish(first, second, config)
    except ArrangealexError as e:
        return CaseReport("falk", [CheckResult("certificate", False, str(e))])
    histogram = certificate.second.histogram
    return CaseReport(
        "falk",
        [
            CheckResult("first_all_even", certificate.first.all_even),
            CheckResult("second_multiplicity_3", histogram.get(3, 0) > 0),
            CheckResult("second_multiplicity_1", histogram.get(1, 0) > 0),
        ],
    )


def verify_corpus(
    config: typing.Optional[EngineConfig] = None,
    jobs: int = 1,
    seed: typing.Optional[int] = None,
) -> typing.List[CaseReport]:
    """Verify all corpus cases and the Falk certificate, sorted by name."""
    names = corpus_module.case_names()
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(jobs) as executor:
            futures = [
                executor.submit(verify_case, n, config, seed) for n in names
            ]
            futures.append(executor.submit(verify_falk, config))
            reports = [f.result() for f in futures]
    else:
        reports = [verify_case(n, config, seed) for n in names]
        reports.append(verify_falk(config))
    return sorted(reports, key=lambda report: report.name)
