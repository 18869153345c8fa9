"""Closed formulas for Δ₁ of the punctured tubular neighbourhood W*, the
divisor bounds for Δ₁ of the complement, the boundary manifold ratio and the
root bound at infinity.

All formulas are products of factors det(t^{ε(γ)}ρ(γ) − id) over loops γ
(meridians a_i, the loops β_k around singular points and loops at infinity).
det(id − X) and det(X − id) differ by the sign (−1)^d, so both forms share
one canonical representative.
"""
import logging
import typing

from .arrangement import (
    Arrangement,
    parallel_free_lines,
    projectivize,
    singular_points,
)
from .config import EngineConfig
from .errors import InapplicableError
from .fox import Evaluator, TwistSpec, delta0, require_valid
from .laurent import (
    CanonicalPoly,
    LaurentPoly,
    PolyMatrix,
    determinant,
    divides,
    gcd_all,
    normalize,
)
from .presentation import FreeWord, Presentation, arvola, product

logger = logging.getLogger(__name__)


class Loop(typing.NamedTuple):
    """A loop of the complement known through its abelianization and, when
    its conjugacy class matters, a representative word."""

    label: str
    #: Exponent sum of a₁..a_m.
    vector: typing.Tuple[int, ...]
    word: typing.Optional[FreeWord] = None

    @classmethod
    def from_word(cls, label: str, word: FreeWord, generator_count: int):
        return cls(label, word.abelianization(generator_count), word)

    def representative(self) -> FreeWord:
        """The stored word, or a₁^{v₁}⋯a_m^{v_m} (enough when d = 1)."""
        if self.word is not None:
            return self.word
        return product(
            FreeWord.generator(j) ** v
            for j, v in enumerate(self.vector, start=1)
            if v
        )

    def to_json(self) -> dict:
        data = {"label": self.label, "vector": list(self.vector)}
        if self.word is not None:
            data["word"] = self.word.to_text()
        return data


def meridian(number: int, generator_count: int) -> Loop:
    return Loop.from_word(
        "a{}".format(number), FreeWord.generator(number), generator_count
    )


def meridian_at_infinity(generator_count: int) -> Loop:
    """a₀ = (a₁⋯a_m)⁻¹"""
    word = product(
        FreeWord.generator(j) for j in range(1, generator_count + 1)
    ).inverse()
    return Loop("a0", (-1,) * generator_count, word)


class Factor(typing.NamedTuple):
    label: str
    base: CanonicalPoly
    exponent: int
    loop: typing.Optional[Loop] = None

    def to_json(self) -> dict:
        data = {
            "label": self.label,
            "base": self.base.to_text(),
            "exponent": self.exponent,
        }
        if self.loop is not None:
            data["loop"] = self.loop.to_json()
        return data


class FactoredPoly:
    """Ordered product of canonical bases with exponents.

    Factors with equal bases are merged by adding exponents, unit bases and
    zero exponents are dropped.
    """

    def __init__(self, field, factors: typing.Iterable[Factor] = ()):
        self.field = field
        self.factors = []
        for factor in factors:
            self.append(factor)

    def append(self, factor: Factor):
        if factor.exponent == 0 or factor.base.is_unit():
            return
        for n, present in enumerate(self.factors):
            if present.base == factor.base:
                self.factors[n] = present._replace(
                    label="{},{}".format(present.label, factor.label),
                    exponent=present.exponent + factor.exponent,
                )
                return
        self.factors.append(factor)

    def expanded(self) -> CanonicalPoly:
        result = LaurentPoly.one(self.field)
        for factor in self.factors:
            result = result * factor.base ** factor.exponent
        return normalize(result)

    def pretty(self) -> str:
        if not self.factors:
            return "1"
        pieces = []
        for factor in self.factors:
            piece = "({})".format(factor.base.to_text())
            if factor.exponent != 1:
                piece += "^{}".format(factor.exponent)
            pieces.append(piece)
        return " * ".join(pieces)

    def to_json(self) -> dict:
        return {
            "expanded": self.expanded().to_text(),
            "factored": self.pretty(),
            "factors": [factor.to_json() for factor in self.factors],
        }


class _Inputs(typing.NamedTuple):
    """Presentation data shared by all closed forms of one run."""

    arrangement: Arrangement
    spec: TwistSpec
    presentation: Presentation
    evaluator: Evaluator
    #: s_i per line (index i − 1), counted from the presentation points.
    s_i: typing.Tuple[int, ...]


def prepare(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
    pres: typing.Optional[Presentation] = None,
) -> _Inputs:
    """Build the presentation (unless given) and validate the twist.

    Raises:
        NonEssentialArrangementError: for non-essential arrangements.
        RepresentationError: if the twist is not a representation.
    """
    if pres is None:
        pres = arvola(arr, seed, config).presentation
    require_valid(pres, spec, relaxed)
    counts = [0] * pres.generator_count
    for incident in pres.points:
        for number in incident:
            counts[number - 1] += 1
    return _Inputs(arr, spec, pres, Evaluator(spec), tuple(counts))


def loop_determinant(inputs: _Inputs, loop: Loop) -> CanonicalPoly:
    """Canonical det(t^{ε(γ)}ρ(γ) − id).

    Raises:
        InapplicableError: if the determinant vanishes (ε(γ) = 0 and ρ(γ)
            has eigenvalue 1, only possible with relaxed ε).
    """
    spec = inputs.spec
    block = inputs.evaluator.word(loop.representative())
    det = determinant(block - PolyMatrix.identity(spec.field, spec.dim))
    if det.is_zero():
        raise InapplicableError(
            "det(t^e rho - id) vanishes on the loop {}".format(loop.label)
        )
    return normalize(det)


def _factor(inputs: _Inputs, loop: Loop, exponent: int) -> Factor:
    if exponent == 0:
        return Factor(loop.label, LaurentPoly.one(inputs.spec.field), 0, loop)
    return Factor(loop.label, loop_determinant(inputs, loop), exponent, loop)


def point_loops(inputs: _Inputs) -> typing.List[Loop]:
    m = inputs.presentation.generator_count
    return [
        Loop.from_word("beta{}".format(k), beta, m)
        for k, beta in enumerate(inputs.presentation.beta, start=1)
    ]


def line_loops(inputs: _Inputs) -> typing.List[Loop]:
    m = inputs.presentation.generator_count
    return [meridian(i, m) for i in range(1, m + 1)]


def _tube_pieces(inputs: _Inputs) -> FactoredPoly:
    """∏ det(β_k)^{d_k−2} · ∏ det(a_i)^{s_i−1}"""
    factors = [
        _factor(inputs, loop, len(incident) - 2)
        for loop, incident in zip(
            point_loops(inputs), inputs.presentation.points
        )
    ]
    factors += [
        _factor(inputs, loop, s - 1)
        for loop, s in zip(line_loops(inputs), inputs.s_i)
    ]
    return FactoredPoly(inputs.spec.field, factors)


def _line_gcd(inputs: _Inputs, lines: typing.Iterable[int]) -> CanonicalPoly:
    loops = line_loops(inputs)
    return gcd_all(loop_determinant(inputs, loops[i - 1]) for i in lines)


def wstar_from_inputs(inputs: _Inputs, d0: CanonicalPoly) -> FactoredPoly:
    pieces = _tube_pieces(inputs)
    pieces.append(Factor("delta0", d0, 1))
    return pieces


def divisor_from_inputs(inputs: _Inputs) -> FactoredPoly:
    pieces = _tube_pieces(inputs)
    m = inputs.presentation.generator_count
    pieces.append(Factor("gcd(a)", _line_gcd(inputs, range(1, m + 1)), 1))
    return pieces


def refined_from_inputs(inputs: _Inputs) -> FactoredPoly:
    """(gcd_r det(a_r)) · gcd_{i ∈ ℬ} X_i

    Raises:
        InapplicableError: if every line has a parallel partner.
    """
    free = parallel_free_lines(inputs.arrangement)
    if not free:
        raise InapplicableError("Every line has a parallel partner")
    field = inputs.spec.field
    m = inputs.presentation.generator_count
    points = point_loops(inputs)
    lines = line_loops(inputs)
    per_line = []
    for i in free:
        x_i = FactoredPoly(
            field,
            [
                _factor(inputs, loop, len(incident) - 2)
                for loop, incident in zip(points, inputs.presentation.points)
                if i in incident
            ]
            + [_factor(inputs, lines[i - 1], inputs.s_i[i - 1] - 1)],
        )
        per_line.append(x_i.expanded())
    logger.debug("refined bound over parallel-free lines %s", free)
    return FactoredPoly(
        field,
        [
            Factor("gcd(a)", _line_gcd(inputs, range(1, m + 1)), 1),
            Factor(
                "gcd(X_{})".format(",".join(str(i) for i in free)),
                gcd_all(per_line),
                1,
            ),
        ],
    )


def boundary_loops(
    arr: Arrangement, pres: typing.Optional[Presentation] = None
) -> typing.List[typing.Tuple[Loop, int]]:
    """Loops and exponents of the boundary manifold ratio.

    Affine points use β_k (from ``pres`` when given, else the product of the
    incident meridians, which is all a 1-dimensional twist sees); a point
    at infinity uses (product of its class meridians)·a₀; lines i = 0..m use
    a_i with exponent s̃_i − 2.
    """
    m = len(arr)
    completion = projectivize(arr)
    loops = []
    if pres is not None:
        for k, (beta, incident) in enumerate(
            zip(pres.beta, pres.points), start=1
        ):
            loop = Loop.from_word("beta{}".format(k), beta, m)
            loops.append((loop, len(incident) - 2))
    else:
        for k, point in enumerate(singular_points(arr), start=1):
            vector = tuple(
                1 if i in point.incident else 0 for i in range(1, m + 1)
            )
            loops.append(
                (Loop("P{}".format(k), vector), point.multiplicity - 2)
            )
    for point in completion.infinity_points:
        members = point.incident[1:]
        vector = tuple(
            (1 if i in members else 0) - 1 for i in range(1, m + 1)
        )
        loops.append((Loop(point.label, vector), point.multiplicity - 2))
    loops.append((meridian_at_infinity(m), completion.s_tilde[0] - 2))
    for i in range(1, m + 1):
        loops.append((meridian(i, m), completion.s_tilde[i] - 2))
    return loops


def boundary_from_inputs(inputs: _Inputs) -> FactoredPoly:
    """
    Raises:
        InapplicableError: for representations of dimension d > 1.
    """
    if inputs.spec.dim != 1:
        raise InapplicableError(
            "The boundary ratio is only available for d = 1"
        )
    return FactoredPoly(
        inputs.spec.field,
        [
            _factor(inputs, loop, exponent)
            for loop, exponent in boundary_loops(
                inputs.arrangement, inputs.presentation
            )
        ],
    )


def infinity_from_inputs(inputs: _Inputs) -> FactoredPoly:
    """∏_k det(β_k − id) · ∏_i det(a_i − id)

    The loops at infinity are β_k⁻¹ and a_i⁻¹; the uninverted loops have
    the same nonzero roots.
    """
    return FactoredPoly(
        inputs.spec.field,
        [
            _factor(inputs, loop, 1)
            for loop in point_loops(inputs) + line_loops(inputs)
        ],
    )


class TorsionRatioReport(typing.NamedTuple):
    passed: bool
    #: Δ₁(W*)/Δ₀
    ratio: CanonicalPoly

    def to_json(self) -> dict:
        return {"passed": self.passed, "ratio": self.ratio.to_text()}


def torsion_ratio_from_inputs(
    inputs: _Inputs, d0: CanonicalPoly
) -> TorsionRatioReport:
    wstar = wstar_from_inputs(inputs, d0).expanded()
    assembled = _tube_pieces(inputs).expanded()
    if not divides(d0, wstar):
        return TorsionRatioReport(False, assembled)
    ratio = normalize(wstar.exact_div(d0))
    return TorsionRatioReport(ratio == assembled, ratio)


# Public entry points, one arrangement and twist each.


def delta1_wstar(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CanonicalPoly:
    """Δ₁ of the punctured tubular neighbourhood W*:

    ∏ det(t^{ε(β_k)}ρ(β_k) − id)^{d_k−2}
    · ∏ det(id − t^{ε(a_i)}ρ(a_i))^{s_i−1} · Δ₀
    """
    inputs = prepare(arr, spec, seed, config, relaxed)
    d0 = delta0(inputs.presentation, spec)
    return wstar_from_inputs(inputs, d0).expanded()


def divisor_bound(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CanonicalPoly:
    """A multiple of Δ₁ of the complement: the W* product with Δ₀ replaced
    by gcd_i det(t^{ε(a_i)}ρ(a_i) − id)."""
    return divisor_from_inputs(
        prepare(arr, spec, seed, config, relaxed)
    ).expanded()


def refined_bound(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CanonicalPoly:
    return refined_from_inputs(
        prepare(arr, spec, seed, config, relaxed)
    ).expanded()


def boundary_ratio(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CanonicalPoly:
    """Δ₁(B)/Δ₀(B) of the boundary manifold B, for d = 1."""
    return boundary_from_inputs(
        prepare(arr, spec, seed, config, relaxed)
    ).expanded()


def infinity_root_bound(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> CanonicalPoly:
    return infinity_from_inputs(
        prepare(arr, spec, seed, config, relaxed)
    ).expanded()


def torsion_ratio_check(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
) -> TorsionRatioReport:
    inputs = prepare(arr, spec, seed, config, relaxed)
    return torsion_ratio_from_inputs(inputs, delta0(inputs.presentation, spec))


class ClosedFormReport(typing.NamedTuple):
    delta1_wstar: FactoredPoly
    divisor_bound: FactoredPoly
    #: None when every line has a parallel partner.
    refined_bound: typing.Optional[FactoredPoly]
    #: None for d > 1.
    boundary_ratio: typing.Optional[FactoredPoly]
    infinity_bound: FactoredPoly
    torsion_ratio: TorsionRatioReport
    delta0: CanonicalPoly
    arrangement_hash: str
    twist_hash: str

    def to_json(self) -> dict:
        def optional(value):
            return None if value is None else value.to_json()

        return {
            "inputs": {
                "arrangement": self.arrangement_hash,
                "twist": self.twist_hash,
            },
            "delta0": self.delta0.to_text(),
            "delta1_wstar": self.delta1_wstar.to_json(),
            "divisor_bound": self.divisor_bound.to_json(),
            "refined_bound": optional(self.refined_bound),
            "boundary_ratio": optional(self.boundary_ratio),
            "infinity_bound": self.infinity_bound.to_json(),
            "torsion_ratio": self.torsion_ratio.to_json(),
        }


def closed_form_report(
    arr: Arrangement,
    spec: TwistSpec,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
    relaxed: bool = False,
    pres: typing.Optional[Presentation] = None,
) -> ClosedFormReport:
    """All closed forms from one presentation and one Δ₀."""
    inputs = prepare(arr, spec, seed, config, relaxed, pres)
    d0 = delta0(inputs.presentation, spec)
    try:
        refined = refined_from_inputs(inputs)
    except InapplicableError:
        refined = None
    boundary = boundary_from_inputs(inputs) if spec.dim == 1 else None
    return ClosedFormReport(
        wstar_from_inputs(inputs, d0),
        divisor_from_inputs(inputs),
        refined,
        boundary,
        infinity_from_inputs(inputs),
        torsion_ratio_from_inputs(inputs, d0),
        d0,
        arr.fingerprint(),
        spec.fingerprint(),
    )
