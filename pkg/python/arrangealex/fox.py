"""Twists (ε, ρ), Fox calculus and the twisted chain complex of a
presentation 2-complex.

Vectors are rows: a word w acts on 𝔽[t^±1] ⊗ 𝕍 by the d × d block
t^{ε(w)}·ρ(w), and evaluation is multiplicative, ev(uv) = ev(u)·ev(v).
"""
import collections
import hashlib
import json
import logging
import math
import typing

from .config import EngineConfig
from .errors import ParseError, RepresentationError
from .fields import (
    CyclotomicElement,
    FieldConfig,
    FieldMatrix,
    matrix_identity,
    matrix_inverse,
    matrix_is_identity,
    matrix_mul,
)
from .laurent import (
    CanonicalPoly,
    LaurentPoly,
    PolyMatrix,
    homology_torsion_order,
    minor_gcd,
    normalize,
    smith_normal_form,
)
from .presentation import FreeWord, Presentation

logger = logging.getLogger(__name__)


class TwistSpec(typing.NamedTuple):
    """Meridian weights ε and representation matrices ρ(a_j)."""

    #: ε(a_j) for j = 1..m.
    epsilon: typing.Tuple[int, ...]
    #: The field 𝔽 of the representation.
    field: FieldConfig
    #: dim 𝕍.
    dim: int
    #: ρ(a_j) for j = 1..m.
    matrices: typing.Tuple[FieldMatrix, ...]

    @property
    def generator_count(self) -> int:
        return len(self.epsilon)

    @classmethod
    def trivial(
        cls, generator_count: int, epsilon=None, field=FieldConfig()
    ) -> "TwistSpec":
        """Trivial 1-dimensional ρ, ε = (1, …, 1) unless given."""
        if epsilon is None:
            epsilon = (1,) * generator_count
        one = ((field.one(),),)
        return cls(tuple(epsilon), field, 1, (one,) * generator_count)

    @classmethod
    def cyclotomic(
        cls,
        epsilon: typing.Sequence[int],
        exponents: typing.Sequence[int],
        conductor: int,
    ) -> "TwistSpec":
        """1-dimensional ρ(a_j) = ζ_N^{c_j}."""
        field = FieldConfig(conductor)
        return cls(
            tuple(epsilon),
            field,
            1,
            tuple(((field.zeta(c),),) for c in exponents),
        )

    @classmethod
    def diagonal(
        cls,
        epsilon: typing.Sequence[int],
        exponents: typing.Sequence[typing.Sequence[int]],
        conductor: int,
    ) -> "TwistSpec":
        """ρ(a_j) = diag(ζ_N^{c_j1}, ζ_N^{c_j2}, …)."""
        field = FieldConfig(conductor)
        matrices = []
        for row in exponents:
            size = len(row)
            matrices.append(
                tuple(
                    tuple(
                        field.zeta(row[i]) if i == j else field.zero()
                        for j in range(size)
                    )
                    for i in range(size)
                )
            )
        return cls(tuple(epsilon), field, len(exponents[0]), tuple(matrices))

    def conjugated(self, x: FieldMatrix) -> "TwistSpec":
        """The equivalent twist with ρ′(a_j) = X·ρ(a_j)·X⁻¹."""
        x_inv = matrix_inverse(self.field, x)
        return self._replace(
            matrices=tuple(
                matrix_mul(matrix_mul(x, m), x_inv) for m in self.matrices
            )
        )

    def weight(self, word: FreeWord) -> int:
        """ε(w), the signed sum of the letter weights."""
        return sum(self.epsilon[g - 1] * e for g, e in word)

    def weight_of_vector(self, vector: typing.Sequence[int]) -> int:
        """ε of a loop given by its abelianization."""
        return sum(e * v for e, v in zip(self.epsilon, vector))

    def check(self, relaxed: bool = False):
        """Validate shapes, invertibility and the sign of ε.

        Raises:
            RepresentationError: on the first problem found.
        """
        if len(self.matrices) != len(self.epsilon):
            raise RepresentationError(
                "{} weights but {} matrices".format(
                    len(self.epsilon), len(self.matrices)
                )
            )
        for j, e in enumerate(self.epsilon, start=1):
            if e == 0 or (e < 0 and not relaxed):
                raise RepresentationError(
                    "epsilon(a{}) = {} is not {}".format(
                        j, e, "nonzero" if relaxed else "positive"
                    )
                )
        for j, m in enumerate(self.matrices, start=1):
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise RepresentationError(
                    "rho(a{}) is not a {}x{} matrix".format(
                        j, self.dim, self.dim
                    )
                )
            try:
                matrix_inverse(self.field, m)
            except ZeroDivisionError:
                raise RepresentationError(
                    "rho(a{}) is not invertible".format(j)
                )

    def fingerprint(self) -> str:
        """Short stable hash of the JSON form."""
        text = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "epsilon": list(self.epsilon),
            "rho": {
                "dim": self.dim,
                "field": self.field.to_json(),
                "matrices": [
                    [[x.to_json() for x in row] for row in m]
                    for m in self.matrices
                ],
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwistSpec":
        """Parse ``{"epsilon": [...], "rho": {"dim": d, "field": {...},
        "matrices": [...]}}``.  Without "rho" the trivial 1-dimensional
        representation is used.

        Raises:
            ParseError: if the structure is malformed.
        """
        try:
            epsilon = tuple(int(e) for e in data["epsilon"])
            rho = data.get("rho")
            if rho is None:
                return cls.trivial(len(epsilon), epsilon)
            field = FieldConfig.from_json(rho.get("field"))
            dim = int(rho["dim"])
            matrices = tuple(
                tuple(
                    tuple(
                        CyclotomicElement.from_json(x, field.conductor)
                        for x in row
                    )
                    for row in m
                )
                for m in rho["matrices"]
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ParseError("Invalid twist JSON: {}".format(e)) from e
        return cls(epsilon, field, dim, matrices)

    @classmethod
    def load(cls, stream) -> "TwistSpec":
        try:
            data = json.load(stream)
        except json.JSONDecodeError as e:
            raise ParseError("Invalid twist JSON: {}".format(e)) from e
        return cls.from_json(data)

    @classmethod
    def load_file(cls, filename) -> "TwistSpec":
        with open(filename, "r") as fh:
            return cls.load(fh)


class GroupRingElement:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: typing.Mapping[FreeWord, int] = None):
        merged = {}
        for word, coefficient in (terms or {}).items():
            if coefficient:
                merged[word] = coefficient
        self.terms = merged

    @classmethod
    def word(cls, w: FreeWord, coefficient: int = 1) -> "GroupRingElement":
        return cls({w: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        terms = collections.Counter(self.terms)
        for word, coefficient in other.terms.items():
            terms[word] += coefficient
        return GroupRingElement(terms)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def left_multiply(self, w: FreeWord) -> "GroupRingElement":
        terms = collections.Counter()
        for word, coefficient in self.terms.items():
            terms[w * word] += coefficient
        return GroupRingElement(terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for word, c in sorted(
            self.terms.items(),
            key=lambda item: (len(item[0]), item[0].letters),
        ):
            body = word.pretty()
            if abs(c) != 1:
                body = "{}*{}".format(abs(c), body)
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += " {} {}".format(sign, body)
        return text

    __str__ = to_text

    def __repr__(self):
        return "GroupRingElement({!r})".format(self.to_text())


def fox_derivative(w: FreeWord, j: int) -> GroupRingElement:
    """Free derivative ∂w/∂a_j.

    ∂(uv) = ∂u + u·∂v, ∂a_j/∂a_j = 1 and ∂a_j⁻¹/∂a_j = −a_j⁻¹.
    """
    terms = collections.Counter()
    prefix = []
    for generator, exponent in w:
        if generator == j and exponent == 1:
            terms[FreeWord(prefix)] += 1
        prefix.append((generator, exponent))
        if generator == j and exponent == -1:
            terms[FreeWord(prefix)] -= 1
    return GroupRingElement(terms)


class Evaluator:
    """Evaluates words and group ring elements under ε ⊗ ρ."""

    def __init__(self, spec: TwistSpec):
        self.spec = spec
        self.field = spec.field
        self._letters = {}
        for j, m in enumerate(spec.matrices, start=1):
            self._letters[(j, 1)] = m
            self._letters[(j, -1)] = matrix_inverse(spec.field, m)
        self._cache = {(): matrix_identity(spec.field, spec.dim)}

    def rho(self, w: FreeWord) -> FieldMatrix:
        """ρ(w) as a matrix over the field."""
        letters = w.letters
        if letters in self._cache:
            return self._cache[letters]
        # longest cached prefix
        k = len(letters) - 1
        while letters[:k] not in self._cache:
            k -= 1
        value = self._cache[letters[:k]]
        for n in range(k, len(letters)):
            try:
                letter = self._letters[letters[n]]
            except KeyError:
                raise RepresentationError(
                    "word uses generator a{} beyond the twist".format(
                        letters[n][0]
                    )
                )
            value = matrix_mul(value, letter)
            self._cache[letters[:n + 1]] = value
        return value

    def word(self, w: FreeWord) -> PolyMatrix:
        """t^{ε(w)}·ρ(w)"""
        return self.element(GroupRingElement.word(w))

    def element(self, g: GroupRingElement) -> PolyMatrix:
        """Σ c·t^{ε(w)}·ρ(w)"""
        d = self.spec.dim
        entries = [[{} for _ in range(d)] for _ in range(d)]
        for w, c in g.terms.items():
            exponent = self.spec.weight(w)
            matrix = self.rho(w)
            for r in range(d):
                for s in range(d):
                    x = matrix[r][s]
                    if x.is_zero():
                        continue
                    cell = entries[r][s]
                    cell[exponent] = cell.get(exponent, self.field.zero()) + (
                        x * c
                    )
        return PolyMatrix(
            self.field,
            [
                [LaurentPoly.from_dict(self.field, cell) for cell in row]
                for row in entries
            ],
            d,
            d,
        )


def evaluate(g, spec: TwistSpec) -> PolyMatrix:
    """d × d block of a FreeWord or GroupRingElement under ε ⊗ ρ."""
    if isinstance(g, FreeWord):
        g = GroupRingElement.word(g)
    return Evaluator(spec).element(g)


class ValidationReport(typing.NamedTuple):
    passed: bool
    #: Pretty form of the first relation ρ does not respect.
    witness: typing.Optional[str] = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "witness": self.witness}


def validate_representation(
    pres: Presentation, spec: TwistSpec, relaxed: bool = False
) -> ValidationReport:
    """Check that ρ respects every relation of the presentation.

    Raises:
        RepresentationError: for inconsistent dimensions, non-invertible
            matrices or (unless relaxed) non-positive ε.
    """
    if spec.generator_count != pres.generator_count:
        raise RepresentationError(
            "Twist has {} generators, presentation {}".format(
                spec.generator_count, pres.generator_count
            )
        )
    spec.check(relaxed)
    evaluator = Evaluator(spec)
    for relation in pres.relations:
        relator = relation.relator()
        if spec.weight(relator) != 0 or not matrix_is_identity(
            evaluator.rho(relator)
        ):
            return ValidationReport(False, relation.pretty())
    return ValidationReport(True)


def require_valid(pres: Presentation, spec: TwistSpec, relaxed: bool = False):
    """
    Raises:
        RepresentationError: if :func:`validate_representation` fails.
    """
    report = validate_representation(pres, spec, relaxed)
    if not report.passed:
        raise RepresentationError(
            "rho does not respect the relation {}".format(report.witness),
            report.witness,
        )


class TwistedChainComplex(typing.NamedTuple):
    """C₂ → C₁ → C₀ of the presentation 2-complex twisted by ε ⊗ ρ."""

    #: (R·d) × (m·d), block (r, j) = ev(∂relator_r/∂a_j).
    d2: PolyMatrix
    #: (m·d) × d, block j = ev(a_j) − id.
    d1: PolyMatrix


def build_complex(pres: Presentation, spec: TwistSpec) -> TwistedChainComplex:
    evaluator = Evaluator(spec)
    field, d = spec.field, spec.dim
    identity = PolyMatrix.identity(field, d)
    d1 = PolyMatrix.from_blocks(
        field,
        [[evaluator.word(g) - identity] for g in pres.generators()],
        d,
        d,
    )
    relators = pres.relators()
    if relators:
        d2 = PolyMatrix.from_blocks(
            field,
            [
                [
                    evaluator.element(fox_derivative(relator, j))
                    for j in range(1, pres.generator_count + 1)
                ]
                for relator in relators
            ],
            d,
            d,
        )
    else:
        d2 = PolyMatrix.zeros(field, 0, pres.generator_count * d)
    assert (d2 * d1).is_zero(), "Fox calculus: d1 o d2 != 0"
    logger.debug("twisted complex: d2 %dx%d, d1 %dx%d", *d2.shape, *d1.shape)
    return TwistedChainComplex(d2, d1)


def delta0_from_complex(complex_: TwistedChainComplex) -> CanonicalPoly:
    d = complex_.d1.cols
    zero = PolyMatrix.zeros(complex_.d1.field, d, 0)
    return homology_torsion_order(complex_.d1, zero).torsion


def delta0(pres: Presentation, spec: TwistSpec) -> CanonicalPoly:
    """Order of the torsion of H₀, the cokernel of d1."""
    return delta0_from_complex(build_complex(pres, spec))


def delta0_minors(pres: Presentation, spec: TwistSpec) -> CanonicalPoly:
    """Δ₀ as the gcd of the d × d minors of the column matrix of the
    blocks t^{ε(a_j)}ρ(a_j) − id."""
    d1 = build_complex(pres, spec).d1
    return normalize(minor_gcd(d1, spec.dim))


def delta1(
    pres: Presentation, spec: TwistSpec
) -> typing.Tuple[CanonicalPoly, int]:
    """Torsion order and free rank of H₁."""
    complex_ = build_complex(pres, spec)
    result = homology_torsion_order(complex_.d2, complex_.d1)
    return result.torsion, result.free_rank


def h2_free_rank(pres: Presentation, spec: TwistSpec) -> int:
    """Rank of ker(d2) over the fraction field."""
    d2 = build_complex(pres, spec).d2
    return d2.rows - smith_normal_form(d2).rank


class TwistedInvariants(typing.NamedTuple):
    """Δ₀, Δ₁ and ranks of one (presentation, twist) pair."""

    delta0: CanonicalPoly
    delta1: CanonicalPoly
    h1_free_rank: int
    h2_free_rank: int
    #: Δ₀ from the literal minor gcd agrees with Δ₀ from the Smith form
    #: (None when the number of minors exceeds the configured limit).
    delta0_minors_agree: typing.Optional[bool]

    def to_json(self) -> dict:
        return {
            "delta0": self.delta0.to_text(),
            "delta1": self.delta1.to_text(),
            "h1_free_rank": self.h1_free_rank,
            "h2_free_rank": self.h2_free_rank,
            "delta0_minors_agree": self.delta0_minors_agree,
        }


def twisted_invariants(
    pres: Presentation,
    spec: TwistSpec,
    config: typing.Optional[EngineConfig] = None,
) -> TwistedInvariants:
    """All homological invariants from one complex.

    The caller validates the twist first (see :func:`require_valid`).
    """
    if config is None:
        config = EngineConfig()
    complex_ = build_complex(pres, spec)
    d0 = delta0_from_complex(complex_)
    h1 = homology_torsion_order(complex_.d2, complex_.d1)
    h2 = complex_.d2.rows - smith_normal_form(complex_.d2).rank
    agree = None
    if math.comb(complex_.d1.rows, spec.dim) <= config.minor_gcd_limit:
        minors = minor_gcd(complex_.d1, spec.dim)
        agree = (not minors.is_zero()) and normalize(minors) == d0
    return TwistedInvariants(d0, h1.torsion, h1.free_rank, h2, agree)


def zero_weight_loops(
    pres: Presentation, spec: TwistSpec
) -> typing.List[int]:
    """Singular points (1-based) whose β_k has ε(β_k) = 0."""
    return [
        k
        for k, beta in enumerate(pres.beta, start=1)
        if spec.weight(beta) == 0
    ]
