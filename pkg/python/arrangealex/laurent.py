"""Laurent polynomials in one variable t over a cyclotomic field, matrices
over them, determinants, gcds, Smith normal forms and torsion orders of
homology modules.

A Laurent polynomial is stored as t^v·P with P an element of sympy's
polynomial ring 𝔽[t] having a nonzero constant term.  Since t is a unit of
𝔽[t, t⁻¹], gcds, determinants and invariant factors are computed on the
polynomial parts with sympy and shifted back.  Results "up to units" are
brought into canonical form by :func:`normalize`: an ordinary polynomial
with nonzero constant term and leading coefficient 1.
"""
import functools
import itertools
import logging
import re
import typing

import sympy
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .errors import ParseError, ShapeError
from .fields import CyclotomicElement, FieldConfig, format_rational

logger = logging.getLogger(__name__)

_T = sympy.Symbol("t")


@functools.lru_cache(maxsize=None)
def polynomial_domain(field: FieldConfig):
    """The sympy domain 𝔽[t] holding the polynomial parts."""
    return field.domain.poly_ring(_T)


class LaurentPoly:
    """Laurent polynomial Σ c_k t^k with coefficients in a FieldConfig.

    Stored as ``t^valuation · poly`` where ``poly`` is an element of
    ``polynomial_domain(field)`` with nonzero constant term; the zero
    polynomial has ``poly == 0`` and valuation 0.
    """

    __slots__ = ("field", "valuation", "poly")

    def __init__(
        self,
        field: FieldConfig,
        coeffs: typing.Sequence = (),
        valuation: int = 0,
    ):
        ring = polynomial_domain(field).ring
        terms = {}
        for k, c in enumerate(coeffs):
            value = field.element(c)
            if not value.is_zero():
                terms[(k,)] = value.value
        self._assign(field, ring.from_dict(terms), valuation)

    def _assign(self, field: FieldConfig, poly, valuation: int):
        if not poly:
            valuation = 0
        else:
            low = min(monom[0] for monom in poly.keys())
            if low:
                poly = poly.ring.from_dict(
                    {(k - low,): c for (k,), c in poly.items()}
                )
                valuation += low
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "poly", poly)

    @classmethod
    def _from_poly(
        cls, field: FieldConfig, poly, valuation: int = 0
    ) -> "LaurentPoly":
        """t^valuation · poly for any element ``poly`` of 𝔽[t]."""
        result = cls.__new__(cls)
        result._assign(field, poly, valuation)
        return result

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # construction helpers

    @classmethod
    def zero(cls, field: FieldConfig) -> "LaurentPoly":
        return cls(field)

    @classmethod
    def one(cls, field: FieldConfig) -> "LaurentPoly":
        return cls(field, [field.one()])

    @classmethod
    def constant(cls, field: FieldConfig, value) -> "LaurentPoly":
        return cls(field, [value])

    @classmethod
    def monomial(
        cls, field: FieldConfig, value, exponent: int
    ) -> "LaurentPoly":
        """The term value·t^exponent."""
        return cls(field, [value], exponent)

    @classmethod
    def from_dict(
        cls, field: FieldConfig, terms: typing.Dict[int, typing.Any]
    ) -> "LaurentPoly":
        """Build from a mapping exponent → coefficient."""
        if not terms:
            return cls.zero(field)
        low = min(terms)
        ring = polynomial_domain(field).ring
        poly = ring.from_dict(
            {(k - low,): field.element(c).value for k, c in terms.items()}
        )
        return cls._from_poly(field, poly, low)

    # properties

    @property
    def coeffs(self) -> typing.Tuple[CyclotomicElement, ...]:
        """Coefficients of t^valuation, t^(valuation+1), … up to the degree.

        The first and last entries are nonzero; empty for the zero
        polynomial.
        """
        if not self.poly:
            return ()
        values = [self.field.zero()] * (self.poly.degree() + 1)
        for (k,), c in self.poly.items():
            values[k] = CyclotomicElement.from_value(self.field.conductor, c)
        return tuple(values)

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self):
        return bool(self.poly)

    @property
    def degree(self) -> int:
        """Highest exponent (−1 for the zero polynomial)."""
        if not self.poly:
            return -1
        return self.valuation + self.poly.degree()

    @property
    def span(self) -> int:
        """Euclidean size deg − val (−1 for the zero polynomial)."""
        if not self.poly:
            return -1
        return self.poly.degree()

    def is_unit(self) -> bool:
        """Units of 𝔽[t, t⁻¹] are the monomials c·t^k with c ≠ 0."""
        return len(self.poly) == 1

    def coefficient(self, exponent: int) -> CyclotomicElement:
        value = self.poly.get((exponent - self.valuation,))
        if value is None:
            return self.field.zero()
        return CyclotomicElement.from_value(self.field.conductor, value)

    def terms(self) -> typing.Iterator[typing.Tuple[int, CyclotomicElement]]:
        """Iterate over (exponent, coefficient) of the nonzero terms in
        ascending order."""
        for (k,), c in sorted(self.poly.items()):
            yield self.valuation + k, CyclotomicElement.from_value(
                self.field.conductor, c
            )

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.field != self.field:
                raise ValueError(
                    "Cannot mix polynomials over {} and {}".format(
                        self.field.tag, other.field.tag
                    )
                )
            return other
        return LaurentPoly.constant(self.field, other)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError, ParseError):
                return NotImplemented
        return (
            self.field == other.field
            and self.valuation == other.valuation
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.valuation, self.coeffs))

    def __neg__(self):
        return LaurentPoly._from_poly(self.field, -self.poly, self.valuation)

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.valuation, other.valuation)
        total = self.poly.mul_monom((self.valuation - low,)) + (
            other.poly.mul_monom((other.valuation - low,))
        )
        return LaurentPoly._from_poly(self.field, total, low)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            return NotImplemented
        other = self._coerce(other)
        return LaurentPoly._from_poly(
            self.field,
            self.poly * other.poly,
            self.valuation + other.valuation,
        )

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        exponent = int(exponent)
        if exponent < 0:
            if not self.is_unit():
                raise ValueError("Only units have negative powers")
            inverse = LaurentPoly.monomial(
                self.field, self.coeffs[0].inverse(), -self.valuation
            )
            return inverse ** (-exponent)
        return LaurentPoly._from_poly(
            self.field, self.poly ** exponent, self.valuation * exponent
        )

    def shift(self, exponent: int) -> "LaurentPoly":
        """Multiply by t^exponent."""
        if self.is_zero():
            return self
        return LaurentPoly._from_poly(
            self.field, self.poly, self.valuation + exponent
        )

    def scale(self, value) -> "LaurentPoly":
        value = self.field.element(value)
        return LaurentPoly._from_poly(
            self.field, self.poly * value.value, self.valuation
        )

    def divmod(self, other: "LaurentPoly"):
        """Euclidean division: self = q·other + r with span(r) < span(other).

        The polynomial parts are divided in 𝔽[t]; the remainder keeps the
        valuation of ``self``.

        Raises:
            ZeroDivisionError: if ``other`` is zero.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("Laurent polynomial division by zero")
        if self.is_zero():
            return self, self
        quotient, remainder = self.poly.div(other.poly)
        return (
            LaurentPoly._from_poly(
                self.field, quotient, self.valuation - other.valuation
            ),
            LaurentPoly._from_poly(self.field, remainder, self.valuation),
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient of an exact division.

        Raises:
            ValueError: if ``other`` does not divide ``self``.
        """
        quotient, remainder = self.divmod(other)
        if not remainder.is_zero():
            raise ValueError(
                "{} does not divide {}".format(
                    self._coerce(other).to_text(), self.to_text()
                )
            )
        return quotient

    def derivative(self) -> "LaurentPoly":
        # (t^v·P)' = t^(v-1)·(v·P + t·P')
        if self.is_zero():
            return self
        t = self.poly.ring.gens[0]
        inner = self.poly * self.valuation + (
            self.poly.diff(t).mul_monom((1,))
        )
        return LaurentPoly._from_poly(self.field, inner, self.valuation - 1)

    def evaluate(self, value: CyclotomicElement) -> CyclotomicElement:
        """Value at a nonzero field element (Horner, negative powers ok)."""
        value = self.field.element(value) if not isinstance(
            value, CyclotomicElement
        ) else value
        acc = value * 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc * (value ** self.valuation)

    # text forms

    def to_text(self) -> str:
        """Text form like "t^3 - 2*t + 1" (descending exponents)."""
        if self.is_zero():
            return "0"
        pieces = []
        for exponent, c in sorted(self.terms(), reverse=True):
            if exponent == 0:
                monomial = ""
            elif exponent == 1:
                monomial = "t"
            else:
                monomial = "t^{}".format(exponent)
            if c.is_rational():
                value = c.coeffs[0]
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                if not monomial:
                    body = format_rational(magnitude)
                elif magnitude == 1:
                    body = monomial
                else:
                    body = "{}*{}".format(format_rational(magnitude), monomial)
            else:
                sign = "+"
                body = "({})".format(c.to_text())
                if monomial:
                    body += "*" + monomial
            pieces.append((sign, body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += " {} {}".format(sign, body)
        return text

    __str__ = to_text

    def __repr__(self):
        return "LaurentPoly({!r})".format(self.to_text())

    def to_pairs(self) -> typing.List[list]:
        """Machine form ``[[exponent, coefficient text], ...]``."""
        return [[k, c.to_text()] for k, c in self.terms()]


#: A LaurentPoly in canonical form (see :func:`normalize`).
CanonicalPoly = LaurentPoly


_TERM = re.compile(
    r"^(?P<coeff>[0-9/]*)?\*?(?P<var>t(\^(?P<exp>-?[0-9]+))?)?$"
)


def parse_laurent(
    text: str, field: FieldConfig = FieldConfig()
) -> LaurentPoly:
    """Parse a polynomial with rational coefficients like "3*t^-2 - t + 1/2".

    Raises:
        ParseError: on malformed input.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("Empty polynomial")
    if compact[0] not in "+-":
        compact = "+" + compact
    terms = {}
    for token in re.split(r"(?<!\^)(?=[+-])", compact):
        if not token:
            continue
        sign, body = token[0], token[1:]
        match = _TERM.match(body)
        if not match or not (match.group("coeff") or match.group("var")):
            raise ParseError("Invalid polynomial term '{}'".format(body))
        coeff = match.group("coeff")
        value = CyclotomicElement.from_json(coeff or "1", field.conductor)
        if sign == "-":
            value = -value
        if match.group("var"):
            exponent = int(match.group("exp") or 1)
        else:
            exponent = 0
        terms[exponent] = terms.get(exponent, field.zero()) + value
    return LaurentPoly.from_dict(field, terms)


def normalize(p: LaurentPoly) -> CanonicalPoly:
    """Unit-normal form: monic ordinary polynomial with nonzero constant term.

    Raises:
        ValueError: for the zero polynomial.
    """
    if p.is_zero():
        raise ValueError("The zero polynomial has no normal form")
    return LaurentPoly._from_poly(p.field, p.poly.monic())


def is_canonical(p: LaurentPoly) -> bool:
    return (
        not p.is_zero()
        and p.valuation == 0
        and p.poly.LC == p.field.domain.one
    )


def gcd(p: LaurentPoly, q: LaurentPoly) -> CanonicalPoly:
    """Canonical greatest common divisor.

    Raises:
        ValueError: if both polynomials are zero.
    """
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero() or q.is_zero():
        return normalize(q if p.is_zero() else p)
    return normalize(LaurentPoly._from_poly(p.field, p.poly.gcd(q.poly)))


def gcd_all(polys: typing.Iterable[LaurentPoly]) -> CanonicalPoly:
    """gcd of a family; zero members are skipped, an all-zero family fails."""
    result = None
    for p in polys:
        if p.is_zero():
            continue
        result = normalize(p) if result is None else gcd(result, p)
        if result.is_unit():
            break
    if result is None:
        raise ValueError("gcd of an all-zero family is undefined")
    return result


def lcm(p: LaurentPoly, q: LaurentPoly) -> CanonicalPoly:
    return normalize((p * q).exact_div(gcd(p, q)))


def divides(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True iff p divides q in 𝔽[t, t⁻¹]."""
    if p.is_zero():
        return q.is_zero()
    return q.divmod(p)[1].is_zero()


def radical(p: LaurentPoly) -> CanonicalPoly:
    """Square-free part, the product of the distinct irreducible factors."""
    p = normalize(p)
    if p.is_unit():
        return p
    return normalize(LaurentPoly._from_poly(p.field, p.poly.sqf_part()))


def product(
    field: FieldConfig, polys: typing.Iterable[LaurentPoly]
) -> LaurentPoly:
    return functools.reduce(
        lambda a, b: a * b, polys, LaurentPoly.one(field)
    )


# ----------------------------------------------------------------------------
# Matrices


class PolyMatrix:
    """Rectangular matrix with LaurentPoly entries.

    Vectors are rows and matrices act from the right, so a map
    C_{k+1} → C_k is stored with shape (rank C_{k+1}) × (rank C_k).
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(
        self,
        field: FieldConfig,
        entries: typing.Sequence[typing.Sequence[LaurentPoly]],
        rows: typing.Optional[int] = None,
        cols: typing.Optional[int] = None,
    ):
        entries = tuple(tuple(row) for row in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise ShapeError("Matrix entries do not form a rectangle")
        for row in entries:
            for x in row:
                if x.field != field:
                    raise ShapeError(
                        "Matrix entry over {} in a matrix over {}".format(
                            x.field.tag, field.tag
                        )
                    )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def zeros(cls, field: FieldConfig, rows: int, cols: int) -> "PolyMatrix":
        zero = LaurentPoly.zero(field)
        return cls(field, [[zero] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: FieldConfig, size: int) -> "PolyMatrix":
        zero, one = LaurentPoly.zero(field), LaurentPoly.one(field)
        return cls(
            field,
            [
                [one if i == j else zero for j in range(size)]
                for i in range(size)
            ],
            size,
            size,
        )

    @classmethod
    def from_constant(
        cls, field: FieldConfig, matrix: typing.Sequence[typing.Sequence]
    ) -> "PolyMatrix":
        """Embed a matrix of field elements (degree-0 entries)."""
        return cls(
            field,
            [[LaurentPoly.constant(field, x) for x in row] for row in matrix],
        )

    @classmethod
    def from_blocks(
        cls,
        field: FieldConfig,
        blocks: typing.Sequence[typing.Sequence["PolyMatrix"]],
        block_rows: int,
        block_cols: int,
    ) -> "PolyMatrix":
        """Assemble a matrix from a grid of equally shaped blocks."""
        rows = []
        for block_row in blocks:
            for i in range(block_rows):
                row = []
                for block in block_row:
                    if block.rows != block_rows or block.cols != block_cols:
                        raise ShapeError("Blocks of unequal shape")
                    row.extend(block.entries[i])
                rows.append(row)
        return cls(
            field,
            rows,
            len(blocks) * block_rows,
            (len(blocks[0]) if blocks else 0) * block_cols,
        )

    @property
    def shape(self) -> typing.Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ShapeError("Cannot add matrices of different shapes")
        return PolyMatrix(
            self.field,
            [
                [x + y for x, y in zip(row_a, row_b)]
                for row_a, row_b in zip(self.entries, other.entries)
            ],
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return PolyMatrix(
            self.field,
            [[-x for x in row] for row in self.entries],
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ShapeError(
                    "Cannot multiply {}x{} by {}x{}".format(
                        self.rows, self.cols, other.rows, other.cols
                    )
                )
            columns = list(zip(*other.entries)) if other.rows else [
                () for _ in range(other.cols)
            ]
            zero = LaurentPoly.zero(self.field)
            result = []
            for row in self.entries:
                new_row = []
                for column in columns:
                    acc = zero
                    for x, y in zip(row, column):
                        if x.is_zero() or y.is_zero():
                            continue
                        acc = acc + x * y
                    new_row.append(acc)
                result.append(new_row)
            return PolyMatrix(self.field, result, self.rows, other.cols)
        return PolyMatrix(
            self.field,
            [[x * other for x in row] for row in self.entries],
            self.rows,
            self.cols,
        )

    def __rmul__(self, other):
        return self * other

    def transpose(self) -> "PolyMatrix":
        if not self.rows or not self.cols:
            return PolyMatrix.zeros(self.field, self.cols, self.rows)
        return PolyMatrix(
            self.field,
            [list(column) for column in zip(*self.entries)],
            self.cols,
            self.rows,
        )

    def submatrix(
        self, rows: typing.Sequence[int], cols: typing.Sequence[int]
    ) -> "PolyMatrix":
        return PolyMatrix(
            self.field,
            [[self.entries[i][j] for j in cols] for i in rows],
            len(rows),
            len(cols),
        )

    def to_text(self) -> typing.List[typing.List[str]]:
        return [[x.to_text() for x in row] for row in self.entries]


def _domain_rows(m: PolyMatrix) -> typing.Tuple[list, int]:
    """Rows of ``m`` as elements of 𝔽[t], each row multiplied by the unit
    t^(−v) that clears its lowest exponent v.

    Returns:
        The rows and the total shift Σ v.
    """
    ring = polynomial_domain(m.field).ring
    rows, total = [], 0
    for row in m.entries:
        low = min((x.valuation for x in row if not x.is_zero()), default=0)
        total += low
        rows.append(
            [
                x.poly.mul_monom((x.valuation - low,)) if x else ring.zero
                for x in row
            ]
        )
    return rows, total


def determinant(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant, computed on the polynomial rows by sympy's
    DomainMatrix.

    Raises:
        ShapeError: if the matrix is not square.
    """
    if not m.is_square():
        raise ShapeError(
            "Determinant of a non-square {}x{} matrix".format(m.rows, m.cols)
        )
    if m.rows == 0:
        return LaurentPoly.one(m.field)
    rows, shift = _domain_rows(m)
    det = DomainMatrix(
        rows, (m.rows, m.cols), polynomial_domain(m.field)
    ).det()
    return LaurentPoly._from_poly(m.field, det, shift)


class SnfResult(typing.NamedTuple):
    """Smith normal form summary of a matrix."""

    #: Canonical forms of the nonzero diagonal entries, each dividing the
    #: next (units appear as 1).
    invariant_factors: typing.Tuple[CanonicalPoly, ...]
    #: Number of nonzero diagonal entries.
    rank: int
    #: Free rank of the cokernel (columns − rank).
    zero_cokernel_rank: int

    def torsion_order(self, field: FieldConfig) -> CanonicalPoly:
        """Product of the invariant factors."""
        return normalize(product(field, self.invariant_factors))


def _divisibility_chain(
    factors: typing.Sequence[LaurentPoly],
) -> typing.Tuple[CanonicalPoly, ...]:
    # afterwards every entry divides all later ones; the product is kept
    chain = [normalize(p) for p in factors]
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            common = gcd(chain[i], chain[j])
            chain[j] = normalize(
                (chain[i] * chain[j]).exact_div(common)
            )
            chain[i] = common
    return tuple(chain)


def smith_normal_form(m: PolyMatrix) -> SnfResult:
    """Smith normal form over the PID 𝔽[t, t⁻¹].

    Scaling rows by powers of t is unimodular, so the invariant factors are
    those of the polynomial rows over 𝔽[t], as computed by sympy.
    """
    if not m.rows or not m.cols:
        return SnfResult((), 0, m.cols)
    rows, _ = _domain_rows(m)
    diagonal = invariant_factors(
        DomainMatrix(rows, (m.rows, m.cols), polynomial_domain(m.field))
    )
    factors = _divisibility_chain(
        [LaurentPoly._from_poly(m.field, d) for d in diagonal if d]
    )
    rank = len(factors)
    logger.debug("SNF of %dx%d matrix: rank %d", m.rows, m.cols, rank)
    return SnfResult(factors, rank, m.cols - rank)


def rank(m: PolyMatrix) -> int:
    """Rank over the fraction field 𝔽(t)."""
    return smith_normal_form(m).rank


class HomologyResult(typing.NamedTuple):
    """Torsion order and free rank of a homology module ker / im."""

    #: Product of the invariant factors of the torsion part.
    torsion: CanonicalPoly
    #: Rank of the free part.
    free_rank: int


def homology_torsion_order(
    d_in: PolyMatrix, d_out: PolyMatrix
) -> HomologyResult:
    """Torsion order and free rank of ker(d_out) / im(d_in).

    ker(d_out) is saturated in C_k, so C_k / ker(d_out) is free and the
    torsion of ker / im equals the torsion of coker(d_in): the product of
    the invariant factors of ``d_in``.

    Args:
        d_in: Map C_{k+1} → C_k, shape (rank C_{k+1}) × (rank C_k).
        d_out: Map C_k → C_{k−1}, shape (rank C_k) × (rank C_{k−1}).

    Returns:
        The canonical torsion order and the free rank of the homology.

    Raises:
        ShapeError: if the maps are not composable.
        ValueError: if the composition is not zero.
    """
    if d_in.cols != d_out.rows:
        raise ShapeError(
            "Maps of shapes {}x{} and {}x{} are not composable".format(
                d_in.rows, d_in.cols, d_out.rows, d_out.cols
            )
        )
    if not (d_in * d_out).is_zero():
        raise ValueError("The chain maps do not compose to zero")
    image = smith_normal_form(d_in)
    out_rank = rank(d_out)
    return HomologyResult(
        image.torsion_order(d_in.field), d_out.rows - out_rank - image.rank
    )


def minor_gcd(m: PolyMatrix, size: int) -> LaurentPoly:
    """gcd of all size × size minors (zero if they all vanish)."""
    if size == 0:
        return LaurentPoly.one(m.field)
    minors = (
        determinant(m.submatrix(rows, cols))
        for rows in itertools.combinations(range(m.rows), size)
        for cols in itertools.combinations(range(m.cols), size)
    )
    try:
        return gcd_all(minors)
    except ValueError:
        return LaurentPoly.zero(m.field)


def fitting_torsion(m: PolyMatrix) -> CanonicalPoly:
    """Torsion order of coker(m) from the gcd of the maximal nonzero minors."""
    return normalize(minor_gcd(m, rank(m)))
