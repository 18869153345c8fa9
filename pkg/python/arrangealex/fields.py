"""Exact arithmetic over ℚ, ℚ(i) and the cyclotomic fields ℚ(ζ_N).

Rationals are plain :class:`fractions.Fraction` objects.  Gaussian rationals
hold the coefficients of the lines of an arrangement, cyclotomic elements hold
the entries of representation matrices.  ℚ(ζ_N) is sympy's algebraic field
with modulus Φ_N; :class:`CyclotomicElement` wraps its elements with exact
text and JSON forms.  All values are immutable.
"""
import fractions
import functools
import re
import typing

import sympy
from sympy.polys.densearith import dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.matrices import DomainMatrix

from .errors import ParseError, ShapeError


Rational = fractions.Fraction

#: Dense polynomial with coefficients in ascending order of the exponent.
DensePoly = typing.Tuple[int, ...]

_Number = typing.Union[int, fractions.Fraction]

_X = sympy.Symbol("x")


def parse_rational(text: str) -> fractions.Fraction:
    """Parse "p/q", "p" or a decimal literal into an exact rational.

    Raises:
        ParseError: if the text is not a rational number.
    """
    if isinstance(text, (int, fractions.Fraction)):
        return fractions.Fraction(text)
    try:
        return fractions.Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("Invalid rational number '{}'".format(text)) from e


def format_rational(value: fractions.Fraction) -> str:
    """Text form "p/q" (or "p" for integers)."""
    return str(fractions.Fraction(value))


def to_qq(value: _Number):
    """Convert an int or Fraction into sympy's ``QQ``."""
    value = fractions.Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> fractions.Fraction:
    """Convert an element of sympy's ``QQ`` into a Fraction."""
    return fractions.Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> DensePoly:
    """Return the n-th cyclotomic polynomial Φ_n as integer coefficients.

    Coefficients are listed in ascending order, so ``(-1, 1)`` is x − 1.

    Args:
        n: Positive integer.

    Returns:
        The monic integer polynomial Φ_n of degree φ(n).
    """
    if n < 1:
        raise ValueError(
            "cyclotomic polynomial needs n >= 1, got {}".format(n)
        )
    poly = sympy.cyclotomic_poly(n, _X, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    """Euler's totient φ(n) = [ℚ(ζ_n) : ℚ]."""
    return int(sympy.totient(n))


@functools.lru_cache(maxsize=None)
def _modulus(conductor: int) -> list:
    # Φ_N over QQ, highest power first
    return [QQ(c) for c in reversed(cyclotomic_polynomial(conductor))]


@functools.lru_cache(maxsize=None)
def cyclotomic_domain(conductor: int):
    """The sympy domain ℚ(ζ_N).

    Fields of degree 1 (N = 1, 2) are plain ``QQ``; otherwise the algebraic
    field generated by ζ_N = exp(2πi/N) with minimal polynomial Φ_N, so that
    its elements are residues in the power basis 1, ζ_N, ζ_N², …
    """
    if euler_phi(conductor) == 1:
        return QQ
    minpoly = sympy.cyclotomic_poly(conductor, _X, polys=True)
    root = sympy.exp(2 * sympy.pi * sympy.I / conductor)
    return QQ.algebraic_field((minpoly, root))


# ----------------------------------------------------------------------------
# Gaussian rationals


_GAUSSIAN_SPLIT = re.compile(r"(?<=[0-9/.)])([+-])")


class GaussianRational:
    """Exact element re + im·i of ℚ(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: _Number = 0, im: _Number = 0):
        object.__setattr__(self, "re", fractions.Fraction(re))
        object.__setattr__(self, "im", fractions.Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, fractions.Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(
            "Cannot convert {!r} to GaussianRational".format(value)
        )

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse "p/q", "p/q+r/s*i", "-r/s*i", "i" and similar forms.

        Raises:
            ParseError: if the text is not of one of the accepted forms.
        """
        compact = str(text).replace(" ", "")
        if not compact:
            raise ParseError("Empty Gaussian rational")
        if not compact.endswith("i"):
            return cls(parse_rational(compact))

        body = compact[:-1]
        if body.endswith("*"):
            body = body[:-1]
        split = None
        for match in _GAUSSIAN_SPLIT.finditer(body):
            split = match.start()
        if split is None:
            real_text, imag_text = "", body
        else:
            real_text, imag_text = body[:split], body[split:]

        if imag_text in ("", "+"):
            imag = fractions.Fraction(1)
        elif imag_text == "-":
            imag = fractions.Fraction(-1)
        else:
            imag = parse_rational(imag_text)
        real = parse_rational(real_text) if real_text else 0
        return cls(real, imag)

    def to_text(self) -> str:
        """Text form accepted by :meth:`parse`."""
        if self.im == 0:
            return format_rational(self.re)
        imag = "{}*i".format(format_rational(abs(self.im)))
        if self.re == 0:
            return imag if self.im > 0 else "-" + imag
        sign = "+" if self.im > 0 else "-"
        return "{}{}{}".format(format_rational(self.re), sign, imag)

    __str__ = to_text

    def __repr__(self):
        return "GaussianRational({!r})".format(self.to_text())

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> fractions.Fraction:
        """|z|² = re² + im²."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ParseError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()


#: The imaginary unit.
I = GaussianRational(0, 1)


# ----------------------------------------------------------------------------
# Cyclotomic fields


class CyclotomicElement:
    """Element of ℚ(ζ_N), wrapping a value of :func:`cyclotomic_domain`.

    ``coeffs`` always has exactly φ(N) entries, the coefficients of
    1, ζ_N, ζ_N², … so equality is a plain coefficient comparison.  The
    conductor N = 1 gives the field of rationals.  ``value`` is the same
    element in sympy's domain and carries the arithmetic.
    """

    __slots__ = ("conductor", "value", "coeffs")

    def __init__(self, conductor: int, coeffs: typing.Sequence[_Number]):
        rep = dup_strip([to_qq(c) for c in reversed(list(coeffs))])
        self._assign(conductor, dup_rem(rep, _modulus(conductor), QQ))

    def _assign(self, conductor: int, rep: list):
        # rep: residue modulo Φ_N over QQ, highest power first
        domain = cyclotomic_domain(conductor)
        coeffs = [from_qq(c) for c in reversed(rep)]
        coeffs += [fractions.Fraction(0)] * (
            euler_phi(conductor) - len(coeffs)
        )
        if domain is QQ:
            value = rep[0] if rep else QQ.zero
        else:
            value = domain(list(rep))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicElement is immutable")

    @classmethod
    def from_value(cls, conductor: int, value) -> "CyclotomicElement":
        """Wrap an element of ``cyclotomic_domain(conductor)``."""
        if cyclotomic_domain(conductor) is QQ:
            rep = [value] if value else []
        else:
            rep = value.to_list()
        element = cls.__new__(cls)
        element._assign(conductor, rep)
        return element

    @classmethod
    def from_rational(cls, conductor: int, value) -> "CyclotomicElement":
        return cls(conductor, [fractions.Fraction(value)])

    @classmethod
    def zeta(cls, conductor: int, exponent: int = 1) -> "CyclotomicElement":
        """The power ζ_N^k (negative k allowed)."""
        exponent = int(exponent) % conductor
        return cls(conductor, [0] * exponent + [1])

    def _coerce(self, other) -> "CyclotomicElement":
        if isinstance(other, CyclotomicElement):
            if other.conductor == self.conductor:
                return other
            if other.is_rational():
                return CyclotomicElement.from_rational(
                    self.conductor, other.coeffs[0]
                )
            if self.is_rational():
                raise _Promote(other.conductor)
            raise ValueError(
                "Cannot mix elements of Q(zeta_{}) and Q(zeta_{})".format(
                    self.conductor, other.conductor
                )
            )
        if isinstance(other, (int, fractions.Fraction)):
            return CyclotomicElement.from_rational(self.conductor, other)
        raise TypeError(
            "Cannot combine CyclotomicElement with {!r}".format(other)
        )

    def _binary(self, other, operation):
        try:
            other = self._coerce(other)
        except _Promote as promote:
            promoted = CyclotomicElement.from_rational(
                promote.conductor, self.coeffs[0]
            )
            return promoted._binary(other, operation)
        except TypeError:
            return NotImplemented
        return CyclotomicElement.from_value(
            self.conductor, operation(self.value, other.value)
        )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, fractions.Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other.conductor != self.conductor:
            return (
                self.is_rational()
                and other.is_rational()
                and self.coeffs[0] == other.coeffs[0]
            )
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __neg__(self):
        return CyclotomicElement.from_value(self.conductor, -self.value)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicElement":
        """Multiplicative inverse, by the extended Euclidean algorithm
        modulo Φ_N.

        Raises:
            ZeroDivisionError: if the element is zero.
        """
        if self.is_zero():
            raise ZeroDivisionError("CyclotomicElement division by zero")
        if cyclotomic_domain(self.conductor) is QQ:
            return CyclotomicElement.from_value(
                self.conductor, QQ.one / self.value
            )
        rep = dup_invert(
            self.value.to_list(), _modulus(self.conductor), QQ
        )
        element = CyclotomicElement.__new__(CyclotomicElement)
        element._assign(self.conductor, rep)
        return element

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except _Promote as promote:
            promoted = CyclotomicElement.from_rational(
                promote.conductor, self.coeffs[0]
            )
            return promoted / other
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        exponent = int(exponent)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return CyclotomicElement.from_value(
            self.conductor, self.value ** exponent
        )

    def embed(self, conductor: int) -> "CyclotomicElement":
        """Map into ℚ(ζ_M) for a multiple M of the conductor."""
        if conductor % self.conductor:
            raise ValueError(
                "Q(zeta_{}) does not embed into Q(zeta_{})".format(
                    self.conductor, conductor
                )
            )
        step = conductor // self.conductor
        coeffs = [fractions.Fraction(0)] * (
            step * (len(self.coeffs) - 1) + 1
        )
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return CyclotomicElement(conductor, coeffs)

    def to_text(self) -> str:
        """Human readable form, e.g. "1/2 - zeta5^2"."""
        if self.is_rational():
            return format_rational(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                monomial = ""
            elif k == 1:
                monomial = "zeta{}".format(self.conductor)
            else:
                monomial = "zeta{}^{}".format(self.conductor, k)
            if not monomial:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = monomial
            else:
                body = "{}*{}".format(format_rational(abs(c)), monomial)
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            text += " {} {}".format(sign, body)
        return text

    __str__ = to_text

    def __repr__(self):
        return "CyclotomicElement({}, {})".format(
            self.conductor, [format_rational(c) for c in self.coeffs]
        )

    def to_json(self):
        """JSON form: "p/q" for rationals, else a conductor/coeffs dict."""
        if self.is_rational():
            return format_rational(self.coeffs[0])
        return {
            "conductor": self.conductor,
            "coeffs": [format_rational(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data, conductor: int = 1) -> "CyclotomicElement":
        """Parse the JSON form.

        Args:
            data: Rational string/number or ``{"conductor": N, "coeffs":
                [...]}``.
            conductor: Conductor of the target field.  An element given with
                a dividing conductor is embedded.

        Raises:
            ParseError: if the data is malformed or belongs to a field that
                does not embed into ℚ(ζ_conductor).
        """
        if isinstance(data, dict):
            try:
                own = int(data["conductor"])
                coeffs = [parse_rational(c) for c in data["coeffs"]]
            except (KeyError, TypeError, ValueError) as e:
                raise ParseError(
                    "Invalid cyclotomic element {!r}".format(data)
                ) from e
            if own < 1:
                raise ParseError("Conductor must be positive")
            if len(coeffs) != euler_phi(own):
                raise ParseError(
                    "Cyclotomic element of conductor {} needs {} coefficients,"
                    " got {}".format(own, euler_phi(own), len(coeffs))
                )
            element = cls(own, coeffs)
            if own == conductor:
                return element
            if conductor % own:
                raise ParseError(
                    "Element of Q(zeta_{}) is not in Q(zeta_{})".format(
                        own, conductor
                    )
                )
            return element.embed(conductor)
        return cls.from_rational(conductor, parse_rational(data))


class _Promote(Exception):
    """Internal signal: a rational-only element meets a larger field."""

    def __init__(self, conductor):
        super().__init__(conductor)
        self.conductor = conductor


def field_inverse(a: CyclotomicElement) -> CyclotomicElement:
    """Inverse of a nonzero cyclotomic element."""
    return a.inverse()


class FieldConfig(typing.NamedTuple):
    """The coefficient field 𝔽 of one computation.

    Conductor 1 is the field ℚ; conductor N > 1 is ℚ(ζ_N).
    """

    #: Conductor N of ℚ(ζ_N).
    conductor: int = 1

    @property
    def tag(self) -> str:
        if self.conductor == 1:
            return "Rationals"
        return "Cyclotomic({})".format(self.conductor)

    @property
    def degree(self) -> int:
        return euler_phi(self.conductor)

    @property
    def domain(self):
        """The sympy domain behind :attr:`CyclotomicElement.value`."""
        return cyclotomic_domain(self.conductor)

    def zero(self) -> CyclotomicElement:
        return CyclotomicElement(self.conductor, [])

    def one(self) -> CyclotomicElement:
        return CyclotomicElement.from_rational(self.conductor, 1)

    def element(self, value) -> CyclotomicElement:
        """Coerce a rational, a cyclotomic element or its JSON form."""
        if isinstance(value, CyclotomicElement):
            if value.conductor == self.conductor:
                return value
            if value.is_rational():
                return self.element(value.coeffs[0])
            return value.embed(self.conductor)
        if isinstance(value, (int, fractions.Fraction)):
            return CyclotomicElement.from_rational(self.conductor, value)
        return CyclotomicElement.from_json(value, self.conductor)

    def zeta(self, exponent: int = 1) -> CyclotomicElement:
        return CyclotomicElement.zeta(self.conductor, exponent)

    def to_json(self) -> dict:
        if self.conductor == 1:
            return {"tag": "Rationals"}
        return {"tag": "Cyclotomic", "conductor": self.conductor}

    @classmethod
    def from_json(cls, data) -> "FieldConfig":
        """Accepts ``{"tag": "Rationals"}``, ``{"tag": "Cyclotomic",
        "conductor": N}`` or just ``{"conductor": N}``."""
        if data is None:
            return cls(1)
        if not isinstance(data, dict):
            raise ParseError("Invalid field description {!r}".format(data))
        tag = str(data.get("tag", "")).lower()
        if tag == "rationals":
            return cls(1)
        try:
            conductor = int(data["conductor"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(
                "Invalid field description {!r}".format(data)
            ) from e
        if conductor < 1:
            raise ParseError("Conductor must be positive")
        return cls(conductor)


# ----------------------------------------------------------------------------
# Small dense matrices over a FieldConfig

#: Square matrix of field elements, as a tuple of rows.
FieldMatrix = typing.Tuple[typing.Tuple[CyclotomicElement, ...], ...]


def matrix_identity(field: FieldConfig, size: int) -> FieldMatrix:
    return tuple(
        tuple(field.one() if i == j else field.zero() for j in range(size))
        for i in range(size)
    )


def matrix_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a and len(a[0]) != len(b):
        raise ShapeError("Cannot multiply matrices of incompatible shapes")
    columns = list(zip(*b))
    result = []
    for row in a:
        new_row = []
        for column in columns:
            acc = None
            for x, y in zip(row, column):
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            new_row.append(acc if acc is not None else row[0] * 0)
        result.append(tuple(new_row))
    return tuple(result)


def matrix_inverse(field: FieldConfig, a: FieldMatrix) -> FieldMatrix:
    """Inverse of a square matrix, computed by sympy's DomainMatrix.

    Raises:
        ZeroDivisionError: if the matrix is singular.
    """
    size = len(a)
    if not size:
        return ()
    matrix = DomainMatrix(
        [[field.element(x).value for x in row] for row in a],
        (size, size),
        field.domain,
    )
    if not matrix.det():
        raise ZeroDivisionError("singular matrix")
    inverse = matrix.inv()
    return tuple(
        tuple(
            CyclotomicElement.from_value(
                field.conductor, inverse[i, j].element
            )
            for j in range(size)
        )
        for i in range(size)
    )


def matrix_is_identity(a: FieldMatrix) -> bool:
    return all(
        (x.is_one() if i == j else x.is_zero())
        for i, row in enumerate(a)
        for j, x in enumerate(row)
    )
