import fractions

import numpy as np
import pytest
import sympy

from arrangealex.errors import ParseError, ShapeError
from arrangealex.fields import CyclotomicElement, FieldConfig
from arrangealex.laurent import (
    LaurentPoly,
    PolyMatrix,
    determinant,
    divides,
    fitting_torsion,
    gcd,
    gcd_all,
    homology_torsion_order,
    is_canonical,
    lcm,
    minor_gcd,
    normalize,
    parse_laurent,
    polynomial_domain,
    radical,
    smith_normal_form,
)

Q = FieldConfig()
T = sympy.Symbol("t")


def p(text):
    return parse_laurent(text)


def to_sympy(poly):
    return sum(
        sympy.Rational(c.coeffs[0].numerator, c.coeffs[0].denominator)
        * T ** k
        for k, c in poly.terms()
    )


def random_poly(rng, span=2):
    return LaurentPoly(
        Q,
        [int(x) for x in rng.randint(-3, 4, size=span + 1)],
        int(rng.randint(-1, 2)),
    )


def test_parse_and_text():
    x = p("3*t^-2 - t + 1/2")
    assert x.valuation == -2
    assert x.degree == 1
    assert x.to_text() == "-t + 1/2 + 3*t^-2"
    assert p(x.to_text()) == x
    assert p("t^2 - 1").to_text() == "t^2 - 1"
    assert p("0").is_zero()
    assert p("t - t").is_zero()


@pytest.mark.parametrize("text", ["", "t^x", "2**t", "s + 1"])
def test_parse_invalid(text):
    with pytest.raises(ParseError):
        parse_laurent(text)


def test_trailing_zeros_are_stripped():
    x = LaurentPoly(Q, [0, 0, 1, 2, 0], 3)
    assert x.valuation == 5
    assert x.coeffs == (Q.element(1), Q.element(2))
    assert LaurentPoly(Q, [0, 0], 7) == LaurentPoly.zero(Q)
    assert LaurentPoly.zero(Q).degree == -1


def test_arithmetic():
    a, b = p("t - 1"), p("t + 1")
    assert a * b == p("t^2 - 1")
    assert a + b == p("2*t")
    assert a - a == 0
    assert 1 - a == p("2 - t")
    assert a ** 3 == p("t^3 - 3*t^2 + 3*t - 1")
    assert a.shift(-1) == p("1 - t^-1")
    assert a.scale(fractions.Fraction(1, 2)) == p("1/2*t - 1/2")


def test_negative_powers_of_units():
    t = LaurentPoly.monomial(Q, 2, 1)
    assert t ** -2 == LaurentPoly.monomial(Q, fractions.Fraction(1, 4), -2)
    assert t ** -1 * t == 1
    with pytest.raises(ValueError):
        p("t - 1") ** -1


def test_immutable():
    x = p("t")
    with pytest.raises(AttributeError):
        x.valuation = 3


def test_division():
    q, r = p("t^3 + 2").divmod(p("t - 1"))
    assert q == p("t^2 + t + 1")
    assert r == 3
    assert p("t^3 - 1").exact_div(p("t - 1")) == p("t^2 + t + 1")
    with pytest.raises(ValueError):
        p("t^3 + 2").exact_div(p("t - 1"))
    with pytest.raises(ZeroDivisionError):
        p("t").divmod(LaurentPoly.zero(Q))


def test_normalize():
    assert normalize(p("2*t^-1 - 2")) == p("t - 1")
    assert normalize(p("-3*t^5")) == 1
    assert is_canonical(normalize(p("4*t^3 + 2*t^2")))
    assert not is_canonical(p("2*t + 2"))
    with pytest.raises(ValueError):
        normalize(LaurentPoly.zero(Q))


def test_gcd_lcm_divides():
    a = p("t^2 - 1")
    b = p("t^2 - 2*t + 1")
    assert gcd(a, b) == p("t - 1")
    assert gcd(a, LaurentPoly.zero(Q)) == a
    assert lcm(a, b) == p("t^3 - t^2 - t + 1")
    assert gcd_all([LaurentPoly.zero(Q), a.shift(4), b]) == p("t - 1")
    assert divides(p("t - 1"), p("t^3 - 1"))
    assert divides(p("t^-3"), p("t + 1"))
    assert not divides(p("t + 1"), p("t^3 - 1"))
    assert divides(LaurentPoly.zero(Q), LaurentPoly.zero(Q))
    assert not divides(LaurentPoly.zero(Q), p("t"))
    with pytest.raises(ValueError):
        gcd(LaurentPoly.zero(Q), LaurentPoly.zero(Q))
    with pytest.raises(ValueError):
        gcd_all([LaurentPoly.zero(Q)])


def test_gcd_against_sympy():
    rng = np.random.RandomState(7)
    common = p("t^2 + t + 1")
    for _ in range(20):
        a = random_poly(rng) * common
        b = random_poly(rng) * common
        if a.is_zero() or b.is_zero():
            continue
        ours = to_sympy(gcd(a, b))
        reference = sympy.gcd(
            sympy.expand(to_sympy(normalize(a))),
            sympy.expand(to_sympy(normalize(b))),
        )
        monic = sympy.Poly(reference, T).monic().as_expr()
        assert sympy.expand(ours - monic) == 0


def test_radical():
    x = p("t - 1") ** 3 * p("t + 1") * p("t^2 + 1") ** 2
    assert radical(x) == p("t - 1") * p("t + 1") * p("t^2 + 1")
    assert radical(p("5*t^4")) == 1


def test_evaluate():
    zeta4 = CyclotomicElement.zeta(4)
    assert p("t^2 - 1").evaluate(zeta4) == -2
    assert p("t^-1").evaluate(2) == fractions.Fraction(1, 2)
    assert p("t^5 - 1").evaluate(CyclotomicElement.zeta(5)).is_zero()


def test_derivative():
    assert p("t^3 - 2*t + 5 + t^-1").derivative() == p("3*t^2 - 2 - t^-2")


def test_matrix_shapes():
    with pytest.raises(ShapeError):
        PolyMatrix(Q, [[p("t")], [p("t"), p("1")]])
    with pytest.raises(ShapeError):
        PolyMatrix(Q, [[p("t"), p("1")]]) * PolyMatrix(Q, [[p("t"), p("1")]])
    with pytest.raises(ShapeError):
        determinant(PolyMatrix.zeros(Q, 2, 3))
    with pytest.raises(ShapeError):
        PolyMatrix(FieldConfig(3), [[p("t")]])
    empty = PolyMatrix.zeros(Q, 0, 3)
    assert empty.transpose().shape == (3, 0)
    assert determinant(PolyMatrix.zeros(Q, 0, 0)) == 1


def test_matrix_arithmetic():
    a = PolyMatrix(Q, [[p("t"), p("1")], [p("0"), p("t^-1")]])
    identity = PolyMatrix.identity(Q, 2)
    assert a * identity == a
    assert identity * a == a
    assert (a - a).is_zero()
    assert (a * p("t"))[1, 1] == 1
    assert a.transpose()[0, 1] == 0
    assert a.transpose()[1, 0] == 1
    assert a.submatrix([1], [1])[0, 0] == p("t^-1")


def test_determinant():
    m = PolyMatrix(Q, [[p("t"), p("1")], [p("1"), p("t")]])
    assert determinant(m) == p("t^2 - 1")
    singular = PolyMatrix(Q, [[p("t"), p("t^2")], [p("1"), p("t")]])
    assert determinant(singular).is_zero()
    swapped = PolyMatrix(Q, [[p("0"), p("1")], [p("1"), p("0")]])
    assert determinant(swapped) == -1


def test_determinant_against_sympy():
    rng = np.random.RandomState(3)
    for size in (1, 2, 3, 4):
        m = PolyMatrix(
            Q,
            [[random_poly(rng) for _ in range(size)] for _ in range(size)],
        )
        reference = sympy.Matrix(
            [[to_sympy(x) for x in row] for row in m.entries]
        ).det()
        assert sympy.simplify(to_sympy(determinant(m)) - reference) == 0


def test_smith_normal_form():
    m = PolyMatrix(Q, [[p("t - 1"), p("0")], [p("0"), p("t + 1")]])
    snf = smith_normal_form(m)
    assert snf.invariant_factors == (p("1"), p("t^2 - 1"))
    assert snf.rank == 2
    assert snf.zero_cokernel_rank == 0
    assert snf.torsion_order(Q) == p("t^2 - 1")

    wide = PolyMatrix(Q, [[p("t - 1"), p("t^2 - 1"), p("0")]])
    snf = smith_normal_form(wide)
    assert snf.invariant_factors == (p("t - 1"),)
    assert snf.zero_cokernel_rank == 2

    assert smith_normal_form(PolyMatrix.zeros(Q, 2, 2)).rank == 0


def test_smith_matches_fitting_ideal():
    rng = np.random.RandomState(11)
    for _ in range(8):
        m = PolyMatrix(
            Q, [[random_poly(rng, 1) for _ in range(3)] for _ in range(3)]
        )
        snf = smith_normal_form(m)
        if snf.rank == 0:
            continue
        assert snf.torsion_order(Q) == fitting_torsion(m)
        for k, factor in enumerate(snf.invariant_factors[1:], 1):
            assert divides(snf.invariant_factors[k - 1], factor)


def test_minor_gcd():
    m = PolyMatrix(Q, [[p("t - 1"), p("t^2 - 1")], [p("t - 1"), p("t")]])
    assert minor_gcd(m, 0) == 1
    assert minor_gcd(m, 1) == 1
    assert minor_gcd(PolyMatrix.zeros(Q, 2, 2), 1).is_zero()


def test_homology_torsion_order():
    d_in = PolyMatrix(Q, [[p("t - 1")]])
    d_out = PolyMatrix.zeros(Q, 1, 0)
    assert homology_torsion_order(d_in, d_out) == (p("t - 1"), 0)

    d_in = PolyMatrix(Q, [[p("t^2 - 1"), p("0")]])
    d_out = PolyMatrix(Q, [[p("0")], [p("1")]])
    assert homology_torsion_order(d_in, d_out) == (p("t^2 - 1"), 0)

    d_in = PolyMatrix.zeros(Q, 1, 2)
    d_out = PolyMatrix.zeros(Q, 2, 1)
    assert homology_torsion_order(d_in, d_out) == (p("1"), 2)


def test_homology_rejects_non_complex():
    d_in = PolyMatrix(Q, [[p("1")]])
    d_out = PolyMatrix(Q, [[p("t")]])
    with pytest.raises(ValueError):
        homology_torsion_order(d_in, d_out)
    with pytest.raises(ShapeError):
        homology_torsion_order(d_in, PolyMatrix.zeros(Q, 2, 1))


def test_polynomial_parts_live_in_sympy_ring():
    x = p("3*t^-2 - t + 1/2")
    assert x.poly.ring == polynomial_domain(Q).ring
    assert x.poly == polynomial_domain(Q).from_sympy(
        -T ** 3 + sympy.Rational(1, 2) * T ** 2 + 3
    )


def test_smith_normal_form_orders_factors_by_divisibility():
    m = PolyMatrix(Q, [[p("t^2 - 1"), p("0")], [p("0"), p("t - 1")]])
    assert smith_normal_form(m).invariant_factors == (
        p("t - 1"),
        p("t^2 - 1"),
    )
    # t is a unit of the Laurent ring
    m = PolyMatrix(Q, [[p("t^-1"), p("0")], [p("0"), p("t^2 + t")]])
    assert smith_normal_form(m).invariant_factors == (p("1"), p("t + 1"))


def test_cyclotomic_coefficients():
    field = FieldConfig(3)
    zeta = field.zeta()
    t = LaurentPoly.monomial(field, 1, 1)
    m = PolyMatrix(
        field,
        [
            [t, LaurentPoly.constant(field, zeta)],
            [LaurentPoly.constant(field, zeta * zeta), t],
        ],
    )
    # t² − ζ³
    assert determinant(m) == LaurentPoly(field, [-1, 0, 1])

    factor = LaurentPoly(field, [-zeta, 1])
    assert gcd(factor * (t + 1), factor * (t - 1)) == factor
    zero = LaurentPoly.zero(field)
    d_in = PolyMatrix(field, [[factor * factor, zero]])
    d_out = PolyMatrix(field, [[zero], [LaurentPoly.one(field)]])
    assert homology_torsion_order(d_in, d_out) == (factor * factor, 0)
    assert radical(factor * factor * (t + 1)) == factor * (t + 1)


def test_smith_normal_form_of_coupled_entries():
    m = PolyMatrix(Q, [[p("t - 1"), p("0")], [p("0"), p("t^2 - 2*t + 1")]])
    snf = smith_normal_form(m)
    assert snf.invariant_factors == (p("t - 1"), p("t^2 - 2*t + 1"))
    assert snf.rank == 2
    m = PolyMatrix(Q, [[p("t - 1"), p("t - 1")], [p("0"), p("t^2 - 1")]])
    assert smith_normal_form(m).invariant_factors == (
        p("t - 1"),
        p("t^2 - 1"),
    )
    assert smith_normal_form(PolyMatrix.zeros(Q, 2, 3)) == ((), 0, 3)


def test_homology_of_torus_complex():
    # Fox matrix of the commutator relation and the boundary below it
    d_in = PolyMatrix(Q, [[p("1 - t"), p("t - 1")]])
    d_out = PolyMatrix(Q, [[p("t - 1")], [p("t - 1")]])
    assert homology_torsion_order(d_in, d_out) == (p("t - 1"), 0)
    zero_in = PolyMatrix.zeros(Q, 0, 3)
    zero_out = PolyMatrix.zeros(Q, 3, 0)
    assert homology_torsion_order(zero_in, zero_out) == (p("1"), 3)


def test_homology_matches_fitting_ideal():
    rng = np.random.RandomState(17)
    for _ in range(6):
        d_in = PolyMatrix(
            Q, [[random_poly(rng, 2) for _ in range(3)] for _ in range(2)]
        )
        result = homology_torsion_order(d_in, PolyMatrix.zeros(Q, 3, 0))
        assert result.torsion == fitting_torsion(d_in)
        assert result.free_rank == 3 - smith_normal_form(d_in).rank
