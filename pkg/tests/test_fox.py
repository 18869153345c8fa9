import io

import numpy as np
import pytest

from arrangealex import corpus
from arrangealex.config import EngineConfig
from arrangealex.errors import ParseError, RepresentationError
from arrangealex.fields import FieldConfig
from arrangealex.fox import (
    Evaluator,
    GroupRingElement,
    TwistSpec,
    build_complex,
    delta0,
    delta0_minors,
    delta1,
    evaluate,
    fox_derivative,
    h2_free_rank,
    require_valid,
    twisted_invariants,
    validate_representation,
    zero_weight_loops,
)
from arrangealex.laurent import LaurentPoly, PolyMatrix, normalize
from arrangealex.presentation import (
    FreeWord,
    presentation,
    product_presentation,
)

Q = FieldConfig()
a, b, c, d = (FreeWord.generator(j) for j in range(1, 5))


def twist_file(name):
    return corpus.get_data_dir() / "twists" / name


def t_minus_one(field=Q):
    return LaurentPoly(field, [-1, 1])


@pytest.fixture(scope="module")
def four_lines_triple_point():
    return presentation(
        corpus.load_case("four_lines_triple_point").arrangement
    )


def test_fox_derivative():
    w = a * b * a.inverse()
    assert fox_derivative(w, 1) == GroupRingElement(
        {FreeWord(): 1, w: -1}
    )
    assert fox_derivative(w, 2) == GroupRingElement.word(a)
    assert fox_derivative(w, 3).is_zero()
    assert fox_derivative(a ** 3, 1).to_text() == "1 + a + aa"


@pytest.mark.parametrize(
    "spec",
    [
        TwistSpec.cyclotomic([1, 2, 3], [1, 4, 2], 5),
        TwistSpec.diagonal([2, 1, 1], [(0, 1), (1, 2), (2, 2)], 3).conjugated(
            ((FieldConfig(3).one(), FieldConfig(3).zeta()),
             (FieldConfig(3).zero(), FieldConfig(3).one()))
        ),
    ],
)
def test_fundamental_formula(spec):
    # ev(w) − id = Σ_j ev(∂w/∂a_j)·(ev(a_j) − id)
    rng = np.random.RandomState(5)
    evaluator = Evaluator(spec)
    identity = PolyMatrix.identity(spec.field, spec.dim)
    for _ in range(5):
        w = FreeWord(
            (int(g), int(e))
            for g, e in zip(
                rng.randint(1, 4, size=8), rng.choice([-1, 1], size=8)
            )
        )
        total = PolyMatrix.zeros(spec.field, spec.dim, spec.dim)
        for j in range(1, 4):
            total = total + evaluator.element(fox_derivative(w, j)) * (
                evaluator.word(FreeWord.generator(j)) - identity
            )
        assert total == evaluator.word(w) - identity


def test_evaluate_word():
    spec = TwistSpec.cyclotomic([1, 2], [1, 3], 5)
    field = spec.field
    value = evaluate(a * b.inverse() * b.inverse(), spec)
    # t^{1 - 4} ζ^{1 - 6}
    assert value[0, 0] == LaurentPoly.monomial(field, field.zeta(0), -3)
    assert evaluate(FreeWord(), spec) == PolyMatrix.identity(field, 1)
    with pytest.raises(RepresentationError):
        Evaluator(spec).rho(FreeWord.generator(3))


def test_twist_weights():
    spec = TwistSpec.trivial(3, (1, 2, 3))
    assert spec.weight(a * b.inverse() * c) == 2
    assert spec.weight_of_vector((1, 1, -1)) == 0
    assert spec.generator_count == 3


def test_twist_check():
    TwistSpec.trivial(2).check()
    with pytest.raises(RepresentationError):
        TwistSpec.trivial(2, (1, 0)).check(relaxed=True)
    with pytest.raises(RepresentationError):
        TwistSpec.trivial(2, (1, -1)).check()
    TwistSpec.trivial(2, (1, -1)).check(relaxed=True)
    singular = TwistSpec(
        (1,), Q, 2, ((((Q.one(), Q.one()), (Q.one(), Q.one()))),)
    )
    with pytest.raises(RepresentationError):
        singular.check()
    wrong_shape = TwistSpec((1,), Q, 2, (((Q.one(),),),))
    with pytest.raises(RepresentationError):
        wrong_shape.check()
    missing = TwistSpec((1, 1), Q, 1, (((Q.one(),),),))
    with pytest.raises(RepresentationError):
        missing.check()


def test_twist_json():
    for name in ["trivial_4.json", "zeta5_4.json", "diagonal_zeta3_4.json"]:
        spec = TwistSpec.load_file(twist_file(name))
        assert TwistSpec.from_json(spec.to_json()) == spec
        assert spec.fingerprint() == TwistSpec.from_json(
            spec.to_json()
        ).fingerprint()
    assert TwistSpec.load_file(twist_file("trivial_4.json")) == (
        TwistSpec.trivial(4)
    )
    zeta5 = TwistSpec.load_file(twist_file("zeta5_4.json"))
    assert zeta5 == TwistSpec.cyclotomic([1, 2, 1, 2], [1, 2, 3, 4], 5)
    assert zeta5.fingerprint() != TwistSpec.trivial(4).fingerprint()
    with pytest.raises(ParseError):
        TwistSpec.from_json({"rho": {}})
    with pytest.raises(ParseError):
        TwistSpec.load(io.StringIO("{"))
    with pytest.raises(ParseError):
        TwistSpec.from_json({"epsilon": [1], "rho": {"dim": 1}})


def test_validate_representation(four_lines_triple_point):
    assert validate_representation(
        four_lines_triple_point, TwistSpec.trivial(4)
    ).passed
    spec = TwistSpec.load_file(twist_file("diagonal_zeta3_4.json"))
    require_valid(four_lines_triple_point, spec)
    with pytest.raises(RepresentationError):
        validate_representation(four_lines_triple_point, TwistSpec.trivial(3))


def test_relation_witness(four_lines_triple_point):
    one, zero = Q.one(), Q.zero()
    identity = ((one, zero), (zero, one))
    upper = ((one, one), (zero, one))
    lower = ((one, zero), (one, one))
    spec = TwistSpec((1, 1, 1, 1), Q, 2, (upper, identity, identity, lower))
    report = validate_representation(four_lines_triple_point, spec)
    assert not report.passed
    assert report.witness == "[ad, a]"
    with pytest.raises(RepresentationError) as info:
        require_valid(four_lines_triple_point, spec)
    assert info.value.witness == "[ad, a]"


def test_complex_shapes(four_lines_triple_point):
    spec = TwistSpec.load_file(twist_file("diagonal_zeta3_4.json"))
    complex_ = build_complex(four_lines_triple_point, spec)
    assert complex_.d2.shape == (8, 8)
    assert complex_.d1.shape == (8, 2)
    assert (complex_.d2 * complex_.d1).is_zero()


def test_four_lines_triple_point_trivial(four_lines_triple_point):
    spec = TwistSpec.trivial(4)
    invariants = twisted_invariants(four_lines_triple_point, spec)
    assert invariants.delta0 == t_minus_one()
    assert invariants.delta1 == t_minus_one() ** 3
    assert invariants.h1_free_rank == 0
    assert invariants.h2_free_rank == 1
    assert invariants.delta0_minors_agree is True
    assert delta0(four_lines_triple_point, spec) == t_minus_one()
    assert delta0_minors(four_lines_triple_point, spec) == t_minus_one()
    assert delta1(four_lines_triple_point, spec) == (t_minus_one() ** 3, 0)
    assert h2_free_rank(four_lines_triple_point, spec) == 1


def test_minor_limit(four_lines_triple_point):
    invariants = twisted_invariants(
        four_lines_triple_point,
        TwistSpec.trivial(4),
        EngineConfig(minor_gcd_limit=0),
    )
    assert invariants.delta0_minors_agree is None


def test_two_dimensional_ranks(four_lines_triple_point):
    spec = TwistSpec.load_file(twist_file("diagonal_zeta3_4.json"))
    invariants = twisted_invariants(four_lines_triple_point, spec)
    # χ = 1
    assert invariants.h1_free_rank == 0
    assert invariants.h2_free_rank == 2
    assert invariants.delta0_minors_agree


def test_two_crossing_lines():
    pres = presentation(corpus.load_case("two_crossing_lines").arrangement)
    invariants = twisted_invariants(pres, TwistSpec.trivial(2))
    assert invariants.delta0 == t_minus_one()
    assert invariants.delta1 == t_minus_one()
    assert invariants.h2_free_rank == 0


@pytest.mark.parametrize("s", [1, 2, 3])
def test_product_trivial(s):
    pres = product_presentation(s)
    spec = TwistSpec.trivial(s + 1)
    assert delta0(pres, spec) == t_minus_one()
    assert delta1(pres, spec) == (t_minus_one() ** s, 0)
    assert h2_free_rank(pres, spec) == 0


@pytest.mark.parametrize("s", [1, 2, 3])
def test_product_cyclotomic(s):
    # Δ₁/Δ₀ = det(id − t^{ε(a)}ρ(a))^{s−1} for the central generator a
    pres = product_presentation(s)
    spec = TwistSpec.cyclotomic([1] * (s + 1), [0] * s + [1], 5)
    field = spec.field
    assert delta0(pres, spec) == 1
    expected = normalize(LaurentPoly(field, [-1, field.zeta()]) ** (s - 1))
    assert delta1(pres, spec) == (expected, 0)


def test_zero_weight_loops(four_lines_triple_point):
    # β = bcd, a·c^{bd⁻¹}, ad
    spec = TwistSpec.trivial(4, (1, 1, -2, 1))
    assert zero_weight_loops(four_lines_triple_point, spec) == [1]
    assert (
        zero_weight_loops(four_lines_triple_point, TwistSpec.trivial(4))
        == []
    )
