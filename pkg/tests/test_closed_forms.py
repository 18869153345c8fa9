import pytest

from arrangealex import corpus
from arrangealex.arrangement import AffineLine, Arrangement
from arrangealex.closed_forms import (
    Factor,
    FactoredPoly,
    boundary_loops,
    boundary_ratio,
    closed_form_report,
    delta1_wstar,
    divisor_bound,
    infinity_root_bound,
    meridian_at_infinity,
    refined_bound,
    torsion_ratio_check,
)
from arrangealex.errors import InapplicableError, RepresentationError
from arrangealex.fields import FieldConfig
from arrangealex.fox import TwistSpec, twisted_invariants
from arrangealex.laurent import divides, parse_laurent
from arrangealex.presentation import FreeWord, presentation
from arrangealex.roots import root_containment

Q = FieldConfig()


def p(text):
    return parse_laurent(text)


def arrangement(name):
    return corpus.load_case(name).arrangement


def test_meridian_at_infinity():
    loop = meridian_at_infinity(3)
    assert loop.vector == (-1, -1, -1)
    assert loop.word == (
        FreeWord.generator(1) * FreeWord.generator(2) * FreeWord.generator(3)
    ).inverse()


def test_factored_poly_merges_bases():
    poly = FactoredPoly(
        Q,
        [
            Factor("a1", p("t - 1"), 1),
            Factor("beta1", p("t^3 - 1"), 2),
            Factor("a2", p("t - 1"), 2),
            Factor("a3", p("t + 1"), 0),
            Factor("unit", p("1"), 4),
        ],
    )
    assert [(f.label, f.exponent) for f in poly.factors] == [
        ("a1,a2", 3),
        ("beta1", 2),
    ]
    assert poly.pretty() == "(t - 1)^3 * (t^3 - 1)^2"
    assert poly.expanded() == p("t - 1") ** 3 * p("t^3 - 1") ** 2
    assert FactoredPoly(Q).pretty() == "1"
    assert FactoredPoly(Q).expanded() == 1


def test_four_lines_triple_point_trivial():
    arr = arrangement("four_lines_triple_point")
    spec = TwistSpec.trivial(4)
    expected = p("t^3 - 1") * p("t - 1") ** 4
    assert delta1_wstar(arr, spec) == expected
    assert divisor_bound(arr, spec) == expected
    assert infinity_root_bound(arr, spec) == (
        p("t^3 - 1") * p("t^2 - 1") ** 2 * p("t - 1") ** 4
    )
    # parallel-free lines 3 and 4 both give X_i = (t^3 - 1)(t - 1)
    assert refined_bound(arr, spec) == p("t^3 - 1") * p("t - 1") ** 2
    assert torsion_ratio_check(arr, spec).passed


def test_four_lines_triple_point_report():
    report = closed_form_report(
        arrangement("four_lines_triple_point"), TwistSpec.trivial(4)
    )
    assert report.delta0 == p("t - 1")
    assert report.delta1_wstar.pretty() == "(t^3 - 1) * (t - 1)^4"
    assert report.torsion_ratio.ratio == p("t^3 - 1") * p("t - 1") ** 3
    assert report.boundary_ratio.expanded() == (
        p("t^3 - 1") * p("t^2 - 1") * p("t^4 - 1") * p("t - 1") ** 3
    )
    data = report.to_json()
    assert list(data) == [
        "inputs",
        "delta0",
        "delta1_wstar",
        "divisor_bound",
        "refined_bound",
        "boundary_ratio",
        "infinity_bound",
        "torsion_ratio",
    ]
    assert data["delta0"] == "t - 1"
    assert data["delta1_wstar"]["factored"] == "(t^3 - 1) * (t - 1)^4"
    assert data["torsion_ratio"]["passed"] is True


def test_two_crossing_lines():
    arr = arrangement("two_crossing_lines")
    spec = TwistSpec.trivial(2)
    assert delta1_wstar(arr, spec) == p("t - 1")
    assert divisor_bound(arr, spec) == p("t - 1")
    assert refined_bound(arr, spec) == p("t - 1")
    assert boundary_ratio(arr, spec) == 1
    assert infinity_root_bound(arr, spec) == p("t^2 - 1") * p("t - 1") ** 2


@pytest.mark.parametrize("name", corpus.case_names())
def test_bounds_contain_delta1(name):
    arr = arrangement(name)
    pres = presentation(arr)
    for _, spec in corpus.standard_twists(arr):
        invariants = twisted_invariants(pres, spec)
        report = closed_form_report(arr, spec, pres=pres)
        assert report.torsion_ratio.passed
        assert divides(invariants.delta1, report.divisor_bound.expanded())
        if report.refined_bound is not None:
            assert divides(
                invariants.delta1, report.refined_bound.expanded()
            )
            assert divides(
                report.refined_bound.expanded(),
                report.divisor_bound.expanded(),
            )
        assert root_containment(
            invariants.delta1, report.infinity_bound.expanded()
        )


def test_conjugation_invariance():
    arr = arrangement("four_lines_triple_point")
    conjugated = dict(corpus.standard_twists(arr))["diagonal_zeta3"]
    plain = TwistSpec.diagonal(
        [1] * 4, [(j % 3, 2 * j % 3) for j in range(1, 5)], 3
    )
    first = closed_form_report(arr, plain)
    second = closed_form_report(arr, conjugated)
    assert first.boundary_ratio is None
    for name in ["delta1_wstar", "divisor_bound", "infinity_bound"]:
        assert (
            getattr(first, name).expanded()
            == getattr(second, name).expanded()
        )


def test_boundary_ratio_needs_one_dimension():
    arr = arrangement("four_lines_triple_point")
    spec = dict(corpus.standard_twists(arr))["diagonal_zeta3"]
    with pytest.raises(InapplicableError):
        boundary_ratio(arr, spec)


def test_every_line_has_a_partner():
    arr = Arrangement(
        [
            AffineLine(1, -1, 0),
            AffineLine(1, -1, 1),
            AffineLine(1, 1, 0),
            AffineLine(1, 1, -1),
        ]
    )
    spec = TwistSpec.trivial(4)
    with pytest.raises(InapplicableError):
        refined_bound(arr, spec)
    assert closed_form_report(arr, spec).refined_bound is None


def test_relaxed_epsilon():
    # ε(β₁) = ε(bcd) = 0 and ρ is trivial
    arr = arrangement("four_lines_triple_point")
    spec = TwistSpec.trivial(4, (1, 1, -2, 1))
    with pytest.raises(RepresentationError):
        delta1_wstar(arr, spec)
    with pytest.raises(InapplicableError):
        delta1_wstar(arr, spec, relaxed=True)


def test_boundary_loops_falk_a2():
    loops = boundary_loops(arrangement("falk_a2"))
    assert [(loop.label, n) for loop, n in loops] == (
        [("P{}".format(k), 0) for k in range(1, 9)]
        + [("Q1", 1), ("Q2", 1), ("Q3", 0), ("a0", 1)]
        + [("a1", 2), ("a2", 2), ("a3", 2), ("a4", 2), ("a5", 3)]
    )
    assert loops[8][0].vector == (0, 0, -1, -1, -1)
    assert loops[9][0].vector == (-1, -1, 0, 0, -1)


def test_falk_boundary_parity_trivial_twist():
    first = closed_form_report(arrangement("falk_a1"), TwistSpec.trivial(5))
    assert all(f.exponent % 2 == 0 for f in first.boundary_ratio.factors)
    second = closed_form_report(arrangement("falk_a2"), TwistSpec.trivial(5))
    exponents = {
        f.base.to_text(): f.exponent for f in second.boundary_ratio.factors
    }
    assert exponents == {"t^3 - 1": 2, "t^5 - 1": 1, "t - 1": 11}
