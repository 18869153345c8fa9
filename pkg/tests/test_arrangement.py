import fractions
import io
import pathlib

import pytest

from arrangealex import corpus
from arrangealex.arrangement import (
    AffineLine,
    Arrangement,
    incidence_summary,
    is_essential,
    parallel_free_lines,
    projective_points,
    projectivize,
    require_essential,
    singular_points,
)
from arrangealex.errors import (
    InputError,
    NonEssentialArrangementError,
    ParseError,
)
from arrangealex.fields import GaussianRational, I


@pytest.fixture
def test_data_dir():
    """Return path to the data directory of this test file."""
    p = pathlib.Path(__file__)
    p = p.parent / p.stem  # same path but without file extension
    assert p.is_dir(), f"{p} is not a directory."
    return p


def arrangement(name):
    return corpus.load_case(name).arrangement


def test_line_equality_up_to_scaling():
    assert AffineLine(1, -1, 2) == AffineLine(-3, 3, -6)
    assert AffineLine(1, I, 0) == AffineLine(I, -1, 0)
    assert AffineLine(1, -1, 2) != AffineLine(1, -1, 3)
    assert hash(AffineLine(2, 4, 0)) == hash(AffineLine(1, 2, 0))


def test_line_invalid():
    with pytest.raises(InputError):
        AffineLine(0, 0, 1)
    with pytest.raises(ParseError):
        AffineLine.from_json({"b": "1"})


def test_line_geometry():
    line = AffineLine(1, -1, -1)
    assert line.contains(GaussianRational(1), GaussianRational(0))
    assert line.is_parallel(AffineLine(2, -2, 5))
    assert not line.is_parallel(AffineLine(1, 1, 0))
    assert line.slope_intercept() == (1, -1)
    assert AffineLine(1, 0, 3).is_vertical()
    assert not AffineLine(1, I, 0).is_real()
    assert AffineLine(I, I, 0).is_real()
    assert line.intersection(AffineLine(1, -1, 0)) is None
    assert line.intersection(AffineLine(1, 1, 0)) == (
        fractions.Fraction(1, 2),
        fractions.Fraction(-1, 2),
    )


def test_shear_moves_points_along():
    line = AffineLine(1, I, -2)
    shear = GaussianRational(fractions.Fraction(1, 3), 2)
    image = line.sheared(shear)
    # (2, 0) and (2 - i, 1) lie on the line
    for z1, z2 in [(GaussianRational(2), GaussianRational(0)),
                   (GaussianRational(2, -1), GaussianRational(1))]:
        assert line.contains(z1, z2)
        assert image.contains(z1 + shear * z2, z2)


def test_arrangement_validation(test_data_dir):
    with pytest.raises(InputError):
        Arrangement([])
    with pytest.raises(InputError):
        Arrangement.load_file(test_data_dir / "repeated_line.json")
    with pytest.raises(InputError):
        Arrangement.load_file(test_data_dir / "bad_line.json")
    with pytest.raises(ParseError):
        Arrangement.load_file(test_data_dir / "truncated.json")
    with pytest.raises(ParseError):
        Arrangement.from_json({"lines": "z1 = 0"})


def test_json_round_trip():
    arr = arrangement("four_lines_triple_point")
    stream = io.StringIO()
    arr.dump(stream)
    stream.seek(0)
    loaded = Arrangement.load(stream)
    assert loaded == arr
    assert loaded.name == "four_lines_triple_point"


def test_fingerprint_ignores_scaling():
    first = Arrangement([AffineLine(1, -1, 0), AffineLine(0, 1, 1)])
    second = Arrangement([AffineLine(2, -2, 0), AffineLine(0, 3, 3)])
    third = Arrangement([AffineLine(0, 1, 1), AffineLine(1, -1, 0)])
    assert first.fingerprint() == second.fingerprint()
    assert first.fingerprint() != third.fingerprint()


def test_non_essential(test_data_dir):
    arr = Arrangement.load_file(test_data_dir / "parallel_only.json")
    assert not is_essential(arr)
    assert singular_points(arr) == []
    with pytest.raises(NonEssentialArrangementError):
        require_essential(arr)
    with pytest.raises(NonEssentialArrangementError):
        incidence_summary(arr)
    assert not is_essential(Arrangement([AffineLine(1, 1, 0)]))


def test_singular_points_four_lines_triple_point():
    points = singular_points(arrangement("four_lines_triple_point"))
    assert [p.incident for p in points] == [(2, 3, 4), (1, 3), (1, 4)]
    assert points[0].coords == (0, 0)
    assert points[1].coords == (
        GaussianRational(fractions.Fraction(1, 2), fractions.Fraction(-1, 2)),
        GaussianRational(fractions.Fraction(-1, 2), fractions.Fraction(-1, 2)),
    )
    assert points[2].coords == (
        fractions.Fraction(2, 3),
        fractions.Fraction(-1, 3),
    )


@pytest.mark.parametrize(
    "name, s, d, s_i, chi",
    [
        ("four_lines_triple_point", 3, (3, 2, 2), (2, 1, 2, 2), 1),
        ("two_crossing_lines", 1, (2,), (1, 1), 0),
        ("three_generic_lines", 3, (2, 2, 2), (2, 2, 2), 1),
        ("pencil_of_four", 1, (4,), (1, 1, 1, 1), 0),
        ("parallel_pair_transversal", 2, (2, 2), (1, 1, 2), 0),
        ("falk_a2", 8, (2,) * 8, (3, 3, 3, 3, 4), 4),
    ],
)
def test_incidence_summary(name, s, d, s_i, chi):
    summary = incidence_summary(arrangement(name))
    assert summary.s == s
    assert summary.d == d
    assert summary.s_i == s_i
    assert summary.euler_chi == chi


def test_falk_a1_summary():
    summary = incidence_summary(arrangement("falk_a1"))
    assert summary.s == 7
    assert sorted(summary.d) == [2] * 6 + [3]
    assert summary.s_i == (3, 3, 3, 3, 3)
    assert summary.euler_chi == 4


def test_projectivize_four_lines_triple_point():
    completion = projectivize(arrangement("four_lines_triple_point"))
    assert completion.direction_classes == ((1, 2), (3,), (4,))
    assert [p.incident for p in completion.infinity_points] == [
        (0, 1, 2),
        (0, 3),
        (0, 4),
    ]
    assert [p.label for p in completion.infinity_points] == [
        "Q1",
        "Q2",
        "Q3",
    ]
    assert completion.s_tilde == (3, 3, 2, 3, 3)


def test_projectivize_falk_a2():
    completion = projectivize(arrangement("falk_a2"))
    assert completion.direction_classes == ((1, 2), (3, 4), (5,))
    assert [p.multiplicity for p in completion.infinity_points] == [3, 3, 2]
    assert completion.s_tilde == (3, 4, 4, 4, 4, 5)


def test_projective_points():
    points = projective_points(arrangement("parallel_pair_transversal"))
    assert [p.label for p in points] == ["P1", "P2", "Q1", "Q2"]
    assert [p.at_infinity for p in points] == [False, False, True, True]
    assert points[2].incident == (0, 1, 2)
    assert points[0].to_json()["z2"] == "0"
    assert "z1" not in points[3].to_json()


def test_parallel_free_lines():
    assert parallel_free_lines(arrangement("parallel_pair_transversal")) == (
        3,
    )
    assert parallel_free_lines(arrangement("four_lines_triple_point")) == (
        3,
        4,
    )
    assert parallel_free_lines(arrangement("falk_a2")) == (5,)
    assert parallel_free_lines(arrangement("pencil_of_four")) == (1, 2, 3, 4)
