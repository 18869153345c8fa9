"""Line arrangements in ℂ² and their incidence combinatorics.

Lines are numbered from 1 in the order of the input file; line number ``i``
carries the meridian generator ``a_i``.  In the projective completion the
line at infinity gets the number 0.
"""
import hashlib
import itertools
import json
import typing

from .errors import InputError, NonEssentialArrangementError, ParseError
from .fields import GaussianRational


class AffineLine:
    """The line {a·z₁ + b·z₂ + c = 0} with Gaussian rational coefficients.

    Two lines compare equal iff their coefficient triples are proportional.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c=0):
        a = GaussianRational.coerce(a)
        b = GaussianRational.coerce(b)
        c = GaussianRational.coerce(c)
        if a.is_zero() and b.is_zero():
            raise InputError(
                "Line with a = b = 0 is not a line (c = {})".format(c)
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("AffineLine is immutable")

    def normalized(self) -> typing.Tuple[GaussianRational, ...]:
        """Coefficients scaled so that the first nonzero of (a, b) is 1."""
        pivot = self.a if not self.a.is_zero() else self.b
        scale = pivot.inverse()
        return (self.a * scale, self.b * scale, self.c * scale)

    def direction(self) -> typing.Tuple[GaussianRational, GaussianRational]:
        """Normalized (a, b), equal for parallel lines."""
        return self.normalized()[:2]

    def is_parallel(self, other: "AffineLine") -> bool:
        return (self.a * other.b - self.b * other.a).is_zero()

    def is_real(self) -> bool:
        a, b, c = self.normalized()
        return a.is_real() and b.is_real() and c.is_real()

    def is_vertical(self) -> bool:
        """True for lines of the form z₁ = const."""
        return self.b.is_zero()

    def contains(self, z1: GaussianRational, z2: GaussianRational) -> bool:
        return (self.a * z1 + self.b * z2 + self.c).is_zero()

    def slope_intercept(
        self,
    ) -> typing.Tuple[GaussianRational, GaussianRational]:
        """(α, γ) with z₂ = α·z₁ + γ on the line.

        Raises:
            ZeroDivisionError: for vertical lines.
        """
        inverse = self.b.inverse()
        return -self.a * inverse, -self.c * inverse

    def sheared(self, shear: GaussianRational) -> "AffineLine":
        """Image under (z₁, z₂) ↦ (z₁ + λ·z₂, z₂)."""
        shear = GaussianRational.coerce(shear)
        return AffineLine(self.a, self.b - shear * self.a, self.c)

    def intersection(
        self, other: "AffineLine"
    ) -> typing.Optional[typing.Tuple[GaussianRational, GaussianRational]]:
        """Intersection point, None for parallel lines."""
        det = self.a * other.b - other.a * self.b
        if det.is_zero():
            return None
        z1 = (other.c * self.b - self.c * other.b) / det
        z2 = (self.c * other.a - self.a * other.c) / det
        return z1, z2

    def __eq__(self, other):
        if not isinstance(other, AffineLine):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __repr__(self):
        return "AffineLine({}, {}, {})".format(self.a, self.b, self.c)

    def to_json(self) -> dict:
        return {
            "a": self.a.to_text(),
            "b": self.b.to_text(),
            "c": self.c.to_text(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AffineLine":
        try:
            return cls(
                GaussianRational.parse(str(data["a"])),
                GaussianRational.parse(str(data["b"])),
                GaussianRational.parse(str(data.get("c", "0"))),
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ParseError(
                "Invalid line description {!r}".format(data)
            ) from e


class Arrangement:
    """Ordered list of pairwise distinct affine lines."""

    def __init__(
        self, lines: typing.Sequence[AffineLine], name: str = ""
    ):
        lines = tuple(lines)
        if not lines:
            raise InputError("An arrangement needs at least one line")
        seen = {}
        for number, line in enumerate(lines, start=1):
            if line in seen:
                raise InputError(
                    "Lines {} and {} are equal".format(seen[line], number)
                )
            seen[line] = number
        self.lines = lines
        self.name = name

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def line(self, number: int) -> AffineLine:
        """Line with the given (1-based) number."""
        return self.lines[number - 1]

    @property
    def line_numbers(self) -> range:
        return range(1, len(self.lines) + 1)

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.lines == other.lines

    def __hash__(self):
        return hash(self.lines)

    def __repr__(self):
        return "Arrangement({!r}, {} lines)".format(self.name, len(self))

    def is_real(self) -> bool:
        return all(line.is_real() for line in self.lines)

    def sheared(self, shear) -> "Arrangement":
        """Arrangement in the coordinates (z₁ + λ·z₂, z₂)."""
        return Arrangement(
            [line.sheared(shear) for line in self.lines], self.name
        )

    def fingerprint(self) -> str:
        """Short stable hash of the normalized line equations."""
        text = json.dumps(
            [[x.to_text() for x in line.normalized()] for line in self.lines]
        )
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        data = {"lines": [line.to_json() for line in self.lines]}
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        """Parse ``{"lines": [{"a": ..., "b": ..., "c": ...}, ...]}``.

        Raises:
            ParseError: if the structure is malformed.
            InputError: if lines are invalid or repeated.
        """
        if not isinstance(data, dict) or not isinstance(
            data.get("lines"), list
        ):
            raise ParseError("Arrangement JSON needs a list 'lines'")
        return cls(
            [AffineLine.from_json(entry) for entry in data["lines"]],
            str(data.get("name", "")),
        )

    @classmethod
    def load(cls, stream) -> "Arrangement":
        try:
            data = json.load(stream)
        except json.JSONDecodeError as e:
            raise ParseError("Invalid arrangement JSON: {}".format(e)) from e
        return cls.from_json(data)

    @classmethod
    def load_file(cls, filename) -> "Arrangement":
        with open(filename, "r") as fh:
            return cls.load(fh)

    def dump(self, stream):
        json.dump(self.to_json(), stream, indent=2)


class SingularPoint(typing.NamedTuple):
    """A point of ℂ² lying on at least two lines."""

    #: (z₁, z₂)
    coords: typing.Tuple[GaussianRational, GaussianRational]
    #: Sorted numbers of the lines through the point.
    incident: typing.Tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    def sort_key(self):
        z1, z2 = self.coords
        return (z1.re, z1.im, z2.re, z2.im)

    def to_json(self) -> dict:
        return {
            "z1": self.coords[0].to_text(),
            "z2": self.coords[1].to_text(),
            "incident": list(self.incident),
            "multiplicity": self.multiplicity,
        }


def singular_points(arr: Arrangement) -> typing.List[SingularPoint]:
    """All singular points, sorted by (Re z₁, Im z₁, Re z₂, Im z₂)."""
    incidences = {}
    for (i, first), (j, second) in itertools.combinations(
        enumerate(arr.lines, start=1), 2
    ):
        point = first.intersection(second)
        if point is None:
            continue
        incidences.setdefault(point, set()).update((i, j))
    points = [
        SingularPoint(point, tuple(sorted(lines)))
        for point, lines in incidences.items()
    ]
    points.sort(key=SingularPoint.sort_key)
    return points


def is_essential(arr: Arrangement) -> bool:
    """True iff the arrangement has a singular point."""
    return any(
        not first.is_parallel(second)
        for first, second in itertools.combinations(arr.lines, 2)
    )


def require_essential(arr: Arrangement):
    """
    Raises:
        NonEssentialArrangementError: if all lines are parallel.
    """
    if not is_essential(arr):
        raise NonEssentialArrangementError(
            "Arrangement{} has no singular point: all {} lines are"
            " parallel".format(
                " '{}'".format(arr.name) if arr.name else "", len(arr)
            )
        )


class IncidenceSummary(typing.NamedTuple):
    """Counts derived from the singular points."""

    #: Number of singular points.
    s: int
    #: Multiplicities d_k, in singular point order.
    d: typing.Tuple[int, ...]
    #: s_i, the number of singular points on line i (index i − 1).
    s_i: typing.Tuple[int, ...]
    #: Euler characteristic χ(M) = 1 − m + Σ (d_k − 1).
    euler_chi: int

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "d": list(self.d),
            "s_i": list(self.s_i),
            "chi": self.euler_chi,
        }


def incidence_summary(arr: Arrangement) -> IncidenceSummary:
    """
    Raises:
        NonEssentialArrangementError: for non-essential arrangements.
    """
    require_essential(arr)
    points = singular_points(arr)
    counts = [0] * len(arr)
    for point in points:
        for number in point.incident:
            counts[number - 1] += 1
    d = tuple(point.multiplicity for point in points)
    chi = 1 - len(arr) + sum(dk - 1 for dk in d)
    return IncidenceSummary(len(points), d, tuple(counts), chi)


class ProjectivePoint(typing.NamedTuple):
    """Singular point of the projective arrangement 𝒜 ∪ {l₀}."""

    label: str
    #: Incident line numbers, 0 standing for the line at infinity.
    incident: typing.Tuple[int, ...]
    #: Affine coordinates, None for points at infinity.
    coords: typing.Optional[typing.Tuple[GaussianRational, GaussianRational]]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    @property
    def at_infinity(self) -> bool:
        return self.coords is None

    def to_json(self) -> dict:
        data = {
            "label": self.label,
            "incident": list(self.incident),
            "multiplicity": self.multiplicity,
        }
        if self.coords is not None:
            data["z1"] = self.coords[0].to_text()
            data["z2"] = self.coords[1].to_text()
        return data


class ProjectiveCompletion(typing.NamedTuple):
    """Data of the completion by the line at infinity l₀."""

    #: Parallelism classes of line numbers, ordered by smallest member.
    direction_classes: typing.Tuple[typing.Tuple[int, ...], ...]
    #: One point at infinity per direction class.
    infinity_points: typing.Tuple[ProjectivePoint, ...]
    #: s̃_i for i = 0..m (index 0 is l₀).
    s_tilde: typing.Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "direction_classes": [list(c) for c in self.direction_classes],
            "infinity_points": [p.to_json() for p in self.infinity_points],
            "s_tilde": list(self.s_tilde),
        }


def direction_classes(
    arr: Arrangement,
) -> typing.Tuple[typing.Tuple[int, ...], ...]:
    classes = {}
    for number, line in enumerate(arr.lines, start=1):
        classes.setdefault(line.direction(), []).append(number)
    return tuple(sorted(tuple(c) for c in classes.values()))


def projectivize(arr: Arrangement) -> ProjectiveCompletion:
    classes = direction_classes(arr)
    infinity = tuple(
        ProjectivePoint("Q{}".format(k), (0,) + members, None)
        for k, members in enumerate(classes, start=1)
    )
    counts = [0] * len(arr)
    for point in singular_points(arr):
        for number in point.incident:
            counts[number - 1] += 1
    s_tilde = (len(classes),) + tuple(c + 1 for c in counts)
    return ProjectiveCompletion(classes, infinity, s_tilde)


def projective_points(arr: Arrangement) -> typing.List[ProjectivePoint]:
    """Affine singular points (labels P1, P2, ...) followed by the points at
    infinity (Q1, Q2, ...)."""
    affine = [
        ProjectivePoint("P{}".format(k), point.incident, point.coords)
        for k, point in enumerate(singular_points(arr), start=1)
    ]
    return affine + list(projectivize(arr).infinity_points)


def parallel_free_lines(arr: Arrangement) -> typing.Tuple[int, ...]:
    """Numbers of the lines that have no parallel partner."""
    return tuple(
        members[0] for members in direction_classes(arr) if len(members) == 1
    )
