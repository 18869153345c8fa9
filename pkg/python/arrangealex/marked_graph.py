"""Generic frames, sweep paths and the marked 2-graph of a line arrangement.

The projection π(z₁, z₂) = z₁ is swept along a piecewise linear path
z₁ = x + i·h(x).  Over the path every line is a strand z₂ = α·z₁ + γ whose
real and imaginary parts are affine in x on each path segment, so all
crossing times are exact rationals.  Strands are ordered bottom-up by
Re z₂.
"""
import collections
import itertools
import logging
import math
import typing
from fractions import Fraction

import numpy as np

from .arrangement import Arrangement, require_essential, singular_points
from .config import EngineConfig
from .errors import FrameSearchError, StaleFrameError
from .fields import GaussianRational, format_rational

logger = logging.getLogger(__name__)


ACTUAL = "actual"
VIRTUAL = "virtual"

#: Names of the checks of :func:`verify_assumptions`, in evaluation order.
CHECK_NAMES = (
    "no_vertical_lines",
    "distinct_singular_abscissae",
    "path_through_singular_points",
    "distinct_endpoint_order",
    "transverse_virtual_crossings",
    "isolated_crossings",
    "crossings_off_breakpoints",
    "bounded_imaginary_parts",
    "consistent_final_order",
)


class GenericFrame(typing.NamedTuple):
    """Coordinates and sweep path used to trace the marked 2-graph."""

    #: λ of the shear (z₁, z₂) ↦ (z₁ + λ·z₂, z₂).
    shear: GaussianRational
    #: (x₁(p), y₁(p)) of the base point.
    basepoint: typing.Tuple[Fraction, Fraction]
    #: Breakpoints (t, h(t)) of the path, t = x₁ − x₁(p), starting at t = 0.
    breakpoints: typing.Tuple[typing.Tuple[Fraction, Fraction], ...]
    #: Strict upper bound R of Im z₂ over all strands along the path.
    bound: Fraction
    #: Seed the frame was searched with.
    seed: int = 0

    def abscissae(self) -> typing.List[Fraction]:
        """x₁ coordinates of the breakpoints."""
        return [t + self.basepoint[0] for t, _ in self.breakpoints]

    def segments(self) -> typing.List["Segment"]:
        x0 = self.basepoint[0]
        result = []
        for (t_a, h_a), (t_b, h_b) in zip(
            self.breakpoints, self.breakpoints[1:]
        ):
            slope = (h_b - h_a) / (t_b - t_a)
            start = t_a + x0
            result.append(
                Segment(start, t_b + x0, slope, h_a - slope * start)
            )
        return result

    def height(self, x: Fraction) -> Fraction:
        """h at the abscissa x (inside the path)."""
        for segment in self.segments():
            if segment.start <= x <= segment.end:
                return segment.height(x)
        raise ValueError("x = {} is not on the path".format(x))

    def to_json(self) -> dict:
        return {
            "shear": self.shear.to_text(),
            "basepoint": [format_rational(v) for v in self.basepoint],
            "breakpoints": [
                [format_rational(t), format_rational(h)]
                for t, h in self.breakpoints
            ],
            "bound": format_rational(self.bound),
            "seed": self.seed,
        }


class Segment(typing.NamedTuple):
    """Path piece h(x) = slope·x + offset for start ≤ x ≤ end."""

    start: Fraction
    end: Fraction
    slope: Fraction
    offset: Fraction

    def height(self, x: Fraction) -> Fraction:
        return self.slope * x + self.offset

    def is_horizontal(self) -> bool:
        return self.slope == 0


class StrandForm(typing.NamedTuple):
    """Re z₂ = re_slope·x + re_const and Im z₂ = im_slope·x + im_const."""

    re_slope: Fraction
    re_const: Fraction
    im_slope: Fraction
    im_const: Fraction

    def re(self, x: Fraction) -> Fraction:
        return self.re_slope * x + self.re_const

    def im(self, x: Fraction) -> Fraction:
        return self.im_slope * x + self.im_const


def strand_form(line, segment: Segment) -> StrandForm:
    """Affine real and imaginary parts of z₂ on a strand over a segment."""
    alpha, gamma = line.slope_intercept()
    s, k = segment.slope, segment.offset
    # z₁ = x + i(s·x + k)
    return StrandForm(
        alpha.re - alpha.im * s,
        gamma.re - alpha.im * k,
        alpha.im + alpha.re * s,
        alpha.re * k + gamma.im,
    )


def strand_value(line, x: Fraction, h: Fraction) -> GaussianRational:
    """z₂ of the strand over z₁ = x + i·h."""
    alpha, gamma = line.slope_intercept()
    return alpha * GaussianRational(x, h) + gamma


class Crossing(typing.NamedTuple):
    """One crossing of the marked 2-graph."""

    #: Sweep time t = x₁ − x₁(p).
    time: Fraction
    #: x₁ of the crossing.
    x: Fraction
    #: ACTUAL or VIRTUAL.
    kind: str
    #: Line numbers involved, bottom-up just before the crossing.
    strands: typing.Tuple[int, ...]
    #: 1-based position of the lowest involved strand before the crossing.
    position: int
    #: 1-based singular point number for actual crossings.
    point: typing.Optional[int] = None
    #: +1 / −1 for virtual crossings, 0 for actual ones.
    sign: int = 0

    @property
    def is_actual(self) -> bool:
        return self.kind == ACTUAL

    def to_json(self) -> dict:
        data = {
            "time": format_rational(self.time),
            "x1": format_rational(self.x),
            "kind": self.kind,
            "strands": list(self.strands),
            "position": self.position,
        }
        if self.is_actual:
            data["point"] = self.point
        else:
            data["sign"] = self.sign
        return data


class MarkedTwoGraph(typing.NamedTuple):
    """Initial strand order and the ordered crossing sequence."""

    #: Line numbers bottom-up at t = 0.
    initial_order: typing.Tuple[int, ...]
    crossings: typing.Tuple[Crossing, ...]
    #: Line numbers bottom-up at the end of the path.
    final_order: typing.Tuple[int, ...]

    @property
    def actual_crossings(self) -> typing.List[Crossing]:
        return [c for c in self.crossings if c.is_actual]

    @property
    def virtual_crossings(self) -> typing.List[Crossing]:
        return [c for c in self.crossings if not c.is_actual]

    def to_json(self) -> dict:
        return {
            "initial_order": list(self.initial_order),
            "final_order": list(self.final_order),
            "crossings": [c.to_json() for c in self.crossings],
        }


class AssumptionCheck(typing.NamedTuple):
    name: str
    passed: bool
    message: str = ""
    witness: typing.Optional[dict] = None

    def to_json(self) -> dict:
        data = {"name": self.name, "passed": self.passed}
        if self.message:
            data["message"] = self.message
        if self.witness is not None:
            data["witness"] = self.witness
        return data


class AssumptionReport(typing.NamedTuple):
    """Result of :func:`verify_assumptions`, one entry per check."""

    checks: typing.Tuple[AssumptionCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AssumptionCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> typing.List[AssumptionCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


class _Event(typing.NamedTuple):
    x: Fraction
    pair: typing.Tuple[int, int]
    actual: bool
    im: typing.Dict[int, Fraction]


class _Sweep:
    """Exact analysis of an arrangement over a frame's path."""

    def __init__(self, arr: Arrangement, frame: GenericFrame):
        self.arr = arr
        self.frame = frame
        self.results = collections.OrderedDict()
        self.graph = None

    def _record(self, name, failure=None):
        if name in self.results and not self.results[name].passed:
            return
        if failure is None:
            self.results[name] = AssumptionCheck(name, True)
        else:
            message, witness = failure
            self.results[name] = AssumptionCheck(name, False, message, witness)

    def _time(self, x):
        return format_rational(x - self.frame.basepoint[0])

    def report(self) -> AssumptionReport:
        for name in CHECK_NAMES:
            if name not in self.results:
                self.results[name] = AssumptionCheck(
                    name, False, "not evaluated"
                )
        return AssumptionReport(tuple(self.results.values()))

    def run(self) -> AssumptionReport:
        arr, frame = self.arr, self.frame

        vertical = [n for n in arr.line_numbers if arr.line(n).is_vertical()]
        self._record(
            "no_vertical_lines",
            ("lines of the form z1 = c", {"lines": vertical})
            if vertical
            else None,
        )
        if vertical:
            return self.report()

        points = singular_points(arr)
        by_x = collections.defaultdict(list)
        for k, point in enumerate(points, start=1):
            by_x[point.coords[0].re].append(k)
        clash = next((ks for ks in by_x.values() if len(ks) > 1), None)
        self._record(
            "distinct_singular_abscissae",
            (
                "singular points share their x1 coordinate",
                {
                    "x1": format_rational(points[clash[0] - 1].coords[0].re),
                    "points": clash,
                },
            )
            if clash
            else None,
        )

        if len(frame.breakpoints) < 2:
            self._record(
                "path_through_singular_points",
                ("path has fewer than two breakpoints", None),
            )
            return self.report()
        segments = frame.segments()
        breaks = frame.abscissae()
        x_start, x_end = breaks[0], breaks[-1]
        self._check_path(points, segments)

        forms = [
            {n: strand_form(arr.line(n), segment) for n in arr.line_numbers}
            for segment in segments
        ]

        start_values = {n: forms[0][n].re(x_start) for n in arr.line_numbers}
        end_values = {n: forms[-1][n].re(x_end) for n in arr.line_numbers}
        for label, values, x in (
            ("start", start_values, x_start),
            ("end", end_values, x_end),
        ):
            tied = _tied(values)
            if tied:
                self._record(
                    "distinct_endpoint_order",
                    (
                        "strands share Re z2 at the {} of the path".format(
                            label
                        ),
                        {"time": self._time(x), "lines": tied},
                    ),
                )
        self._record("distinct_endpoint_order")

        events = self._events(segments, forms)
        self._check_breakpoints(events, breaks[1:])
        groups = self._check_groups(events, points)
        self._check_bound(segments, forms)
        if self.report_so_far_passed():
            self._order(groups, start_values, end_values)
        return self.report()

    def report_so_far_passed(self):
        return all(c.passed for c in self.results.values())

    def _check_path(self, points, segments):
        x_start = segments[0].start
        for k, point in enumerate(points, start=1):
            z1 = point.coords[0]
            inside = [
                s
                for s in segments
                if s.start < z1.re < s.end
                and s.is_horizontal()
                and s.height(z1.re) == z1.im
            ]
            if z1.re <= x_start or not inside:
                self._record(
                    "path_through_singular_points",
                    (
                        "path is not horizontal through pi(P{})".format(k),
                        {
                            "point": k,
                            "z1": z1.to_text(),
                            "time": self._time(z1.re),
                        },
                    ),
                )
        self._record("path_through_singular_points")

    def _events(self, segments, forms) -> typing.List[_Event]:
        events = []
        numbers = list(self.arr.line_numbers)
        for segment, form in zip(segments, forms):
            for i, j in itertools.combinations(numbers, 2):
                d_slope = form[i].re_slope - form[j].re_slope
                d_const = form[i].re_const - form[j].re_const
                if d_slope == 0:
                    if d_const == 0:
                        self._record(
                            "transverse_virtual_crossings",
                            (
                                "strands {} and {} share Re z2 along a whole"
                                " segment".format(i, j),
                                {
                                    "lines": [i, j],
                                    "segment": [
                                        self._time(segment.start),
                                        self._time(segment.end),
                                    ],
                                },
                            ),
                        )
                    continue
                x = -d_const / d_slope
                if not segment.start < x <= segment.end:
                    continue
                im = {i: form[i].im(x), j: form[j].im(x)}
                events.append(_Event(x, (i, j), im[i] == im[j], im))
        self._record("transverse_virtual_crossings")
        events.sort(key=lambda e: (e.x, e.pair))
        logger.debug(
            "%d strand coincidences on %d segments", len(events), len(segments)
        )
        return events

    def _check_breakpoints(self, events, breaks):
        break_set = set(breaks)
        for event in events:
            if event.x in break_set:
                self._record(
                    "crossings_off_breakpoints",
                    (
                        "crossing of strands {} and {} at a path"
                        " breakpoint".format(*event.pair),
                        {
                            "time": self._time(event.x),
                            "lines": list(event.pair),
                        },
                    ),
                )
        self._record("crossings_off_breakpoints")

    def _check_groups(self, events, points):
        groups = collections.OrderedDict()
        for event in events:
            groups.setdefault(event.x, []).append(event)
        point_by_x = {
            point.coords[0].re: (k, point)
            for k, point in enumerate(points, start=1)
        }
        result = []
        seen_points = set()
        for x, group in groups.items():
            pairs = [e.pair for e in group]
            virtual = [e for e in group if not e.actual]
            witness = {
                "time": self._time(x),
                "x1": format_rational(x),
                "pairs": [list(p) for p in pairs],
            }
            if virtual:
                if len(group) > 1:
                    self._record(
                        "isolated_crossings",
                        ("virtual crossing shares its time", witness),
                    )
                    continue
                result.append((x, VIRTUAL, virtual[0], None))
                continue
            k, point = point_by_x.get(x, (None, None))
            expected = (
                set(itertools.combinations(point.incident, 2))
                if point is not None
                else None
            )
            if expected != set(pairs):
                self._record(
                    "isolated_crossings",
                    (
                        "actual crossing does not match a singular point",
                        witness,
                    ),
                )
                continue
            seen_points.add(k)
            result.append((x, ACTUAL, group, k))
        missing = sorted(set(range(1, len(points) + 1)) - seen_points)
        if missing:
            self._record(
                "isolated_crossings",
                (
                    "no actual crossing for singular point P{}".format(
                        missing[0]
                    ),
                    {"points": missing},
                ),
            )
        self._record("isolated_crossings")
        return result

    def _check_bound(self, segments, forms):
        bound = self.frame.bound
        for segment, form in zip(segments, forms):
            for n, f in form.items():
                for x in (segment.start, segment.end):
                    if f.im(x) >= bound:
                        self._record(
                            "bounded_imaginary_parts",
                            (
                                "Im z2 of strand {} reaches R".format(n),
                                {
                                    "time": self._time(x),
                                    "line": n,
                                    "im": format_rational(f.im(x)),
                                },
                            ),
                        )
        self._record("bounded_imaginary_parts")

    def _order(self, groups, start_values, end_values):
        order = sorted(start_values, key=start_values.get)
        initial = tuple(order)
        x0 = self.frame.basepoint[0]
        crossings = []
        for x, kind, payload, k in groups:
            if kind == VIRTUAL:
                lines = set(payload.pair)
            else:
                lines = set(n for e in payload for n in e.pair)
            positions = sorted(order.index(n) for n in lines)
            if positions != list(range(positions[0], positions[-1] + 1)):
                self._record(
                    "consistent_final_order",
                    (
                        "crossing strands are not adjacent",
                        {"time": self._time(x), "lines": sorted(lines)},
                    ),
                )
                return
            low, high = positions[0], positions[-1]
            strands = tuple(order[low:high + 1])
            if kind == VIRTUAL:
                lower, upper = strands
                sign = 1 if payload.im[lower] < payload.im[upper] else -1
                crossings.append(
                    Crossing(x - x0, x, VIRTUAL, strands, low + 1, None, sign)
                )
            else:
                crossings.append(
                    Crossing(x - x0, x, ACTUAL, strands, low + 1, k, 0)
                )
            order[low:high + 1] = reversed(strands)
        final = tuple(sorted(end_values, key=end_values.get))
        if final != tuple(order):
            self._record(
                "consistent_final_order",
                (
                    "tracked order differs from the order at the path end",
                    {"tracked": order, "computed": list(final)},
                ),
            )
            return
        self._record("consistent_final_order")
        self.graph = MarkedTwoGraph(initial, tuple(crossings), final)


def _tied(values: typing.Dict[int, Fraction]) -> typing.List[int]:
    by_value = collections.defaultdict(list)
    for n, v in values.items():
        by_value[v].append(n)
    for lines in by_value.values():
        if len(lines) > 1:
            return sorted(lines)
    return []


def verify_assumptions(
    arr: Arrangement, frame: GenericFrame
) -> AssumptionReport:
    """Check exactly that ``frame`` is generic for ``arr``.

    ``arr`` is given in the frame's coordinates, i.e. already sheared.
    Failing checks carry a witness (times t as rational strings).
    """
    return _Sweep(arr, frame).run()


def trace_graph(arr: Arrangement, frame: GenericFrame) -> MarkedTwoGraph:
    """Track the strands of ``arr`` (in frame coordinates) along the path.

    Raises:
        StaleFrameError: if the frame fails :func:`verify_assumptions`.
    """
    sweep = _Sweep(arr, frame)
    report = sweep.run()
    if not report.passed:
        failure = report.failures()[0]
        raise StaleFrameError(
            "Frame is not generic: {} ({})".format(
                failure.name, failure.message
            ),
            report,
        )
    logger.debug(
        "traced %d actual and %d virtual crossings",
        len(sweep.graph.actual_crossings),
        len(sweep.graph.virtual_crossings),
    )
    return sweep.graph


def build_path(
    arr: Arrangement, shear=GaussianRational(0), seed: int = 0
) -> GenericFrame:
    """Base point, plateau path and bound R for an arrangement in frame
    coordinates.

    The path starts one unit left of the leftmost singular point, has a
    horizontal plateau of half-width (minimal gap)/3 at the base point and at
    every singular point (at height y₁ of that point), linear connectors in
    between, and runs horizontally past the last strand coincidence of its
    final ray.

    Raises:
        StaleFrameError: if singular points share their x₁ coordinate.
    """
    require_essential(arr)
    points = singular_points(arr)
    stops = sorted((p.coords[0].re, p.coords[0].im) for p in points)
    xs = [x for x, _ in stops]
    if len(set(xs)) != len(xs):
        raise StaleFrameError("Singular points share their x1 coordinate")
    x_p = xs[0] - 1
    stops.insert(0, (x_p, Fraction(0)))
    width = min(b[0] - a[0] for a, b in zip(stops, stops[1:])) / 3

    breaks = [(x_p, Fraction(0)), (x_p + width, Fraction(0))]
    for x, y in stops[1:]:
        breaks.append((x - width, y))
        breaks.append((x + width, y))

    tail_start, tail_height = breaks[-1]
    ray = Segment(tail_start, tail_start, Fraction(0), tail_height)
    forms = [strand_form(line, ray) for line in arr.lines]
    last = tail_start
    for f, g in itertools.combinations(forms, 2):
        if f.re_slope != g.re_slope:
            crossing = (g.re_const - f.re_const) / (f.re_slope - g.re_slope)
            last = max(last, crossing)
    breaks.append((last + 1, tail_height))

    top = max(
        strand_value(line, x, h).im for line in arr.lines for x, h in breaks
    )
    bound = Fraction(math.floor(top) + 1)
    return GenericFrame(
        GaussianRational.coerce(shear),
        (x_p, Fraction(0)),
        tuple((x - x_p, h) for x, h in breaks),
        bound,
        seed,
    )


def _shear_candidates(
    arr: Arrangement, seed: int, config: EngineConfig
) -> typing.Iterator[GaussianRational]:
    rng = np.random.RandomState(seed)
    real = arr.is_real()
    numerators = config.shear_numerator_bound
    denominators = config.shear_denominator_bound

    def draw():
        p = int(rng.randint(-numerators, numerators + 1))
        q = int(rng.randint(1, denominators + 1))
        return Fraction(p, q)

    yield GaussianRational(0)
    while True:
        if real:
            yield GaussianRational(draw())
        else:
            yield GaussianRational(draw(), draw())


def choose_generic_frame(
    arr: Arrangement,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
) -> typing.Tuple[Arrangement, GenericFrame]:
    """Find a shear making the arrangement generic and build its path.

    λ = 0 is tried first, then candidates drawn from a RandomState seeded
    with ``seed`` (real λ for real arrangements, so that the path stays on
    the real axis).

    Returns:
        The sheared arrangement and the frame.  All later computations use
        the sheared arrangement.

    Raises:
        NonEssentialArrangementError: for non-essential arrangements.
        FrameSearchError: if no candidate within the retry cap works.
    """
    if config is None:
        config = EngineConfig()
    require_essential(arr)
    candidates = _shear_candidates(arr, seed, config)
    for attempt in range(config.shear_retry_cap):
        shear = next(candidates)
        sheared = arr.sheared(shear)
        if any(line.is_vertical() for line in sheared.lines):
            continue
        try:
            frame = build_path(sheared, shear, seed)
        except StaleFrameError:
            logger.debug("shear %s: singular points share x1", shear)
            continue
        report = verify_assumptions(sheared, frame)
        if report.passed:
            logger.info(
                "generic frame after %d attempt(s): shear %s",
                attempt + 1,
                shear,
            )
            return sheared, frame
        logger.debug(
            "shear %s rejected: %s",
            shear,
            ", ".join(c.name for c in report.failures()),
        )
    raise FrameSearchError(
        "No generic frame found in {} attempts".format(config.shear_retry_cap)
    )
