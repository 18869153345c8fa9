"""Free group words, Arvola word propagation and the presentation of the
fundamental group of an arrangement complement.

Notation: ``a^b`` is the conjugate b⁻¹·a·b.  Generators are numbered from 1
and follow the line numbers; in pretty output generator ``j`` is the j-th
lower case letter.
"""
import logging
import re
import string
import typing

from .arrangement import Arrangement
from .config import EngineConfig
from .errors import ParseError
from .marked_graph import (
    Crossing,
    MarkedTwoGraph,
    choose_generic_frame,
    trace_graph,
)

logger = logging.getLogger(__name__)

#: A letter (generator number, exponent ±1).
Letter = typing.Tuple[int, int]


class FreeWord:
    """Freely reduced word in the generators a₁, a₂, …"""

    __slots__ = ("letters",)

    def __init__(self, letters: typing.Iterable[Letter] = ()):
        reduced = []
        for generator, exponent in letters:
            if generator < 1 or exponent not in (1, -1):
                raise ValueError(
                    "Invalid letter ({}, {})".format(generator, exponent)
                )
            if reduced and reduced[-1] == (generator, -exponent):
                reduced.pop()
            else:
                reduced.append((generator, exponent))
        object.__setattr__(self, "letters", tuple(reduced))

    def __setattr__(self, name, value):
        raise AttributeError("FreeWord is immutable")

    @classmethod
    def generator(cls, number: int, exponent: int = 1) -> "FreeWord":
        return cls([(number, exponent)])

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls()

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, exponent: int) -> "FreeWord":
        base = self if exponent >= 0 else self.inverse()
        return FreeWord(base.letters * abs(exponent))

    def conjugate(self, by: "FreeWord") -> "FreeWord":
        """self^by = by⁻¹ · self · by"""
        return by.inverse() * self * by

    def abelianization(self, generator_count: int) -> typing.Tuple[int, ...]:
        """Exponent sum of every generator."""
        sums = [0] * generator_count
        for generator, exponent in self.letters:
            sums[generator - 1] += exponent
        return tuple(sums)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def as_conjugate(
        self,
    ) -> typing.Optional[typing.Tuple["FreeWord", "FreeWord"]]:
        """Split a word of the form w⁻¹·g·w into (g, w), else None."""
        n = len(self.letters)
        if n % 2 == 0:
            return None
        k = n // 2
        head = FreeWord(self.letters[:k])
        tail = FreeWord(self.letters[k + 1:])
        if head != tail.inverse():
            return None
        return FreeWord(self.letters[k:k + 1]), tail

    def to_text(self) -> str:
        """Space separated signed letters like "a3^-1 a1 a3", "1" if empty."""
        if not self.letters:
            return "1"
        return " ".join(
            "a{}".format(g) if e == 1 else "a{}^-1".format(g)
            for g, e in self.letters
        )

    __str__ = to_text

    def __repr__(self):
        return "FreeWord({!r})".format(self.to_text())

    def pretty(self) -> str:
        """Compact rendering with letter names, e.g. "c^{bd^-1}"."""
        split = self.as_conjugate()
        if split is not None and not split[1].is_identity():
            base, by = split
            return "{}^{{{}}}".format(_letters(base), _letters(by))
        return _letters(self)

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Parse the :meth:`to_text` form.

        Raises:
            ParseError: on malformed input.
        """
        text = text.strip()
        if text in ("", "1"):
            return cls()
        letters = []
        for token in text.split():
            match = re.fullmatch(r"a([0-9]+)(\^(-?1))?", token)
            if not match or int(match.group(1)) < 1:
                raise ParseError("Invalid word letter '{}'".format(token))
            letters.append(
                (int(match.group(1)), int(match.group(3) or 1))
            )
        return cls(letters)


def generator_name(number: int) -> str:
    if number <= len(string.ascii_lowercase):
        return string.ascii_lowercase[number - 1]
    return "a{}".format(number)


def _letters(word: FreeWord) -> str:
    if word.is_identity():
        return "1"
    return "".join(
        generator_name(g) + ("" if e == 1 else "^-1") for g, e in word.letters
    )


def product(words: typing.Iterable[FreeWord]) -> FreeWord:
    letters = []
    for word in words:
        letters.extend(word.letters)
    return FreeWord(letters)


class WordSnapshot(typing.NamedTuple):
    """Strand words right after a crossing (or at the start)."""

    #: The crossing just passed, None for the initial state.
    crossing: typing.Optional[Crossing]
    #: Line numbers bottom-up.
    order: typing.Tuple[int, ...]
    #: Word of every strand, indexed by line number.
    words: typing.Dict[int, FreeWord]


def apply_crossing(
    crossing: Crossing, words: typing.Dict[int, FreeWord]
) -> typing.Dict[int, FreeWord]:
    """Strand words after ``crossing`` given the words before it.

    Virtual crossing of a lower strand with word a and an upper strand with
    word b: positive gives (b, a^b) bottom-up afterwards, negative gives
    (b^{a⁻¹}, a).  Actual crossing with entering words w₁, …, w_r bottom-up:
    the middle words leave as w_j^{w_{j−1}⋯w₁} and the order of the strands
    is reversed.  The bottom and top words leave unchanged instead of as
    their full conjugates, which agree with them modulo the relations of
    this crossing, so two crossing lines a, b leave as (b, a), not
    (b, a^b).
    """
    words = dict(words)
    strands = crossing.strands
    if crossing.is_actual:
        entering = [words[n] for n in strands]
        for j in range(1, len(strands) - 1):
            conjugator = product(reversed(entering[:j]))
            words[strands[j]] = entering[j].conjugate(conjugator)
    else:
        lower, upper = strands
        a, b = words[lower], words[upper]
        if crossing.sign > 0:
            words[lower] = a.conjugate(b)
        else:
            words[upper] = b.conjugate(a.inverse())
    return words


def propagate_words(graph: MarkedTwoGraph) -> typing.List[WordSnapshot]:
    """Arvola words of all strands along the marked 2-graph.

    Returns one snapshot for the start and one after each crossing.
    """
    words = {n: FreeWord.generator(n) for n in graph.initial_order}
    order = list(graph.initial_order)
    snapshots = [WordSnapshot(None, tuple(order), dict(words))]
    for crossing in graph.crossings:
        words = apply_crossing(crossing, words)
        low = crossing.position - 1
        high = low + len(crossing.strands)
        order[low:high] = reversed(order[low:high])
        snapshots.append(WordSnapshot(crossing, tuple(order), words))
    return snapshots


def strand_history(graph: MarkedTwoGraph, line: int) -> typing.List[FreeWord]:
    """Distinct successive words carried by the strand of one line."""
    history = []
    for snapshot in propagate_words(graph):
        word = snapshot.words[line]
        if not history or history[-1] != word:
            history.append(word)
    return history


class Relation(typing.NamedTuple):
    """The commutator relation [β, b] of one singular point."""

    #: Index of the singular point in the presentation (1-based).
    point: int
    beta: FreeWord
    local: FreeWord

    def relator(self) -> FreeWord:
        """β·b·β⁻¹·b⁻¹"""
        return (
            self.beta
            * self.local
            * self.beta.inverse()
            * self.local.inverse()
        )

    def pretty(self) -> str:
        return "[{}, {}]".format(self.beta.pretty(), self.local.pretty())

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "beta": self.beta.to_text(),
            "local": self.local.to_text(),
            "pretty": self.pretty(),
        }


class Presentation(typing.NamedTuple):
    """⟨a₁, …, a_m | [β_k, b_j(P_k)]⟩ grouped by singular point."""

    generator_count: int
    #: Incident line numbers (sorted) of every singular point, in sweep order.
    points: typing.Tuple[typing.Tuple[int, ...], ...]
    #: β_k = b₁(P_k)⋯b_{d_k}(P_k) per point.
    beta: typing.Tuple[FreeWord, ...]
    #: Entering words b₁(P_k), …, b_{d_k}(P_k) bottom-up per point.
    local_words: typing.Tuple[typing.Tuple[FreeWord, ...], ...]
    #: Line numbers of the entering strands bottom-up per point.
    local_lines: typing.Tuple[typing.Tuple[int, ...], ...]
    relations: typing.Tuple[Relation, ...]

    def relators(self) -> typing.List[FreeWord]:
        return [relation.relator() for relation in self.relations]

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    def generators(self) -> typing.List[FreeWord]:
        return [
            FreeWord.generator(j) for j in range(1, self.generator_count + 1)
        ]

    def pretty(self) -> str:
        names = ", ".join(
            generator_name(j) for j in range(1, self.generator_count + 1)
        )
        relations = ", ".join(r.pretty() for r in self.relations)
        return "<{} | {}>".format(names, relations)

    def to_json(self) -> dict:
        return {
            "generators": [
                "a{}".format(j) for j in range(1, self.generator_count + 1)
            ],
            "points": [
                {
                    "incident": list(incident),
                    "beta": beta.to_text(),
                    "beta_pretty": beta.pretty(),
                    "local_words": [w.to_text() for w in local],
                    "local_lines": list(lines),
                }
                for incident, beta, local, lines in zip(
                    self.points, self.beta, self.local_words, self.local_lines
                )
            ],
            "relations": [r.to_json() for r in self.relations],
            "pretty": self.pretty(),
        }


def presentation_from_graph(
    graph: MarkedTwoGraph, generator_count: typing.Optional[int] = None
) -> Presentation:
    """Relations [β_k, b_j(P_k)], j = 1..d_k − 1, from the traced graph."""
    if generator_count is None:
        generator_count = len(graph.initial_order)
    points, betas, locals_, lines_, relations = [], [], [], [], []
    before = propagate_words(graph)
    for snapshot, crossing in zip(before, graph.crossings):
        if not crossing.is_actual:
            continue
        index = len(points) + 1
        local = tuple(snapshot.words[n] for n in crossing.strands)
        beta = product(local)
        points.append(tuple(sorted(crossing.strands)))
        betas.append(beta)
        locals_.append(local)
        lines_.append(tuple(crossing.strands))
        relations.extend(Relation(index, beta, b) for b in local[:-1])
    logger.debug(
        "presentation with %d generators and %d relations",
        generator_count,
        len(relations),
    )
    return Presentation(
        generator_count,
        tuple(points),
        tuple(betas),
        tuple(locals_),
        tuple(lines_),
        tuple(relations),
    )


class ArvolaResult(typing.NamedTuple):
    """Frame, graph and presentation computed for one arrangement."""

    sheared: Arrangement
    frame: typing.Any
    graph: MarkedTwoGraph
    presentation: Presentation


def arvola(
    arr: Arrangement,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
) -> ArvolaResult:
    """Choose a generic frame, trace the graph and build the presentation."""
    sheared, frame = choose_generic_frame(arr, seed, config)
    graph = trace_graph(sheared, frame)
    return ArvolaResult(
        sheared, frame, graph, presentation_from_graph(graph, len(arr))
    )


def presentation(
    arr: Arrangement,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
) -> Presentation:
    """Presentation of π₁ of the complement of ``arr``.

    Raises:
        NonEssentialArrangementError: for non-essential arrangements.
    """
    return arvola(arr, seed, config).presentation


def beta_words(
    arr: Arrangement,
    seed: int = 0,
    config: typing.Optional[EngineConfig] = None,
) -> typing.List[FreeWord]:
    """β_k of every singular point, in sweep order."""
    return list(presentation(arr, seed, config).beta)


def product_presentation(s: int) -> Presentation:
    """⟨b₁, …, b_s, a | [b_j, a]⟩, the group of (s-punctured plane) × S¹.

    Generators b_j are a₁..a_s and a is a_{s+1}.  Each [b_j, a] is written
    as the double point relation [b_j·a, b_j].
    """
    a = FreeWord.generator(s + 1)
    bs = [FreeWord.generator(j) for j in range(1, s + 1)]
    return Presentation(
        s + 1,
        tuple((j, s + 1) for j in range(1, s + 1)),
        tuple(b * a for b in bs),
        tuple((b, a) for b in bs),
        tuple((j, s + 1) for j in range(1, s + 1)),
        tuple(Relation(j, b * a, b) for j, b in enumerate(bs, start=1)),
    )
