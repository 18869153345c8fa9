"""Exact root bookkeeping for products of binomials ζ_N^c·t^e − 1, the
parity certificate separating the two Falk arrangements, root containment
and jump loci.

A root of unity exp(2πi·k/L) is stored as the residue k modulo L.
"""
import collections
import itertools
import logging
import math
import typing

import numpy as np

from .arrangement import Arrangement
from .closed_forms import Loop, boundary_loops
from .config import EngineConfig
from .errors import SearchExhaustedError
from .fields import CyclotomicElement, FieldConfig, euler_phi
from .laurent import CanonicalPoly, LaurentPoly, divides, normalize, radical

logger = logging.getLogger(__name__)


def _lcm(*values: int) -> int:
    return int(np.lcm.reduce([int(v) for v in values]))


def root_text(k: int, modulus: int) -> str:
    """Text form zeta_L^k in lowest terms, zeta_1^0 being the root 1."""
    g = math.gcd(k, modulus)
    return "zeta_{}^{}".format(modulus // g, (k // g) % (modulus // g))


class BinomialFactor(typing.NamedTuple):
    """(ζ_N^c·t^e − 1)^mult"""

    c: int
    e: int
    mult: int = 1

    @classmethod
    def normalized(cls, c: int, e: int, mult: int = 1) -> "BinomialFactor":
        """Factor with e > 0 and the same nonzero roots as ζ_N^c·t^e − 1.

        Raises:
            ValueError: for e = 0.
        """
        if e == 0:
            raise ValueError("Binomial factor with t-exponent 0")
        if e < 0:
            c, e = -c, -e
        return cls(c, e, mult)

    def to_poly(self, conductor: int) -> CanonicalPoly:
        field = FieldConfig(conductor)
        p = LaurentPoly.monomial(field, field.zeta(self.c), self.e) - 1
        return normalize(p ** self.mult)

    def to_json(self) -> dict:
        return {"c": self.c, "e": self.e, "mult": self.mult}


class RootMultiset(typing.NamedTuple):
    """Roots exp(2πi·k/L) with multiplicities."""

    modulus: int
    counts: typing.Dict[int, int]

    def lift(self, modulus: int) -> "RootMultiset":
        """The same multiset over a multiple of the modulus."""
        if modulus % self.modulus:
            raise ValueError(
                "{} is not a multiple of {}".format(modulus, self.modulus)
            )
        step = modulus // self.modulus
        return RootMultiset(
            modulus, {k * step: n for k, n in self.counts.items()}
        )

    def __add__(self, other: "RootMultiset") -> "RootMultiset":
        modulus = _lcm(self.modulus, other.modulus)
        counts = collections.Counter(self.lift(modulus).counts)
        counts.update(other.lift(modulus).counts)
        return RootMultiset(modulus, dict(counts))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def isdisjoint(self, other: "RootMultiset") -> bool:
        modulus = _lcm(self.modulus, other.modulus)
        return self.lift(modulus).counts.keys().isdisjoint(
            other.lift(modulus).counts.keys()
        )

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "roots": [
                {"root": root_text(k, self.modulus), "multiplicity": n}
                for k, n in sorted(self.counts.items())
            ],
        }


def roots_of_binomials(
    factors: typing.Sequence[BinomialFactor], conductor: int
) -> RootMultiset:
    """Roots of ∏ (ζ_N^c·t^e − 1)^mult with N = ``conductor``.

    The roots of one factor are the k mod N·e with k ≡ −c (mod N).
    """
    modulus = conductor * _lcm(1, *(f.e for f in factors))
    counts = collections.Counter()
    for f in factors:
        local = conductor * f.e
        step = modulus // local
        for k in range((-f.c) % conductor, local, conductor):
            counts[k * step] += f.mult
    return RootMultiset(modulus, dict(counts))


class ParityProfile(typing.NamedTuple):
    all_even: bool
    #: Roots of odd multiplicity, as ("zeta_L^k", multiplicity).
    odd_multiplicities: typing.List[typing.Tuple[str, int]]
    #: Number of distinct roots per multiplicity.
    histogram: typing.Dict[int, int]

    def to_json(self) -> dict:
        return {
            "all_even": self.all_even,
            "odd_multiplicities": [list(x) for x in self.odd_multiplicities],
            "histogram": {
                str(k): v for k, v in sorted(self.histogram.items())
            },
        }


def parity_profile(rm: RootMultiset) -> ParityProfile:
    odd = [
        (root_text(k, rm.modulus), n)
        for k, n in sorted(rm.counts.items())
        if n % 2
    ]
    histogram = collections.Counter(rm.counts.values())
    return ParityProfile(not odd, odd, dict(histogram))


def binomial_factors(
    loops: typing.Sequence[typing.Tuple[Loop, int]],
    epsilon: typing.Sequence[int],
    exponents: typing.Sequence[int],
) -> typing.List[BinomialFactor]:
    """Binomial factors of loops under the 1-dimensional twist
    ρ(a_j) = ζ_N^{c_j}, ε(a_j) = ε_j.  Zero exponents are dropped.

    Raises:
        ValueError: if some loop with nonzero exponent has ε = 0.
    """
    factors = []
    for loop, mult in loops:
        if mult == 0:
            continue
        c = sum(v * x for v, x in zip(loop.vector, exponents))
        e = sum(v * x for v, x in zip(loop.vector, epsilon))
        factors.append(BinomialFactor.normalized(c, e, mult))
    return factors


def shares_root(
    first: BinomialFactor, second: BinomialFactor, conductor: int
) -> bool:
    """True iff ζ_N^c·t^e − 1 and ζ_N^c'·t^e' − 1 have a common root.

    t^e = α and t^e' = β have a common solution iff α^{e'/g} = β^{e/g}
    with g = gcd(e, e').
    """
    g = math.gcd(first.e, second.e)
    return (second.e // g * first.c - first.e // g * second.c) % conductor == 0


def pairwise_disjoint(
    factors: typing.Sequence[BinomialFactor], conductor: int
) -> bool:
    """True iff distinct factors have no common root."""
    return not any(
        shares_root(a, b, conductor)
        for a, b in itertools.combinations(factors, 2)
    )


def _first_disjoint(
    decided: typing.List[typing.List[typing.Tuple[Loop, int]]],
    epsilon: typing.Sequence[int],
    conductor: int,
) -> typing.Tuple[typing.Optional[typing.Tuple[int, ...]], int]:
    """Lexicographically first exponent tuple whose loop factors are
    pairwise root-disjoint, and the number of partial tuples visited.

    ``decided[j]`` holds the loops whose last nonzero coordinate is j; a
    prefix is abandoned as soon as the factors it determines share a root.
    """
    prefix = []
    visited = 0

    def extend(chosen):
        nonlocal visited
        depth = len(prefix)
        if depth == len(decided):
            return True
        for c in range(conductor):
            visited += 1
            prefix.append(c)
            factors = chosen + binomial_factors(
                decided[depth], epsilon, prefix
            )
            if pairwise_disjoint(factors, conductor) and extend(factors):
                return True
            prefix.pop()
        return False

    if extend([]):
        return tuple(prefix), visited
    return None, visited


class FalkCertificate(typing.NamedTuple):
    epsilon: typing.Tuple[int, ...]
    conductor: int
    rho_exponents: typing.Tuple[int, ...]
    first: ParityProfile
    second: ParityProfile
    #: Loop factors of the second arrangement, pairwise root-disjoint.
    factors: typing.List[BinomialFactor]
    candidates_scanned: int

    @property
    def verdict(self) -> str:
        if self.first.all_even and not self.second.all_even:
            return "distinguished"
        return "undecided"

    def to_json(self) -> dict:
        return {
            "epsilon": list(self.epsilon),
            "conductor": self.conductor,
            "rho_exponents": list(self.rho_exponents),
            "A1": self.first.to_json(),
            "A2": self.second.to_json(),
            "A2_factors": [f.to_json() for f in self.factors],
            "pairwise_disjoint": True,
            "candidates_scanned": self.candidates_scanned,
            "verdict": self.verdict,
        }


def falk_distinguish(
    first: Arrangement,
    second: Arrangement,
    config: typing.Optional[EngineConfig] = None,
) -> FalkCertificate:
    """Search a 1-dimensional cyclotomic twist separating the boundary
    manifolds of ``first`` (all squares) and ``second``.

    ε is fixed from the configuration; conductors N = 2, 3, … and exponent
    tuples are scanned in lexicographic order, and the first twist under
    which the loop factors of ``second`` have pairwise disjoint roots wins.

    Raises:
        SearchExhaustedError: if no twist is found below the configured
            conductor bound.
    """
    if config is None:
        config = EngineConfig()
    epsilon = tuple(config.falk_epsilon)
    loops_first = boundary_loops(first)
    loops_second = boundary_loops(second)
    decided = [[] for _ in range(len(second))]
    for loop, mult in loops_second:
        if mult == 0:
            continue
        if sum(v * x for v, x in zip(loop.vector, epsilon)) == 0:
            raise SearchExhaustedError(
                "Loop {} has weight 0 under epsilon {}".format(
                    loop.label, list(epsilon)
                )
            )
        support = [j for j, v in enumerate(loop.vector) if v]
        decided[support[-1]].append((loop, mult))
    scanned = 0
    for conductor in range(2, config.falk_max_conductor + 1):
        exponents, visited = _first_disjoint(decided, epsilon, conductor)
        scanned += visited
        if exponents is None:
            logger.debug("no disjoint twist with N=%d", conductor)
            continue
        factors = binomial_factors(loops_second, epsilon, exponents)
        profile_second = parity_profile(roots_of_binomials(factors, conductor))
        profile_first = parity_profile(
            roots_of_binomials(
                binomial_factors(loops_first, epsilon, exponents), conductor
            )
        )
        logger.info(
            "certificate after %d candidates: N=%d, c=%s",
            scanned,
            conductor,
            exponents,
        )
        return FalkCertificate(
            epsilon,
            conductor,
            exponents,
            profile_first,
            profile_second,
            factors,
            scanned,
        )
    raise SearchExhaustedError(
        "No separating twist with conductor <= {}".format(
            config.falk_max_conductor
        )
    )


def root_containment(p: LaurentPoly, bound: LaurentPoly) -> bool:
    """True iff every root of p is a root of ``bound``.

    Raises:
        ValueError: if ``bound`` is zero.
    """
    if bound.is_zero():
        raise ValueError("Root containment in the zero polynomial")
    if p.is_zero():
        return False
    return divides(radical(p), radical(bound))


def _order_modulo(p: CanonicalPoly, limit: int) -> typing.Optional[int]:
    """Smallest L ≤ limit with p | t^L − 1, for canonical p."""
    ring = p.poly.ring
    t = ring.gens[0]
    # t^k mod p, starting from k = 0
    x = ring.one
    for k in range(1, limit + 1):
        x = (x * t).rem(p.poly)
        if x == ring.one:
            return k
    return None


class Locus(typing.NamedTuple):
    name: str
    #: Radical polynomial whose roots form the locus.
    radical: CanonicalPoly
    #: Roots as "zeta_L^k", None when not listed.
    roots: typing.Optional[typing.List[str]]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "radical": self.radical.to_text(),
            "roots": self.roots,
        }


def list_roots(
    p: CanonicalPoly, max_degree: int
) -> typing.Optional[typing.List[str]]:
    """Roots of p as roots of unity, or None if p does not divide t^L − 1
    for an L with [ℚ(ζ_lcm(N, L)) : ℚ] ≤ max_degree."""
    p = radical(p)
    if p.is_unit():
        return []
    n = p.field.conductor
    order = _order_modulo(p, 2 * max_degree * max_degree)
    if order is None:
        return None
    big = _lcm(n, order)
    if euler_phi(big) > max_degree:
        return None
    field = FieldConfig(big)
    lifted = LaurentPoly(field, p.coeffs, p.valuation)
    step = big // order
    return [
        root_text(k, order)
        for k in range(order)
        if lifted.evaluate(CyclotomicElement.zeta(big, k * step)).is_zero()
    ]


class JumpLociReport(typing.NamedTuple):
    #: dim(𝕍)·|χ(M)| + 1
    threshold: int
    loci: typing.List[Locus]

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "loci": [locus.to_json() for locus in self.loci],
        }


def jump_loci_report(
    delta0: CanonicalPoly,
    delta1: CanonicalPoly,
    dim: int,
    chi: int,
    config: typing.Optional[EngineConfig] = None,
) -> JumpLociReport:
    """Jump loci restricted to the image of ε*:

    V_0^1 = roots of Δ₀, V_1^1 = roots of Δ₀·Δ₁ and V_2^{d|χ|+1} = roots
    of Δ₁.
    """
    if config is None:
        config = EngineConfig()
    threshold = dim * abs(chi) + 1
    loci = []
    for name, poly in (
        ("V0^1", delta0),
        ("V1^1", delta0 * delta1),
        ("V2^{}".format(threshold), delta1),
    ):
        rad = radical(poly)
        loci.append(
            Locus(name, rad, list_roots(rad, config.root_listing_max_degree))
        )
    return JumpLociReport(threshold, loci)
