#!/usr/bin/env python3
"""Demo on how to compute a presentation and twisted invariants.

Loads a bundled arrangement, prints the words carried by every strand of the
marked 2-graph, the resulting presentation and Δ₀, Δ₁ for the trivial and a
cyclotomic twist.
"""
import argparse

from arrangealex import corpus
from arrangealex.fox import TwistSpec, twisted_invariants
from arrangealex.presentation import arvola, strand_history


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "case",
        nargs="?",
        default="four_lines_triple_point",
        choices=corpus.case_names(),
        help="Name of the corpus case.  Default: %(default)s.",
    )
    args = parser.parse_args()

    arr = corpus.load_case(args.case).arrangement
    result = arvola(arr)

    print("Strand words")
    for line in arr.line_numbers:
        words = [w.pretty() for w in strand_history(result.graph, line)]
        print("  {}: {}".format(line, ", ".join(words)))
    print()
    print(result.presentation.pretty())
    print()

    m = len(arr)
    twists = [
        ("trivial", TwistSpec.trivial(m)),
        ("zeta_5", TwistSpec.cyclotomic([1] * m, range(1, m + 1), 5)),
    ]
    for name, spec in twists:
        invariants = twisted_invariants(result.presentation, spec)
        print("{}:".format(name))
        print("  Delta0 = {}".format(invariants.delta0.to_text()))
        print("  Delta1 = {}".format(invariants.delta1.to_text()))


if __name__ == "__main__":
    main()
