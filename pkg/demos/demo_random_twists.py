#!/usr/bin/env python3
"""Demo on how to check the closed formulas against random twists.

Samples 1-dimensional cyclotomic twists with positive weights and compares
Δ₁ of the complement with the divisor bound and the root bound at infinity.
"""
import argparse

from arrangealex import corpus
from arrangealex.closed_forms import closed_form_report
from arrangealex.fox import twisted_invariants
from arrangealex.laurent import divides
from arrangealex.presentation import presentation
from arrangealex.roots import root_containment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--case", default="three_generic_lines")
    parser.add_argument("--conductor", type=int, default=7)
    parser.add_argument("--samples", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    corpus.seed(args.seed)
    arr = corpus.load_case(args.case).arrangement
    pres = presentation(arr)

    for _ in range(args.samples):
        spec = corpus.sample_cyclotomic_twist(len(arr), args.conductor)
        invariants = twisted_invariants(pres, spec)
        report = closed_form_report(arr, spec, pres=pres)
        print("epsilon = {}".format(list(spec.epsilon)))
        print("  Delta1:  {}".format(invariants.delta1.to_text()))
        print("  divisor: {}".format(report.divisor_bound.pretty()))
        print(
            "  divides: {}, roots at infinity: {}".format(
                divides(invariants.delta1, report.divisor_bound.expanded()),
                root_containment(
                    invariants.delta1, report.infinity_bound.expanded()
                ),
            )
        )


if __name__ == "__main__":
    main()
