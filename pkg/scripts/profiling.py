#!/usr/bin/env python3
"""Profile the check battery on every corpus case."""
import cProfile
import pstats

from arrangealex import corpus, verify


if __name__ == "__main__":

    def get_filename(case_name):
        return "stats_" + case_name

    for case_name in corpus.case_names():

        def verify_single_case():
            verify.verify_case(case_name)

        cProfile.run("verify_single_case()", filename=get_filename(case_name))

    cProfile.run("verify.verify_falk()", filename=get_filename("falk"))

    for case_name in corpus.case_names() + ["falk"]:
        filename = get_filename(case_name)
        p = pstats.Stats(filename)
        print(filename, "==============================================")
        p.strip_dirs().sort_stats("tottime").print_stats(3)
