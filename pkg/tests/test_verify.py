#!/usr/bin/env python3
import unittest

from arrangealex import corpus, verify
from arrangealex.fields import FieldConfig
from arrangealex.fox import TwistSpec
from arrangealex.presentation import presentation


class TestVerify(unittest.TestCase):
    """Run the check battery on the corpus."""

    def test_four_lines_triple_point(self):
        report = verify.verify_case("four_lines_triple_point")
        self.assertTrue(report.passed, report.to_json())
        names = [check.name for check in report.checks]
        self.assertEqual(names[0], "assumptions")
        for expected in [
            "trivial:torsion_ratio",
            "trivial:delta1_divides_divisor",
            "trivial:delta1_divides_refined",
            "trivial:wstar_divides_boundary",
            "zeta5:delta1_root_containment",
            "diagonal_zeta3:h2_free_rank",
        ]:
            self.assertIn(expected, names)
        # no boundary ratio for the 2-dimensional twist
        self.assertNotIn("diagonal_zeta3:wstar_divides_boundary", names)
        self.assertTrue(all(c.witness is None for c in report.checks))

    def test_invalid_twist(self):
        arr = corpus.load_case("four_lines_triple_point").arrangement
        one, zero = FieldConfig().one(), FieldConfig().zero()
        identity = ((one, zero), (zero, one))
        upper = ((one, one), (zero, one))
        lower = ((one, zero), (one, one))
        spec = TwistSpec(
            (1, 1, 1, 1), FieldConfig(), 2, (upper, identity, identity, lower)
        )
        checks = verify.check_twist(arr, presentation(arr), "bad", spec)
        self.assertEqual(len(checks), 1)
        self.assertEqual(checks[0].name, "bad:representation")
        self.assertFalse(checks[0].passed)
        self.assertEqual(checks[0].witness, "[ad, a]")

    def test_twist_errors_are_reported(self):
        arr = corpus.load_case("two_crossing_lines").arrangement
        report = verify.verify_arrangement(
            "input", arr, [("short", TwistSpec.trivial(3))]
        )
        self.assertFalse(report.passed)
        self.assertEqual(report.checks[-1].name, "short:error")

    def test_falk(self):
        report = verify.verify_falk()
        self.assertTrue(report.passed, report.to_json())

    def test_corpus_in_parallel(self):
        """The pooled corpus run passes and matches the serial run of a
        single case."""
        reports = verify.verify_corpus(jobs=2)
        names = [report.name for report in reports]
        self.assertEqual(names, sorted(corpus.case_names() + ["falk"]))
        for report in reports:
            self.assertTrue(report.passed, report.to_json())
        by_name = {report.name: report for report in reports}
        self.assertEqual(
            by_name["pencil_of_four"], verify.verify_case("pencil_of_four")
        )


if __name__ == "__main__":
    unittest.main()
