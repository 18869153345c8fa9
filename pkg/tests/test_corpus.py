#!/usr/bin/env python3
import pathlib
import unittest

from arrangealex import corpus
from arrangealex.arrangement import Arrangement
from arrangealex.errors import InputError, ParseError
from arrangealex.fox import validate_representation
from arrangealex.presentation import presentation


class TestCorpus(unittest.TestCase):
    """Test the bundled regression corpus."""

    def test_case_names(self):
        self.assertEqual(
            corpus.case_names(),
            [
                "four_lines_triple_point",
                "falk_a1",
                "falk_a2",
                "two_crossing_lines",
                "three_generic_lines",
                "pencil_of_four",
                "parallel_pair_transversal",
            ],
        )
        cases = corpus.corpus()
        self.assertEqual([c.name for c in cases], corpus.case_names())
        for case in cases:
            self.assertEqual(case.arrangement.name, case.name)
            self.assertEqual(case.seed, 0)
            self.assertTrue(case.description)

    def test_unknown_case(self):
        with self.assertRaises(InputError):
            corpus.load_case("falk_a3")

    def test_load_arrangement(self):
        by_name = corpus.load_arrangement("pencil_of_four")
        path = corpus.get_data_dir() / "arrangements" / "pencil_of_four.json"
        self.assertTrue(path.is_file())
        by_path = corpus.load_arrangement(str(path))
        self.assertEqual(by_name, by_path)
        self.assertIsInstance(by_path, Arrangement)
        with self.assertRaises(ParseError):
            corpus.load_arrangement("no/such/file.json")
        with self.assertRaises(InputError):
            corpus.load_arrangement("no_such_case")

    def test_data_dir(self):
        data_dir = corpus.get_data_dir()
        self.assertIsInstance(data_dir, pathlib.Path)
        self.assertTrue((data_dir / "corpus.yml").is_file())
        self.assertTrue((data_dir / "engine.yml").is_file())

    def test_standard_twists_are_representations(self):
        for case in corpus.corpus():
            pres = presentation(case.arrangement, case.seed)
            twists = corpus.standard_twists(case.arrangement)
            self.assertEqual(
                [name for name, _ in twists],
                ["trivial", "zeta5", "diagonal_zeta3"],
            )
            self.assertEqual([spec.dim for _, spec in twists], [1, 1, 2])
            for name, spec in twists:
                self.assertEqual(spec.generator_count, len(case.arrangement))
                report = validate_representation(pres, spec)
                self.assertTrue(report.passed, (case.name, name))

    def test_sample_cyclotomic_twist(self):
        corpus.seed(7)
        first = corpus.sample_cyclotomic_twist(4, 5)
        corpus.seed(7)
        second = corpus.sample_cyclotomic_twist(4, 5)
        self.assertEqual(first, second)
        self.assertEqual(first.field.conductor, 5)
        self.assertTrue(all(1 <= e <= 3 for e in first.epsilon))
        first.check()


if __name__ == "__main__":
    unittest.main()
