import math
import os
import tempfile
import unittest

from QuadraticEquations.datavalidation import DomainError
from QuadraticEquations.wicksenum import table_path
from QuadraticEquations.verification import (
    CLAIM_IDS,
    FAIL,
    PASS,
    SKIPPED,
    VerificationReport,
    X1,
    Y1,
    brute_force_genus,
    even_powers_family,
    powers_family,
    run_paper_suite,
    u2_rotation_representative,
    verify_bef,
    witness_u1,
    witness_u1_representative,
    witness_u2,
    witness_u2_rotation,
)
from QuadraticEquations.wordcore import commutator, format_word, parse_word, variable


class WitnessTestCase(unittest.TestCase):
    def test_u1(self):
        self.assertEqual(format_word(witness_u1(1)), "b1^-1 c1^-1 b1 a1 c1 a1^-1")
        for n in (1, 2, 3):
            u = witness_u1(n)
            self.assertEqual(len(u), 4 * n + 2)
            short = witness_u1_representative(n)
            self.assertEqual(commutator(short[X1], short[Y1]), u)
            self.assertEqual(len(short[X1]) + len(short[Y1]), len(u) - 1)

    def test_u2(self):
        self.assertEqual(format_word(witness_u2(1)), "a1^-1 b1^-1 c1^-1 a1 b1 c1")
        for n in (1, 2, 3):
            self.assertEqual(len(witness_u2(n)), 6 * n)
            for i in range(n + 1):
                short = u2_rotation_representative(n, i)
                self.assertEqual(commutator(short[X1], short[Y1]), witness_u2_rotation(n, i))
                self.assertEqual(3 * (len(short[X1]) + len(short[Y1])), 12 * n)

    def test_witness_errors(self):
        with self.assertRaises(DomainError):
            witness_u1(0)
        with self.assertRaises(DomainError):
            witness_u2_rotation(2, 3)

    def test_families(self):
        u, family = powers_family(2, 3)
        self.assertEqual(u, parse_word("a^-2 b^-3 a^2 b^3"))
        self.assertEqual(len(family), 4)
        for s in family:
            self.assertEqual(commutator(s[X1], s[Y1]), u)
        u, expected = even_powers_family((1, 2))
        self.assertEqual(u, parse_word("a^2 b^4"))
        self.assertEqual(expected[variable("x2")], parse_word("b^2"))


class BoundsTestCase(unittest.TestCase):
    def test_verify_bef(self):
        for u in (parse_word("a^-1 b^-1 a b"), witness_u1(2), witness_u2(1)):
            report = verify_bef(u)
            self.assertTrue(report.part_i)
            self.assertTrue(report.part_ii)
            self.assertEqual(commutator(report.rep[X1], report.rep[Y1]), u)

    def test_verify_bef_errors(self):
        with self.assertRaises(DomainError):
            verify_bef(parse_word("c^-1 a^-1 b^-1 a b c"))
        with self.assertRaises(DomainError):
            verify_bef(parse_word("a^-1 b^-1 a b a^-1 b^-1 a b"))

    def test_brute_force_genus(self):
        ab = parse_word("a^-1 b^-1 a b")
        self.assertEqual(brute_force_genus(ab, True), 1)
        self.assertEqual(brute_force_genus(ab, False), 3)
        self.assertEqual(brute_force_genus(parse_word("a^2"), True), math.inf)
        self.assertEqual(brute_force_genus(parse_word("a^2"), False), 1)
        self.assertEqual(brute_force_genus(parse_word("a^2 b^2"), False), 2)
        self.assertEqual(brute_force_genus(parse_word("a b"), False), math.inf)


class SuiteTestCase(unittest.TestCase):
    def test_report(self):
        report = VerificationReport()
        report.add("one", PASS)
        report.add("two", SKIPPED, "slow")
        self.assertTrue(report.passed)
        report.add("three", FAIL, "broken")
        self.assertFalse(report.passed)
        self.assertEqual(report.counts(), {PASS: 1, FAIL: 1, SKIPPED: 1})
        self.assertEqual(report.as_dict()["claims"][2], {"id": "three", "status": FAIL, "details": "broken"})

    def test_claim_ids(self):
        self.assertEqual(len(CLAIM_IDS), len(set(CLAIM_IDS)))
        self.assertEqual(CLAIM_IDS[-1], "candidate-bound")
        self.assertIn("genus-table", CLAIM_IDS)

    def test_fast_claims(self):
        only = [
            "wicks-o1-count",
            "wicks-n1-count",
            "wicks-n2-count",
            "three-squares-identity",
            "two-squares-display",
            "prefix-membership",
        ]
        with tempfile.TemporaryDirectory() as tmp:
            report = run_paper_suite(skip_slow=True, table_dir=tmp, sizes={"identity_samples": 10}, only=only)
            self.assertTrue(table_path(tmp, False, 2).exists())
        self.assertEqual([c.claim_id for c in report.claims], only)
        self.assertEqual(report.counts()[PASS], len(only))

    def test_tampered_table_is_regenerated_by_the_suite(self):
        with tempfile.TemporaryDirectory() as tmp:
            run_paper_suite(table_dir=tmp, only=["wicks-o1-count"])
            path = table_path(tmp, True, 1)
            path.write_text(path.read_text(encoding="utf-8") + "v1 v2\n", encoding="utf-8")
            report = run_paper_suite(table_dir=tmp, only=["wicks-o1-count"])
            self.assertEqual(report.claims[0].status, PASS)
            self.assertEqual(len(path.read_text(encoding="utf-8").splitlines()), 3)

    def test_oracle_claims(self):
        only = ["wicks-brute-force-oracle", "matcher-brute-force-oracle"]
        report = run_paper_suite(skip_slow=True, sizes={"match_oracle_length_fast": 5}, only=only)
        self.assertEqual([c.status for c in report.claims], [PASS, PASS], report.as_dict())
        self.assertIn("up to length 8", report.claims[0].details)

    def test_randomized_claims_on_small_samples(self):
        only = [
            "bef-bounds-random",
            "reduction-procedure",
            "commutator-never-square",
            "brute-force-genus",
        ]
        sizes = {"bef_samples": 200, "reduction_samples": 200, "commutator_samples": 20, "brute_force_length_fast": 6}
        report = run_paper_suite(skip_slow=True, sizes=sizes, only=only)
        self.assertEqual([c.claim_id for c in report.claims], only)
        self.assertEqual([c.status for c in report.claims], [PASS] * 4, report.as_dict())
        self.assertIn("20 random genus-one words", report.claims[0].details)
        self.assertIn("20 random solutions", report.claims[1].details)

    def test_powers_family_claim_names_the_family(self):
        report = run_paper_suite(only=["power-commutator-m2n3"])
        self.assertEqual(report.claims[0].status, PASS)
        self.assertIn("x1=a^2, y1=a^-1 b^3", report.claims[0].details)
        self.assertIn("subgroup fingerprint", report.claims[0].details)

    def test_slow_claim_is_skipped(self):
        report = run_paper_suite(skip_slow=True, only=["wicks-o2-maximal"])
        self.assertEqual(report.claims[0].status, SKIPPED)
        self.assertTrue(report.passed)

    def test_budget_becomes_skip(self):
        report = run_paper_suite(limits={"max_cached_genus": 0}, only=["genus-table"])
        self.assertEqual(report.claims[0].status, SKIPPED)

    @unittest.skipUnless(os.environ.get("RUN_SLOW_TESTS"), "full reproduction suite")
    def test_full_suite(self):
        with tempfile.TemporaryDirectory() as tmp:
            report = run_paper_suite(table_dir=tmp)
        self.assertEqual([c.claim_id for c in report.claims], list(CLAIM_IDS))
        failed = [c for c in report.claims if c.status == FAIL]
        self.assertEqual(failed, [])


if __name__ == "__main__":
    unittest.main(verbosity=2)
