import io
import json
import os
import tempfile
import unittest

from QuadraticEquations.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, build_parser, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


class CliTestCase(unittest.TestCase):
    def test_genus_text(self):
        code, text = run("genus", "a^-1 b^-1 a b")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("genus+(a^-1 b^-1 a b) = 1", text)
        self.assertIn("genus-(a^-1 b^-1 a b) = 3", text)

    def test_genus_json(self):
        code, text = run("--format", "json", "genus", "a b", "--orientable")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual(data["equation"], "a b")
        self.assertIsNone(data["genus"]["orientable"])
        self.assertNotIn("nonorientable", data["genus"])

    def test_solve_json(self):
        code, text = run("--format", "json", "solve", "commutators", "a^-2 b^-3 a^2 b^3")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual(data["genus"], 1)
        self.assertEqual(len(data["classes"]), 4)
        self.assertEqual(data["certificates"], {})

    def test_solve_squares(self):
        code, text = run("--format", "json", "solve", "squares", "a^-1 b^-1 a b")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual(data["genus"], 3)
        self.assertEqual(data["certificates"], {"complete": False})
        self.assertEqual(sorted(data["classes"][0]["assignments"]), ["x1", "x2", "x3"])

    def test_exit_codes(self):
        self.assertEqual(run("solve", "commutators", "a")[0], EXIT_FAIL)
        self.assertEqual(run("solve", "squares", "a b")[0], EXIT_FAIL)
        self.assertEqual(run("genus", "a^")[0], EXIT_USAGE)
        self.assertEqual(run("solve", "commutators", "")[0], EXIT_USAGE)
        self.assertEqual(run()[0], EXIT_USAGE)
        self.assertEqual(run("witness", "u3", "1")[0], EXIT_USAGE)

    def test_wicks(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = run("--table-dir", tmp, "--format", "json", "wicks", "orientable", "1")
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(
                json.loads(text)["forms"],
                ["v1 v2 v1^-1 v2^-1", "v1 v2 v3 v1^-1 v2^-1 v3^-1"],
            )
            self.assertTrue(os.listdir(tmp))
            code, text = run("--table-dir", tmp, "wicks", "nonorientable", "1")
            self.assertEqual(text.splitlines(), ["nonorientable genus 1: 1 forms", "v1^2"])

    def test_reduce_solution(self):
        code, text = run("--format", "json", "reduce-solution", "x y x y", "x=a", "y=b")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual(data["form"], "x^2")
        self.assertEqual(data["solution"]["x"], "a b")
        self.assertEqual(data["moves"], ["redundancy"])
        self.assertEqual(run("reduce-solution", "x y x y", "x:a")[0], EXIT_USAGE)

    def test_reduce_solution_drops_trivial_images(self):
        code, text = run("--format", "json", "reduce-solution", "x^-1 y^-1 z^-1 x y z", "x=a", "y=b", "z=1")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertEqual(data["form"], "x^-1 y^-1 x y")
        self.assertEqual(data["moves"], ["trivial_image_whitehead"])

    def test_witness(self):
        code, text = run("witness", "u1", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(text.strip(), "b1^-1 c1^-1 b1 a1 c1 a1^-1")
        code, text = run("--format", "json", "witness", "u2", "2")
        self.assertEqual(json.loads(text)["length"], 12)

    def test_parser(self):
        args = build_parser().parse_args(["-vv", "genus", "a^2"])
        self.assertEqual(args.verbose, 2)
        self.assertEqual(args.kind, "both")

    @unittest.skipUnless(os.environ.get("RUN_SLOW_TESTS"), "runs the reproduction suite")
    def test_verify(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, text = run("--table-dir", tmp, "--format", "json", "verify", "paper", "--skip-slow")
        data = json.loads(text)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(data["passed"])


if __name__ == "__main__":
    unittest.main(verbosity=2)
