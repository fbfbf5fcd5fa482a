"""Tests for the command-line surface."""
import unittest
import sys
import os
import csv
import io
import json
import shutil
import tempfile
from contextlib import redirect_stderr, redirect_stdout

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ontoscope.cli import EXIT_INPUT_ERROR, EXIT_MISMATCH, EXIT_OK, main
from ontoscope.utils.model_document import load_model


def _run(*argv):
    """Run the CLI with the testing profile; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv) + ["--config", "testing"])
    return code, out.getvalue(), err.getvalue()


class TestCommandLine(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.mkdtemp(prefix="ontoscope-cli-")
        cls.ks = os.path.join(cls.tmp, "ks.json")
        cls.bb = os.path.join(cls.tmp, "bb.json")
        cls.truncated = os.path.join(cls.tmp, "truncated.json")
        cls.witness = os.path.join(cls.tmp, "witness.json")
        for argv in (
            ("zoo", "ks", "--n", "10000", "--random-states", "0", "-o", cls.ks),
            ("zoo", "bb", "--n", "10000", "--states", "8", "-o", cls.bb),
            ("zoo", "truncated", "--n", "10000", "--random-states", "0", "-o", cls.truncated),
            ("zoo", "witness", "-o", cls.witness),
        ):
            code, _, err = _run(*argv)
            assert code == EXIT_OK, err

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.tmp, ignore_errors=True)

    def test_zoo_documents_load(self):
        self.assertEqual(load_model(self.witness).space.size, 6)
        self.assertEqual(len(load_model(self.bb).preparations), 8)
        self.assertTrue(load_model(self.truncated).metadata["born_invalid"])

    def test_classify_bb(self):
        code, out, _ = _run("classify", self.bb)
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)["result"]
        self.assertEqual(result["verdict"]["ontic_or_epistemic"], "PsiOntic")
        self.assertEqual(result["verdict"]["max_psi_epistemic_1"], "No")
        self.assertEqual(result["verdict"]["max_psi_epistemic_2"], "No")
        self.assertFalse(result["outcome_determinism"]["deterministic"])

    def test_classify_is_deterministic(self):
        first = json.loads(_run("classify", self.witness, "--seed", "3")[1])["result"]
        second = json.loads(_run("classify", self.witness, "--seed", "3")[1])["result"]
        self.assertEqual(first, second)

    def test_classify_writes_report(self):
        path = os.path.join(self.tmp, "reports", "witness.json")
        code, out, _ = _run("classify", self.witness, "-o", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        with open(path, encoding="utf-8") as fh:
            self.assertEqual(json.load(fh)["report"], "classify")

    def test_theorem1_on_ks(self):
        code, out, _ = _run("theorem", "1", "--model", self.ks, "--chi", "0", "--eta", "+")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)["result"]
        self.assertAlmostEqual(result["support_sum"], 2.0, delta=3e-2)

    def test_theorem1_on_truncated_model(self):
        code, out, _ = _run("theorem", "1", "--model", self.truncated)
        self.assertEqual(code, EXIT_OK)
        self.assertFalse(json.loads(out)["result"]["conclusion"])
        code, _, _ = _run("theorem", "1", "--model", self.truncated, "--expect", "holds")
        self.assertEqual(code, EXIT_MISMATCH)

    def test_theorem2_on_twin_procedures(self):
        code, out, _ = _run("theorem", "2", "--model", self.ks)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(json.loads(out)["result"]["holds"])

    def test_theorem3_modes(self):
        code, out, _ = _run("theorem", "3", "--mode", "both-nc")
        self.assertEqual(code, EXIT_OK)
        self.assertFalse(json.loads(out)["result"]["feasible"])
        self.assertEqual(_run("theorem", "3", "--mode", "pure-ctx")[0], EXIT_OK)
        self.assertEqual(_run("theorem", "3", "--mode", "pure-ctx", "--lp", "--points", "6")[0], EXIT_OK)
        self.assertEqual(_run("theorem", "3", "--mode", "both-nc", "--lp", "--points", "4")[0], EXIT_OK)

    def test_theorem3_single_point_is_a_mismatch(self):
        code, _, _ = _run("theorem", "3", "--mode", "pure-ctx", "--lp", "--points", "1")
        self.assertEqual(code, EXIT_MISMATCH)

    def test_theorem3_capacity_is_input_error(self):
        code, _, err = _run("theorem", "3", "--mode", "pure-ctx", "--lp", "--points", "20")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIn("error:", err)

    def test_theorem_without_model(self):
        code, _, err = _run("theorem", "1")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIn("--model", err)

    def test_overlaps_csv(self):
        path = os.path.join(self.tmp, "overlaps.csv")
        code, _, _ = _run("overlaps", self.ks, "--pair-budget", "30", "-o", path)
        self.assertEqual(code, EXIT_OK)
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        self.assertEqual(rows[0], ["pair_id", "overlap_sq", "l_q", "l_c", "f", "deficit"])
        self.assertEqual(len(rows), 31)
        for row in rows[1:]:
            self.assertLessEqual(abs(float(row[5])), 2e-2)

    def test_overlaps_empty_budget(self):
        code, out, _ = _run("overlaps", self.bb, "--pair-budget", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "pair_id,overlap_sq,l_q,l_c,f,deficit")

    def test_born_report(self):
        code, out, _ = _run("born", self.ks, "--pairs", "20")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)["result"]
        self.assertTrue(result["passed"])
        self.assertEqual(result["checks"], 40)

    def test_born_fails_on_truncated_model(self):
        code, _, _ = _run("born", self.truncated, "--pairs", "200")
        self.assertEqual(code, EXIT_MISMATCH)

    def test_corrupted_document(self):
        with open(self.witness, encoding="utf-8") as fh:
            doc = json.load(fh)
        doc["preparations"][0]["density"][0] = -1.0
        path = os.path.join(self.tmp, "corrupted.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        code, out, err = _run("classify", path)
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("preparations[0].density[0]", err)
        self.assertEqual(len(err.strip().splitlines()), 1)

    def _write_modified(self, source, name, change):
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
        change(doc)
        path = os.path.join(self.tmp, name)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        return path

    def test_effects_of_mixed_dimension_are_input_errors(self):
        def change(doc):
            doc["measurements"][0]["effects"][1] = [
                [[1.0 if r == c else 0.0, 0.0] for c in range(3)] for r in range(3)
            ]
        path = self._write_modified(self.bb, "mixed-dims.json", change)
        code, out, err = _run("classify", path)
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("measurements[0].effects", err)

    def test_non_string_decomposition_label_is_input_error(self):
        def change(doc):
            mixed = next(p for p in doc["preparations"] if p.get("decomposition"))
            mixed["decomposition"][0][1] = ["A1+@P1"]
        path = self._write_modified(self.witness, "list-label.json", change)
        code, _, err = _run("classify", path)
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIn("label must be a string", err)

    def test_non_string_measurement_label_is_input_error(self):
        def change(doc):
            doc["measurements"][0]["label"] = ["M"]
        path = self._write_modified(self.bb, "list-measurement.json", change)
        code, _, err = _run("classify", path)
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertIn("measurements[0].label", err)

    def test_unknown_log_level_is_input_error(self):
        code, out, err = _run("classify", self.witness, "--log-level", "LOUD")
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertEqual(out, "")
        self.assertIn("unknown log level 'LOUD'", err)

    def test_missing_file(self):
        code, _, err = _run("classify", os.path.join(self.tmp, "nope.json"))
        self.assertEqual(code, EXIT_INPUT_ERROR)
        self.assertTrue(err.startswith("error:"))

    def test_truncation_fraction_checked(self):
        code, _, _ = _run("zoo", "truncated", "--fraction", "1.5", "-o", os.path.join(self.tmp, "x.json"))
        self.assertEqual(code, EXIT_INPUT_ERROR)

    def test_unknown_kind(self):
        with redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["zoo", "spekkens"])
        self.assertEqual(ctx.exception.code, 2)


if __name__ == '__main__':
    unittest.main()
