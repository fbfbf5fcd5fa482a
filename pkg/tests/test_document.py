"""Tests for model documents, run configuration and report export."""
import unittest
import sys
import os
import copy
import json
import tempfile
from fractions import Fraction
from unittest import mock

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from ontoscope import create_run_config
from ontoscope.analysis.overlap_table import CSV_HEADER, overlap_table
from ontoscope.analysis.theorem3 import Theorem3Mode
from ontoscope.errors import ConfigurationError, SchemaError
from ontoscope.models.classifier import sample_pairs
from ontoscope.models.run_config import RunConfig
from ontoscope.utils.export import (
    build_summary_report, export_results_json, overlap_rows_to_csv_rows, write_csv,
)
from ontoscope.utils.model_document import load_model, model_from_document, model_to_document, save_model
from ontoscope.utils.sampling import stream_rng
from ontoscope.utils.validators import validate_fraction, validate_model_document
from ontoscope.zoo.beltrametti_bugajski import build_bb
from ontoscope.zoo.kochen_specker import build_ks
from ontoscope.zoo.states import haar_states
from ontoscope.zoo.witness import build_theorem3_witness


def _witness_document():
    return model_to_document(build_theorem3_witness())


class TestModelDocument(unittest.TestCase):

    def test_roundtrip_is_bit_exact(self):
        model = build_ks(400, random_state_count=2)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "ks.json")
            save_model(model, path)
            loaded = load_model(path)
        self.assertEqual(len(loaded.preparations), len(model.preparations))
        for a, b in zip(model.preparations, loaded.preparations):
            self.assertEqual(a.label, b.label)
            np.testing.assert_array_equal(a.epistemic.density, b.epistemic.density)
            np.testing.assert_array_equal(a.target.matrix, b.target.matrix)
            self.assertEqual(a.decomposition, b.decomposition)
        np.testing.assert_array_equal(model.space.points, loaded.space.points)
        for label, m in model.measurements.items():
            np.testing.assert_array_equal(m.response.table, loaded.measurement(label).response.table)
        self.assertEqual(loaded.metadata["kind"], "kochen-specker")

    def test_witness_document_is_valid(self):
        doc = _witness_document()
        self.assertEqual(validate_model_document(doc), [])
        self.assertEqual(doc["space"]["kind"], "abstract")
        self.assertEqual(doc["schema_version"], "1")

    def test_negative_density_reports_field_path(self):
        doc = _witness_document()
        doc["preparations"][3]["density"][2] = -0.1
        errors = validate_model_document(doc)
        self.assertEqual(len(errors), 1)
        self.assertTrue(errors[0].startswith("preparations[3].density[2]"), errors[0])
        with self.assertRaises(SchemaError):
            model_from_document(doc)

    def test_wrong_density_length(self):
        doc = _witness_document()
        doc["preparations"][0]["density"] = doc["preparations"][0]["density"][:4]
        errors = validate_model_document(doc)
        self.assertIn("preparations[0].density: expected 6 entries, got 4", errors)

    def test_unnormalized_density_is_schema_error(self):
        doc = _witness_document()
        doc["preparations"][0]["density"] = [1.0] * 6
        with self.assertRaises(SchemaError) as ctx:
            model_from_document(doc)
        self.assertTrue(ctx.exception.errors[0].startswith("preparations[0]:"))

    def test_unknown_decomposition_label(self):
        doc = _witness_document()
        mixed = next(p for p in doc["preparations"] if p["decomposition"])
        mixed["decomposition"][0][1] = "ghost"
        errors = validate_model_document(doc)
        self.assertTrue(any("unknown preparation 'ghost'" in e for e in errors))

    def test_non_string_labels_reported(self):
        doc = _witness_document()
        mixed = next(p for p in doc["preparations"] if p["decomposition"])
        mixed["decomposition"][0][1] = ["A1+@P1"]
        errors = validate_model_document(doc)
        self.assertTrue(any(e.endswith("label must be a string") for e in errors), errors)
        doc = _witness_document()
        doc["preparations"][-1]["decomposition"] = None
        self.assertEqual(validate_model_document(doc), [])

    def test_schema_version(self):
        doc = copy.deepcopy(_witness_document())
        doc["schema_version"] = "2"
        self.assertTrue(validate_model_document(doc)[0].startswith("schema_version"))

    def test_malformed_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "broken.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write('{"schema_version": "1",\n "space": }')
            with self.assertRaises(SchemaError) as ctx:
                load_model(path)
        self.assertIn("line 2", str(ctx.exception))

    def test_validate_fraction(self):
        self.assertEqual(validate_fraction(0.5), [])
        self.assertEqual(len(validate_fraction(0.0)), 1)


class TestRunConfig(unittest.TestCase):

    def test_testing_profile(self):
        run = create_run_config("testing")
        self.assertEqual(run.grid_size, 2500)
        self.assertEqual(run.config_name, "testing")

    def test_overrides(self):
        run = create_run_config("production", seed=7, tolerance=None)
        self.assertEqual(run.seed, 7)
        self.assertEqual(run.tolerance, 2e-2)

    def test_unknown_profile_and_setting(self):
        with self.assertRaises(ConfigurationError):
            create_run_config("staging")
        with self.assertRaises(ConfigurationError):
            create_run_config("testing", colour="blue")

    def test_seed_from_environment(self):
        with mock.patch.dict(os.environ, {"ONTOSCOPE_SEED": "123"}):
            self.assertEqual(create_run_config("testing").seed, 123)
            self.assertEqual(create_run_config("testing", seed=5).seed, 5)
        with mock.patch.dict(os.environ, {"ONTOSCOPE_SEED": "abc"}):
            with self.assertRaises(ConfigurationError):
                create_run_config("testing")

    def test_profile_from_environment(self):
        with mock.patch.dict(os.environ, {"ONTOSCOPE_ENV": "testing"}):
            self.assertEqual(create_run_config().config_name, "testing")

    def test_invalid_values(self):
        with self.assertRaises(ConfigurationError):
            RunConfig(grid_size=10)
        with self.assertRaises(ConfigurationError):
            RunConfig(tolerance=0.0)

    def test_log_level_must_be_known(self):
        self.assertEqual(RunConfig(log_level="debug").log_level, "debug")
        with self.assertRaises(ConfigurationError):
            RunConfig(log_level="LOUD")

    def test_named_streams_are_independent(self):
        run = RunConfig(seed=9)
        np.testing.assert_array_equal(run.rng("born").random(3), stream_rng(9, "born").random(3))
        self.assertFalse(np.array_equal(run.rng("born").random(3), run.rng("states").random(3)))
        np.testing.assert_array_equal(run.rng().random(3), np.random.default_rng(9).random(3))


class TestExport(unittest.TestCase):

    def test_json_encoder_handles_report_types(self):
        payload = {"value": np.float64(0.5), "count": np.int64(3), "flag": np.bool_(True),
                   "ratio": Fraction(1, 3), "whole": Fraction(6), "mode": Theorem3Mode.BOTH_NONCONTEXTUAL}
        data = json.loads(export_results_json(payload))
        self.assertEqual(data, {"value": 0.5, "count": 3, "flag": True, "ratio": "1/3", "whole": 6,
                                "mode": "BothNoncontextual"})

    def test_summary_report(self):
        model = build_theorem3_witness()
        summary = build_summary_report("classify", {"ok": True}, RunConfig(), model)
        self.assertEqual(summary["report"], "classify")
        self.assertEqual(summary["model"]["size"], 6)
        self.assertEqual(summary["result"], {"ok": True})

    def test_overlap_csv(self):
        model = build_bb(10000, haar_states(stream_rng(42, "states"), 8))
        rows = overlap_table(model, sample_pairs(model, 10, np.random.default_rng(42)))
        csv_rows = overlap_rows_to_csv_rows(rows)
        self.assertEqual(tuple(csv_rows[0]), CSV_HEADER)
        self.assertEqual(len(csv_rows), 11)
        for row in rows:
            self.assertEqual(row.l_c, 0.0)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(csv_rows, os.path.join(tmp, "nested", "overlaps.csv"))
            with open(path, encoding="utf-8") as fh:
                self.assertEqual(fh.readline().strip(), ",".join(CSV_HEADER))

    def test_empty_pair_budget_gives_header_only(self):
        model = build_theorem3_witness()
        rows = overlap_rows_to_csv_rows(overlap_table(model, sample_pairs(model, 0, np.random.default_rng(0))))
        self.assertEqual(rows, [list(CSV_HEADER)])


if __name__ == '__main__':
    unittest.main()
