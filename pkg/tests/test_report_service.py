import json
import tempfile
import unittest
from pathlib import Path

import dyckq_env as env
import report_service
from dyckq_engine import InvalidInput


class ReportServiceTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self._saved = env.DEV_SETTINGS.get("report_dir")
        env.DEV_SETTINGS["report_dir"] = self._tmp.name
        self.root = Path(self._tmp.name)

    def tearDown(self):
        env.DEV_SETTINGS["report_dir"] = self._saved
        self._tmp.cleanup()

    def test_build_report_drops_unset_parameters(self):
        report = report_service.build_report("gf", {"path": "UDUD", "top": None, "k": 2}, {"x": 1})
        self.assertEqual(report.parameters, {"k": 2, "path": "UDUD"})
        self.assertEqual(report.status, "OK")
        self.assertEqual(report.schema, "report.v1")
        self.assertEqual(len(report.report_id), 12)

    def test_write_and_read(self):
        report = report_service.build_report("poset", {}, {"elements": []}, status="FAILED", message="nope")
        target = report_service.write_report(report, self.root / "out" / "poset.json")
        self.assertTrue(target.exists())
        with open(target, "r", encoding="utf-8") as handle:
            self.assertEqual(json.load(handle)["verb"], "poset")
        self.assertEqual(report_service.read_report(target), report)
        self.assertEqual([r.report_id for r in report_service.load_reports()], [report.report_id])

    def test_index_can_be_skipped_and_cleared(self):
        report = report_service.build_report("gf", {}, None)
        report_service.write_report(report, self.root / "gf.json", index=False)
        self.assertEqual(report_service.load_reports(), [])
        report_service.append_report(report)
        self.assertEqual(len(report_service.load_reports()), 1)
        report_service.clear_reports()
        self.assertFalse((self.root / "reports.json").exists())

    def test_directory_target_is_rejected(self):
        report = report_service.build_report("gf", {}, None)
        with self.assertRaises(InvalidInput):
            report_service.write_report(report, self.root)

    def test_unreadable_index_starts_empty(self):
        (self.root / "reports.json").write_text("{broken", encoding="utf-8")
        self.assertEqual(report_service.load_reports(), [])
        self.assertIsNone(report_service.read_report(self.root / "missing.json"))


if __name__ == "__main__":
    unittest.main()
