import json
import tempfile
import unittest
from pathlib import Path

import dyckq_env as env
from dyckq_engine import SizeBoundExceeded


class DevSettingsTest(unittest.TestCase):
    def _load(self, payload) -> dict:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "dev_settings.json"
            path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
            return env.load_dev_settings_file(path)

    def test_missing_file_gives_defaults(self):
        settings = env.load_dev_settings_file(Path(tempfile.gettempdir()) / "no-such-dyckq-settings.json")
        self.assertEqual(settings, env.DEFAULT_DEV_SETTINGS)

    def test_invalid_values_fall_back(self):
        settings = self._load(
            {"max_size": "lots", "max_poset_elements": 0, "default_format": "png", "log_level": "chatty"}
        )
        self.assertEqual(settings["max_size"], 7)
        self.assertEqual(settings["max_poset_elements"], 200000)
        self.assertEqual(settings["default_format"], "text")
        self.assertEqual(settings["log_level"], "WARNING")

    def test_valid_overrides_are_kept(self):
        settings = self._load({"max_size": 9, "default_format": "json", "log_level": "debug", "report_dir": "/tmp/r"})
        self.assertEqual(settings["max_size"], 9)
        self.assertEqual(settings["default_format"], "json")
        self.assertEqual(settings["log_level"], "DEBUG")
        self.assertEqual(settings["report_dir"], "/tmp/r")

    def test_broken_json_gives_defaults(self):
        self.assertEqual(self._load("{not json"), env.DEFAULT_DEV_SETTINGS)


class SizeGuardTest(unittest.TestCase):
    def setUp(self):
        self._saved = dict(env.DEV_SETTINGS)

    def tearDown(self):
        env.DEV_SETTINGS.clear()
        env.DEV_SETTINGS.update(self._saved)

    def test_check_size(self):
        env.DEV_SETTINGS["max_size"] = 4
        env.check_size(4)
        with self.assertRaises(SizeBoundExceeded):
            env.check_size(5)
        env.check_size(5, bound=5)

    def test_rational_size_uses_the_larger_slope(self):
        env.DEV_SETTINGS["max_rational_size"] = 6
        env.check_rational_size(3, 1, 2)
        with self.assertRaises(SizeBoundExceeded):
            env.check_rational_size(3, 3, 1)

    def test_override_sets_both_guards(self):
        env.override_max_size(None)
        self.assertEqual(env.max_size(), self._saved["max_size"])
        env.override_max_size(11)
        self.assertEqual(env.max_size(), 11)
        self.assertEqual(env.max_rational_size(), 11)

    def test_report_dir(self):
        env.DEV_SETTINGS["report_dir"] = None
        self.assertEqual(env.report_dir().parts[-2:], (".dyckq", "reports"))
        env.DEV_SETTINGS["report_dir"] = "/tmp/dyckq-reports"
        self.assertEqual(env.report_dir(), Path("/tmp/dyckq-reports"))


if __name__ == "__main__":
    unittest.main()
