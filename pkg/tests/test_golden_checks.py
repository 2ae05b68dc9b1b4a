import unittest

try:
    import golden_checks
    _IMPORT_OK = True
    _IMPORT_ERROR = None
except Exception as exc:  # pragma: no cover - environment-dependent
    golden_checks = None
    _IMPORT_OK = False
    _IMPORT_ERROR = exc


@unittest.skipUnless(_IMPORT_OK, "golden_checks dependencies unavailable: %s" % _IMPORT_ERROR)
class GoldenCatalogueTest(unittest.TestCase):
    def test_every_check_passes(self):
        results = golden_checks.run_checks()
        failed = [r.line() for r in results if not r.passed]
        self.assertEqual(failed, [])
        self.assertEqual(len(results), len(golden_checks.CHECKS))

    def test_names_are_unique(self):
        names = [c.name for c in golden_checks.CHECKS]
        self.assertEqual(len(names), len(set(names)))

    def test_listing_keeps_declaration_order(self):
        listing = golden_checks.list_checks()
        self.assertTrue(listing[0].startswith("qpoly/q_integer_three: "))
        self.assertEqual(len(listing), len(golden_checks.CHECKS))

    def test_selection_by_area_and_name(self):
        self.assertEqual([r.name for r in golden_checks.run_checks(["paths"])],
                         ["path_parse", "path_count_three", "path_count_zero"])
        self.assertEqual([r.name for r in golden_checks.run_checks(["hook_three"])], ["hook_three"])
        self.assertEqual(golden_checks.run_checks(["nothing"]), [])

    def test_failure_is_reported_not_raised(self):
        def broken():
            golden_checks.expect(1, 2, "one")

        check = golden_checks.GoldenCheck("broken", "meta", "always fails", broken)
        golden_checks.CHECKS.append(check)
        try:
            (result,) = golden_checks.run_checks(["broken"])
        finally:
            golden_checks.CHECKS.remove(check)
        self.assertFalse(result.passed)
        self.assertTrue(result.line().startswith("[FAIL] meta/broken"))

    def test_unexpected_exception_becomes_an_error_row(self):
        def crashes():
            {}["missing"]

        check = golden_checks.GoldenCheck("crashes", "meta", "raises KeyError", crashes)
        golden_checks.CHECKS.append(check)
        try:
            with self.assertLogs("dyckq", level="ERROR"):
                results = golden_checks.run_checks(["meta", "hook_three"])
        finally:
            golden_checks.CHECKS.remove(check)
        self.assertEqual([(r.name, r.status) for r in results], [("hook_three", "PASS"), ("crashes", "ERROR")])
        self.assertFalse(results[1].passed)
        self.assertTrue(results[1].line().startswith("[ERROR] meta/crashes"))
        self.assertIn("KeyError", results[1].detail)


if __name__ == "__main__":
    unittest.main()
