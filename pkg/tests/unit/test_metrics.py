"""
Unit tests for the metrics module.

Tests component and attribute counts, query cost ceilings, update write
counts, model comparison and report writers.
"""

import io
import json
import tempfile
import unittest
from pathlib import Path

from fdots.core.errors import EmptySampleError
from fdots.core.fixtures import (
    create_attribute_fixture,
    create_profile_fixture,
    create_record_fixture,
)
from fdots.core.model import InformationRecord, OperationSpec
from fdots.core.pid import Pid
from fdots.registries import Namespace, RegistryStore, dump_ecosystem
from fdots.metrics import (
    ALL_MEASURES,
    MetricCheck,
    MetricsReport,
    NewFdoScenario,
    NewOperationScenario,
    attribute_formula,
    attribute_inputs,
    brute_force_attribute_count,
    brute_force_component_count,
    compare_models,
    comparison_report,
    count_attributes,
    count_components,
    default_update_scenarios,
    evaluate,
    expected_writes,
    fdos_ceiling,
    format_claims,
    format_table,
    measure_query_costs,
    measure_update_costs,
    ops_ceiling,
    query_ceiling,
    sample_pairs,
    to_csv,
    to_json_lines,
    write_csv,
)
from fdots.metrics.measures import CONVERSION_NOTE
from fdots.metrics.report import CSV_COLUMNS, render_table

FIXTURES = {
    "record": create_record_fixture,
    "profile": create_profile_fixture,
    "attribute": create_attribute_fixture,
}


def pid(name):
    return Pid(f"21.T/{name}")


class TestCounts(unittest.TestCase):
    """Component (C) and attribute (A) counts of the reference ecosystems."""

    EXPECTED = {"record": (10, 6), "profile": (14, 7), "attribute": (17, 10)}

    def test_formula_values(self):
        for model, (components, attributes) in self.EXPECTED.items():
            ecosystem = FIXTURES[model]()
            with self.subTest(model=model):
                self.assertEqual(count_components(ecosystem), components)
                self.assertEqual(count_attributes(ecosystem), attributes)
                self.assertEqual(attribute_formula(ecosystem), attributes)

    def test_oracles_agree(self):
        for model, factory in FIXTURES.items():
            ecosystem = factory()
            with self.subTest(model=model):
                self.assertEqual(brute_force_component_count(ecosystem), count_components(ecosystem))
                self.assertEqual(brute_force_attribute_count(ecosystem), count_attributes(ecosystem))

    def test_record_typing_is_smallest(self):
        self.assertLess(
            count_components(create_record_fixture()), count_components(create_profile_fixture())
        )

    def test_attribute_inputs(self):
        per_fdo, per_op = attribute_inputs(create_attribute_fixture())
        self.assertEqual(per_fdo, {pid("f1"): 3, pid("f2"): 1, pid("f3"): 1, pid("f4"): 1})
        self.assertEqual(per_op, {pid("o1"): 1, pid("o2"): 1, pid("o3"): 1, pid("o5"): 1})


class TestCeilings(unittest.TestCase):

    def test_query_ceiling(self):
        self.assertEqual(query_ceiling(create_record_fixture(), pid("f1"), pid("o2")), 5)
        self.assertEqual(query_ceiling(create_profile_fixture(), pid("f1"), pid("o3")), 5)
        self.assertEqual(query_ceiling(create_attribute_fixture(), pid("f1"), pid("o1")), 7)

    def test_fdos_ceiling(self):
        self.assertEqual(fdos_ceiling(create_record_fixture(), pid("o3")), 14)
        self.assertEqual(fdos_ceiling(create_profile_fixture(), pid("o3")), 13)
        self.assertEqual(fdos_ceiling(create_attribute_fixture(), pid("o3")), 19)

    def test_ops_ceiling(self):
        self.assertEqual(ops_ceiling(create_record_fixture(), pid("f2")), 3)
        self.assertEqual(ops_ceiling(create_profile_fixture(), pid("f1")), 5)
        self.assertEqual(ops_ceiling(create_attribute_fixture(), pid("f1")), 15)


class TestQueryCosts(unittest.TestCase):
    """Measured query costs (Q, R, S) stay within their ceilings."""

    def test_sample_pairs_is_seeded(self):
        ecosystem = create_record_fixture()
        self.assertEqual(sample_pairs(ecosystem, 10, seed=3), sample_pairs(ecosystem, 10, seed=3))
        pairs = sample_pairs(ecosystem, 10, seed=3)
        self.assertEqual(len(pairs), 10)
        self.assertTrue(all(f in ecosystem.records and o in ecosystem.operations for f, o in pairs))

    def test_empty_samples(self):
        with self.assertRaises(EmptySampleError):
            sample_pairs(create_record_fixture(), 0)
        with self.assertRaises(EmptySampleError):
            measure_query_costs(create_record_fixture(), [])

    def test_costs_within_ceilings(self):
        for model, factory in FIXTURES.items():
            ecosystem = factory()
            sample = [(f, o) for f in ecosystem.records for o in ecosystem.operations]
            costs = measure_query_costs(ecosystem, sample)
            with self.subTest(model=model):
                self.assertEqual(len(costs.q), 20)
                self.assertEqual(len(costs.r), 5)
                self.assertEqual(len(costs.s), 4)
                self.assertEqual([c for c in costs.all() if not c.passed], [])

    def test_profile_fdos_for_op_meets_ceiling(self):
        costs = measure_query_costs(create_profile_fixture(), [(pid("f1"), pid("o3"))])
        self.assertEqual(costs.r[0].measured, 13)
        self.assertEqual(costs.r[0].ceiling, 13)


class TestUpdateCosts(unittest.TestCase):
    """Record writes (T, U) equal their formula values."""

    def test_expected_writes(self):
        scenario = NewOperationScenario(OperationSpec(pid("o9")), frozenset({pid("f2"), pid("f3")}))
        self.assertEqual(expected_writes(create_record_fixture(), scenario), 2)
        self.assertEqual(expected_writes(create_profile_fixture(), scenario), 1)
        self.assertEqual(expected_writes(create_attribute_fixture(), scenario), 0)

        record = InformationRecord.data_fdo(pid("f9"), pid("p0"), [("title", "t")])
        fdo = NewFdoScenario(record, frozenset({pid("o1"), pid("o2")}))
        self.assertEqual(expected_writes(create_record_fixture(), fdo), 2)
        self.assertEqual(expected_writes(create_profile_fixture(), NewFdoScenario(record)), 0)

    def test_measured_from_write_log(self):
        scenarios = [
            NewOperationScenario(OperationSpec(pid("o9")), frozenset({pid("f2"), pid("f3")})),
            NewFdoScenario(
                InformationRecord.data_fdo(pid("f9"), pid("p2"), [("title", "t")]), None
            ),
        ]
        checks = measure_update_costs(create_profile_fixture(), scenarios)
        self.assertEqual([(c.measure, c.measured) for c in checks], [("T", 1), ("U", 0)])
        self.assertTrue(all(c.passed and c.exact for c in checks))

    def test_record_typing_writes(self):
        record = InformationRecord.data_fdo(pid("f9"), pid("p0"), [("title", "t")])
        scenarios = [
            NewOperationScenario(OperationSpec(pid("o9")), frozenset({pid("f1"), pid("f4")})),
            NewFdoScenario(record, frozenset({pid("o1"), pid("o9")})),
        ]
        checks = measure_update_costs(create_record_fixture(), scenarios)
        self.assertEqual([c.measured for c in checks], [2, 2])
        self.assertTrue(all(c.passed for c in checks))

    def test_existing_store_untouched(self):
        with tempfile.TemporaryDirectory() as root:
            store = dump_ecosystem(create_record_fixture(), root)
            before = {p.name: p.read_bytes() for p in Path(root).iterdir()}
            scenario = NewOperationScenario(OperationSpec(pid("o9")), frozenset({pid("f1")}))
            measure_update_costs(store.snapshot(), [scenario])
            self.assertEqual({p.name: p.read_bytes() for p in Path(root).iterdir()}, before)
            self.assertNotIn(pid("o9"), RegistryStore(root).pids(Namespace.OPERATIONS))

    def test_default_scenarios(self):
        for model, factory in FIXTURES.items():
            with self.subTest(model=model):
                scenarios = default_update_scenarios(factory(), n_operations=2, n_fdos=1, seed=5)
                self.assertEqual(len(scenarios), 3)
                self.assertIsInstance(scenarios[0], NewOperationScenario)
                self.assertIsInstance(scenarios[-1], NewFdoScenario)
                self.assertEqual(str(scenarios[0].operation.pid), "21.T/0001")


class TestEvaluate(unittest.TestCase):
    """Test suite for evaluate and MetricsReport."""

    def test_reference_fixtures_pass(self):
        for model, factory in FIXTURES.items():
            with self.subTest(model=model):
                report = evaluate(factory(), sample_size=25, seed=1)
                self.assertTrue(report.passed, [c.row() for c in report.violations()])
                self.assertEqual([r["measure"] for r in report.summary()], list(ALL_MEASURES))

    def test_single_values(self):
        report = evaluate(create_profile_fixture(), measures=["c", "a"])
        self.assertEqual(report.value("C"), 14)
        self.assertEqual(report.value("A"), 7)
        self.assertIsNone(report.value("Q"))

    def test_attribute_note(self):
        report = evaluate(create_attribute_fixture(), sample_size=5, measures=["Q"])
        self.assertIn(CONVERSION_NOTE, report.notes)
        self.assertEqual(report.inputs["per_fdo"], [3, 1, 1, 1])

    def test_unknown_measure(self):
        with self.assertRaises(ValueError):
            evaluate(create_record_fixture(), measures=["Z"])

    def test_metric_check(self):
        check = MetricCheck("record", "Q", "x", 3, 4)
        self.assertTrue(check.passed)
        self.assertAlmostEqual(check.ratio, 0.75)
        self.assertFalse(MetricCheck("record", "C", "x", 3, 4, exact=True).passed)
        self.assertEqual(MetricCheck("record", "T", "x", 0, 0, exact=True).ratio, 0.0)
        self.assertEqual(
            check.row(), {"model": "record", "measure": "Q", "measured": 3, "ceiling": 4, "pass": True}
        )


class TestComparison(unittest.TestCase):

    def test_reference_comparison_passes(self):
        comparison = compare_models(create_record_fixture(), sample_size=30, seed=2, n_operations=2)
        self.assertEqual(sorted(comparison.reports), ["attribute", "profile", "record"])
        self.assertTrue(comparison.passed, [c.row() for c in comparison.claims if not c.holds])
        claims = {c.claim for c in comparison.claims}
        self.assertIn("C_record < C_profile", claims)
        self.assertIn("Q_record <= Q_attribute", claims)
        self.assertIn("T_profile <= T_record", claims)
        self.assertIn("U_profile = 0", claims)

    def test_any_source_model(self):
        for model, factory in FIXTURES.items():
            with self.subTest(model=model):
                comparison = compare_models(factory(), sample_size=10, seed=4)
                self.assertTrue(comparison.passed)
                self.assertEqual(comparison.reports["profile"].value("C"), 14)

    def test_claim_detects_violation(self):
        left = MetricsReport("record", [MetricCheck("record", "C", "ecosystem", 20, 20, exact=True)])
        right = MetricsReport("profile", [MetricCheck("profile", "C", "ecosystem", 14, 14, exact=True)])
        claims = comparison_report({"record": left, "profile": right})
        self.assertEqual(len(claims), 1)
        self.assertFalse(claims[0].holds)

    def test_missing_models_are_skipped(self):
        report = evaluate(create_record_fixture(), measures=["C"])
        self.assertEqual(comparison_report({"record": report}), [])


class TestReportWriters(unittest.TestCase):

    def setUp(self):
        self.report = evaluate(create_record_fixture(), sample_size=5, measures=["C", "A", "Q"])

    def test_csv(self):
        text = to_csv(self.report)
        lines = text.splitlines()
        self.assertEqual(lines[0], ",".join(CSV_COLUMNS))
        self.assertEqual(lines[1], "record,C,10,10,true")
        self.assertEqual(len(lines), 1 + len(self.report.checks))

    def test_write_csv_to_stream(self):
        buffer = io.StringIO()
        write_csv([self.report], buffer)
        self.assertEqual(buffer.getvalue(), to_csv(self.report))

    def test_table(self):
        text = format_table(self.report)
        self.assertIn("record inputs: F=4 O=5 P=1 A_def=3", text)
        self.assertIn("max_ratio", text.splitlines()[0])

    def test_json_lines(self):
        text = to_json_lines([{"b": 1, "a": 2}])
        self.assertEqual(text, '{"a": 2, "b": 1}\n')
        self.assertEqual(json.loads(text), {"a": 2, "b": 1})

    def test_render_table(self):
        self.assertEqual(render_table([]), "")
        text = render_table([{"x": 1, "flag": False}])
        self.assertEqual(text.splitlines()[2].split(), ["1", "FAIL"])

    def test_claims_table(self):
        comparison = compare_models(create_record_fixture(), sample_size=5)
        self.assertIn("C_record < C_profile", format_claims(comparison.claims))


if __name__ == '__main__':
    unittest.main()
