"""
Unit tests for the association graph models and their export.
"""

import csv
import io
import unittest

from fdots.core.errors import DanglingReferenceError
from fdots.core.fixtures import (
    create_attribute_fixture,
    create_profile_fixture,
    create_record_fixture,
    reference_relation,
)
from fdots.core.model import InformationRecord, OperationSpec, RequiredInput
from fdots.core.pid import Pid
from fdots.engines import create_engine
from fdots.graph import (
    ATTRIBUTE,
    FDO,
    OPERATION,
    PROFILE,
    associations_from_graph,
    build_graph,
    compare_with_engine,
    export_graph,
    reachable_operations,
)


def pid(name):
    return Pid(f"21.T/{name}")


class TestBuildGraph(unittest.TestCase):
    """Test suite for build_graph."""

    def test_sizes(self):
        expected = {
            create_record_fixture: (15, 12),
            create_profile_fixture: (19, 16),
            create_attribute_fixture: (20, 17),
        }
        for factory, (vertices, edges) in expected.items():
            with self.subTest(fixture=factory.__name__):
                graph = build_graph(factory())
                self.assertEqual(graph.number_of_vertices(), vertices)
                self.assertEqual(graph.number_of_edges(), edges)

    def test_relation_read_off_graph(self):
        for factory in (create_record_fixture, create_profile_fixture, create_attribute_fixture):
            with self.subTest(fixture=factory.__name__):
                self.assertEqual(associations_from_graph(build_graph(factory())), reference_relation())

    def test_invariants_hold(self):
        for factory in (create_record_fixture, create_profile_fixture, create_attribute_fixture):
            with self.subTest(fixture=factory.__name__):
                self.assertEqual(build_graph(factory()).check_invariants(), [])

    def test_path_lengths(self):
        self.assertEqual(build_graph(create_record_fixture()).path_length(pid("f1"), pid("o2")), 2)
        self.assertEqual(build_graph(create_profile_fixture()).path_length(pid("f2"), pid("o3")), 4)
        self.assertEqual(build_graph(create_attribute_fixture()).path_length(pid("f4"), pid("o5")), 3)
        self.assertIsNone(build_graph(create_record_fixture()).path_length(pid("f1"), pid("o4")))

    def test_vertex_kinds(self):
        stats = build_graph(create_profile_fixture()).get_stats()
        self.assertEqual(stats[FDO], 4)
        self.assertEqual(stats[OPERATION], 5)
        self.assertEqual(stats[PROFILE], 3)
        self.assertEqual(stats[ATTRIBUTE], 7)
        self.assertEqual(build_graph(create_record_fixture()).get_stats()[PROFILE], 0)

    def test_isolated_operation_is_a_vertex(self):
        graph = build_graph(create_record_fixture())
        self.assertIn((OPERATION, "21.T/o4"), graph.graph)
        self.assertEqual(list(graph.graph.predecessors((OPERATION, "21.T/o4"))), [])

    def test_equal_pairs_in_different_records_are_distinct(self):
        graph = build_graph(create_attribute_fixture())
        csv_vertices = [v for v in graph.vertices(ATTRIBUTE) if v[1].endswith("content-type=text/csv")]
        self.assertEqual(len(csv_vertices), 2)

    def test_dangling_operation_reference(self):
        ecosystem = create_record_fixture()
        record = InformationRecord.data_fdo(pid("f9"), pid("p0"), [("title", "t")], [pid("o99")])
        with self.assertRaises(DanglingReferenceError):
            build_graph(ecosystem.with_record(record))

    def test_universal_operation(self):
        ecosystem = create_attribute_fixture().with_operation(OperationSpec(pid("o9")))
        graph = build_graph(ecosystem)
        self.assertTrue(graph.is_universal((OPERATION, "21.T/o9")))
        relation = associations_from_graph(graph)
        self.assertEqual({f for f, o in relation if o == pid("o9")}, set(ecosystem.records))
        self.assertEqual(graph.check_invariants(), [])

    def test_reachable_operations(self):
        graph = build_graph(create_profile_fixture())
        self.assertEqual(reachable_operations(graph, pid("f1")), {pid("o1"), pid("o2"), pid("o3")})
        self.assertEqual(reachable_operations(graph, pid("zz")), set())


class TestCompareWithEngine(unittest.TestCase):

    def test_agreement(self):
        ecosystem = create_profile_fixture()
        divergence = compare_with_engine(build_graph(ecosystem), create_engine(ecosystem))
        self.assertTrue(divergence.agrees)
        self.assertEqual(divergence.describe(), [])

    def test_value_constraint_divergence(self):
        operation = OperationSpec(pid("o9"), (RequiredInput("content-type", "text/csv"),))
        ecosystem = create_attribute_fixture().with_operation(operation)
        divergence = compare_with_engine(build_graph(ecosystem), create_engine(ecosystem))
        self.assertFalse(divergence.agrees)
        self.assertEqual(divergence.only_in_graph, {(pid("f2"), pid("o9"))})
        self.assertEqual(divergence.describe(), ["graph only: 21.T/f2 -> 21.T/o9"])


class TestExportGraph(unittest.TestCase):
    """Test suite for DOT, edge-list and CSV export."""

    def test_dot_is_deterministic(self):
        first = export_graph(build_graph(create_record_fixture()), "dot")
        second = export_graph(build_graph(create_record_fixture()), "dot")
        self.assertEqual(first, second)
        text = first.decode("utf-8")
        self.assertTrue(text.startswith("digraph g {\n"))
        self.assertTrue(text.endswith("}\n"))
        self.assertNotIn("\r", text)
        self.assertIn('[label="references"]', text)

    def test_edge_list(self):
        data = export_graph(build_graph(create_record_fixture()), "edge-list").decode("utf-8")
        lines = data.splitlines()
        self.assertEqual(len(lines), 12)
        self.assertTrue(lines[0].startswith("fdo:21.T/f1\tattribute:"))
        self.assertTrue(all(len(line.split("\t")) == 3 for line in lines))

    def test_csv_matches_edge_list(self):
        graph = build_graph(create_record_fixture())
        rows = list(csv.reader(io.StringIO(export_graph(graph, "csv").decode("utf-8"))))
        self.assertEqual(rows[0], ["source", "target", "label"])
        edges = [line.split("\t") for line in export_graph(graph, "edge-list").decode("utf-8").splitlines()]
        self.assertEqual(rows[1:], edges)

    def test_fdo_vertices_come_first(self):
        text = export_graph(build_graph(create_profile_fixture()), "dot").decode("utf-8")
        self.assertLess(text.index('"fdo:21.T/f1"'), text.index('"profile:21.T/p1"'))
        self.assertLess(text.index('"profile:21.T/p1"'), text.index('"operation:21.T/o1"'))

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            export_graph(build_graph(create_record_fixture()), "svg")


if __name__ == '__main__':
    unittest.main()
