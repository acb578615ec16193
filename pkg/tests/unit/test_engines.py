"""
Unit tests for the association engines.

Tests queries, step accounting, the query index, updates and the engine
factory for record, profile and attribute typing.
"""

import unittest

from fdots.core.errors import (
    DuplicatePidError,
    KindMismatchError,
    ModelMismatchError,
    ModelUnsetError,
    UnexpressibleTargetSetError,
    UnknownPidError,
)
from fdots.core.fixtures import (
    create_attribute_fixture,
    create_profile_fixture,
    create_record_fixture,
    reference_relation,
)
from fdots.core.model import (
    OPERATION_REF_KEY,
    Ecosystem,
    InformationRecord,
    OperationSpec,
    RequiredInput,
)
from fdots.core.pid import Pid
from fdots.engines import (
    AttributeEngine,
    EngineFactory,
    ProfileEngine,
    RecordEngine,
    StepCounter,
    UpdateReport,
    create_engine,
    insert_operation_ref,
)
from fdots.metrics.oracle import brute_force_relation, exhaustive_relation


def pid(name):
    return Pid(f"21.T/{name}")


def steps(engine, method, *args):
    counter = StepCounter()
    with counter.measure() as m:
        getattr(engine, method)(*args, counter=counter)
    return m.steps


class TestStepCounter(unittest.TestCase):

    def test_measure_block(self):
        counter = StepCounter()
        counter.tick()
        with counter.measure() as m:
            counter.tick(3)
        self.assertEqual(m.steps, 3)
        self.assertEqual(counter.steps, 4)
        counter.reset()
        self.assertEqual(counter.steps, 0)


class TestRelations(unittest.TestCase):
    """Every engine reproduces the reference relation, scanning or indexed."""

    def test_reference_relation(self):
        for factory in (create_record_fixture, create_profile_fixture, create_attribute_fixture):
            ecosystem = factory()
            for use_index in (False, True):
                with self.subTest(model=ecosystem.model.value, indexed=use_index):
                    engine = create_engine(ecosystem, use_index=use_index)
                    self.assertEqual(set(engine.relation()), reference_relation())
                    self.assertEqual(exhaustive_relation(engine), reference_relation())
            self.assertEqual(brute_force_relation(ecosystem), reference_relation())

    def test_queries_agree(self):
        engine = create_engine(create_profile_fixture())
        self.assertEqual(engine.ops_for_fdo(pid("f1")), {pid("o1"), pid("o2"), pid("o3")})
        self.assertEqual(engine.fdos_for_op(pid("o3")), {pid("f1"), pid("f2"), pid("f3")})
        self.assertEqual(engine.fdos_for_op(pid("o4")), frozenset())
        self.assertTrue(engine.is_associated("21.T/f4", "21.T/o5"))
        self.assertFalse(engine.is_associated("21.T/f4", "21.T/o3"))

    def test_unknown_and_mismatched_pids(self):
        engine = create_engine(create_record_fixture())
        with self.assertRaises(UnknownPidError):
            engine.is_associated(pid("zz"), pid("o1"))
        with self.assertRaises(KindMismatchError):
            engine.is_associated(pid("o1"), pid("o1"))
        with self.assertRaises(KindMismatchError):
            engine.ops_for_fdo(pid("p0"))
        with self.assertRaises(UnknownPidError):
            engine.fdos_for_op(pid("zz"))


class TestStepAccounting(unittest.TestCase):
    """Scanning engines tick one step per attribute or list element read."""

    def test_record_typing(self):
        engine = RecordEngine(create_record_fixture(), use_index=False)
        self.assertEqual(steps(engine, "is_associated", pid("f1"), pid("o2")), 2)
        self.assertEqual(steps(engine, "is_associated", pid("f1"), pid("o4")), 5)
        self.assertEqual(steps(engine, "ops_for_fdo", pid("f1")), 5)
        self.assertEqual(steps(engine, "fdos_for_op", pid("o3")), 8)

    def test_profile_typing(self):
        engine = ProfileEngine(create_profile_fixture(), use_index=False)
        self.assertEqual(steps(engine, "is_associated", pid("f1"), pid("o3")), 5)
        self.assertEqual(steps(engine, "is_associated", pid("f4"), pid("o3")), 3)
        self.assertEqual(steps(engine, "ops_for_fdo", pid("f1")), 5)
        # each distinct profile list is read once
        self.assertEqual(steps(engine, "fdos_for_op", pid("o3")), 13)

    def test_attribute_typing(self):
        engine = AttributeEngine(create_attribute_fixture(), use_index=False)
        self.assertEqual(steps(engine, "is_associated", pid("f1"), pid("o1")), 7)
        self.assertEqual(steps(engine, "ops_for_fdo", pid("f1")), 15)
        self.assertEqual(steps(engine, "fdos_for_op", pid("o3")), 19)

    def test_indexed_queries_take_no_steps(self):
        engine = create_engine(create_attribute_fixture(), use_index=True)
        self.assertEqual(steps(engine, "ops_for_fdo", pid("f1")), 0)

    def test_default_counter(self):
        engine = create_engine(create_record_fixture(), use_index=False)
        engine.ops_for_fdo(pid("f2"))
        self.assertEqual(engine.step_counter.steps, 3)


class TestQueryIndex(unittest.TestCase):

    def test_handshake(self):
        for factory in (create_record_fixture, create_profile_fixture, create_attribute_fixture):
            with self.subTest(fixture=factory.__name__):
                index = create_engine(factory()).index
                self.assertEqual(index.association_count(), 6)
                self.assertTrue(index.check_handshake())

    def test_profile_maps(self):
        index = create_engine(create_profile_fixture()).index
        self.assertEqual(index.profiles_by_fdo[pid("f3")], pid("p2"))
        self.assertEqual(index.ops_by_profile[pid("p1")], (pid("o1"), pid("o2"), pid("o3")))
        self.assertEqual(index.fdos_by_op[pid("o4")], frozenset())

    def test_attribute_lists(self):
        index = create_engine(create_attribute_fixture()).index
        self.assertEqual(len(index.attrs_by_fdo[pid("f1")]), 5)
        self.assertEqual(len(index.attrs_by_op[pid("o1")]), 1)
        self.assertEqual(index.profiles_by_fdo, {})


class TestRecordUpdates(unittest.TestCase):

    def setUp(self):
        self.engine = RecordEngine(create_record_fixture())

    def test_new_operation_writes_every_target(self):
        report = self.engine.associate_new_operation(OperationSpec(pid("o9")), [pid("f2"), pid("f3")])
        self.assertEqual(report.record_writes, 2)
        self.assertEqual(report.registrations, [OperationSpec(pid("o9"))])
        self.assertEqual(report.implied, {pid("f2"), pid("f3")})
        self.assertEqual(
            report.ecosystem.records[pid("f2")].operation_refs, ["21.T/o3", "21.T/o9"]
        )
        self.assertNotIn(pid("o9"), self.engine.ecosystem.operations)

    def test_new_fdo_writes_one_reference_each(self):
        record = InformationRecord.data_fdo(pid("f9"), pid("p0"), [("title", "t")])
        report = self.engine.associate_new_fdo(record, [pid("o2"), pid("o1")])
        self.assertEqual(report.record_writes, 2)
        self.assertEqual(report.registrations[0].operation_refs, [])
        self.assertEqual(report.updates[-1].operation_refs, ["21.T/o1", "21.T/o2"])
        self.assertEqual(
            create_engine(report.ecosystem).ops_for_fdo(pid("f9")), {pid("o1"), pid("o2")}
        )

    def test_duplicate_operation(self):
        with self.assertRaises(DuplicatePidError):
            self.engine.associate_new_operation(OperationSpec(pid("o1")), [])

    def test_insert_operation_ref_keeps_layout(self):
        record = create_record_fixture().records[pid("f4")]
        updated = insert_operation_ref(record, pid("o1"))
        self.assertEqual(updated.keys()[:2], [OPERATION_REF_KEY, OPERATION_REF_KEY])
        self.assertEqual(updated.operation_refs, ["21.T/o5", "21.T/o1"])


class TestProfileUpdates(unittest.TestCase):

    def setUp(self):
        self.engine = ProfileEngine(create_profile_fixture())

    def test_new_operation_writes_covering_profiles(self):
        report = self.engine.associate_new_operation(OperationSpec(pid("o9")), [pid("f2"), pid("f3")])
        self.assertEqual(report.record_writes, 1)
        self.assertEqual(report.updates[0].pid, pid("p2"))
        self.assertEqual(report.ecosystem.profiles[pid("p2")].operation_list, (pid("o3"), pid("o9")))

    def test_unexpressible_targets(self):
        with self.assertRaises(UnexpressibleTargetSetError) as ctx:
            self.engine.associate_new_operation(OperationSpec(pid("o9")), [pid("f1"), pid("f2")])
        self.assertEqual(ctx.exception.uncovered, [pid("f2")])

    def test_new_fdo_inherits_profile(self):
        record = InformationRecord.data_fdo(pid("f9"), pid("p2"), [("title", "t")])
        report = self.engine.associate_new_fdo(record)
        self.assertEqual(report.record_writes, 0)
        self.assertEqual(report.implied, {pid("o3")})

    def test_new_fdo_model_mismatch(self):
        record = InformationRecord.data_fdo(pid("f9"), pid("p2"), [("title", "t")])
        with self.assertRaises(ModelMismatchError):
            self.engine.associate_new_fdo(record, [pid("o1")])

    def test_members_by_profile(self):
        members = self.engine.members_by_profile()
        self.assertEqual(members[pid("p2")], {pid("f2"), pid("f3")})


class TestAttributeUpdates(unittest.TestCase):

    def setUp(self):
        self.engine = AttributeEngine(create_attribute_fixture())

    def test_new_operation_writes_nothing(self):
        operation = OperationSpec(pid("o9"), (RequiredInput("content-type"),))
        report = self.engine.associate_new_operation(operation, [pid("f4")])
        self.assertEqual(report.record_writes, 0)
        self.assertEqual(report.implied, {pid("f1"), pid("f2"), pid("f3")})

    def test_new_fdo_implied_by_attributes(self):
        record = InformationRecord.data_fdo(pid("f9"), pid("p0"), [("title", "t"), ("license", "MIT")])
        report = self.engine.associate_new_fdo(record)
        self.assertEqual(report.implied, {pid("o2")})
        with self.assertRaises(ModelMismatchError):
            self.engine.associate_new_fdo(record, [pid("o1")])

    def test_value_constraints(self):
        operation = OperationSpec(pid("o9"), (RequiredInput("content-type", "text/csv"),))
        ecosystem = create_attribute_fixture().with_operation(operation)
        strict = AttributeEngine(ecosystem, match_values=True)
        loose = AttributeEngine(ecosystem, match_values=False)
        self.assertEqual(strict.fdos_for_op(pid("o9")), {pid("f1"), pid("f3")})
        self.assertEqual(loose.fdos_for_op(pid("o9")), {pid("f1"), pid("f2"), pid("f3")})

    def test_operation_without_inputs_applies_to_every_fdo(self):
        ecosystem = create_attribute_fixture().with_operation(OperationSpec(pid("o9")))
        engine = AttributeEngine(ecosystem, use_index=False)
        self.assertEqual(engine.fdos_for_op(pid("o9")), frozenset(ecosystem.records))


class TestUpdateReport(unittest.TestCase):

    def test_write_count_must_match(self):
        with self.assertRaises(ValueError):
            UpdateReport(model=RecordEngine.model, record_writes=1)


class TestEngineFactory(unittest.TestCase):
    """Test suite for EngineFactory."""

    def test_engine_per_model(self):
        self.assertIsInstance(create_engine(create_record_fixture()), RecordEngine)
        self.assertIsInstance(create_engine(create_profile_fixture()), ProfileEngine)
        engine = create_engine(create_attribute_fixture(), match_values=False)
        self.assertIsInstance(engine, AttributeEngine)
        self.assertFalse(engine.match_values)

    def test_model_override(self):
        engine = create_engine(create_record_fixture(), model="profile", use_index=False)
        self.assertIsInstance(engine, ProfileEngine)

    def test_unset_model(self):
        with self.assertRaises(ModelUnsetError):
            create_engine(Ecosystem.empty(None))

    def test_registered_models(self):
        self.assertEqual(EngineFactory.registered_models(), ["record", "profile", "attribute"])


if __name__ == '__main__':
    unittest.main()
