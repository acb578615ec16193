"""
Measures

Component and attribute counts, instrumented query costs (Q, R, S) and record
write counts for association updates (T, U), each checked against its formula
or concrete ceiling. Ceilings use constant 1 under the elementary-step
definition of the engines.
"""

import logging
import tempfile
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from fdots.core.errors import EmptySampleError
from fdots.core.fixtures import REFERENCE_PREFIX
from fdots.core.model import (
    AssociationModel,
    Ecosystem,
    InformationRecord,
    OperationSpec,
    RESERVED_KEYS,
    RequiredInput,
)
from fdots.core.pid import Pid, PidMinter
from fdots.engines import StepCounter, create_engine
from fdots.engines.profile import ProfileEngine
from fdots.graph import ATTRIBUTE, FDO, OPERATION, PROFILE, associations_from_graph, build_graph
from fdots.metrics.oracle import brute_force_component_count, relation_maps
from fdots.registries import dump_ecosystem

logger = logging.getLogger(__name__)

Pair = Tuple[Pid, Pid]

ALL_MEASURES = ("C", "A", "Q", "R", "S", "T", "U")

CONVERSION_NOTE = (
    "attribute typing: converting the FDO record into a key lookup is counted "
    "as one read per attribute"
)


@dataclass(frozen=True)
class MetricCheck:
    """
    One measured value against its formula value or ceiling.

    Exact checks (C, A, T, U) pass on equality, ceiling checks (Q, R, S)
    when the measured value does not exceed the ceiling.
    """

    model: str
    measure: str
    subject: str
    measured: int
    ceiling: int
    exact: bool = False

    @property
    def passed(self) -> bool:
        if self.exact:
            return self.measured == self.ceiling
        return self.measured <= self.ceiling

    @property
    def ratio(self) -> float:
        return self.measured / self.ceiling if self.ceiling else (0.0 if not self.measured else float("inf"))

    def row(self) -> Dict[str, object]:
        return {
            "model": self.model,
            "measure": self.measure,
            "measured": self.measured,
            "ceiling": self.ceiling,
            "pass": self.passed,
        }


@dataclass
class MetricsReport:
    """
    Evaluated measures of one ecosystem.

    Attributes:
        model: Association model
        checks: Every individual check, in evaluation order
        inputs: FDO, operation, profile and definition counts, plus the per-FDO and
            per-operation association attribute counts under attribute typing
        notes: Remarks on how costs were counted
    """

    model: str
    checks: List[MetricCheck] = field(default_factory=list)
    inputs: Dict[str, object] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def by_measure(self, measure: str) -> List[MetricCheck]:
        return [c for c in self.checks if c.measure == measure]

    def value(self, measure: str) -> Optional[int]:
        """Measured value of a single-valued measure (C or A)."""
        checks = self.by_measure(measure)
        return checks[0].measured if len(checks) == 1 else None

    def values_by_subject(self, measure: str) -> Dict[str, int]:
        return {c.subject: c.measured for c in self.by_measure(measure)}

    def violations(self) -> List[MetricCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.violations()

    def summary(self) -> List[Dict[str, object]]:
        """One aggregated row per measure, in canonical measure order."""
        rows = []
        for measure in ALL_MEASURES:
            checks = self.by_measure(measure)
            if not checks:
                continue
            rows.append(
                {
                    "model": self.model,
                    "measure": measure,
                    "count": len(checks),
                    "measured": max(c.measured for c in checks),
                    "ceiling": max(c.ceiling for c in checks),
                    "max_ratio": max(c.ratio for c in checks),
                    "pass": all(c.passed for c in checks),
                }
            )
        return rows


# Component and attribute counts

def count_components(ecosystem: Ecosystem) -> int:
    """
    Number of components involved in association, by formula.

    record: FDOs + operations + 1; profile: FDOs + operations + profiles + 2;
    attribute: FDOs + operations + attribute definitions.
    """
    base = len(ecosystem.records) + len(ecosystem.operations)
    if ecosystem.model is AssociationModel.RECORD:
        return base + 1
    if ecosystem.model is AssociationModel.PROFILE:
        return base + len(ecosystem.profiles) + 2
    return base + len(ecosystem.attribute_defs)


def count_attributes(ecosystem: Ecosystem) -> int:
    """
    Count ``has-attribute`` edges of the graph model lying on at least one
    FDO-operation association path.
    """
    graph = build_graph(ecosystem)
    edges: Set[Tuple[tuple, tuple]] = set()

    if graph.model is AssociationModel.RECORD:
        for fdo in graph.vertices(FDO):
            for attribute in graph.successors(fdo, ATTRIBUTE):
                if graph.successors(attribute, OPERATION):
                    edges.add((fdo, attribute))
        return len(edges)

    if graph.model is AssociationModel.PROFILE:
        for fdo in graph.vertices(FDO):
            for attribute in graph.successors(fdo, ATTRIBUTE):
                for profile in graph.successors(attribute, PROFILE):
                    lists = [a for a in graph.successors(profile, ATTRIBUTE) if graph.successors(a, OPERATION)]
                    if lists:
                        edges.add((fdo, attribute))
                        edges.update((profile, a) for a in lists)
        return len(edges)

    for f, o in associations_from_graph(graph):
        fdo, op = (FDO, str(f)), (OPERATION, str(o))
        owned = set(graph.successors(fdo, ATTRIBUTE))
        for requirement in graph.successors(op, ATTRIBUTE):
            edges.add((op, requirement))
            edges.update((fdo, t) for t in graph.successors(requirement, ATTRIBUTE) if t in owned)
    return len(edges)


def _key_presence_relation(ecosystem: Ecosystem) -> List[Pair]:
    return create_engine(ecosystem, use_index=True, match_values=False).relation()


def attribute_inputs(ecosystem: Ecosystem) -> Tuple[Dict[Pid, int], Dict[Pid, int]]:
    """
    Per-FDO and per-operation counts of attributes taking part in
    association under attribute typing, with key-presence matching.
    """
    ops_by_fdo, fdos_by_op = relation_maps(set(_key_presence_relation(ecosystem)))
    per_fdo: Dict[Pid, int] = {}
    for f, ops in ops_by_fdo.items():
        keys = {r.key for o in ops for r in ecosystem.operations[o].required_inputs}
        per_fdo[f] = len({(k, v) for k, v in ecosystem.records[f].pairs() if k in keys})
    per_op = {
        o: len({r.encode() for r in ecosystem.operations[o].required_inputs})
        for o in fdos_by_op
    }
    return per_fdo, per_op


def attribute_formula(ecosystem: Ecosystem) -> int:
    """
    Number of association attributes evaluated from the relation.

    record: one operation reference per associated pair; profile: associated
    FDOs plus the profiles they use;
    attribute: matching FDO attributes plus required inputs of associated operations.
    """
    relation = _key_presence_relation(ecosystem)
    if ecosystem.model is AssociationModel.RECORD:
        return len(relation)
    if ecosystem.model is AssociationModel.PROFILE:
        fdos = {f for f, _ in relation}
        profiles = {ecosystem.records[f].profile_ref for f in fdos}
        return len(fdos) + len(profiles)
    per_fdo, per_op = attribute_inputs(ecosystem)
    return sum(per_fdo.values()) + sum(per_op.values())


def ecosystem_inputs(ecosystem: Ecosystem) -> Dict[str, object]:
    inputs: Dict[str, object] = {
        "F": len(ecosystem.records),
        "O": len(ecosystem.operations),
        "P": len(ecosystem.profiles),
        "A_def": len(ecosystem.attribute_defs),
    }
    if ecosystem.model is AssociationModel.ATTRIBUTE:
        per_fdo, per_op = attribute_inputs(ecosystem)
        inputs["per_fdo"] = [per_fdo[f] for f in sorted(per_fdo)]
        inputs["per_op"] = [per_op[o] for o in sorted(per_op)]
    return inputs


# Query cost ceilings

def _a_f(ecosystem: Ecosystem, f: Pid) -> int:
    return len(ecosystem.records[f].attributes)


def _a_o(ecosystem: Ecosystem, o: Pid) -> int:
    return len(ecosystem.operations[o].required_inputs)


def _o_pf(ecosystem: Ecosystem, f: Pid) -> int:
    ref = ecosystem.records[f].profile_ref
    profile = ecosystem.profile(ref) if ref else None
    return len(profile.operation_list) if profile else 0


def query_ceiling(ecosystem: Ecosystem, f: Pid, o: Pid) -> int:
    """Ceiling of a single ``is_associated`` query (Q)."""
    a_f = _a_f(ecosystem, f)
    if ecosystem.model is AssociationModel.RECORD:
        return a_f
    if ecosystem.model is AssociationModel.PROFILE:
        return a_f + _o_pf(ecosystem, f)
    a_o = _a_o(ecosystem, o)
    return a_f + a_o + min(a_f, a_o)


def fdos_ceiling(ecosystem: Ecosystem, o: Pid) -> int:
    """Ceiling of ``fdos_for_op`` (R)."""
    total = sum(len(r.attributes) for r in ecosystem.records.values())
    if ecosystem.model is AssociationModel.RECORD:
        return total
    if ecosystem.model is AssociationModel.PROFILE:
        used = {r.profile_ref for r in ecosystem.records.values() if r.profile_ref}
        return total + sum(len(ecosystem.profiles[p].operation_list) for p in used if p in ecosystem.profiles)
    a_o = _a_o(ecosystem, o)
    return total + a_o + sum(min(len(r.attributes), a_o) for r in ecosystem.records.values())


def ops_ceiling(ecosystem: Ecosystem, f: Pid) -> int:
    """Ceiling of ``ops_for_fdo`` (S)."""
    a_f = _a_f(ecosystem, f)
    if ecosystem.model is AssociationModel.RECORD:
        return a_f
    if ecosystem.model is AssociationModel.PROFILE:
        return a_f + _o_pf(ecosystem, f)
    return a_f + sum(
        len(op.required_inputs) + min(a_f, len(op.required_inputs))
        for op in ecosystem.operations.values()
    )


def sample_pairs(ecosystem: Ecosystem, n: int, seed: int = 0) -> List[Pair]:
    """
    Draw ``n`` (fdo, operation) query pairs with replacement.

    Raises:
        EmptySampleError: If ``n`` is not positive or F or O is empty
    """
    fdos, ops = sorted(ecosystem.records), sorted(ecosystem.operations)
    if n <= 0 or not fdos or not ops:
        raise EmptySampleError(
            f"Cannot sample {n} pairs from {len(fdos)} FDOs and {len(ops)} operations"
        )
    rng = np.random.default_rng(seed)
    fi = rng.integers(0, len(fdos), size=n)
    oi = rng.integers(0, len(ops), size=n)
    return [(fdos[i], ops[j]) for i, j in zip(fi, oi)]


@dataclass
class QueryCosts:
    q: List[MetricCheck] = field(default_factory=list)
    r: List[MetricCheck] = field(default_factory=list)
    s: List[MetricCheck] = field(default_factory=list)

    def all(self) -> List[MetricCheck]:
        return [*self.q, *self.r, *self.s]


def measure_query_costs(
    ecosystem: Ecosystem,
    sample: Sequence[Pair],
    match_values: bool = True,
) -> QueryCosts:
    """
    Run instrumented queries on a scanning engine.

    Every sampled pair gives one Q measurement, every distinct operation in
    the sample one R measurement and every distinct FDO one S measurement.

    Raises:
        EmptySampleError: If ``sample`` is empty
    """
    if not sample:
        raise EmptySampleError("Query cost measurement needs at least one (fdo, operation) pair")
    engine = create_engine(ecosystem, use_index=False, match_values=match_values)
    model = ecosystem.model.value
    counter = StepCounter()
    costs = QueryCosts()

    for f, o in sample:
        with counter.measure() as m:
            engine.is_associated(f, o, counter)
        costs.q.append(MetricCheck(model, "Q", f"{f} {o}", m.steps, query_ceiling(ecosystem, f, o)))

    for o in sorted({o for _, o in sample}):
        with counter.measure() as m:
            engine.fdos_for_op(o, counter)
        costs.r.append(MetricCheck(model, "R", str(o), m.steps, fdos_ceiling(ecosystem, o)))

    for f in sorted({f for f, _ in sample}):
        with counter.measure() as m:
            engine.ops_for_fdo(f, counter)
        costs.s.append(MetricCheck(model, "S", str(f), m.steps, ops_ceiling(ecosystem, f)))

    logger.debug(f"Measured {len(costs.all())} query costs on {ecosystem!r}")
    return costs


# Update costs

@dataclass(frozen=True)
class NewOperationScenario:
    operation: OperationSpec
    targets: FrozenSet[Pid] = frozenset()


@dataclass(frozen=True)
class NewFdoScenario:
    record: InformationRecord
    ops: Optional[FrozenSet[Pid]] = None


Scenario = Union[NewOperationScenario, NewFdoScenario]


def expected_writes(ecosystem: Ecosystem, scenario: Scenario) -> int:
    """
    Formula value of a scenario.

    New operation: record one write per target, profile one per covering profile,
    attribute 0.
    New FDO: record one write per operation, profile 0, attribute 0.
    """
    model = ecosystem.model
    if isinstance(scenario, NewOperationScenario):
        if model is AssociationModel.RECORD:
            return len(scenario.targets)
        if model is AssociationModel.PROFILE:
            return len({ecosystem.records[f].profile_ref for f in scenario.targets})
        return 0
    if model is AssociationModel.RECORD:
        return len(scenario.ops or ())
    return 0


def measure_update_costs(
    ecosystem: Ecosystem,
    scenarios: Iterable[Scenario],
) -> List[MetricCheck]:
    """
    Apply update scenarios to a registry store and count record writes.

    The ecosystem is dumped into a scratch store that is deleted afterwards.
    Each scenario is run by a scanning engine on the current snapshot and
    persisted with ``RegistryStore.apply_update``; its measured value is the
    number of ``update`` lines it added to the write log.
    """
    scenarios = list(scenarios)
    with tempfile.TemporaryDirectory(prefix="fdots-updates-") as scratch:
        store = dump_ecosystem(ecosystem, scratch)
        checks = []
        for scenario in scenarios:
            current = store.snapshot()
            engine = create_engine(current, use_index=False)
            expected = expected_writes(current, scenario)
            log_before = len(store.write_log)
            if isinstance(scenario, NewOperationScenario):
                report = engine.associate_new_operation(scenario.operation, scenario.targets)
                measure, subject = "T", scenario.operation.pid
            else:
                report = engine.associate_new_fdo(scenario.record, scenario.ops)
                measure, subject = "U", scenario.record.pid
            store.apply_update(report)
            measured = sum(1 for e in store.write_log[log_before:] if e.action == "update")
            checks.append(
                MetricCheck(ecosystem.model.value, measure, str(subject), measured, expected, exact=True)
            )
    logger.info(f"Measured {len(checks)} update scenarios on {ecosystem!r}")
    return checks


def _domain_pairs(record: InformationRecord) -> List[Tuple[str, str]]:
    return [(k, v) for k, v in record.pairs() if k not in RESERVED_KEYS]


def default_update_scenarios(
    ecosystem: Ecosystem,
    n_operations: int = 1,
    n_fdos: int = 1,
    seed: int = 0,
) -> List[Scenario]:
    """
    Random update scenarios suited to the ecosystem's model.

    New operations come first and target a random subset of FDOs (record
    typing), a union of random profile classes (profile typing), or declare
    random required inputs (attribute typing). New FDOs copy the domain
    attributes and profile of a random existing FDO.
    """
    rng = np.random.default_rng(seed)
    minter = PidMinter(used=ecosystem.all_pids())
    prefix = ecosystem.default_prefix(REFERENCE_PREFIX)
    model = ecosystem.model
    fdos = sorted(ecosystem.records)
    ops = sorted(ecosystem.operations)
    domain_keys = sorted(d.key for d in ecosystem.attribute_defs.values() if d.key not in RESERVED_KEYS)
    scenarios: List[Scenario] = []

    blocks: List[FrozenSet[Pid]] = []
    if model is AssociationModel.PROFILE:
        members = ProfileEngine(ecosystem, use_index=False).members_by_profile()
        blocks = [frozenset(m) for _, m in sorted(members.items()) if m]

    for _ in range(n_operations):
        pid = minter.mint(prefix)
        if model is AssociationModel.RECORD:
            chosen = rng.random(len(fdos)) < 0.5 if fdos else []
            targets = frozenset(f for f, keep in zip(fdos, chosen) if keep)
            scenarios.append(NewOperationScenario(OperationSpec(pid, (), "exec:new"), targets))
        elif model is AssociationModel.PROFILE:
            chosen = rng.random(len(blocks)) < 0.5 if blocks else []
            targets = frozenset(f for block, keep in zip(blocks, chosen) if keep for f in block)
            scenarios.append(NewOperationScenario(OperationSpec(pid, (), "exec:new"), targets))
        else:
            inputs = ()
            if domain_keys:
                count = int(rng.integers(1, min(2, len(domain_keys)) + 1))
                picked = sorted(rng.choice(len(domain_keys), size=count, replace=False))
                inputs = tuple(RequiredInput(domain_keys[i]) for i in picked)
            scenarios.append(NewOperationScenario(OperationSpec(pid, inputs, "exec:new")))

    if fdos:
        for _ in range(n_fdos):
            template = ecosystem.records[fdos[int(rng.integers(0, len(fdos)))]]
            record = InformationRecord.data_fdo(
                minter.mint(prefix), template.profile_ref, _domain_pairs(template)
            )
            requested = None
            if model is AssociationModel.RECORD:
                chosen = rng.random(len(ops)) < 0.5 if ops else []
                requested = frozenset(o for o, keep in zip(ops, chosen) if keep)
            scenarios.append(NewFdoScenario(record, requested))
    return scenarios


# Evaluation

def evaluate(
    ecosystem: Ecosystem,
    sample_size: int = 100,
    seed: int = 0,
    measures: Optional[Iterable[str]] = None,
    sample: Optional[Sequence[Pair]] = None,
    scenarios: Optional[Sequence[Scenario]] = None,
    match_values: bool = True,
) -> MetricsReport:
    """
    Evaluate the requested measures on ``ecosystem``.

    Args:
        ecosystem: Ecosystem to measure
        sample_size: Number of sampled query pairs when ``sample`` is not given
        seed: Seed for sampling and default update scenarios
        measures: Subset of C, A, Q, R, S, T, U (all by default)
        sample: Explicit query pairs
        scenarios: Explicit update scenarios
        match_values: Key-value matching for attribute typing queries

    Returns:
        MetricsReport: All checks with their pass state
    """
    wanted = [m.upper() for m in (measures or ALL_MEASURES)]
    unknown = set(wanted) - set(ALL_MEASURES)
    if unknown:
        raise ValueError(f"Unknown measures {sorted(unknown)}. Valid measures: {list(ALL_MEASURES)}")

    model = ecosystem.model.value
    report = MetricsReport(model=model, inputs=ecosystem_inputs(ecosystem))

    if "C" in wanted:
        report.checks.append(
            MetricCheck(model, "C", "ecosystem", brute_force_component_count(ecosystem),
                        count_components(ecosystem), exact=True)
        )
    if "A" in wanted:
        report.checks.append(
            MetricCheck(model, "A", "ecosystem", count_attributes(ecosystem),
                        attribute_formula(ecosystem), exact=True)
        )

    if {"Q", "R", "S"} & set(wanted):
        if sample is None and ecosystem.records and ecosystem.operations:
            sample = sample_pairs(ecosystem, sample_size, seed)
        if sample:
            costs = measure_query_costs(ecosystem, sample, match_values=match_values)
            for measure, checks in (("Q", costs.q), ("R", costs.r), ("S", costs.s)):
                if measure in wanted:
                    report.checks.extend(checks)
        else:
            report.notes.append("query costs skipped: the ecosystem has no FDO or no operation")
        if ecosystem.model is AssociationModel.ATTRIBUTE:
            report.notes.append(CONVERSION_NOTE)

    if {"T", "U"} & set(wanted):
        if scenarios is None:
            scenarios = default_update_scenarios(ecosystem, seed=seed)
        chosen = [
            s for s in scenarios
            if ("T" in wanted and isinstance(s, NewOperationScenario))
            or ("U" in wanted and isinstance(s, NewFdoScenario))
        ]
        report.checks.extend(measure_update_costs(ecosystem, chosen))

    status = "passed" if report.passed else f"{len(report.violations())} violations"
    logger.info(f"Evaluated {len(report.checks)} checks on {ecosystem!r}: {status}")
    return report
