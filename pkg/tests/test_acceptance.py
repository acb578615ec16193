"""
Acceptance Tests for fdots

Tests cover:
- Reference relation through engines, graph models and the command line
- Exact component and attribute formulas on generated ecosystems
- Query costs within their ceilings and the model ordering claims
- Update write accounting
- Oracle equivalence, conversion and persistence properties
"""

import tempfile

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from fdots.cli import main
from fdots.core.fixtures import get_reference_fixture
from fdots.core.model import AssociationModel
from fdots.core.pid import Pid, PidMinter
from fdots.engines import create_engine
from fdots.graph import associations_from_graph, build_graph
from fdots.interop import check_consistency, convert
from fdots.metrics import (
    GeneratorParams,
    NewOperationScenario,
    brute_force_relation,
    check_scaling,
    compare_models,
    count_attributes,
    count_components,
    default_update_scenarios,
    evaluate,
    generate_ecosystem,
    scaling_report,
)
from fdots.metrics.oracle import brute_force_attribute_count, brute_force_component_count
from fdots.metrics.scaling import DEFAULT_LADDER
from fdots.registries import dump_ecosystem, load_ecosystem

MODELS = list(AssociationModel)

ecosystem_params = st.builds(
    GeneratorParams,
    model=st.sampled_from(MODELS),
    n_fdos=st.integers(min_value=1, max_value=30),
    n_ops=st.integers(min_value=1, max_value=15),
    n_profiles=st.integers(min_value=1, max_value=4),
    association_density=st.floats(min_value=0.0, max_value=1.0),
    value_constraint_rate=st.sampled_from([0.0, 0.5]),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)

PROPERTY_SETTINGS = settings(
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def handshake_holds(ecosystem) -> bool:
    engine = create_engine(ecosystem, use_index=False)
    by_fdo = sum(len(engine.ops_for_fdo(f)) for f in ecosystem.records)
    by_op = sum(len(engine.fdos_for_op(o)) for o in ecosystem.operations)
    return by_fdo == by_op


# ============================================================================
# Reference Relation
# ============================================================================

@pytest.mark.integration
class TestReferenceRelation:

    @pytest.mark.parametrize("model", [m.value for m in MODELS])
    def test_engine_and_graph(self, model, expected_relation):
        ecosystem = get_reference_fixture(model)
        assert set(create_engine(ecosystem).relation()) == expected_relation
        assert set(create_engine(ecosystem, use_index=False).relation()) == expected_relation
        assert associations_from_graph(build_graph(ecosystem)) == expected_relation

    @pytest.mark.parametrize("model", [m.value for m in MODELS])
    def test_command_line(self, model, expected_relation, tmp_path, capsys):
        store = str(tmp_path / model)
        assert main(["--store", store, "--model", model, "init", "--fixture", "reference"]) == 0
        capsys.readouterr()

        relation = set()
        for f in ("f1", "f2", "f3", "f4"):
            assert main(["--store", store, "query", "ops-for", f]) == 0
            relation.update((Pid(f"21.T/{f}"), Pid(line)) for line in capsys.readouterr().out.split())
        assert relation == expected_relation

    def test_reference_counts(self, all_ecosystems):
        assert count_components(all_ecosystems["record"]) == 10
        assert count_attributes(all_ecosystems["record"]) == 6
        assert count_attributes(all_ecosystems["profile"]) == 7


# ============================================================================
# Formulas, Ceilings and Update Accounting
# ============================================================================

@pytest.mark.property
@pytest.mark.slow
class TestMetricProperties:

    @PROPERTY_SETTINGS
    @given(params=ecosystem_params)
    def test_exact_formulas(self, params):
        ecosystem = generate_ecosystem(params)
        assert count_components(ecosystem) == brute_force_component_count(ecosystem)
        assert count_attributes(ecosystem) == brute_force_attribute_count(ecosystem)

    @PROPERTY_SETTINGS
    @given(params=ecosystem_params)
    def test_query_costs_within_ceilings(self, params):
        report = evaluate(generate_ecosystem(params), sample_size=20, seed=params.seed,
                          measures=["C", "A", "Q", "R", "S"])
        assert report.passed, [c.row() for c in report.violations()]

    @pytest.mark.parametrize("model", [m.value for m in MODELS])
    @settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(data=st.data())
    def test_model_ordering_claims(self, model, data):
        params = data.draw(ecosystem_params.map(lambda p: p.with_updates(model=model)))
        comparison = compare_models(generate_ecosystem(params), sample_size=20, seed=params.seed)
        assert comparison.passed, [c.row() for c in comparison.claims if not c.holds]

    @pytest.mark.parametrize("model", [m.value for m in MODELS])
    @settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(data=st.data())
    def test_update_write_accounting(self, model, data):
        params = data.draw(ecosystem_params.map(lambda p: p.with_updates(model=model)))
        ecosystem = generate_ecosystem(params)
        scenarios = default_update_scenarios(ecosystem, n_operations=2, n_fdos=2, seed=params.seed)
        report = evaluate(ecosystem, measures=["T", "U"], scenarios=scenarios)
        assert len(report.checks) == 4
        assert report.passed, [c.row() for c in report.violations()]
        if ecosystem.model is AssociationModel.ATTRIBUTE:
            assert all(c.measured == 0 for c in report.checks)
        if ecosystem.model is AssociationModel.PROFILE:
            assert all(c.measured == 0 for c in report.by_measure("U"))


@pytest.mark.slow
class TestScalingShape:

    def test_attribute_typing_grows_with_requirements(self):
        rows = scaling_report("attribute", ladder=DEFAULT_LADDER, fdo_sample=5)
        assert [row.n_fdos for row in rows] == [10, 100, 1000, 10000]
        assert check_scaling(rows) == []
        assert rows[-1].sum_required > rows[0].sum_required
        assert rows[-1].measured > rows[0].measured

    def test_record_typing_stays_flat(self):
        rows = scaling_report("record", ladder=DEFAULT_LADDER, fdo_sample=50)
        assert check_scaling(rows) == []
        assert all(row.ratio == 1.0 for row in rows)
        # profile reference and three domain attributes, plus about three operation references
        measured = [row.measured for row in rows]
        assert max(measured) - min(measured) <= 2.0, measured
        assert max(measured) <= 10.0, measured


# ============================================================================
# Oracle, Conversion and Persistence Properties
# ============================================================================

@pytest.mark.property
class TestRelationProperties:

    @PROPERTY_SETTINGS
    @given(params=ecosystem_params)
    def test_engines_match_oracle(self, params):
        ecosystem = generate_ecosystem(params)
        oracle = brute_force_relation(ecosystem)
        for use_index in (True, False):
            engine = create_engine(ecosystem, use_index=use_index)
            for f in ecosystem.records:
                assert engine.ops_for_fdo(f) == {o for g, o in oracle if g == f}
            for o in ecosystem.operations:
                assert engine.fdos_for_op(o) == {f for f, p in oracle if p == o}
            for f in list(ecosystem.records)[:5]:
                for o in ecosystem.operations:
                    assert engine.is_associated(f, o) == ((f, o) in oracle)

    @PROPERTY_SETTINGS
    @given(params=ecosystem_params.map(lambda p: p.with_updates(value_constraint_rate=0.0)))
    def test_graph_matches_engine(self, params):
        ecosystem = generate_ecosystem(params)
        assert associations_from_graph(build_graph(ecosystem)) == set(create_engine(ecosystem).relation())

    @PROPERTY_SETTINGS
    @given(params=ecosystem_params)
    def test_conversion_preserves_relation(self, params):
        ecosystem = generate_ecosystem(params)
        expected = create_engine(ecosystem).relation()
        converted = [convert(ecosystem, target) for target in MODELS]
        for target_ecosystem, _ in converted:
            assert create_engine(target_ecosystem).relation() == expected
            back, _ = convert(target_ecosystem, ecosystem.model)
            assert create_engine(back).relation() == expected

        report = check_consistency(
            [ecosystem, *(eco for eco, _ in converted)], [mapping for _, mapping in converted]
        )
        assert report.consistent, report.describe()

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(params=ecosystem_params)
    def test_store_round_trip(self, params):
        ecosystem = generate_ecosystem(params)
        with tempfile.TemporaryDirectory() as root:
            dump_ecosystem(ecosystem, root, overwrite=True)
            assert load_ecosystem(root) == ecosystem

    @pytest.mark.slow
    @pytest.mark.parametrize("model", [m.value for m in MODELS])
    def test_handshake_after_mutations(self, model):
        # 10,000 random mutations, as 200 sequences of 50 steps from fresh seeds
        rng = np.random.default_rng(7)
        steps = 0
        for run in range(200):
            ecosystem = generate_ecosystem(GeneratorParams(model=model, n_fdos=10, n_ops=5, seed=run))
            start = len(ecosystem.records) + len(ecosystem.operations)
            for _ in range(50):
                engine = create_engine(ecosystem, use_index=False)
                scenario = default_update_scenarios(
                    ecosystem, n_operations=1, n_fdos=1, seed=int(rng.integers(2**32))
                )[int(rng.integers(2))]
                if isinstance(scenario, NewOperationScenario):
                    report = engine.associate_new_operation(scenario.operation, scenario.targets)
                else:
                    report = engine.associate_new_fdo(scenario.record, scenario.ops)
                ecosystem = report.ecosystem
                steps += 1
                assert handshake_holds(ecosystem), f"run {run} step {steps}"
                assert create_engine(ecosystem).index.check_handshake()
            assert len(ecosystem.records) + len(ecosystem.operations) == start + 50
        assert steps == 10_000

    @settings(max_examples=100, deadline=None)
    @given(
        reserved=st.sets(st.integers(min_value=1, max_value=50), max_size=20),
        mints=st.integers(min_value=1, max_value=60),
    )
    def test_minted_pids_are_unique(self, reserved, mints):
        minter = PidMinter(used=[Pid(f"21.T/{n:04d}") for n in reserved])
        minted = [minter.mint("21.T") for _ in range(mints)]
        assert len(set(minted)) == mints
        assert not {int(p.suffix) for p in minted} & reserved
