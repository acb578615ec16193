"""
Metrics: component and attribute counts, query and update costs, model
comparison, scaling and the synthetic ecosystem generator.
"""

from fdots.metrics.comparison import (
    ComparisonClaim,
    ModelComparison,
    compare_models,
    comparison_report,
    shared_update_scenarios,
)
from fdots.metrics.generator import EcosystemGenerator, GeneratorParams, generate_ecosystem
from fdots.metrics.measures import (
    ALL_MEASURES,
    MetricCheck,
    MetricsReport,
    NewFdoScenario,
    NewOperationScenario,
    QueryCosts,
    attribute_formula,
    attribute_inputs,
    count_attributes,
    count_components,
    default_update_scenarios,
    evaluate,
    expected_writes,
    fdos_ceiling,
    measure_query_costs,
    measure_update_costs,
    ops_ceiling,
    query_ceiling,
    sample_pairs,
)
from fdots.metrics.oracle import (
    brute_force_attribute_count,
    brute_force_component_count,
    brute_force_relation,
    exhaustive_relation,
)
from fdots.metrics.report import format_claims, format_scaling, format_table, to_csv, to_json_lines, write_csv
from fdots.metrics.scaling import DEFAULT_LADDER, ScalingRow, check_scaling, scaling_report

__all__ = [
    "ALL_MEASURES",
    "ComparisonClaim",
    "DEFAULT_LADDER",
    "EcosystemGenerator",
    "GeneratorParams",
    "MetricCheck",
    "MetricsReport",
    "ModelComparison",
    "NewFdoScenario",
    "NewOperationScenario",
    "QueryCosts",
    "ScalingRow",
    "attribute_formula",
    "attribute_inputs",
    "brute_force_attribute_count",
    "brute_force_component_count",
    "brute_force_relation",
    "check_scaling",
    "compare_models",
    "comparison_report",
    "count_attributes",
    "count_components",
    "default_update_scenarios",
    "evaluate",
    "exhaustive_relation",
    "expected_writes",
    "fdos_ceiling",
    "format_claims",
    "format_scaling",
    "format_table",
    "generate_ecosystem",
    "measure_query_costs",
    "measure_update_costs",
    "ops_ceiling",
    "query_ceiling",
    "sample_pairs",
    "scaling_report",
    "shared_update_scenarios",
    "to_csv",
    "to_json_lines",
    "write_csv",
]
