"""
Synthetic Ecosystem Generator

Seeded, reproducible ecosystems for any association model. Records use the
canonical attribute layout: operation references first (record typing only),
then domain attributes, then the profile reference.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple, Union

import numpy as np

from fdots.core.fixtures import definition_pid, standard_definitions
from fdots.core.model import (
    AssociationModel,
    AttributeDefinition,
    Ecosystem,
    InformationRecord,
    OperationSpec,
    Profile,
    RequiredInput,
    ValueRestriction,
)
from fdots.core.pid import Pid, validate_prefix

logger = logging.getLogger(__name__)

VALUE_VOCABULARY = ("v0", "v1", "v2", "v3")


@dataclass(frozen=True)
class GeneratorParams:
    """
    Parameters of a synthetic ecosystem.

    Attributes:
        model: Association model to generate
        n_fdos: Number of data FDOs
        n_ops: Number of operations
        n_profiles: Number of profiles (at least one is always created)
        attrs_per_fdo: Inclusive range of domain attributes per FDO
        required_inputs_per_op: Inclusive range of required inputs per operation
            (attribute typing)
        association_density: Probability that an FDO (record typing) or a
            profile (profile typing) is associated with a given operation
        seed: Random seed
        n_attribute_defs: Size of the domain key pool
        value_constraint_rate: Probability that a required input carries a
            value constraint (attribute typing)
        prefix: PID prefix
    """

    model: AssociationModel = AssociationModel.RECORD
    n_fdos: int = 20
    n_ops: int = 10
    n_profiles: int = 3
    attrs_per_fdo: Tuple[int, int] = (1, 4)
    required_inputs_per_op: Tuple[int, int] = (1, 2)
    association_density: float = 0.3
    seed: int = 0
    n_attribute_defs: int = 12
    value_constraint_rate: float = 0.0
    prefix: str = "21.T"

    def __post_init__(self):
        object.__setattr__(self, "model", AssociationModel.parse(self.model))
        object.__setattr__(self, "attrs_per_fdo", tuple(self.attrs_per_fdo))
        object.__setattr__(self, "required_inputs_per_op", tuple(self.required_inputs_per_op))
        for name in ("n_fdos", "n_ops", "n_profiles", "n_attribute_defs"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        for name in ("attrs_per_fdo", "required_inputs_per_op"):
            low, high = getattr(self, name)
            if low < 0 or high < low:
                raise ValueError(f"{name} must be a range 0 <= low <= high, got {(low, high)}")
        for name in ("association_density", "value_constraint_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        validate_prefix(self.prefix)

    def with_updates(self, **changes) -> "GeneratorParams":
        return replace(self, **changes)


class EcosystemGenerator:
    """
    Builds an ecosystem from ``GeneratorParams`` with ``numpy.random.default_rng``.

    The same parameters always produce the same ecosystem.
    """

    def __init__(self, params: GeneratorParams):
        self.params = params
        self.rng = np.random.default_rng(params.seed)

    def _pid(self, kind: str, number: int) -> Pid:
        return Pid(f"{self.params.prefix}/{kind}-{number:04d}")

    def domain_keys(self) -> List[str]:
        return [f"attr-{i:02d}" for i in range(self.params.n_attribute_defs)]

    def _definitions(self) -> List[AttributeDefinition]:
        definitions = standard_definitions(self.params.model, self.params.prefix)
        for i, key in enumerate(self.domain_keys()):
            restriction = ValueRestriction.enum(VALUE_VOCABULARY) if i % 4 == 3 else ValueRestriction.any()
            definitions.append(AttributeDefinition(definition_pid(self.params.prefix, key), key, restriction))
        return definitions

    def _uniform(self, bounds: Tuple[int, int]) -> int:
        low, high = bounds
        return int(self.rng.integers(low, high + 1))

    def _domain_pairs(self) -> List[Tuple[str, str]]:
        keys = self.domain_keys()
        count = min(self._uniform(self.params.attrs_per_fdo), len(keys))
        if count == 0:
            return []
        chosen = sorted(self.rng.choice(len(keys), size=count, replace=False))
        values = self.rng.integers(0, len(VALUE_VOCABULARY), size=count)
        return [(keys[k], VALUE_VOCABULARY[v]) for k, v in zip(chosen, values)]

    def _requirements(self) -> List[RequiredInput]:
        keys = self.domain_keys()
        count = min(self._uniform(self.params.required_inputs_per_op), len(keys))
        if count == 0:
            return []
        chosen = sorted(self.rng.choice(len(keys), size=count, replace=False))
        inputs = []
        for k in chosen:
            constraint = None
            if self.rng.random() < self.params.value_constraint_rate:
                constraint = VALUE_VOCABULARY[int(self.rng.integers(0, len(VALUE_VOCABULARY)))]
            inputs.append(RequiredInput(keys[k], constraint))
        return inputs

    def _associated(self, n_ops: int, at_least_one: bool = False) -> List[int]:
        if n_ops == 0:
            return []
        draws = self.rng.random(n_ops)
        chosen = [i for i in range(n_ops) if draws[i] < self.params.association_density]
        if not chosen and at_least_one:
            chosen = [int(self.rng.integers(0, n_ops))]
        return chosen

    def generate(self) -> Ecosystem:
        params = self.params
        model = params.model
        op_pids = [self._pid("op", i + 1) for i in range(params.n_ops)]
        n_profiles = max(1, params.n_profiles)
        profile_pids = [self._pid("profile", i + 1) for i in range(n_profiles)]
        optional = set(self.domain_keys())

        if model is AssociationModel.ATTRIBUTE:
            operations = [
                OperationSpec(pid, tuple(self._requirements()), f"exec:{pid.suffix}") for pid in op_pids
            ]
        else:
            operations = [OperationSpec(pid, (), f"exec:{pid.suffix}") for pid in op_pids]

        if model is AssociationModel.PROFILE:
            profiles = []
            for pid in profile_pids:
                chosen = self._associated(params.n_ops, at_least_one=True)
                profiles.append(
                    Profile(pid, optional_keys=optional, operation_list=[op_pids[i] for i in chosen])
                )
        else:
            profiles = [Profile(pid, optional_keys=optional) for pid in profile_pids]

        records = []
        for i in range(params.n_fdos):
            profile = profile_pids[int(self.rng.integers(0, n_profiles))]
            pairs = self._domain_pairs()
            ops: List[Pid] = []
            if model is AssociationModel.RECORD:
                ops = [op_pids[j] for j in self._associated(params.n_ops)]
            records.append(
                InformationRecord.data_fdo(self._pid("fdo", i + 1), profile, pairs, operations=ops)
            )

        ecosystem = Ecosystem.from_components(
            model, [*self._definitions(), *operations, *profiles, *records]
        )
        logger.debug(f"Generated {ecosystem!r} from seed {params.seed}")
        return ecosystem


def generate_ecosystem(
    params: Optional[GeneratorParams] = None, **overrides: Union[int, float, str]
) -> Ecosystem:
    """
    Generate a synthetic ecosystem.

    Example:
        >>> eco = generate_ecosystem(GeneratorParams(model="profile", n_fdos=50, seed=7))
        >>> len(eco.records)
        50
    """
    params = params or GeneratorParams()
    if overrides:
        params = params.with_updates(**overrides)
    return EcosystemGenerator(params).generate()
