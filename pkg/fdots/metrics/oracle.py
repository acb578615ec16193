"""
Brute-force oracles.

Plain re-implementations of the association rules and counting formulas that
share no code with the engines or the graph builder. Tests and the metrics
module compare against them.
"""

from typing import Dict, Set, Tuple

from fdots.core.model import (
    AssociationModel,
    Ecosystem,
    OPERATION_LIST_KEY,
    OPERATION_REF_KEY,
    PROFILE_REF_KEY,
    REQUIRED_INPUT_KEY,
)
from fdots.core.pid import Pid

Pair = Tuple[Pid, Pid]


def _pid_or_none(value: str):
    try:
        return Pid(value)
    except ValueError:
        return None


def brute_force_relation(ecosystem: Ecosystem, match_values: bool = True) -> Set[Pair]:
    """Association relation evaluated pair by pair from the raw records."""
    pairs: Set[Pair] = set()
    model = ecosystem.model
    for f, record in ecosystem.records.items():
        attributes = record.pairs()
        for o, operation in ecosystem.operations.items():
            if model is AssociationModel.RECORD:
                hit = (OPERATION_REF_KEY, str(o)) in attributes
            elif model is AssociationModel.PROFILE:
                refs = [_pid_or_none(v) for k, v in attributes if k == PROFILE_REF_KEY]
                profile = ecosystem.profiles.get(refs[0]) if refs and refs[0] else None
                hit = profile is not None and o in profile.operation_list
            else:
                hit = all(
                    any(
                        k == req.key and (
                            not match_values or req.value_constraint is None or v == req.value_constraint
                        )
                        for k, v in attributes
                    )
                    for req in operation.required_inputs
                )
            if hit:
                pairs.add((f, o))
    return pairs


def exhaustive_relation(engine) -> Set[Pair]:
    """Relation obtained by calling ``engine.is_associated`` on every pair."""
    ecosystem = engine.ecosystem
    return {
        (f, o)
        for f in ecosystem.records
        for o in ecosystem.operations
        if engine.is_associated(f, o)
    }


def brute_force_component_count(ecosystem: Ecosystem) -> int:
    """
    Count the components taking part in association.

    FDOs and operations always count; profiles and the definitions of the
    reserved association keys count where the model uses them, and every
    attribute definition counts under attribute typing.
    """
    model = ecosystem.model
    keys = {d.key for d in ecosystem.attribute_defs.values()}
    count = len(ecosystem.records) + len(ecosystem.operations)
    if model is AssociationModel.RECORD:
        return count + int(OPERATION_REF_KEY in keys)
    if model is AssociationModel.PROFILE:
        return (
            count
            + len(ecosystem.profiles)
            + int(PROFILE_REF_KEY in keys)
            + int(OPERATION_LIST_KEY in keys)
        )
    return count + len(ecosystem.attribute_defs)


def brute_force_attribute_count(ecosystem: Ecosystem) -> int:
    """
    Count distinct attributes lying on at least one association path.

    Attribute typing is evaluated with key-presence matching.
    """
    relation = brute_force_relation(ecosystem, match_values=False)
    model = ecosystem.model
    counted: Set[Tuple[Pid, str, str]] = set()
    for f, o in relation:
        record = ecosystem.records[f]
        if model is AssociationModel.RECORD:
            counted.add((f, OPERATION_REF_KEY, str(o)))
        elif model is AssociationModel.PROFILE:
            profile_value = record.values_for(PROFILE_REF_KEY)[0]
            counted.add((f, PROFILE_REF_KEY, profile_value))
            profile = ecosystem.profiles[Pid(profile_value)]
            counted.add((profile.pid, OPERATION_LIST_KEY, "|".join(str(p) for p in profile.operation_list)))
        else:
            operation = ecosystem.operations[o]
            keys = {req.key for req in operation.required_inputs}
            for key, value in record.pairs():
                if key in keys:
                    counted.add((f, key, value))
            for req in operation.required_inputs:
                counted.add((o, REQUIRED_INPUT_KEY, req.encode()))
    return len(counted)


def relation_maps(relation: Set[Pair]) -> Tuple[Dict[Pid, Set[Pid]], Dict[Pid, Set[Pid]]]:
    """(operations by FDO, FDOs by operation) for the pairs present in ``relation``."""
    ops_by_fdo: Dict[Pid, Set[Pid]] = {}
    fdos_by_op: Dict[Pid, Set[Pid]] = {}
    for f, o in relation:
        ops_by_fdo.setdefault(f, set()).add(o)
        fdos_by_op.setdefault(o, set()).add(f)
    return ops_by_fdo, fdos_by_op
