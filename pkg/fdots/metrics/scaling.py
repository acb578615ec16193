"""
Scaling Report

Measures ``ops_for_fdo`` cost (S) on generated ecosystems of growing size.
Record typing stays bounded by the FDO's own record while attribute typing
grows with the total number of operation requirements.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Union

import numpy as np
from tqdm import tqdm

from fdots.core.model import AssociationModel
from fdots.engines import StepCounter, create_engine
from fdots.metrics.generator import GeneratorParams, generate_ecosystem
from fdots.metrics.measures import ops_ceiling

logger = logging.getLogger(__name__)

DEFAULT_LADDER = (10, 100, 1000, 10000)
RATIO_BOUNDS = (0.1, 1.0)


@dataclass(frozen=True)
class ScalingRow:
    """
    One rung of the ladder.

    Attributes:
        model: Association model
        n_fdos: Number of data FDOs
        n_ops: Number of operations
        sum_required: Required inputs summed over all operations
        measured: Mean measured S over the sampled FDOs
        ceiling: Mean S ceiling over the same FDOs
    """

    model: str
    n_fdos: int
    n_ops: int
    sum_required: int
    measured: float
    ceiling: float

    @property
    def ratio(self) -> float:
        return self.measured / self.ceiling if self.ceiling else 0.0

    def row(self) -> Dict[str, object]:
        return {
            "model": self.model,
            "fdos": self.n_fdos,
            "ops": self.n_ops,
            "sum_required": self.sum_required,
            "measured": round(self.measured, 3),
            "ceiling": round(self.ceiling, 3),
            "ratio": round(self.ratio, 4),
        }


def scaling_params(
    model: Union[str, AssociationModel],
    n_fdos: int,
    seed: int = 0,
    ops_per_fdo: float = 3.0,
    attrs_per_fdo: int = 3,
) -> GeneratorParams:
    """
    Generator parameters for one rung: one operation per ten FDOs (at least five), a fixed number
    of domain attributes per record and about ``ops_per_fdo`` associations
    per FDO or profile.
    """
    n_ops = max(5, n_fdos // 10)
    return GeneratorParams(
        model=model,
        n_fdos=n_fdos,
        n_ops=n_ops,
        n_profiles=max(1, n_fdos // 100),
        attrs_per_fdo=(attrs_per_fdo, attrs_per_fdo),
        required_inputs_per_op=(1, 2),
        association_density=min(1.0, ops_per_fdo / n_ops),
        seed=seed,
    )


def scaling_report(
    model: Union[str, AssociationModel],
    ladder: Sequence[int] = DEFAULT_LADDER,
    seed: int = 0,
    fdo_sample: int = 5,
    progress: bool = False,
) -> List[ScalingRow]:
    """
    Measure S on every rung of ``ladder``.

    Args:
        model: Association model
        ladder: Ecosystem sizes in data FDOs
        seed: Generator and sampling seed
        fdo_sample: FDOs measured per rung
        progress: Show a tqdm progress bar on stderr

    Returns:
        List[ScalingRow]: One row per rung, in ladder order
    """
    model = AssociationModel.parse(model)
    rows = []
    for n_fdos in tqdm(ladder, desc=f"scaling {model.value}", disable=not progress, leave=False):
        ecosystem = generate_ecosystem(scaling_params(model, n_fdos, seed))
        engine = create_engine(ecosystem, use_index=False)
        fdos = sorted(ecosystem.records)
        rng = np.random.default_rng(seed)
        picked = [fdos[i] for i in rng.choice(len(fdos), size=min(fdo_sample, len(fdos)), replace=False)]

        counter = StepCounter()
        measured, ceiling = [], []
        for f in picked:
            with counter.measure() as m:
                engine.ops_for_fdo(f, counter)
            measured.append(m.steps)
            ceiling.append(ops_ceiling(ecosystem, f))

        row = ScalingRow(
            model=model.value,
            n_fdos=n_fdos,
            n_ops=len(ecosystem.operations),
            sum_required=sum(len(o.required_inputs) for o in ecosystem.operations.values()),
            measured=float(np.mean(measured)) if measured else 0.0,
            ceiling=float(np.mean(ceiling)) if ceiling else 0.0,
        )
        logger.info(f"Scaling {model.value} fdos={n_fdos}: S={row.measured:.1f} ratio={row.ratio:.3f}")
        rows.append(row)
    return rows


def check_scaling(rows: Sequence[ScalingRow]) -> List[str]:
    """Rungs whose measured/ceiling ratio leaves ``RATIO_BOUNDS``."""
    low, high = RATIO_BOUNDS
    return [
        f"{row.model} fdos={row.n_fdos}: ratio {row.ratio:.3f} outside [{low}, {high}]"
        for row in rows
        if not low <= row.ratio <= high
    ]
