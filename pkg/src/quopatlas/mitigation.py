"""Error-mitigation cost model and the shot-budget capability region.

Mitigation is modeled as ideal bias removal purchased with extra samples:
reaching the target precision on a shape with noise strength L (the
expected-error exponent, L = -ln(success probability)) costs
``base_shots * exp(overhead_exponent * L)`` shots. Under a finite shot
budget this admits exactly the shapes with
``L <= ln(budget / base_shots) / overhead_exponent``, so the mitigated
region is the pointwise maximum of the unmitigated frontier and that
budget frontier.

The default overhead exponent 4.0 mirrors the quadratic sampling blow-up of
cancellation-style estimators; it is a free knob and every output records
the values used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    AnalysisConfig,
    CapabilityRegion,
    ErrorRates,
    ProgramShape,
    _log_layer_success,
    capability_frontier,
    log_success_probability,
)


@dataclass(frozen=True)
class MitigationModel:
    """Sampling-cost law: shots(L) = base_shots * exp(overhead_exponent * L)."""

    overhead_exponent: float = 4.0
    base_shots: int = 1000
    shot_budget: int = 1000

    def __post_init__(self) -> None:
        if not self.overhead_exponent > 0.0:
            raise ValueError(
                f"overhead_exponent must be > 0, got {self.overhead_exponent!r}"
            )
        if self.base_shots < 1:
            raise ValueError(f"base_shots must be >= 1, got {self.base_shots!r}")
        if self.shot_budget < 1:
            raise ValueError(f"shot_budget must be >= 1, got {self.shot_budget!r}")


def noise_strength(
    shape: ProgramShape, rates: ErrorRates, config: AnalysisConfig
) -> float:
    """Noise strength L = -ln(success probability), evaluated in log space.

    Zero exactly when the success probability is 1; additive across depth.
    """
    lg = log_success_probability(shape, rates, config)
    return 0.0 if lg == 0.0 else -lg


def sampling_overhead(
    shape: ProgramShape,
    rates: ErrorRates,
    model: MitigationModel,
    config: AnalysisConfig,
) -> float:
    """Shot multiplier exp(overhead_exponent * L); inf marks infeasible."""
    x = model.overhead_exponent * noise_strength(shape, rates, config)
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def mitigated_shots(
    shape: ProgramShape,
    rates: ErrorRates,
    model: MitigationModel,
    config: AnalysisConfig,
) -> float:
    """Total shots to mitigate the shape at target precision (inf if overflow)."""
    return model.base_shots * sampling_overhead(shape, rates, model, config)


def _budget_depth(
    width: int, rates: ErrorRates, config: AnalysisConfig, lam_cap: float
) -> int:
    """Largest depth whose noise strength fits under the budget cap."""
    # lam(width, d) = d * lam_per_layer + lam_meas
    lam_per_layer = -_log_layer_success(width, rates)
    lam_meas = (
        -width * math.log1p(-rates.eps_meas) if config.include_measurement else 0.0
    )

    def fits(d: int) -> bool:
        return (
            d >= 1
            and noise_strength(ProgramShape(width, d), rates, config) <= lam_cap
        )

    if lam_per_layer == 0.0:
        return config.depth_max if fits(config.depth_max) else 0
    est = (lam_cap - lam_meas) / lam_per_layer
    if est >= config.depth_max:
        d = config.depth_max
    elif est <= 0.0:
        d = 0
    else:
        d = int(math.floor(est))
    while d < config.depth_max and fits(d + 1):
        d += 1
    while d > 0 and not fits(d):
        d -= 1
    return d


def mitigated_frontier(
    rates: ErrorRates,
    model: MitigationModel,
    config: AnalysisConfig,
    label: str | None = None,
) -> CapabilityRegion:
    """Capability region affordable under the mitigation shot budget.

    Pointwise maximum of the unmitigated frontier and the budget frontier
    (shapes whose mitigation cost fits the budget), hence always a superset
    of the unmitigated region and downward closed. When the budget is below
    base_shots the budget frontier is empty: the unmitigated region is
    returned with ``metadata["budget_warning"]`` set.
    """
    base = capability_frontier(rates, config)
    if label is None:
        label = (
            f"mitigated B={model.shot_budget:g} N0={model.base_shots} "
            f"b={model.overhead_exponent:g}"
        )
    meta = {
        "rates": rates.as_dict(),
        "analysis": config.as_dict(),
        "overhead_exponent": model.overhead_exponent,
        "base_shots": model.base_shots,
        "shot_budget": model.shot_budget,
    }
    if model.shot_budget < model.base_shots:
        meta["budget_warning"] = (
            "shot_budget below base_shots: no shape is mitigable, "
            "returning the unmitigated region"
        )
        return CapabilityRegion(
            threshold=config.threshold,
            frontier=dict(base.frontier),
            label=label,
            source="mitigated",
            metadata=meta,
        )
    lam_cap = math.log(model.shot_budget / model.base_shots) / model.overhead_exponent
    frontier = {
        w: max(base.frontier[w], _budget_depth(w, rates, config, lam_cap))
        for w in range(1, config.width_max + 1)
    }
    return CapabilityRegion(
        threshold=config.threshold,
        frontier=frontier,
        label=label,
        source="mitigated",
        metadata=meta,
    )


def budget_max_quops_uniform(
    eps: float, model: MitigationModel, config: AnalysisConfig
) -> int:
    """Closed-form max quop size under the budget in uniform mode.

    floor(ln(B/N0) / (b * (-ln(1 - eps)))), clipped by the grid bounds. Used
    as the independent cross-check against the scanned region.
    """
    if model.shot_budget < model.base_shots:
        return 0
    lam_cap = math.log(model.shot_budget / model.base_shots) / model.overhead_exponent
    lam1 = -math.log1p(-eps)
    if lam1 == 0.0:
        return config.width_max * config.depth_max
    s = int(math.floor(lam_cap / lam1))
    best = 0
    for w in range(1, config.width_max + 1):
        best = max(best, w * min(s // w, config.depth_max))
    return best
