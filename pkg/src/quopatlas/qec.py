"""Surface-code projection engine.

Logical qubits encoded at odd code distance d see their error rate
suppressed as ``p_L = prefactor * (p / p_th) ** ((d + 1) / 2)`` provided the
physical rate p sits below the threshold p_th; each distance step of +2
multiplies the logical rate by p / p_th. A logical qubit costs about
``cost_factor * d**2`` physical qubits (data plus measurement ancillas at
the default cost_factor of 2) and one logical layer takes d syndrome rounds.

The capability region of a machine with a physical-qubit budget charges one
p_L-rate slot per logical qubit per logical layer and reuses the closed-form
frontier machinery, so all four engines share one capability definition.
Magic-state factories and routing are deliberately not modeled; the headline
numbers here are patch-count estimates, and :func:`teraquop_sensitivity`
shows how they move under different model constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    AnalysisConfig,
    CapabilityRegion,
    ErrorRates,
    ProgramShape,
    max_reliable_depth,
    required_error_rate,
)

# Relative slack for distance-selection comparisons. Inputs arrive as binary
# floats, so a target like 1e-12 and a model value that equals it in decimal
# arithmetic can differ by a few ulps; sub-ppb differences are far below the
# model's fidelity and must not bump the distance by a whole step.
DISTANCE_REL_SLACK = 1e-9


class ThresholdError(ValueError):
    """Physical error rate at or above threshold: no suppression available."""


@dataclass(frozen=True)
class SurfaceCodeModel:
    """Suppression law constants and per-logical-qubit costs."""

    p_th: float = 0.01
    prefactor: float = 0.1
    cost_factor: float = 2.0
    d_min: int = 3
    cycle_time: float = 1e-6

    def __post_init__(self) -> None:
        if not (0.0 < self.p_th < 1.0):
            raise ValueError(f"p_th must be in (0, 1), got {self.p_th!r}")
        if not self.prefactor > 0.0:
            raise ValueError(f"prefactor must be > 0, got {self.prefactor!r}")
        if not self.cost_factor > 0.0:
            raise ValueError(f"cost_factor must be > 0, got {self.cost_factor!r}")
        if self.d_min < 3 or self.d_min % 2 == 0:
            raise ValueError(f"d_min must be an odd integer >= 3, got {self.d_min!r}")
        if not self.cycle_time > 0.0:
            raise ValueError(f"cycle_time must be > 0, got {self.cycle_time!r}")

    def qubits_per_logical(self, d: int) -> int:
        return int(round(self.cost_factor * d * d))

    def rounds_per_layer(self, d: int) -> int:
        return d

    def as_dict(self) -> dict:
        return {
            "p_th": self.p_th,
            "prefactor": self.prefactor,
            "cost_factor": self.cost_factor,
            "d_min": self.d_min,
            "cycle_time": self.cycle_time,
        }


@dataclass(frozen=True)
class LogicalRates:
    """A logical error rate together with the (d, p) that produced it."""

    p_logical: float
    distance: int
    p_physical: float

    @classmethod
    def from_model(cls, p: float, d: int, model: SurfaceCodeModel) -> "LogicalRates":
        return cls(
            p_logical=logical_error_rate(p, d, model), distance=d, p_physical=p
        )


@dataclass(frozen=True)
class TargetPlan:
    """Distance plan for one logical shape."""

    shape: ProgramShape
    logical: LogicalRates
    physical_qubits: int
    wall_clock_seconds: float
    required_rate: float

    @property
    def distance(self) -> int:
        return self.logical.distance

    @property
    def p_logical(self) -> float:
        return self.logical.p_logical


def _check_distance(d: int, model: SurfaceCodeModel) -> None:
    if d < model.d_min or d % 2 == 0:
        raise ValueError(f"distance must be an odd integer >= {model.d_min}, got {d!r}")


def _check_below_threshold(p: float, model: SurfaceCodeModel) -> None:
    if not p > 0.0:
        raise ValueError(f"physical rate must be > 0, got {p!r}")
    if p >= model.p_th:
        raise ThresholdError(
            f"physical rate {p:g} is at or above threshold {model.p_th:g}: "
            "no suppression"
        )


def logical_error_rate(p: float, d: int, model: SurfaceCodeModel) -> float:
    """Logical error per logical qubit per logical layer, clamped to <= 1."""
    _check_below_threshold(p, model)
    _check_distance(d, model)
    p_l = model.prefactor * (p / model.p_th) ** ((d + 1) // 2)
    return min(p_l, 1.0)


def _meets(p: float, d: int, target: float, model: SurfaceCodeModel) -> bool:
    return logical_error_rate(p, d, model) <= target * (1.0 + DISTANCE_REL_SLACK)


def min_distance(p: float, target_p_l: float, model: SurfaceCodeModel) -> int:
    """Smallest odd distance whose logical rate meets the target.

    Closed form on the suppression exponent, then verified by a local scan.
    The comparison carries DISTANCE_REL_SLACK of relative tolerance.
    """
    _check_below_threshold(p, model)
    if not (0.0 < target_p_l < 1.0):
        raise ValueError(f"target_p_l must be in (0, 1), got {target_p_l!r}")
    r = p / model.p_th
    # prefactor * r**k <= target  =>  k >= log(target / prefactor) / log(r)
    k_est = math.ceil(math.log(target_p_l / model.prefactor) / math.log(r))
    k = max(k_est, (model.d_min + 1) // 2)
    d = 2 * k - 1
    while d > model.d_min and _meets(p, d - 2, target_p_l, model):
        d -= 2
    while not _meets(p, d, target_p_l, model):
        d += 2
    return d


def physical_cost(n_logical: int, d: int, model: SurfaceCodeModel) -> int:
    """Physical qubits for ``n_logical`` patches at distance d."""
    if n_logical < 1:
        raise ValueError(f"n_logical must be >= 1, got {n_logical!r}")
    _check_distance(d, model)
    return n_logical * model.qubits_per_logical(d)


def _max_affordable_distance(
    width: int, budget: int, model: SurfaceCodeModel, distance_max: int | None = None
) -> int | None:
    """Largest odd d whose patches fit the budget at this width, or None."""
    if model.qubits_per_logical(model.d_min) * width > budget:
        return None
    d = int(math.sqrt(budget / (model.cost_factor * width)))
    if d % 2 == 0:
        d -= 1
    d = max(d, model.d_min)
    while model.qubits_per_logical(d) * width > budget:
        d -= 2
    while model.qubits_per_logical(d + 2) * width <= budget:
        d += 2
    if distance_max is not None:
        d = min(d, distance_max if distance_max % 2 else distance_max - 1)
    return d


def _logical_depth(
    width: int, p: float, d: int, model: SurfaceCodeModel, config: AnalysisConfig
) -> int:
    """Max logical depth at width under distance d (measurement excluded)."""
    eps_l = logical_error_rate(p, d, model)
    if eps_l >= 1.0:
        return 0
    return max_reliable_depth(
        width, ErrorRates.uniform(eps_l), config.without_measurement()
    )


def qec_capability_region(
    budget: int,
    p: float,
    model: SurfaceCodeModel,
    config: AnalysisConfig,
    distance_max: int | None = None,
    label: str | None = None,
) -> CapabilityRegion:
    """Capability region of a machine with ``budget`` physical qubits.

    For each logical width the best distance is the largest affordable one
    (larger d never hurts the depth budget); when several distances already
    reach depth_max, the smallest such distance is recorded. Widths whose
    minimum-distance patches exceed the budget get frontier 0. Returns an
    empty region with a warning when the budget cannot hold even one
    distance-d_min patch.
    """
    _check_below_threshold(p, model)
    if label is None:
        label = f"qec Q={budget:g} p={p:g}"
    meta: dict = {
        "p": p,
        "budget": budget,
        "model": model.as_dict(),
        "analysis": config.as_dict(),
        "quop_charging": "per logical qubit-layer",
        "d_code": {},
    }
    frontier: dict[int, int] = {}
    if budget < model.qubits_per_logical(model.d_min):
        meta["budget_warning"] = (
            f"budget {budget} below one distance-{model.d_min} logical qubit "
            f"({model.qubits_per_logical(model.d_min)} physical qubits)"
        )
        frontier = {w: 0 for w in range(1, config.width_max + 1)}
        return CapabilityRegion(
            threshold=config.threshold,
            frontier=frontier,
            label=label,
            source="qec",
            metadata=meta,
        )
    d_codes: dict[int, int] = {}
    for w in range(1, config.width_max + 1):
        d_best = _max_affordable_distance(w, budget, model, distance_max)
        if d_best is None:
            frontier[w] = 0
            continue
        depth = _logical_depth(w, p, d_best, model, config)
        if depth >= config.depth_max:
            # depth cap reached: record the cheapest distance that attains it
            lo, hi = model.d_min, d_best
            while lo < hi:
                mid = lo + (hi - lo) // 2
                if mid % 2 == 0:
                    mid -= 1
                if _logical_depth(w, p, mid, model, config) >= config.depth_max:
                    hi = mid
                else:
                    lo = mid + 2
            d_best = lo
            depth = config.depth_max
        frontier[w] = depth
        if depth > 0:
            d_codes[w] = d_best
    meta["d_code"] = d_codes
    return CapabilityRegion(
        threshold=config.threshold,
        frontier=frontier,
        label=label,
        source="qec",
        metadata=meta,
    )


def plan_for_target(
    shape: ProgramShape,
    p: float,
    model: SurfaceCodeModel,
    config: AnalysisConfig,
) -> TargetPlan:
    """Distance, qubit cost, and runtime to run ``shape`` on logical qubits.

    The per-slot logical-rate budget comes from the inverse frontier query;
    wall clock is depth * rounds_per_layer(d) * cycle_time (no factory or
    routing time).
    """
    _check_below_threshold(p, model)
    eps_req = required_error_rate(shape, config)
    d = min_distance(p, eps_req, model)
    return TargetPlan(
        shape=shape,
        logical=LogicalRates.from_model(p, d, model),
        physical_qubits=physical_cost(shape.width, d, model),
        wall_clock_seconds=shape.depth * model.rounds_per_layer(d) * model.cycle_time,
        required_rate=eps_req,
    )


@dataclass(frozen=True)
class SensitivityEntry:
    """One parameter combination of the qubit-budget sensitivity sweep."""

    p_physical: float
    p_th: float
    prefactor: float
    cost_factor: float
    distance: int
    physical_qubits: int
    feasible: bool


DEFAULT_SENSITIVITY_RATES = (1e-3, 3e-4, 1e-4, 3e-5, 1e-5)
DEFAULT_SENSITIVITY_PREFACTORS = (0.1, 0.03)
DEFAULT_SENSITIVITY_COST_FACTORS = (2.0, 1.5, 1.0)


def teraquop_sensitivity(
    shape: ProgramShape = ProgramShape(10_000, 10**8),
    budget: int = 10**6,
    config: AnalysisConfig | None = None,
    physical_rates: tuple[float, ...] = DEFAULT_SENSITIVITY_RATES,
    thresholds: tuple[float, ...] = (0.01,),
    prefactors: tuple[float, ...] = DEFAULT_SENSITIVITY_PREFACTORS,
    cost_factors: tuple[float, ...] = DEFAULT_SENSITIVITY_COST_FACTORS,
) -> list[SensitivityEntry]:
    """Sweep model constants and report which make the budget suffice.

    With the default constants a width-10^4, depth-10^8 program costs several
    million physical qubits; this sweep documents which combinations of
    physical rate, threshold, suppression prefactor, and per-logical cost
    bring it inside the budget instead of tuning defaults to force a headline.
    """
    if config is None:
        config = AnalysisConfig(
            include_measurement=False, width_max=shape.width, depth_max=shape.depth
        )
    eps_req = required_error_rate(shape, config)
    entries = []
    for p in physical_rates:
        for p_th in thresholds:
            if p >= p_th:
                continue
            for a in prefactors:
                for c in cost_factors:
                    model = SurfaceCodeModel(
                        p_th=p_th, prefactor=a, cost_factor=c
                    )
                    d = min_distance(p, eps_req, model)
                    qubits = physical_cost(shape.width, d, model)
                    entries.append(
                        SensitivityEntry(
                            p_physical=p,
                            p_th=p_th,
                            prefactor=a,
                            cost_factor=c,
                            distance=d,
                            physical_qubits=qubits,
                            feasible=qubits <= budget,
                        )
                    )
    return entries
