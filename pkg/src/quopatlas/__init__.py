"""Capability regions for quantum computers.

Four engines share one capability definition (the set of (width, depth)
program shapes that run with success probability at or above a threshold,
1/e by default): a closed-form analytic model, a Monte Carlo mirror-circuit
benchmark, an error-mitigation shot-budget model, and a surface-code
projection under a physical-qubit budget. Results render as CSV tables and
log-log SVG diagrams.
"""

from .atlas import RegionRow, RegionTable, RenderStyle, emit_csv, render_svg
from .benchmark import (
    Layer,
    MirrorCircuit,
    SuccessEstimate,
    estimate_success,
    generate_mirror_circuit,
    measure_capability,
    scan_capability,
    simulate_shot,
)
from .mitigation import (
    MitigationModel,
    mitigated_frontier,
    noise_strength,
    sampling_overhead,
)
from .model import (
    AnalysisConfig,
    CapabilityRegion,
    ErrorRates,
    PairingError,
    ProgramShape,
    capability_frontier,
    layer_success_prob,
    max_reliable_depth,
    quop_size,
    required_error_rate,
    success_probability,
)
from .qec import (
    LogicalRates,
    SurfaceCodeModel,
    TargetPlan,
    ThresholdError,
    logical_error_rate,
    min_distance,
    physical_cost,
    plan_for_target,
    qec_capability_region,
    teraquop_sensitivity,
)
from .scenario import ScenarioConfig, ScenarioError, parse_scenario, serialize_scenario

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "CapabilityRegion",
    "ErrorRates",
    "Layer",
    "LogicalRates",
    "MirrorCircuit",
    "MitigationModel",
    "PairingError",
    "ProgramShape",
    "RegionRow",
    "RegionTable",
    "RenderStyle",
    "ScenarioConfig",
    "ScenarioError",
    "SuccessEstimate",
    "SurfaceCodeModel",
    "TargetPlan",
    "ThresholdError",
    "capability_frontier",
    "emit_csv",
    "estimate_success",
    "generate_mirror_circuit",
    "layer_success_prob",
    "logical_error_rate",
    "max_reliable_depth",
    "measure_capability",
    "min_distance",
    "mitigated_frontier",
    "noise_strength",
    "parse_scenario",
    "physical_cost",
    "plan_for_target",
    "qec_capability_region",
    "quop_size",
    "render_svg",
    "required_error_rate",
    "sampling_overhead",
    "scan_capability",
    "serialize_scenario",
    "simulate_shot",
    "success_probability",
    "teraquop_sensitivity",
]
