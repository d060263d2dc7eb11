"""Scenario files: strict JSON configuration for every engine.

A scenario is a single JSON object (RFC 8259) with up to six sections:
``rates``, ``analysis``, ``benchmark``, ``mitigation``, ``qec``, ``output``.
Every key is optional and defaults are filled on parse; unknown keys are
rejected with a suggestion, and every domain violation names the offending
key and its bound. ``serialize_scenario`` writes the fully resolved form
(sorted keys, two-space indent, LF), and parse(serialize(parse(text)))
equals parse(text).

The resolved configuration is echoed into every CSV and SVG artifact so
outputs are self-describing.
"""

from __future__ import annotations

import difflib
import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from .model import AnalysisConfig, ErrorRates
from .mitigation import MitigationModel
from .qec import SurfaceCodeModel


class ScenarioError(ValueError):
    """Scenario text is syntactically or semantically invalid."""


@dataclass(frozen=True)
class RateProfile:
    """Labeled rate set for the benchmark panel."""

    label: str
    rates: ErrorRates


# Artifact defaults, not measured device data: a spread of uniform rates
# from roughly current-hardware to optimistic.
DEFAULT_PROFILES = (
    RateProfile("profile eps=2e-2", ErrorRates.uniform(2e-2)),
    RateProfile("profile eps=5e-3", ErrorRates.uniform(5e-3)),
    RateProfile("profile eps=1e-3", ErrorRates.uniform(1e-3)),
)


@dataclass(frozen=True)
class BenchmarkSettings:
    shots: int = 5000
    n_circuits: int = 5
    seed: int = 2025
    width_max: int = 8
    depth_max: int = 64
    profiles: tuple[RateProfile, ...] = DEFAULT_PROFILES

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError(f"benchmark.shots must be >= 1, got {self.shots!r}")
        if self.n_circuits < 1:
            raise ValueError(
                f"benchmark.n_circuits must be >= 1, got {self.n_circuits!r}"
            )
        if self.shots < self.n_circuits:
            raise ValueError("benchmark.shots must be >= benchmark.n_circuits")
        if self.width_max < 1 or self.depth_max < 1:
            raise ValueError("benchmark.width_max and depth_max must be >= 1")

    def grid_config(self, analysis: AnalysisConfig) -> AnalysisConfig:
        """Analysis config restricted to the benchmark's smaller grid."""
        return replace(
            analysis,
            width_max=min(self.width_max, analysis.width_max),
            depth_max=min(self.depth_max, analysis.depth_max),
            depth_grid=None,
        )


@dataclass(frozen=True)
class MitigationSettings:
    overhead_exponent: float = 4.0
    base_shots: int = 1000
    # budgets = {1e2, 1e4, 1e6} x base_shots; artifact defaults, not
    # calibrated to any published overhead figures.
    budgets: tuple[int, ...] = (10**5, 10**7, 10**9)

    def __post_init__(self) -> None:
        MitigationModel(self.overhead_exponent, self.base_shots, 1)
        if not self.budgets:
            raise ValueError("mitigation.budgets must be non-empty")
        if any(b < 1 for b in self.budgets):
            raise ValueError("mitigation.budgets entries must be >= 1")

    def models(self) -> list[MitigationModel]:
        return [
            MitigationModel(self.overhead_exponent, self.base_shots, b)
            for b in self.budgets
        ]


@dataclass(frozen=True)
class QecSettings:
    p_th: float = 0.01
    prefactor: float = 0.1
    cost_factor: float = 2.0
    cycle_time: float = 1e-6
    physical_error_rate: float = 1e-3
    physical_qubit_budgets: tuple[int, ...] = (10**4, 10**5, 10**6)
    distance_max: int | None = None

    def __post_init__(self) -> None:
        self.model()  # validates the model fields
        if not self.physical_error_rate > 0.0:
            raise ValueError("qec.physical_error_rate must be > 0")
        if not self.physical_qubit_budgets:
            raise ValueError("qec.physical_qubit_budgets must be non-empty")
        if any(q < 1 for q in self.physical_qubit_budgets):
            raise ValueError("qec.physical_qubit_budgets entries must be >= 1")
        if self.distance_max is not None and (
            self.distance_max < 3 or self.distance_max % 2 == 0
        ):
            raise ValueError("qec.distance_max must be an odd integer >= 3")

    def model(self) -> SurfaceCodeModel:
        return SurfaceCodeModel(
            p_th=self.p_th,
            prefactor=self.prefactor,
            cost_factor=self.cost_factor,
            cycle_time=self.cycle_time,
        )


@dataclass(frozen=True)
class OutputSettings:
    formats: tuple[str, ...] = ("csv", "svg")
    directory: str = "atlas_out"
    basename: str = "capability"

    def __post_init__(self) -> None:
        bad = [f for f in self.formats if f not in ("csv", "svg")]
        if bad:
            raise ValueError(f"output.formats entries must be csv or svg, got {bad}")
        if not self.formats:
            raise ValueError("output.formats must be non-empty")


@dataclass(frozen=True)
class ScenarioConfig:
    rates: ErrorRates = field(default_factory=ErrorRates)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    benchmark: BenchmarkSettings = field(default_factory=BenchmarkSettings)
    mitigation: MitigationSettings = field(default_factory=MitigationSettings)
    qec: QecSettings = field(default_factory=QecSettings)
    output: OutputSettings = field(default_factory=OutputSettings)

    def resolved(self) -> dict:
        """Plain-dict form with every default filled (the provenance echo)."""
        return {
            "rates": {
                "eps_1q": self.rates.eps_1q,
                "eps_2q": self.rates.eps_2q,
                "eps_meas": self.rates.eps_meas,
                "zeta": self.rates.two_qubit_density,
            },
            "analysis": {
                "threshold": self.analysis.threshold,
                "include_measurement": self.analysis.include_measurement,
                "width_max": self.analysis.width_max,
                "depth_max": self.analysis.depth_max,
                "depth_grid": list(self.analysis.depth_grid),
            },
            "benchmark": {
                "shots": self.benchmark.shots,
                "n_circuits": self.benchmark.n_circuits,
                "seed": self.benchmark.seed,
                "width_max": self.benchmark.width_max,
                "depth_max": self.benchmark.depth_max,
                "profiles": [
                    {
                        "label": p.label,
                        "eps_1q": p.rates.eps_1q,
                        "eps_2q": p.rates.eps_2q,
                        "eps_meas": p.rates.eps_meas,
                        "zeta": p.rates.two_qubit_density,
                    }
                    for p in self.benchmark.profiles
                ],
            },
            "mitigation": {
                "overhead_exponent": self.mitigation.overhead_exponent,
                "base_shots": self.mitigation.base_shots,
                "budgets": list(self.mitigation.budgets),
            },
            "qec": {
                "p_th": self.qec.p_th,
                "prefactor": self.qec.prefactor,
                "cost_factor": self.qec.cost_factor,
                "cycle_time": self.qec.cycle_time,
                "physical_error_rate": self.qec.physical_error_rate,
                "physical_qubit_budgets": list(self.qec.physical_qubit_budgets),
                "distance_max": self.qec.distance_max,
            },
            "output": {
                "formats": list(self.output.formats),
                "directory": self.output.directory,
                "basename": self.output.basename,
            },
        }


_SECTION_KEYS = {
    "rates": ("eps_1q", "eps_2q", "eps_meas", "zeta"),
    "analysis": (
        "threshold",
        "include_measurement",
        "width_max",
        "depth_max",
        "depth_grid",
    ),
    "benchmark": ("shots", "n_circuits", "seed", "width_max", "depth_max", "profiles"),
    "mitigation": ("overhead_exponent", "base_shots", "budgets"),
    "qec": (
        "p_th",
        "prefactor",
        "cost_factor",
        "cycle_time",
        "physical_error_rate",
        "physical_qubit_budgets",
        "distance_max",
    ),
    "output": ("formats", "directory", "basename"),
}

_PROFILE_KEYS = ("label", "eps_1q", "eps_2q", "eps_meas", "zeta")


def _unknown_key(key: str, known: tuple[str, ...], where: str) -> ScenarioError:
    hint = difflib.get_close_matches(key, known, n=1)
    suggestion = f"; did you mean {hint[0]!r}?" if hint else ""
    return ScenarioError(
        f"unknown key {key!r} in {where} (known: {', '.join(known)}){suggestion}"
    )


def _require_mapping(value: Any, where: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise ScenarioError(f"{where} must be a JSON object, got {type(value).__name__}")
    return value


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{key} must be a number, got {value!r}")
    return float(value)


def _integer(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{key} must be an integer, got {value!r}")
    return value


def _boolean(value: Any, key: str) -> bool:
    if not isinstance(value, bool):
        raise ScenarioError(f"{key} must be true or false, got {value!r}")
    return value


def _string(value: Any, key: str) -> str:
    if not isinstance(value, str):
        raise ScenarioError(f"{key} must be a string, got {value!r}")
    return value


def _int_list(value: Any, key: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ScenarioError(f"{key} must be a list of integers, got {value!r}")
    return tuple(_integer(v, f"{key}[{i}]") for i, v in enumerate(value))


def _check_keys(section: Mapping, known: tuple[str, ...], where: str) -> None:
    for key in section:
        if key not in known:
            raise _unknown_key(str(key), known, where)


def _parse_rates(section: Mapping, where: str = "rates") -> ErrorRates:
    _check_keys(section, _SECTION_KEYS["rates"], where)
    kwargs = {}
    for src, dst in (
        ("eps_1q", "eps_1q"),
        ("eps_2q", "eps_2q"),
        ("eps_meas", "eps_meas"),
        ("zeta", "two_qubit_density"),
    ):
        if src in section:
            kwargs[dst] = _number(section[src], f"{where}.{src}")
    try:
        return ErrorRates(**kwargs)
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def _parse_profile(entry: Any, where: str) -> RateProfile:
    section = _require_mapping(entry, where)
    _check_keys(section, _PROFILE_KEYS, where)
    if "label" not in section:
        raise ScenarioError(f"{where}.label is required")
    label = _string(section["label"], f"{where}.label")
    if any(c in label for c in ",\r\n"):
        raise ScenarioError(
            f"{where}.label must not contain commas or newlines (used in CSV rows)"
        )
    rates = _parse_rates(
        {k: v for k, v in section.items() if k != "label"}, where
    )
    return RateProfile(label=label, rates=rates)


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse scenario JSON text to a fully defaulted, validated config."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"scenario syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    doc = _require_mapping(doc, "scenario")
    _check_keys(doc, tuple(_SECTION_KEYS), "scenario")

    rates = _parse_rates(_require_mapping(doc.get("rates", {}), "rates"))

    ana = _require_mapping(doc.get("analysis", {}), "analysis")
    _check_keys(ana, _SECTION_KEYS["analysis"], "analysis")
    ana_kwargs: dict[str, Any] = {}
    if "threshold" in ana:
        ana_kwargs["threshold"] = _number(ana["threshold"], "analysis.threshold")
    if "include_measurement" in ana:
        ana_kwargs["include_measurement"] = _boolean(
            ana["include_measurement"], "analysis.include_measurement"
        )
    if "width_max" in ana:
        ana_kwargs["width_max"] = _integer(ana["width_max"], "analysis.width_max")
    if "depth_max" in ana:
        ana_kwargs["depth_max"] = _integer(ana["depth_max"], "analysis.depth_max")
    if "depth_grid" in ana:
        ana_kwargs["depth_grid"] = _int_list(ana["depth_grid"], "analysis.depth_grid")
    try:
        analysis = AnalysisConfig(**ana_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"analysis: {exc}") from exc

    ben = _require_mapping(doc.get("benchmark", {}), "benchmark")
    _check_keys(ben, _SECTION_KEYS["benchmark"], "benchmark")
    ben_kwargs: dict[str, Any] = {}
    for key in ("shots", "n_circuits", "seed", "width_max", "depth_max"):
        if key in ben:
            ben_kwargs[key] = _integer(ben[key], f"benchmark.{key}")
    if "profiles" in ben:
        if not isinstance(ben["profiles"], list) or not ben["profiles"]:
            raise ScenarioError("benchmark.profiles must be a non-empty list")
        ben_kwargs["profiles"] = tuple(
            _parse_profile(entry, f"benchmark.profiles[{i}]")
            for i, entry in enumerate(ben["profiles"])
        )
    try:
        benchmark = BenchmarkSettings(**ben_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"benchmark: {exc}") from exc

    mit = _require_mapping(doc.get("mitigation", {}), "mitigation")
    _check_keys(mit, _SECTION_KEYS["mitigation"], "mitigation")
    mit_kwargs: dict[str, Any] = {}
    if "overhead_exponent" in mit:
        mit_kwargs["overhead_exponent"] = _number(
            mit["overhead_exponent"], "mitigation.overhead_exponent"
        )
    if "base_shots" in mit:
        mit_kwargs["base_shots"] = _integer(mit["base_shots"], "mitigation.base_shots")
    if "budgets" in mit:
        mit_kwargs["budgets"] = _int_list(mit["budgets"], "mitigation.budgets")
    try:
        mitigation = MitigationSettings(**mit_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"mitigation: {exc}") from exc

    qec = _require_mapping(doc.get("qec", {}), "qec")
    _check_keys(qec, _SECTION_KEYS["qec"], "qec")
    qec_kwargs: dict[str, Any] = {}
    for key in ("p_th", "prefactor", "cost_factor", "cycle_time", "physical_error_rate"):
        if key in qec:
            qec_kwargs[key] = _number(qec[key], f"qec.{key}")
    if "physical_qubit_budgets" in qec:
        qec_kwargs["physical_qubit_budgets"] = _int_list(
            qec["physical_qubit_budgets"], "qec.physical_qubit_budgets"
        )
    if "distance_max" in qec and qec["distance_max"] is not None:
        qec_kwargs["distance_max"] = _integer(qec["distance_max"], "qec.distance_max")
    try:
        qec_settings = QecSettings(**qec_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"qec: {exc}") from exc

    out = _require_mapping(doc.get("output", {}), "output")
    _check_keys(out, _SECTION_KEYS["output"], "output")
    out_kwargs: dict[str, Any] = {}
    if "formats" in out:
        if not isinstance(out["formats"], list):
            raise ScenarioError("output.formats must be a list")
        out_kwargs["formats"] = tuple(
            _string(v, f"output.formats[{i}]") for i, v in enumerate(out["formats"])
        )
    if "directory" in out:
        out_kwargs["directory"] = _string(out["directory"], "output.directory")
    if "basename" in out:
        out_kwargs["basename"] = _string(out["basename"], "output.basename")
    try:
        output = OutputSettings(**out_kwargs)
    except ValueError as exc:
        raise ScenarioError(f"output: {exc}") from exc

    return ScenarioConfig(
        rates=rates,
        analysis=analysis,
        benchmark=benchmark,
        mitigation=mitigation,
        qec=qec_settings,
        output=output,
    )


def serialize_scenario(config: ScenarioConfig) -> str:
    """Resolved scenario as canonical JSON (sorted keys, LF, trailing newline)."""
    return json.dumps(config.resolved(), sort_keys=True, indent=2) + "\n"
