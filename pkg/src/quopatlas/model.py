"""Closed-form capability model.

A program shape is a (width, depth) rectangle of operation slots; it runs
successfully when no slot errs. Success probability is therefore a product
of per-slot survival probabilities, which gives closed forms for the
maximum reliable depth at each width (the capability frontier) and for the
inverse query (the error rate required to run a given shape).

Uniform mode means ``two_qubit_density = 0`` with ``eps_1q = eps``, so that
success is exactly ``(1 - eps) ** (width * depth)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

INV_E = math.exp(-1.0)


class PairingError(ValueError):
    """Two-qubit pairing is infeasible for the requested width and density."""


def paired_qubit_count(width: int, density: float) -> int:
    """Qubits engaged in two-qubit gates per layer: round(density * width).

    Rounds to nearest (ties to even, Python semantics). Raises
    :class:`PairingError` when the result is odd, since an odd number of
    qubits cannot be arranged into disjoint pairs.
    """
    n2 = round(density * width)
    if n2 % 2:
        raise PairingError(
            f"round(density * width) = {n2} is odd; adjust density ({density}) "
            f"or width ({width}) so the paired-qubit count is even"
        )
    return n2


@dataclass(frozen=True)
class ProgramShape:
    """A rectangular program: ``width`` qubits through ``depth`` gate layers."""

    width: int
    depth: int

    def __post_init__(self) -> None:
        if not isinstance(self.width, int) or self.width < 1:
            raise ValueError(f"width must be a positive integer, got {self.width!r}")
        if not isinstance(self.depth, int) or self.depth < 1:
            raise ValueError(f"depth must be a positive integer, got {self.depth!r}")

    @property
    def quops(self) -> int:
        return self.width * self.depth


def quop_size(shape: ProgramShape) -> int:
    """Operation count width x depth. Python integers make this exact at any scale."""
    return shape.width * shape.depth


@dataclass(frozen=True)
class ErrorRates:
    """Per-operation-class error probabilities plus two-qubit layer density.

    ``two_qubit_density`` is the fraction of qubits engaged in two-qubit
    gates in each layer; the remaining qubits carry single-qubit gates.
    """

    eps_1q: float = 0.0
    eps_2q: float = 0.0
    eps_meas: float = 0.0
    two_qubit_density: float = 0.0

    def __post_init__(self) -> None:
        for name in ("eps_1q", "eps_2q", "eps_meas"):
            v = getattr(self, name)
            if not (0.0 <= v < 1.0):
                raise ValueError(f"{name} must be in [0, 1), got {v!r}")
        if not (0.0 <= self.two_qubit_density <= 1.0):
            raise ValueError(
                f"two_qubit_density must be in [0, 1], got {self.two_qubit_density!r}"
            )

    @classmethod
    def uniform(cls, eps: float) -> "ErrorRates":
        """Uniform mode: every gate slot fails independently with ``eps``."""
        return cls(eps_1q=eps, eps_2q=eps, eps_meas=0.0, two_qubit_density=0.0)

    def paired_qubits(self, width: int) -> int:
        return paired_qubit_count(width, self.two_qubit_density)

    def as_dict(self) -> dict:
        return {
            "eps_1q": self.eps_1q,
            "eps_2q": self.eps_2q,
            "eps_meas": self.eps_meas,
            "zeta": self.two_qubit_density,
        }


def default_depth_grid(depth_max: int) -> tuple[int, ...]:
    """Powers of 2 and 10 up to ``depth_max``, sorted ascending."""
    grid: set[int] = set()
    for base in (2, 10):
        v = 1
        while v <= depth_max:
            grid.add(v)
            v *= base
    return tuple(sorted(grid))


@dataclass(frozen=True)
class AnalysisConfig:
    """Threshold and grid bounds shared by every capability engine."""

    threshold: float = INV_E
    include_measurement: bool = True
    width_max: int = 256
    depth_max: int = 10**6
    depth_grid: tuple[int, ...] = None  # type: ignore[assignment]  # filled below

    def __post_init__(self) -> None:
        if not (0.0 < self.threshold < 1.0):
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold!r}")
        if self.width_max < 1:
            raise ValueError(f"width_max must be >= 1, got {self.width_max!r}")
        if self.depth_max < 1:
            raise ValueError(f"depth_max must be >= 1, got {self.depth_max!r}")
        grid = self.depth_grid
        if grid is None:
            grid = default_depth_grid(self.depth_max)
        grid = tuple(int(d) for d in grid)
        if any(d < 1 or d > self.depth_max for d in grid):
            raise ValueError("depth_grid entries must lie in [1, depth_max]")
        if list(grid) != sorted(grid):
            raise ValueError("depth_grid must be sorted ascending")
        object.__setattr__(self, "depth_grid", grid)

    def without_measurement(self) -> "AnalysisConfig":
        return replace(self, include_measurement=False)

    def as_dict(self) -> dict:
        return {
            "threshold": self.threshold,
            "include_measurement": self.include_measurement,
            "width_max": self.width_max,
            "depth_max": self.depth_max,
            "depth_grid": list(self.depth_grid),
        }


@dataclass
class CapabilityRegion:
    """Per-width maximum reliable depth at a success threshold.

    ``frontier[w] == 0`` means no depth passes at width ``w``. Membership is
    downward closed in depth by construction: (w, d) is in the region iff
    ``1 <= d <= frontier[w]``.
    """

    threshold: float
    frontier: dict[int, int]
    label: str
    source: str = "analytic"
    metadata: dict = field(default_factory=dict)

    def widths(self) -> list[int]:
        return sorted(self.frontier)

    def max_depth(self, width: int) -> int:
        return self.frontier.get(width, 0)

    def contains(self, width: int, depth: int) -> bool:
        return 1 <= depth <= self.frontier.get(width, 0)

    def max_quops(self) -> int:
        return max((w * d for w, d in self.frontier.items()), default=0)

    def covers(self, other: "CapabilityRegion") -> bool:
        """True when this region pointwise dominates ``other``."""
        keys = set(self.frontier) | set(other.frontier)
        return all(self.frontier.get(w, 0) >= other.frontier.get(w, 0) for w in keys)


def layer_success_prob(width: int, rates: ErrorRates) -> float:
    """Probability that one layer of gates on ``width`` qubits is error-free."""
    n2 = rates.paired_qubits(width)
    n1 = width - n2
    return (1.0 - rates.eps_1q) ** n1 * (1.0 - rates.eps_2q) ** (n2 // 2)


def _log_layer_success(width: int, rates: ErrorRates) -> float:
    n2 = rates.paired_qubits(width)
    n1 = width - n2
    return n1 * math.log1p(-rates.eps_1q) + (n2 // 2) * math.log1p(-rates.eps_2q)


def log_success_probability(
    shape: ProgramShape, rates: ErrorRates, config: AnalysisConfig
) -> float:
    """Natural log of the success probability, safe at any quop scale."""
    lg = shape.depth * _log_layer_success(shape.width, rates)
    if config.include_measurement:
        lg += shape.width * math.log1p(-rates.eps_meas)
    return lg


def success_probability(
    shape: ProgramShape, rates: ErrorRates, config: AnalysisConfig
) -> float:
    """Probability that the shape runs with zero errors anywhere.

    Monotone non-increasing in width, depth, and every rate. Evaluated in
    log space: one rounding chain keeps the result within a few ulps at any
    quop scale (a cascaded pow would lose ~depth ulps), and teraquop-scale
    underflow degrades gracefully to 0.0.
    """
    return math.exp(log_success_probability(shape, rates, config))


def max_reliable_depth(width: int, rates: ErrorRates, config: AnalysisConfig) -> int:
    """Largest depth <= depth_max whose success probability meets the threshold.

    Closed form via logarithms, then polished by +-1 steps against
    :func:`success_probability` so the result agrees exactly with a linear
    scan (ties are inclusive: a depth passes iff success >= threshold).
    Returns 0 when no depth passes.
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width!r}")
    log_tau = math.log(config.threshold)
    ll = _log_layer_success(width, rates)
    lm = width * math.log1p(-rates.eps_meas) if config.include_measurement else 0.0

    def passes(d: int) -> bool:
        return (
            d >= 1
            and success_probability(ProgramShape(width, d), rates, config)
            >= config.threshold
        )

    if ll == 0.0:
        return config.depth_max if passes(config.depth_max) else 0
    est = (log_tau - lm) / ll
    if est >= config.depth_max:
        d = config.depth_max
    elif est <= 0.0:
        d = 0
    else:
        d = int(math.floor(est))
    while d < config.depth_max and passes(d + 1):
        d += 1
    while d > 0 and not passes(d):
        d -= 1
    return d


def capability_frontier(
    rates: ErrorRates, config: AnalysisConfig, label: str | None = None
) -> CapabilityRegion:
    """Analytic capability region over widths 1..width_max."""
    if label is None:
        label = (
            f"analytic eps1q={rates.eps_1q:g} eps2q={rates.eps_2q:g} "
            f"epsm={rates.eps_meas:g} zeta={rates.two_qubit_density:g}"
        )
    frontier = {
        w: max_reliable_depth(w, rates, config) for w in range(1, config.width_max + 1)
    }
    return CapabilityRegion(
        threshold=config.threshold,
        frontier=frontier,
        label=label,
        source="analytic",
        metadata={"rates": rates.as_dict(), "analysis": config.as_dict()},
    )


def required_error_rate(shape: ProgramShape, config: AnalysisConfig) -> float:
    """Largest uniform per-slot error rate at which the shape still passes.

    The shape contributes width*depth gate slots, plus width measurement
    slots when the config includes measurement; each slot is charged the
    same rate. Inverse of the uniform-mode success probability:
    ``eps = 1 - threshold ** (1 / s_eff)``, computed via expm1 so teraquop
    scales keep full precision.
    """
    s_eff = shape.quops + (shape.width if config.include_measurement else 0)
    return -math.expm1(math.log(config.threshold) / s_eff)
