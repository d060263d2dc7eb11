"""Mirror-circuit benchmark simulator with bit-flip error propagation.

The empirical counterpart to the closed-form model: random mirror-structured
circuits are run under stochastic X-flip noise tracked in a Pauli frame.
Errors are injected layer by layer and propagated through two-qubit gates
(control copies its flip onto target), so a single early flip can spread
across the register. A shot succeeds when the final frame is all zeros.

Only bit flips are tracked: the readout is in the computational basis and
single-qubit gates act as error locations only, so no quantum state is ever
simulated and the simulator stays an exact, fast oracle for the noise model.

All randomness is counter-derived (see :mod:`quopatlas.rng`): circuit i of a
run draws its structure from ``split(seed, 2*i)`` and its noise from
``split(seed, 2*i + 1)``; shot j of circuit i uses ``split(noise_seed, j)``;
slot k of a shot uses ``split(shot_seed, k)``. Slot k for qubit q in layer l
is ``l * width + q``, and measurement slots follow at ``depth * width + q``.
Results are therefore pure functions of the inputs, independent of chunking
or thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from .model import (
    AnalysisConfig,
    CapabilityRegion,
    ErrorRates,
    ProgramShape,
    paired_qubit_count,
)


@dataclass(frozen=True)
class Layer:
    """One clock cycle: disjoint (control, target) pairs plus single-gate qubits."""

    pairs: tuple[tuple[int, int], ...]
    singles: tuple[int, ...]

    def qubits(self) -> set[int]:
        out = {q for pair in self.pairs for q in pair}
        out.update(self.singles)
        return out


@dataclass(frozen=True)
class MirrorCircuit:
    """Randomized benchmark circuit whose second half mirrors its first.

    Layer k and layer (depth - 1 - k) carry identical pairings, so the
    noiseless circuit acts as the identity and the noiseless output is the
    all-zeros string.
    """

    width: int
    depth: int
    layers: tuple[Layer, ...]

    @property
    def target_bitstring(self) -> str:
        return "0" * self.width


@dataclass(frozen=True)
class SuccessEstimate:
    """Pooled shot statistics for one (width, depth) cell."""

    shape: ProgramShape
    shots: int
    successes: int
    seed: int

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots!r}")
        if not (0 <= self.successes <= self.shots):
            raise ValueError("successes must lie in [0, shots]")

    @property
    def p_hat(self) -> float:
        return self.successes / self.shots

    @property
    def stderr(self) -> float:
        # Wald standard error; recorded for downstream judgment.
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.shots)


def _fisher_yates(n: int, stream_seed: int) -> list[int]:
    """Deterministic permutation of range(n) driven by the counter stream."""
    perm = list(range(n))
    for step, i in enumerate(range(n - 1, 0, -1)):
        j = rng.bounded(rng.split(stream_seed, step), i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def generate_mirror_circuit(
    width: int, depth: int, density: float, seed: int
) -> MirrorCircuit:
    """Draw a mirror circuit: random half, then the same layers reversed.

    Deterministic function of (width, depth, density, seed). ``depth`` must
    be even and ``round(density * width)`` must be even (pairing feasible).
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width!r}")
    if depth < 2 or depth % 2:
        raise ValueError(f"depth must be even and >= 2, got {depth!r}")
    n2 = paired_qubit_count(width, density)
    half = []
    for k in range(depth // 2):
        perm = _fisher_yates(width, rng.split(seed, k))
        pairs = tuple(
            (perm[2 * m], perm[2 * m + 1]) for m in range(n2 // 2)
        )
        singles = tuple(sorted(perm[n2:]))
        half.append(Layer(pairs=pairs, singles=singles))
    layers = tuple(half) + tuple(reversed(half))
    return MirrorCircuit(width=width, depth=depth, layers=layers)


def pair_flip_probability(eps_2q: float) -> float:
    """Per-qubit injection rate for paired qubits.

    Each qubit of a pair flips with 1 - sqrt(1 - eps_2q) so the pair as a
    whole sees at least one injection with probability exactly eps_2q,
    matching the analytic per-gate accounting.
    """
    return -math.expm1(0.5 * math.log1p(-eps_2q))


def propagate_layer(frame: list[bool], layer: Layer) -> None:
    """Spread flips through a layer's two-qubit gates: x_target ^= x_control."""
    for c, t in layer.pairs:
        frame[t] ^= frame[c]


def simulate_shot(
    circuit: MirrorCircuit,
    rates: ErrorRates,
    shot_seed: int,
    include_measurement: bool = True,
) -> bool:
    """Run one shot; True when the final frame is all zeros.

    Per layer: inject an X on each single-gate qubit with prob eps_1q and on
    each paired qubit with prob 1 - sqrt(1 - eps_2q), then propagate flips
    through the layer's pairs. Finally flip each bit with prob eps_meas when
    measurement is included. ``shot_seed`` is the counter stream for this
    shot; the identical arithmetic runs vectorized in :func:`simulate_block`.
    """
    p1 = rates.eps_1q
    pp = pair_flip_probability(rates.eps_2q)
    w = circuit.width
    frame = [False] * w
    for l, layer in enumerate(circuit.layers):
        base = l * w
        for q in layer.singles:
            if p1 > 0.0 and rng.uniform_at(shot_seed, base + q) < p1:
                frame[q] = not frame[q]
        for c, t in layer.pairs:
            if pp > 0.0:
                if rng.uniform_at(shot_seed, base + c) < pp:
                    frame[c] = not frame[c]
                if rng.uniform_at(shot_seed, base + t) < pp:
                    frame[t] = not frame[t]
        propagate_layer(frame, layer)
    if include_measurement and rates.eps_meas > 0.0:
        base = circuit.depth * w
        for q in range(w):
            if rng.uniform_at(shot_seed, base + q) < rates.eps_meas:
                frame[q] = not frame[q]
    return not any(frame)


def _layer_inject_probs(circuit: MirrorCircuit, rates: ErrorRates) -> np.ndarray:
    """(depth, width) per-qubit injection probabilities."""
    pp = pair_flip_probability(rates.eps_2q)
    probs = np.empty((circuit.depth, circuit.width), dtype=np.float64)
    for l, layer in enumerate(circuit.layers):
        for q in layer.singles:
            probs[l, q] = rates.eps_1q
        for c, t in layer.pairs:
            probs[l, c] = pp
            probs[l, t] = pp
    return probs


def simulate_block(
    circuit: MirrorCircuit,
    rates: ErrorRates,
    shot_seeds: np.ndarray,
    include_measurement: bool = True,
) -> np.ndarray:
    """Vectorized shots; bit-identical to :func:`simulate_shot` per seed."""
    w = circuit.width
    n = len(shot_seeds)
    seeds = np.asarray(shot_seeds, dtype=np.uint64)
    probs = _layer_inject_probs(circuit, rates)
    frame = np.zeros((n, w), dtype=bool)
    qubit_idx = np.arange(w, dtype=np.uint64)
    for l, layer in enumerate(circuit.layers):
        slots = np.uint64(l * w) + qubit_idx
        u = rng.uniform_np(seeds[:, None], slots[None, :])
        frame ^= u < probs[l]
        for c, t in layer.pairs:
            frame[:, t] ^= frame[:, c]
    if include_measurement and rates.eps_meas > 0.0:
        slots = np.uint64(circuit.depth * w) + qubit_idx
        u = rng.uniform_np(seeds[:, None], slots[None, :])
        frame ^= u < rates.eps_meas
    return ~frame.any(axis=1)


def _circuit_shot_counts(shots: int, n_circuits: int) -> list[int]:
    base, extra = divmod(shots, n_circuits)
    return [base + (1 if i < extra else 0) for i in range(n_circuits)]


def _run_circuit(
    width: int,
    depth: int,
    rates: ErrorRates,
    seed: int,
    circuit_index: int,
    n_shots: int,
    include_measurement: bool,
    block_size: int = 65536,
) -> int:
    struct_seed = rng.split(seed, 2 * circuit_index)
    noise_seed = rng.split(seed, 2 * circuit_index + 1)
    circuit = generate_mirror_circuit(width, depth, rates.two_qubit_density, struct_seed)
    successes = 0
    for start in range(0, n_shots, block_size):
        count = min(block_size, n_shots - start)
        idx = np.arange(start, start + count, dtype=np.uint64)
        shot_seeds = rng.split_np(noise_seed, idx)
        successes += int(
            simulate_block(circuit, rates, shot_seeds, include_measurement).sum()
        )
    return successes


def estimate_success(
    width: int,
    depth: int,
    rates: ErrorRates,
    shots: int,
    n_circuits: int,
    seed: int,
    include_measurement: bool = True,
    threads: int = 1,
) -> SuccessEstimate:
    """Pool shots over ``n_circuits`` random circuits of the given shape.

    The two-qubit density is taken from ``rates.two_qubit_density``. Shots
    are spread as evenly as possible over the circuits (the first
    ``shots % n_circuits`` circuits get one extra). Deterministic for fixed
    seed regardless of thread count.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots!r}")
    if n_circuits < 1:
        raise ValueError(f"n_circuits must be >= 1, got {n_circuits!r}")
    if shots < n_circuits:
        raise ValueError(f"shots ({shots}) must be >= n_circuits ({n_circuits})")
    counts = _circuit_shot_counts(shots, n_circuits)

    def run(i: int) -> int:
        return _run_circuit(
            width, depth, rates, seed, i, counts[i], include_measurement
        )

    if threads > 1 and n_circuits > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_circuit = list(pool.map(run, range(n_circuits)))
    else:
        per_circuit = [run(i) for i in range(n_circuits)]
    return SuccessEstimate(
        shape=ProgramShape(width, depth),
        shots=shots,
        successes=sum(per_circuit),
        seed=seed,
    )


def benchmark_depth_grid(config: AnalysisConfig) -> tuple[int, ...]:
    """Even depths from the config grid (mirror circuits need even depth)."""
    return tuple(d for d in config.depth_grid if d % 2 == 0)


def scan_capability(
    rates: ErrorRates,
    config: AnalysisConfig,
    shots: int,
    seed: int,
    n_circuits: int = 5,
    threads: int = 1,
    label: str | None = None,
) -> tuple[CapabilityRegion, list[SuccessEstimate]]:
    """Measure the empirical capability region plus every evaluated cell.

    For each width the depth grid is scanned in ascending order and stops at
    the first depth whose p_hat falls below the threshold (monotone scan),
    which keeps the empirical region downward closed even under statistical
    flukes. Cell seeds are derived from (seed, width, depth), so the set of
    evaluated cells never changes any cell's outcome.
    """
    if label is None:
        label = (
            f"empirical eps1q={rates.eps_1q:g} eps2q={rates.eps_2q:g} "
            f"epsm={rates.eps_meas:g} zeta={rates.two_qubit_density:g}"
        )
    depths = benchmark_depth_grid(config)
    frontier: dict[int, int] = {}
    cells: list[SuccessEstimate] = []
    for w in range(1, config.width_max + 1):
        best = 0
        for d in depths:
            cell_seed = rng.split(rng.split(seed, w), d)
            est = estimate_success(
                w,
                d,
                rates,
                shots,
                n_circuits,
                cell_seed,
                include_measurement=config.include_measurement,
                threads=threads,
            )
            cells.append(est)
            if est.p_hat >= config.threshold:
                best = d
            else:
                break
        frontier[w] = best
    region = CapabilityRegion(
        threshold=config.threshold,
        frontier=frontier,
        label=label,
        source="empirical",
        metadata={
            "rates": rates.as_dict(),
            "analysis": config.as_dict(),
            "shots": shots,
            "n_circuits": n_circuits,
            "seed": seed,
        },
    )
    return region, cells


def measure_capability(
    rates: ErrorRates,
    config: AnalysisConfig,
    shots: int,
    seed: int,
    n_circuits: int = 5,
    threads: int = 1,
    label: str | None = None,
) -> CapabilityRegion:
    """Empirical capability region (see :func:`scan_capability` for cells)."""
    region, _ = scan_capability(
        rates, config, shots, seed, n_circuits=n_circuits, threads=threads, label=label
    )
    return region
