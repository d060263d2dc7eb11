"""Independent oracles used by the test suite.

These deliberately use the dumbest correct algorithms (full enumeration,
linear scans, ray casting) and share as little arithmetic as possible with
the library paths they check.
"""

from __future__ import annotations

import math
from collections import defaultdict

from quopatlas.benchmark import MirrorCircuit
from quopatlas.model import AnalysisConfig, ErrorRates, ProgramShape, success_probability


def exact_success_probability(
    circuit: MirrorCircuit, rates: ErrorRates, include_measurement: bool = True
) -> float:
    """Exact shot success probability by enumerating every injection pattern.

    Each gate slot is an independent Bernoulli flip (singles at eps_1q, paired
    qubits at 1 - sqrt(1 - eps_2q), measurement at eps_meas); for each of the
    2^slots patterns the flips are walked through the circuit's layers
    (inject, then propagate control onto target) and the pattern's probability
    is accumulated when the final frame is all zeros.
    """
    pp = 1.0 - math.sqrt(1.0 - rates.eps_2q)
    slots: list[tuple[int, int, float]] = []
    for l, layer in enumerate(circuit.layers):
        for q in layer.singles:
            slots.append((l, q, rates.eps_1q))
        for c, t in layer.pairs:
            slots.append((l, c, pp))
            slots.append((l, t, pp))
    if include_measurement:
        for q in range(circuit.width):
            slots.append((circuit.depth, q, rates.eps_meas))
    n = len(slots)
    total = 0.0
    for mask in range(1 << n):
        prob = 1.0
        flips: dict[int, list[int]] = defaultdict(list)
        for i, (l, q, p) in enumerate(slots):
            if (mask >> i) & 1:
                prob *= p
                flips[l].append(q)
            else:
                prob *= 1.0 - p
        if prob == 0.0:
            continue
        frame = [False] * circuit.width
        for l, layer in enumerate(circuit.layers):
            for q in flips.get(l, ()):
                frame[q] = not frame[q]
            for c, t in layer.pairs:
                frame[t] ^= frame[c]
        for q in flips.get(circuit.depth, ()):
            frame[q] = not frame[q]
        if not any(frame):
            total += prob
    return total


def naive_max_depth(width: int, rates: ErrorRates, config: AnalysisConfig) -> int:
    """Linear scan over every depth up to depth_max."""
    best = 0
    for d in range(1, config.depth_max + 1):
        p = success_probability(ProgramShape(width, d), rates, config)
        if p >= config.threshold:
            best = d
    return best


def product_layer_success(width: int, rates: ErrorRates) -> float:
    """Slot-by-slot product form of the layer survival probability."""
    n2 = round(rates.two_qubit_density * width)
    p = 1.0
    for _ in range(width - n2):
        p *= 1.0 - rates.eps_1q
    for _ in range(n2 // 2):
        p *= 1.0 - rates.eps_2q
    return p


def point_in_polygon(x: float, y: float, points: list[tuple[float, float]]) -> bool:
    """Ray-casting point-in-polygon test."""
    inside = False
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x_cross > x:
                inside = not inside
    return inside
