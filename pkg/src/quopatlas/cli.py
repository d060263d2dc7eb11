"""Command-line surface: one subcommand per engine plus the combined atlas.

Exit codes: 0 success, 2 configuration/usage error, 1 runtime failure.
Diagnostics go to stderr; stdout carries a single JSON summary per command
(paths written plus headline metrics) so scripted callers can stay quiet
with --quiet. Output files are written atomically (temp file + rename), so
interrupted runs never leave truncated artifacts.

Flag overrides map one-to-one onto scenario keys with precedence
CLI flag > scenario file > default; the fully resolved configuration is
echoed into every artifact.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .atlas import (
    RegionTable,
    RenderStyle,
    cells_table,
    emit_csv,
    render_svg,
    table_from_region,
)
from .benchmark import benchmark_depth_grid, scan_capability
from .mitigation import mitigated_frontier
from .model import (
    CapabilityRegion,
    ErrorRates,
    PairingError,
    ProgramShape,
    capability_frontier,
)
from .qec import (
    ThresholdError,
    plan_for_target,
    qec_capability_region,
    teraquop_sensitivity,
)
from .scenario import (
    RateProfile,
    ScenarioConfig,
    ScenarioError,
    parse_scenario,
    serialize_scenario,
)

SCENARIO_DIR_ENV = "QUOPATLAS_SCENARIO_DIR"

# benchmark cost guard: worst-case simulated slots without --allow-long
MAX_DEFAULT_BENCH_SLOTS = 5 * 10**8


class _ConfigError(ValueError):
    """User-facing configuration problem (exit code 2)."""


def _write_atomic(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _load_scenario(args: argparse.Namespace) -> ScenarioConfig:
    if args.scenario is None:
        return ScenarioConfig()
    path = Path(args.scenario)
    if not path.is_absolute() and not path.exists():
        env_dir = os.environ.get(SCENARIO_DIR_ENV)
        if env_dir and (Path(env_dir) / path).exists():
            path = Path(env_dir) / path
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _ConfigError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(text)


def _apply_overrides(config: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    rates = config.rates
    analysis = config.analysis
    benchmark = config.benchmark
    mitigation = config.mitigation
    qec = config.qec
    output = config.output
    try:
        if getattr(args, "eps", None) is not None:
            rates = ErrorRates.uniform(args.eps)
        if getattr(args, "shots", None) is not None:
            benchmark = dataclasses.replace(benchmark, shots=args.shots)
        if getattr(args, "seed", None) is not None:
            benchmark = dataclasses.replace(benchmark, seed=args.seed)
        if getattr(args, "budget", None):
            mitigation = dataclasses.replace(
                mitigation, budgets=tuple(args.budget)
            )
        if getattr(args, "physical_qubits", None):
            qec = dataclasses.replace(
                qec, physical_qubit_budgets=tuple(args.physical_qubits)
            )
        if getattr(args, "p", None) is not None:
            qec = dataclasses.replace(qec, physical_error_rate=args.p)
        if getattr(args, "out", None) is not None:
            output = dataclasses.replace(output, directory=args.out)
        if getattr(args, "format", None) is not None:
            formats = ("csv", "svg") if args.format == "both" else (args.format,)
            output = dataclasses.replace(output, formats=formats)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    return ScenarioConfig(
        rates=rates,
        analysis=analysis,
        benchmark=benchmark,
        mitigation=mitigation,
        qec=qec,
        output=output,
    )


def _say(args: argparse.Namespace, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _emit_outputs(
    config: ScenarioConfig,
    args: argparse.Namespace,
    tables: list[RegionTable],
    regions: list[CapabilityRegion],
    name: str,
    style: RenderStyle | None = None,
) -> list[str]:
    echo = config.resolved()
    out_dir = Path(config.output.directory)
    written = []
    if getattr(args, "verbose", False) and not args.quiet:
        for region in regions:
            print(
                f"  {region.label}: max quops {region.max_quops()}, "
                f"{sum(1 for d in region.frontier.values() if d)} live widths",
                file=sys.stderr,
            )
    if "csv" in config.output.formats:
        path = out_dir / f"{config.output.basename}-{name}.csv"
        _write_atomic(path, emit_csv(tables, scenario_echo=echo))
        written.append(str(path))
    if "svg" in config.output.formats and regions:
        path = out_dir / f"{config.output.basename}-{name}.svg"
        svg = render_svg(regions, style or RenderStyle(), scenario_echo=echo)
        _write_atomic(path, svg.encode("utf-8"))
        written.append(str(path))
    for p in written:
        _say(args, f"wrote {p}")
    return written


def _summary(args: argparse.Namespace, payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def _panel_style(title: str, guides=(10**12,)) -> RenderStyle:
    return RenderStyle(title=title, quop_guides=tuple(guides))


def _bench_profiles(config: ScenarioConfig, args: argparse.Namespace):
    if getattr(args, "eps", None) is not None:
        try:
            return (
                RateProfile(f"eps={args.eps:g}", ErrorRates.uniform(args.eps)),
            )
        except ValueError as exc:
            raise _ConfigError(str(exc)) from exc
    return config.benchmark.profiles


def cmd_validate(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    sys.stdout.write(serialize_scenario(config))
    return 0


def cmd_frontier(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    if args.eps_list:
        try:
            rate_sets = [
                (f"analytic eps={e:g}", ErrorRates.uniform(e)) for e in args.eps_list
            ]
        except ValueError as exc:
            raise _ConfigError(str(exc)) from exc
    elif getattr(args, "eps", None) is not None:
        rate_sets = [(f"analytic eps={args.eps:g}", config.rates)]
    else:
        rate_sets = [(None, config.rates)]
    regions = [
        capability_frontier(rates, config.analysis, label=label)
        for label, rates in rate_sets
    ]
    tables = [table_from_region(r) for r in regions]
    written = _emit_outputs(
        config, args, tables, regions, "frontier", _panel_style("Analytic capability")
    )
    _summary(
        args,
        {
            "command": "frontier",
            "outputs": written,
            "max_quops": {r.label: r.max_quops() for r in regions},
        },
    )
    return 0


def _bench_cost(config: ScenarioConfig, n_profiles: int) -> int:
    grid = config.benchmark.grid_config(config.analysis)
    depths = benchmark_depth_grid(grid)
    cells = sum(
        w * (d + 1) for w in range(1, grid.width_max + 1) for d in depths
    )
    return cells * config.benchmark.shots * n_profiles


def cmd_benchmark(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    profiles = _bench_profiles(config, args)
    cost = _bench_cost(config, len(profiles))
    if cost > MAX_DEFAULT_BENCH_SLOTS and not args.allow_long:
        raise _ConfigError(
            f"benchmark grid needs ~{cost:.2g} simulated slots "
            f"(> {MAX_DEFAULT_BENCH_SLOTS:.2g}); pass --allow-long to proceed"
        )
    grid = config.benchmark.grid_config(config.analysis)
    regions = []
    tables = []
    for profile in profiles:
        _say(args, f"benchmarking {profile.label}")
        region, cells = scan_capability(
            profile.rates,
            grid,
            shots=config.benchmark.shots,
            seed=config.benchmark.seed,
            n_circuits=config.benchmark.n_circuits,
            threads=args.threads,
            label=f"empirical {profile.label}",
        )
        regions.append(region)
        cell_stats = {(e.shape.width, e.shape.depth): (e.p_hat, e.stderr) for e in cells}
        tables.append(table_from_region(region, cells=cell_stats))
        tables.append(cells_table(f"empirical {profile.label} [cells]", cells))
    written = _emit_outputs(
        config, args, tables, regions, "benchmark",
        _panel_style("Measured capability (simulated benchmark)"),
    )
    _summary(
        args,
        {
            "command": "benchmark",
            "outputs": written,
            "seed": config.benchmark.seed,
            "max_quops": {r.label: r.max_quops() for r in regions},
        },
    )
    return 0


def cmd_mitigate(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    base = capability_frontier(config.rates, config.analysis)
    regions = [base]
    for model in config.mitigation.models():
        region = mitigated_frontier(config.rates, model, config.analysis)
        if "budget_warning" in region.metadata:
            print(f"warning: {region.metadata['budget_warning']}", file=sys.stderr)
        regions.append(region)
    tables = [table_from_region(r) for r in regions]
    written = _emit_outputs(
        config, args, tables, regions, "mitigate",
        _panel_style("Capability under mitigation shot budgets"),
    )
    _summary(
        args,
        {
            "command": "mitigate",
            "outputs": written,
            "max_quops": {r.label: r.max_quops() for r in regions},
        },
    )
    return 0


def cmd_qec(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    model = config.qec.model()
    p = config.qec.physical_error_rate
    if args.target_width is not None or args.target_depth is not None:
        if args.target_width is None or args.target_depth is None:
            raise _ConfigError("plan mode needs both --target-width and --target-depth")
        shape = ProgramShape(args.target_width, args.target_depth)
        # the qec engine charges logical qubit-layer slots only, so plan mode
        # uses the same no-measurement convention as the region scan
        plan = plan_for_target(shape, p, model, config.analysis.without_measurement())
        payload = {
            "command": "qec-plan",
            "width": shape.width,
            "depth": shape.depth,
            "distance": plan.distance,
            "p_logical": plan.p_logical,
            "physical_qubits": plan.physical_qubits,
            "wall_clock_seconds": plan.wall_clock_seconds,
            "required_rate": plan.required_rate,
        }
        _say(
            args,
            f"plan: d={plan.distance}, {plan.physical_qubits} physical qubits, "
            f"{plan.wall_clock_seconds:g} s",
        )
        _summary(args, payload)
        return 0
    regions = []
    for budget in config.qec.physical_qubit_budgets:
        region = qec_capability_region(
            budget, p, model, config.analysis, distance_max=config.qec.distance_max
        )
        if "budget_warning" in region.metadata:
            print(f"warning: {region.metadata['budget_warning']}", file=sys.stderr)
        regions.append(region)
    tables = [table_from_region(r) for r in regions]
    if args.sensitivity:
        entries = teraquop_sensitivity()
        feasible = [e for e in entries if e.feasible]
        _say(args, f"sensitivity: {len(feasible)}/{len(entries)} settings feasible")
    written = _emit_outputs(
        config, args, tables, regions, "qec",
        _panel_style("Capability under surface-code budgets"),
    )
    payload = {
        "command": "qec",
        "outputs": written,
        "max_quops": {r.label: r.max_quops() for r in regions},
    }
    if args.sensitivity:
        payload["sensitivity_feasible"] = [dataclasses.asdict(e) for e in feasible]
    _summary(args, payload)
    return 0


def cmd_atlas(args: argparse.Namespace) -> int:
    config = _apply_overrides(_load_scenario(args), args)
    echo = config.resolved()
    out_dir = Path(config.output.directory)
    base = config.output.basename
    written: list[str] = []
    all_tables: list[RegionTable] = []

    # panel (a): simulated benchmark regions for the configured profiles
    grid = config.benchmark.grid_config(config.analysis)
    profiles = _bench_profiles(config, args)
    cost = _bench_cost(config, len(profiles))
    if cost > MAX_DEFAULT_BENCH_SLOTS and not args.allow_long:
        raise _ConfigError(
            f"atlas benchmark panel needs ~{cost:.2g} simulated slots "
            f"(> {MAX_DEFAULT_BENCH_SLOTS:.2g}); pass --allow-long to proceed"
        )
    bench_regions = []
    for profile in profiles:
        _say(args, f"panel a: benchmarking {profile.label}")
        region, cells = scan_capability(
            profile.rates,
            grid,
            shots=config.benchmark.shots,
            seed=config.benchmark.seed,
            n_circuits=config.benchmark.n_circuits,
            threads=args.threads,
            label=f"empirical {profile.label}",
        )
        bench_regions.append(region)
        cell_stats = {(e.shape.width, e.shape.depth): (e.p_hat, e.stderr) for e in cells}
        all_tables.append(table_from_region(region, cells=cell_stats))

    # panel (b): analytic frontiers for a spread of uniform rates
    _say(args, "panel b: analytic frontiers")
    analytic_regions = [
        capability_frontier(
            ErrorRates.uniform(eps), config.analysis, label=f"analytic eps={eps:g}"
        )
        for eps in (1e-3, 1e-4, 1e-5)
    ]
    all_tables.extend(table_from_region(r) for r in analytic_regions)

    # panel (c): mitigation budgets over the scenario rates
    _say(args, "panel c: mitigation budgets")
    mit_rates = ErrorRates.uniform(1e-3)
    mit_regions = [
        capability_frontier(mit_rates, config.analysis, label="analytic eps=0.001")
    ]
    for model in config.mitigation.models():
        mit_regions.append(mitigated_frontier(mit_rates, model, config.analysis))
    all_tables.extend(table_from_region(r) for r in mit_regions)

    # panel (d): surface-code regions per physical-qubit budget
    _say(args, "panel d: surface-code budgets")
    qec_regions = [
        qec_capability_region(
            budget,
            config.qec.physical_error_rate,
            config.qec.model(),
            config.analysis,
            distance_max=config.qec.distance_max,
        )
        for budget in config.qec.physical_qubit_budgets
    ]
    all_tables.extend(table_from_region(r) for r in qec_regions)

    panels = (
        ("a-benchmark", bench_regions, "a: measured capability (simulated)"),
        ("b-analytic", analytic_regions, "b: reduced error rates"),
        ("c-mitigated", mit_regions, "c: error mitigation budgets"),
        ("d-qec", qec_regions, "d: surface-code error correction"),
    )
    for name, regions, title in panels:
        path = out_dir / f"{base}-{name}.svg"
        svg = render_svg(regions, _panel_style(title), scenario_echo=echo)
        _write_atomic(path, svg.encode("utf-8"))
        written.append(str(path))
        _say(args, f"wrote {path}")
    csv_path = out_dir / f"{base}-atlas.csv"
    _write_atomic(csv_path, emit_csv(all_tables, scenario_echo=echo))
    written.append(str(csv_path))
    _say(args, f"wrote {csv_path}")
    _summary(args, {"command": "atlas", "outputs": written, "seed": config.benchmark.seed})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quopatlas",
        description=(
            "Quantum capability regions: analytic frontiers, simulated "
            "benchmarks, mitigation budgets, and surface-code projections."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--scenario", help="scenario JSON file")
        p.add_argument("--out", help="output directory override")
        p.add_argument(
            "--format", choices=("csv", "svg", "both"), help="output format override"
        )
        p.add_argument("--quiet", action="store_true", help="suppress stderr progress")
        p.add_argument("--verbose", action="store_true", help="extra stderr detail")
        p.add_argument(
            "--threads", type=int, default=1, help="worker threads (default 1)"
        )

    p = sub.add_parser("frontier", help="analytic capability region")
    common(p)
    p.add_argument("--eps", type=float, help="uniform per-slot error rate")
    p.add_argument(
        "--eps-list",
        type=float,
        nargs="+",
        metavar="EPS",
        help="several uniform rates, one region each",
    )
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("benchmark", help="simulated mirror-circuit benchmark")
    common(p)
    p.add_argument("--eps", type=float, help="replace profiles with one uniform rate")
    p.add_argument("--shots", type=int, help="shots per grid cell")
    p.add_argument("--seed", type=int, help="benchmark seed")
    p.add_argument(
        "--allow-long", action="store_true", help="permit large benchmark grids"
    )
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("mitigate", help="mitigation shot-budget regions")
    common(p)
    p.add_argument("--eps", type=float, help="uniform per-slot error rate")
    p.add_argument(
        "--budget", type=int, action="append", help="shot budget (repeatable)"
    )
    p.set_defaults(func=cmd_mitigate)

    p = sub.add_parser("qec", help="surface-code capability regions / plan")
    common(p)
    p.add_argument(
        "--physical-qubits",
        type=int,
        action="append",
        help="physical qubit budget (repeatable)",
    )
    p.add_argument("--p", type=float, help="physical error rate")
    p.add_argument("--target-width", type=int, help="plan mode: logical width")
    p.add_argument("--target-depth", type=int, help="plan mode: logical depth")
    p.add_argument(
        "--sensitivity",
        action="store_true",
        help="also run the teraquop qubit-budget sensitivity sweep",
    )
    p.set_defaults(func=cmd_qec)

    p = sub.add_parser("atlas", help="regenerate the four-panel capability atlas")
    common(p)
    p.add_argument("--eps", type=float, help=argparse.SUPPRESS)
    p.add_argument("--shots", type=int, help="benchmark shots per cell")
    p.add_argument("--seed", type=int, help="benchmark seed")
    p.add_argument(
        "--allow-long", action="store_true", help="permit large benchmark grids"
    )
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("validate", help="parse a scenario and print the resolved config")
    common(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, _ConfigError, PairingError, ThresholdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure: keep the contract of exit 1
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
