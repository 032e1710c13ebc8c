"""Command line entry point.

    planner geometry --config scenario.json
    planner link --config scenario.json --breakdown
    planner sweep --config scenario.json --variable distance_ratio \\
        --range 1:100:199 --transmittances 0.8,1,2,5,10 --out ratio.csv

Exit codes: 0 success, 1 configuration error, 2 numeric domain error,
3 output error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Sequence, TextIO

from . import geometry
from .channel import DivergenceMode
from .config import ScenarioConfig, load_config
from .errors import ConfigError, DomainError, OutputError
from .linkbudget import evaluate_link
from .sweep import CurveSeries, SweepSpec, SweepVariable, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3

CONFIG_ENV = "PLANNER_CONFIG"


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def format_csv(series: CurveSeries) -> str:
    series.check()
    lines = [",".join([series.variable, *series.column_names])]
    for i, x in enumerate(series.grid):
        row = [x, *(values[i] for _, values in series.columns)]
        lines.append(",".join(f"{v:.9g}" for v in row))
    return "\n".join(lines) + "\n"


def write_csv(series: CurveSeries, path: str | os.PathLike) -> None:
    """Write ``series`` atomically: nothing appears at ``path`` on failure."""
    text = format_csv(series)
    path = Path(path)
    tmp = None
    try:
        fd, tmp = tempfile.mkstemp(
            dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
        )
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)
        raise OutputError(f"cannot write {str(path)!r}: {exc.strerror or exc}") from exc


def geometry_report(config: ScenarioConfig) -> dict[str, float]:
    scenario = config.to_scenario()
    beam, ris = scenario.beam, scenario.ris
    geo = geometry.ris_geometry(beam, ris.refractive_index, ris.characteristic_length)
    phi_star, depth_min = geometry.optimal_incidence_angle(
        ris.characteristic_length, ris.refractive_index, config.search_interval
    )
    return {
        "incidence_angle_deg": math.degrees(beam.incidence_angle),
        "refractive_index": geo.refractive_index,
        "refraction_angle_deg": math.degrees(geo.refraction_angle),
        "retardation_angle_deg": math.degrees(geo.retardation_angle),
        "spot_diameter_m": geo.spot_diameter,
        "depth_m": geo.depth,
        "width_m": geo.width,
        "length_m": geo.length,
        "virtual_divergence_mrad": 1e3
        * geometry.virtual_divergence(beam.divergence, beam.incidence_angle),
        "optimal_incidence_angle_deg": math.degrees(phi_star),
        "optimal_depth_m": depth_min,
    }


def link_report(config: ScenarioConfig, breakdown: bool = False) -> dict[str, float]:
    result = evaluate_link(config.to_scenario())
    report = {
        "received_power_w": result.received_power,
        "ris_emerged_power_w": result.ris_emerged_power,
        "snr": result.snr,
        "snr_db": 10.0 * math.log10(result.snr) if result.snr > 0 else -math.inf,
        "spectral_efficiency_bps_per_hz": result.spectral_efficiency,
        "energy_efficiency_bps_per_hz_per_w": result.energy_efficiency,
        "total_transmittance": result.breakdown.total_transmittance,
        "total_loss_db": result.breakdown.total_db,
    }
    if breakdown:
        for c in result.breakdown.components:
            report[f"breakdown.{c.component_id}.transmittance"] = c.transmittance
            report[f"breakdown.{c.component_id}.db"] = c.db
    return report


def _print_report(report: dict[str, float], as_json: bool, out: TextIO) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
        return
    for key, value in report.items():
        out.write(f"{key} = {_fmt(value)}\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ConfigError(message)


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"--range: expected start:stop:steps, got {text!r}") from None
    if steps < 2 or not start < stop:
        raise ConfigError(f"--range: need start < stop and steps >= 2, got {text!r}")
    return start, stop, steps


def _parse_floats(text: str, flag: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{flag}: expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise ConfigError(f"{flag}: expected at least one value")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--config",
        help=f"scenario JSON file (falls back to ${CONFIG_ENV}, then the baseline)",
    )
    common.add_argument(
        "--mode",
        choices=[m.value for m in DivergenceMode],
        help="override the scenario's divergence mode",
    )

    parser = _Parser(
        prog="planner",
        description="Size RIS modules and evaluate FSO link budgets.",
        epilog="exit codes: 0 ok, 1 config, 2 domain, 3 output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    geo = sub.add_parser("geometry", parents=[common], help="module dimensions and angles")
    geo.add_argument("--json", action="store_true", help="emit JSON")

    link = sub.add_parser("link", parents=[common], help="end-to-end link budget")
    link.add_argument("--breakdown", action="store_true", help="list every loss factor")
    link.add_argument("--json", action="store_true", help="emit JSON")

    sw = sub.add_parser("sweep", parents=[common], help="curve data as CSV")
    sw.add_argument(
        "--variable", required=True, choices=[v.value for v in SweepVariable]
    )
    sw.add_argument("--range", required=True, help="start:stop:steps (inclusive)")
    sw.add_argument("--transmittances", default="0.8,1,2,5,10")
    sw.add_argument(
        "--refractive-indices",
        default=None,
        help="indices for the depth columns (default: the scenario's)",
    )
    sw.add_argument("--out", help="CSV path (default: stdout)")
    return parser


def _load(args: argparse.Namespace) -> ScenarioConfig:
    source = args.config or os.environ.get(CONFIG_ENV)
    config = load_config(source) if source else ScenarioConfig()
    if args.mode:
        config = replace(config, divergence_mode=args.mode)
    return config


def execute(args: argparse.Namespace, out: TextIO) -> None:
    config = _load(args)
    if args.command == "geometry":
        _print_report(geometry_report(config), args.json, out)
    elif args.command == "link":
        _print_report(link_report(config, args.breakdown), args.json, out)
    else:
        spec = SweepSpec(
            variable=SweepVariable(args.variable),
            range=_parse_range(args.range),
            transmittances=_parse_floats(args.transmittances, "--transmittances"),
            base=config.to_scenario(),
            refractive_indices=(
                _parse_floats(args.refractive_indices, "--refractive-indices")
                if args.refractive_indices
                else ()
            ),
            depth_scale_per_m=config.depth_scale_per_m,
        )
        series = run_sweep(spec)
        if args.out:
            write_csv(series, args.out)
        else:
            out.write(format_csv(series))


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        execute(args, out)
    except ConfigError as exc:
        print(f"planner: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"planner: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OutputError as exc:
        print(f"planner: output error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
