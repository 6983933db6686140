"""Scenario files, result persistence, and human-readable table printing.

A scenario is a JSON document naming a network configuration, a design
(family plus approach letter), an SNR grid, a trial count, and a seed.
Running one produces a JSON result document, a PNG rate figure next to it,
and optionally a CSV export of the curve. Results embed the full scenario so
a result file is self-describing, and they carry a schema version so later
format changes stay detectable.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .errors import InsufficientPoints, InvalidConfig
from .evaluation import DOF_WINDOW_DB, RateCurve, dof_slope, rate_sweep_detailed
from .network import NetworkConfig, Topology, validate_config
from .tables import (
    antenna_row,
    approaches_for,
    feasibility_requirements,
    format_number,
    resource_report,
)

__all__ = [
    "SCHEMA_VERSION",
    "Scenario",
    "load_scenario",
    "run_scenario",
    "write_rate_csv",
    "print_tables",
    "check_feasibility",
]

SCHEMA_VERSION = "1"

_BASIC_LETTERS = ("A", "B", "C", "D", "E")
_NETWORK_INT_FIELDS = (
    "K",
    "M",
    "d",
    "N_t",
    "N_r",
    "M_star",
    "M_edge",
    "N_r_star",
    "N_r_edge",
)


@dataclass(frozen=True)
class Scenario:
    """One fully specified experiment."""

    name: str
    config: NetworkConfig
    family: str
    approach: str
    snr_grid_db: tuple[float, ...]
    trials: int
    seed: int
    codebook_size: int | None = None
    output_path: str | None = None


def _design_violations(topology: Topology, family: str, approach: str) -> list[str]:
    problems = []
    if family == "basic":
        if approach not in _BASIC_LETTERS:
            problems.append(
                f"basic family uses approaches A..E, got {approach!r}"
            )
    elif family == "advanced":
        if topology is Topology.CYCLIC_TWO_SIDE:
            if approach not in ("a", "b", "c", "d", "e"):
                problems.append(
                    f"advanced options for the two-sided ring are a..e, got {approach!r}"
                )
        elif topology is Topology.CYCLIC_ONE_SIDE_EDGE:
            if approach != "F":
                problems.append(
                    f"the one-side-edge layout has a single advanced approach F, got {approach!r}"
                )
        else:
            problems.append("the fully connected layout has no advanced designs")
    else:
        problems.append(f"design family must be 'basic' or 'advanced', got {family!r}")
    return problems


def load_scenario(source: str | Path | Mapping[str, Any]) -> Scenario:
    """Parse and validate a scenario from a JSON file or an in-memory dict."""
    if isinstance(source, Mapping):
        raw = dict(source)
        default_name = "unnamed"
    else:
        path = Path(source)
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"scenario file {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise InvalidConfig(f"scenario file {path} must hold a JSON object")
        default_name = path.stem
    problems: list[str] = []
    network = raw.get("network")
    if not isinstance(network, dict):
        raise InvalidConfig("scenario needs a 'network' object")
    try:
        topology = Topology(network.get("topology"))
    except ValueError:
        raise InvalidConfig(
            f"unknown topology {network.get('topology')!r}"
        ) from None
    kwargs: dict[str, Any] = {"topology": topology}
    for field in _NETWORK_INT_FIELDS:
        if field in network and network[field] is not None:
            value = network[field]
            if not isinstance(value, int) or isinstance(value, bool):
                problems.append(f"network.{field} must be an integer")
                continue
            kwargs[field] = value
    missing = [f for f in ("K", "M", "d", "N_t") if f not in kwargs]
    if missing:
        problems.append(f"network is missing required fields: {', '.join(missing)}")
    if problems:
        raise InvalidConfig(problems)
    cfg = NetworkConfig(**kwargs)
    problems.extend(validate_config(cfg))

    design = raw.get("design")
    if not isinstance(design, dict):
        problems.append("scenario needs a 'design' object with family and approach")
        family, approach = "", ""
    else:
        family = str(design.get("family", ""))
        approach = str(design.get("approach", ""))
        problems.extend(_design_violations(topology, family, approach))

    grid_raw = raw.get("snr_grid_db")
    grid: tuple[float, ...] = ()
    if not isinstance(grid_raw, list) or not grid_raw:
        problems.append("snr_grid_db must be a non-empty list of numbers")
    else:
        try:
            grid = tuple(float(v) for v in grid_raw)
        except (TypeError, ValueError):
            problems.append("snr_grid_db must contain only numbers")

    trials = raw.get("trials")
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        problems.append(f"trials must be an integer >= 1, got {trials!r}")
        trials = 0
    seed = raw.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        problems.append(f"seed must be an integer, got {seed!r}")
        seed = 0

    codebook_size = raw.get("codebook_size")
    needs_codebook = family == "advanced" and approach == "d"
    if needs_codebook:
        if not isinstance(codebook_size, int) or isinstance(codebook_size, bool) or codebook_size < 1:
            problems.append("advanced option 'd' needs codebook_size >= 1")
    elif codebook_size is not None:
        problems.append("codebook_size only applies to advanced option 'd'")

    output_path = raw.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        problems.append("output_path must be a string when present")

    if problems:
        raise InvalidConfig(problems)
    return Scenario(
        name=str(raw.get("name", default_name)),
        config=cfg,
        family=family,
        approach=approach,
        snr_grid_db=grid,
        trials=trials,
        seed=seed,
        codebook_size=codebook_size,
        output_path=output_path,
    )


def _scenario_document(scenario: Scenario) -> dict[str, Any]:
    cfg = scenario.config
    network: dict[str, Any] = {"topology": cfg.topology.value}
    for field in _NETWORK_INT_FIELDS:
        value = getattr(cfg, field)
        if value is not None:
            network[field] = value
    doc: dict[str, Any] = {
        "name": scenario.name,
        "network": network,
        "design": {"family": scenario.family, "approach": scenario.approach},
        "snr_grid_db": list(scenario.snr_grid_db),
        "trials": scenario.trials,
        "seed": scenario.seed,
    }
    if scenario.codebook_size is not None:
        doc["codebook_size"] = scenario.codebook_size
    if scenario.output_path is not None:
        doc["output_path"] = scenario.output_path
    return doc


def run_scenario(
    source: str | Path | Mapping[str, Any],
    seed: int | None = None,
    trials: int | None = None,
    out: str | Path | None = None,
    csv: str | Path | None = None,
    workers: int | None = None,
) -> Path:
    """Run one scenario end to end and persist its outputs.

    Returns the path of the results JSON. A PNG figure with the same stem is
    written next to it; ``csv`` adds a delimited export of the curve.
    Explicit arguments override the corresponding scenario fields.
    """
    scenario = load_scenario(source)
    if seed is not None:
        scenario = dataclasses.replace(scenario, seed=seed)
    if trials is not None:
        if trials < 1:
            raise InvalidConfig(f"trials must be an integer >= 1, got {trials}")
        scenario = dataclasses.replace(scenario, trials=trials)
    started = time.perf_counter()
    sweep = rate_sweep_detailed(
        scenario.config,
        scenario.approach,
        scenario.snr_grid_db,
        scenario.trials,
        scenario.seed,
        codebook_size=scenario.codebook_size,
        workers=workers,
    )
    wall = time.perf_counter() - started
    try:
        slope = dof_slope(sweep.curve)
    except InsufficientPoints:
        slope = None
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": _scenario_document(scenario),
        "results": {
            "snr_db": list(sweep.curve.snr_db),
            "sum_rate_bits": list(sweep.curve.sum_rate_bits),
            "dof_slope": slope,
            "slope_window_db": list(DOF_WINDOW_DB),
            "max_normalized_residual": sweep.max_normalized_residual,
            "mean_normalized_residual": sweep.mean_normalized_residual,
            "boundary_cells": list(sweep.boundary_cells),
            "wall_clock_seconds": wall,
        },
    }
    if out is not None:
        out_path = Path(out)
    elif scenario.output_path is not None:
        out_path = Path(scenario.output_path)
    else:
        out_path = Path(f"{scenario.name}_results.json")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _render_figure(out_path.with_suffix(".png"), scenario, sweep.curve, slope)
    if csv is not None:
        write_rate_csv(csv, sweep.curve)
    return out_path


def write_rate_csv(path: str | Path, curve: RateCurve) -> Path:
    """Export a rate curve as two-column CSV."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    lines = ["snr_db,sum_rate_bits"]
    lines += [f"{snr:g},{rate!r}" for snr, rate in curve.as_rows()]
    target.write_text("\n".join(lines) + "\n")
    return target


def _render_figure(path: Path, scenario: Scenario, curve: RateCurve, slope) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=120)
    ax.plot(curve.snr_db, curve.sum_rate_bits, marker="o", linewidth=1.4)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("sum rate (bits / channel use)")
    title = f"{scenario.name}: {scenario.family} {scenario.approach}"
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if slope is not None and not math.isnan(slope):
        lo, hi = DOF_WINDOW_DB
        ax.annotate(
            f"slope {slope:.2f} over {lo:g}-{hi:g} dB",
            xy=(0.02, 0.95),
            xycoords="axes fraction",
            va="top",
            fontsize=9,
        )
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def print_tables(topology: Topology, cfg: NetworkConfig) -> str:
    """Render antenna minima, channel knowledge, and computation scales.

    The antenna section shows ``formula=value`` for the uniform layouts and
    plain numerics for the one-side-edge layout, whose per-class pairs get a
    separate symbolic block. Dimensions the configuration lacks print as
    ``?`` rather than failing, so partial configurations still render.
    """
    if cfg.K is not None and cfg.K < 0:
        raise InvalidConfig("cell count cannot be negative")

    def dim(label: str, value) -> str:
        return f"{label}={value if value else '?'}"

    dims = [dim("K", cfg.K), dim("M", cfg.M), dim("d", cfg.d)]
    if topology is Topology.CYCLIC_ONE_SIDE_EDGE:
        dims += [dim("M*", cfg.M_star), dim("M°", cfg.M_edge)]
    lines = [f"antenna minima for {topology.value} ({', '.join(dims)})"]
    symbolic: list[str] = []
    for approach in approaches_for(topology):
        bs_f, bs_v, ms_f, ms_v = antenna_row(cfg, approach)
        if topology is Topology.CYCLIC_ONE_SIDE_EDGE:
            lines.append(
                f"  {approach}: BS {format_number(bs_v)}, MS {format_number(ms_v)}"
            )
            symbolic.append(f"  {approach}: BS {bs_f}, MS ({ms_f[0]},{ms_f[1]})")
        else:
            lines.append(
                f"  {approach}: BS {bs_f}={format_number(bs_v)},"
                f" MS {ms_f}={format_number(ms_v)}"
            )
    if symbolic:
        lines.append("antenna bounds (symbolic)")
        lines.extend(symbolic)
    lines.append("channel knowledge")
    rows = [resource_report(topology, approach, cfg) for approach in approaches_for(topology)]
    for row in rows:
        for entry in row.csi_entries:
            lines.append(
                f"  {row.approach}: {entry.source} | {entry.content}"
                f" | {entry.quantity_formula}={entry.quantity}"
            )
    lines.append("dominant computation")
    for row in rows:
        for entry in row.complexity_entries:
            scale = ""
            if all(s > 0 for s in entry.scale):
                scale = " = " + " x ".join(str(s) for s in entry.scale)
            lines.append(
                f"  {row.approach}: {entry.target} | {entry.operation}"
                f" | {entry.scale_formula}{scale}"
            )
    notes = [(row.approach, note) for row in rows for note in row.notes]
    if notes:
        lines.append("notes")
        lines.extend(f"  {approach}: {note}" for approach, note in notes)
    return "\n".join(lines) + "\n"


def check_feasibility(cfg: NetworkConfig, approach: str) -> str:
    """PASS/FAIL verdict text for every antenna inequality of one design."""
    lines = []
    for req in feasibility_requirements(cfg, approach):
        verdict = "PASS" if req.holds(cfg) else "FAIL"
        lines.append(f"{verdict}: {req.detail(cfg)}")
    return "\n".join(lines) + "\n"
