"""Command line entry point.

Three subcommands: ``run`` executes a scenario file and writes the result
document, figure, and optional CSV; ``tables`` prints the resource tables of
one layout; ``check`` evaluates the antenna inequalities of a scenario's
design without running it. Worker count for trial parallelism comes from the
``CELLALIGN_WORKERS`` environment variable and defaults to serial execution.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import CellAlignError, InvalidConfig
from .harness import check_feasibility, load_scenario, print_tables, run_scenario
from .network import NetworkConfig, Topology

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellalign",
        description=(
            "closed-form interference alignment for multi-cell downlinks: "
            "design coders, verify them, and sweep rate curves"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario file and persist results")
    run_p.add_argument("scenario", help="path to a scenario JSON file")
    run_p.add_argument("--seed", type=int, help="override the scenario seed")
    run_p.add_argument("--trials", type=int, help="override the trial count")
    run_p.add_argument("--out", help="results JSON path (figure goes next to it)")
    run_p.add_argument("--csv", help="also export the rate curve as CSV")

    tables_p = sub.add_parser("tables", help="print resource tables for a layout")
    tables_p.add_argument(
        "--topology", required=True, choices=[t.value for t in Topology]
    )
    tables_p.add_argument("--K", type=int, help="number of cells")
    tables_p.add_argument("--M", type=int, required=True, help="users per cell")
    tables_p.add_argument("--d", type=int, required=True, help="streams per user")
    tables_p.add_argument("--M-star", dest="M_star", type=int, help="interior users per cell")
    tables_p.add_argument("--M-edge", dest="M_edge", type=int, help="edge users per cell")
    tables_p.add_argument("--N-t", dest="N_t", type=int, help="transmit antennas")
    tables_p.add_argument("--N-r", dest="N_r", type=int, help="receive antennas")
    tables_p.add_argument("--N-r-star", dest="N_r_star", type=int, help="interior receive antennas")
    tables_p.add_argument("--N-r-edge", dest="N_r_edge", type=int, help="edge receive antennas")

    check_p = sub.add_parser("check", help="evaluate antenna feasibility for a scenario")
    check_p.add_argument("scenario", help="path to a scenario JSON file")
    return parser


def _workers_from_env() -> int | None:
    raw = os.environ.get("CELLALIGN_WORKERS")
    if not raw:
        return None
    try:
        count = int(raw)
    except ValueError:
        raise InvalidConfig(
            f"CELLALIGN_WORKERS must be an integer, got {raw!r}"
        ) from None
    if count < 1:
        raise InvalidConfig(f"CELLALIGN_WORKERS must be >= 1, got {count}")
    return count if count > 1 else None


def _table_config(args: argparse.Namespace) -> NetworkConfig:
    topology = Topology(args.topology)
    m_star, m_edge = args.M_star, args.M_edge
    if topology is Topology.CYCLIC_ONE_SIDE_EDGE:
        if m_edge is None and m_star is None:
            raise InvalidConfig(
                "the one-side-edge layout needs --M-edge (or --M-star) to split users"
            )
        if m_edge is None:
            m_edge = args.M - m_star
        if m_star is None:
            m_star = args.M - m_edge
        if m_star < 0 or m_edge < 0 or m_star + m_edge != args.M:
            raise InvalidConfig("M_star+M_edge=M violated by the given user split")
    return NetworkConfig(
        topology=topology,
        K=args.K or 0,
        M=args.M,
        d=args.d,
        N_t=args.N_t or 0,
        N_r=args.N_r,
        M_star=m_star,
        M_edge=m_edge,
        N_r_star=args.N_r_star,
        N_r_edge=args.N_r_edge,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            out_path = run_scenario(
                args.scenario,
                seed=args.seed,
                trials=args.trials,
                out=args.out,
                csv=args.csv,
                workers=_workers_from_env(),
            )
            print(out_path)
            return 0
        if args.command == "tables":
            cfg = _table_config(args)
            sys.stdout.write(print_tables(cfg.topology, cfg))
            return 0
        scenario = load_scenario(args.scenario)
        text = check_feasibility(scenario.config, scenario.approach)
        sys.stdout.write(text)
        return 0 if "FAIL" not in text else 1
    except InvalidConfig as exc:
        print(f"error: InvalidConfig: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc}", file=sys.stderr)
        return 2
    except CellAlignError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
