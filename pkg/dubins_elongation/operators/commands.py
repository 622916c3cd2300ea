"""
Command handlers behind the ``dubins-elongation`` subcommands.

Each command loads a problem file, runs the analysis for every vehicle
and returns the rendered report. Failures propagate as DubinsPathError
subclasses; the entry point maps them to exit codes.
"""

import argparse
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..api.problem_file import ProblemFile, VehicleModel, load_problem
from ..api.reports import (
    ELONGATE_COLUMNS, FEASIBLE_COLUMNS, FLEET_COLUMNS, SHORTEST_COLUMNS,
    elongation_entry, feasible_entry, fleet_entries, render, shortest_entry,
)
from ..config import LENGTH_TOL, POSE_TOL
from ..core.elongation import ElongationRequest, elongate
from ..core.errors import DegenerateInput, ProblemFileError
from ..core.feasibility import analyze
from ..core.fleet import arrival_report, id_sort_key, plan_formation
from ..core.oracle import OracleConfig, oracle_exists_length, oracle_shortest
from ..core.words import shortest
from ..utils.geometry import CurvaturePath, validate
from ..utils.logging import logger, format_length
from ..utils.trace_export import DEFAULT_TRACE_STEP, write_trace_csv, write_trace_svg


def _poses(problem: ProblemFile, vehicle: VehicleModel):
    start, goal = vehicle.start.to_pose(), vehicle.goal.to_pose()
    if start == goal:
        raise DegenerateInput(f"Vehicle {vehicle.id}: start and goal coincide at {start.as_tuple()}")
    return start, goal, problem.bound


def _ordered(problem: ProblemFile) -> List[VehicleModel]:
    return sorted(problem.vehicles, key=lambda v: id_sort_key(str(v.id)))


class Command:
    """Base class: a named subcommand with its own arguments."""
    name = ''
    help = ''

    def add_arguments(self, parser: argparse.ArgumentParser):
        pass

    def execute(self, args: argparse.Namespace) -> str:
        raise NotImplementedError

    def payload(self, problem: ProblemFile, entries: List[Dict], **extra) -> Dict:
        body = {'command': self.name, 'kappa': problem.kappa}
        body.update(extra)
        body['vehicles'] = entries
        return body


class ShortestCommand(Command):
    name = 'shortest'
    help = 'Shortest curvature-bounded path per vehicle'

    def execute(self, args: argparse.Namespace) -> str:
        problem = load_problem(args.input)
        entries = []
        for vehicle in _ordered(problem):
            X, Y, k = _poses(problem, vehicle)
            path = shortest(X, Y, k)
            oracle_length = oracle_shortest(X, Y, k, OracleConfig()) if args.oracle else None
            if oracle_length is not None and abs(oracle_length - path.length) > 1e-4:
                logger.warning("Vehicle %s: oracle length %s disagrees with %s", vehicle.id,
                               format_length(oracle_length), format_length(path.length))
            entries.append(shortest_entry(str(vehicle.id), path, oracle_length))
        return render(self.payload(problem, entries), entries, SHORTEST_COLUMNS, args.format)


class FeasibleCommand(Command):
    name = 'feasible'
    help = 'Feasible length set (shortest length and gap bounds) per vehicle'

    def execute(self, args: argparse.Namespace) -> str:
        problem = load_problem(args.input)
        entries = []
        for vehicle in _ordered(problem):
            X, Y, k = _poses(problem, vehicle)
            analysis = analyze(X, Y, k)
            checks = None
            if args.oracle:
                lengths = analysis.feasible_set
                cfg = OracleConfig()
                checks = {'oracle_at_l_m': oracle_exists_length(X, Y, k, lengths.l_m, cfg)}
                if lengths.gap is not None:
                    midpoint = 0.5 * (lengths.l1 + lengths.l2)
                    checks['oracle_at_gap_midpoint'] = oracle_exists_length(X, Y, k, midpoint, cfg)
            entries.append(feasible_entry(str(vehicle.id), analysis, checks))
        return render(self.payload(problem, entries), entries, FEASIBLE_COLUMNS, args.format)


def _trace_target(base: Optional[str], vehicle_id: str, many: bool) -> Optional[Path]:
    if base is None:
        return None
    path = Path(base)
    if not many:
        return path
    return path.with_name(f"{path.stem}_{vehicle_id}{path.suffix or '.csv'}")


class ElongateCommand(Command):
    name = 'elongate'
    help = 'Path of a requested length per vehicle'

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('--target', type=float, default=None,
                            help='Target length (overrides per-vehicle target_length)')
        parser.add_argument('--trace-csv', default=None, help='Write the sampled path trace here')
        parser.add_argument('--svg', default=None, help='Write a plot of the paths here')
        parser.add_argument('--trace-step', type=float, default=DEFAULT_TRACE_STEP,
                            help='Arclength step of traces and plots')

    def execute(self, args: argparse.Namespace) -> str:
        problem = load_problem(args.input)
        vehicles = _ordered(problem)
        many = len(vehicles) > 1
        entries = []
        plotted: List[Tuple[str, CurvaturePath]] = []
        for vehicle in vehicles:
            target = args.target if args.target is not None else vehicle.target_length
            if target is None:
                raise ProblemFileError(f"Vehicle {vehicle.id}: no target length; pass --target "
                                       "or set target_length in the problem file")
            X, Y, k = _poses(problem, vehicle)
            result = elongate(ElongationRequest(X, Y, k, target, args.tol))
            report = validate(result.path, X, Y, POSE_TOL)

            trace = _trace_target(args.trace_csv, str(vehicle.id), many)
            if trace is not None:
                write_trace_csv(trace, result.path, args.trace_step)
            plotted.append((f"vehicle {vehicle.id}", result.path))
            entries.append(elongation_entry(str(vehicle.id), target, result, report,
                                            trace_csv=str(trace) if trace else None))

        if args.svg:
            write_trace_svg(args.svg, plotted, step=args.trace_step)
        extra = {'svg': args.svg} if args.svg else {}
        return render(self.payload(problem, entries, **extra), entries, ELONGATE_COLUMNS, args.format)


class FleetCommand(Command):
    name = 'fleet'
    help = 'Minimum common arrival length and per-vehicle paths'

    def add_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument('--trace-dir', default=None, help='Write one trace CSV per vehicle here')
        parser.add_argument('--svg', default=None, help='Write a plot of all paths here')
        parser.add_argument('--trace-step', type=float, default=DEFAULT_TRACE_STEP,
                            help='Arclength step of traces and plots')

    def execute(self, args: argparse.Namespace) -> str:
        problem = load_problem(args.input)
        plan = plan_formation(problem.to_fleet_problem(), args.tol)
        rows = arrival_report(plan)

        traces: Dict[str, str] = {}
        if args.trace_dir:
            for v in plan.vehicles:
                traces[v.id] = str(write_trace_csv(Path(args.trace_dir) / f"vehicle_{v.id}.csv",
                                                   v.path, args.trace_step))
        if args.svg:
            write_trace_svg(args.svg, [(f"vehicle {v.id}", v.path) for v in plan.vehicles],
                            step=args.trace_step, title=f"common length {plan.t_m:.6g}")

        entries = fleet_entries(plan, rows, traces)
        extra = {'t_m': plan.t_m}
        if args.svg:
            extra['svg'] = args.svg
        return render(self.payload(problem, entries, **extra), entries, FLEET_COLUMNS, args.format)


COMMANDS = (ShortestCommand(), FeasibleCommand(), ElongateCommand(), FleetCommand())


def add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--in', dest='input', required=True, metavar='FILE', help='Problem file (JSON)')
    parser.add_argument('--format', choices=('json', 'csv'), default='json', help='Report format')
    parser.add_argument('--tol', type=float, default=LENGTH_TOL, help='Length tolerance')
    parser.add_argument('--oracle', action='store_true',
                        help='Cross-check results with the brute-force search (slow)')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
