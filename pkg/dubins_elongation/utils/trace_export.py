"""
Trace export for synthesized paths.

Key Features:
- Sampled trace CSV (arclength, x, y, theta, segment index and kind)
- Static SVG plot of one or more paths with start/goal markers
- Byte-stable output for identical inputs
"""

import csv
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .geometry import CurvaturePath, OrientedPose, sample_arrays
from .logging import logger

TRACE_COLUMNS = ('arclength', 'x', 'y', 'theta', 'segment_index', 'segment_kind')
DEFAULT_TRACE_STEP = 0.01
SVG_HASH_SALT = 'dubins-elongation'


def fmt_number(value: float) -> str:
    """12 significant digits; signed zero is written as 0."""
    text = f"{float(value):.12g}"
    return '0' if text == '-0' else text


def trace_rows(path: CurvaturePath, step: float = DEFAULT_TRACE_STEP) -> List[Tuple[str, ...]]:
    arrays = sample_arrays(path, step)
    kinds = [seg.kind.value for seg in path.segments]
    rows = []
    for s, x, y, th, idx in zip(arrays['arclength'], arrays['x'], arrays['y'],
                                arrays['theta'], arrays['segment_index']):
        kind = kinds[idx] if idx >= 0 else ''
        rows.append((fmt_number(s), fmt_number(x), fmt_number(y), fmt_number(th), str(int(idx)), kind))
    return rows


def write_trace_csv(path: Union[str, Path], curve: CurvaturePath,
                    step: float = DEFAULT_TRACE_STEP) -> Path:
    """
    Write a sampled trace with a header row and LF line endings.

    Returns:
        The written path
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(TRACE_COLUMNS)
        writer.writerows(trace_rows(curve, step))
    logger.debug("Wrote trace %s", target)
    return target


def read_trace_csv(path: Union[str, Path]) -> Dict[str, np.ndarray]:
    """Load a trace written by write_trace_csv back into arrays."""
    with open(path, newline='', encoding='utf-8') as handle:
        reader = csv.DictReader(handle)
        rows = list(reader)
    if reader.fieldnames is None or tuple(reader.fieldnames) != TRACE_COLUMNS:
        raise ValueError(f"{path}: unexpected trace header {reader.fieldnames}")
    data = {name: np.array([float(row[name]) for row in rows]) for name in TRACE_COLUMNS[:4]}
    data['segment_index'] = np.array([int(row['segment_index']) for row in rows], dtype=int)
    data['segment_kind'] = np.array([row['segment_kind'] for row in rows])
    return data


def write_trace_svg(path: Union[str, Path], curves: Sequence[Tuple[str, CurvaturePath]],
                    goals: Optional[Sequence[OrientedPose]] = None,
                    step: float = DEFAULT_TRACE_STEP, title: Optional[str] = None) -> Path:
    """
    Plot paths as polylines with start (circle) and goal (square) markers.

    Args:
        path: Output .svg file
        curves: (label, path) pairs
        goals: Goal poses to mark; defaults to each path's end pose
        step: Sampling step for the polylines
        title: Optional axes title
    """
    import matplotlib
    matplotlib.use('Agg')
    from matplotlib.figure import Figure

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    with matplotlib.rc_context({'svg.hashsalt': SVG_HASH_SALT, 'svg.fonttype': 'none'}):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot(1, 1, 1)
        for i, (label, curve) in enumerate(curves):
            arrays = sample_arrays(curve, step)
            line, = ax.plot(arrays['x'], arrays['y'], linewidth=1.5, label=label)
            goal = goals[i] if goals is not None else curve.end
            ax.plot([curve.start.x], [curve.start.y], 'o', color=line.get_color())
            ax.plot([goal.x], [goal.y], 's', color=line.get_color())
            ax.quiver([goal.x], [goal.y], [np.cos(goal.theta)], [np.sin(goal.theta)],
                      color=line.get_color(), angles='xy', scale_units='xy', scale=2.0, width=0.004)
        ax.set_aspect('equal')
        ax.grid(True, linewidth=0.3)
        if title:
            ax.set_title(title)
        if len(curves) > 1:
            ax.legend(loc='best', fontsize='small')
        fig.savefig(target, format='svg', metadata={'Date': None})

    logger.debug("Wrote plot %s", target)
    return target
