"""
Report assembly and serialization for the command-line tools.

Reports are plain dicts built from analysis results, then written as
JSON (infinite values become null) or CSV (one row per vehicle,
infinite values written as "+inf"). Numbers are rounded to 12
significant digits so identical inputs give byte-identical output.
"""

import csv
import io
import json
import math
from typing import Any, Dict, List, Optional, Sequence

from ..core.elongation import ElongationResult
from ..core.feasibility import FeasibilityAnalysis
from ..core.fleet import ArrivalRow, FleetPlan
from ..utils.geometry import CurvaturePath, ValidationReport
from ..utils.trace_export import fmt_number

FORMATS = ('json', 'csv')

SHORTEST_COLUMNS = ('id', 'word', 'pattern', 'length', 'oracle_length')
FEASIBLE_COLUMNS = ('id', 'classification', 'l_m', 'l1', 'l2', 'l2_source',
                    'oracle_at_l_m', 'oracle_at_gap_midpoint')
ELONGATE_COLUMNS = ('id', 'target', 'length', 'strategy', 'base_length', 'parameter',
                    'max_endpoint_error', 'trace_csv')
FLEET_COLUMNS = ('id', 't_m', 'length', 'strategy', 'base_length', 'l_m', 'l1', 'l2',
                 'max_endpoint_error', 'trace_csv')


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(fmt_number(value))
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def _csv_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isinf(value):
            return '+inf' if value > 0 else '-inf'
        return fmt_number(value)
    return str(value)


def segments_payload(path: CurvaturePath) -> List[Dict[str, Any]]:
    return [{'kind': seg.kind.value, 'magnitude': seg.magnitude, 'length': seg.length(path.bound)}
            for seg in path.segments]


def shortest_entry(vehicle_id: str, path: CurvaturePath,
                   oracle_length: Optional[float] = None) -> Dict[str, Any]:
    entry = {
        'id': vehicle_id,
        'word': path.word,
        'pattern': path.pattern,
        'length': path.length,
        'segments': segments_payload(path),
    }
    if oracle_length is not None:
        entry['oracle_length'] = oracle_length
    return entry


def feasible_entry(vehicle_id: str, analysis: FeasibilityAnalysis,
                   oracle_checks: Optional[Dict[str, Optional[bool]]] = None) -> Dict[str, Any]:
    """l1/l2 are +inf when the pair has no gap."""
    lengths = analysis.feasible_set
    entry = {
        'id': vehicle_id,
        'classification': analysis.classification.label,
        'shortest_word': analysis.shortest.word,
        'l_m': lengths.l_m,
        'l1': lengths.l1 if lengths.gap else math.inf,
        'l2': lengths.l2 if lengths.gap else math.inf,
        'l2_source': analysis.gap.l2_source if lengths.gap else None,
        'feasible_set': lengths.describe(),
    }
    if oracle_checks is not None:
        entry.update(oracle_checks)
    return entry


def elongation_entry(vehicle_id: str, target: float, result: ElongationResult,
                     report: ValidationReport, trace_csv: Optional[str] = None,
                     svg: Optional[str] = None) -> Dict[str, Any]:
    entry = {
        'id': vehicle_id,
        'target': target,
        'length': report.length,
        'strategy': result.strategy.value,
        'base_length': result.base_length,
        'parameter': result.parameter,
        'max_endpoint_error': report.max_error,
        'segments': segments_payload(result.path),
    }
    if trace_csv is not None:
        entry['trace_csv'] = trace_csv
    if svg is not None:
        entry['svg'] = svg
    return entry


def fleet_entries(plan: FleetPlan, rows: Sequence[ArrivalRow],
                  traces: Optional[Dict[str, str]] = None) -> List[Dict[str, Any]]:
    by_id = {row.id: row for row in rows}
    entries = []
    for v in plan.vehicles:
        lengths = v.feasible_set
        entry = {
            'id': v.id,
            't_m': plan.t_m,
            'length': by_id[v.id].length,
            'strategy': v.strategy.value,
            'base_length': v.base_length,
            'l_m': lengths.l_m,
            'l1': lengths.l1 if lengths.gap else math.inf,
            'l2': lengths.l2 if lengths.gap else math.inf,
            'max_endpoint_error': by_id[v.id].max_endpoint_error,
            'segments': segments_payload(v.path),
        }
        if traces and v.id in traces:
            entry['trace_csv'] = traces[v.id]
        entries.append(entry)
    return entries


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(_json_value(payload), indent=2, allow_nan=False) + '\n'


def render_csv(entries: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    """One header row plus one row per entry; columns no entry carries are dropped."""
    present = [c for c in columns if any(c in e for e in entries)]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(present)
    for entry in entries:
        writer.writerow([_csv_value(entry.get(c)) for c in present])
    return buffer.getvalue()


def render(payload: Dict[str, Any], entries: Sequence[Dict[str, Any]],
           columns: Sequence[str], fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"Unknown report format {fmt!r}; expected one of {FORMATS}")
    if fmt == 'csv':
        return render_csv(entries, columns)
    return render_json(payload)
