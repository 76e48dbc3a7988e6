"""Report serialisation.

JSON reports follow ``report_schema.json`` (shipped with the package). CSV
reports carry the same content in long format with the frozen header
``CSV_HEADER``; :func:`read_report` turns either back into the same dict.

Numbers are written as JSON numbers (floats, shortest round-trip repr) or,
for exact runs, as ``"p/q"`` strings; both are read back bit-exactly.
"""

from __future__ import annotations

import csv
import json
import math
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .closed_form import BroadcastPlan, EnergyReport, LinkSchedule

SCHEMA_ID = "wsnlife.report/1"
CSV_HEADER = ["solver", "record", "key", "value", "unit"]
SWEEP_FIXED_COLUMNS = ["param", "value", "max_energy_J", "cycles", "gap"]
UNITS = {"time": "s", "data": "bit", "rate": "bit/s", "power": "W", "energy": "J"}


def encode_number(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    return float(x)


def decode_number(x):
    if isinstance(x, str):
        if "/" in x:
            return Fraction(x)
        return float(x)
    return x


def _encode_cycles(c):
    if c is None:
        return None
    if c == math.inf:
        return "unbounded"
    return int(c)


def _solution_dict(solution, report: EnergyReport) -> dict:
    out = {
        "max_energy_J": encode_number(report.max_energy),
        "argmax_node": report.argmax_node,
        "cycles": _encode_cycles(report.cycles),
        "node_energies_J": {str(n): encode_number(e) for n, e in report.per_node_energy.items()},
    }
    if isinstance(solution, LinkSchedule):
        out["links"] = [{"from": i, "to": j, "duration_s": encode_number(t)}
                        for (i, j), t in solution.times.items()]
    elif isinstance(solution, BroadcastPlan):
        out["trees"] = [{"root": t.root, "edges": [list(e) for e in t.edges], "weight_s": encode_number(w)}
                        for t, w in zip(solution.trees, solution.weights)]
    return out


def build_report(result) -> dict:
    """Plain-dict report of a :class:`~wsnlife.runner.RunResult`."""
    cfg = result.config
    net = result.network
    gap = result.gap
    return {
        "schema": SCHEMA_ID,
        "service": cfg.service.type,
        "solver": cfg.solver,
        "arithmetic": "exact" if cfg.exact else "float",
        "units": dict(UNITS),
        "network": {
            "nodes": net.nodes,
            "collectors": sorted(net.collectors),
            "positions": {str(n): [encode_number(c) for c in p] for n, p in net.positions.items()},
        },
        "source": cfg.service.source,
        "rate_bps": encode_number(result.rate),
        "results": {name: _solution_dict(s.solution, s.report) for name, s in result.solutions.items()},
        "gap": None if gap is None else encode_number(gap),
    }


def _csv_rows(report: dict):
    yield ["meta", "schema", "", report["schema"], ""]
    yield ["meta", "service", "", report["service"], ""]
    yield ["meta", "solver", "", report["solver"], ""]
    yield ["meta", "arithmetic", "", report["arithmetic"], ""]
    if report.get("source") is not None:
        yield ["meta", "source", "", report["source"], ""]
    yield ["meta", "rate", "", report["rate_bps"], "bit/s"]
    if report["gap"] is not None:
        yield ["meta", "gap", "", report["gap"], ""]
    for name, sol in report["results"].items():
        yield [name, "max_energy", "", sol["max_energy_J"], "J"]
        yield [name, "argmax_node", "", sol["argmax_node"], ""]
        if sol["cycles"] is not None:
            yield [name, "cycles", "", sol["cycles"], ""]
        for n, e in sol["node_energies_J"].items():
            yield [name, "node_energy", n, e, "J"]
        for link in sol.get("links", []):
            yield [name, "link_duration", f"{link['from']}->{link['to']}", link["duration_s"], "s"]
        for tree in sol.get("trees", []):
            edges = " ".join(f"{i}->{j}" for i, j in tree["edges"])
            yield [name, "tree_weight", f"{tree['root']}:{edges}", tree["weight_s"], "s"]


def _csv_value(text):
    if "/" in text:
        return text  # keep the p/q encoding, as in JSON
    return float(text)


def _parse_csv(path: Path) -> dict:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected CSV header {header}")
        report = {"schema": None, "gap": None, "source": None, "results": {}}
        for solver, record, key, value, _unit in reader:
            if solver == "meta":
                if record == "rate":
                    report["rate_bps"] = _csv_value(value)
                elif record == "gap":
                    report["gap"] = _csv_value(value)
                elif record == "source":
                    report["source"] = int(value)
                else:
                    report[record] = value
                continue
            sol = report["results"].setdefault(
                solver, {"cycles": None, "node_energies_J": {}})
            if record == "max_energy":
                sol["max_energy_J"] = _csv_value(value)
            elif record == "argmax_node":
                sol["argmax_node"] = int(value)
            elif record == "cycles":
                sol["cycles"] = value if value == "unbounded" else int(value)
            elif record == "node_energy":
                sol["node_energies_J"][key] = _csv_value(value)
            elif record == "link_duration":
                i, j = key.split("->")
                sol.setdefault("links", []).append({"from": int(i), "to": int(j), "duration_s": _csv_value(value)})
            elif record == "tree_weight":
                root, edges = key.split(":", 1)
                pairs = [[int(a), int(b)] for a, b in (e.split("->") for e in edges.split())]
                sol.setdefault("trees", []).append({"root": int(root), "edges": pairs, "weight_s": _csv_value(value)})
            else:
                raise ValueError(f"{path}: unknown record {record!r}")
    return report


def write_report(report: dict, path, fmt: str = "json") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path.write_text(json.dumps(report, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    elif fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            writer.writerows(_csv_rows(report))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return path


def read_report(path) -> dict:
    """Load a JSON or CSV report (by extension) into the dict written by :func:`build_report`.

    CSV reports omit the ``units`` and ``network`` blocks.
    """
    path = Path(path)
    if path.suffix == ".csv":
        return _parse_csv(path)
    return json.loads(path.read_text(encoding="utf-8"))


def report_schema() -> dict:
    return json.loads(resources.files("wsnlife").joinpath("report_schema.json").read_text(encoding="utf-8"))


def write_sweep(rows: list[dict], path) -> Path:
    """Plot-ready CSV: fixed columns, then one ``E_<node>_J`` column per node seen."""
    nodes = sorted({n for r in rows for n in r["report"].per_node_energy})
    header = SWEEP_FIXED_COLUMNS + [f"E_{n}_J" for n in nodes]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in rows:
            rep = r["report"]
            cycles = _encode_cycles(rep.cycles)
            line = [r["param"], r["value"], encode_number(rep.max_energy),
                    "" if cycles is None else cycles,
                    "" if r["gap"] is None else encode_number(r["gap"])]
            line += [encode_number(rep.per_node_energy[n]) if n in rep.per_node_energy else "" for n in nodes]
            writer.writerow(line)
    return path
