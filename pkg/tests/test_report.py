from fractions import Fraction as F

import jsonschema
import pytest

from wsnlife.config import parse_config
from wsnlife.report import CSV_HEADER, build_report, read_report, report_schema, write_report
from wsnlife.runner import execute, sweep

M2M = {"network": {"N": 3}, "service": {"type": "m2m", "Q": [1, 1, 1]}, "battery": {"E0": 100}}
BCAST = {"network": {"N": 4}, "service": {"type": "broadcast", "source": 2, "Qk": 1}}


def _run(data, exact):
    data = dict(data, solver={"method": "both", "exact": exact})
    return build_report(execute(parse_config(data)))


@pytest.mark.parametrize("data", [M2M, BCAST])
@pytest.mark.parametrize("exact", [False, True])
def test_reports_validate_against_schema(data, exact):
    jsonschema.validate(_run(data, exact), report_schema())


@pytest.mark.parametrize("data", [M2M, BCAST])
@pytest.mark.parametrize("exact", [False, True])
def test_round_trip_is_bit_exact(tmp_path, data, exact):
    report = _run(data, exact)
    write_report(report, tmp_path / "r.json", "json")
    write_report(report, tmp_path / "r.csv", "csv")
    assert read_report(tmp_path / "r.json") == report
    back = read_report(tmp_path / "r.csv")
    assert back["results"] == report["results"]
    assert back["gap"] == report["gap"] and back["rate_bps"] == report["rate_bps"]


def test_exact_values_in_report():
    report = _run(M2M, True)
    assert report["results"]["closed_form"]["max_energy_J"] == "23/9"
    assert report["results"]["lp"]["max_energy_J"] == "23/9"
    assert report["gap"] == "0/1"
    assert report["results"]["lp"]["cycles"] == 39
    assert F(report["results"]["closed_form"]["links"][0]["duration_s"]) == F(23, 9)


def test_csv_header(tmp_path):
    write_report(_run(BCAST, False), tmp_path / "r.csv", "csv")
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == ",".join(CSV_HEADER)


def test_ordering_is_deterministic():
    report = _run(M2M, False)
    assert list(report["results"]["lp"]["node_energies_J"]) == ["0", "1", "2", "3"]
    links = [(link["from"], link["to"]) for link in report["results"]["closed_form"]["links"]]
    assert links == sorted(links)


def test_sweep_rows():
    cfg = parse_config({"network": {"N": 2}, "service": {"type": "m2m", "Q": 1, "rate": 1}})
    rows = sweep(cfg, "N", [2, 3])
    assert [r["report"].max_energy for r in rows] == pytest.approx([1.75, 23 / 9], rel=1e-12)
    rows = sweep(cfg, "lambda_scale", [1, 2, 3])
    assert [r["report"].max_energy / 1.75 for r in rows] == pytest.approx([1, 4, 9], rel=1e-12)
    assert sweep(cfg, "a", []) == []
