"""CSV schema round-trips and rejection of malformed files."""

import io

import pytest

from qvf.benchmarks import build_grover
from qvf.injector import CampaignConfig, run_campaign
from qvf.records import (
    COLUMNS,
    SCHEMA_LINE,
    QvfRecord,
    RecordFileError,
    read_records,
    read_records_file,
    records_to_string,
    write_records_file,
)


def sample_records():
    return list(run_campaign(build_grover(), CampaignConfig(grid_step=90)))


def test_layout():
    text = records_to_string(sample_records())
    lines = text.splitlines()
    assert lines[0] == SCHEMA_LINE == "# qvf-csv v1"
    assert lines[1] == ",".join(COLUMNS)
    assert len(lines) == 2 + 1 + 18 * 12
    baseline = lines[2].split(",")
    assert baseline[0] == "grover-11"
    assert baseline[1] == "-1"
    assert baseline[COLUMNS.index("improved_flag")] in ("0", "1")


def test_angles_written_as_integers_on_the_grid():
    text = records_to_string(sample_records())
    row = text.splitlines()[3].split(",")
    assert row[COLUMNS.index("theta_deg")] == "0"
    assert row[COLUMNS.index("phi_deg")] == "0"
    last = text.splitlines()[-1].split(",")
    assert last[COLUMNS.index("theta_deg")] == "180"
    assert last[COLUMNS.index("phi_deg")] == "270"


def test_round_trip_is_exact():
    records = sample_records()
    back = read_records(io.StringIO(records_to_string(records)))
    assert back == records


def test_sampled_mode_round_trip(tmp_path):
    records = list(
        run_campaign(
            build_grover(),
            CampaignConfig(grid_step=90, mode="sampled", shots=64, seed=9),
        )
    )
    path = tmp_path / "campaign.csv"
    assert write_records_file(path, records) == len(records)
    assert read_records_file(path) == records


def test_fractional_angles_survive():
    row = QvfRecord(
        "c", 0, 0, 0, 7.5, 0.125, "exact", 0, 0, 1.0, 0.0, 1.0, 0.0, 0.0, False
    )
    back = read_records(io.StringIO(records_to_string([row])))
    assert back == [row]
    assert ",7.5,0.125," in records_to_string([row])


def reject(text):
    with pytest.raises(RecordFileError):
        read_records(io.StringIO(text))


def test_schema_line_checked():
    reject("")
    reject("# qvf-csv v2\n" + ",".join(COLUMNS) + "\n")
    good = records_to_string(sample_records()[:1])
    reject(good.splitlines()[1] + "\n")  # header without schema line


def test_header_checked():
    reject(SCHEMA_LINE + "\n")
    reject(SCHEMA_LINE + "\ncircuit_id,qvf\n")


def test_row_shape_and_types_checked():
    good = records_to_string(sample_records()[:1])
    reject(good + "short,row\n")
    bad_int = good.splitlines()
    row = bad_int[2].split(",")
    row[1] = "one"
    reject("\n".join(bad_int[:2] + [",".join(row)]) + "\n")


def test_at_most_one_baseline():
    records = sample_records()
    reject(records_to_string([records[0], records[0]]))


def test_error_names_offending_line():
    good = records_to_string(sample_records()[:2])
    with pytest.raises(RecordFileError) as ei:
        read_records(io.StringIO(good + "short,row\n"))
    assert "line 5" in str(ei.value)
