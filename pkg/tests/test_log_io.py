import json

import pytest

from wareflow.errors import ParseFailure
from wareflow.sim import export_log, export_traces_csv, import_log
from wareflow.sim.log import iso_render


class TestLogRoundTrip:
    def test_identity(self, default_log):
        assert import_log(export_log(default_log)) == default_log

    def test_header_first_line(self, default_log):
        first = export_log(default_log).decode().splitlines()[0]
        header = json.loads(first)
        assert header["format"] == "wareflow-log"
        assert header["version"] == 1
        assert "config" in header and "suppliers" in header

    def test_one_trace_per_line(self, default_log):
        lines = export_log(default_log).decode().splitlines()
        assert len(lines) == 1 + len(default_log.packages)

    def test_truncated_stream(self, default_log):
        lines = export_log(default_log).decode().splitlines()
        broken = "\n".join(lines[:5] + [lines[5][: len(lines[5]) // 2]])
        with pytest.raises(ParseFailure) as err:
            import_log(broken.encode())
        assert err.value.line == 6

    def test_missing_header(self):
        with pytest.raises(ParseFailure):
            import_log(b'{"not": "a header"}\n')
        with pytest.raises(ParseFailure):
            import_log(b"")


class TestCsvExport:
    def test_row_count_and_columns(self, default_log):
        lines = export_traces_csv(default_log).decode().splitlines()
        assert len(lines) == 1 + len(default_log.packages)
        header = lines[0].split(",")
        assert header[0] == "package_id"
        assert "fl_placement_end" in header

    def test_iso_rendering(self, default_log):
        lines = export_traces_csv(default_log, iso=True).decode().splitlines()
        assert "2024-01-01T08:00:00" in lines[1]


class TestIsoRender:
    def test_epoch_anchor(self):
        assert iso_render(0.0) == "2024-01-01T08:00:00Z"
        assert iso_render(144.0) == "2024-01-01T08:02:24Z"
