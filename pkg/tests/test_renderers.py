import csv
import io
import json

import pytest

from tvbounds.components.optimizers import ClosedFormSearch
from tvbounds.components.renderers import (
    JSON_SCHEMA_VERSION,
    REPORT_COLUMNS,
    CsvRenderer,
    JsonRenderer,
    TableRenderer,
    parse_report,
)
from tvbounds.components.verifiers import CheckResult
from tvbounds.errors import InvalidInstanceError
from tvbounds.reports import build_bound_report
from tvbounds.sweep import SWEEP_COLUMNS, run_sweep


@pytest.fixture
def report(two_probs):
    return build_bound_report(two_probs, common_alpha=ClosedFormSearch())


@pytest.fixture
def rows():
    return run_sweep([0.5, 1.0, 2.0], {'closed_form': ClosedFormSearch()}, threads_count=1)


@pytest.fixture
def checks():
    return [
        CheckResult('limits', 'ratio_at_infinity', 1, 1, 0.005),
        CheckResult('stein', 'poisson_identity', 49, 50, -1e-9),
    ]


class TestCsv:

    def test_rows_header_and_gating(self, rows):
        parsed = list(csv.reader(io.StringIO(CsvRenderer().render_rows(rows))))
        assert tuple(parsed[0]) == SWEEP_COLUMNS
        assert len(parsed) == 4
        for record in parsed[1:]:
            cells = dict(zip(SWEEP_COLUMNS, record))
            assert cells['k1_three'] == cells['k1_common'] == ''
            assert cells['ratio_three'] == cells['ratio_common'] == ''
            assert cells['k1_closed'] != ''

    def test_header_without_rows(self):
        assert CsvRenderer().render_rows([]) == ','.join(SWEEP_COLUMNS) + '\n'

    def test_floats_round_trip(self, rows):
        parsed = list(csv.reader(io.StringIO(CsvRenderer().render_rows(rows))))
        assert float(parsed[1][SWEEP_COLUMNS.index('ratio_closed')]) == rows[0].ratio_closed

    def test_byte_stable(self, rows):
        assert CsvRenderer().render_rows(rows) == CsvRenderer().render_rows(list(rows))

    def test_report(self, report):
        header, record = list(csv.reader(io.StringIO(CsvRenderer().render_report(report))))
        assert header[:len(REPORT_COLUMNS)] == list(REPORT_COLUMNS)
        cells = dict(zip(header, record))
        assert cells['n'] == '2'
        assert float(cells['lambda']) == pytest.approx(0.3)
        assert 'lam' not in cells
        assert cells['k1_lower'] == ''
        assert cells['consistent'] == 'true'

    def test_checks(self, checks):
        parsed = list(csv.reader(io.StringIO(CsvRenderer().render_checks(checks))))
        assert parsed[1][4] == 'PASS'
        assert parsed[2][4] == 'FAIL'


class TestJson:

    def test_round_trip(self, report):
        assert parse_report(JsonRenderer().render_report(report)) == report

    def test_lambda_key_matches_sweep(self, report):
        data = json.loads(JsonRenderer().render_report(report))['report']
        assert data['lambda'] == report.lam
        assert 'lam' not in data
        assert REPORT_COLUMNS[1] == SWEEP_COLUMNS[0] == 'lambda'

    def test_round_trip_without_exact(self, two_probs):
        report = build_bound_report(two_probs, exact_max_n=1)
        text = JsonRenderer(indent=None).render_report(report)
        assert '"exact_tv": null' in text
        assert parse_report(text) == report

    def test_schema_version(self, report, rows):
        assert json.loads(JsonRenderer().render_report(report))['schema_version'] == JSON_SCHEMA_VERSION
        payload = json.loads(JsonRenderer().render_rows(rows))
        assert payload['schema_version'] == JSON_SCHEMA_VERSION
        assert payload['rows'][0]['k1_three'] is None

    def test_rejects_other_version(self, report):
        payload = json.loads(JsonRenderer().render_report(report))
        payload['schema_version'] = 2
        with pytest.raises(InvalidInstanceError):
            parse_report(json.dumps(payload))

    def test_rejects_garbage(self):
        with pytest.raises(InvalidInstanceError):
            parse_report('not json')

    def test_checks(self, checks):
        payload = json.loads(JsonRenderer().render_checks(checks))
        assert payload['all_passed'] is False
        assert payload['checks'][1]['passed'] == 49


class TestTable:

    def test_report(self, report):
        text = TableRenderer().render_report(report)
        assert 'exact_tv' in text
        assert 'consistent' in text

    def test_checks_summary(self, checks):
        assert TableRenderer().render_checks(checks).rstrip().endswith('1 passed, 1 failed')

    def test_rows_use_dash_for_missing(self, rows):
        lines = TableRenderer().render_rows(rows).splitlines()
        assert len(lines) == 2 + len(rows)
        assert ' - ' in lines[2]
