import csv
import io
import json

import pytest

from cli import cli
from quantum.exceptions import CertificationError
from services import ExperimentService as service_module


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestVerifyChannels:
    def test_default_passes(self, runner):
        result = runner.invoke(cli, ['verify-channels'])
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['schema'] == '1'
        assert len(data['channels']) == 4
        assert data['max_choi_dev'] <= 1e-9
        assert data['action_law_max_dev'] <= 1e-12

    def test_injected_fault_fails(self, runner):
        result = runner.invoke(cli, ['verify-channels', '--inject-fault'])
        assert result.exit_code == 1

    def test_csv(self, runner):
        result = runner.invoke(cli, ['verify-channels', '--format', 'csv'])
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == 'x0,x1,choi_distance'
        assert len(_csv_rows(result.output)) == 4


class TestSchemeMetrics:
    def test_trivial_csv_row(self, runner):
        result = runner.invoke(cli, ['scheme-metrics', '--scheme', 'trivial', '--format', 'csv'])
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0] == 'scheme,eps,eps_d,eps_c_lb,eps_c_ub,bound_lhs,holds'
        (row,) = _csv_rows(result.output)
        assert row['scheme'] == 'trivial'
        assert float(row['eps']) == pytest.approx(0.0, abs=1e-9)
        assert float(row['eps_d']) == pytest.approx(1.0, abs=1e-9)
        assert float(row['eps_c_ub']) == pytest.approx(0.0, abs=1e-9)
        assert row['holds'] == 'true'
        assert '\r' not in result.output

    def test_qotp_json(self, runner):
        result = runner.invoke(cli, ['scheme-metrics', '--scheme', 'independent-qotp'])
        assert result.exit_code == 0, result.output
        (row,) = json.loads(result.output)['schemes']
        assert row['eps'] == pytest.approx(1.0, abs=1e-9)
        assert row['eps_d'] == pytest.approx(0.0, abs=1e-9)

    def test_unknown_scheme_is_usage_error(self, runner):
        result = runner.invoke(cli, ['scheme-metrics', '--scheme', 'rot13'])
        assert result.exit_code == 2


class TestTradeoffCurve:
    def test_default_grid(self, runner):
        result = runner.invoke(cli, ['tradeoff-curve'])
        assert result.exit_code == 0
        data = json.loads(result.output)
        eps_c = [p['eps_c'] for p in data['boundary']]
        assert len(eps_c) == 101
        assert eps_c[0] == pytest.approx(0.5)
        assert eps_c[-1] == pytest.approx(0.0)
        assert all(a > b for a, b in zip(eps_c, eps_c[1:]))
        markers = {p['marker']: p for p in data['points']}
        assert (markers['square']['eps_d'], markers['square']['eps_c']) == (1.0, 0.0)
        assert markers['diamond']['note'] == 'asymptotic, external'

    def test_csv_rows(self, runner):
        result = runner.invoke(cli, ['tradeoff-curve', '--points', '11', '--format', 'csv'])
        rows = _csv_rows(result.output)
        assert len(rows) == 13
        assert rows[5]['eps_d'] == '0.25'

    def test_too_few_points(self, runner):
        result = runner.invoke(cli, ['tradeoff-curve', '--points', '1'])
        assert result.exit_code == 2


class TestCertify:
    def test_single_instance_and_scheme(self, runner):
        result = runner.invoke(cli, ['certify', '--instance', 'bell-pair', '--scheme', 'trivial'])
        assert result.exit_code == 0, result.output
        data = json.loads(result.output)
        assert data['holds'] is True
        (row,) = data['theorem2']
        assert row['lhs'] == pytest.approx(2.0, abs=1e-6)

    def test_theta_grid_rows(self, runner):
        result = runner.invoke(cli, ['certify', '--instance', 'rotation', '--scheme', 'trivial'])
        assert result.exit_code == 0, result.output
        assert len(json.loads(result.output)['theorem2']) == 8

    def test_repeated_theta(self, runner):
        args = ['certify', '--instance', 'rotation', '--theta', '0.5', '--theta', '1.0', '--scheme', 'trivial',
                '--format', 'csv']
        result = runner.invoke(cli, args)
        rows = _csv_rows(result.output)
        assert [r['check'] for r in rows] == ['theorem2', 'theorem2', 'corollary1']

    def test_seed_does_not_change_exact_output(self, runner):
        args = ['certify', '--instance', 'bell-pair', '--scheme', 'correlated-pad']
        a = runner.invoke(cli, args + ['--seed', '1'])
        b = runner.invoke(cli, args + ['--seed', '2'])
        assert a.exit_code == 0
        assert a.output == b.output

    def test_theta_out_of_range(self, runner):
        result = runner.invoke(cli, ['certify', '--instance', 'rotation', '--theta', '4.0'])
        assert result.exit_code == 2

    def test_unknown_instance(self, runner):
        result = runner.invoke(cli, ['certify', '--instance', 'teleport', '--scheme', 'trivial'])
        assert result.exit_code == 2

    def test_failure_exits_one(self, runner, monkeypatch, tmp_path):
        def broken(inst):
            raise CertificationError("forced")

        monkeypatch.setattr(service_module, 'certify_theorem2', broken)
        target = tmp_path / 'certify.json'
        result = runner.invoke(cli, ['certify', '--instance', 'bell-pair', '--scheme', 'trivial',
                                     '--out', str(target)])
        assert result.exit_code == 1
        data = json.loads(target.read_text(encoding='utf-8'))
        assert data['holds'] is False
        assert data['theorem2'][0]['error'] == 'forced'


class TestTranscript:
    def test_protocol_four(self, runner):
        result = runner.invoke(cli, ['transcript', '--scheme', 'trivial', '--seed', '3'])
        assert result.exit_code == 0, result.output
        lines = [json.loads(line) for line in result.output.splitlines()]
        assert [m['sender'] for m in lines] == ['alice', 'bob']
        assert all(len(m['payload_digest']) == 64 for m in lines)
        assert 'payload' not in lines[0]

    def test_dump_payloads(self, runner):
        result = runner.invoke(cli, ['transcript', '--instance', 'bell-pair', '--dump-payloads'])
        assert result.exit_code == 0, result.output
        lines = [json.loads(line) for line in result.output.splitlines()]
        assert lines[0]['register_dims'] == [2, 2]
        assert lines[0]['payload']

    def test_same_seed_same_bytes(self, runner):
        args = ['transcript', '--scheme', 'independent-qotp', '--seed', '9']
        assert runner.invoke(cli, args).output == runner.invoke(cli, args).output


class TestOutputAndConfig:
    def test_out_file_matches_stdout(self, runner, tmp_path):
        target = tmp_path / 'curve.json'
        written = runner.invoke(cli, ['tradeoff-curve', '--out', str(target)])
        assert written.exit_code == 0
        printed = runner.invoke(cli, ['tradeoff-curve'])
        assert target.read_text(encoding="utf-8") == printed.output

    def test_yaml_config(self, runner, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("scheme: trivial\nformat: csv\n", encoding='utf-8')
        result = runner.invoke(cli, ['--config', str(path), 'scheme-metrics'])
        assert result.exit_code == 0, result.output
        assert result.output.startswith('scheme,eps,')

    def test_yaml_unknown_key(self, runner, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("colour: blue\n", encoding='utf-8')
        result = runner.invoke(cli, ['--config', str(path), 'tradeoff-curve'])
        assert result.exit_code == 2
