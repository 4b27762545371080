"""
Tests for the command-line interface: JSON output and exit codes
"""

import json
import sys
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

sys.path.insert(0, str(Path(__file__).parent.parent))

from main import EXIT_FAILED, EXIT_INVALID, EXIT_RANGE, cli


def parse_json(output: str) -> dict:
    """Top-level JSON object printed by emit(), skipping status lines"""
    lines = output.splitlines()
    start = lines.index('{')
    end = len(lines) - 1 - lines[::-1].index('}')
    return json.loads('\n'.join(lines[start:end + 1]))


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Working directory with a fast configuration"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path / 'logs'))
    config = {
        'census': {'class_groups': False, 'jobs': 1, 'progress': False},
        'cache': {'enabled': False},
        'output': {'directory': str(tmp_path / 'census')},
    }
    (tmp_path / 'config.yaml').write_text(yaml.safe_dump(config))
    return tmp_path


def run(*args):
    return CliRunner().invoke(cli, list(args))


def test_triple(workdir):
    result = run('triple', '--poly', 'x^4-x-1')
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['triple'] == {'a': 283, 'b': 1, 'cS': 1}
    assert data['disc'] == -283
    assert data['d_M'] == -283


@pytest.mark.parametrize('poly', ['x^4-2', 'x^4-', 'x^3-x-1', 'x^4-1'])
def test_triple_rejects_bad_input(workdir, poly):
    assert run('triple', '--poly', poly).exit_code == EXIT_INVALID


def test_conductor(workdir):
    result = run('conductor', '--poly', 'x^4-x-1')
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['conductor_S'] == 283
    assert data['shape']['N11'] == 283
    assert data['decomposition']['a1'] == 283
    assert data['corollary'] is True


def test_classgroup(workdir):
    result = run('classgroup', '--quadratic-disc', '-283')
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['elementary_divisors'] == [3]
    assert data['certification'] == 'FormsExhaustive'

    result = run('classgroup', '--poly', 'x^3+4x-1')
    assert result.exit_code == 0, result.output
    assert parse_json(result.output)['h'] == 2


@pytest.mark.parametrize('args', [
    ['--quadratic-disc', '-12'],
    ['--quadratic-disc', '-23', '--poly', 'x^3-x-1'],
    [],
    ['--poly', 'x^4-x-1'],
])
def test_classgroup_rejects_bad_input(workdir, args):
    assert run('classgroup', *args).exit_code == EXIT_INVALID


def test_bounds(workdir):
    result = run('bounds', '--disc', '-283')
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['candidate_triples'] == [[283, 1, 1]]
    assert data['bound'] == pytest.approx(536, rel=5e-3)

    result = run('bounds', '--conductor', '25', '--constant', '2')
    data = parse_json(result.output)
    assert data['shape']['N2'] == 5
    assert data['bound'] == pytest.approx(5.60e3, rel=5e-3)

    assert run('bounds', '--disc', str(5 ** 4)).exit_code == EXIT_INVALID
    assert run('bounds').exit_code == EXIT_INVALID


def test_enumerate_cubic(workdir):
    out = workdir / 'cubic.jsonl'
    result = run('enumerate', '--degree', '3', '--max-disc', '100', '-o', str(out))
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['records'] == 9
    assert data['galois'] == {'C3': 2, 'S3': 7}
    assert len(out.read_text().splitlines()) == 10


def test_enumerate_default_output_and_csv(workdir):
    result = run('enumerate', '--max-disc', '283', '--group', 's4', '--csv', str(workdir / 'counts'))
    assert result.exit_code == 0, result.output
    data = parse_json(result.output)
    assert data['records'] == 3
    assert Path(data['output']) == workdir / 'census' / 'fields_deg4_283.jsonl'
    assert (workdir / 'counts_disc.csv').read_text().splitlines()[1:] == ['229,1', '257,1', '283,1']


def test_enumerate_rejects_bad_arguments(workdir):
    assert run('enumerate', '--max-disc', '0').exit_code == EXIT_INVALID
    assert run('enumerate', '--max-disc', '100', '--jobs', '0').exit_code == EXIT_INVALID
    assert run('enumerate', '--max-disc', '100', '--group', 'q8').exit_code == EXIT_INVALID


def test_enumerate_output_does_not_depend_on_jobs(workdir):
    serial, parallel = workdir / 'serial.jsonl', workdir / 'parallel.jsonl'
    for jobs, out in (('1', serial), ('2', parallel)):
        result = run('enumerate', '--degree', '4', '--max-disc', '283', '--no-class-groups',
                     '--jobs', jobs, '-o', str(out))
        assert result.exit_code == 0, result.output
    assert serial.read_bytes() == parallel.read_bytes()
    assert len(serial.read_text().splitlines()) == 12


class TestVerify:

    @pytest.fixture
    def census_file(self, workdir):
        out = workdir / 'quartic.jsonl'
        result = run('enumerate', '--max-disc', '283', '-o', str(out))
        assert result.exit_code == 0, result.output
        return out

    def test_verify_passes(self, census_file, workdir):
        report = workdir / 'report.json'
        result = run('verify', '--checks', 'tables,shape,conductor,scaling',
                     '--quartic-file', str(census_file), '-o', str(report))
        assert result.exit_code == 0, result.output
        data = parse_json(result.output)
        assert data['passed'] is True
        assert data['max_disc'] == 283
        assert json.loads(report.read_text()) == data

    def test_corrupted_census_fails(self, census_file):
        lines = census_file.read_text().splitlines()
        records = [json.loads(line) for line in lines[1:]]
        target = next(i for i, r in enumerate(records) if r['disc'] == -283)
        records[target]['triple'] = {'a': 1, 'b': 1, 'cS': 283}
        census_file.write_text('\n'.join([lines[0]] + [json.dumps(r) for r in records]) + '\n')

        result = run('verify', '--checks', 'tables,shape', '--quartic-file', str(census_file))
        assert result.exit_code == EXIT_FAILED
        data = parse_json(result.output)
        assert data['checks']['tables']['counterexample']['disc'] == -283

    def test_bound_beyond_census_is_refused(self, census_file):
        result = run('verify', '--max-disc', '1000', '--checks', 'tables', '--quartic-file', str(census_file))
        assert result.exit_code == EXIT_RANGE

    def test_unknown_check(self, census_file):
        result = run('verify', '--checks', 'tables,bogus', '--quartic-file', str(census_file))
        assert result.exit_code == EXIT_INVALID

    def test_wrong_degree_file(self, census_file):
        result = run('verify', '--checks', 'gerth', '--cubic-file', str(census_file))
        assert result.exit_code == EXIT_INVALID


def test_init(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path / 'logs'))
    result = run('init')
    assert result.exit_code == 0, result.output
    config = yaml.safe_load((tmp_path / 'config.yaml').read_text())
    assert config['census']['max_disc'] == 10000
    assert (tmp_path / 'data' / 'cache').is_dir()

    (tmp_path / 'config.yaml').write_text('census: {max_disc: 5}\n')
    assert run('init').exit_code == 0
    assert 'max_disc: 5' in (tmp_path / 'config.yaml').read_text()
    assert run('init', '--force').exit_code == 0
    assert yaml.safe_load((tmp_path / 'config.yaml').read_text())['census']['max_disc'] == 10000


def test_invalid_config(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / 'bad.yaml').write_text('- not\n- a mapping\n')
    assert run('--config', str(tmp_path / 'bad.yaml'), 'triple', '--poly', 'x^4-x-1').exit_code == EXIT_INVALID
    assert run('--config', str(tmp_path / 'missing.yaml'), 'triple', '--poly', 'x^4-x-1').exit_code == EXIT_INVALID


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
