import json
import unittest
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path
from tempfile import TemporaryDirectory

from AztecFock import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, run


def call(*argv):
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    text = out.getvalue()
    return code, json.loads(text) if text.strip() else None


class TestMethods(unittest.TestCase):
    @classmethod
    def test_partition(cls):
        with TemporaryDirectory() as directory:
            code, result = call('--quiet', '--out-dir', directory,
                                '--config', 'uniform', 'partition')

            assert code == EXIT_OK
            assert result['command'] == 'partition'
            assert result['passed'] is True
            assert abs(result['results']['det'] / 2.0 ** 72 - 1.0) < 1e-8
            assert result['results']['checks']['det_vs_closed_form'][
                'passed']
            assert Path(directory, 'config.json').exists()

        _, again = call('--quiet', '--config', 'uniform', 'partition')
        assert again['inputs_digest'] == result['inputs_digest']

    @classmethod
    def test_config_errors(cls):
        for argv in (('partition',),
                     ('--config', 'no-such-config', 'partition'),
                     ('--config', 'uniform', 'partition', '--enumerate'),
                     ('--config', 'uniform', 'gauge'),
                     ('no-such-command',),
                     ()):
            code, _ = call('--quiet', *argv)
            assert code == EXIT_CONFIG

    @classmethod
    def test_failed_check(cls):
        with TemporaryDirectory() as directory:
            path = Path(directory, 'strict.json')
            path.write_text(json.dumps({
                'model': json.loads(
                    Path(__file__).parent.parent.joinpath(
                        'Configs', 'elliptic.json'
                    ).read_text()
                )['model'],
                'tolerances': {'identity': 1e-300}
            }))

            code, result = call('--quiet', '--out-dir', directory,
                                '--config', str(path), 'inverse',
                                '--method', 'direct')
            assert code == EXIT_NUMERICAL
            assert result['passed'] is False

    @classmethod
    def test_gauge(cls):
        with TemporaryDirectory() as directory:
            code, result = call('--quiet', '--out-dir', directory,
                                '--config', 'stanley', 'gauge')

            assert code == EXIT_OK
            assert result['results']['gauge'] == 'stanley'
            assert Path(directory, 'faces.csv').exists()

    @classmethod
    def test_sample(cls):
        with TemporaryDirectory() as directory:
            code, result = call('--quiet', '--out-dir', directory,
                                '--config', 'stanley', 'sample',
                                '--count', '3', '--seed', '4')

            assert code == EXIT_OK
            lines = Path(directory, 'samples.jsonl').read_text().splitlines()
            assert len(lines) == 3
            assert len(json.loads(lines[0])) == 3 * 4

    @classmethod
    def test_selftest(cls):
        with TemporaryDirectory() as directory:
            code, result = call('--quiet', '--out-dir', directory,
                                '--logbook', 'selftest', '--n', '2')

            assert code == EXIT_OK
            assert result['results']['failed'] == []
            assert len(result['results']['checks']) == 14
