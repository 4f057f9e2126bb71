import json
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

import numpy as np

from Kasteleyn.Model import AngleAssignment
from Utils.Errors import ConfigError
from Utils.Output import encode, inputs_digest, plain, read_csv, summary, \
    write_csv, write_jsonl


class TestMethods(unittest.TestCase):
    @classmethod
    def test_plain(cls):
        assert plain(np.float64(0.5)) == 0.5
        assert plain(np.int64(3)) == 3
        assert plain(np.bool_(True)) is True
        assert plain(1 + 2j) == [1.0, 2.0]
        assert plain((1, {2})) == [1, [2]]
        assert plain(np.arange(3)) == [0, 1, 2]
        assert plain(AngleAssignment.homogeneous(1, 0, 1, 2, 3)) == {
            'alpha': [0.0], 'beta': [1.0], 'gamma': [2.0], 'delta': [3.0]
        }

    @classmethod
    def test_encode(cls):
        text = encode({'b': 0.1, 'a': [1, float('nan')], 'c': True})

        assert text.index('"a"') < text.index('"b"') < text.index('"c"')
        assert '0.10000000000000001' in text
        assert 'null' in text
        assert json.loads(text)['c'] is True

        assert encode({'x': []}, indent=None) == '{"x": []}'
        assert encode([1, 2], indent=None) == '[1, 2]'

    @classmethod
    def test_digest(cls):
        first = inputs_digest({'b': 1, 'a': [0.5, 2]})
        second = inputs_digest({'a': [0.5, 2], 'b': 1})

        assert first == second
        assert len(first) == 64
        assert inputs_digest({'a': 1}) != inputs_digest({'a': 2})

    @classmethod
    def test_csv(cls):
        with TemporaryDirectory() as directory:
            path = write_csv(Path(directory, 'sub', 'table.csv'),
                             ['x', 'y', 'flag'],
                             [[1, 0.25, True], [2, 1 / 3, None]])

            rows = read_csv(path, ['x', 'y'])
            assert rows[0] == {'x': '1', 'y': '0.25', 'flag': 'true'}
            assert float(rows[1]['y']) == 1 / 3
            assert rows[1]['flag'] == ''

            try:
                read_csv(path, ['x', 'z'])
                assert False
            except ConfigError:
                pass

            try:
                read_csv(Path(directory, 'missing.csv'), ['x'])
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_jsonl(cls):
        with TemporaryDirectory() as directory:
            path = write_jsonl(Path(directory, 'lines.jsonl'),
                               [{'a': 1}, [[0, 1], [1, 0]]])
            lines = path.read_text().splitlines()

            assert lines == ['{"a": 1}', '[[0, 1], [1, 0]]']

    @classmethod
    def test_summary(cls):
        result = summary('partition', 'abc', {'det': 2.0}, {'identity': 1e-9},
                         1)
        assert result['passed'] is True
        assert set(result) == {'command', 'inputs_digest', 'results',
                               'tolerances', 'passed'}
