import csv
import hashlib
import json
from math import isfinite
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from Utils.Errors import ConfigError

FLOAT_FORMAT = '{:.17g}'


def format_float(value: float) -> str:
    return FLOAT_FORMAT.format(value)


def plain(value: Any) -> Any:
    """
    Convert numpy scalars, complex numbers, tuples and objects exposing
    ``to_json`` into JSON compatible values; a complex number becomes
    [re, im]

    :param value: Anything produced by the engines

    :return: Nested dicts, lists, strings, numbers, booleans and None
    """
    if hasattr(value, 'to_json'):
        return plain(value.to_json())
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def encode(value: Any, indent: Optional[int] = 2, level: int = 0) -> str:
    """
    JSON text with sorted keys in which every float carries 17
    significant digits; non finite floats become null

    :param value: Value accepted by plain
    :param indent: Indentation, None for a single line
    :param level: Current nesting level

    :return: JSON text
    """
    value = plain(value)

    if isinstance(value, float):
        return format_float(value) if isfinite(value) else 'null'
    if not isinstance(value, (dict, list)):
        return json.dumps(value)

    if isinstance(value, dict):
        items = ['{}: {}'.format(json.dumps(k), encode(value[k], indent,
                                                       level + 1))
                 for k in sorted(value)]
        opening, closing = '{', '}'
    else:
        items = [encode(v, indent, level + 1) for v in value]
        opening, closing = '[', ']'

    if not items:
        return opening + closing
    if indent is None:
        return opening + ', '.join(items) + closing

    inner = '\n' + ' ' * (indent * (level + 1))
    outer = '\n' + ' ' * (indent * level)
    return opening + inner + (',' + inner).join(items) + outer + closing


def inputs_digest(config: Dict[str, Any]) -> str:
    """
    SHA-256 of the canonical JSON of the effective config

    :param config: Config state

    :return: Hex digest
    """
    normalized = json.dumps(plain(config), sort_keys=True,
                            separators=(',', ':')).encode('utf-8')
    return hashlib.sha256(normalized).hexdigest()


def _cell(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)) or value is None:
        return '' if value is None else str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    return value


def write_csv(path: Path, headers: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> Path:
    """
    Write rows to a CSV file, floats with 17 significant digits

    :param path: Destination
    :param headers: Column names
    :param rows: Rows in header order

    :return: Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, 'w', newline='') as file:
        writer = csv.writer(file)
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_cell(v) for v in row])

    return path


def read_csv(path: Path, columns: Sequence[str]) -> List[Dict[str, str]]:
    """
    Read a CSV file that must provide the given columns

    :param path: Source
    :param columns: Required column names

    :return: Rows as dicts
    """
    try:
        with open(path, 'r', newline='') as file:
            reader = csv.DictReader(file)
            missing = set(columns) - set(reader.fieldnames or [])
            if missing:
                raise ConfigError('{} lacks the columns {}'.format(
                    path, ', '.join(sorted(missing))
                ))
            return list(reader)
    except OSError as error:
        raise ConfigError('Cannot read {}'.format(path)) from error


def write_json(path: Path, value: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(encode(value) + '\n', encoding='utf-8')
    return path


def write_jsonl(path: Path, values: Iterable[Any]) -> Path:
    """
    One compact JSON document per line

    :param path: Destination
    :param values: Documents

    :return: Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, 'w', encoding='utf-8') as file:
        for value in values:
            file.write(encode(value, indent=None) + '\n')

    return path


def summary(command: str, digest: str, results: Dict[str, Any],
            tolerances: Dict[str, Any], passed: bool) -> Dict[str, Any]:
    return {
        'command': command,
        'inputs_digest': digest,
        'results': results,
        'tolerances': tolerances,
        'passed': bool(passed)
    }
