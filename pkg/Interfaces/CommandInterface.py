from abc import ABC, abstractmethod
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from Kasteleyn.Gauge import model_from_config
from Kasteleyn.Model import FockModel
from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging
from Utils.Logging.Store.Actions.LoggingActions import LoggingStoreActions
from Utils.Logging.Store.Logging import LoggingStore
from Utils.Output import inputs_digest, summary, write_csv
from Utils.Store.Config import ConfigStore
from Utils.XlsxWriter import XlsxWriter


class CommandInterface(ABC):
    name = ''
    help = ''

    def __init__(self, arguments: Namespace) -> None:
        self.logger = Logging(self.__class__.__name__).logger
        self.arguments = arguments

        self.config = ConfigStore()
        self.logging_store = LoggingStore().logging_store

        self.out_dir = Path(getattr(arguments, 'out_dir', None) or '.')
        self.output: Dict[str, Any] = {}
        self.tables: Dict[str, Tuple[List[str], List[List[Any]]]] = {}
        self.passed = True

        self._model: Optional[FockModel] = None

    @staticmethod
    @abstractmethod
    def add_arguments(parser: ArgumentParser) -> None:
        """
        Register the flags of the subcommand

        :param parser: Subcommand parser

        :return: None
        """
        raise NotImplementedError()

    @abstractmethod
    def run(self) -> None:
        """
        Run the subcommand, filling output, tables and passed

        :return: None
        """
        raise NotImplementedError()

    def results(self) -> Dict[str, Any]:
        """
        Write the result tables to XLSX when asked and build the JSON
        summary of the run

        :return: Summary
        """
        if getattr(self.arguments, 'xlsx', False) and self.tables:
            self.output['xlsx'] = self.save_tables()

        state = self.config.state()
        return summary(self.name, inputs_digest(state), self.output,
                       state['tolerances'], self.passed)

    def save_tables(self) -> str:
        xlsx_writer = XlsxWriter(self.name, str(self.out_dir))

        for sheet, (headers, rows) in self.tables.items():
            xlsx_writer.add_worksheet(sheet)
            xlsx_writer.write_headers(sheet, headers)
            if rows:
                xlsx_writer.write_items(sheet, rows)

        xlsx_writer.close()
        self.logger.info('Result tables written to %s', xlsx_writer.path)

        return xlsx_writer.path

    def model(self) -> FockModel:
        """
        Model of the config, built once per command

        :return: Model
        """
        if self._model is None:
            model = self.config.section('model')
            if model is None:
                raise ConfigError('The config has no model section')

            self._model = model_from_config(
                model, self.limit('theta_terms_cap'),
                self.config.section('extended')
            )
            self.log('Model', 'Build the model from the config',
                     'model_from_config',
                     'n = {}, genus {}'.format(self._model.n,
                                               self._model.curve.genus),
                     'Kasteleyn/Gauge.py')

        return self._model

    def tolerance(self, name: str) -> float:
        return self.config.section('tolerances')[name]

    def limit(self, name: str) -> int:
        return self.config.section('limits')[name]

    def workers(self) -> Optional[int]:
        return self.config.section('run').get('workers')

    def path(self, name: str) -> Path:
        """
        Resolve an output file against the output directory

        :param name: File name or path

        :return: Path
        """
        path = Path(name)
        return path if path.is_absolute() else self.out_dir.joinpath(path)

    def log(self, what: str, why: str, how: str, result: str,
            engine: str = 'AztecFock.py') -> None:
        self.logging_store.dispatch(
            LoggingStoreActions.add_log(what, why, how, result, engine)
        )

    def check(self, name: str, defect: float, tolerance: float,
              engine: str = 'AztecFock.py') -> bool:
        """
        Record a verification: its defect goes to the results and the
        logbook, a failure clears passed

        :param name: Check name
        :param defect: Size of the violation
        :param tolerance: Accepted defect

        :return: Whether the check passed
        """
        passed = bool(defect <= tolerance)
        self.output.setdefault('checks', {})[name] = {
            'defect': float(defect),
            'tolerance': float(tolerance),
            'passed': passed
        }

        if passed:
            self.logger.info('%s passed, defect %.3e', name, defect)
        else:
            self.logger.warning('%s failed, defect %.3e > %.3e', name, defect,
                                tolerance)
            self.passed = False

        self.log(name, 'Verification', 'defect <= {:.3g}'.format(tolerance),
                 '{} ({:.3e})'.format('passed' if passed else 'failed',
                                      defect), engine)
        return passed

    def table(self, sheet: str, headers: Sequence[str],
              rows: List[List[Any]], path: Optional[str] = None) \
            -> Optional[Path]:
        """
        Keep a result table for the workbook and write it as CSV when a
        path is given

        :param sheet: Worksheet name
        :param headers: Column names
        :param rows: Rows
        :param path: CSV destination

        :return: Path written
        """
        self.tables[sheet] = (list(headers), rows)

        if path is None:
            return None

        written = write_csv(self.path(path), headers, rows)
        self.output.setdefault('files', []).append(str(written))
        return written
