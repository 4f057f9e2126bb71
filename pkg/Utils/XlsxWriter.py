from datetime import datetime
from math import isfinite
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from xlsxwriter import Workbook
from xlsxwriter.worksheet import Worksheet

from Utils.Store.Config import ConfigStore

# Excel shows at most 15 significant digits, the CSV files keep all 17
NUMBER_FORMAT = '0.00000000000000E+00'
MAX_WIDTH = 40


class XlsxWriter:
    def __init__(self, name: str, out_dir: Optional[str] = None) -> None:
        self.path = self.get_save_path(name, out_dir)
        self.workbook = Workbook(self.path, {'nan_inf_to_errors': True})

        self.worksheets: Dict[str, Worksheet] = {}
        self.widths: Dict[str, List[int]] = {}

        self.bold = self.workbook.add_format({'bold': True})
        self.bold.set_center_across()
        self.number = self.workbook.add_format({'num_format': NUMBER_FORMAT})

    @staticmethod
    def get_save_path(name: str, out_dir: Optional[str] = None) -> str:
        """
        Workbook path inside the folder of the current run

        :param name: Name of the XLSX workbook
        :param out_dir: Output root, Output/ next to the sources by default

        :return: Filepath
        """
        if out_dir is None:
            output_path = Path(__file__).parent.parent.joinpath('Output')
        else:
            output_path = Path(out_dir)

        config = ConfigStore()
        run_path = output_path.joinpath(
            config.section('run').get('name') or 'run'
        )
        run_path.mkdir(parents=True, exist_ok=True)

        return str(run_path.joinpath('{}-{}.xlsx'.format(
            config.time, name.replace(' ', '-')
        )))

    def add_worksheet(self, name: str) -> None:
        # Sheet names are capped at 31 characters
        self.worksheets[name] = self.workbook.add_worksheet(name[:31])
        self.widths[name] = []

    def write_headers(self, worksheet: str, headers: Sequence[str]) -> None:
        """
        Write a bold header row and freeze it

        :param worksheet: Worksheet to write the headers to
        :param headers: Column names

        :return: None
        """
        sheet = self.worksheets[worksheet]

        for i, header in enumerate(headers):
            sheet.write_string(0, i, str(header), self.bold)
            self.widen(worksheet, i, str(header))

        sheet.freeze_panes(1, 0)

    def write_items(self, worksheet: str,
                    items: Sequence[Sequence[Any]]) -> None:
        """
        Write the rows below the header, numbers as numbers and complex
        values as two numbers in one text cell

        :param worksheet: Worksheet to write to
        :param items: Rows

        :return: None
        """
        for i, row in enumerate(items):
            for j, item in enumerate(row):
                self.write_cell(worksheet, i + 1, j, item)

        for i, width in enumerate(self.widths[worksheet]):
            self.worksheets[worksheet].set_column(i, i,
                                                  min(width, MAX_WIDTH) + 1)

    def write_cell(self, worksheet: str, row: int, column: int,
                   item: Any) -> None:
        sheet = self.worksheets[worksheet]

        if item is None:
            sheet.write_blank(row, column, None)
            return

        if isinstance(item, (bool, np.bool_)):
            sheet.write_boolean(row, column, bool(item))
            text = str(bool(item)).upper()
        elif isinstance(item, (int, np.integer)):
            sheet.write_number(row, column, int(item))
            text = str(item)
        elif isinstance(item, (float, np.floating)):
            if isfinite(item):
                sheet.write_number(row, column, float(item), self.number)
                text = '-0.00000000000000E+00'
            else:
                sheet.write_string(row, column, str(float(item)))
                text = str(float(item))
        elif isinstance(item, (complex, np.complexfloating)):
            text = '{:.15g}{:+.15g}j'.format(item.real, item.imag)
            sheet.write_string(row, column, text)
        elif isinstance(item, datetime):
            text = item.strftime('%d-%m-%Y %H:%M:%S')
            sheet.write_string(row, column, text)
        else:
            text = str(item)
            sheet.write_string(row, column, text)

        self.widen(worksheet, column, text)

    def widen(self, worksheet: str, column: int, text: str) -> None:
        widths = self.widths[worksheet]
        while len(widths) <= column:
            widths.append(0)
        widths[column] = max(widths[column], len(text))

    def close(self) -> None:
        """
        Close the XLSX workbook object

        :return: None
        """
        self.workbook.close()
