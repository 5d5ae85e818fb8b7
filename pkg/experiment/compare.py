"""Comparator

This file is used to define functions that evaluate a set of named checks on one verification pipeline and collect
the outcomes into a table.

This file can also be imported as a module and contains the following
functions and classes:

    * CheckResult: outcome of one check with a readable detail.
    * run: Method that runs the input checks and outputs a dataframe containing the results.
"""

import logging
from dataclasses import dataclass
from typing import *

import pandas as pd

from utils import save_pandas_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ''

    def __bool__(self):
        return self.passed


def run(checks: Dict[str, Callable[[], CheckResult]], save_table: bool = False, dir: str = '') -> pd.DataFrame:
    """
    Method that runs the input checks in order. Exceptions are not caught: a check that cannot be evaluated is an
    error of the run, not a failed check.
    :param checks: dictionary of named checks
    :param save_table: boolean representing whether the table should be stored
    :param dir: directory of where to store the table
    :return: dataframe with one row per check and columns 'passed' and 'detail'
    """
    rows = []
    for name, check in checks.items():
        result = check()
        if not isinstance(result, CheckResult):
            result = CheckResult(bool(result))
        print(f"{'PASS' if result.passed else 'FAIL'} {name}: {result.detail}")
        logger.info(f"{name}: {result}")
        rows.append([name, result.passed, result.detail])
    df = pd.DataFrame(rows, columns=['check', 'passed', 'detail']).set_index('check')
    if save_table:
        save_pandas_table(dir + '/checks', df)
    return df
