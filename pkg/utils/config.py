"""
Run defaults. CLI flags override them; the effective values are written next to every report.
"""

import os
from typing import *

DEFAULT_PRECISION = 32
# ball level by residue degree of p
DEFAULT_BALL_LEVEL = {1: 12, 2: 8}
DEFAULT_HECKE_DEGREE = 3
DEFAULT_MEASURE_DEPTH = 2
REPORT_SCHEMA_VERSION = '1.0'

FIXTURE_DIR_VARIABLE = 'EZV_FIXTURE_DIR'
RESULTS_DIR_VARIABLE = 'EZV_RESULTS_DIR'


def default_ball_level(degree: int) -> int:
    """
    Ball level for a place of the given degree; beyond the table the cover keeps about q^12 balls
    """
    if degree in DEFAULT_BALL_LEVEL:
        return DEFAULT_BALL_LEVEL[degree]
    return max(2, 12 // degree)


def fixture_dir() -> str:
    return os.environ.get(FIXTURE_DIR_VARIABLE, 'fixtures')


def results_dir() -> str:
    return os.environ.get(RESULTS_DIR_VARIABLE, 'results')


def effective_config(**overrides: Any) -> Dict[str, Any]:
    config = {
        'precision': DEFAULT_PRECISION,
        'ball_level': None,
        'hecke_degree': DEFAULT_HECKE_DEGREE,
        'measure_depth': DEFAULT_MEASURE_DEPTH,
        'schema_version': REPORT_SCHEMA_VERSION,
        'fixture_dir': fixture_dir(),
        'results_dir': results_dir(),
    }
    config.update({k: v for k, v in overrides.items() if v is not None})
    return config
