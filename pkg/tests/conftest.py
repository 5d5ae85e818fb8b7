import os

import pytest

from elliptic import load_curve
from experiment import Pipeline
from utils.config import FIXTURE_DIR_VARIABLE, RESULTS_DIR_VARIABLE

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')

# small enough to run in seconds, large enough to certify a few digits
TEST_BALL_LEVEL = 6
TEST_PRECISION = 6


@pytest.fixture(autouse=True)
def isolated_dirs(monkeypatch, tmp_path):
    monkeypatch.setenv(FIXTURE_DIR_VARIABLE, FIXTURES)
    monkeypatch.setenv(RESULTS_DIR_VARIABLE, str(tmp_path / 'results'))


@pytest.fixture(scope='session')
def curve_q2():
    return load_curve(os.path.join(FIXTURES, 'tnf5_q2.curve'))


@pytest.fixture(scope='session')
def curve_q3():
    return load_curve(os.path.join(FIXTURES, 'tnf5_q3.curve'))


@pytest.fixture(scope='session')
def pipeline_q2(curve_q2):
    return Pipeline(curve_q2, ball_level=TEST_BALL_LEVEL, precision=TEST_PRECISION)


@pytest.fixture(scope='session')
def pipeline_q3(curve_q3):
    return Pipeline(curve_q3, ball_level=TEST_BALL_LEVEL, precision=TEST_PRECISION)
