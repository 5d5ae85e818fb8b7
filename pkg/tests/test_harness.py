import json
import os

import pytest

from algebra import Place
from elliptic import format_fixture, load_curve, reduction_check, validate_curve
from experiment import CheckResult, Experiment, Pipeline, VerificationReport, NOT_A_ROOT_OF_UNITY, TORSION_NOTE, \
    format_residue, run, scan, verify
from local import residue_field
from main import main, EXIT_PASSED, EXIT_FAILED, EXIT_ERROR
from utils.config import REPORT_SCHEMA_VERSION, effective_config, fixture_dir, results_dir

from conftest import TEST_BALL_LEVEL, TEST_PRECISION


def _report(**overrides) -> VerificationReport:
    fields = dict(curve='tnf5_q2', q=2, level='T^3 + T^2 + T', p='T', m_p=5, m_inf=5, winding=1,
                  eigenvalues={'T + 1': 0}, q_tilde={'valuation': 0, 'digits': ['1'], 'precision': 6},
                  q_c={'valuation': 0, 'digits': ['1'], 'precision': 6},
                  i_psi={'valuation': 1, 'digits': ['1'], 'precision': 6}, ball_level=6, precision=6,
                  certified_precision=6, xi='1', zeta='1', checks={'exceptional_zero': True})
    fields.update(overrides)
    return VerificationReport(**fields)


def test_check_results_and_table():
    checks = {'yes': lambda: CheckResult(True, 'fine'), 'no': lambda: CheckResult(False), 'plain': lambda: 1}
    table = run(checks)
    assert list(table.index) == ['yes', 'no', 'plain']
    assert list(table['passed']) == [True, False, True]
    assert table.loc['yes', 'detail'] == 'fine'
    assert not CheckResult(False)


def test_run_propagates_errors():
    def broken():
        raise ArithmeticError('no digits')

    with pytest.raises(ArithmeticError):
        run({'broken': broken})


def test_report_checksum_is_deterministic(tmp_path):
    a, b = _report(), _report()
    assert a.checksum() == b.checksum()
    assert _report(winding=2).checksum() != a.checksum()
    body = a.to_json()
    assert body['checksum'] == a.checksum()
    assert body['schema_version'] == REPORT_SCHEMA_VERSION
    assert body['passed'] is True
    assert body['notes'] == [TORSION_NOTE]
    assert not _report(checks={'exceptional_zero': True, 'period_identity': False}).passed
    path = str(tmp_path / 'report.json')
    a.write(path)
    with open(path) as f:
        assert json.load(f)['checksum'] == a.checksum()


def test_format_residue():
    assert format_residue(None) == NOT_A_ROOT_OF_UNITY


def test_config_follows_environment(tmp_path):
    assert os.path.isdir(fixture_dir())
    assert results_dir() == str(tmp_path / 'results')
    config = effective_config(precision=8, ball_level=None)
    assert config['precision'] == 8
    assert config['ball_level'] is None
    assert config['schema_version'] == REPORT_SCHEMA_VERSION


def test_pipeline_rejects_bad_arguments(curve_q2):
    with pytest.raises(ValueError):
        Pipeline(curve_q2, sign=0)
    with pytest.raises(ValueError):
        Pipeline(curve_q2.with_level(None, None))
    assert Pipeline(curve_q2).L == 12


def test_pipeline_stages(pipeline_q2):
    assert pipeline_q2.m_p == 5
    assert pipeline_q2.m_inf == 5
    assert pipeline_q2.tate.m == pipeline_q2.m_p
    assert pipeline_q2.certified == min(TEST_BALL_LEVEL, TEST_PRECISION)
    assert pipeline_q2.period.value.valuation == pipeline_q2.winding
    assert pipeline_q2.xi.valuation == 0


def test_scan_needs_level_degree_three():
    assert scan(2, max_level_degree=2) == []


@pytest.mark.slow
def test_scan_candidates_are_semistable():
    found = scan(2, coefficient_degree=1, max_level_degree=3, limit=3)
    for curve in found:
        assert curve.name.startswith('scan_q2_')
        assert reduction_check(curve, curve.p).is_split
        assert reduction_check(curve, Place.infinity(2)).is_split
        validate_curve(curve)


def test_graph_command(tmp_path):
    out = str(tmp_path / 'level.dot')
    assert main(['graph', '--level', 'T^2 + T', '--q', '2', '--out', out]) == EXIT_PASSED
    with open(out) as f:
        assert f.read().strip().startswith('digraph')


def test_errors_exit_with_code_two(capsys):
    assert main(['verify', '--curve', 'no_such_curve', '--no-save']) == EXIT_ERROR
    assert 'FixtureError' in capsys.readouterr().err
    assert main(['graph', '--level', '1', '--q', '2', '--out', 'unused.dot']) == EXIT_ERROR


def test_symbol_command(capsys):
    assert main(['symbol', '--r', '0', '--curve', 'tnf5_q2']) == EXIT_PASSED
    assert '[0, inf] c = ' in capsys.readouterr().out


@pytest.mark.slow
@pytest.mark.parametrize('fixture', ['tnf5_q2', 'tnf5_q3'])
def test_fixtures_verify(fixture):
    report = verify(fixture, ball_level=TEST_BALL_LEVEL, precision=TEST_PRECISION)
    assert report.passed, report.details
    assert report.xi != NOT_A_ROOT_OF_UNITY
    assert report.zeta != NOT_A_ROOT_OF_UNITY
    assert report.m_p == 5


@pytest.mark.slow
def test_sign_flip_inverts_xi():
    curve = load_curve('tnf5_q2')
    results = {}
    for sign in (1, -1):
        experiment = Experiment().add_curve(curve).set_ball_level(TEST_BALL_LEVEL).set_precision(TEST_PRECISION)
        if sign == -1:
            experiment.flip_sign()
        table = experiment.add_all_checks().run(save_data=False)
        assert table['passed'].all()
        results[sign] = experiment.get_pipeline()
    plus, minus = results[1], results[-1]
    assert minus.winding == -plus.winding
    field = residue_field(plus.p)
    assert field.mul(plus.xi_residue, minus.xi_residue) == field.reduce(1)


@pytest.mark.slow
def test_verify_writes_report(tmp_path):
    assert main(['verify', '--curve', 'tnf5_q2', '--level', str(TEST_BALL_LEVEL),
                 '--prec', str(TEST_PRECISION)]) in (EXIT_PASSED, EXIT_FAILED)
    reports = [os.path.join(d, f) for d, _, files in os.walk(results_dir()) for f in files if f == 'report.json']
    assert reports
    with open(reports[0]) as f:
        report = json.load(f)
    assert report['curve'] == 'tnf5_q2'
    assert report['checksum']


GOLDEN = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'golden')


def test_dot_export_matches_golden(tmp_path):
    out = str(tmp_path / 'level_T.dot')
    assert main(['graph', '--level', 'T', '--q', '2', '--out', out]) == EXIT_PASSED
    with open(out) as f, open(os.path.join(GOLDEN, 'level_T_q2.dot')) as g:
        assert f.read().strip() == g.read().strip()


def test_report_body_matches_golden():
    body = _report().to_json()
    for key in ('checksum', 'j_expansion_checksum'):
        assert len(body.pop(key)) == 64
    with open(os.path.join(GOLDEN, 'report_body.json')) as f:
        assert body == json.load(f)


def test_fixture_format_matches_golden(curve_q2):
    with open(os.path.join(os.environ['EZV_FIXTURE_DIR'], 'tnf5_q2.curve')) as f:
        golden = ''.join(line for line in f if not line.startswith('#'))
    assert format_fixture(curve_q2) == golden


@pytest.mark.slow
@pytest.mark.parametrize('fixture', ['tnf5_q2', 'tnf5_q3'])
def test_acceptance_at_default_knobs(fixture):
    report = verify(fixture, ball_level=12, precision=32)
    assert report.passed, report.details
    assert report.certified_precision >= 12
    assert report.xi != NOT_A_ROOT_OF_UNITY
