import io
import json
import math
import os

import click
import pandas as pd
import pytest

from commands import format_value, parse_complex
from commands.plots import tessellation_cells
from models.modular import reduce_fundamental
from models.monodromy import GroupId
from models.numcore import moebius

pytestmark = pytest.mark.filterwarnings('ignore::UserWarning')


@pytest.mark.parametrize('text, value', [
    ('i', 1j),
    ('-i', -1j),
    ('2', 2),
    ('1/2', 0.5),
    ('0.1+1.4i', 0.1 + 1.4j),
    ('-0.5-2i', -0.5 - 2j),
    ('1/2+1/3j', 0.5 + 1j / 3),
    ('1e-3i', 1e-3j),
    ('3+i', 3 + 1j),
])
def test_parse_complex(text, value):
    assert parse_complex(text) == pytest.approx(value)


@pytest.mark.parametrize('text', ['abc', '1+', 'i2', '1..2', ''])
def test_parse_complex_rejects(text):
    with pytest.raises(click.BadParameter):
        parse_complex(text)


def test_format_value():
    assert format_value(0.5 + 1e-20j) == '0.5'
    assert format_value(2j) == '2i'
    assert format_value(1 - 2j, 3) == '1-2i'


# --- eval -----------------------------------------------------------------

def test_eval_lambda_at_i(runner):
    result = runner.invoke(args=['eval', 'lambda', 'i'])
    assert result.exit_code == 0, result.output
    assert float(result.output) == pytest.approx(0.5, abs=1e-12)


def test_eval_hypergeometric_at_zero(runner):
    result = runner.invoke(args=['eval', 'F', '1/2', '1/2', '1', '0'])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == '1'


def test_eval_j_at_i(runner):
    result = runner.invoke(args=['eval', 'j', 'i'])
    assert result.exit_code == 0
    assert float(result.output) == pytest.approx(1.0, abs=1e-10)


def test_eval_negative_literal(runner):
    result = runner.invoke(args=['eval', 'phi0', '-0.1+0.2i'])
    assert result.exit_code == 0, result.output
    assert parse_complex(result.output.strip()).imag > 0


def test_eval_json(runner):
    result = runner.invoke(args=['eval', 'E4', '2i', '--method', 'fourier', '--format', 'json'])
    assert result.exit_code == 0, result.output
    record = json.loads(result.output)
    assert record['function'] == 'E4'
    assert record['input'] == ['2i']
    q = math.exp(-4 * math.pi)
    assert record['re'] == pytest.approx(1 + 240 * q + 2160 * q * q, rel=1e-12)
    assert record['im'] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize('args', [
    ['eval', 'lambda', 'abc'],
    ['eval', 'zeta', 'i'],
    ['eval', 'F', '1/2', '1/2', '0.5'],
    ['eval', 'F', 'x', '1/2', '1', '0.5'],
    ['eval', 'lambda', '1', '2'],
])
def test_eval_usage_errors(runner, args):
    assert runner.invoke(args=args).exit_code == 2


@pytest.mark.parametrize('args', [
    ['eval', 'lambda', '1-1i'],
    ['eval', 'F', '1/2', '1/2', '1', '2'],
    ['eval', 'F', '1/2', '1/2', '-1', '0.5'],
    ['eval', 'phi0', '0'],
    ['eval', 'nu', '1/2+0.8660254037844386i'],
])
def test_eval_domain_errors(runner, args):
    result = runner.invoke(args=args)
    assert result.exit_code == 3
    assert 'Error' in result.output


# --- verify ---------------------------------------------------------------

def test_verify_at_a_point(runner):
    result = runner.invoke(args=['verify', 'j621', '--tau', '0.1+1.4i'])
    assert result.exit_code == 0, result.output
    assert result.output.startswith('PASS j621 at 0.1+1.4i')
    assert '1 passed, 0 failed, 0 skipped' in result.output


def test_verify_fourier(runner):
    result = runner.invoke(args=['verify', 'fourier_F1'])
    assert result.exit_code == 0, result.output
    assert 'coefficients=[1, 60, -4860, 660480]' in result.output


def test_verify_pole_is_skipped(runner):
    result = runner.invoke(args=['verify', 'e4_j_formula', '--tau', '1/2+0.8660254037844386i'])
    assert result.exit_code == 0, result.output
    assert result.output.startswith('SKIP')


def test_verify_json(runner):
    result = runner.invoke(args=['verify', 'fe3', '--z', '0', '--z', '0.1i', '--format', 'json'])
    assert result.exit_code == 0, result.output
    reports = json.loads(result.output)
    assert [r['id'] for r in reports] == ['fe3', 'fe3']
    assert reports[0]['point'] == {'re': 0.0, 'im': 0.0}
    assert all(r['passed'] for r in reports)


def test_verify_csv(runner):
    result = runner.invoke(args=['verify', 'jacobi_id_theta', 'jacobi_formula', '--format', 'csv'])
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(io.StringIO(result.output))
    assert list(frame.columns) == ['id', 'point_re', 'point_im', 'residual', 'rel_residual', 'tol', 'status']
    # TestingConfig grid size
    assert len(frame) == 8
    assert set(frame['status']) == {'PASS'}


def test_verify_save(runner, app):
    result = runner.invoke(args=['verify', 'fe3', '--save'])
    assert result.exit_code == 0, result.output
    saved = os.listdir(app.config['DATA_DIR'])
    assert len(saved) == 1 and saved[0].startswith('verify-')
    with open(os.path.join(app.config['DATA_DIR'], saved[0])) as f:
        payload = json.load(f)
    assert len(payload['reports']) == app.config['GRID_POINTS']


def test_verify_unknown_tag(runner):
    assert runner.invoke(args=['verify', 'ramanujan']).exit_code == 2


def test_verify_outside_domain(runner):
    assert runner.invoke(args=['verify', 'e4_j_formula', '--tau', '0.3+0.5i']).exit_code == 3


def test_verify_failure_exit_status(runner):
    result = runner.invoke(args=['verify', 'jacobi_formula', '--tol', '1e-18'])
    assert result.exit_code == 1
    assert 'FAIL' in result.output


# --- table ----------------------------------------------------------------

def _csv(output):
    return pd.read_csv(io.StringIO(output))


def test_table_function(runner):
    result = runner.invoke(args=['table', 'lambda', '--points', '5'])
    assert result.exit_code == 0, result.output
    frame = _csv(result.output)
    assert list(frame.columns) == ['input_re', 'input_im', 're', 'im']
    assert len(frame) == 5
    assert (frame['input_im'] > 0).all()


def test_table_is_seeded(runner):
    first = runner.invoke(args=['table', 'phi1', '--points', '4', '--seed', '5']).output
    again = runner.invoke(args=['table', 'phi1', '--points', '4', '--seed', '5']).output
    assert first == again


def test_table_hypergeometric_needs_params(runner):
    assert runner.invoke(args=['table', 'F']).exit_code == 2
    result = runner.invoke(args=['table', 'F', '--params', '1/12', '5/12', '1', '--points', '3'])
    assert result.exit_code == 0, result.output
    assert len(_csv(result.output)) == 3


def test_table_riemann(runner):
    result = runner.invoke(args=['table', 'riemann', '--params', '1/6', '1/2', '1'])
    assert result.exit_code == 0, result.output
    frame = _csv(result.output)
    assert list(frame['point']) == ['z=0', 'z=1', 'z=inf', 'difference']
    assert set(frame['params']) == {'(1/6, 1/2, 1)'}


def test_table_circuits(runner):
    result = runner.invoke(args=['table', 'circuits'])
    assert result.exit_code == 0, result.output
    frame = _csv(result.output)
    assert len(frame) == 3 * 3 * 4
    assert set(frame['matrix']) == {'M0', 'M1', 'Minf'}


def test_table_to_file(runner, tmp_path):
    target = tmp_path / 'circuits.csv'
    result = runner.invoke(args=['table', 'circuits', '--output', str(target)])
    assert result.exit_code == 0, result.output
    assert len(_csv(target.read_text())) == 36


def test_table_unwritable_output(runner, tmp_path):
    target = tmp_path / 'missing' / 'out.csv'
    assert runner.invoke(args=['table', 'circuits', '--output', str(target)]).exit_code == 4


def test_table_unknown(runner):
    assert runner.invoke(args=['table', 'zeta']).exit_code == 2


# --- plot -----------------------------------------------------------------

@pytest.mark.parametrize('extra', [
    ['fundamental_domains'],
    ['schwarz_triangle', '--map', 'phi2'],
    ['tessellation', '--group', 'Gamma2CubeRoot', '--depth', '2'],
])
def test_plot_writes_svg(runner, tmp_path, extra):
    target = tmp_path / 'figure.svg'
    result = runner.invoke(args=['plot', *extra, '--output', str(target)])
    assert result.exit_code == 0, result.output
    head = target.read_text()[:200]
    assert head.startswith('<?xml') and '<svg' in target.read_text()


def test_plot_bad_path(runner, tmp_path):
    target = tmp_path / 'missing' / 'figure.svg'
    assert runner.invoke(args=['plot', 'fundamental_domains', '--output', str(target)]).exit_code == 4


@pytest.mark.parametrize('depth, count', [(0, 1), (1, 4)])
def test_tessellation_cell_counts(depth, count):
    assert len(tessellation_cells(GroupId.SL2Z, depth)) == count


@pytest.mark.parametrize('group, sample', [
    (GroupId.SL2Z, 0.1 + 1.5j),
    (GroupId.Gamma2CubeRoot, -0.4 + 1.5j),
])
def test_tessellation_cells_reduce_back(group, sample):
    cells = tessellation_cells(group, 3)
    images = [moebius(g, sample) for g in cells]
    assert len({(round(t.real, 9), round(t.imag, 9)) for t in images}) == len(cells)
    for t in images:
        assert t.imag > 0
        assert reduce_fundamental(t, group).tau0 == pytest.approx(sample, abs=1e-9)
