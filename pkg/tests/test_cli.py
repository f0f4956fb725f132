"""
tests/test_cli
~~~~~~~~~~~~~~
"""
import json
import math

import pytest

from bernsum import create_cli
from bernsum.core.config import TestingConfig


def payload(result):
    assert result.exception is None or isinstance(result.exception, SystemExit), result.exception
    return json.loads(result.output)


def test_matching_raw_moments_are_bell_numbers(invoke):
    """
    Ensures the moments command prints Bell numbers for Matching(5).
    """
    result = invoke('moments', '--dist', 'matching', '--n', 5, '--kmax', 4)
    assert result.exit_code == 0
    data = payload(result)
    assert data['values'] == {'0': '1', '1': '1', '2': '2', '3': '5', '4': '15'}
    assert data['provenance'] == 'closed_form'
    assert data['approx'] is False
    assert list(data) == ['kind', 'kmax', 'values', 'mu', 'provenance', 'approx', 'truncation_bound']


def test_engine_method(invoke):
    data = payload(invoke('moments', '--dist', 'matching', '--n', 5, '--kmax', 4, '--method', 'engine'))
    assert data['provenance'] == 'engine'
    assert data['values']['4'] == '15'


def test_binomial_factorial_moments(invoke):
    data = payload(invoke('moments', '--dist', 'binomial', '--n', 3, '--p', '1/2', '--kind', 'factorial'))
    assert data['values'] == {'0': '1', '1': '3/2', '2': '3/2', '3': '3/4', '4': '0'}


def test_central_report_carries_mu(invoke):
    data = payload(invoke('moments', '--dist', 'binomial', '--n', 3, '--p', '1/2', '--kind', 'central', '--kmax', 2))
    assert data['mu'] == '3/2'
    assert data['values']['2'] == '3/4'


def test_benford_mean_is_approximate(invoke):
    data = payload(invoke('moments', '--dist', 'benford', '--base', 10, '--kmax', 1))
    assert data['approx'] is True
    assert float(data['values']['1']) == pytest.approx(9 - math.log10(math.factorial(9)), rel=1e-12)


def test_tail_method_reports_truncation(invoke):
    """
    Ensures an infinite support summed from its tail reports a residual bound.
    """
    data = payload(invoke('moments', '--dist', 'geometric', '--p', '1/2', '--kind', 'factorial',
                          '--kmax', 2, '--method', 'tail'))
    assert data['provenance'] == 'tail'
    assert float(data['values']['2']) == pytest.approx(4, rel=1e-12)
    assert data['truncation_bound'] is not None
    assert data['approx'] is True


def test_as_printed_geometric(invoke):
    args = ('moments', '--dist', 'geometric', '--p', '1/2', '--kind', 'factorial', '--kmax', 2)
    assert payload(invoke(*args))['values']['2'] == '4'
    assert payload(invoke(*args, '--as-printed'))['values']['2'] == '2'


def test_expected_factorial(invoke):
    data = payload(invoke('moments', '--dist', 'binomial', '--n', 2, '--p', '1/2', '--kind', 'expected_factorial'))
    assert data['values'] == {'0': '5/4'}
    data = payload(invoke('moments', '--dist', 'poisson-binomial', '--probs', '1/2,1/2', '--kind', 'expected_factorial'))
    assert data['values'] == {'0': '5/4'}


def test_spec_json(invoke):
    data = payload(invoke('moments', '--spec', '{"dist": "binomial", "n": 3, "p": "1/2"}', '--kmax', 2))
    assert data['values'] == {'0': '1', '1': '3/2', '2': '3'}


def test_float_rendering(invoke):
    data = payload(invoke('moments', '--dist', 'binomial', '--n', 3, '--p', '1/2', '--kind', 'factorial',
                          '--kmax', 2, '--float', '--digits', 5))
    assert data['values'] == {'0': '1', '1': '1.5', '2': '1.5'}


def test_csv_output(invoke):
    """
    Ensures CSV rows carry the same strings as the JSON report.
    """
    result = invoke('moments', '--dist', 'binomial', '--n', 3, '--p', '1/2', '--kind', 'factorial',
                    '--kmax', 2, '--format', 'csv')
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        'kind,k,value,provenance',
        'factorial,0,1,closed_form',
        'factorial,1,3/2,closed_form',
        'factorial,2,3/2,closed_form',
    ]


def test_table_output(invoke):
    result = invoke('moments', '--dist', 'matching', '--n', 3, '--format', 'table')
    assert result.exit_code == 0
    assert 'raw moments (closed_form)' in result.output


def test_output_is_byte_stable(invoke):
    args = ('verify', '--dist', 'soliton', '--r', 6, '--kmax', 3)
    assert invoke(*args).output == invoke(*args).output


@pytest.mark.parametrize(
    "args",
    [
        ('moments', '--dist', 'binomial', '--n', 3, '--p', '3/2'),
        ('moments', '--dist', 'binomial', '--n', 3),
        ('moments', '--dist', 'zeta'),
        ('moments', '--spec', '{not json'),
        ('moments', '--dist', 'poisson', '--lambda', 1, '--method', 'engine'),
        ('moments', '--dist', 'benford', '--base', 10, '--kind', 'expected_factorial'),
        ('moments', '--dist', 'binomial', '--n', 3, '--p', '1/2', '--epsilon', 0),
        ('moments',),
        ('pmf', '--dist', 'poisson', '--lambda', 1),
    ],
)
def test_usage_errors_exit_2(invoke, args):
    result = invoke(*args)
    assert result.exit_code == 2


def test_error_message_on_stderr(invoke):
    result = invoke('moments', '--dist', 'binomial', '--n', 3, '--p', '3/2')
    assert 'error:' in result.output


def test_general_model_over_guard_exits_3(invoke):
    """
    Ensures the engine refuses thirty general indicators while the closed form still answers.
    """
    probs = ','.join(['1/2'] * 30)
    assert invoke('moments', '--dist', 'poisson-binomial', '--probs', probs, '--kmax', 2,
                  '--method', 'engine').exit_code == 3
    data = payload(invoke('moments', '--dist', 'poisson-binomial', '--probs', probs, '--kmax', 2))
    assert data['values']['1'] == '15'


def test_budget_flag_and_environment(monkeypatch, runner):
    probs = ','.join(['1/2'] * 6)
    args = ['moments', '--dist', 'poisson-binomial', '--probs', probs, '--kmax', '2', '--method', 'engine']
    cli = create_cli(TestingConfig())
    assert runner.invoke(cli, args + ['--budget', '5']).exit_code == 3
    assert runner.invoke(cli, args).exit_code == 0

    monkeypatch.setenv('BERNSUM_BUDGET', '5')
    cli = create_cli(TestingConfig)
    assert runner.invoke(cli, args).exit_code == 3
    assert runner.invoke(cli, args + ['--budget', '100']).exit_code == 0


def test_pmf_routes(invoke):
    """
    Ensures the direct, Frechet and pgf routes agree on finite supports.
    """
    data = payload(invoke('pmf', '--dist', 'matching', '--n', 3, '--via', 'pgf'))
    assert data['pmf'] == {'0': '1/3', '1': '1/2', '2': '0', '3': '1/6'}
    assert data['via'] == 'pgf'
    data = payload(invoke('pmf', '--dist', 'binomial', '--n', 2, '--p', '1/2', '--via', 'frechet'))
    assert data['pmf'] == {'0': '1/4', '1': '1/2', '2': '1/4'}
    data = payload(invoke('pmf', '--dist', 'soliton', '--r', 2))
    assert data['pmf'] == {'1': '1/2', '2': '1/2'}
    assert data['dist'] == {'dist': 'soliton', 'r': 2}

    args = ('pmf', '--dist', 'hypergeometric', '--population', 8, '--g', 3, '--n', 4)
    tables = [payload(invoke(*args, '--via', via))['pmf'] for via in ('direct', 'frechet', 'pgf')]
    assert tables[0] == tables[1] == tables[2]


def test_pmf_of_infinite_support(invoke):
    data = payload(invoke('pmf', '--dist', 'poisson', '--lambda', 1, '--xmax', 2))
    assert float(data['pmf']['0']) == pytest.approx(math.exp(-1), rel=1e-12)
    frechet = payload(invoke('pmf', '--dist', 'poisson', '--lambda', 1, '--xmax', 2, '--via', 'frechet'))
    assert float(frechet['pmf']['2']) == pytest.approx(math.exp(-1) / 2, rel=1e-12)
    assert invoke('pmf', '--dist', 'poisson', '--lambda', 1, '--xmax', 3, '--via', 'pgf').exit_code == 3


def test_frechet_on_infinite_support_is_approximate(invoke):
    frechet = payload(invoke('pmf', '--dist', 'poisson', '--lambda', 1, '--xmax', 1, '--via', 'frechet'))
    assert '/' not in frechet['pmf']['0']
    assert float(frechet['pmf']['0']) == pytest.approx(math.exp(-1), rel=1e-12)


def test_frechet_horizon_follows_config(invoke, config):
    """
    Ensures a short inversion horizon is refused with the budget exit code.
    """
    config.FRECHET_EXTRA_TERMS = 2
    result = invoke('pmf', '--dist', 'poisson', '--lambda', 1, '--xmax', 2, '--via', 'frechet')
    assert result.exit_code == 3
    assert 'error:' in result.output


def test_poisson_with_a_large_rate(invoke):
    data = payload(invoke('moments', '--dist', 'poisson', '--lambda', 800, '--method', 'tail',
                          '--kind', 'factorial', '--kmax', 2))
    assert float(data['values']['1']) == pytest.approx(800, rel=1e-9)
    assert float(data['values']['2']) == pytest.approx(640000, rel=1e-9)
    data = payload(invoke('pmf', '--dist', 'poisson', '--lambda', 800, '--xmax', 801))
    assert float(data['pmf']['800']) == pytest.approx(1 / math.sqrt(2 * math.pi * 800), rel=1e-3)


def test_gf(invoke):
    data = payload(invoke('gf', '--dist', 'matching', '--n', 4, '--gf', 'fmgf', '--order', 4))
    assert data == {'kind': 'fmgf', 'order': 4, 'coeffs': ['1', '1', '1/2', '1/6', '1/24']}
    data = payload(invoke('gf', '--dist', 'binomial', '--n', 2, '--p', '1/2', '--gf', 'mgf', '--order', 2))
    assert data['coeffs'] == ['1', '1', '3/4']
    data = payload(invoke('gf', '--dist', 'binomial', '--n', 2, '--p', '1/2', '--gf', 'pgf', '--order', 0))
    assert data['coeffs'] == ['1/4']
    data = payload(invoke('gf', '--dist', 'binomial', '--n', 2, '--p', '1/2', '--gf', 'pgf', '--order', 4))
    assert data['coeffs'] == ['1/4', '1/2', '1/4', '0', '0']
    assert invoke('gf', '--dist', 'geometric', '--p', '1/2', '--gf', 'pgf').exit_code == 3


def test_verify_empty_urns(invoke):
    """
    Ensures empty urns agree with every source, the hypergeometric twin included.
    """
    result = invoke('verify', '--dist', 'empty-urns', '--n', 4, '--balls', 3, '--kmax', 4)
    assert result.exit_code == 0
    data = payload(result)
    assert data['ok'] is True
    assert all('hypergeometric' in row and 'oracle' in row for row in data['rows'])
    assert data['notes'] == []


@pytest.mark.parametrize(
    "args",
    [
        ('--dist', 'cmp-binomial', '--n', 6, '--p', '0.4', '--nu', 2),
        ('--dist', 'soliton', '--r', 5),
        ('--dist', 'poisson', '--lambda', 2, '--kmax', 3),
        ('--dist', 'benford', '--base', 10),
        ('--dist', 'geometric', '--p', '1/3'),
        ('--dist', 'poisson-binomial', '--probs', '1/2,1/3,1/5'),
        ('--dist', 'hypergeometric', '--population', 8, '--g', 3, '--n', 4),
    ],
)
def test_verify_passes(invoke, args):
    result = invoke('verify', *args)
    assert result.exit_code == 0, result.output
    assert payload(result)['ok'] is True


def test_verify_printed_soliton_mismatches(invoke):
    """
    Ensures the printed soliton formula is flagged while the corrected one passes.
    """
    result = invoke('verify', '--dist', 'soliton', '--r', 5, '--kmax', 4, '--as-printed')
    assert result.exit_code == 1
    data = payload(result)
    assert data['ok'] is False
    row = next(r for r in data['rows'] if r['kind'] == 'factorial' and r['k'] == 2)
    assert row['closed_form'] == '4'
    assert row['closed_form_printed'] == '14'
    assert row['ok'] is False
    assert any('closed_form_printed' in note for note in data['notes'])


def test_verify_with_monte_carlo(invoke):
    result = invoke('verify', '--dist', 'matching', '--n', 5, '--samples', 20000, '--seed', 1)
    assert result.exit_code == 0, result.output
    data = payload(result)
    assert all('monte_carlo' in row for row in data['rows'])
    assert any('numpy.PCG64' in note for note in data['notes'])


def test_verify_table_format(invoke):
    result = invoke('verify', '--dist', 'matching', '--n', 3, '--format', 'table')
    assert result.exit_code == 0
    assert result.output.startswith('verify: ok')


def test_pmf_file(invoke, tmp_path):
    """
    Ensures a pmf file is summed through its tails.
    """
    path = tmp_path / 'pmf.json'
    path.write_text(json.dumps({'0': '1/4', '1': '1/2', '2': '1/4'}))
    data = payload(invoke('moments', '--pmf-file', path, '--kmax', 2))
    assert data['values'] == {'0': '1', '1': '1', '2': '3/2'}
    assert data['provenance'] == 'tail'

    pairs = tmp_path / 'pairs.json'
    pairs.write_text(json.dumps([[0, '1/2'], [1, '1/2']]))
    assert payload(invoke('moments', '--pmf-file', pairs, '--kmax', 1))['values']['1'] == '1/2'

    broken = tmp_path / 'broken.json'
    broken.write_text(json.dumps({'0': '1/2', '1': '1/3'}))
    assert invoke('moments', '--pmf-file', broken).exit_code == 2


@pytest.mark.parametrize(
    "content",
    [{'0': '1/2', '1': '1/3'}, {'0': '3/2', '1': '-1/2'}, 'abc', [[0, '1/2', 'x']]],
    ids=['unnormalized', 'negative', 'string', 'triple'],
)
def test_pmf_file_is_validated(invoke, tmp_path, content):
    """
    Ensures a bad pmf file is a usage error on every command, the direct pmf route included.
    """
    path = tmp_path / 'pmf.json'
    path.write_text(json.dumps(content))
    for command in ('pmf', 'moments', 'verify'):
        result = invoke(command, '--pmf-file', path)
        assert result.exit_code == 2
        assert 'error:' in result.output
