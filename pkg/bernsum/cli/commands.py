"""
Command handlers: moments, pmf, gf and verify.
Each command builds a distribution from the flags, computes through the
requested route and renders to stdout. Library errors become exit codes.
"""
import functools
import json
from math import factorial
from pathlib import Path

import click

from bernsum.core.exceptions import (
    EXIT_MISMATCH,
    BernsumError,
    InvalidParameterError,
    NotBernoulliSumError,
    UnsupportedKindError,
    exit_code_for,
)
from bernsum.core.logging import cli_logger as logger
from bernsum.cli.rendering import FORMATS, render_pmf, render_report, render_series, render_verify
from bernsum.models.moment_models import MomentReport, SeriesPoly
from bernsum.models.scalar import Scalar, is_close
from bernsum.services.bernoulli_core import MomentEngine
from bernsum.services.distributions import DISTRIBUTIONS, Tabulated, parse_spec
from bernsum.services.genfun import (
    fmgf_series,
    mgf_series,
    pgf_from_fmgf,
    pmf_from_factorial_moments,
)
from bernsum.services.oracle import OracleService
from bernsum.services.tail_moments import factorial_moment_from_tail, moment_chakra, moment_from_tail

MOMENT_KINDS = ('raw', 'central', 'factorial', 'choose', 'expected_factorial')
METHODS = ('auto', 'closed_form', 'engine', 'tail')
VERIFY_KINDS = ('raw', 'central', 'factorial')
VERIFY_COLUMNS = (
    'closed_form', 'closed_form_printed', 'engine', 'oracle', 'tail', 'chakra', 'hypergeometric', 'monte_carlo',
)


def handle_errors(command):
    """Translate library errors into the exit-code contract."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except BernsumError as e:
            logger.debug(f"{type(e).__name__} [{e.error_code}]: {e}")
            click.echo(f"error: {e}", err=True)
            raise click.exceptions.Exit(exit_code_for(e))
    return wrapper


def dist_options(command):
    """Distribution selection flags shared by every command."""
    options = [
        click.option('--dist', type=click.Choice(sorted(DISTRIBUTIONS)), help='Distribution name.'),
        click.option('--spec', 'spec_json', help='Distribution as JSON, e.g. {"dist":"binomial","n":10,"p":"1/2"}.'),
        click.option('--pmf-file', type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     help='JSON pmf: {"x": "prob", ...} or [[x, "prob"], ...].'),
        click.option('--n', type=int, help='Trials, urns, sample size or permutation length.'),
        click.option('--p', help='Success probability ("a/b" stays exact).'),
        click.option('--probs', help='Comma-separated probabilities for poisson-binomial.'),
        click.option('--population', type=int, help='Hypergeometric population size N.'),
        click.option('--g', type=int, help='Hypergeometric trait count.'),
        click.option('--nu', help='CMP-binomial dispersion.'),
        click.option('--balls', type=int, help='Balls placed in the urns.'),
        click.option('--lambda', 'lam', help='Poisson rate.'),
        click.option('--r', type=int, help='Soliton size.'),
        click.option('--base', type=int, help='Benford base.'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def output_options(command):
    options = [
        click.option('--format', 'fmt', type=click.Choice(FORMATS), default='json', show_default=True),
        click.option('--float', 'as_float', is_flag=True, help='Render values as decimals.'),
        click.option('--digits', type=click.IntRange(1, 17), default=None,
                     help='Significant digits for --float (default 12).'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def build_spec(dist, spec_json, pmf_file, **params):
    """Turn the distribution flags into a DistSpec."""
    if pmf_file is not None:
        try:
            data = json.loads(pmf_file.read_text())
        except json.JSONDecodeError as e:
            raise InvalidParameterError(f"{pmf_file} is not valid JSON: {e}") from e
        return Tabulated(data)
    if spec_json is not None:
        try:
            data = json.loads(spec_json)
        except json.JSONDecodeError as e:
            raise InvalidParameterError(f"--spec is not valid JSON: {e}") from e
        return parse_spec(data)
    if dist is None:
        raise InvalidParameterError("give --dist, --spec or --pmf-file")
    data = {'dist': dist}
    keys = {'lam': 'lambda'}
    data.update({keys.get(name, name): value for name, value in params.items() if value is not None})
    return parse_spec(data)


def render_digits(config, as_float, digits):
    if not as_float:
        return None
    return digits if digits is not None else config.FLOAT_DIGITS


def resolve_epsilon(config, epsilon):
    epsilon = config.TRUNCATION_EPSILON if epsilon is None else epsilon
    if epsilon <= 0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    return epsilon


# Moment routes

def tail_report(spec, kind, kmax, epsilon):
    """MomentReport from the tail-sum formulas; the residual bound is the largest over k."""
    dist = spec.count_dist()
    estimates = {}
    if kind in ('raw', 'central'):
        estimates = {k: moment_from_tail(dist, k, epsilon) for k in range(max(kmax, 1) + 1)}
    elif kind in ('factorial', 'choose'):
        estimates = {k: factorial_moment_from_tail(dist, k, epsilon) for k in range(kmax + 1)}
    else:
        raise UnsupportedKindError(f"no tail formula for {kind} moments")

    mu = None
    if kind == 'central':
        raws = [estimates[k].value for k in range(max(kmax, 1) + 1)]
        mu = raws[1]
        values = {k: MomentEngine.central_from_raw(raws, mu, k) for k in range(kmax + 1)}
    elif kind == 'choose':
        values = {k: estimates[k].value / factorial(k) for k in range(kmax + 1)}
    else:
        values = {k: estimates[k].value for k in range(kmax + 1)}

    residuals = [e.residual_bound for e in estimates.values() if e.residual_bound is not None]
    bound = max(residuals, key=float) if residuals else None
    return MomentReport(kind=kind, values=values, provenance='tail', mu=mu, truncation_bound=bound)


def moment_report(spec, kind, kmax, method, engine, epsilon, as_printed=False):
    """Compute a MomentReport through the requested route; `auto` tries closed form, engine, then tail."""
    if method == 'closed_form':
        if kind == 'expected_factorial':
            raise UnsupportedKindError("expected factorials have no closed form; use --method engine")
        return spec.closed_form_report(kind, kmax, as_printed)
    if method == 'engine':
        return engine.report(spec.as_joint_model(), kind, kmax)
    if method == 'tail':
        return tail_report(spec, kind, kmax, epsilon)

    if kind == 'expected_factorial':
        return engine.report(spec.as_joint_model(), kind, kmax)
    try:
        return spec.closed_form_report(kind, kmax, as_printed)
    except UnsupportedKindError:
        logger.debug(f"No closed form for {spec.name}; trying the engine")
    try:
        return engine.report(spec.as_joint_model(), kind, kmax)
    except NotBernoulliSumError:
        logger.debug(f"{spec.name} is not a Bernoulli sum; using tail sums")
    return tail_report(spec, kind, kmax, epsilon)


def factorial_moments(spec, kmax, engine, epsilon):
    report = moment_report(spec, 'factorial', kmax, 'auto', engine, epsilon)
    return [report.values[k] for k in range(kmax + 1)]


def pgf_coefficients(spec, order, engine, epsilon):
    """
    PGF coefficients through the shifted fmgf. Finite supports use the full
    degree; infinite ones are refused by the shift.
    """
    degree = spec.support_max if spec.is_finite else order
    h = fmgf_series(factorial_moments(spec, degree, engine, epsilon), degree)
    return pgf_from_fmgf(h, exact_degree=spec.is_finite).coeffs


# Commands

@click.command()
@dist_options
@click.option('--kmax', type=click.IntRange(min=0), default=4, show_default=True)
@click.option('--kind', type=click.Choice(MOMENT_KINDS), default='raw', show_default=True)
@click.option('--method', type=click.Choice(METHODS), default='auto', show_default=True)
@click.option('--as-printed', is_flag=True, help='Use misprinted published formulas where documented.')
@click.option('--epsilon', type=float, help='Relative truncation tolerance for infinite supports.')
@click.option('--budget', type=int, help='Enumeration budget for general joint models.')
@output_options
@click.pass_obj
@handle_errors
def moments(config, kmax, kind, method, as_printed, epsilon, budget, fmt, as_float, digits, **dist):
    """Moments of one kind for k = 0..kmax."""
    spec = build_spec(**dist)
    engine = MomentEngine(budget=budget, config=config)
    report = moment_report(spec, kind, kmax, method, engine, resolve_epsilon(config, epsilon), as_printed)
    logger.debug(f"moments {spec} kind={kind} kmax={kmax} via {report.provenance}")
    click.echo(render_report(report, fmt, render_digits(config, as_float, digits)))


@click.command()
@dist_options
@click.option('--via', type=click.Choice(('direct', 'frechet', 'pgf')), default='direct', show_default=True)
@click.option('--xmax', type=click.IntRange(min=0), help='Last point for infinite supports.')
@click.option('--epsilon', type=float)
@click.option('--budget', type=int)
@output_options
@click.pass_obj
@handle_errors
def pmf(config, via, xmax, epsilon, budget, fmt, as_float, digits, **dist):
    """Point probabilities, directly or rebuilt from factorial moments."""
    spec = build_spec(**dist)
    engine = MomentEngine(budget=budget, config=config)
    epsilon = resolve_epsilon(config, epsilon)
    if not spec.is_finite and xmax is None:
        raise InvalidParameterError(f"{spec.name} has infinite support; give --xmax")
    last = spec.support_max if spec.is_finite else xmax
    if xmax is not None:
        last = min(last, xmax)
    points = range(spec.support_min, last + 1)

    if via == 'direct':
        table = spec.pmf_table(last)
    elif via == 'frechet':
        jmax = spec.support_max if spec.is_finite else last + config.FRECHET_EXTRA_TERMS
        factorials = factorial_moments(spec, jmax, engine, epsilon)
        table = {x: pmf_from_factorial_moments(factorials, x, jmax, spec.support_max) for x in points}
    else:
        coeffs = pgf_coefficients(spec, last, engine, epsilon)
        table = {x: coeffs[x] for x in points}
    click.echo(render_pmf(spec.to_dict(), via, table, fmt, render_digits(config, as_float, digits)))


@click.command()
@dist_options
@click.option('--gf', 'kind', type=click.Choice(('mgf', 'fmgf', 'pgf')), default='pgf', show_default=True)
@click.option('--order', type=click.IntRange(min=0), default=4, show_default=True)
@click.option('--epsilon', type=float)
@click.option('--budget', type=int)
@output_options
@click.pass_obj
@handle_errors
def gf(config, kind, order, epsilon, budget, fmt, as_float, digits, **dist):
    """Truncated generating-function coefficients."""
    spec = build_spec(**dist)
    engine = MomentEngine(budget=budget, config=config)
    epsilon = resolve_epsilon(config, epsilon)
    if kind == 'mgf':
        report = moment_report(spec, 'raw', order, 'auto', engine, epsilon)
        series = mgf_series([report.values[k] for k in range(order + 1)], order)
    elif kind == 'fmgf':
        series = fmgf_series(factorial_moments(spec, order, engine, epsilon), order)
    else:
        coeffs = list(pgf_coefficients(spec, order, engine, epsilon))
        series = SeriesPoly('pgf', tuple((coeffs + [Scalar(0)] * order)[:order + 1]))
    click.echo(render_series(series, fmt, render_digits(config, as_float, digits)))


# Verification

def _agree(reference, value, config, scale):
    if reference.is_exact and value.is_exact:
        return reference == value
    return is_close(reference, value, rel_tol=config.APPROX_RTOL,
                    abs_tol=max(config.APPROX_ATOL, config.APPROX_RTOL * scale))


def _collect_columns(spec, kmax, as_printed, engine, oracle, epsilon):
    """{column: {kind: {k: Scalar}}} for every source that applies to spec."""
    columns = {}

    def by_kind(report_fn):
        return {kind: report_fn(kind).values for kind in VERIFY_KINDS}

    try:
        columns['closed_form'] = by_kind(lambda kind: spec.closed_form_report(kind, kmax))
    except UnsupportedKindError:
        pass
    if as_printed and spec.has_printed_variant:
        columns['closed_form_printed'] = by_kind(lambda kind: spec.closed_form_report(kind, kmax, as_printed=True))
    if spec.is_bernoulli_sum:
        model = spec.as_joint_model()
        columns['engine'] = by_kind(lambda kind: engine.report(model, kind, kmax))

    result = oracle.enumeration_for(spec, kmax)
    if result is None and spec.is_finite:
        result = oracle.pmf_moments(spec, kmax)
    if result is not None:
        columns['oracle'] = {kind: result.by_kind(kind) for kind in VERIFY_KINDS}

    columns['tail'] = by_kind(lambda kind: tail_report(spec, kind, kmax, epsilon))
    dist = spec.count_dist()
    columns['chakra'] = {'raw': {k: moment_chakra(dist, k, epsilon).value for k in range(kmax + 1)}}

    if spec.name == 'empty-urns' and spec.balls >= 1:
        twin = spec.as_hypergeometric()
        columns['hypergeometric'] = by_kind(lambda kind: twin.closed_form_report(kind, kmax))
    return columns


@click.command()
@dist_options
@click.option('--kmax', type=click.IntRange(min=0), default=4, show_default=True)
@click.option('--as-printed', is_flag=True, help='Add the misprinted published formulas as a column.')
@click.option('--samples', type=int, help='Add a seeded Monte Carlo column with this many samples.')
@click.option('--seed', type=int, help='Monte Carlo seed.')
@click.option('--epsilon', type=float)
@click.option('--budget', type=int)
@output_options
@click.pass_obj
@handle_errors
def verify(config, kmax, as_printed, samples, seed, epsilon, budget, fmt, as_float, digits, **dist):
    """Compare closed forms, the engine, tail sums and oracles; exit 1 on any mismatch."""
    spec = build_spec(**dist)
    engine = MomentEngine(budget=budget, config=config)
    oracle = OracleService(config)
    epsilon = resolve_epsilon(config, epsilon)
    render_at = render_digits(config, as_float, digits)

    columns = _collect_columns(spec, kmax, as_printed, engine, oracle, epsilon)
    mc = None
    if samples is not None:
        mc = oracle.monte_carlo(spec, kmax, samples, seed if seed is not None else config.SEED)

    ok, rows, notes = True, [], []
    for kind in VERIFY_KINDS:
        for k in range(kmax + 1):
            cells = {name: values[kind][k] for name, values in columns.items() if kind in values}
            reference_name = next(iter(cells))
            reference = cells[reference_name]
            raw_scale = max([1.0] + [abs(float(v['raw'][k])) for v in columns.values() if 'raw' in v])
            row_ok = True
            for name, value in cells.items():
                if not _agree(reference, value, config, raw_scale):
                    row_ok = False
                    notes.append(
                        f"{kind} k={k}: {name} gives {value.to_str(render_at)} "
                        f"but {reference_name} gives {reference.to_str(render_at)}"
                    )
            row = {'kind': kind, 'k': k}
            row.update({name: value.to_str(render_at) for name, value in cells.items()})
            if mc is not None:
                estimate = mc.by_kind(kind)[k]
                row['monte_carlo'] = estimate.to_str(render_at)
                if kind == 'raw':
                    band = config.MC_SIGMA * mc.stderr[k] + config.APPROX_ATOL
                    if abs(float(estimate) - float(reference)) > band:
                        row_ok = False
                        notes.append(
                            f"raw k={k}: monte carlo {float(estimate):.6g} is outside "
                            f"{config.MC_SIGMA:g} standard errors of {float(reference):.6g}"
                        )
            row['ok'] = row_ok
            ok = ok and row_ok
            rows.append(row)

    if 'closed_form_printed' in columns:
        notes.append(f"closed_form_printed uses the formula for {spec.name} as originally published")
    if mc is not None:
        notes.append(f"monte_carlo: {mc.sample_count} samples, {mc.rng}, seed {seed if seed is not None else config.SEED}")
    present = [c for c in VERIFY_COLUMNS if any(c in row for row in rows)]
    click.echo(render_verify(spec.to_dict(), ok, rows, present, notes, fmt))
    if not ok:
        logger.warning(f"verify {spec}: {sum(1 for r in rows if not r['ok'])} mismatched rows")
        raise click.exceptions.Exit(EXIT_MISMATCH)
