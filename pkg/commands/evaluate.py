"""
Point evaluation: `eval FUNCTION ARGS...`
"""

import json
from dataclasses import dataclass

import click
from flask import Blueprint, current_app

from commands import complex_record, format_value, handle_errors, parse_complex
from models.hypergeometric import DEFAULT_SERIES, HGParams, SeriesConfig, hg_principal
from models.modular import TH00, TH01, TH10, TH11, e4, j_invariant, modular_lambda, nu, theta
from models.schwarz import schwarz_map

evaluate_bp = Blueprint('evaluate', __name__, cli_group=None)


@dataclass(frozen=True)
class EvalOptions:
    series: SeriesConfig = DEFAULT_SERIES
    e4_method: str = 'theta'
    lattice_radius: int = 200


def _one_point(fn):
    def call(args, opts):
        if len(args) != 1:
            raise click.UsageError("expected exactly one point")
        return fn(parse_complex(args[0]), opts)
    return call


def _hypergeometric(args, opts):
    if len(args) != 4:
        raise click.UsageError("F takes a b c z")
    try:
        p = HGParams.of(*args[:3])
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"bad parameter triple {args[:3]}: {exc}")
    return hg_principal(p, parse_complex(args[3]), opts.series)


FUNCTIONS = {
    'F': _hypergeometric,
    'theta00': _one_point(lambda tau, _: theta(TH00, tau)),
    'theta01': _one_point(lambda tau, _: theta(TH01, tau)),
    'theta10': _one_point(lambda tau, _: theta(TH10, tau)),
    'theta11': _one_point(lambda tau, _: theta(TH11, tau)),
    'lambda': _one_point(lambda tau, _: modular_lambda(tau)),
    'nu': _one_point(lambda tau, _: nu(tau)),
    'j': _one_point(lambda tau, _: j_invariant(tau)),
    'E4': _one_point(lambda tau, opts: e4(tau, method=opts.e4_method, radius=opts.lattice_radius)),
    'phi0': _one_point(lambda z, _: schwarz_map('phi0', z)),
    'phi1': _one_point(lambda z, _: schwarz_map('phi1', z)),
    'phi2': _one_point(lambda z, _: schwarz_map('phi2', z)),
}


def evaluate(name, args, opts=EvalOptions()):
    if name not in FUNCTIONS:
        raise click.BadParameter(f"unknown function {name!r}; choose from {', '.join(FUNCTIONS)}")
    return FUNCTIONS[name](list(args), opts)


def options_from_config(cfg, e4_method='theta'):
    return EvalOptions(series=SeriesConfig(cfg['SERIES_REL_TOL'], cfg['SERIES_MAX_TERMS']),
                       e4_method=e4_method, lattice_radius=cfg['LATTICE_RADIUS'])


@evaluate_bp.cli.command('eval', context_settings={'ignore_unknown_options': True})
@click.argument('function')
@click.argument('args', nargs=-1, required=True)
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text')
@click.option('--method', type=click.Choice(['theta', 'fourier', 'lattice']), default='theta',
              help='E4 evaluation route')
@handle_errors
def eval_command(function, args, fmt, method):
    """
    Evaluate FUNCTION at a point.

    FUNCTION is one of F (args: a b c z), theta00, theta01, theta10,
    theta11, lambda, nu, j, E4 (arg: tau) or phi0, phi1, phi2 (arg: z).
    Points are complex literals such as 0.1+1.4i, i, 1/2 or -0.5-2i.
    """
    value = evaluate(function, args, options_from_config(current_app.config, method))
    if fmt == 'json':
        click.echo(json.dumps({'function': function, 'input': list(args), **complex_record(value)}))
    else:
        click.echo(format_value(value))
