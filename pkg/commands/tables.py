"""
CSV tables: `table FUNCTION`, `table riemann`, `table circuits`.
"""

import math

import click
import pandas as pd
from flask import Blueprint, current_app

from commands import handle_errors
from commands.evaluate import FUNCTIONS, EvalOptions, evaluate, options_from_config
from models.errors import AtPole, CuspError
from models.hypergeometric import STANDARD_TRIPLES, HGParams
from models.identities import sample_grid
from models.monodromy import circuit_matrices, riemann_scheme

tables_bp = Blueprint('tables', __name__, cli_group=None)

Z_FUNCTIONS = ('F', 'phi0', 'phi1', 'phi2')


def _triples(params):
    if params:
        return [HGParams.of(*params)]
    return list(STANDARD_TRIPLES)


def riemann_frame(params=None):
    rows = []
    for p in _triples(params):
        scheme = riemann_scheme(p).to_dict()
        for point in ('z=0', 'z=1', 'z=inf'):
            rows.append({'params': str(p), 'point': point, 'e1': scheme[point][0], 'e2': scheme[point][1]})
        rows.append({'params': str(p), 'point': 'difference',
                     'e1': scheme['difference'][0], 'e2': scheme['difference'][1],
                     'e3': scheme['difference'][2]})
    return pd.DataFrame(rows, columns=['params', 'point', 'e1', 'e2', 'e3'])


def circuits_frame(params=None):
    rows = []
    for p in _triples(params):
        cs = circuit_matrices(p)
        for name in ('M0', 'M1', 'Minf'):
            m = getattr(cs, name)
            for (i, j) in ((0, 0), (0, 1), (1, 0), (1, 1)):
                value = complex(m[i, j])
                rows.append({'params': str(p), 'matrix': name, 'entry': f'{i + 1}{j + 1}',
                             're': value.real, 'im': value.imag, 'exact': repr(m[i, j])})
    return pd.DataFrame(rows, columns=['params', 'matrix', 'entry', 're', 'im', 'exact'])


def function_frame(name, n, seed, params=None, opts=EvalOptions()):
    """Values of an eval function on n seeded points (lens for z, D for tau)."""
    if name == 'F' and not params:
        raise click.UsageError("table F needs --params a b c")
    domain = 'lens' if name in Z_FUNCTIONS else 'D'
    rows = []
    for point in sample_grid(domain, n, seed=seed):
        args = [*params, _literal(point)] if name == 'F' else [_literal(point)]
        try:
            value = evaluate(name, args, opts)
        except (AtPole, CuspError):
            current_app.logger.warning("⚠️ %s has a pole at %s", name, point)
            value = complex(math.nan, math.nan)
        rows.append({'input_re': point.real, 'input_im': point.imag, 're': value.real, 'im': value.imag})
    return pd.DataFrame(rows, columns=['input_re', 'input_im', 're', 'im'])


def _literal(point):
    sign = '-' if point.imag < 0 else '+'
    return f"{point.real!r}{sign}{abs(point.imag)!r}i"


@tables_bp.cli.command('table')
@click.argument('function')
@click.option('--points', type=click.IntRange(min=1), default=None, help='number of sample points')
@click.option('--seed', type=int, default=None)
@click.option('--params', nargs=3, type=str, default=None, help='parameter triple a b c')
@click.option('--output', type=click.Path(dir_okay=False, writable=True), default=None,
              help='CSV file (default: stdout)')
@handle_errors
def table_command(function, points, seed, params, output):
    """
    Tabulate FUNCTION as CSV.

    FUNCTION is any eval function, `riemann` or `circuits`; the last two
    cover the three standard triples unless --params is given.
    """
    cfg = current_app.config
    if function == 'riemann':
        frame = riemann_frame(params)
    elif function == 'circuits':
        frame = circuits_frame(params)
    elif function in FUNCTIONS:
        frame = function_frame(function, points or cfg['GRID_POINTS'],
                               cfg['GRID_SEED'] if seed is None else seed, params,
                               options_from_config(cfg))
    else:
        raise click.BadParameter(f"unknown table {function!r}")

    if output:
        frame.to_csv(output, index=False)
        click.echo(f"💾 {len(frame)} rows written to {output}", err=True)
    else:
        click.echo(frame.to_csv(index=False), nl=False)
