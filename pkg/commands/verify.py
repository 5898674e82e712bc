"""
Identity verification: `verify [TAGS...]`
"""

import json
import os
from datetime import datetime

import click
import pandas as pd
from flask import Blueprint, current_app

from commands import COMPLEX, EXIT_FAILURE, format_value, handle_errors
from models.identities import (IDENTITY_TAGS, REGISTRY, Z_DOMAINS, GridSpec, save_reports,
                               verify_suite)

verify_bp = Blueprint('verify', __name__, cli_group=None)


def _select_tags(tags):
    if not tags or 'all' in tags:
        return list(IDENTITY_TAGS)
    unknown = [t for t in tags if t not in REGISTRY]
    if unknown:
        raise click.BadParameter(f"unknown identities {unknown}; choose from {', '.join(IDENTITY_TAGS)}")
    return list(tags)


def _explicit_points(tags, taus, zs):
    points = {}
    for tag in tags:
        domain = REGISTRY[tag].domain
        if domain in Z_DOMAINS and zs:
            points[tag] = list(zs)
        elif domain not in Z_DOMAINS and domain != 'height' and taus:
            points[tag] = list(taus)
    return points


def _report_line(report):
    line = f"{report.status()} {report.id} at {format_value(report.point, 10)}"
    if report.skipped:
        return f"{line} ({report.detail.get('reason', '')})"
    line += f" residual={report.residual:.3e} rel={report.rel_residual:.3e}"
    if 'rounded' in report.detail:
        line += f" coefficients={report.detail['rounded']} expected={report.detail['expected']}"
    return line


def _frame(reports):
    rows = []
    for r in reports:
        rows.append({
            'id': r.id,
            'point_re': r.point.real,
            'point_im': r.point.imag,
            'residual': r.residual,
            'rel_residual': r.rel_residual,
            'tol': r.tol,
            'status': r.status(),
        })
    return pd.DataFrame(rows, columns=['id', 'point_re', 'point_im', 'residual', 'rel_residual', 'tol', 'status'])


@verify_bp.cli.command('verify')
@click.argument('tags', nargs=-1)
@click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=None,
              help='absolute-or-relative tolerance (default DEFAULT_TOL)')
@click.option('--tau', 'taus', type=COMPLEX, multiple=True, help='explicit tau point(s)')
@click.option('--z', 'zs', type=COMPLEX, multiple=True, help='explicit z point(s)')
@click.option('--points', type=click.IntRange(min=1), default=None, help='grid points per identity')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json', 'csv']), default='text')
@click.option('--save', is_flag=True, help='write the reports to DATA_DIR as JSON')
@handle_errors
def verify_command(tags, tol, taus, zs, points, fmt, save):
    """
    Verify identities (default: all) on seeded grids or at given points.

    Exit status is 0 when every non-skipped check passes, 1 otherwise.
    """
    cfg = current_app.config
    tags = _select_tags(tags)
    tol = tol if tol is not None else cfg['DEFAULT_TOL']
    n = points or cfg['GRID_POINTS']
    grid = GridSpec(tau_points=n, z_points=n, seed=cfg['GRID_SEED'],
                    height=cfg['Q_EXPAND_HEIGHT'])

    result = verify_suite(grid=grid, tol=tol, points=_explicit_points(tags, taus, zs),
                          tags=tags, threads=cfg['THREADS'])

    if fmt == 'json':
        click.echo(json.dumps([r.to_dict() for r in result.reports], indent=2))
    elif fmt == 'csv':
        click.echo(_frame(result.reports).to_csv(index=False), nl=False)
    else:
        for report in result.reports:
            click.echo(_report_line(report))
        summary = result.summary()
        click.echo(f"📊 {summary['passed']} passed, {summary['failed']} failed, "
                   f"{summary['skipped']} skipped (tol={tol:g})")

    if save:
        stamp = datetime.now().strftime('%Y%m%d%H%M%S')
        path = save_reports(result.reports, os.path.join(cfg['DATA_DIR'], f'verify-{stamp}.json'))
        click.echo(f"💾 saved {path}", err=True)

    if not result.ok:
        click.get_current_context().exit(EXIT_FAILURE)
