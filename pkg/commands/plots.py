"""
SVG plots of fundamental regions, Schwarz triangles and tessellations.
Hyperbolic geodesics are vertical rays or half circles centred on the
real axis.
"""

import math
from collections import deque

import click
from flask import Blueprint, current_app
from matplotlib import patches
from matplotlib.figure import Figure

from commands import handle_errors
from models.identities import sample_grid
from models.modular import J_INV
from models.monodromy import COSET_GENERATORS, GroupId
from models.numcore import I2, OMEGA, int_inverse, moebius
from models.schwarz import SchwarzId, schwarz_map, schwarz_triangle

plots_bp = Blueprint('plots', __name__, cli_group=None)

I_INF = complex(0.0, math.inf)
TOP = 3.0

# closed polygons, vertices in order
D_VERTICES = (I_INF, OMEGA, -OMEGA.conjugate())
DTILDE_VERTICES = (I_INF, complex(-1.5, math.sqrt(3) / 2), OMEGA, -OMEGA.conjugate())
D2_VERTICES = (I_INF, complex(-1, 0), 0j, complex(1, 0))


def _is_infinite(p):
    return math.isinf(p.imag) or math.isinf(p.real)


def geodesic(ax, p, q, top=TOP, **style):
    """Draw the geodesic from p to q; either end may be i infinity."""
    if _is_infinite(p) and _is_infinite(q):
        return
    if _is_infinite(p) or _is_infinite(q):
        finite = q if _is_infinite(p) else p
        ax.plot([finite.real, finite.real], [finite.imag, top], **style)
        return
    if abs(p.real - q.real) < 1e-12:
        ax.plot([p.real, q.real], [p.imag, q.imag], **style)
        return
    centre = (abs(p) ** 2 - abs(q) ** 2) / (2 * (p.real - q.real))
    radius = abs(p - centre)
    a1 = math.degrees(math.atan2(abs(p.imag), p.real - centre))
    a2 = math.degrees(math.atan2(abs(q.imag), q.real - centre))
    arc = patches.Arc((centre, 0.0), 2 * radius, 2 * radius,
                      theta1=min(a1, a2), theta2=max(a1, a2), **style)
    ax.add_patch(arc)


def polygon(ax, vertices, top=TOP, **style):
    for k, p in enumerate(vertices):
        geodesic(ax, p, vertices[(k + 1) % len(vertices)], top=top, **style)


def _label(ax, p, text, top=TOP):
    if _is_infinite(p):
        ax.annotate(text, xy=(0.0, top), xytext=(0.0, top - 0.4), ha='center',
                    arrowprops={'arrowstyle': '->'})
    else:
        ax.plot([p.real], [p.imag], 'k.')
        ax.annotate(text, xy=(p.real, p.imag), xytext=(4, -12), textcoords='offset points')


def _axes(xlim, top=TOP):
    fig = Figure(figsize=(8, 5))
    ax = fig.subplots()
    ax.set_xlim(*xlim)
    ax.set_ylim(0, top)
    ax.set_aspect('equal')
    ax.axhline(0.0, color='grey', linewidth=0.5)
    return fig, ax


def fundamental_domains_figure():
    fig, ax = _axes((-2.0, 1.5))
    polygon(ax, D2_VERTICES, color='tab:green', linewidth=1.0, label='D(2)')
    polygon(ax, DTILDE_VERTICES, color='tab:blue', linewidth=1.5, label='D~')
    polygon(ax, D_VERTICES, color='tab:red', linewidth=2.0, label='D')
    for p, text in ((OMEGA, 'ω'), (-OMEGA.conjugate(), '-ω²'), (1j, 'i'), (I_INF, 'i∞')):
        _label(ax, p, text)
    ax.set_title('Fundamental regions')
    return fig


_VERTEX_NAMES = {SchwarzId.phi0: ('i∞', '0', '1'),
                 SchwarzId.phi1: ('i∞', 'ω', '-ω²'),
                 SchwarzId.phi2: ('i∞', 'i', '-ω²')}


def schwarz_triangle_figure(sid, samples=40):
    sid = SchwarzId(sid)
    tri = schwarz_triangle(sid)
    fig, ax = _axes((-1.0, 1.5))
    polygon(ax, tri.vertices, color='tab:red', linewidth=2.0)
    for p, text in zip(tri.vertices, _VERTEX_NAMES[sid]):
        _label(ax, p, text)
    # images of upper half-plane sample points
    points = [z for z in sample_grid('lens', samples) if z.imag > 0]
    images = [schwarz_map(sid, z) for z in points]
    ax.scatter([t.real for t in images], [t.imag for t in images], s=6, color='tab:blue')
    angles = ', '.join(str(a) for a in tri.angles)
    ax.set_title(f'{sid.value}: angles ({angles}) π')
    return fig


_CELL_VERTICES = {GroupId.SL2Z: D_VERTICES, GroupId.Gamma2CubeRoot: DTILDE_VERTICES}
_CELL_SAMPLE = {GroupId.SL2Z: complex(0.1, 1.5), GroupId.Gamma2CubeRoot: complex(-0.4, 1.5)}


def _act(g, p):
    if _is_infinite(p):
        if g[1, 0] == 0:
            return I_INF
        return complex(g[0, 0] / g[1, 0], 0.0)
    return moebius(g, p)


def tessellation_cells(group, depth):
    """
    Group elements g, one per distinct cell g.D (SL2Z) or g.D~
    (Gamma2CubeRoot), reached by words of length <= depth.
    """
    group = GroupId(group)
    if group is GroupId.SL2Z:
        gens = (COSET_GENERATORS[group][0], int_inverse(COSET_GENERATORS[group][0]), J_INV)
    elif group is GroupId.Gamma2CubeRoot:
        gens = COSET_GENERATORS[group] + tuple(int_inverse(g) for g in COSET_GENERATORS[group])
    else:
        raise click.BadParameter(f"no tessellation for {group.value}")
    sample = _CELL_SAMPLE[group]
    start = I2.copy()

    def key(g):
        t = moebius(g, sample)
        return (round(t.real, 9), round(t.imag, 9))

    seen = {key(start): start}
    frontier = deque([(start, 0)])
    while frontier:
        g, d = frontier.popleft()
        if d == depth:
            continue
        for h in gens:
            gh = g @ h
            k = key(gh)
            if k not in seen:
                seen[k] = gh
                frontier.append((gh, d + 1))
    return list(seen.values())


def tessellation_figure(group, depth):
    group = GroupId(group)
    fig, ax = _axes((-2.0, 2.0), top=2.0)
    for g in tessellation_cells(group, depth):
        polygon(ax, [_act(g, p) for p in _CELL_VERTICES[group]], top=2.0,
                color='tab:blue', linewidth=0.6)
    polygon(ax, _CELL_VERTICES[group], top=2.0, color='tab:red', linewidth=1.5)
    ax.set_title(f'{group.value} tessellation, depth {depth}')
    return fig


def save_svg(fig, path):
    fig.savefig(path, format='svg')
    current_app.logger.info("💾 plot written to %s", path)


@plots_bp.cli.command('plot')
@click.argument('kind', type=click.Choice(['fundamental_domains', 'schwarz_triangle', 'tessellation']))
@click.option('--map', 'sid', type=click.Choice([s.value for s in SchwarzId]), default='phi0')
@click.option('--group', type=click.Choice([GroupId.SL2Z.value, GroupId.Gamma2CubeRoot.value]),
              default=GroupId.SL2Z.value)
@click.option('--depth', type=click.IntRange(min=0, max=8), default=3)
@click.option('--output', type=click.Path(dir_okay=False), required=True, help='SVG file')
@handle_errors
def plot_command(kind, sid, group, depth, output):
    """Draw KIND as an SVG file."""
    if kind == 'fundamental_domains':
        fig = fundamental_domains_figure()
    elif kind == 'schwarz_triangle':
        fig = schwarz_triangle_figure(sid)
    else:
        fig = tessellation_figure(group, depth)
    save_svg(fig, output)
    click.echo(f"💾 {output}")
