"""
Shared helpers for the command blueprints: literal parsing, value
formatting and the exit-code contract.

Exit codes: 0 success, 1 identity failure, 2 usage/parse error,
3 domain error, 4 I/O error.
"""

import functools
import re
from fractions import Fraction

import click
from flask import current_app

from models.errors import DomainError

EXIT_FAILURE = 1
EXIT_DOMAIN = 3
EXIT_IO = 4

_NUM = r'(?:\d+/\d+|(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)'
_REAL = re.compile(rf'^([-+]?{_NUM})$')
_IMAG = re.compile(rf'^([-+]?)({_NUM})?[ij]$')
_FULL = re.compile(rf'^([-+]?{_NUM})([-+])({_NUM})?[ij]$')


def _number(text):
    return Fraction(text) if '/' in text else float(text)


def parse_complex(text):
    """
    Parse a complex literal: `a`, `ai`, `a+bi`, `a-bi` or `i`, where a and
    b are decimals or rationals such as 1/2.

    Raises:
        click.BadParameter: on anything else
    """
    s = str(text).strip().replace(' ', '')
    m = _REAL.match(s)
    if m:
        return complex(_number(m.group(1)))
    m = _IMAG.match(s)
    if m:
        b = _number(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -float(b) if m.group(1) == '-' else float(b))
    m = _FULL.match(s)
    if m:
        b = _number(m.group(3)) if m.group(3) else 1.0
        return complex(float(_number(m.group(1))), -float(b) if m.group(2) == '-' else float(b))
    raise click.BadParameter(f"{text!r} is not a complex literal (try 0.1+1.4i or 1/2)")


class ComplexParam(click.ParamType):
    name = 'complex'

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except click.BadParameter as exc:
            self.fail(str(exc.message), param, ctx)


COMPLEX = ComplexParam()


def format_value(value, digits=15):
    """15 significant digits; a negligible imaginary part is dropped."""
    value = complex(value)
    re_part, im_part = value.real, value.imag
    if abs(im_part) <= 1e-14 * max(1.0, abs(re_part)):
        return f"{re_part:.{digits}g}"
    if abs(re_part) <= 1e-14 * abs(im_part):
        return f"{im_part:.{digits}g}i"
    sign = '-' if im_part < 0 else '+'
    return f"{re_part:.{digits}g}{sign}{abs(im_part):.{digits}g}i"


def complex_record(value):
    value = complex(value)
    return {'re': value.real, 'im': value.imag}


def handle_errors(f):
    """Map DomainError to exit 3 and OSError to exit 4."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except DomainError as exc:
            current_app.logger.debug("domain error in %s: %r", ctx.command_path, exc)
            click.echo(f"❌ {type(exc).__name__}: {exc}", err=True)
            ctx.exit(EXIT_DOMAIN)
        except OSError as exc:
            click.echo(f"❌ I/O error: {exc}", err=True)
            ctx.exit(EXIT_IO)

    return wrapper
