"""Curve fixture files

Key-value text, one `key = value` per line, `#` starts a comment:

    q = 2
    a1 = T + 1
    a2 = T
    a3 = T
    a4 = 0
    a6 = 0
    p = T
    n = T^2 + T + 1

Coefficients are polynomial or rational strings, p is a monic irreducible polynomial and n a polynomial prime to p.
An optional `name` key names the curve; otherwise the file stem does.
"""

import logging
import os
from typing import *

from algebra import Place, PolynomialSyntaxError, parse_poly, parse_ratfunc, format_ratfunc, format_poly
from elliptic.curve import EllipticCurve, COEFFICIENT_NAMES, SingularCurveError
from utils.config import fixture_dir

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('q',) + COEFFICIENT_NAMES + ('p', 'n')
FIXTURE_SUFFIX = '.curve'


class FixtureError(ValueError):
    pass


def parse_fixture(text: str, name: str = '') -> EllipticCurve:
    entries: Dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise FixtureError(f"Line {number}: expected 'key = value', got '{line}'")
        key, value = (s.strip() for s in line.split('=', 1))
        if key in entries:
            raise FixtureError(f"Line {number}: duplicate key '{key}'")
        entries[key] = value
    missing = [key for key in REQUIRED_KEYS if key not in entries]
    if missing:
        raise FixtureError(f"Missing keys: {', '.join(missing)}")
    unknown = set(entries) - set(REQUIRED_KEYS) - {'name'}
    if unknown:
        raise FixtureError(f"Unknown keys: {', '.join(sorted(unknown))}")
    try:
        q = int(entries['q'])
        coefficients = [parse_ratfunc(entries[key], q) for key in COEFFICIENT_NAMES]
        p = Place.finite(parse_poly(entries['p'], q))
        n = parse_poly(entries['n'], q)
        return EllipticCurve(q, *coefficients, p=p, n=n, name=entries.get('name', name))
    except SingularCurveError as e:
        raise FixtureError(f"Singular fixture: {e}") from e
    except (PolynomialSyntaxError, ValueError) as e:
        raise FixtureError(str(e)) from e


def resolve_fixture(name: str) -> str:
    """
    A path as given if it exists, otherwise NAME or NAME.curve inside the fixture directory
    """
    if os.path.isfile(name):
        return name
    for candidate in (name, name + FIXTURE_SUFFIX):
        path = os.path.join(fixture_dir(), candidate)
        if os.path.isfile(path):
            return path
    raise FixtureError(f"No fixture '{name}' here or in {fixture_dir()}")


def load_curve(name: str) -> EllipticCurve:
    path = resolve_fixture(name)
    stem = os.path.splitext(os.path.basename(path))[0]
    with open(path) as f:
        curve = parse_fixture(f.read(), stem)
    logger.info(f"Loaded {curve} from {path}")
    return curve


def format_fixture(E: EllipticCurve) -> str:
    if E.p is None or E.n is None:
        raise FixtureError(f"{E} has no declared level to write")
    lines = [f'name = {E.name}'] if E.name else []
    lines.append(f'q = {E.q}')
    lines += [f'{key} = {format_ratfunc(a)}' for key, a in zip(COEFFICIENT_NAMES, E.coefficients)]
    lines += [f'p = {format_poly(E.p.pi)}', f'n = {format_poly(E.n)}']
    return '\n'.join(lines) + '\n'


def write_curve(E: EllipticCurve, path: str):
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w') as f:
        f.write(format_fixture(E))
