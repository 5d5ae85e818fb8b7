"""
Text syntax for polynomials and rational functions, e.g. "T^3 + 2*T + 1" or "(T + 1)/(T^2 + T + 1)".
Coefficients are integers in [0, q).
"""

import re
from typing import *

from algebra.polynomial import Poly
from algebra.rational import RatFunc


class PolynomialSyntaxError(ValueError):
    pass


_TERM = re.compile(r'^(?:(\d+)\s*\*?\s*)?(T(?:\s*\^\s*(\d+))?)?$')
INFINITY_NAMES = ('inf', 'oo', 'infinity', '∞')


def parse_poly(text: str, q: int) -> Poly:
    """
    Parse a polynomial over F_q
    :param text: expression such as "T^3 + 2*T + 1"
    :param q: field size
    :return: polynomial
    """
    s = text.strip()
    if s.startswith('(') and s.endswith(')'):
        s = s[1:-1].strip()
    if not s:
        raise PolynomialSyntaxError("Empty polynomial")
    if s[0] not in '+-':
        s = '+' + s
    coeffs: Dict[int, int] = {}
    parts = re.split(r'([+-])', s)
    for sign, body in zip(parts[1::2], parts[2::2]):
        if not body.strip():
            raise PolynomialSyntaxError(f"Dangling '{sign}' in '{text}'")
        match = _TERM.match(body.strip())
        if match is None or (match.group(1) is None and match.group(2) is None):
            raise PolynomialSyntaxError(f"Cannot parse term '{body.strip()}' in '{text}'")
        c = int(match.group(1)) if match.group(1) is not None else 1
        if c >= q:
            raise PolynomialSyntaxError(f"Coefficient {c} out of range for F_{q}")
        e = 0 if match.group(2) is None else (int(match.group(3)) if match.group(3) is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + (c if sign == '+' else -c)
    degree = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(degree + 1)], q)


def _split_fraction(text: str) -> Tuple[str, Optional[str]]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == '/' and depth == 0:
            return text[:i], text[i + 1:]
    return text, None


def parse_ratfunc(text: str, q: int) -> RatFunc:
    num, den = _split_fraction(text.strip())
    if den is None:
        return RatFunc(parse_poly(num, q))
    return RatFunc(parse_poly(num, q), parse_poly(den, q))


def parse_point(text: str, q: int) -> Optional[RatFunc]:
    """
    Parse a point of P^1(F_q(T)); None stands for the point at infinity.
    """
    if text.strip().lower() in INFINITY_NAMES:
        return None
    return parse_ratfunc(text, q)


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return '0'
    terms = []
    for e in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[e]
        if c == 0:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        power = 'T' if e == 1 else f'T^{e}'
        terms.append(power if c == 1 else f'{c}*{power}')
    return ' + '.join(terms)


def format_ratfunc(x: RatFunc) -> str:
    if isinstance(x, Poly):
        return format_poly(x)
    if not isinstance(x, RatFunc):
        raise TypeError(f"Expected a rational function, got {type(x).__name__} {x!r}")
    if x.den.is_one():
        return format_poly(x.num)
    num = format_poly(x.num)
    den = format_poly(x.den)
    if len(x.num) > 1 and len([c for c in x.num.coeffs if c]) > 1:
        num = f'({num})'
    if len([c for c in x.den.coeffs if c]) > 1:
        den = f'({den})'
    return f'{num}/{den}'


def format_point(x: Optional[RatFunc]) -> str:
    return 'inf' if x is None else format_ratfunc(x)
