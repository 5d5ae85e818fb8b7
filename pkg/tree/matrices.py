"""2x2 matrices over F_q[T], F_q(T) or a completion, stored as ((a, b), (c, d))."""

from typing import *

Matrix = Tuple[Tuple[Any, Any], Tuple[Any, Any]]


def mat(a, b, c, d) -> Matrix:
    return (a, b), (c, d)


def mat_mul(g: Matrix, h: Matrix) -> Matrix:
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return (a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y)


def mat_det(g: Matrix):
    (a, b), (c, d) = g
    return a * d - b * c


def mat_adjugate(g: Matrix) -> Matrix:
    """
    Adjugate; equals the inverse up to the scalar det, which is invisible on the tree
    """
    (a, b), (c, d) = g
    return (d, -b), (-c, a)


def mat_map(g: Matrix, f: Callable) -> Matrix:
    (a, b), (c, d) = g
    return (f(a), f(b)), (f(c), f(d))


def mat_prod(*gs: Matrix) -> Matrix:
    out = gs[0]
    for g in gs[1:]:
        out = mat_mul(out, g)
    return out
