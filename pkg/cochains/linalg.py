"""Exact linear algebra over Z and Q for cochain spaces."""

import math
from fractions import Fraction
from typing import *

import numpy as np
import sympy
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp


def primitive(vector: Sequence[int]) -> List[int]:
    """
    Divide an integer vector by the gcd of its entries
    """
    g = 0
    for x in vector:
        g = math.gcd(g, int(x))
    if g == 0:
        return [int(x) for x in vector]
    return [int(x) // g for x in vector]


def normalise_sign(vector: Sequence[int]) -> List[int]:
    """First nonzero entry made positive."""
    for x in vector:
        if x != 0:
            return [int(y) for y in vector] if x > 0 else [-int(y) for y in vector]
    return [int(y) for y in vector]


def saturate(vectors: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """
    Z-basis of the integer points in the rational span of independent integer vectors
    :param vectors: linearly independent rows
    :param ncols: length of each row
    :return: rows of S K / d_i, where S K T = diag(d_i) is the Smith form of the row matrix K
    """
    if not vectors:
        return []
    K = DomainMatrix([[ZZ(int(x)) for x in v] for v in vectors], (len(vectors), ncols), ZZ)
    D, S, _ = smith_normal_decomp(K)
    invariants = D.to_list()
    out = []
    for i, row in enumerate((S * K).to_list()):
        d = int(invariants[i][i])
        assert d != 0, "Saturation needs independent vectors"
        assert all(int(x) % d == 0 for x in row), f"Row {i} is not divisible by its invariant factor {d}"
        out.append(normalise_sign([int(x) // d for x in row]))
    return out


def integer_nullspace(rows: Sequence[Dict[int, int]], ncols: int) -> List[List[int]]:
    """
    Saturated kernel of a sparse integer system
    :param rows: each row maps column index to coefficient
    :param ncols: number of unknowns
    :return: Z-basis of the integer solutions
    """
    dense = [[ZZ(row.get(j, 0)) for j in range(ncols)] for row in rows]
    if not dense:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    kernel = DomainMatrix(dense, (len(dense), ncols), ZZ).nullspace()
    return saturate([[int(x) for x in row] for row in kernel.to_list()], ncols)


def coordinates(basis: np.ndarray, images: np.ndarray) -> sympy.Matrix:
    """
    Solve basis * A = images exactly
    :param basis: n x g integer matrix of full column rank
    :param images: n x g integer matrix in the column span of basis
    :return: g x g rational matrix A
    """
    b = sympy.Matrix(basis.tolist())
    y = sympy.Matrix(images.tolist())
    g = b.shape[1]
    if g == 0:
        return sympy.zeros(0, 0)
    _, pivots = b.T.rref()
    rows = list(pivots)
    a = b.extract(rows, list(range(g))).inv() * y.extract(rows, list(range(g)))
    assert b * a == y, "Image leaves the span of the basis"
    return a


def rational_kernel(matrix: sympy.Matrix) -> List[List[Fraction]]:
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v]
            for v in matrix.nullspace()]


def clear_denominators(vector: Sequence[Fraction]) -> List[int]:
    lcm = 1
    for x in vector:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    return primitive([int(Fraction(x) * lcm) for x in vector])
