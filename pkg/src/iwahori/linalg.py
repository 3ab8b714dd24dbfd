"""Exact rational vectors and matrices as plain tuples.

Vectors are tuples of ``int``/``Fraction``; matrices are tuples of row tuples.
The hot paths (composition of group elements, evaluation of roots) only use
the tuple helpers below.  One-off factorizations go through sympy.
"""

from fractions import Fraction
from math import gcd

import sympy


def number(x):
    """Canonical exact scalar: integral values become ``int``."""
    if isinstance(x, int):
        return x
    if isinstance(x, sympy.Basic):
        x = sympy.Rational(x)
        x = Fraction(int(x.p), int(x.q))
    else:
        x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def vector(xs):
    return tuple(number(x) for x in xs)


def matrix(rows):
    return tuple(vector(r) for r in rows)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def mat_vec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def vec_mat(v, m):
    n = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(n))


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
                 for row in a)


def transpose(m):
    return tuple(zip(*m))


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n):
    return (0,) * n


def outer(u, v):
    return tuple(tuple(a * b for b in v) for a in u)


def mat_sub(a, b):
    return tuple(sub(r, s) for r, s in zip(a, b))


def normalized(v):
    return tuple(number(x) for x in v)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator)
                          if isinstance(x, Fraction) else x for x in row]
                         for row in m])


def from_sympy(m):
    return tuple(tuple(number(m[i, j]) for j in range(m.cols))
                 for i in range(m.rows))


def inverse(m):
    return from_sympy(to_sympy(m).inv())


def determinant(m):
    return number(to_sympy(m).det())


def rank(m):
    return to_sympy(m).rank() if m else 0


def nullspace(m):
    """Basis of {x : m x = 0}, each vector scaled to a primitive integer one."""
    basis = []
    for col in to_sympy(m).nullspace():
        v = [number(x) for x in col]
        den = 1
        for x in v:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        v = [int(x * den) for x in v]
        g = 0
        for x in v:
            g = gcd(g, x)
        basis.append(tuple(x // g for x in v))
    return basis


def solve(m, b):
    """The unique solution of m x = b; ``None`` when there is none."""
    a = to_sympy(m)
    rhs = to_sympy([[x] for x in b])
    try:
        sol, params = a.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        return None
    return tuple(number(x) for x in sol)


def is_integral(v):
    return all(number(x).__class__ is int for x in v)
