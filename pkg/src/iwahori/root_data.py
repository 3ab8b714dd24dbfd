"""Finite and affine root systems, alcoves and positivity.

Coordinates.  A point of the apartment is written in the basis of fundamental
coweights, and a (finite) root in the basis of simple roots, so that the
pairing between a root and a point is the plain dot product.  Weyl group
elements then act by integer matrices and the coroot lattice sits inside
``ZZ^n``.  Systems produced by Galois descent use other coordinates, but the
same convention: gradients are row vectors, points are column vectors, and
the pairing is ``dot``.

An affine root is the affine function ``x -> <gradient, x> + level``.
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import (
    CorruptAlcoveError,
    DimensionMismatchError,
    InvalidCartanTypeError,
    NotARootError,
)

CARTAN_LETTERS = "ABCDEFG"

_TYPE_RE = re.compile(r"([A-G])(\d+)$")


def _valid(letter, rank):
    return (
        (letter == "A" and rank >= 1)
        or (letter in "BC" and rank >= 2)
        or (letter == "D" and rank >= 3)
        or (letter == "E" and rank in (6, 7, 8))
        or (letter == "F" and rank == 4)
        or (letter == "G" and rank == 2)
    )


def cartan_matrix(letter, rank):
    """Cartan matrix with entries ``<alpha_i^vee, alpha_j>``, Bourbaki numbering."""
    if letter not in CARTAN_LETTERS or not isinstance(rank, int) or not _valid(letter, rank):
        raise InvalidCartanTypeError(
            f"invalid Cartan type ({letter!r}, {rank!r})")
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        a[i][j] = a[j][i] = -1

    if letter in "ABCFG":
        for i in range(n - 1):
            link(i, i + 1)
    if letter == "B":
        a[n - 1][n - 2] = -2
    elif letter == "C":
        a[n - 2][n - 1] = -2
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        a[2][1] = -2
    elif letter == "G":
        a[0][1] = -3
    return tuple(tuple(row) for row in a)


def parse_cartan_type(text):
    """``"A2"`` -> ``[("A", 2)]``; ``"A1xA1"`` -> ``[("A", 1), ("A", 1)]``."""
    parts = []
    for piece in text.split("x"):
        m = _TYPE_RE.match(piece)
        if not m:
            raise InvalidCartanTypeError(f"invalid Cartan type {text!r}")
        letter, rank = m.group(1), int(m.group(2))
        cartan_matrix(letter, rank)
        parts.append((letter, rank))
    return parts


def _block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return tuple(tuple(r) for r in out)


def _components(cartan):
    n = len(cartan)
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and (cartan[i][j] or cartan[j][i]):
                    seen.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _root_lengths(cartan):
    """Squared lengths of simple roots, long roots normalized to 2."""
    n = len(cartan)
    r = [None] * n
    for comp in _components(cartan):
        r[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if r[j] is None and cartan[i][j]:
                    r[j] = r[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
        top = max(r[i] for i in comp)
        for i in comp:
            r[i] = r[i] * 2 / top
    return [linalg.number(x) for x in r]


@dataclass(frozen=True, eq=False)
class FiniteRootSystem:
    """A finite (possibly non-reduced) crystallographic root system.

    Roots are functionals on the apartment; ``coroots`` maps each root to a
    point of the apartment; ``inner_product`` is the Gram matrix of a
    Weyl-invariant form on apartment coordinates.
    """

    cartan_type: str
    rank: int
    cartan_matrix: tuple
    simple_roots: tuple
    all_roots: tuple
    positive_roots: tuple
    coroots: dict
    inner_product: tuple
    highest_roots: tuple
    components: tuple = field(default=())

    def coroot(self, root):
        return self.coroots[root]

    def reflect(self, root, beta):
        """Image of ``beta`` under the reflection in ``root``."""
        c = linalg.dot(beta, self.coroots[root])
        return linalg.sub(beta, linalg.scale(c, root))

    def is_reduced(self):
        roots = set(self.all_roots)
        return not any(linalg.scale(2, a) in roots for a in self.all_roots)

    def simple_coordinates(self, root):
        """Coefficients of ``root`` in the basis of simple roots."""
        return linalg.vec_mat(root, self._basis_inverse)

    @cached_property
    def _basis_inverse(self):
        return linalg.inverse(self.simple_roots)

    @classmethod
    def from_roots(cls, roots, inner_product, *, simple_roots=None,
                   positive_vector=None, cartan_type=None):
        """Assemble a root system from its root set and an invariant form.

        Positivity is decided by ``positive_vector`` (a point on which no root
        vanishes); by default a generic vector is searched for.
        """
        roots = tuple(sorted({linalg.normalized(a) for a in roots}))
        dim = len(inner_product)
        ginv = linalg.inverse(inner_product)
        coroots = {}
        for a in roots:
            sharp = linalg.mat_vec(ginv, a)
            coroots[a] = linalg.normalized(linalg.scale(Fraction(2) / linalg.dot(a, sharp), sharp))
        if positive_vector is None or any(linalg.dot(a, positive_vector) == 0 for a in roots):
            positive_vector = _generic_vector(roots, dim)
        positive = [a for a in roots if linalg.dot(a, positive_vector) > 0]
        if simple_roots is None:
            decomposable = {linalg.add(b, c) for b in positive for c in positive}
            simple_roots = sorted((a for a in positive if a not in decomposable),
                                  key=lambda a: linalg.dot(a, positive_vector))
        simple_roots = tuple(linalg.normalized(a) for a in simple_roots)
        cartan = tuple(tuple(linalg.number(linalg.dot(sj, coroots[si])) for sj in simple_roots)
                       for si in simple_roots)
        comps = _components(cartan)

        basis_inv = linalg.inverse(simple_roots)
        coords = {a: linalg.vec_mat(a, basis_inv) for a in positive}

        highest = []
        positive.sort(key=lambda a: (sum(coords[a]), a))
        for comp in comps:
            members = [a for a in positive
                       if all(c == 0 for k, c in enumerate(coords[a]) if k not in comp)]
            highest.append(members[-1])
        positive.sort(key=lambda a: (sum(coords[a]), tuple(-x for x in coords[a])))
        negative = [linalg.scale(-1, a) for a in positive]
        ordered = tuple(positive) + tuple(negative)
        system = cls(
            cartan_type=cartan_type or "?",
            rank=len(simple_roots),
            cartan_matrix=cartan,
            simple_roots=simple_roots,
            all_roots=ordered,
            positive_roots=tuple(positive),
            coroots=coroots,
            inner_product=linalg.matrix(inner_product),
            highest_roots=tuple(highest),
            components=comps,
        )
        if cartan_type is None:
            object.__setattr__(system, "cartan_type", classify_type(system))
        return system


def _generic_vector(roots, dim):
    for t in itertools.count(2):
        v = tuple(Fraction(1, t ** k) for k in range(dim))
        if all(linalg.dot(a, v) != 0 for a in roots):
            return v


_ROOT_COUNTS = {}


def classify_type(system):
    """Best-effort Cartan type label, e.g. ``"C2"`` or ``"BC1"``."""
    labels = []
    roots = set(system.all_roots)
    for comp in system.components:
        span = [a for a in system.all_roots
                if all(c == 0 for k, c in enumerate(system.simple_coordinates(a)) if k not in comp)]
        n = len(comp)
        if any(linalg.scale(2, a) in roots for a in span):
            labels.append(f"BC{n}")
            continue
        gram_inv = linalg.inverse(system.inner_product)
        lengths = {a: linalg.dot(a, linalg.mat_vec(gram_inv, a)) for a in span}
        longest = max(lengths.values())
        short = sum(1 for v in lengths.values() if v != longest)
        count = len(span)
        label = None
        for letter in CARTAN_LETTERS:
            if not _valid(letter, n):
                continue
            key = (letter, n)
            if key not in _ROOT_COUNTS:
                fs = build_finite_system(letter, n)
                ls = {a: linalg.dot(a, linalg.mat_vec(linalg.inverse(fs.inner_product), a))
                      for a in fs.all_roots}
                top = max(ls.values())
                _ROOT_COUNTS[key] = (len(fs.all_roots), sum(1 for v in ls.values() if v != top))
            if _ROOT_COUNTS[key] == (count, short):
                label = f"{letter}{n}"
                break
        labels.append(label or f"?{n}")
    return "x".join(labels)


def build_finite_system(type_letter, rank=None):
    """Finite root system of the given Cartan type.

    ``build_finite_system("A", 2)``; products may be given as a string,
    ``build_finite_system("A1xA1")``.
    """
    if rank is None:
        parts = parse_cartan_type(type_letter)
    else:
        cartan_matrix(type_letter, rank)
        parts = [(type_letter, rank)]
    label = "x".join(f"{l}{r}" for l, r in parts)
    cartan = _block_diagonal([cartan_matrix(l, r) for l, r in parts])
    n = len(cartan)
    lengths = _root_lengths(cartan)
    # (alpha_i, alpha_j) on the root side; the apartment carries the dual form
    root_gram = tuple(tuple(linalg.number(Fraction(cartan[i][j] * lengths[i], 2))
                            for j in range(n)) for i in range(n))
    point_gram = linalg.inverse(root_gram)
    simple = linalg.identity_matrix(n)

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            c = linalg.dot(cartan[i], beta)
            image = tuple(b - c if k == i else b for k, b in enumerate(beta))
            if image not in roots:
                roots.add(image)
                frontier.append(image)

    return FiniteRootSystem.from_roots(
        roots, point_gram, simple_roots=simple,
        positive_vector=(1,) * n, cartan_type=label)


@dataclass(frozen=True)
class AffineRoot:
    """The affine function ``x -> <gradient, x> + level``."""

    gradient: tuple
    level: object = 0

    def __post_init__(self):
        g = linalg.vector(self.gradient)
        if all(x == 0 for x in g):
            raise NotARootError("an affine root needs a nonzero gradient")
        object.__setattr__(self, "gradient", g)
        object.__setattr__(self, "level", linalg.number(self.level))

    def __neg__(self):
        return AffineRoot(linalg.scale(-1, self.gradient), -self.level)

    def __call__(self, x):
        return evaluate(self, x)

    def scaled(self, c):
        return AffineRoot(linalg.scale(c, self.gradient), c * self.level)

    def __str__(self):
        g = ",".join(str(x) for x in self.gradient)
        return f"([{g}], {self.level})"


@dataclass(frozen=True)
class LevelSet:
    """The arithmetic progression ``offset + period * ZZ``."""

    offset: object = 0
    period: object = 1

    def __post_init__(self):
        period = linalg.number(self.period)
        if period <= 0:
            raise ValueError("period must be positive")
        offset = Fraction(self.offset) % period
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "offset", linalg.number(offset))

    def __contains__(self, k):
        return (Fraction(k) - self.offset) / self.period % 1 == 0

    def between(self, lo, hi):
        """Members ``k`` with ``lo < k < hi`` (open interval), increasing."""
        m_lo = math.floor(Fraction(lo - self.offset) / self.period) + 1
        m_hi = math.ceil(Fraction(hi - self.offset) / self.period) - 1
        return [linalg.number(self.offset + m * self.period) for m in range(m_lo, m_hi + 1)]


@dataclass(frozen=True)
class Alcove:
    bounding_roots: tuple
    interior_point: tuple
    vertices: tuple = ()


@dataclass(frozen=True, eq=False)
class AffineRootSystem:
    """An affine root system on a rational apartment.

    ``level_sets`` maps every gradient (a finite root) to the progression of
    levels ``k`` for which ``(gradient, k)`` is an affine root.  The simple
    affine roots are listed in wall order; for untwisted systems wall 0 is
    the affine node of the first irreducible component.
    """

    finite: FiniteRootSystem
    level_sets: dict
    simple_affine_roots: tuple
    label: str = ""

    @property
    def dimension(self):
        return len(self.finite.inner_product)

    @property
    def gradients(self):
        return self.finite.all_roots

    @property
    def walls(self):
        return range(len(self.simple_affine_roots))

    def coroot(self, gradient):
        try:
            return self.finite.coroots[gradient]
        except KeyError:
            raise NotARootError(f"{gradient} is not a root of {self.label}") from None

    def __contains__(self, alpha):
        levels = self.level_sets.get(alpha.gradient)
        return levels is not None and alpha.level in levels

    def is_reduced(self):
        # divisibility is periodic in the level with period 2 * period
        return not any(is_divisible(AffineRoot(g, k), self)
                       for g, ls in self.level_sets.items()
                       for k in ls.between(-2 * ls.period - 1, 2 * ls.period + 1))

    @cached_property
    def alcove(self):
        return _alcove(self)

    def __repr__(self):
        return f"AffineRootSystem({self.label!r})"


def build_affine_system(finite):
    """Untwisted affine root system: integer levels on every gradient."""
    levels = {a: LevelSet(0, 1) for a in finite.all_roots}
    simple = []
    for k, theta in enumerate(finite.highest_roots):
        node = AffineRoot(linalg.scale(-1, theta), 1)
        if k == 0:
            simple.append(node)
            simple.extend(AffineRoot(a, 0) for a in finite.simple_roots)
        else:
            simple.append(node)
    return AffineRootSystem(finite, levels, tuple(simple), label=finite.cartan_type)


def evaluate(alpha, x):
    if len(x) != len(alpha.gradient):
        raise DimensionMismatchError(
            f"point of dimension {len(x)} against gradient of dimension {len(alpha.gradient)}")
    return linalg.number(linalg.dot(alpha.gradient, x) + alpha.level)


def is_positive(alpha, alcove):
    value = evaluate(alpha, alcove.interior_point)
    if value == 0:
        raise CorruptAlcoveError(f"{alpha} vanishes at the alcove's interior point")
    return value > 0


def is_divisible(alpha, system):
    if alpha not in system:
        raise NotARootError(f"{alpha} is not an affine root of {system.label}")
    return alpha.scaled(Fraction(1, 2)) in system


def base_alcove(system):
    return system.alcove


def _alcove(system):
    walls = system.simple_affine_roots
    dim = system.dimension
    vertices = set()
    for subset in itertools.combinations(walls, dim):
        m = tuple(w.gradient for w in subset)
        if linalg.rank(m) < dim:
            continue
        x = linalg.solve(m, tuple(-w.level for w in subset))
        if all(evaluate(w, x) >= 0 for w in walls):
            vertices.add(x)
    vertices = tuple(sorted(vertices))
    center = tuple(linalg.number(sum(Fraction(v[i]) for v in vertices) / len(vertices))
                   for i in range(dim))
    alcove = Alcove(walls, center, vertices)
    for w in walls:
        if not is_positive(w, alcove):
            raise CorruptAlcoveError(f"wall {w} is not positive on the alcove")
    return alcove
