"""Parabolic subgroups, double cosets and Bruhat cell sizes.

Double cosets ``W_J \\ W / W_J2`` are represented by their minimal elements.
Cell sizes are polynomials in a formal ``q`` (the residue field cardinality):
the Iwahori cell of ``w`` has ``q ** length_nr(w)`` points.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian

from .affine_weyl import (
    ball,
    identity,
    left_descents,
    length,
    reduced_word,
    right_descents,
    simple_reflections,
    word_length,
)
from .descent import longest_element, longest_element_cap, length_F, length_nr
from .errors import DomainError, NonReducedWordError
from .extended_weyl import ExtendedElement, ext_multiply


@dataclass(frozen=True)
class ParabolicSubset:
    """A set ``J`` of walls of the base alcove generating a finite subgroup."""

    generators: frozenset
    longest: object = field(compare=False, hash=False, repr=False, default=None)

    def __iter__(self):
        return iter(sorted(self.generators))

    def __len__(self):
        return len(self.generators)


def parabolic(system, walls):
    """Validate finiteness of ``W_J`` and record its longest element."""
    walls = frozenset(walls)
    bad = [i for i in walls if not 0 <= i < len(system.simple_affine_roots)]
    if bad:
        raise DomainError(f"no walls {bad} in type {system.label}")
    w0 = longest_element(system, sorted(walls), longest_element_cap(system))
    return ParabolicSubset(walls, w0)


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in ``q``; ``coefficients`` maps exponent to coefficient."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, coefficients):
        return cls(tuple(sorted((int(e), int(c)) for e, c in coefficients.items() if c)))

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def one(cls):
        return cls.monomial(0)

    @property
    def coefficients(self):
        return dict(self.terms)

    @property
    def degree(self):
        return self.terms[-1][0] if self.terms else None

    def __add__(self, other):
        out = self.coefficients
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return QPolynomial.from_dict(out)

    def __mul__(self, other):
        out = {}
        for (e1, c1), (e2, c2) in cartesian(self.terms, other.terms):
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QPolynomial.from_dict(out)

    def evaluate(self, q):
        return sum(c * q ** e for e, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                body = str(abs(c))
            else:
                power = "q" if e == 1 else f"q^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def _generator(group, i):
    return ExtendedElement(group.zero, simple_reflections(group.system)[i].element, group)


def min_rep(w, J, J2):
    """Minimal element of ``W_J w W_J2``: strip left descents in J, right in J2."""
    g = w.group
    J, J2 = frozenset(J), frozenset(J2)
    while True:
        left = [i for i in left_descents(w.map) if i in J]
        if left:
            w = ext_multiply(_generator(g, left[0]), w)
            continue
        right = [i for i in right_descents(w.map) if i in J2]
        if right:
            w = ext_multiply(w, _generator(g, right[0]))
            continue
        return w


def parabolic_elements(group, J):
    """All elements of the finite group ``W_J`` (class zero)."""
    J = parabolic(group.system, J)
    gens = [simple_reflections(group.system)[i].element for i in J]
    affine = ball(group.system, length(J.longest), gens)
    return [ExtendedElement(group.zero, a, group) for a in affine]


def double_coset(w, J, J2):
    """The set ``W_J w W_J2``."""
    g = w.group
    left, right = parabolic_elements(g, J), parabolic_elements(g, J2)
    return {ext_multiply(ext_multiply(x, w), y) for x in left for y in right}


def element_ball(group, radius, classes=None, within=None):
    """Elements of length ``<= radius``; ``within`` restricts to ``W_K`` (class zero)."""
    if within is not None:
        gens = [simple_reflections(group.system)[i].element for i in sorted(within)]
        affine = ball(group.system, radius, gens)
        classes = [group.zero]
    else:
        affine = ball(group.system, radius)
        classes = group.classes if classes is None else classes
    return [ExtendedElement(c, a, group) for c in classes for a in affine]


def word(w):
    return reduced_word(w.affine_part)


def sort_key(w):
    return (w.omega, word(w))


def enumerate_double_cosets(group, J, J2, L, classes=None, within=None):
    """Distinct minimal representatives of length ``<= L``, sorted by class then word."""
    reps = {min_rep(w, J, J2) for w in element_ball(group, L, classes, within)}
    return sorted(reps, key=sort_key)


def _length_nr(w):
    d = w.group.descent
    return length(w.map) if d is None else length_nr(w, d)


def _length_F(w):
    d = w.group.descent
    return word_length(w.affine_part) if d is None else length_F(w, d)


def cell_size(w):
    """``q ** length_nr(w)``: the number of points of the Iwahori cell of ``w``."""
    return QPolynomial.monomial(_length_nr(w))


def wall_exponents(group):
    """``length_nr`` of each simple reflection of the (fixed) base alcove."""
    d = group.descent
    if d is None:
        return [1] * len(group.system.simple_affine_roots)
    return [length(r) for r in d.representatives]


def demazure_product_count(group, word_):
    """Product of ``q ** length_nr(s)`` over a reduced word of simple reflections."""
    exps = wall_exponents(group)
    gens = simple_reflections(group.system)
    w = identity(group.system)
    out = QPolynomial.one()
    for k, i in enumerate(word_):
        w = w * gens[i].element
        if word_length(w) != k + 1:
            raise NonReducedWordError(
                f"word is not reduced at position {k}", tuple(word_[:k + 1]))
        out = out * QPolynomial.monomial(exps[i])
    return out


def cell_size_exponents(w):
    exps = wall_exponents(w.group)
    return [exps[i] for i in word(w)]


def ball_poincare(group, L, J=frozenset(), classes=None):
    """Sum of cell sizes over minimal representatives of ``W / W_J`` of length ``<= L``."""
    total = QPolynomial()
    for w in enumerate_double_cosets(group, frozenset(), J, L, classes):
        total = total + cell_size(w)
    return total
