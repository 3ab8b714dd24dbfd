"""The Iwahori-Weyl group as ``Omega x| W_aff`` and the Kottwitz map.

The translation lattice ``L`` is chosen between the coroot lattice ``Q``
(simply connected case, ``Omega`` trivial) and the coweight lattice ``P``
(adjoint case, the default).  ``Omega`` is identified with ``L / Q`` through
the Smith normal form of the coroot basis written in a basis of ``L``; a
class is the tuple of residues modulo the nontrivial elementary divisors.
"""

from dataclasses import dataclass, field

from sympy import ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from . import linalg
from .affine_weyl import (
    bruhat_leq,
    from_word,
    identity,
    inversion_set,
    invert,
    length,
    multiply,
    strip_right,
    translation,
)
from .errors import DomainError, LatticeError, OwnerMismatchError

LATTICES = ("adjoint", "sc")


@dataclass(frozen=True)
class ExtendedElement:
    """``omega_c * affine_part`` with ``omega_c`` the alcove stabilizer of class ``c``."""

    omega: tuple
    affine_part: object
    group: object = field(compare=False, hash=False, repr=False)

    @property
    def map(self):
        return multiply(self.group.transversal[self.omega], self.affine_part)

    def __mul__(self, other):
        return ext_multiply(self, other)


@dataclass(frozen=True, eq=False)
class OmegaGroup:
    """Alcove stabilizers indexed by ``L / Q`` (or its Galois-fixed part)."""

    system: object
    nr_system: object
    lattice_basis: tuple
    divisors: tuple
    class_matrix: tuple
    classes: tuple
    transversal: dict
    nr_transversal: dict
    representatives: dict
    descent: object = None

    @property
    def order(self):
        return len(self.classes)

    @property
    def zero(self):
        return (0,) * len(self.divisors)

    def add(self, c, d):
        return tuple((x + y) % n for x, y, n in zip(c, d, self.divisors))

    def neg(self, c):
        return tuple((-x) % n for x, n in zip(c, self.divisors))

    def class_of_translation(self, vector):
        """Class of a coweight-coordinate vector of ``L`` in ``L / Q``."""
        coords = linalg.vec_mat(vector, self.class_matrix)
        if not linalg.is_integral(coords):
            raise LatticeError(f"{vector} is not in the translation lattice")
        return tuple(int(x) % n for x, n in zip(coords, self.divisors))

    def identity(self):
        return ExtendedElement(self.zero, identity(self.system), self)

    def omega(self, c):
        c = tuple(c)
        if c not in self.transversal:
            raise DomainError(f"no alcove stabilizer of class {c}")
        return ExtendedElement(c, identity(self.system), self)

    def element(self, affine_part, omega=None):
        if affine_part.system is not self.system:
            raise OwnerMismatchError("affine part lives on another apartment")
        return ExtendedElement(self.zero if omega is None else tuple(omega), affine_part, self)

    def from_map(self, g):
        """Decompose an affine map of the apartment into ``(omega, affine part)``."""
        tau, word = strip_right(g)
        for c, w in self.transversal.items():
            if w == tau:
                return ExtendedElement(c, from_word(word, self.system), self)
        raise DomainError("element is not in the Iwahori-Weyl group")


def lattice_basis(finite, choice):
    """Rows spanning the translation lattice, in coweight coordinates."""
    n = finite.rank
    if choice == "adjoint":
        return linalg.identity_matrix(n)
    if choice == "sc":
        return tuple(finite.coroots[a] for a in finite.simple_roots)
    rows = linalg.matrix(choice)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise LatticeError(f"lattice basis must be {n} vectors of length {n}")
    return rows


def build_extended(source, lattice="adjoint"):
    """Build ``Omega`` and its transversal.

    ``source`` is an affine root system (split case) or descent data, in which
    case ``Omega`` is the Galois-fixed part of the stabilizer of the base
    alcove, and elements act on the fixed apartment.
    """
    from .descent import DescentData, restrict_element

    descent = source if isinstance(source, DescentData) else None
    nr = descent.nr_system if descent else source
    finite = nr.finite
    basis = lattice_basis(finite, lattice)
    if not all(linalg.is_integral(r) for r in basis):
        raise LatticeError("lattice must lie in the coweight lattice (integer coordinates)")
    if linalg.rank(basis) < finite.rank:
        raise LatticeError("lattice basis is not of full rank")
    basis_inv = linalg.inverse(basis)
    coroot_rows = tuple(finite.coroots[a] for a in finite.simple_roots)
    relations = linalg.mat_mul(coroot_rows, basis_inv)
    if not all(linalg.is_integral(r) for r in relations):
        raise LatticeError("lattice does not contain the coroot lattice")

    smith, _, right = smith_normal_decomp(linalg.to_sympy(relations), domain=ZZ)
    diag = [abs(int(smith[i, i])) for i in range(finite.rank)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    to_snf = linalg.mat_mul(basis_inv, linalg.from_sympy(right))
    class_matrix = tuple(tuple(row[i] for i in keep) for row in to_snf)
    divisors = tuple(diag[i] for i in keep)

    def class_of(v):
        return tuple(int(x) % n for x, n in zip(linalg.vec_mat(v, class_matrix), divisors))

    zero = (0,) * len(divisors)
    reps = {zero: linalg.zero_vector(finite.rank)}
    frontier = [zero]
    while frontier:
        c = frontier.pop()
        for b in basis:
            v = linalg.add(reps[c], b)
            d = class_of(v)
            if d not in reps:
                reps[d] = v
                frontier.append(d)

    nr_transversal = {c: strip_right(translation(nr, v))[0] for c, v in reps.items()}

    if descent is not None:
        action = descent.action
        for b in basis:
            if not linalg.is_integral(linalg.vec_mat(action.apply_linear(b), basis_inv)):
                raise LatticeError("the Galois action does not preserve the lattice")
        nr_transversal = {c: w for c, w in nr_transversal.items() if action.conjugate(w) == w}
        transversal = {c: restrict_element(w, descent) for c, w in nr_transversal.items()}
        system = descent.restricted_system
    else:
        transversal = dict(nr_transversal)
        system = nr

    classes = tuple(sorted(transversal))
    return OmegaGroup(
        system=system,
        nr_system=nr,
        lattice_basis=basis,
        divisors=divisors,
        class_matrix=class_matrix,
        classes=classes,
        transversal=transversal,
        nr_transversal=nr_transversal,
        representatives={c: reps[c] for c in classes},
        descent=descent,
    )


def kottwitz(w):
    return w.omega


def _same_group(w, v):
    if w.group is not v.group:
        raise OwnerMismatchError("elements belong to different groups")


def ext_multiply(w, v):
    """``(omega_c a)(omega_d b) = omega_{c+d} (omega_d^-1 a omega_d) b``."""
    _same_group(w, v)
    g = w.group
    od = g.transversal[v.omega]
    twisted = multiply(multiply(invert(od), w.affine_part), od)
    return ExtendedElement(g.add(w.omega, v.omega), multiply(twisted, v.affine_part), g)


def ext_invert(w):
    g = w.group
    c = g.neg(w.omega)
    oc = g.transversal[c]
    affine = multiply(multiply(invert(oc), invert(w.affine_part)), oc)
    return ExtendedElement(c, affine, g)


def ext_length(w):
    return length(w.affine_part)


def ext_bruhat_leq(w, v):
    _same_group(w, v)
    return w.omega == v.omega and bruhat_leq(w.affine_part, v.affine_part)


def ext_inversion_set(w):
    return inversion_set(w.map)


def ext_from_word(group, word, omega=None):
    return group.element(from_word(word, group.system), omega)


def ext_ball(group, radius, classes=None):
    """All elements with length ``<= radius``, mapped to their length."""
    from .affine_weyl import ball

    affine = ball(group.system, radius)
    out = {}
    for c in (group.classes if classes is None else classes):
        for a, n in affine.items():
            out[ExtendedElement(c, a, group)] = n
    return out
