"""Unramified Galois descent of an affine root system.

A Galois action is an affine isometry ``sigma`` of the unramified apartment
that preserves the base alcove; it is determined by the permutation it
induces on the walls.  The fixed apartment is ``origin + span(fixed_basis)``
and gets its own coordinates ``y`` via ``x = origin + B y``.  Affine roots of
the unramified system restrict to affine functions of ``y``; the
non-constant restrictions form the restricted affine root system.

Elements of the fixed group are stored as elements acting on the fixed
apartment.  ``embed`` sends such an element to the unique Galois-fixed
element of the unramified group that restricts to it, by mapping each fixed
simple reflection to the longest element of the parabolic subgroup generated
by the corresponding orbit of walls.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .affine_weyl import (
    AffineWeylElement,
    bruhat_leq,
    identity,
    invert,
    is_right_descent,
    length,
    multiply,
    reduced_word,
    reflect,
    simple_reflections,
    word_length,
)
from .errors import (
    ConstantRestrictionError,
    DomainError,
    InfiniteParabolicError,
    NotAnAutomorphismError,
    NotSigmaFixedError,
)
from .root_data import AffineRoot, AffineRootSystem, FiniteRootSystem, LevelSet

SHORTCUT_RE = re.compile(r"([23])([A-G])(\d+)$")


def shortcut_permutation(shortcut):
    """``"2A2"`` -> ``("A2", (0, 2, 1))``: base type and wall permutation."""
    m = SHORTCUT_RE.match(shortcut)
    if not m:
        raise NotAnAutomorphismError(f"unknown twist {shortcut!r}")
    order, letter, n = int(m.group(1)), m.group(2), int(m.group(3))
    perm = list(range(n + 1))
    if order == 2 and letter == "A" and n >= 2:
        perm[1:] = [n + 1 - i for i in range(1, n + 1)]
    elif order == 2 and letter == "D" and n >= 4:
        perm[n - 1], perm[n] = n, n - 1
    elif order == 3 and letter == "D" and n == 4:
        perm[1], perm[3], perm[4] = 3, 4, 1
    elif order == 2 and letter == "E" and n == 6:
        perm[1], perm[6], perm[3], perm[5] = 6, 1, 5, 3
    else:
        raise NotAnAutomorphismError(f"no standard twist {shortcut!r}")
    return f"{letter}{n}", tuple(perm)


@dataclass(frozen=True, eq=False)
class GaloisAction:
    """Action of a generator ``sigma`` of the Galois group on the apartment."""

    system: AffineRootSystem
    map: AffineWeylElement
    wall_permutation: tuple
    order: int

    @property
    def linear_part(self):
        return self.map.matrix

    @property
    def translation(self):
        return self.map.translation

    def is_trivial(self):
        return self.map.is_identity()

    def act_point(self, x):
        return self.map(x)

    def apply_linear(self, v):
        return linalg.mat_vec(self.map.matrix, v)

    def act_root(self, alpha):
        from .affine_weyl import act_root
        return act_root(self.map, alpha)

    def conjugate(self, w):
        """``sigma w sigma^-1``."""
        return multiply(multiply(self.map, w), invert(self.map))


def _cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(tuple(sorted(cyc)))
    return sorted(out)


def standard_action(system, twist=None):
    """Galois action inducing the given wall permutation.

    ``twist`` is a shortcut such as ``"2A2"`` or an explicit permutation of
    the walls (wall 0 is the affine node).  ``None`` gives the trivial action.
    """
    walls = system.simple_affine_roots
    k = len(walls)
    if twist is None:
        perm = tuple(range(k))
    elif isinstance(twist, str):
        base, perm = shortcut_permutation(twist)
        if base != system.label:
            raise NotAnAutomorphismError(f"twist {twist} does not apply to type {system.label}")
    else:
        perm = tuple(int(i) for i in twist)
    if sorted(perm) != list(range(k)):
        raise NotAnAutomorphismError(f"{list(perm)} is not a permutation of the {k} walls")

    # sigma^-1 (x) = m x + c is pinned down on the finite simple walls 1..n,
    # whose gradients are the standard basis covectors
    n = system.dimension
    m = tuple(walls[perm[j + 1]].gradient for j in range(n))
    c = tuple(walls[perm[j + 1]].level for j in range(n))
    for i, alpha in enumerate(walls):
        image = walls[perm[i]]
        if (linalg.vec_mat(alpha.gradient, m) != image.gradient
                or linalg.dot(alpha.gradient, c) + alpha.level != image.level):
            raise NotAnAutomorphismError(
                f"{list(perm)} is not an automorphism of the affine Dynkin diagram")
    if linalg.rank(m) < n:
        raise NotAnAutomorphismError(f"{list(perm)} does not induce an invertible map")
    roots = set(system.gradients)
    if any(linalg.vec_mat(a, m) not in roots for a in system.gradients):
        raise NotAnAutomorphismError(f"{list(perm)} does not preserve the root system")
    gram = system.finite.inner_product
    if linalg.mat_mul(linalg.mat_mul(linalg.transpose(m), gram), m) != gram:
        raise NotAnAutomorphismError(f"{list(perm)} does not induce an isometry")

    inv_map = AffineWeylElement(linalg.matrix(m), linalg.vector(c), system)
    sigma = invert(inv_map)
    order, p = 1, sigma
    while not p.is_identity():
        p = multiply(p, sigma)
        order += 1
    return GaloisAction(system, sigma, perm, order)


@dataclass(frozen=True, eq=False)
class DescentData:
    nr_system: AffineRootSystem
    action: GaloisAction
    origin: tuple
    fixed_basis: tuple
    basis_matrix: tuple
    left_inverse: tuple
    restricted_system: AffineRootSystem
    orbits: tuple
    representatives: tuple

    @property
    def fixed_subspace(self):
        return self.fixed_basis

    @property
    def simple_reflections_F(self):
        return tuple((i, r) for i, r in enumerate(self.representatives))

    def embedding(self, w):
        return embed(w, self)

    def restrict_gradient(self, gradient):
        return linalg.normalized(linalg.vec_mat(gradient, self.basis_matrix))

    def embed_point(self, y):
        return linalg.add(self.origin, linalg.mat_vec(self.basis_matrix, y))


def longest_element(system, walls, cap):
    gens = simple_reflections(system)
    w = identity(system)
    for _ in range(cap):
        climb = [i for i in walls if not is_right_descent(w, i)]
        if not climb:
            return w
        w = multiply(w, gens[climb[0]].element)
    raise InfiniteParabolicError(
        f"walls {list(walls)} generate an infinite parabolic subgroup")


def longest_element_cap(system):
    n = system.dimension
    return 2 * n * n + 121


def build_descent(nr_system, action):
    """Fixed apartment, restricted affine roots and fixed simple reflections."""
    orbits = _cycles(action.wall_permutation)
    cap = longest_element_cap(nr_system)
    representatives = tuple(longest_element(nr_system, o, cap) for o in orbits)
    for o, r in zip(orbits, representatives):
        if action.conjugate(r) != r:
            raise DomainError(f"orbit {list(o)}: longest element is not Galois-fixed")

    n = nr_system.dimension
    if action.is_trivial():
        eye = linalg.identity_matrix(n)
        return DescentData(nr_system, action, linalg.zero_vector(n), eye, eye, eye,
                           nr_system, tuple(orbits), representatives)
    sigma = action.map
    if all(t == 0 for t in sigma.translation):
        origin = linalg.zero_vector(n)
    else:
        origin = nr_system.alcove.interior_point
    if sigma(origin) != origin:
        raise DomainError("Galois action fixes no point of the base alcove")
    fixed = linalg.nullspace(linalg.mat_sub(sigma.matrix, linalg.identity_matrix(n)))
    if not fixed:
        raise DomainError("the fixed apartment is a point")
    basis_matrix = linalg.transpose(fixed)
    bt = linalg.transpose(basis_matrix)
    left_inverse = linalg.mat_mul(linalg.inverse(linalg.mat_mul(bt, basis_matrix)), bt)

    def restrict_gradient(a):
        return linalg.normalized(linalg.vec_mat(a, basis_matrix))

    fibers = {}
    for a in nr_system.gradients:
        g = restrict_gradient(a)
        if any(g):
            levels = nr_system.level_sets[a]
            fibers.setdefault(g, set()).add(
                (Fraction(linalg.dot(a, origin) + levels.offset) % levels.period, levels.period))
    level_sets = {g: _progression(g, residues) for g, residues in fibers.items()}

    gram = linalg.mat_mul(linalg.mat_mul(bt, nr_system.finite.inner_product), basis_matrix)
    bary = linalg.mat_vec(left_inverse, linalg.sub(nr_system.alcove.interior_point, origin))
    finite = FiniteRootSystem.from_roots(level_sets, gram, positive_vector=bary)

    simple = []
    for o in orbits:
        restricted = {_restrict(nr_system.simple_affine_roots[i], basis_matrix, origin) for i in o}
        if len(restricted) != 1:
            raise DomainError(f"walls of orbit {list(o)} restrict to different functions")
        alpha = restricted.pop()
        while True:
            half = alpha.scaled(Fraction(1, 2))
            ls = level_sets.get(half.gradient)
            if ls is None or half.level not in ls:
                break
            alpha = half
        simple.append(alpha)

    label = action_label(nr_system, action)
    restricted_system = AffineRootSystem(finite, level_sets, tuple(simple), label=label)
    data = DescentData(
        nr_system=nr_system,
        action=action,
        origin=origin,
        fixed_basis=tuple(fixed),
        basis_matrix=basis_matrix,
        left_inverse=left_inverse,
        restricted_system=restricted_system,
        orbits=tuple(orbits),
        representatives=representatives,
    )
    for alpha, r in zip(simple, representatives):
        if restrict_element(r, data) != reflect(alpha, restricted_system):
            raise DomainError(f"fixed representative does not act as the reflection in {alpha}")
    return data


def _progression(gradient, residues):
    periods = {p for _, p in residues}
    if len(periods) != 1:
        raise DomainError(f"levels of {gradient} are not an arithmetic progression")
    period = periods.pop()
    rs = sorted(r for r, _ in residues)
    step = Fraction(period, len(rs))
    if any(r - rs[0] != k * step for k, r in enumerate(rs)):
        raise DomainError(f"levels of {gradient} are not an arithmetic progression")
    return LevelSet(rs[0], step)


def _restrict(alpha, basis_matrix, origin):
    g = linalg.vec_mat(alpha.gradient, basis_matrix)
    if not any(g):
        raise ConstantRestrictionError(f"{alpha} is constant on the fixed apartment")
    return AffineRoot(g, alpha.level + linalg.dot(alpha.gradient, origin))


def action_label(nr_system, action):
    if action.is_trivial():
        return nr_system.label
    perm = action.wall_permutation
    for order in (2, 3):
        name = f"{order}{nr_system.label}"
        try:
            if shortcut_permutation(name)[1] == perm:
                return name
        except NotAnAutomorphismError:
            pass
    return f"{nr_system.label}:perm=[{','.join(map(str, perm))}]"


def restrict_root(alpha, d):
    """``alpha`` viewed as a function on the fixed apartment."""
    return _restrict(alpha, d.basis_matrix, d.origin)


def is_sigma_fixed(w, d):
    return d.action.conjugate(w) == w


def restrict_element(w, d):
    """Action of a Galois-fixed unramified element on the fixed apartment."""
    if w.system is not d.nr_system:
        raise DomainError("expected an element of the unramified group")
    if not is_sigma_fixed(w, d):
        raise NotSigmaFixedError("element is not fixed by the Galois action")
    b, bplus, p0 = d.basis_matrix, d.left_inverse, d.origin
    m = linalg.mat_mul(linalg.mat_mul(bplus, w.matrix), b)
    minv = linalg.mat_mul(linalg.mat_mul(bplus, w.inverse_matrix), b)
    shift = linalg.sub(linalg.add(linalg.mat_vec(w.matrix, p0), w.translation), p0)
    t = linalg.mat_vec(bplus, shift)
    if (linalg.mat_mul(b, m) != linalg.mat_mul(w.matrix, b)
            or linalg.mat_vec(b, t) != shift):
        raise NotSigmaFixedError("element does not preserve the fixed apartment")
    return AffineWeylElement(linalg.matrix(m), linalg.vector(t), d.restricted_system,
                             linalg.matrix(minv))


def embed(w, d):
    """The Galois-fixed unramified element restricting to ``w``."""
    from .extended_weyl import ExtendedElement

    if isinstance(w, ExtendedElement):
        return multiply(w.group.nr_transversal[w.omega], embed(w.affine_part, d))
    if w.system is d.nr_system:
        if not is_sigma_fixed(w, d):
            raise NotSigmaFixedError("element is not fixed by the Galois action")
        return w
    if w.system is not d.restricted_system:
        raise DomainError("element belongs to neither apartment of this descent")
    out = identity(d.nr_system)
    for i in reduced_word(w):
        out = multiply(out, d.representatives[i])
    return out


def _as_fixed(w, d):
    from .extended_weyl import ExtendedElement

    if isinstance(w, ExtendedElement):
        return w.affine_part
    if w.system is d.nr_system:
        return restrict_element(w, d)
    return w


def length_nr(w, d):
    """Length in the unramified group (every unramified root is non-divisible)."""
    return length(embed(w, d))


def length_F(w, d):
    return word_length(_as_fixed(w, d))


def bruhat_leq_F(w, v, d):
    from .extended_weyl import ExtendedElement

    if isinstance(w, ExtendedElement) or isinstance(v, ExtendedElement):
        if w.omega != v.omega:
            return False
    return bruhat_leq(_as_fixed(w, d), _as_fixed(v, d))


def d_values(d):
    """Wall index of the fixed alcove -> unramified length of its reflection."""
    return {i: length(r) for i, r in enumerate(d.representatives)}


def wall_names(d):
    """Display names of the fixed walls.

    Untwisted: ``s<i>``.  Twisted: ``s_fix``/``s_orb`` when unique of their
    kind, else suffixed by the smallest unramified wall in the orbit.
    """
    orbits = d.orbits
    if d.action.is_trivial():
        return [f"s{o[0]}" for o in orbits]
    singles = sum(1 for o in orbits if len(o) == 1)
    multis = len(orbits) - singles
    names = []
    for o in orbits:
        if len(o) == 1:
            names.append("s_fix" if singles == 1 else f"s_fix{o[0]}")
        else:
            names.append("s_orb" if multis == 1 else f"s_orb{o[0]}")
    return names


def wall_aliases(d):
    """Every accepted spelling of each fixed wall, mapped to its index."""
    aliases = {}
    for i, (o, name) in enumerate(zip(d.orbits, wall_names(d))):
        aliases[name] = i
        if d.action.is_trivial():
            continue
        kind = "s_fix" if len(o) == 1 else "s_orb"
        aliases[f"{kind}{o[0]}"] = i
    return aliases
