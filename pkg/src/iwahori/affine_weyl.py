"""Elements of affine Weyl groups acting on an apartment.

An element is stored in the canonical form ``x -> matrix @ x + translation``
(plus the inverse matrix, kept up to date under composition so that no
inversion is ever recomputed).  Words in the simple reflections are derived
data.  The same class carries elements of the Iwahori-Weyl group that are not
in the affine Weyl group, e.g. alcove-stabilizing elements; functions that
only make sense on the affine Weyl group reject those.

Conventions: ``multiply(w, v)`` acts as ``w`` after ``v``; ``w`` acts on
affine roots by ``(w . alpha)(x) = alpha(w^-1 x)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import NotInAffineWeylGroupError, OwnerMismatchError
from .root_data import AffineRoot, evaluate, is_divisible


class AffineWeylElement:
    """An affine transformation of the apartment of ``system``."""

    __slots__ = ("matrix", "inverse_matrix", "translation", "system", "_hash")

    def __init__(self, matrix, translation, system, inverse_matrix=None):
        self.matrix = matrix
        self.translation = translation
        self.system = system
        if inverse_matrix is None:
            inverse_matrix = linalg.inverse(matrix)
        self.inverse_matrix = inverse_matrix
        self._hash = None

    @property
    def finite_part(self):
        return self.matrix

    def __eq__(self, other):
        if not isinstance(other, AffineWeylElement):
            return NotImplemented
        return (self.system is other.system and self.translation == other.translation
                and self.matrix == other.matrix)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.matrix, self.translation))
        return self._hash

    def __mul__(self, other):
        return multiply(self, other)

    def __call__(self, x):
        return act_point(self, x)

    def inverse(self):
        return invert(self)

    def is_identity(self):
        n = len(self.matrix)
        return (all(t == 0 for t in self.translation)
                and self.matrix == linalg.identity_matrix(n))

    def __repr__(self):
        return (f"AffineWeylElement(matrix={_fmt(self.matrix)}, "
                f"translation={_fmt(self.translation)})")


def _fmt(obj):
    if isinstance(obj, tuple):
        return "[" + ", ".join(_fmt(x) for x in obj) + "]"
    return str(obj)


@dataclass(frozen=True)
class SimpleReflection:
    index: int
    root: AffineRoot
    element: AffineWeylElement


def identity(system):
    n = system.dimension
    eye = linalg.identity_matrix(n)
    return AffineWeylElement(eye, linalg.zero_vector(n), system, eye)


def translation(system, vector):
    """The translation ``x -> x + vector`` (``vector`` in apartment coordinates)."""
    n = system.dimension
    eye = linalg.identity_matrix(n)
    return AffineWeylElement(eye, linalg.vector(vector), system, eye)


def reflect(alpha, system):
    """Reflection in the wall ``{alpha = 0}``: ``x -> x - alpha(x) coroot``."""
    coroot = system.coroot(alpha.gradient)
    n = system.dimension
    m = linalg.mat_sub(linalg.identity_matrix(n), linalg.outer(coroot, alpha.gradient))
    m = linalg.matrix(m)
    t = linalg.vector(linalg.scale(-alpha.level, coroot))
    return AffineWeylElement(m, t, system, m)


def _check_owner(w, v):
    if w.system is not v.system:
        raise OwnerMismatchError("elements belong to different root systems")


def multiply(w, v):
    _check_owner(w, v)
    m = linalg.mat_mul(w.matrix, v.matrix)
    inv = linalg.mat_mul(v.inverse_matrix, w.inverse_matrix)
    t = linalg.add(linalg.mat_vec(w.matrix, v.translation), w.translation)
    return AffineWeylElement(m, t, w.system, inv)


def invert(w):
    t = linalg.scale(-1, linalg.mat_vec(w.inverse_matrix, w.translation))
    return AffineWeylElement(w.inverse_matrix, t, w.system, w.matrix)


def act_point(w, x):
    return linalg.add(linalg.mat_vec(w.matrix, x), w.translation)


def act_root(w, alpha):
    gradient = linalg.vec_mat(alpha.gradient, w.inverse_matrix)
    return AffineRoot(gradient, alpha.level - linalg.dot(gradient, w.translation))


def conjugate(g, w):
    """``g w g^-1``; ``g`` may be any affine map with the same owner."""
    return multiply(multiply(g, w), invert(g))


@lru_cache(maxsize=None)
def simple_reflections(system):
    return tuple(SimpleReflection(i, alpha, reflect(alpha, system))
                 for i, alpha in enumerate(system.simple_affine_roots))


def from_word(word, system):
    """Product of the simple reflections listed in ``word`` (wall indices)."""
    gens = simple_reflections(system)
    w = identity(system)
    for i in word:
        w = multiply(w, gens[i].element)
    return w


def _witness(w):
    """``w^-1`` applied to the base-alcove barycenter."""
    x = w.system.alcove.interior_point
    return linalg.mat_vec(w.inverse_matrix, linalg.sub(x, w.translation))


def right_descents(w):
    """Walls ``s`` with ``w . alpha_s < 0``, i.e. ``l(ws) < l(w)``."""
    y = _witness(w)
    return [i for i, alpha in enumerate(w.system.simple_affine_roots) if evaluate(alpha, y) < 0]


def left_descents(w):
    """Walls ``s`` with ``w^-1 . alpha_s < 0``, i.e. ``l(sw) < l(w)``."""
    y = act_point(w, w.system.alcove.interior_point)
    return [i for i, alpha in enumerate(w.system.simple_affine_roots) if evaluate(alpha, y) < 0]


def is_right_descent(w, i):
    return evaluate(w.system.simple_affine_roots[i], _witness(w)) < 0


def inversion_set(w):
    """Positive affine roots sent to negative ones by ``w``.

    For each gradient the admissible levels form an open interval determined
    by the barycenter ``x`` of the base alcove and ``y = w^-1 x``.
    """
    system = w.system
    x = system.alcove.interior_point
    y = _witness(w)
    roots = set()
    for g, levels in system.level_sets.items():
        lo, hi = -linalg.dot(g, x), -linalg.dot(g, y)
        if hi > lo:
            roots.update(AffineRoot(g, k) for k in levels.between(lo, hi))
    return roots


def length(w):
    """Number of non-divisible roots in the inversion set of ``w``."""
    system = w.system
    x = system.alcove.interior_point
    y = _witness(w)
    count = 0
    for g, levels in system.level_sets.items():
        lo, hi = -linalg.dot(g, x), -linalg.dot(g, y)
        if hi <= lo:
            continue
        ks = levels.between(lo, hi)
        half = system.level_sets.get(linalg.normalized(linalg.scale(Fraction(1, 2), g)))
        if half is None:
            count += len(ks)
        else:
            count += sum(1 for k in ks if Fraction(k, 2) not in half)
    return count


def strip_right(w):
    """Write ``w = tau * s_1 ... s_k`` with ``tau`` of length zero.

    Descents are removed greedily, lowest wall index first.  Returns
    ``(tau, word)``.
    """
    gens = simple_reflections(w.system)
    word = []
    while True:
        descents = right_descents(w)
        if not descents:
            return w, tuple(reversed(word))
        i = descents[0]
        word.append(i)
        w = multiply(w, gens[i].element)


def reduced_word(w):
    tau, word = strip_right(w)
    if not tau.is_identity():
        raise NotInAffineWeylGroupError(
            "element stabilizes no word decomposition: it is not in the affine Weyl group")
    return word


def word_length(w):
    return len(strip_right(w)[1])


def is_in_affine_weyl(w):
    return strip_right(w)[0].is_identity()


def reduced_words(w):
    """All reduced words of ``w`` (as tuples of wall indices), sorted."""
    gens = simple_reflections(w.system)
    memo = {}

    def words(u):
        if u in memo:
            return memo[u]
        ds = right_descents(u)
        if not ds:
            out = [()]
        else:
            out = [prefix + (i,) for i in ds for prefix in words(multiply(u, gens[i].element))]
        memo[u] = out
        return out

    return sorted(words(w))


def bruhat_leq(w, v):
    """Bruhat order by the descent recursion.

    With ``s`` a right descent of ``v``: ``w <= v`` iff ``min(w, ws) <= vs``.
    Elements of length zero are comparable only when equal.
    """
    _check_owner(w, v)
    gens = simple_reflections(w.system)
    memo = {}

    def leq(a, b):
        key = (a, b)
        if key in memo:
            return memo[key]
        ds = right_descents(b)
        if not ds:
            result = a == b
        else:
            s = gens[ds[0]].element
            if is_right_descent(a, ds[0]):
                a = multiply(a, s)
            result = leq(a, multiply(b, s))
        memo[key] = result
        return result

    if length(w) > length(v):
        return False
    return leq(w, v)


def bruhat_leq_subword(w, v):
    """Subword criterion on one reduced word of ``v`` (exhaustive)."""
    _check_owner(w, v)
    tau, word = strip_right(v)
    gens = simple_reflections(v.system)
    products = {tau}
    for i in word:
        s = gens[i].element
        products |= {multiply(p, s) for p in products}
    return w in products


def coxeter_matrix(system, bound=30):
    """Orders of products of simple reflections; ``None`` stands for infinity."""
    gens = simple_reflections(system)
    k = len(gens)
    out = [[1] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            prod = multiply(gens[i].element, gens[j].element)
            p, order = prod, None
            for n in range(1, bound + 1):
                if p.is_identity():
                    order = n
                    break
                p = multiply(p, prod)
            if order is None:
                a, b = gens[i].root.gradient, gens[j].root.gradient
                if linalg.rank((a, b)) != 1:
                    raise ArithmeticError(
                        f"walls {i} and {j}: no finite order up to {bound} yet not parallel")
            out[i][j] = out[j][i] = order
    return tuple(tuple(r) for r in out)


def ball(system, radius, generators=None):
    """Breadth-first enumeration of elements of word length ``<= radius``.

    ``generators`` defaults to the simple reflections; the result maps each
    element to its distance from the identity in the Cayley graph.
    """
    if generators is None:
        generators = [s.element for s in simple_reflections(system)]
    e = identity(system)
    dist = {e: 0}
    frontier = [e]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for s in generators:
                ws = multiply(w, s)
                if ws not in dist:
                    dist[ws] = r
                    nxt.append(ws)
        frontier = nxt
    return dist


def preserves_non_divisibility(w, alpha):
    return is_divisible(alpha, w.system) == is_divisible(act_root(w, alpha), w.system)
