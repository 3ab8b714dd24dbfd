"""Brute-force reference computations shared by the tests.

These avoid the closed-form shortcuts of the library: roots are enumerated
level by level in a window, words are enumerated exhaustively, and group
elements are found by breadth-first search over explicit generators.
"""

import itertools
import math
from fractions import Fraction

from iwahori import linalg
from iwahori.affine_weyl import act_point, identity, invert, multiply, simple_reflections
from iwahori.root_data import AffineRoot


def roots_in_window(system, bound):
    """Every affine root of ``system`` with ``|level| <= bound``."""
    out = []
    for g, levels in system.level_sets.items():
        j0 = math.floor((-bound - levels.offset) / levels.period)
        j1 = math.ceil((bound - levels.offset) / levels.period)
        for j in range(j0, j1 + 1):
            k = levels.offset + j * levels.period
            if abs(k) <= bound:
                out.append(AffineRoot(g, linalg.number(k)))
    return out


def is_root(system, alpha):
    levels = system.level_sets.get(alpha.gradient)
    return levels is not None and alpha.level in levels


def non_divisible(system, alpha):
    half = AffineRoot(linalg.normalized(linalg.scale(Fraction(1, 2), alpha.gradient)),
                      Fraction(alpha.level) / 2)
    return not is_root(system, half)


def brute_inversions(w):
    """Positive roots sent to negative ones, by scanning a window of levels."""
    system = w.system
    x = system.alcove.interior_point
    y = act_point(invert(w), x)
    bound = 1 + max(abs(linalg.dot(g, x)) + abs(linalg.dot(g, y)) for g in system.level_sets)
    out = set()
    for alpha in roots_in_window(system, bound):
        # (w . alpha)(x) = alpha(w^-1 x)
        if alpha(x) > 0 and alpha(y) < 0:
            out.add(alpha)
    return out


def brute_length(w):
    return sum(1 for a in brute_inversions(w) if non_divisible(w.system, a))


def bfs(generators, start, radius):
    """Map element -> word distance from ``start`` using right multiplication."""
    dist = {start: 0}
    frontier = [start]
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


def split_ball(system, radius):
    gens = [s.element for s in simple_reflections(system)]
    return bfs(gens, identity(system), radius)


def words_by_element(generators, start, max_len):
    """Every word of length <= max_len, grouped by product, keeping only reduced ones."""
    reduced = {}
    dist = bfs(generators, start, max_len)
    for n in range(max_len + 1):
        for word in itertools.product(range(len(generators)), repeat=n):
            w = start
            for i in word:
                w = multiply(w, generators[i])
            if dist.get(w) == n:
                reduced.setdefault(w, []).append(word)
    return reduced


def subword_products(generators, start, word):
    products = {start}
    for i in word:
        products |= {multiply(p, generators[i]) for p in products}
    return products


def bruhat_by_subwords(generators, start, w, word_v):
    """``w <= v`` where ``word_v`` is any reduced word of ``v``."""
    return w in subword_products(generators, start, word_v)


def bfs_words(generators, start, radius):
    """Map element -> first reduced word found (its length is the distance)."""
    out = {start: ()}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for i, s in enumerate(generators):
                ws = multiply(w, s)
                if ws not in out:
                    out[ws] = out[w] + (i,)
                    nxt.append(ws)
        frontier = nxt
    return out


def sigma_fixed(sigma, u):
    return multiply(multiply(sigma, u), invert(sigma)) == u
