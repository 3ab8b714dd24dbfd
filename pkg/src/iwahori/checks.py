"""Built-in invariant suite run by the ``check`` subcommand.

Every check enumerates a bounded piece of the group exhaustively and compares
two independent computations.  ``depth`` bounds word lengths; the pairwise
checks use a smaller radius so the whole suite stays fast.
"""

import itertools
from dataclasses import dataclass

from .affine_weyl import (
    act_root,
    ball,
    bruhat_leq,
    bruhat_leq_subword,
    from_word,
    inversion_set,
    is_in_affine_weyl,
    length,
    left_descents,
    multiply,
    reduced_word,
    reduced_words,
    right_descents,
    simple_reflections,
)
from .cells import (
    QPolynomial,
    cell_size,
    demazure_product_count,
    double_coset,
    element_ball,
    enumerate_double_cosets,
    min_rep,
    parabolic,
)
from .descent import (
    bruhat_leq_F,
    d_values,
    embed,
    is_sigma_fixed,
    length_F,
    length_nr,
    restrict_element,
    restrict_root,
)
from .errors import InfiniteParabolicError
from .extended_weyl import ExtendedElement, ext_ball, ext_multiply
from .root_data import AffineRoot, is_divisible, is_positive

DEFAULT_SPECS = ("A1", "A2", "C2", "G2", "2A2", "2A3")


@dataclass
class CheckResult:
    group: str
    module: str
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def as_dict(self):
        return {"group": self.group, "module": self.module, "name": self.name,
                "passed": self.passed, "cases": self.cases, "detail": self.detail}


class _Suite:
    def __init__(self, group, depth):
        self.group = group
        self.depth = depth
        self.system = group.system
        self.d = group.descent
        self.g = group.omega
        self.results = []
        self._ball = ball(self.system, depth)

    def record(self, module, name, failures, cases):
        detail = "" if not failures else f"{len(failures)} failures, first: {failures[0]}"
        self.results.append(CheckResult(str(self.group.spec), module, name,
                                        not failures, cases, detail))

    def upto(self, radius):
        return [w for w, n in self._ball.items() if n <= radius]

    # root_data

    def check_walls(self):
        s = self.system
        x = s.alcove.interior_point
        fails = [str(a) for a in s.simple_affine_roots if a(x) <= 0]
        expected = s.finite.rank + len(s.finite.components)
        if len(s.simple_affine_roots) != expected:
            fails.append(f"{len(s.simple_affine_roots)} walls, expected {expected}")
        self.record("root_data", "base alcove walls", fails, len(s.simple_affine_roots))

    def check_reflection_closure(self):
        s = self.system
        fails, cases = [], 0
        for g, levels in s.level_sets.items():
            for k in levels.between(-2 - levels.period, 2):
                alpha = AffineRoot(g, k)
                for r in simple_reflections(s):
                    cases += 1
                    if act_root(r.element, alpha) not in s:
                        fails.append(f"s{r.index} {alpha}")
        self.record("root_data", "closed under simple reflections", fails, cases)

    # affine_weyl

    def check_length_identity(self):
        fails = []
        for w, dist in self._ball.items():
            inv = inversion_set(w)
            nondiv = sum(1 for a in inv if not is_divisible(a, self.system))
            values = (dist, length(w), len(reduced_word(w)), nondiv)
            if len(set(values)) != 1:
                fails.append(values)
        self.record("affine_weyl", "word length = non-divisible inversions", fails, len(self._ball))

    def check_descent_criterion(self):
        s = self.system
        fails, cases = [], 0
        for w in self._ball:
            for r in simple_reflections(s):
                cases += 1
                ws = multiply(w, r.element)
                positive = all(is_positive(act_root(w, a), s.alcove) for a in inversion_set(r.element))
                if positive != bruhat_leq(w, ws):
                    fails.append((reduced_word(w), r.index))
        self.record("affine_weyl", "w.alpha > 0 on R(s) iff w <= ws", fails, cases)

    def check_inversion_union(self):
        radius = min(self.depth, 6)
        elems = self.upto(radius)
        lengths = {w: self._ball[w] for w in elems}
        inv = {w: inversion_set(w) for w in elems}
        fails, cases = [], 0
        for w in elems:
            for v in elems:
                if lengths[w] + lengths[v] > radius:
                    continue
                cases += 1
                wv = multiply(w, v)
                rhs = inv[v] | {act_root(v.inverse(), a) for a in inv[w]}
                lhs = inversion_set(wv)
                additive = length(wv) == lengths[w] + lengths[v]
                if not lhs <= rhs or (lhs == rhs) != additive:
                    fails.append((reduced_word(w), reduced_word(v)))
        self.record("affine_weyl", "R(wv) in R(v) + v^-1 R(w), equal iff additive", fails, cases)

    def check_bruhat(self):
        elems = self.upto(min(self.depth, 4))
        fails = [(reduced_word(w), reduced_word(v)) for w in elems for v in elems
                 if bruhat_leq(w, v) != bruhat_leq_subword(w, v)]
        self.record("affine_weyl", "Bruhat recursion = subword criterion", fails, len(elems) ** 2)

    def check_reduced_words(self):
        elems = self.upto(min(self.depth, 5))
        fails, cases = [], 0
        for w in elems:
            for word in reduced_words(w):
                cases += 1
                if from_word(word, self.system) != w or len(word) != self._ball[w]:
                    fails.append(word)
        self.record("affine_weyl", "all reduced words give the element", fails, cases)

    # extended_weyl

    def check_omega(self):
        g = self.g
        s = g.system
        walls = set(s.simple_affine_roots)
        fails = []
        for c, tau in g.transversal.items():
            images = {act_root(tau, a) for a in s.simple_affine_roots}
            if length(tau) != 0 or images != walls:
                fails.append(c)
        for a in g.classes:
            for b in g.classes:
                prod = ext_multiply(g.omega(a), g.omega(b))
                if prod.omega != g.add(a, b) or not prod.affine_part.is_identity():
                    fails.append((a, b))
        self.record("extended_weyl", "Omega stabilizes the base alcove", fails, len(g.classes))

    def check_kottwitz(self):
        g = self.g
        elems = list(ext_ball(g, min(self.depth, 3)))
        fails, cases = [], 0
        for w in elems:
            if (w.omega == g.zero) != is_in_affine_weyl(w.map):
                fails.append(("kernel", w.omega, reduced_word(w.affine_part)))
            if g.from_map(w.map) != w:
                fails.append(("from_map", w.omega, reduced_word(w.affine_part)))
            for v in elems:
                cases += 1
                wv = ext_multiply(w, v)
                if wv.omega != g.add(w.omega, v.omega) or wv.map != multiply(w.map, v.map):
                    fails.append(("product", w.omega, v.omega))
        self.record("extended_weyl", "Kottwitz map is a homomorphism with kernel W_aff",
                    fails, cases)

    # descent

    def check_fixed_points(self):
        d = self.d
        radius = self.depth + 3
        fixed = {w for w in ball(d.nr_system, radius) if is_sigma_fixed(w, d)}
        images = {}
        fails = []
        for v in ball(self.system, radius):
            u = embed(v, d)
            if length(u) > radius:
                continue
            if u in images:
                fails.append(("not injective", reduced_word(v)))
            images[u] = v
            if restrict_element(u, d) != v:
                fails.append(("restriction", reduced_word(v)))
        if set(images) != fixed:
            fails.append(("image", len(images), len(fixed)))
        self.record("descent", "fixed group is simply transitive on invariant alcoves",
                    fails, len(fixed))

    def check_nr_additivity(self):
        d = self.d
        fails, cases = [], 0
        for w in self._ball:
            for i, rep in enumerate(d.representatives):
                s = simple_reflections(self.system)[i].element
                ws = multiply(w, s)
                if not bruhat_leq_F(w, ws, d):
                    continue
                cases += 1
                lhs = inversion_set(embed(ws, d))
                rs = inversion_set(rep)
                moved = {act_root(rep, a) for a in inversion_set(embed(w, d))}
                if lhs != rs | moved or rs & moved:
                    fails.append((reduced_word(w), i))
        self.record("descent", "R_nr(ws) = R_nr(s) + s R_nr(w)", fails, cases)

    def check_restriction(self):
        d = self.d
        fails, cases = [], 0
        for w in self.upto(min(self.depth, 5)):
            inv = inversion_set(w)
            for a in inversion_set(embed(w, d)):
                cases += 1
                r = restrict_root(a, d)
                if r not in self.system or r not in inv:
                    fails.append((reduced_word(w), str(a)))
        self.record("descent", "restrictions of nr inversions are inversions", fails, cases)

    def check_order(self):
        d = self.d
        elems = self.upto(min(self.depth, 4))
        emb = {w: embed(w, d) for w in elems}
        fails = [(reduced_word(w), reduced_word(v)) for w in elems for v in elems
                 if bruhat_leq_F(w, v, d) != bruhat_leq(emb[w], emb[v])]
        fails += [reduced_word(w) for w in elems
                  if (length_F(w, d) == 0) != (length(emb[w]) == 0)]
        self.record("descent", "Bruhat orders agree under the embedding", fails, len(elems) ** 2)

    def check_parabolic_descent(self):
        d = self.d
        walls = range(len(self.system.simple_affine_roots))
        fails, cases = [], 0
        for k in range(len(walls)):
            for J in itertools.combinations(walls, k):
                try:
                    PJ = parabolic(self.system, J)
                except InfiniteParabolicError:
                    continue
                union = sorted(i for j in J for i in d.orbits[j])
                PU = parabolic(d.nr_system, union)
                cases += 1
                gens = [simple_reflections(self.system)[j].element for j in J]
                mine = {embed(v, d) for v in ball(self.system, length(PJ.longest), gens)}
                nr_gens = [simple_reflections(d.nr_system)[i].element for i in union]
                theirs = {u for u in ball(d.nr_system, length(PU.longest), nr_gens)
                          if is_sigma_fixed(u, d)}
                if mine != theirs:
                    fails.append(J)
        self.record("descent", "fixed parabolic = fixed part of nr parabolic", fails, cases)

    def check_d_values(self):
        d = self.d
        values = d_values(d)
        fails = [i for i, v in values.items() if v < 1]
        if d.action.is_trivial():
            fails += [i for i, v in values.items() if v != 1]
        for i, r in enumerate(d.representatives):
            s = simple_reflections(self.system)[i].element
            if length_nr(s, d) != values[i]:
                fails.append(i)
        self.record("descent", "d(v) = l_nr(s_v)", fails, len(values))

    # cells

    def _subsets(self):
        walls = range(len(self.system.simple_affine_roots))
        out = []
        for k in range(len(walls)):
            for J in itertools.combinations(walls, k):
                try:
                    parabolic(self.system, J)
                except InfiniteParabolicError:
                    continue
                out.append(frozenset(J))
        return out

    def check_double_cosets(self):
        g = self.g
        L = min(self.depth, 4)
        elems = element_ball(g, L)
        subsets = [J for J in self._subsets() if len(J) <= 1]
        fails, cases = [], 0
        for J in subsets:
            for J2 in subsets:
                reps = enumerate_double_cosets(g, J, J2, L)
                covered = {}
                for r in reps:
                    if min_rep(r, J, J2) != r:
                        fails.append(("idempotent", sorted(J), sorted(J2)))
                    if any(i in J for i in left_descents(r.map)) or \
                            any(i in J2 for i in right_descents(r.map)):
                        fails.append(("descents", sorted(J), sorted(J2)))
                    for x in double_coset(r, J, J2):
                        if x in covered:
                            fails.append(("overlap", sorted(J), sorted(J2)))
                        covered[x] = r
                        if x.omega != r.omega:
                            fails.append(("class", sorted(J), sorted(J2)))
                for w in elems:
                    cases += 1
                    if covered.get(w) != min_rep(w, J, J2):
                        fails.append(("partition", sorted(J), sorted(J2)))
        self.record("cells", "double cosets partition W with unique minimal reps", fails, cases)

    def check_cell_counts(self):
        g = self.g
        fails, cases = [], 0
        for w in self._ball:
            x = ExtendedElement(g.zero, w, g)
            size = cell_size(x)
            if size != QPolynomial.monomial(length_nr(x, self.d)):
                fails.append(reduced_word(w))
            for word in reduced_words(w):
                cases += 1
                prod = demazure_product_count(g, word)
                if prod != size or any(prod.evaluate(q) != size.evaluate(q) for q in (2, 3)):
                    fails.append(word)
        self.record("cells", "product over reduced words = cell size", fails, cases)

    def check_monotone(self):
        d = self.d
        elems = self.upto(min(self.depth, 4))
        deg = {w: length_nr(w, d) for w in elems}
        fails = [(reduced_word(w), reduced_word(v)) for w in elems for v in elems
                 if bruhat_leq_F(w, v, d) and deg[w] > deg[v]]
        self.record("cells", "cell degree is Bruhat monotone", fails, len(elems) ** 2)

    def run(self):
        for check in (
            self.check_walls, self.check_reflection_closure,
            self.check_length_identity, self.check_descent_criterion,
            self.check_inversion_union, self.check_bruhat, self.check_reduced_words,
            self.check_omega, self.check_kottwitz,
            self.check_fixed_points, self.check_nr_additivity, self.check_restriction,
            self.check_order, self.check_parabolic_descent, self.check_d_values,
            self.check_double_cosets, self.check_cell_counts, self.check_monotone,
        ):
            check()
        return self.results


def run_checks(group, depth=6):
    """Run every invariant check on ``group`` (a parsed ``Group``)."""
    return _Suite(group, depth).run()
