"""Acceptance suite: one test per criterion, each checked against brute force."""

import json
import subprocess
import sys
import time
from pathlib import Path

import jsonschema
import pytest

from iwahori import linalg
from iwahori.affine_weyl import (
    AffineWeylElement,
    act_point,
    act_root,
    identity,
    invert,
    length,
    multiply,
    simple_reflections,
)
from iwahori.cells import (
    cell_size,
    demazure_product_count,
    enumerate_double_cosets,
    min_rep,
)
from iwahori.cli import load_schema, render_text, CommandResult
from iwahori.descent import bruhat_leq_F, d_values, embed, length_nr
from iwahori.extended_weyl import ExtendedElement, ext_length, ext_multiply, kottwitz
from iwahori.parsing import build_group

from oracles import (
    bfs,
    bfs_words,
    brute_inversions,
    brute_length,
    bruhat_by_subwords,
    sigma_fixed,
    split_ball,
    words_by_element,
)

GOLDEN = Path(__file__).parent / "golden"


def _gens(system):
    return [s.element for s in simple_reflections(system)]


def _positive(system, alpha):
    return alpha(system.alcove.interior_point) > 0


@pytest.mark.criterion(1, "word length = inversion count, l <= 8 in A1, A2, C2, G2")
def test_criterion_1_length_identity():
    start = time.perf_counter()
    mismatches = []
    for spec in ("A1", "A2", "C2", "G2"):
        system = build_group(spec).system
        for w, dist in split_ball(system, 8).items():
            count = len(brute_inversions(w))
            if not dist == count == length(w):
                mismatches.append((spec, dist, count, length(w)))
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert elapsed < 60


@pytest.mark.criterion(2, "w.alpha > 0 on R(s) iff w <= ws, l(w) <= 8, incl. 2A2")
def test_criterion_2_descent_positivity():
    violations = []
    for spec in ("A1", "A2", "C2", "G2", "2A2"):
        system = build_group(spec).system
        gens = _gens(system)
        e = identity(system)
        words = bfs_words(gens, e, 9)
        r_s = [brute_inversions(s) for s in gens]
        for w, word in words.items():
            if len(word) > 8:
                continue
            for i, s in enumerate(gens):
                ws = multiply(w, s)
                leq = bruhat_by_subwords(gens, e, w, words[ws])
                for alpha in r_s[i]:
                    if _positive(system, act_root(w, alpha)) != leq:
                        violations.append((spec, word, i, str(alpha)))
    assert violations == []


def _bounded_pairs(elements, lengths, bound):
    for w in elements:
        for v in elements:
            if lengths[w] + lengths[v] <= bound:
                yield w, v


@pytest.mark.criterion(3, "R(wv) in R(v) + v^-1 R(w), equal iff l(wv) = l(w) + l(v)")
def test_criterion_3_inversion_set_union():
    violations = []
    cases = 0
    for spec in ("A1", "A2"):
        group = build_group(spec)
        system = group.system
        ball = split_ball(system, 8)
        inv = {w: brute_inversions(w) for w in ball}
        for w, v in _bounded_pairs(list(ball), ball, 8):
            cases += 1
            wv = multiply(w, v)
            lhs = brute_inversions(wv)
            moved = {act_root(invert(v), a) for a in inv[w]}
            rhs = inv[v] | moved
            additive = brute_length(wv) == ball[w] + ball[v]
            if not (lhs <= rhs and not (inv[v] & moved) and (lhs == rhs) == additive):
                violations.append((spec, w, v))
        # elements with a nontrivial length-zero part
        om = group.omega
        ext = [ExtendedElement(c, a, om) for c in om.classes for a, n in ball.items() if n <= 4]
        for w, v in _bounded_pairs(ext, {x: ext_length(x) for x in ext}, 4):
            cases += 1
            wv = ext_multiply(w, v)
            lhs = brute_inversions(wv.map)
            moved = {act_root(invert(v.map), a) for a in brute_inversions(w.map)}
            rhs = brute_inversions(v.map) | moved
            additive = brute_length(wv.map) == brute_length(w.map) + brute_length(v.map)
            if not (lhs <= rhs and (lhs == rhs) == additive):
                violations.append((spec, "ext", w, v))
    assert cases > 1000
    assert violations == []


def _orbit_fixed_elements(d, orbit):
    nr = d.nr_system
    gens = [simple_reflections(nr)[i].element for i in orbit]
    parabolic = bfs(gens, identity(nr), 40)
    assert max(parabolic.values()) < 40, "orbit parabolic should be finite"
    return [u for u in parabolic if not u.is_identity() and sigma_fixed(d.action.map, u)]


@pytest.mark.criterion(4, "fixed group simply transitive on invariant alcoves; l_nr(ws) = l_nr(w) + l_nr(s); 2A2 d = {1,3}")
def test_criterion_4_descent():
    for spec, expected in (("2A2", [1, 3]), ("2A3", [1, 1, 2])):
        d = build_group(spec).descent
        nr = d.nr_system
        sigma = d.action.map
        x = nr.alcove.interior_point
        e = identity(nr)

        invariant = set()
        for u in split_ball(nr, 9):
            p = act_point(u, x)
            if act_point(sigma, p) == p:
                invariant.add(p)
        reps = list(d.representatives)
        fixed = bfs(reps, e, 9)
        reached = [act_point(u, x) for u in fixed if brute_length(u) <= 9]
        assert len(reached) == len(set(reached)), "action is not free"
        assert set(reached) == invariant, "action is not transitive"

        oracle_d = []
        for orbit in d.orbits:
            found = _orbit_fixed_elements(d, orbit)
            assert len(found) == 1
            oracle_d.append(brute_length(found[0]))
        assert oracle_d == [d_values(d)[i] for i in range(len(d.orbits))]
        assert sorted(oracle_d) == expected

        inv = {}
        for w, n in fixed.items():
            if n > 6:
                continue
            for i, s in enumerate(reps):
                ws = multiply(w, s)
                if fixed.get(ws, 99) <= n:
                    continue
                for u in (w, ws, s):
                    if u not in inv:
                        inv[u] = brute_inversions(u)
                moved = {act_root(s, a) for a in inv[w]}
                assert inv[ws] == inv[s] | moved, (spec, w, i)
                assert not inv[s] & moved
                assert len(inv[ws]) == len(inv[w]) + len(inv[s])


@pytest.mark.criterion(5, "Bruhat orders agree under the embedding, l_F <= 4 in 2A2")
def test_criterion_5_order_compatibility():
    group = build_group("2A2")
    d = group.descent
    system, nr = group.system, d.nr_system
    gens_F, gens_nr = _gens(system), _gens(nr)
    words_F = bfs_words(gens_F, identity(system), 4)
    words_nr = bfs_words(gens_nr, identity(nr), 16)
    emb = {}
    for w, word in words_F.items():
        u = identity(nr)
        for i in word:
            u = multiply(u, d.representatives[i])
        assert u == embed(w, d)
        emb[w] = u
    violations = []
    for w in words_F:
        for v, word_v in words_F.items():
            fixed_leq = bruhat_by_subwords(gens_F, identity(system), w, word_v)
            nr_leq = bruhat_by_subwords(gens_nr, identity(nr), emb[w], words_nr[emb[v]])
            if fixed_leq != nr_leq or fixed_leq != bruhat_leq_F(w, v, d):
                violations.append((words_F[w], word_v))
    assert violations == []
    for c in group.omega.classes:
        for w, word in words_F.items():
            x = ExtendedElement(c, w, group.omega)
            assert (len(word) == 0) == (brute_length(embed(x, d)) == 0)


def _coset_oracle(lam, coroot_rows):
    """Canonical representative of ``lam`` modulo the coroot lattice."""
    for a in range(3):
        for b in range(3):
            diff = linalg.sub(lam, (a, b))
            coeffs = linalg.solve(linalg.transpose(coroot_rows), diff)
            if coeffs is not None and linalg.is_integral(coeffs):
                return (a, b)
    raise AssertionError(lam)


@pytest.mark.criterion(6, "A2 adjoint: |Omega| = 3, ker kappa = W_aff, kappa a homomorphism")
def test_criterion_6_exact_sequence():
    group = build_group("A2")
    om, system = group.omega, group.system
    finite = system.finite
    assert abs(linalg.determinant(finite.cartan_matrix)) == 3
    assert om.order == 3

    weyl = bfs(_gens(system)[1:], identity(system), 6)
    assert len(weyl) == 6
    stabilizers = set()
    for u in weyl:
        for lam in ((i, j) for i in range(-2, 3) for j in range(-2, 3)):
            g = AffineWeylElement(u.matrix, lam, system, u.inverse_matrix)
            if brute_length(g) == 0:
                stabilizers.add(g)
    assert len(stabilizers) == 3

    ball = split_ball(system, 6)
    elements = [ExtendedElement(c, a, om) for c in om.classes for a in ball]
    coroot_rows = [finite.coroot(a) for a in finite.simple_roots]
    matching = {}
    for w in elements:
        assert (kottwitz(w) == om.zero) == (w.map in ball)
        oracle = _coset_oracle(w.map.translation, coroot_rows)
        assert matching.setdefault(kottwitz(w), oracle) == oracle
    assert len(set(matching.values())) == 3
    for w in elements:
        for v in elements:
            wv = ext_multiply(w, v)
            assert kottwitz(wv) == om.add(kottwitz(w), kottwitz(v))
            assert wv.map == multiply(w.map, v.map)


@pytest.mark.criterion(7, "demazure product = cell size = q^l_nr over all reduced words, l_F <= 6")
def test_criterion_7_cell_counts():
    for spec in ("A1", "A2", "C2", "G2", "2A2", "2A3"):
        group = build_group(spec)
        d, om = group.descent, group.omega
        gens = _gens(group.system)
        reduced = words_by_element(gens, identity(group.system), 6)
        for w, words in reduced.items():
            x = ExtendedElement(om.zero, w, om)
            u = identity(d.nr_system)
            for i in words[0]:
                u = multiply(u, d.representatives[i])
            l_nr = brute_length(u)
            size = cell_size(x)
            assert size.coefficients == {l_nr: 1}
            assert length_nr(x, d) == l_nr
            for word in words:
                prod = demazure_product_count(om, list(word))
                assert prod == size
                for q in (2, 3):
                    assert prod.evaluate(q) == size.evaluate(q) == q ** l_nr


def _check_double_cosets(om, elements, J, J2, L, within=None):
    left = [x for x in elements if x.omega == om.zero and _in_parabolic(x, J)]
    right = [x for x in elements if x.omega == om.zero and _in_parabolic(x, J2)]
    reps = enumerate_double_cosets(om, J, J2, L, within=within)
    assert len(reps) == len(set(reps))
    seen = {}
    for x in elements:
        coset = {ext_multiply(ext_multiply(a, x), b) for a in left for b in right}
        r = min_rep(x, J, J2)
        assert r in coset
        assert min_rep(r, J, J2) == r
        shortest = min(ext_length(y) for y in coset)
        assert [y for y in coset if ext_length(y) == shortest] == [r]
        for y in coset:
            assert seen.setdefault(y, r) == r
        assert r in reps
    return reps


def _in_parabolic(x, J):
    from iwahori.affine_weyl import reduced_word
    return set(reduced_word(x.affine_part)) <= set(J)


@pytest.mark.criterion(8, "double cosets: finite A2 gives 2; affine A1 partition up to L = 6")
def test_criterion_8_double_cosets():
    om = build_group("A2").omega
    finite_w = [ExtendedElement(om.zero, a, om)
                for a in bfs(_gens(om.system)[1:], identity(om.system), 3)]
    assert len(finite_w) == 6
    reps = _check_double_cosets(om, finite_w, {1}, {1}, 3, within={1, 2})
    from iwahori.cells import word
    assert [word(r) for r in reps] == [(), (2,)]

    for spec in ("A1--lattice=sc", "A1"):
        om = build_group(spec).omega
        ball = split_ball(om.system, 8)
        elements = [ExtendedElement(c, a, om) for c in om.classes for a, n in ball.items() if n <= 6]
        for J in (set(), {0}, {1}):
            for J2 in (set(), {0}, {1}):
                reps = _check_double_cosets(om, elements, J, J2, 6)
                assert all(ext_length(r) <= 6 for r in reps)
    sc = build_group("A1--lattice=sc").omega
    assert [word(r) for r in enumerate_double_cosets(sc, set(), set(), 2)] == \
        [(), (0,), (0, 1), (1,), (1, 0)]


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "iwahori", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout


@pytest.mark.criterion(9, "check --depth 6 on six groups exits 0 in < 5 min; JSON/table parity")
def test_criterion_9_cli():
    start = time.perf_counter()
    status, out = _cli("check", "--depth", "6", "--json")
    elapsed = time.perf_counter() - start
    assert status == 0
    assert elapsed < 300
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    assert doc["data"]["passed"]
    assert {r["group"] for r in doc["data"]["results"]} == {"A1", "A2", "C2", "G2", "2A2", "2A3"}

    cases = sorted(GOLDEN.glob("*.args"))
    assert cases
    for case in cases:
        args = case.read_text().split()
        status, text = _cli(*args)
        status_j, js = _cli(*args, "--json")
        assert status == status_j == 0
        assert text == case.with_suffix(".txt").read_text()
        assert js == case.with_suffix(".json").read_text()
        doc = json.loads(js)
        jsonschema.validate(doc, load_schema())
        assert render_text(CommandResult(doc["kind"], doc["data"])) + "\n" == text
