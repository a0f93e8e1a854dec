"""Acceptance criteria, one test each.

Each test prints a ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line; the lines are also collected and shown in pytest's terminal summary.
Run standalone with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from rp3kh import corpus
from rp3kh.cube import Cube, permutation_sign, shuffled_choices, state_module
from rp3kh.diagram import ProjectiveDiagram, components, resolve
from rp3kh.differential import chain_complex, partial_differential, verify_d2
from rp3kh.homology import compare, euler_characteristic, homology, homology_of_complex, smith_normal_form
from rp3kh.laurent import LaurentPoly2 as P
from rp3kh.rewrite import reverse_component, smooth
from rp3kh.skein import KbsmElement, bracket_normalized, kbsm, substitute_x

import conftest
from conftest import seeded_diagrams

N_RANDOM = 200


def report(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(line)
    conftest.ACCEPTANCE.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def criterion2_set():
    named = list(corpus.corpus().values())
    return named + seeded_diagrams(N_RANDOM, 5, seed=7)


# ---------------------------------------------------------------------------
# 1. worked example

# Generators are written as (coefficient, [(circle, label), ...]) in the
# factor order of the reference values; circle 1 is the trivial one,
# circle 2 the projective one, label 0 is the unit and 1 is X.


def _vector(module, terms):
    index = {tuple(f.label for f in g.factors): k for k, g in enumerate(module.basis)}
    v = [0] * module.rank
    for coeff, factors in terms:
        order = [c for c, _ in factors]
        labels = tuple(lab for _, lab in sorted(factors))
        sign = permutation_sign([sorted(order).index(c) for c in order])
        v[index[labels]] += coeff * sign
    return v


def _apply(matrix, v):
    return [sum(a * b for a, b in zip(row, v)) for row in matrix]


def test_criterion_1_worked_example():
    t0 = time.perf_counter()
    d = corpus.get("example")
    problems = []

    shifts = {(0, 0): 2, (0, 1): 0, (1, 0): 0, (1, 1): -2}
    for s, shift in shifts.items():
        rs = resolve(d, s)
        kinds = [c.projective for c in rs.circles]
        want = [True] if s in ((0, 1), (1, 0)) else [False, True]
        if kinds != want or rs.shift != shift:
            problems.append(f"C_{s}")

    cube = Cube(d)
    m00, m01, m10, m11 = (state_module(d, s) for s in ((0, 0), (0, 1), (1, 0), (1, 1)))
    # (edge, source module, target module, [(source terms, target terms)])
    table = [
        ((0, "*"), m00, m01, [
            ([(1, [(1, 0), (2, 0)])], [(1, [(2, 0)])]),
            ([(-1, [(1, 0), (2, 1)])], [(1, [(2, 1)])]),
            ([(1, [(1, 1), (2, 0)])], []),
            ([(-1, [(1, 1), (2, 1)])], []),
        ]),
        (("*", 0), m00, m10, [
            ([(1, [(2, 0), (1, 0)])], [(1, [(2, 0)])]),
            ([(-1, [(2, 0), (1, 1)])], []),
            ([(1, [(2, 1), (1, 0)])], [(-1, [(2, 1)])]),
            ([(-1, [(2, 1), (1, 1)])], []),
        ]),
        (("*", 1), m01, m11, [
            ([(1, [(2, 0)])], [(1, [(1, 1), (2, 0)])]),
            ([(-1, [(2, 1)])], [(-1, [(1, 1), (2, 1)])]),
        ]),
        ((1, "*"), m10, m11, [
            ([(1, [(2, 0)])], [(-1, [(2, 0), (1, 1)])]),
            ([(1, [(2, 1)])], [(-1, [(2, 1), (1, 1)])]),
        ]),
    ]
    for alpha, src, dst, rows in table:
        mat = partial_differential(cube, alpha).to_dense()
        for x, y in rows:
            if _apply(mat, _vector(src, x)) != _vector(dst, y):
                problems.append(f"d_{alpha} on {x}")

    cx = chain_complex(d)
    c0 = cx.modules[0]

    def direct_sum(a, b):
        return _vector(m01, a) + _vector(m10, b)

    totals = [
        (2, cx.modules[2], [
            ([(1, [(1, 0), (2, 0)])], direct_sum([(1, [(2, 0)])], [(-1, [(2, 0)])])),
            ([(1, [(1, 0), (2, 1)])], direct_sum([(-1, [(2, 1)])], [(1, [(2, 1)])])),
            ([(1, [(1, 1), (2, 0)])], [0] * c0.rank),
            ([(1, [(1, 1), (2, 1)])], [0] * c0.rank),
        ]),
    ]
    for i, src, rows in totals:
        mat = cx.differentials[i].to_dense()
        for x, y in rows:
            if _apply(mat, _vector(src, x)) != y:
                problems.append(f"d^({i}) on {x}")
    d0 = cx.differentials[0].to_dense()
    for k, labels in enumerate([0, 1, 0, 1]):
        e = [0] * c0.rank
        e[k] = 1
        if _apply(d0, e) != _vector(m11, [(1, [(1, 1), (2, labels)])]):
            problems.append(f"d^(0) on basis {k}")
    if not cx.differentials[-2].is_zero():
        problems.append("d^(-2)")

    h = homology_of_complex(cx)
    if h.support() != [(2, 4, 1), (2, 4, -1), (-2, -4, 1), (-2, -4, -1)] or \
            any(h[ijk].free_rank != 1 or h[ijk].torsion for ijk in h.support()):
        problems.append(f"homology support {h.support()}")
    chi = (-P.A(4) - P.A(-4)) * (P.z() + P.z(-1))
    if euler_characteristic(h) != chi or substitute_x(kbsm(d)) != chi:
        problems.append("euler characteristic")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s")
    report(1, not problems,
           f"worked example modules, partials, totals, homology, chi ({elapsed * 1000:.0f} ms)"
           + (f"; mismatches: {problems}" if problems else ""))


# ---------------------------------------------------------------------------
# 2. d o d = 0


def test_criterion_2_d_squared(criterion2_set):
    t0 = time.perf_counter()
    bad = [k for k, d in enumerate(criterion2_set) if verify_d2(chain_complex(d)) is not None]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30 and len(criterion2_set) >= 11 + N_RANDOM
    report(2, ok, f"d∘d = 0 on {len(criterion2_set)} diagrams (corpus + {N_RANDOM} random) "
                  f"in {elapsed:.1f}s" + (f"; failures at {bad[:5]}" if bad else ""))


# ---------------------------------------------------------------------------
# 3. Euler identity


def test_criterion_3_euler(criterion2_set):
    bad = []
    for k, d in enumerate(criterion2_set):
        cx = chain_complex(d)
        chi_c = euler_characteristic(cx)
        chi_h = euler_characteristic(homology_of_complex(cx))
        if not chi_c == chi_h == substitute_x(kbsm(d)):
            bad.append(k)
    report(3, not bad, f"chi(C) = chi(H) = kbsm at x = z + 1/z on {len(criterion2_set)} diagrams"
                       + (f"; failures at {bad[:5]}" if bad else ""))


# ---------------------------------------------------------------------------
# 4. Reidemeister invariance


def test_criterion_4_moves():
    results = {}
    for move, pairs in corpus.MOVE_PAIRS.items():
        results[move] = all(compare(homology(corpus.get(a)), homology(corpus.get(b))) is None
                            for a, b in pairs)
    ok = all(results.values()) and set(results) == {"RII", "RIII", "RIV", "RV"}
    report(4, ok, "equal homology on shipped pairs: "
                  + ", ".join(f"{m} {'ok' if v else 'DIFFER'}" for m, v in results.items()))


# ---------------------------------------------------------------------------
# 5. choice invariance


def test_criterion_5_choices():
    bad = []
    names = corpus.names()
    for name in names:
        d = corpus.get(name)
        base = homology(d).to_tsv()
        for seed in range(10):
            if homology(d, shuffled_choices(seed)).to_tsv() != base:
                bad.append(f"{name} seed {seed}")
        for c in range(len(components(d))):
            if homology(reverse_component(d, c)).to_tsv() != base:
                bad.append(f"{name} reversed {c}")
    report(5, not bad, f"TSV identical over 10 seeds and component reversals, {len(names)} diagrams"
                       + (f"; differences: {bad[:5]}" if bad else ""))


# ---------------------------------------------------------------------------
# 6. polynomial level


def test_criterion_6_skein():
    bad = []
    for name, d in corpus.corpus().items():
        for c in range(d.n_crossings):
            rhs = kbsm(smooth(d, c, 0)).scale(P.A()) + kbsm(smooth(d, c, 1)).scale(P.A(-1))
            if kbsm(d) != rhs:
                bad.append(f"skein {name}@{c}")
        looped = ProjectiveDiagram(d.n_crossings, d.arcs, d.free_loops + (0,))
        if kbsm(looped) != kbsm(d).scale(P.delta()):
            bad.append(f"framing {name}")
    if kbsm(corpus.get("unknot1")) != KbsmElement(P.zero(), P.one()):
        bad.append("kbsm(unknot1) != x")
    before, after = (corpus.get(n) for n in corpus.CURL_PAIR)
    if after.n_crossings != before.n_crossings + 1 or bracket_normalized(before) != bracket_normalized(after):
        bad.append("R-I pair")
    report(6, not bad, "skein relation at every crossing, framing relation, [x], R-I normalisation"
                       + (f"; failures: {bad[:5]}" if bad else ""))


# ---------------------------------------------------------------------------
# 7. Smith normal form oracle


def _rank_by_elimination(m):
    rows = [[Fraction(x) for x in r] for r in m]
    rank, n_cols = 0, len(rows[0])
    for col in range(n_cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_criterion_7_snf():
    rng = random.Random(1729)
    bad = 0
    for _ in range(1000):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        diag = smith_normal_form(m).diagonal
        nz = [x for x in diag if x]
        chain = all(x > 0 for x in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))
        zeros_last = all(x == 0 for x in diag[len(nz):])
        if not (chain and zeros_last and len(nz) == _rank_by_elimination(m)):
            bad += 1
    report(7, bad == 0, f"1000 random matrices up to 8x8: divisibility chain and rank ({bad} failures)")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
