"""Integer homology of the cube complex, strand by strand in (j, k)."""

from __future__ import annotations

import json
from fractions import Fraction
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cube import ChoiceHook
from .diagram import ProjectiveDiagram
from .differential import ChainComplex, ConventionError, chain_complex, check_bigrade_preservation, verify_d2
from .laurent import LaurentPoly2


class D2Error(RuntimeError):
    def __init__(self, failure):
        super().__init__(failure.description)
        self.failure = failure


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    diagonal: tuple[int, ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for v in self.diagonal if v)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(v for v in self.diagonal if v > 1)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Diagonal of the Smith normal form of an integer matrix.

    Works on a copy with Python integers.  The returned diagonal has
    ``min(rows, cols)`` entries, non-negative, each dividing the next, zeros
    last.
    """
    m = [list(map(int, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = m[i][j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
                    if pivot[0] == 1:
                        break
            if pivot is not None and pivot[0] == 1:
                break
        if pivot is None:
            break
        _, pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]

        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = m[i][t]
                if q:
                    f = q // p
                    if f:
                        ri, rt = m[i], m[t]
                        for j in range(t, cols):
                            ri[j] -= f * rt[j]
                    if m[i][t]:
                        dirty = True
            rt = m[t]
            for j in range(t + 1, cols):
                q = rt[j]
                if q:
                    f = q // p
                    if f:
                        for row in m[t:]:
                            row[j] -= f * row[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                # the pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if m[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                ri, rt = m[bad], m[t]
                for j in range(t, cols):
                    rt[j] += ri[j]
                continue
            # move the smallest remainder into the pivot position
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                v = m[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, cols):
                v = m[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, bi, bj = best
            if bi != t:
                m[t], m[bi] = m[bi], m[t]
            if bj != t:
                for row in m:
                    row[t], row[bj] = row[bj], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return SmithDecomposition(tuple(diag), (rows, cols))


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class BigradedHomology:
    groups: dict[tuple[int, int, int], HomologyGroup] = field(default_factory=dict)

    def __iter__(self):
        return iter(sorted(self.groups.items(), key=lambda kv: (-kv[0][0], -kv[0][1], -kv[0][2])))

    def __getitem__(self, ijk) -> HomologyGroup:
        return self.groups.get(tuple(ijk), HomologyGroup(0))

    def __eq__(self, other):
        if not isinstance(other, BigradedHomology):
            return NotImplemented
        return self.groups == other.groups

    def support(self) -> list[tuple[int, int, int]]:
        return [k for k, _ in self]

    def poincare(self, i: int | None = None) -> LaurentPoly2:
        terms: dict[tuple[int, int], int] = defaultdict(int)
        for (hi, j, k), g in self.groups.items():
            if i is None or hi == i:
                terms[(j, k)] += g.free_rank
        return LaurentPoly2(terms)

    # output formats

    def to_tsv(self) -> str:
        lines = ["i\tj\tk\tfree_rank\ttorsion"]
        for (i, j, k), g in self:
            tors = ",".join(map(str, g.torsion)) or "-"
            lines.append(f"{i}\t{j}\t{k}\t{g.free_rank}\t{tors}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = [{"i": i, "j": j, "k": k, "free_rank": g.free_rank, "torsion": list(g.torsion)}
                for (i, j, k), g in self]
        return json.dumps({"schema": 1, "homology": rows}, indent=2) + "\n"

    def to_text(self) -> str:
        if not self.groups:
            return "homology is zero\n"
        lines = []
        for (i, j, k), g in self:
            lines.append(f"H_{i}  (j={j}, k={k}):  {g}")
        return "\n".join(lines) + "\n"


def _strand_indices(bigrades: Sequence[tuple[int, int]]) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = defaultdict(list)
    for idx, jk in enumerate(bigrades):
        out[jk].append(idx)
    return out


def rational_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact row reduction; slow, used as a check."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    n_cols = len(rows[0]) if rows else 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _strand_job(args):
    i, jk, n_here, d_out, d_in, check = args
    rank_out = smith_normal_form(d_out).rank if d_out and d_out[0] else 0
    snf_in = smith_normal_form(d_in) if d_in and d_in[0] else None
    rank_in = snf_in.rank if snf_in else 0
    free = n_here - rank_out - rank_in
    torsion = snf_in.torsion if snf_in else ()
    if check and (rank_out != rational_rank(d_out) or rank_in != rational_rank(d_in)):
        raise ConventionError(f"Smith rank disagrees with rational rank at {(i, *jk)}")
    return (i, jk[0], jk[1]), free, torsion


def homology_of_complex(cx: ChainComplex, jobs: int = 1,
                        check_ranks: bool = False) -> BigradedHomology:
    """Homology of ``cx``; raises :class:`D2Error` if d∘d is nonzero.

    ``check_ranks`` recomputes every rank over Q as a debugging aid.
    """
    check_bigrade_preservation(cx)
    failure = verify_d2(cx)
    if failure is not None:
        raise D2Error(failure)
    tasks = []
    for i, mod in cx.modules.items():
        here = _strand_indices(mod.bigrades)
        below = _strand_indices(cx.modules[i - 2].bigrades) if i - 2 in cx.modules else {}
        above = _strand_indices(cx.modules[i + 2].bigrades) if i + 2 in cx.modules else {}
        for jk, idx in sorted(here.items()):
            d_out = cx.differentials[i].restrict(below.get(jk, []), idx) if jk in below else []
            d_in = (cx.differentials[i + 2].restrict(idx, above[jk])
                    if jk in above else [])
            tasks.append((i, jk, len(idx), d_out, d_in, check_ranks))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_strand_job, tasks, chunksize=8))
    else:
        results = [_strand_job(t) for t in tasks]
    groups = {}
    for ijk, free, torsion in results:
        if free or torsion:
            groups[ijk] = HomologyGroup(free, tuple(torsion))
    return BigradedHomology(groups)


def homology(d: ProjectiveDiagram, hook: ChoiceHook | None = None, jobs: int = 1) -> BigradedHomology:
    return homology_of_complex(chain_complex(d, hook), jobs=jobs)


def euler_characteristic(h: BigradedHomology | ChainComplex) -> LaurentPoly2:
    """Sum of ``(-1)^((j-i)/2) A^j z^k`` weighted by ranks."""
    terms: dict[tuple[int, int], int] = defaultdict(int)
    if isinstance(h, ChainComplex):
        items: Iterable = ((i, jk, 1) for i, m in h.modules.items() for jk in m.bigrades)
    else:
        items = ((i, (j, k), g.free_rank) for (i, j, k), g in h.groups.items())
    for i, (j, k), r in items:
        if (j - i) % 2:
            raise ConventionError(f"odd j - i at i={i}, j={j}")
        terms[(j, k)] += (-1) ** (((j - i) // 2) % 2) * r
    return LaurentPoly2(terms)


@dataclass(frozen=True)
class Difference:
    ijk: tuple[int, int, int]
    left: HomologyGroup
    right: HomologyGroup


def compare(h1: BigradedHomology, h2: BigradedHomology) -> Difference | None:
    """First (i, j, k), in output order, where the two tables differ."""
    keys = sorted(set(h1.groups) | set(h2.groups), key=lambda t: (-t[0], -t[1], -t[2]))
    for key in keys:
        if h1[key] != h2[key]:
            return Difference(key, h1[key], h2[key])
    return None
