"""Partial and total differentials of the state cube.

Each partial differential is ``P_rho . (op ^ I) . P_sigma`` where ``op`` is a
multiplication, a comultiplication or zero depending on how the circles at the
smoothed crossing change, ``I`` acts on the remaining circles, and the two
permutations bring the site factors to the front and back again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cube import ChainModule, Cube, FactorLabel, generators, permutation_sign
from .diagram import (
    BifurcationType,
    Circle,
    Consistency,
    ProjectiveDiagram,
    bifurcation,
    edge_states,
    local_consistency,
)

# formal sums are lists of (coefficient, labels); labels are 0 for 1/1bar and 1 for X/Xbar
FormalSum = list[tuple[int, tuple[int, ...]]]


class ConventionError(RuntimeError):
    """A consistency reading that the construction rules out was met."""


@dataclass
class LinearMapZ:
    """Sparse integer matrix stored by columns, ``columns[c] = {row: value}``."""

    n_rows: int
    n_cols: int
    columns: list[dict[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.columns:
            self.columns = [{} for _ in range(self.n_cols)]

    def add(self, row: int, col: int, value: int) -> None:
        if not value:
            return
        colmap = self.columns[col]
        v = colmap.get(row, 0) + value
        if v:
            colmap[row] = v
        else:
            colmap.pop(row, None)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.columns[c].get(r, 0)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def nonzero(self):
        for c, colmap in enumerate(self.columns):
            for r in sorted(colmap):
                yield r, c, colmap[r]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for r, c, v in self.nonzero():
            out[r][c] = v
        return out

    def compose(self, inner: "LinearMapZ") -> "LinearMapZ":
        """Return ``self . inner``."""
        if inner.n_rows != self.n_cols:
            raise ValueError("dimension mismatch")
        out = LinearMapZ(self.n_rows, inner.n_cols)
        for c, colmap in enumerate(inner.columns):
            for mid, v in colmap.items():
                for r, w in self.columns[mid].items():
                    out.add(r, c, v * w)
        return out

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[int]]:
        """Dense submatrix on the given row and column index lists."""
        ridx = {r: i for i, r in enumerate(rows)}
        out = [[0] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            for r, v in self.columns[c].items():
                i = ridx.get(r)
                if i is not None:
                    out[i][j] = v
        return out

    def triplets(self) -> str:
        return "\n".join(f"({r}, {c}, {v})" for r, c, v in self.nonzero())


# ---------------------------------------------------------------------------
# multiplication / comultiplication tables


def multiply(first: FactorLabel, second: FactorLabel, signs: tuple[int, int, int]) -> FormalSum:
    """Multiply two site factors into the merged circle.

    ``signs`` holds the consistency signs ``(first, second, merged)``; each
    ``X`` carries its circle's sign, so ``1 ^ (e2 X) -> e X`` becomes
    ``1 ^ X -> e*e2 X``.
    """
    e1, e2, e = signs
    if first.projective and second.projective:
        raise ValueError("two projective circles cannot meet in one state")
    l1, l2 = first.label, second.label
    if not first.projective and not second.projective:
        if (l1, l2) == (0, 0):
            return [(1, (0,))]
        if (l1, l2) == (0, 1):
            return [(e * e2, (1,))]
        if (l1, l2) == (1, 0):
            return [(e * e1, (1,))]
        return []
    if first.projective:
        if (l1, l2) == (0, 0):
            return [(1, (0,))]
        if (l1, l2) == (1, 0):
            return [(e * e1, (1,))]
        return []
    # trivial first, projective second
    if (l1, l2) == (0, 0):
        return [(1, (0,))]
    if (l1, l2) == (0, 1):
        return [(e * e2, (1,))]
    return []


def comultiply(source: FactorLabel, first_projective: bool, second_projective: bool,
                 signs: tuple[int, int, int]) -> FormalSum:
    """Split the site factor into two; ``signs`` is ``(source, first, second)``."""
    e, e1, e2 = signs
    if first_projective and second_projective:
        raise ValueError("two projective circles cannot meet in one state")
    if source.projective != (first_projective or second_projective):
        raise ValueError("split must preserve the projective class")
    lab = source.label
    if not source.projective:
        if lab == 0:
            return [(e2, (0, 1)), (e1, (1, 0))]
        return [(e * e1 * e2, (1, 1))]
    if first_projective:
        if lab == 0:
            return [(e2, (0, 1))]
        return [(e * e1 * e2, (1, 1))]
    if lab == 0:
        return [(e1, (1, 0))]
    return [(e * e1 * e2, (1, 1))]


# ---------------------------------------------------------------------------
# partial differentials


def _eps(d: ProjectiveDiagram, circle: Circle, crossing: int) -> int:
    cons = local_consistency(d, circle, crossing)
    if cons is Consistency.INDETERMINED:
        raise ConventionError(
            f"indetermined local consistency at crossing {crossing} outside a 1->1 bifurcation")
    return cons.value


def _orientation_agreement(a: Circle, b: Circle) -> int:
    if not a.walk:
        return 1
    arc = min(a.arc_set)
    return 1 if a.direction[arc] == b.direction[arc] else -1


def partial_differential(cube: Cube, alpha: Sequence, corrupt: bool = False) -> LinearMapZ:
    d = cube.diagram
    c, s0, s1 = edge_states(alpha)
    r0, r1 = cube.resolved(s0), cube.resolved(s1)
    bif = bifurcation(d, alpha, r0, r1)
    dom, cod = generators(r0), generators(r1)
    out = LinearMapZ(len(cod), len(dom))
    if bif.kind is BifurcationType.ONE_TO_ONE:
        return out

    cod_index = {g.labels: i for i, g in enumerate(cod)}
    src_circles = [r0.circles[i] for i in bif.source]
    tgt_circles = [r1.circles[j] for j in bif.target]
    spect_signs = [_orientation_agreement(r0.circles[i], r1.circles[j]) for i, j in bif.spectators]
    sign = (permutation_sign(list(bif.source) + [i for i, _ in bif.spectators])
            * permutation_sign(list(bif.target) + [j for _, j in bif.spectators]))
    if corrupt and all(v == 0 for i, v in enumerate(alpha) if i != c) and c == 0:
        sign = -sign

    if bif.kind is BifurcationType.TWO_TO_ONE:
        signs = (_eps(d, src_circles[0], c), _eps(d, src_circles[1], c), _eps(d, tgt_circles[0], c))
    else:
        signs = (_eps(d, src_circles[0], c), _eps(d, tgt_circles[0], c), _eps(d, tgt_circles[1], c))

    for col, g in enumerate(dom):
        labels = g.labels
        site = [g.factors[i] for i in bif.source]
        if bif.kind is BifurcationType.TWO_TO_ONE:
            terms = multiply(site[0], site[1], signs)
        else:
            terms = comultiply(site[0], tgt_circles[0].projective, tgt_circles[1].projective, signs)
        if not terms:
            continue
        spect = 1
        for (i, _), s in zip(bif.spectators, spect_signs):
            if labels[i]:
                spect *= s
        for coef, tl in terms:
            new = [0] * len(r1.circles)
            for j, lab in zip(bif.target, tl):
                new[j] = lab
            for i, j in bif.spectators:
                new[j] = labels[i]
            out.add(cod_index[tuple(new)], col, sign * spect * coef)
    return out


def edges_from(state: Sequence[int]) -> list[tuple]:
    """Edges leaving ``state``, i.e. one per crossing smoothed 0."""
    out = []
    for c, v in enumerate(state):
        if v == 0:
            out.append(tuple("*" if i == c else x for i, x in enumerate(state)))
    return out


def total_differential(cube: Cube, i: int, modules: dict[int, ChainModule] | None = None,
                       corrupt: bool = False) -> LinearMapZ:
    """``d^(i): C^i -> C^(i-2)`` as one sparse block matrix."""
    if modules is None:
        modules = {i: cube.chain_module(i), i - 2: cube.chain_module(i - 2)}
    src = modules.get(i) or cube.chain_module(i)
    dst = modules.get(i - 2) or cube.chain_module(i - 2)
    out = LinearMapZ(dst.rank, src.rank)
    dst_off = dict(dst.blocks)
    for s, off in src.blocks:
        for alpha in edges_from(s):
            _, _, s1 = edge_states(alpha)
            block = partial_differential(cube, alpha, corrupt=corrupt)
            roff = dst_off[s1]
            for r, col, v in block.nonzero():
                out.add(roff + r, off + col, v)
    return out


@dataclass
class ChainComplex:
    cube: Cube
    modules: dict[int, ChainModule]
    differentials: dict[int, LinearMapZ]

    @property
    def diagram(self) -> ProjectiveDiagram:
        return self.cube.diagram


def chain_complex(d: ProjectiveDiagram, hook=None, corrupt: bool = False) -> ChainComplex:
    cube = Cube(d, hook)
    modules = cube.flatten()
    diffs = {}
    for i in cube.degrees():
        if i - 2 in modules:
            diffs[i] = total_differential(cube, i, modules, corrupt=corrupt)
        else:
            diffs[i] = LinearMapZ(0, modules[i].rank)
    return ChainComplex(cube, modules, diffs)


@dataclass(frozen=True)
class D2Failure:
    degree: int
    generator: int
    description: str


def verify_d2(cx: ChainComplex | ProjectiveDiagram) -> D2Failure | None:
    """Check ``d^(i-2) . d^(i) = 0`` for every ``i``; ``None`` means success."""
    if isinstance(cx, ProjectiveDiagram):
        cx = chain_complex(cx)
    for i, di in sorted(cx.differentials.items(), reverse=True):
        nxt = cx.differentials.get(i - 2)
        if nxt is None or nxt.n_rows == 0:
            continue
        comp = nxt.compose(di)
        for col, colmap in enumerate(comp.columns):
            if colmap:
                g = cx.modules[i].basis[col]
                return D2Failure(i, col, f"d∘d({g}) != 0 in degree {i}")
    return None


def check_bigrade_preservation(cx: ChainComplex) -> None:
    for i, di in cx.differentials.items():
        if di.n_rows == 0:
            continue
        src, dst = cx.modules[i], cx.modules[i - 2]
        for r, c, _ in di.nonzero():
            if src.bigrades[c] != dst.bigrades[r]:
                raise ConventionError(
                    f"d^({i}) maps bigrade {src.bigrades[c]} to {dst.bigrades[r]}")
