"""Chain modules of the state cube.

Every circle of a state contributes a rank-2 factor: ``V = <1, X>`` for a
trivial circle and ``Vbar = <1bar, Xbar>`` for a projective one.  A generator
of ``C_s`` picks one of the two basis elements per circle, written as a label
0 (the unit) or 1 (the ``X`` element), in canonical circle order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .diagram import Circle, ProjectiveDiagram, ResolvedState, iter_states, resolve
from .laurent import LaurentPoly2

# (j, k) degree of a factor generator, by (projective, label)
FACTOR_DEGREE = {
    (False, 0): (-2, 0),
    (False, 1): (2, 0),
    (True, 0): (0, 1),
    (True, 1): (0, -1),
}

_NAMES = {(False, 0): "1", (False, 1): "X", (True, 0): "1̄", (True, 1): "X̄"}


@dataclass(frozen=True)
class FactorLabel:
    circle: int
    projective: bool
    label: int

    @property
    def degree(self) -> tuple[int, int]:
        return FACTOR_DEGREE[(self.projective, self.label)]

    def __str__(self) -> str:
        return _NAMES[(self.projective, self.label)]


@dataclass(frozen=True)
class WedgeGenerator:
    factors: tuple[FactorLabel, ...]
    shift: int = 0

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(f.label for f in self.factors)

    @property
    def bigrade(self) -> tuple[int, int]:
        j, k = self.shift, 0
        for f in self.factors:
            dj, dk = f.degree
            j += dj
            k += dk
        return j, k

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "∧".join(str(f) for f in self.factors)


def permutation_sign(order: Sequence[int]) -> int:
    """Sign of the permutation given as a sequence of distinct integers."""
    seq = list(order)
    sign = 1
    seen = [False] * len(seq)
    rank = {v: i for i, v in enumerate(sorted(seq))}
    perm = [rank[v] for v in seq]
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def permute_factors(g: WedgeGenerator, sigma: Sequence[int]) -> tuple[WedgeGenerator, int]:
    """Reorder the factors so that position ``t`` holds old factor ``sigma[t]``.

    Returns the new generator and the sign picked up by the wedge rule.
    """
    if sorted(sigma) != list(range(len(g.factors))):
        raise ValueError(f"{sigma!r} is not a permutation of {len(g.factors)} factors")
    new = WedgeGenerator(tuple(g.factors[i] for i in sigma), g.shift)
    return new, permutation_sign(sigma)


# ---------------------------------------------------------------------------
# choices of circle order and orientation

ChoiceHook = Callable[[ResolvedState], ResolvedState]


def shuffled_choices(seed: int) -> ChoiceHook:
    """Return a hook that reorders trivial circles and flips orientations.

    The hook is a pure function of ``(seed, state)``, so repeated resolution
    of the same state always yields the same choice.  Projective circles stay
    last.
    """

    def hook(rs: ResolvedState) -> ResolvedState:
        rng = random.Random(f"{seed}:{''.join(map(str, rs.state))}")
        triv = [c for c in rs.circles if not c.projective]
        proj = [c for c in rs.circles if c.projective]
        rng.shuffle(triv)
        circles = [c.reversed() if rng.random() < 0.5 else c for c in triv + proj]
        return ResolvedState(rs.state, tuple(circles))

    return hook


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class ChainModule:
    """Ordered basis of one ``C_s`` or of a flattened ``C^i``.

    ``blocks`` lists ``(state, offset)`` for each summand ``C_s``.
    """

    basis: tuple[WedgeGenerator, ...]
    degree: int
    blocks: tuple[tuple[tuple[int, ...], int], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def bigrades(self) -> tuple[tuple[int, int], ...]:
        return tuple(g.bigrade for g in self.basis)

    def dump(self) -> str:
        lines = []
        starts = dict((off, s) for s, off in self.blocks)
        state = None
        for idx, g in enumerate(self.basis):
            if idx in starts:
                state = starts[idx]
            st = "".join(map(str, state)) if state is not None else "-"
            j, k = g.bigrade
            lines.append(f"state={st} factors={g} j={j} k={k}")
        return "\n".join(lines)


def generators(rs: ResolvedState) -> tuple[WedgeGenerator, ...]:
    shift = rs.shift
    flags = [c.projective for c in rs.circles]
    out = []
    for labels in itertools.product((0, 1), repeat=len(flags)):
        out.append(WedgeGenerator(
            tuple(FactorLabel(i, p, lab) for i, (p, lab) in enumerate(zip(flags, labels))),
            shift))
    return tuple(out)


def state_module(d: ProjectiveDiagram, s: Sequence[int], hook: ChoiceHook | None = None) -> ChainModule:
    rs = resolve(d, s)
    if hook is not None:
        rs = hook(rs)
    return ChainModule(generators(rs), rs.shift, ((rs.state, 0),))


class Cube:
    """All resolved states of a diagram with their module bases.

    The optional ``hook`` replaces the canonical circle order/orientation by
    another choice; the homology must not depend on it.
    """

    def __init__(self, d: ProjectiveDiagram, hook: ChoiceHook | None = None):
        self.diagram = d
        self.hook = hook
        self._states: dict[tuple[int, ...], ResolvedState] = {}

    def resolved(self, s: Sequence[int]) -> ResolvedState:
        s = tuple(s)
        rs = self._states.get(s)
        if rs is None:
            rs = resolve(self.diagram, s)
            if self.hook is not None:
                rs = self.hook(rs)
            self._states[s] = rs
        return rs

    def degrees(self) -> list[int]:
        n = self.diagram.n_crossings
        return list(range(n, -n - 1, -2))

    def states_in_degree(self, i: int) -> list[tuple[int, ...]]:
        return [s for s in iter_states(self.diagram.n_crossings)
                if s.count(0) - s.count(1) == i]

    def chain_module(self, i: int) -> ChainModule:
        basis: list[WedgeGenerator] = []
        blocks = []
        for s in self.states_in_degree(i):
            blocks.append((s, len(basis)))
            basis.extend(generators(self.resolved(s)))
        return ChainModule(tuple(basis), i, tuple(blocks))

    def flatten(self) -> dict[int, ChainModule]:
        return {i: self.chain_module(i) for i in self.degrees()}


def flatten(d: ProjectiveDiagram, hook: ChoiceHook | None = None) -> dict[int, ChainModule]:
    return Cube(d, hook).flatten()


def poincare(m: ChainModule) -> LaurentPoly2:
    terms: dict[tuple[int, int], int] = {}
    for jk in m.bigrades:
        terms[jk] = terms.get(jk, 0) + 1
    return LaurentPoly2(terms)


def circle_poincare(circles: Sequence[Circle], shift: int) -> LaurentPoly2:
    """``A^shift (A^2 + A^-2)^T (z + 1/z)^P`` computed in closed form."""
    t = sum(1 for c in circles if not c.projective)
    p = len(circles) - t
    v = LaurentPoly2({(2, 0): 1, (-2, 0): 1})
    vbar = LaurentPoly2({(0, 1): 1, (0, -1): 1})
    return (v ** t) * (vbar ** p) * LaurentPoly2.A(shift)
