"""The skein-module state sum and its unframed normalization.

In RP^3 the bracket skein module is free on the empty link and on the
projective line ``x``.  A state contributes ``A^(#0 - #1) delta^T x^P`` where
``T`` and ``P`` count trivial and projective circles; ``P`` is never more
than one, because two disjoint one-sided curves do not fit in RP^2.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .diagram import ProjectiveDiagram, circle_count, crossing_signs, iter_states
from .laurent import LaurentPoly2


@dataclass(frozen=True)
class KbsmElement:
    empty_coeff: LaurentPoly2
    x_coeff: LaurentPoly2

    def __post_init__(self):
        for p in (self.empty_coeff, self.x_coeff):
            if not p.in_A_only():
                raise ValueError(f"skein coefficient {p} involves z")

    @classmethod
    def zero(cls) -> "KbsmElement":
        return cls(LaurentPoly2.zero(), LaurentPoly2.zero())

    def __add__(self, other: "KbsmElement") -> "KbsmElement":
        return KbsmElement(self.empty_coeff + other.empty_coeff, self.x_coeff + other.x_coeff)

    def scale(self, p: LaurentPoly2) -> "KbsmElement":
        return KbsmElement(self.empty_coeff * p, self.x_coeff * p)

    def __str__(self) -> str:
        parts = []
        for coeff, gen in ((self.empty_coeff, None), (self.x_coeff, "x")):
            if coeff.is_zero():
                continue
            if gen is None:
                parts.append(str(coeff))
            elif coeff == LaurentPoly2.one():
                parts.append("x")
            elif coeff == -LaurentPoly2.one():
                parts.append("-x")
            elif len(coeff.terms) == 1:
                parts.append(f"{coeff}*x")
            else:
                parts.append(f"({coeff})*x")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_dict(self) -> dict:
        def pairs(p: LaurentPoly2):
            return [[a, c] for (a, _z), c in p.sorted_terms()]

        return {"empty": pairs(self.empty_coeff), "x": pairs(self.x_coeff)}

    def to_json(self) -> str:
        return json.dumps({"schema": 1, **self.to_dict()}) + "\n"


def state_tally(d: ProjectiveDiagram) -> Counter:
    """Count states by ``(#0 - #1, T, P)``."""
    tally: Counter = Counter()
    for s in iter_states(d.n_crossings):
        t, p = circle_count(d, s)
        tally[(s.count(0) - s.count(1), t, p)] += 1
    return tally


def kbsm(d: ProjectiveDiagram) -> KbsmElement:
    """Bracket of ``d`` in the skein module, normalised by ``[empty] = 1``."""
    empty, x = LaurentPoly2.zero(), LaurentPoly2.zero()
    delta = LaurentPoly2.delta()
    for (shift, t, p), mult in state_tally(d).items():
        if p > 1:
            raise ValueError(f"state with {p} projective circles")
        term = LaurentPoly2.A(shift) * delta ** t * mult
        if p:
            x = x + term
        else:
            empty = empty + term
    return KbsmElement(empty, x)


def bracket_normalized(d: ProjectiveDiagram) -> KbsmElement:
    """``(-A^3)^(-w) <d>``, unchanged by adding or removing curls."""
    w = crossing_signs(d).writhe
    factor = LaurentPoly2.monomial(-3 * w, 0, -1 if w % 2 else 1)
    return kbsm(d).scale(factor)


def substitute_x(k: KbsmElement) -> LaurentPoly2:
    """Replace ``[empty]`` by 1 and ``[x]`` by ``z + 1/z``."""
    return k.empty_coeff + k.x_coeff * (LaurentPoly2.z(1) + LaurentPoly2.z(-1))
