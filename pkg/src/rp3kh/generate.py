"""Random projective link diagrams for property testing."""

from __future__ import annotations

import random

from .diagram import Arc, DiagramError, ProjectiveDiagram, Slot, validate


def random_candidate(rng: random.Random, n: int, crosscap_prob: float = 0.3,
                     max_free_loops: int = 1) -> ProjectiveDiagram:
    outs, ins = [], []
    for c in range(n):
        positive = rng.random() < 0.5
        outs += [Slot(c, 2), Slot(c, 1 if positive else 3)]
        ins += [Slot(c, 0), Slot(c, 3 if positive else 1)]
    rng.shuffle(ins)
    arcs = tuple(Arc(k, o, i, int(rng.random() < crosscap_prob))
                 for k, (o, i) in enumerate(zip(outs, ins)))
    loops = tuple(int(rng.random() < 0.5) for _ in range(rng.randint(0, max_free_loops)))
    return ProjectiveDiagram(n, arcs, loops)


def random_diagram(rng: random.Random, n: int, crosscap_prob: float = 0.3,
                   max_free_loops: int = 1, max_tries: int = 100_000) -> ProjectiveDiagram:
    """Rejection-sample a diagram with ``n`` crossings that embeds in RP^2."""
    for _ in range(max_tries):
        d = random_candidate(rng, n, crosscap_prob, max_free_loops)
        try:
            validate(d)
        except DiagramError:
            continue
        return d
    raise RuntimeError(f"no valid {n}-crossing diagram found in {max_tries} tries")
