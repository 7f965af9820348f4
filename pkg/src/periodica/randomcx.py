"""Seeded random complexes for property checks and reproduction runs."""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from .families import all_intervals, is_linear_a
from .percomplex import BoundedComplex, PeriodicComplex
from .quiver import FinDimAlgebra
from .rep import Morphism, Rep, direct_sum, hom_space


def _random_map(rng: random.Random, space: Sequence[Morphism],
                src: Rep, tgt: Rep, spread: int = 1) -> Morphism:
    f = Morphism.zero(src, tgt)
    for g in space:
        c = rng.randint(-spread, spread)
        if c:
            f = f + g.scale(c)
    return f


def _indecomposable_pool(alg: FinDimAlgebra) -> List[Rep]:
    if is_linear_a(alg):
        return [M for _, M in all_intervals(alg)]
    return [Rep.projective(alg, v) for v in range(1, alg.quiver.n + 1)] + \
           [Rep.simple(alg, v) for v in range(1, alg.quiver.n + 1)]


def random_periodic_complex(alg: FinDimAlgebra, m: int, rng: random.Random,
                            max_summands: int = 2) -> PeriodicComplex:
    """A random m-periodic complex with components from the indecomposable
    pool and differentials sampled inside the d^2 = 0 constraint."""
    pool = _indecomposable_pool(alg)
    comps = []
    for _ in range(m):
        parts = [pool[rng.randrange(len(pool))]
                 for _ in range(rng.randint(1, max_summands))]
        comps.append(direct_sum(parts)[0])
    spaces = [hom_space(comps[i], comps[(i + 1) % m]) for i in range(m)]
    for _ in range(60):
        chosen = [_random_map(rng, spaces[i], comps[i], comps[(i + 1) % m])
                  for i in range(m)]
        if all((chosen[(i + 1) % m] @ chosen[i]).is_zero() for i in range(m)):
            return PeriodicComplex(alg, m, comps, chosen)
    zero = [Morphism.zero(comps[i], comps[(i + 1) % m]) for i in range(m)]
    return PeriodicComplex(alg, m, comps, zero)


def random_bounded_projectives(alg: FinDimAlgebra, rng: random.Random,
                               span: int = 3,
                               max_summands: int = 2) -> BoundedComplex:
    """A random bounded complex of projectives (for folding checks)."""
    projs = [Rep.projective(alg, v) for v in range(1, alg.quiver.n + 1)]
    lo = -rng.randint(0, span)
    comps = {}
    for j in range(lo, lo + rng.randint(1, span)):
        parts = [projs[rng.randrange(len(projs))]
                 for _ in range(rng.randint(1, max_summands))]
        comps[j] = direct_sum(parts)[0]
    degs = sorted(comps)
    for _ in range(80):
        diffs = {}
        for j in degs:
            if j + 1 in comps:
                space = hom_space(comps[j], comps[j + 1])
                diffs[j] = _random_map(rng, space, comps[j], comps[j + 1])
        ok = True
        for j in degs:
            if j in diffs and (j + 1) in diffs:
                if not (diffs[j + 1] @ diffs[j]).is_zero():
                    ok = False
                    break
        if ok:
            return BoundedComplex(alg, comps, diffs)
    return BoundedComplex(alg, comps, {})
