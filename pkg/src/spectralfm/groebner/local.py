"""Local quotient dimension at the origin by truncated linear algebra.

dim k[[v]]/J equals dim k[v]/(J + m^N) once N exceeds the local length,
and J + m^N / m^N is spanned by the monomial multiples of the generators.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import List, Mapping, Sequence, Tuple

from ..exactalg.linalg import Echelon
from ..exactalg.poly import Poly, substitute


def monomials_below(n: int, N: int) -> List[Tuple[int, ...]]:
    """Exponent tuples in n variables of total degree < N, highest degree first."""
    out = []
    for d in range(N - 1, -1, -1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def translate(p: Poly, point: Mapping[str, object]) -> Poly:
    """p(v + point): moves ``point`` to the origin."""
    bind = {v: Poly.var(p.vars, v) + point[v] for v in p.vars if v in point and point[v] != 0}
    if not bind:
        return p
    return substitute(p, bind, vars=p.vars)


def local_length_at_origin(gens: Sequence[Poly], N: int) -> int:
    """dim k[v]/(gens + m^N); equals the local length at 0 when N is large enough."""
    if not gens:
        raise ValueError("need at least one generator")
    vars = gens[0].vars
    monos = monomials_below(len(vars), N)
    ech = Echelon(monos)
    for g in gens:
        low = {e: c for e, c in g.items() if sum(e) < N}
        if not low:
            continue
        for m in monos:
            dm = sum(m)
            v = {}
            for e, c in low.items():
                if sum(e) + dm < N:
                    v[tuple(a + b for a, b in zip(e, m))] = c
            if v:
                ech.insert(v)
        if ech.rank == len(monos):
            break
    return len(monos) - ech.rank


def local_length_at(gens: Sequence[Poly], point: Mapping[str, object], N: int) -> int:
    return local_length_at_origin([translate(g, point) for g in gens], N)
