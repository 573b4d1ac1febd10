"""Independent reference computations used by the tests.

Nothing here calls the package's Groebner or discriminant code.
"""

from __future__ import annotations

import itertools
import random

# Res_x(p, p') for p = x^3 + x^2 + t(1-t)x - t^2, from sympy.resultant and
# frozen here; coefficients of t^6 .. t^0.  The classical discriminant of a
# monic cubic is the negative of this resultant.
FAMILY_RESULTANT_COEFFS = (-4, 12, -4, 24, -5, 0, 0)
FAMILY_DISCRIMINANT_COEFFS = tuple(-c for c in FAMILY_RESULTANT_COEFFS)

PRIME = 2_147_483_647


def _monomials(n_vars, max_deg):
    out = []
    for d in range(max_deg + 1):
        for e in itertools.product(range(d + 1), repeat=n_vars):
            if sum(e) == d:
                out.append(e)
    return out


def macaulay_length(gens, max_deg=9, extra=6, p=PRIME):
    """dim k[x,y]_{<=D} / (I intersected with k[x,y]_{<=D}) by Macaulay-matrix rank mod p.

    ``gens`` are dicts {(i, j): int}.  I_{<=D} is approximated by the span of
    m*g with deg(m*g) <= D + extra; columns above degree D are eliminated first
    so the rows left with a pivot at degree <= D span the intersection.  For a
    zero-dimensional ideal this affine Hilbert function equals the length once
    D is past the regularity.
    """
    top = max_deg + extra
    cols = sorted(_monomials(2, top), key=lambda e: (-sum(e), e))
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for g in gens:
        dg = max(sum(e) for e in g)
        for m in _monomials(2, top - dg):
            row = {}
            for e, c in g.items():
                k = index[(e[0] + m[0], e[1] + m[1])]
                row[k] = (row.get(k, 0) + c) % p
            row = {k: c for k, c in row.items() if c}
            if row:
                rows.append(row)
    pivots = {}
    for row in rows:
        while row:
            lead = min(row)
            if lead not in pivots:
                inv = pow(row[lead], p - 2, p)
                pivots[lead] = {k: c * inv % p for k, c in row.items()}
                break
            prow, c = pivots[lead], row[lead]
            for k, v in prow.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    low = sum(1 for k in pivots if sum(cols[k]) <= max_deg)
    n_low = sum(1 for e in cols if sum(e) <= max_deg)
    return n_low - low


def random_ideal(rng: random.Random, n_gens=2, max_deg=3, coeff=5):
    gens = []
    for _ in range(n_gens):
        d = rng.randint(1, max_deg)
        mons = _monomials(2, d)
        g = {}
        for e in rng.sample(mons, k=min(len(mons), rng.randint(2, 4))):
            c = rng.randint(-coeff, coeff)
            if c:
                g[e] = c
        top = [e for e in mons if sum(e) == d]
        e = rng.choice(top)
        g[e] = g.get(e, 0) or rng.choice([-2, -1, 1, 2, 3])
        gens.append(g)
    return gens


def to_text(g):
    return " + ".join(f"({c})*x^{e[0]}*y^{e[1]}" for e, c in sorted(g.items())) or "0"
