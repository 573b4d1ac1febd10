"""Exact sparse row reduction over Q or Q(lambda)."""

from __future__ import annotations

from typing import Dict, Hashable, List, Sequence

Vec = Dict[Hashable, object]


class Echelon:
    """Fully reduced row echelon basis of a growing subspace.

    ``priority`` lists the coordinates in pivot preference order: a new row
    takes its first nonzero coordinate in that list as pivot.  Coordinates
    that never become pivots index a basis of the quotient space.
    """

    def __init__(self, priority: Sequence[Hashable]):
        self.priority = list(priority)
        self._rank = {c: i for i, c in enumerate(self.priority)}
        self.rows: Dict[Hashable, Vec] = {}

    def reduce(self, v: Vec) -> Vec:
        v = {k: c for k, c in v.items() if c != 0}
        for p, row in self.rows.items():
            c = v.get(p)
            if c is None:
                continue
            for k, a in row.items():
                s = v.get(k, 0) - c * a
                if s == 0:
                    v.pop(k, None)
                else:
                    v[k] = s
        return v

    def insert(self, v: Vec) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = min(v, key=self._rank.__getitem__)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c is None:
                continue
            for k, a in v.items():
                s = row.get(k, 0) - c * a
                if s == 0:
                    row.pop(k, None)
                else:
                    row[k] = s
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[Hashable]:
        return [c for c in self.priority if c in self.rows]

    def free(self) -> List[Hashable]:
        return [c for c in self.priority if c not in self.rows]


def rank(vectors, priority) -> int:
    ech = Echelon(priority)
    for v in vectors:
        ech.insert(v)
    return ech.rank
