"""Monomial orders as sort keys over exponent tuples.

An order is described independently of any particular variable tuple and
compiled to a key function for a given ``vars`` tuple; the monomial with the
largest key is the leading one.  Variables listed in ``elim`` form a leading
block (elimination order), variables in ``params`` a trailing block that
behaves like coefficients of the field K(params).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

Exps = Tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    priority: Optional[Tuple[str, ...]] = None
    elim: Tuple[str, ...] = ()
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if set(self.elim) & set(self.params):
            raise ValueError("elimination block and parameter block overlap")

    def key(self, vars: Tuple[str, ...]) -> Callable[[Exps], tuple]:
        return _compile(self, tuple(vars))

    def main_vars(self, vars: Tuple[str, ...]) -> Tuple[str, ...]:
        """Variables of the middle block, in priority order."""
        rest = [v for v in vars if v not in self.elim and v not in self.params]
        if self.priority is not None:
            pri = [v for v in self.priority if v in rest]
            rest = pri + [v for v in rest if v not in pri]
        return tuple(rest)

    def with_params(self, params) -> "MonomialOrder":
        return MonomialOrder(self.kind, self.priority, self.elim, tuple(params))

    def __str__(self):
        s = self.kind
        if self.priority:
            s += "(" + ">".join(self.priority) + ")"
        if self.elim:
            s = "[" + ",".join(self.elim) + "] >> " + s
        if self.params:
            s += " >> [" + ",".join(self.params) + "]"
        return s


def lex(*priority: str) -> MonomialOrder:
    return MonomialOrder("lex", tuple(priority) or None)


def grevlex(*priority: str) -> MonomialOrder:
    return MonomialOrder("grevlex", tuple(priority) or None)


def _grevlex_key(idx):
    def key(e):
        sub = [e[i] for i in idx]
        return (sum(sub), tuple(-x for x in reversed(sub)))
    return key


def _lex_key(idx):
    def key(e):
        return tuple(e[i] for i in idx)
    return key


@lru_cache(maxsize=256)
def _compile(order: MonomialOrder, vars: Tuple[str, ...]):
    pos = {v: i for i, v in enumerate(vars)}
    for v in order.elim + order.params:
        if v not in pos:
            raise ValueError(f"order block variable {v!r} not in ring {vars}")
    main = [pos[v] for v in order.main_vars(vars)]
    main_key = _lex_key(main) if order.kind == "lex" else _grevlex_key(main)
    elim_key = _grevlex_key([pos[v] for v in order.elim]) if order.elim else None
    par_key = _grevlex_key([pos[v] for v in order.params]) if order.params else None
    if elim_key is None and par_key is None:
        return main_key

    def key(e):
        return (
            elim_key(e) if elim_key else (),
            main_key(e),
            par_key(e) if par_key else (),
        )

    return key


def divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


def quotient(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))
