"""Exact scalars: rationals and rational functions in the parameter lambda.

A scalar is either a :class:`fractions.Fraction` or a :class:`RatFunc`.
``RatFunc`` values are never constant: any rational function that reduces to
a constant is returned as a ``Fraction``, so equality between scalars is
plain ``==`` no matter which representation produced them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

PARAM = "lambda"

# dense univariate polynomials over Q: tuples of Fractions, lowest degree first,
# no trailing zeros; the zero polynomial is ().

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1] / lb
        k = len(r) - 1 - db
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = list(_trim(r))
    return _trim(q), _trim(r)


def _pmonic(a):
    if not a:
        return a
    return _pscale(a, 1 / a[-1])


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class RatFunc:
    """A non-constant element of Q(lambda), stored as reduced num/den with monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[Fraction], den: Sequence[Fraction]):
        # trusted constructor; use ratfunc() for normalisation
        self.num = tuple(num)
        self.den = tuple(den)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _parts(x):
        if isinstance(x, RatFunc):
            return x.num, x.den
        x = _as_fraction(x)
        return ((x,) if x else ()), (Fraction(1),)

    def __add__(self, other):
        try:
            a, b = RatFunc._parts(other)
        except TypeError:
            return NotImplemented
        return ratfunc(_padd(_pmul(self.num, b), _pmul(a, self.den)), _pmul(self.den, b))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b = RatFunc._parts(other)
        except TypeError:
            return NotImplemented
        return ratfunc(_psub(_pmul(self.num, b), _pmul(a, self.den)), _pmul(self.den, b))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den)

    def __pos__(self):
        return self

    def __mul__(self, other):
        try:
            a, b = RatFunc._parts(other)
        except TypeError:
            return NotImplemented
        return ratfunc(_pmul(self.num, a), _pmul(self.den, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b = RatFunc._parts(other)
        except TypeError:
            return NotImplemented
        if not a:
            raise ZeroDivisionError("division by zero scalar")
        return ratfunc(_pmul(self.num, b), _pmul(self.den, a))

    def __rtruediv__(self, other):
        a, b = RatFunc._parts(other)
        return ratfunc(_pmul(a, self.den), _pmul(b, self.num))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ratfunc(self.den, self.num) ** (-n)
        num, den = (Fraction(1),), (Fraction(1),)
        for _ in range(n):
            num, den = _pmul(num, self.num), _pmul(den, self.den)
        return ratfunc(num, den)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    # -- misc -------------------------------------------------------------
    def evaluate(self, value) -> Fraction:
        """Specialise lambda to a rational value."""
        value = _as_fraction(value)
        d = _peval(self.den, value)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {PARAM}={value}")
        return _peval(self.num, value) / d

    def is_negative_leading(self) -> bool:
        return self.num[-1] < 0


Scalar = Union[Fraction, RatFunc]


def ratfunc(num, den) -> Scalar:
    """Normalised rational function num/den; constants come back as Fraction."""
    num, den = _trim(num), _trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return Fraction(0)
    g = _pgcd(num, den)
    if len(g) > 1:
        num, den = _pdivmod(num, g)[0], _pdivmod(den, g)[0]
    lc = den[-1]
    num, den = _pscale(num, 1 / lc), _pscale(den, 1 / lc)
    if len(num) == 1 and len(den) == 1:
        return num[0]
    return RatFunc(num, den)


LAMBDA = RatFunc((Fraction(0), Fraction(1)), (Fraction(1),))


def to_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, RatFunc)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def has_parameter(x) -> bool:
    return isinstance(x, RatFunc)


def specialize(x: Scalar, value) -> Fraction:
    """Substitute lambda := value in a scalar."""
    if isinstance(x, RatFunc):
        return x.evaluate(value)
    return x


def is_negative(x: Scalar) -> bool:
    if isinstance(x, RatFunc):
        return x.is_negative_leading()
    return x < 0


def _format_dense(c) -> str:
    parts = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if a == 0:
            continue
        mono = "" if k == 0 else (PARAM if k == 1 else f"{PARAM}^{k}")
        neg = a < 0
        a = abs(a)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) or "0"


def format_scalar(x: Scalar) -> str:
    """Render a scalar in the polynomial text grammar (parseable back exactly)."""
    if isinstance(x, RatFunc):
        num = _wrap(x.num)
        if x.den == (Fraction(1),):
            return num
        return f"{num}/{_wrap(x.den)}"
    return str(x)


def _wrap(c) -> str:
    text = _format_dense(c)
    single = sum(1 for a in c if a != 0) == 1
    return text if single else f"({text})"


def scalar_sort_key(x: Scalar):
    if isinstance(x, RatFunc):
        return (1, Fraction(0), format_scalar(x))
    return (0, x, "")
