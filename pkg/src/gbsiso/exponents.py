"""Exponent vectors: the group Z/2 + Z^(primes) used to label edge ends.

A nonzero integer n = (-1)^s * prod p^e is stored as a parity bit ``s`` and a
sparse map prime -> exponent.  Order, support and positivity ignore the parity.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from sympy import factorint

from .errors import NotInPositiveCone, ParseError, ZeroLabel


class ExpVector:
    """Element of Z/2 + Z^P with finitely many nonzero exponents."""

    __slots__ = ("_exps", "_parity", "_hash")

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = (), parity: int = 0):
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict[int, int] = {}
        for p, e in items:
            if e:
                acc[p] = acc.get(p, 0) + e
        self._exps = tuple(sorted((p, e) for p, e in acc.items() if e))
        self._parity = parity & 1
        self._hash = hash((self._exps, self._parity))

    @classmethod
    def from_coords(cls, primes: Sequence[int], coords: Sequence[int], parity: int = 0) -> "ExpVector":
        if len(primes) != len(coords):
            raise ValueError("primes and coords differ in length")
        return cls(zip(primes, coords), parity)

    @classmethod
    def torsion(cls) -> "ExpVector":
        return cls((), 1)

    @property
    def exps(self) -> tuple[tuple[int, int], ...]:
        return self._exps

    @property
    def parity(self) -> int:
        return self._parity

    def get(self, p: int) -> int:
        for q, e in self._exps:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self._exps)

    def coords(self, primes: Sequence[int]) -> tuple[int, ...]:
        d = dict(self._exps)
        return tuple(d.get(p, 0) for p in primes)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self._exps)

    def support(self) -> frozenset[int]:
        return frozenset(p for p, _ in self._exps)

    def is_zero(self) -> bool:
        return not self._exps and not self._parity

    def is_parity_only(self) -> bool:
        """True when the exponent part vanishes (the element is 0 or the torsion element)."""
        return not self._exps

    def is_nonneg(self) -> bool:
        return all(e > 0 for _, e in self._exps)

    def is_positive_on(self, primes: Iterable[int]) -> bool:
        return all(self.get(p) > 0 for p in primes)

    def geq(self, other: "ExpVector") -> bool:
        return (self - other).is_nonneg()

    def same_exps(self, other: "ExpVector") -> bool:
        return self._exps == other._exps

    def drop_parity(self) -> "ExpVector":
        return ExpVector(self._exps, 0)

    def __add__(self, other: "ExpVector") -> "ExpVector":
        if not isinstance(other, ExpVector):
            return NotImplemented
        return ExpVector(self._exps + other._exps, self._parity + other._parity)

    def __sub__(self, other: "ExpVector") -> "ExpVector":
        if not isinstance(other, ExpVector):
            return NotImplemented
        return ExpVector(self._exps + tuple((p, -e) for p, e in other._exps), self._parity + other._parity)

    def __neg__(self) -> "ExpVector":
        return ExpVector(tuple((p, -e) for p, e in self._exps), self._parity)

    def __mul__(self, k: int) -> "ExpVector":
        if not isinstance(k, int):
            return NotImplemented
        return ExpVector(tuple((p, k * e) for p, e in self._exps), k * self._parity)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpVector):
            return NotImplemented
        return self._exps == other._exps and self._parity == other._parity

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (self._exps, self._parity)

    def abs_size(self) -> int:
        return sum(abs(e) for _, e in self._exps)

    def __repr__(self) -> str:
        return f"ExpVector({dict(self._exps)!r}, parity={self._parity})"

    def __str__(self) -> str:
        return format_monomial(self)


ZERO = ExpVector()
TORSION = ExpVector.torsion()


def controls(a: ExpVector, w: ExpVector, b: ExpVector) -> bool:
    """The loop a -> a+w can slide an endpoint sitting at b repeatedly:
    b - a >= 0 and every prime of b - a divides w."""
    for name, x in (("a", a), ("w", w), ("b", b)):
        if not x.is_nonneg():
            raise NotInPositiveCone(f"{name} has a negative exponent")
    d = b - a
    return d.is_nonneg() and d.support() <= w.support()


def union_primes(*vectors: ExpVector) -> tuple[int, ...]:
    out: set[int] = set()
    for v in vectors:
        out.update(v.support())
    return tuple(sorted(out))


def factorize(n: int) -> ExpVector:
    """Factor a nonzero integer into sign parity and prime exponents."""
    if n == 0:
        raise ZeroLabel("zero has no exponent vector")
    return ExpVector(factorint(abs(n)), 1 if n < 0 else 0)


def to_int(v: ExpVector) -> int:
    if not v.is_nonneg():
        raise ValueError(f"{v!r} is not an integer")
    out = -1 if v.parity else 1
    for p, e in v.exps:
        out *= p ** e
    return out


_FACTOR = re.compile(r"^(\d+)(?:\^(-?\d+))?$")


def parse_monomial(text: str, allow_negative: bool = False) -> ExpVector:
    """Parse ``-2^11*3^13``, ``27`` or ``1`` style text.

    Bases that are not prime are factored.  Negative exponents are accepted
    only with ``allow_negative`` (for vectors that are not labels).
    """
    s = text.strip().replace("·", "*").replace(" ", "")
    if not s:
        raise ParseError("empty label")
    parity = 0
    if s[0] in "+-":
        parity = 1 if s[0] == "-" else 0
        s = s[1:]
    acc = ExpVector((), parity)
    for part in s.split("*"):
        m = _FACTOR.match(part)
        if not m:
            raise ParseError(f"malformed factor {part!r} in {text!r}")
        base = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if base == 0:
            raise ParseError(f"zero label in {text!r}")
        if exp < 0 and not allow_negative:
            raise ParseError(f"negative exponent in label {text!r}")
        acc = acc + exp * ExpVector(factorint(base))
    if not allow_negative and not acc.is_nonneg():
        raise ParseError(f"label {text!r} is not an integer")
    return acc


def format_monomial(v: ExpVector, sep: str = "*") -> str:
    body = sep.join(str(p) if e == 1 else f"{p}^{e}" for p, e in v.exps) or "1"
    return ("-" if v.parity else "") + body


def parse_label(text: str) -> ExpVector:
    return parse_monomial(text, allow_negative=False)


def format_label(v: ExpVector) -> str:
    return format_monomial(v)
