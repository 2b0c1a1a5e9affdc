"""Exact slope arithmetic on the extended rationals.

Slopes are reduced fractions ``num/den`` with ``den >= 0``; infinity is the
single value ``1/0``.  Everything here is integer-only: continued fractions
are evaluated through products of 2x2 integer matrices so zero partial
quotients and infinite values are harmless.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True, order=False)
class Slope:
    num: int
    den: int

    def __post_init__(self):
        n, d = self.num, self.den
        if d < 0:
            n, d = -n, -d
        if d == 0:
            if n == 0:
                raise ValueError("0/0 is not a slope")
            n = 1
        else:
            g = gcd(n, d)
            n, d = n // g, d // g
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def of(cls, value) -> "Slope":
        """Coerce an int, Fraction, "p/q" string or Slope."""
        if isinstance(value, Slope):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        if isinstance(value, tuple):
            return cls(*value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot make a slope from {value!r}")

    @classmethod
    def parse(cls, text: str) -> "Slope":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo", "∞"):
            return INF
        if "/" in t:
            a, b = t.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(t), 1)

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    def fraction(self) -> Fraction:
        if self.is_inf:
            raise ValueError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return float("inf") if self.is_inf else self.num / self.den

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self.num}/{self.den})"

    # ordering on finite slopes; infinity sorts last
    def _key(self):
        return (1, 0) if self.is_inf else (0, Fraction(self.num, self.den))

    def __lt__(self, other: "Slope") -> bool:
        return self._key() < Slope.of(other)._key()

    def __le__(self, other: "Slope") -> bool:
        return self._key() <= Slope.of(other)._key()

    def __gt__(self, other: "Slope") -> bool:
        return self._key() > Slope.of(other)._key()

    def __ge__(self, other: "Slope") -> bool:
        return self._key() >= Slope.of(other)._key()

    def __add__(self, k):
        if self.is_inf:
            return self
        f = self.fraction() + Fraction(k)
        return Slope(f.numerator, f.denominator)

    def __sub__(self, k):
        return self + (-Fraction(k))

    def __rsub__(self, k):
        if self.is_inf:
            return self
        f = Fraction(k) - self.fraction()
        return Slope(f.numerator, f.denominator)

    def __neg__(self):
        return self if self.is_inf else Slope(-self.num, self.den)


INF = Slope(1, 0)


@dataclass(frozen=True)
class PositiveCF:
    """Regular continued fraction ``[a_1, ..., a_k]`` of a slope in (0, 1)."""

    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        if any(x < 1 for x in e):
            raise ValueError("positive continued fraction needs entries >= 1")
        if e and e[-1] < 2:
            raise ValueError("last entry must be >= 2")
        object.__setattr__(self, "entries", e)

    def __len__(self):
        return len(self.entries)

    def reversed(self) -> tuple[int, ...]:
        return self.entries[::-1]

    def value(self) -> Slope:
        return eval_cf(SignedCF(0, self.entries))


@dataclass(frozen=True)
class SignedCF:
    """``offset + [b_1, ..., b_N]`` with arbitrary integer entries."""

    offset: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        object.__setattr__(self, "offset", int(self.offset))

    def to_json(self) -> str:
        return json.dumps({"offset": self.offset, "entries": list(self.entries)})

    @classmethod
    def from_json(cls, text: str) -> "SignedCF":
        d = json.loads(text)
        return cls(d.get("offset", 0), tuple(d["entries"]))


@dataclass(frozen=True)
class MobiusMap:
    """Integer matrix ``[[a, b], [c, d]]`` with determinant +-1 acting on slopes."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(f"determinant must be +-1, got {self.det}")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        # projective inverse; keeps the determinant
        s = self.det
        return MobiusMap(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def __neg__(self) -> "MobiusMap":
        return MobiusMap(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "MobiusMap":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        k = abs(k)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        # projective equality
        if not isinstance(other, MobiusMap):
            return NotImplemented
        t = (self.a, self.b, self.c, self.d)
        o = (other.a, other.b, other.c, other.d)
        return t == o or t == tuple(-x for x in o)

    def __hash__(self):
        t = (self.a, self.b, self.c, self.d)
        for x in t:
            if x != 0:
                if x < 0:
                    t = tuple(-y for y in t)
                break
        return hash(t)

    def __call__(self, s) -> Slope:
        return mobius_apply(self, s)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = MobiusMap(1, 0, 0, 1)
NEGATE = MobiusMap(-1, 0, 0, 1)  # s -> -s


def translation(k: int) -> MobiusMap:
    return MobiusMap(1, k, 0, 1)


def reflection(k: int) -> MobiusMap:
    """Reflection in the Farey edge from k to infinity: s -> 2k - s."""
    return MobiusMap(-1, 2 * k, 0, 1)


def mobius_apply(M: MobiusMap, s) -> Slope:
    s = Slope.of(s)
    if s.is_inf:
        return Slope(M.a, M.c)
    return Slope(M.a * s.num + M.b * s.den, M.c * s.num + M.d * s.den)


def _cf_matrix(entries: Iterable[int]) -> tuple[int, int, int, int]:
    # product of z -> 1/(b + z); each factor is [[0, 1], [1, b]]
    a, b, c, d = 1, 0, 0, 1
    for x in entries:
        a, b, c, d = b, a + b * x, d, c + d * x
    return a, b, c, d


def eval_cf(cf: SignedCF | Sequence[int], offset: int = 0) -> Slope:
    """Value of ``offset + [b_1, ..., b_N]`` where ``[b] = 1/(b_1 + 1/(b_2 + ...))``.

    The empty expansion evaluates to ``offset``.
    """
    if not isinstance(cf, SignedCF):
        cf = SignedCF(offset, tuple(cf))
    a, b, c, d = _cf_matrix(cf.entries)
    # the tail is applied to 0, so the value is b/d
    return Slope(b + cf.offset * d, d)


def to_positive_cf(s) -> PositiveCF:
    s = Slope.of(s)
    if s.is_inf or not (0 < s.num < s.den):
        raise ValueError(f"slope {s} is not in (0, 1)")
    out = []
    p, q = s.den, s.num  # s = q/p; 1/s = p/q
    while q:
        a, rem = divmod(p, q)
        out.append(a)
        p, q = q, rem
    return PositiveCF(tuple(out))


def farey_parents(r) -> tuple[int, int]:
    """Return ``(p', q')`` with ``p*q' - q*p' = 1`` and ``0 <= p' < p`` for ``r = q/p``."""
    r = Slope.of(r)
    if r.is_inf:
        raise ValueError("infinity has no canonical neighbor indexing")
    q, p = r.num, r.den
    pp = (-pow(q, -1, p)) % p if p > 1 else 0
    qq, rem = divmod(1 + q * pp, p)
    assert rem == 0
    return pp, qq


def farey_neighbor(r, k: int) -> Slope:
    """The k-th Farey neighbor ``u_k = (q' + k q)/(p' + k p)`` of ``r``."""
    r = Slope.of(r)
    pp, qq = farey_parents(r)
    return Slope(qq + k * r.num, pp + k * r.den)


def farey_neighbors(r, k_range: Iterable[int]) -> list[Slope]:
    r = Slope.of(r)
    pp, qq = farey_parents(r)
    return [Slope(qq + k * r.num, pp + k * r.den) for k in k_range]


def are_farey_neighbors(s, t) -> bool:
    s, t = Slope.of(s), Slope.of(t)
    return abs(s.num * t.den - s.den * t.num) == 1


def frame_matrix(r) -> MobiusMap:
    """Matrix sending infinity to r and each integer k to the neighbor u_k."""
    r = Slope.of(r)
    pp, qq = farey_parents(r)
    return MobiusMap(r.num, qq, r.den, pp)


def enumerate_slopes(lo, hi, max_den: int) -> list[Slope]:
    """All reduced fractions in ``[lo, hi]`` with denominator ``<= max_den``, ascending.

    Stern-Brocot descent: an interval between Farey neighbors is only split
    while the mediant denominator stays within ``max_den``.  The endpoints
    need not be Farey neighbors; the range is first covered by unit steps
    and the Farey subdivision is clipped to ``[lo, hi]``.
    """
    lo, hi = Slope.of(lo), Slope.of(hi)
    if lo.is_inf or hi.is_inf:
        raise ValueError("interval endpoints must be finite")
    flo, fhi = lo.fraction(), hi.fraction()
    if flo > fhi or max_den < 1:
        return []
    out: list[Slope] = []
    start = flo.numerator // flo.denominator
    stop = -(-fhi.numerator // fhi.denominator)
    for base in range(start, stop + 1):
        if flo <= base <= fhi:
            out.append(Slope(base, 1))
        if base == stop:
            break
        # in-order walk of the Stern-Brocot subtree between base and base + 1
        todo: list = [((base, 1), (base + 1, 1))]
        while todo:
            item = todo.pop()
            if isinstance(item, Slope):
                out.append(item)
                continue
            (a, b), (c, d) = item
            mn, md = a + c, b + d
            if md > max_den:
                continue
            m = Fraction(mn, md)
            if m < fhi and Fraction(c, d) > flo:
                todo.append(((mn, md), (c, d)))
            if flo <= m <= fhi:
                todo.append(Slope(mn, md))
            if Fraction(a, b) < fhi and m > flo:
                todo.append(((a, b), (mn, md)))
    return out
