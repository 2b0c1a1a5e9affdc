"""The group generated by s -> 2k +- s and a parabolic fixing r.

``Gamma(r; m)`` is the free product of the reflection group at infinity and
the cyclic group generated by the parabolic ``P`` that fixes ``r`` and shifts
its Farey neighbors by ``m`` places (``m = 2n`` is Riley's index).  Every
slope reduces to a unique representative in ``I(r; m) ∪ {inf, r}``; orbit
questions about simple loops are answered through that representative.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from . import kernels
from .errors import DegenerateDomain, IterationCapExceeded, OddIndexUnsupported
from .farey import (
    INF,
    MobiusMap,
    Slope,
    eval_cf,
    farey_neighbor,
    farey_parents,
    frame_matrix,
    to_positive_cf,
    translation,
)

REDUCE_CAP_BASE = 64

# generator names used in reduction words and the BFS oracle
NEG, REFL, PAR, PAR_INV = "R0", "R1", "P", "p"
GENERATORS = (NEG, REFL, PAR, PAR_INV)


def _check_index(m: int) -> int:
    m = int(m)
    if m < 3:
        raise ValueError(f"Riley index m = 2n must be >= 3, got {m}")
    return m


def _require_even(m: int) -> None:
    if m % 2:
        raise OddIndexUnsupported(f"m = {m} is odd; the theorem needs an integer index n = m/2 >= 2")


@dataclass(frozen=True)
class HeckoidIndex:
    """Riley's index ``m = 2n``; ``n`` may be a half-integer."""

    m: int

    def __post_init__(self):
        _check_index(self.m)

    @property
    def even(self) -> bool:
        return self.m % 2 == 0

    @property
    def n(self):
        return self.m // 2 if self.even else self.m / 2

    @classmethod
    def from_n(cls, n) -> "HeckoidIndex":
        """Accepts ``2``, ``"2"`` or ``"3/2"``."""
        if isinstance(n, str) and "/" in n:
            a, b = n.split("/")
            if int(b) != 2:
                raise ValueError(f"n must be an integer or half-integer, got {n}")
            return cls(int(a))
        return cls(2 * int(n))


def parabolic_generator(r, m: int) -> MobiusMap:
    """Parabolic fixing ``r`` with ``P(u_k) = u_{k+m}`` for the canonical neighbors."""
    r = Slope.of(r)
    if r.is_inf:
        raise ValueError("the parabolic center must be finite")
    F = frame_matrix(r)
    P = F @ translation(m) @ F.inverse()
    if P.trace < 0:
        P = -P
    return P


class LoopTag(str, Enum):
    NULL_HOMOTOPIC = "null_homotopic"
    TORSION = "torsion"
    ESSENTIAL = "essential"


@dataclass(frozen=True)
class LoopClass:
    tag: LoopTag
    representative: Slope

    def to_dict(self) -> dict:
        return {"class": self.tag.value, "rep": str(self.representative)}


@dataclass(frozen=True)
class FundamentalDomain:
    r: Slope
    m: int
    p_gen: MobiusMap
    j: int
    r1: Slope
    r2: Slope
    dropped: str = "r2"
    special: bool = False  # r = +-1/p mod Z, where the standard domain picture degenerates
    intervals: tuple[tuple[Slope, Slope], ...] = field(default=())

    @property
    def boundary(self) -> tuple[Slope, ...]:
        """Points of the boundary of the closed set, in increasing order."""
        pts = []
        for lo, hi in self.intervals:
            for x in (lo, hi):
                if x not in pts:
                    pts.append(x)
        return tuple(pts)

    def in_closed(self, s) -> bool:
        s = Slope.of(s)
        if s.is_inf:
            return False
        return any(lo <= s <= hi for lo, hi in self.intervals)

    def in_domain(self, s) -> bool:
        """Membership in ``I(r; m)``: the closed set minus the dropped endpoint."""
        s = Slope.of(s)
        return self.in_closed(s) and s != self.r2

    def in_interior(self, s) -> bool:
        s = Slope.of(s)
        return any(lo < s < hi for lo, hi in self.intervals)

    def in_excluded(self, s) -> bool:
        """Open arc around ``r`` that the parabolic fundamental wedge cuts away."""
        s = Slope.of(s)
        return not s.is_inf and self.r1 < s < self.r2

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "m": self.m,
            "r1": str(self.r1),
            "r2": str(self.r2),
            "dropped": self.dropped,
            "intervals": [[str(lo), str(hi)] for lo, hi in self.intervals],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fundamental_domain(r, m: int) -> FundamentalDomain:
    """Fundamental interval data for ``Gamma(r; m)``.

    The wedge at ``r`` is bounded by the edges to ``u_j`` and ``u_{j+m}``;
    ``j`` runs over the indices whose wedge avoids infinity and whose two
    endpoints lie strictly inside (0, 1).  Among those the pair with the
    smallest denominator sum wins, ties going to the smaller ``den(u_j)``.
    """
    r = Slope.of(r)
    m = _check_index(m)
    if r.is_inf or not (0 < r.num < r.den):
        raise ValueError(f"r must lie strictly between 0 and 1, got {r}")
    best = None
    for j in range(-m, 0):
        a, b = farey_neighbor(r, j), farey_neighbor(r, j + m)
        if not (Slope(0, 1) < a < Slope(1, 1) and Slope(0, 1) < b < Slope(1, 1)):
            continue
        key = (a.den + b.den, a.den)
        if best is None or key < best[0]:
            best = (key, j, a, b)
    if best is None:
        raise DegenerateDomain(f"no neighbor pair of {r} with both ends inside (0, 1) for m = {m}")
    _, j, r1, r2 = best
    assert r1 < r < r2
    P = parabolic_generator(r, m)
    assert P(r1) == r2
    special = r.num == 1 or r.num == r.den - 1
    intervals = ((Slope(0, 1), r1), (r2, Slope(1, 1)))
    return FundamentalDomain(r, m, P, j, r1, r2, "r2", special, intervals)


def _domain(r, m, domain: FundamentalDomain | None) -> FundamentalDomain:
    if domain is not None:
        return domain
    return fundamental_domain(r, m)


def _kernel_args(dom: FundamentalDomain):
    pp, qq = farey_parents(dom.r)
    return dom.r.num, dom.r.den, qq, pp, dom.j, dom.m


def reduce_many(slopes: Iterable, r, m: int, domain: FundamentalDomain | None = None,
                backend: str | None = None) -> list[Slope]:
    """Vectorized :func:`reduce_slope`."""
    dom = _domain(r, m, domain)
    pts = [(s.num, s.den) for s in map(Slope.of, slopes)]
    res = kernels.reduce_batch(pts, *_kernel_args(dom), REDUCE_CAP_BASE, backend=backend)
    out = []
    for (n, e, _letters, rounds, status), (n0, e0) in zip(res, pts):
        if status == kernels.CAPPED:
            raise IterationCapExceeded(f"reduction of {n0}/{e0} did not settle after {rounds} rounds")
        out.append(_finish(Slope(n, e), dom))
    return out


def _finish(s: Slope, dom: FundamentalDomain) -> Slope:
    if s == dom.r2:
        # the kernel already maps r2 to r1; keep the contract explicit
        return dom.r1
    return s


def reduce_slope(s, r, m: int, domain: FundamentalDomain | None = None) -> Slope:
    """The unique representative of the orbit of ``s`` in ``I(r; m) ∪ {inf, r}``."""
    return reduce_many([s], r, m, domain)[0]


def reduce_with_word(s, r, m: int, domain: FundamentalDomain | None = None):
    """Reduce ``s`` and return ``(s0, word)``; ``word`` lists generators in the
    order they were applied to ``s``.  Pure Python, exact."""
    dom = _domain(r, m, domain)
    s = Slope.of(s)
    P = dom.p_gen
    Pinv = P.inverse()
    F = frame_matrix(dom.r)
    Finv = F.inverse()
    word: list[str] = []
    cap = REDUCE_CAP_BASE + 4 * max(s.den, 1).bit_length()
    rounds = 0
    while True:
        if s.is_inf:
            return s, word
        f = s.fraction()
        k = (f.numerator // f.denominator) // 2
        if k:
            # s - 2k = (R0 R1)^k s
            word.extend([REFL, NEG] * k if k > 0 else [NEG, REFL] * (-k))
            s = s - 2 * k
        if s > Slope(1, 1):
            word.append(REFL)
            s = 2 - s
        if s == dom.r:
            return s, word
        if dom.r1 < s <= dom.r2:
            rounds += 1
            if rounds > cap:
                raise IterationCapExceeded(f"reduction of {s} exceeded {cap} rounds")
            x = Finv(s).fraction()
            k = (x - dom.j) // dom.m
            g = Pinv if k > 0 else P
            word.extend([PAR_INV if k > 0 else PAR] * abs(int(k)))
            s = (g ** abs(int(k)))(s)
            continue
        return s, word


def generator_map(name: str, P: MobiusMap) -> MobiusMap:
    return {
        NEG: MobiusMap(-1, 0, 0, 1),
        REFL: MobiusMap(-1, 2, 0, 1),
        PAR: P,
        PAR_INV: P.inverse(),
    }[name]


def apply_word(word: Iterable[str], s, P: MobiusMap) -> Slope:
    s = Slope.of(s)
    for g in word:
        s = generator_map(g, P)(s)
    return s


def invert_word(word: list[str]) -> list[str]:
    inv = {NEG: NEG, REFL: REFL, PAR: PAR_INV, PAR_INV: PAR}
    return [inv[g] for g in reversed(word)]


def same_orbit(s, s2, r, m: int, domain: FundamentalDomain | None = None) -> bool:
    dom = _domain(r, m, domain)
    a, b = reduce_many([s, s2], r, m, dom)
    return a == b


def classify_loop(s, r, m: int, domain: FundamentalDomain | None = None) -> LoopClass:
    """Null-homotopic (= peripheral), torsion, or essential with its representative."""
    _require_even(m)
    dom = _domain(r, m, domain)
    s0 = reduce_slope(s, r, m, dom)
    if s0.is_inf:
        return LoopClass(LoopTag.NULL_HOMOTOPIC, s0)
    if s0 == dom.r:
        return LoopClass(LoopTag.TORSION, s0)
    return LoopClass(LoopTag.ESSENTIAL, s0)


def orbit_bfs_oracle(seed, r, m: int, max_word_len: int, max_den: int,
                     den_cap: int | None = None, backend: str | None = None) -> set[Slope]:
    """Slopes of denominator ``<= max_den`` reached from ``seed`` by at most
    ``max_word_len`` generator applications.

    Plain breadth-first search with no domain logic.  ``den_cap`` prunes
    intermediate points with larger denominators (0 disables pruning); the
    default ``max_den * m * den(r)**2`` leaves room for one parabolic
    excursion beyond the output range.
    """
    seed, r = Slope.of(seed), Slope.of(r)
    P = parabolic_generator(r, m)
    if den_cap is None:
        den_cap = max_den * m * r.den * r.den
    seen = kernels.bfs_orbit((seed.num, seed.den), (P.a, P.b, P.c, P.d), max_word_len, den_cap,
                             backend=backend)
    return {Slope(n, e) for (n, e) in seen if e <= max_den}


# ---------------------------------------------------------------------------
# continued-fraction description of the orbit of infinity

def template_entries(r, m: int, eps: tuple[int, ...], cs: tuple[int, ...]) -> tuple[int, ...]:
    """Entries ``[e1 a, m c1, -e1 a^-1, 2 c2, e2 a, m c3, -e2 a^-1, ...]``.

    ``eps`` has length ``t``, ``cs = (c1, ..., c_{2t-1})``.
    """
    a = to_positive_cf(r).entries
    t = len(eps)
    if len(cs) != 2 * t - 1:
        raise ValueError("need 2t - 1 integers c_i for t signs")
    out: list[int] = []
    for i, e in enumerate(eps):
        if i:
            out.append(2 * cs[2 * i - 1])
        out.extend(e * x for x in a)
        out.append(m * cs[2 * i])
        out.extend(-e * x for x in reversed(a))
    return tuple(out)


def template_slope(r, m: int, c: int, eps: tuple[int, ...], cs: tuple[int, ...]) -> Slope:
    return eval_cf(template_entries(r, m, eps, cs), offset=2 * c)


def iter_template(r, m: int, t_max: int, c_bound: int):
    """Yield ``(slope, (c, eps, cs))`` over the bounded parameter box."""
    rng = range(-c_bound, c_bound + 1)
    for t in range(1, t_max + 1):
        for eps in itertools.product((1, -1), repeat=t):
            for cs in itertools.product(rng, repeat=2 * t - 1):
                entries = template_entries(r, m, eps, cs)
                base = eval_cf(entries)
                for c in rng:
                    yield base + 2 * c, (c, eps, cs)


def enumerate_template_slopes(r, m: int, t_max: int, c_bound: int) -> set[Slope]:
    return {s for s, _ in iter_template(r, m, t_max, c_bound)}


__all__ = [
    "HeckoidIndex",
    "FundamentalDomain",
    "LoopClass",
    "LoopTag",
    "parabolic_generator",
    "fundamental_domain",
    "reduce_slope",
    "reduce_many",
    "reduce_with_word",
    "same_orbit",
    "classify_loop",
    "orbit_bfs_oracle",
    "enumerate_template_slopes",
    "iter_template",
    "template_slope",
    "template_entries",
    "apply_word",
    "invert_word",
    "INF",
]
