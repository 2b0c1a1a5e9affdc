"""Upper-meridian-pair-preserving epimorphisms onto Heckoid groups.

``G(K(s)) -> Hecke(r; n)`` exists when ``s`` or ``s + 1`` lies in the orbit
of infinity under ``Gamma(r; m)``; for even ``m`` the converse holds too.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import OddIndexUnsupported
from .farey import Slope, eval_cf, to_positive_cf
from .orbits import FundamentalDomain, fundamental_domain, reduce_many


@dataclass(frozen=True)
class EpiResult:
    s: Slope
    r: Slope
    m: int
    admits: bool
    direction: str  # "iff" for even m, "sufficient" for odd m
    witness_reduction: str | None  # "inf", "inf_shifted" or None

    def __bool__(self):
        return self.admits

    def to_dict(self) -> dict:
        return {
            "s": str(self.s),
            "r": str(self.r),
            "m": self.m,
            "admits": self.admits,
            "direction": self.direction,
            "witness_reduction": self.witness_reduction,
        }


def admits_epimorphism(s, r, m: int, domain: FundamentalDomain | None = None) -> EpiResult:
    """Orbit-of-infinity test on ``s`` and ``s + 1``.

    Truthy iff the criterion holds.  For odd ``m`` a False answer only means
    the sufficient condition fails (``direction == "sufficient"``).
    """
    s, r = Slope.of(s), Slope.of(r)
    if s.is_inf:
        raise ValueError("s must be finite")
    dom = domain or fundamental_domain(r, m)
    a, b = reduce_many([s, s + 1], r, m, dom)
    witness = "inf" if a.is_inf else ("inf_shifted" if b.is_inf else None)
    direction = "iff" if m % 2 == 0 else "sufficient"
    return EpiResult(s, r, m, witness is not None, direction, witness)


def enumerate_epi_sources(r, m: int, max_den: int) -> list[Slope]:
    """All ``s`` in (0, 1) with ``den(s) <= max_den`` admitting an epimorphism, ascending."""
    if m % 2:
        raise OddIndexUnsupported(f"m = {m} is odd; only the sufficient direction is known")
    r = Slope.of(r)
    dom = fundamental_domain(r, m)
    cand = [Slope(q, p) for p in range(2, max_den + 1) for q in range(1, p) if gcd(q, p) == 1]
    red = reduce_many(cand, r, m, dom)
    red1 = reduce_many([s + 1 for s in cand], r, m, dom)
    out = [s for s, a, b in zip(cand, red, red1) if a.is_inf or b.is_inf]
    return sorted(out)


@dataclass(frozen=True)
class RileyFamilyParams:
    alpha: int
    beta: int
    d: int
    m: int
    e: int

    def __post_init__(self):
        if not (1 <= self.beta < self.alpha) or gcd(self.alpha, self.beta) != 1:
            raise ValueError("need coprime 1 <= beta < alpha")
        if self.d < 2:
            raise ValueError("need d >= 2")
        if self.m < 3:
            raise ValueError("need m >= 3")
        if self.e == 0:
            raise ValueError("e must be nonzero")
        a_star, b_star = self.alpha_star, self.beta_star
        if gcd(a_star, b_star) != 1:
            raise ValueError(f"(alpha*, beta*) = ({a_star}, {b_star}) are not coprime")

    @property
    def alpha_star(self) -> int:
        return self.alpha ** self.d * self.m

    @property
    def beta_star(self) -> int:
        return self.alpha ** (self.d - 1) * self.m * (self.alpha - self.beta) + self.e

    @property
    def target(self) -> Slope:
        """Slope ``(alpha - beta)/alpha`` of the Heckoid group the family maps onto."""
        return Slope(self.alpha - self.beta, self.alpha)

    @property
    def label(self) -> str:
        """``Hecke(beta/alpha; m/2)``, the mirror-isomorphic name of the target."""
        n = str(self.m // 2) if self.m % 2 == 0 else f"{self.m}/2"
        return f"Hecke({Slope(self.beta, self.alpha)};{n})"


def riley_family(params: RileyFamilyParams) -> Slope:
    return Slope(params.beta_star, params.alpha_star)


def riley_template_cf(params: RileyFamilyParams) -> tuple[int, ...]:
    """The expansion ``[a, m c, -a^-1]`` reproducing Riley's slope.

    Only ``e = +-1`` corresponds to a single template term; the central
    entry is ``m * c`` with ``c = eps * alpha**(d - 2)`` and ``(-1)**k * eps = e``.
    """
    if params.e not in (1, -1):
        raise ValueError("the one-term template covers e = +1 and e = -1 only")
    a = to_positive_cf(params.target).entries
    eps = params.e * (-1) ** len(a)
    c = eps * params.alpha ** (params.d - 2)
    return tuple(a) + (params.m * c,) + tuple(-x for x in reversed(a))


def riley_template_value(params: RileyFamilyParams) -> Slope:
    return eval_cf(riley_template_cf(params))
