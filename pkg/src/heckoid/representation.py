"""Parabolic representations ``rho_omega`` of the 2-bridge link group.

``a -> [[1, 1], [0, 1]]`` and ``b -> [[1, 0], [omega, 1]]``.  Traces of the
simple-loop words are exact integer polynomials in ``omega``; the Heckoid
polynomials are ``tr(u_r) -+ 2cos(2 pi / m)``.

Numerical work runs in mpmath at ``DPS`` digits: the words ``u_s`` for
slopes in the orbit of infinity are long, and their matrices only collapse
to the identity if ``omega`` is known far beyond double precision.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .errors import NoGeometricCandidate, OddIndexUnsupported, RootFindingFailed
from .farey import Slope, enumerate_slopes
from .kernels import bfs_orbit
from .orbits import FundamentalDomain, fundamental_domain
from .words import u_word

DPS = 60
FAIL_TOL = 1e-9


# ---------------------------------------------------------------------------
# exact polynomial matrices

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in omega, coefficients in ascending degree."""

    coeffs: tuple[int, ...] = (0,)

    def __post_init__(self):
        c = [int(x) for x in self.coeffs] or [0]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, k: int) -> "IntPoly":
        return cls((k,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:] or (0,))

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(f" {s} {b}" for s, b in terms[1:])


def _as_poly(x) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly.const(int(x))


OMEGA = IntPoly((0, 1))


@dataclass(frozen=True)
class MatPoly:
    a: IntPoly
    b: IntPoly
    c: IntPoly
    d: IntPoly

    def __matmul__(self, o: "MatPoly") -> "MatPoly":
        return MatPoly(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> IntPoly:
        return self.a * self.d - self.b * self.c

    def trace(self) -> IntPoly:
        return self.a + self.d

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


_ONE, _ZERO = IntPoly.const(1), IntPoly.const(0)
_GEN = {
    "a": MatPoly(_ONE, _ONE, _ZERO, _ONE),
    "A": MatPoly(_ONE, -_ONE, _ZERO, _ONE),
    "b": MatPoly(_ONE, _ZERO, OMEGA, _ONE),
    "B": MatPoly(_ONE, _ZERO, -OMEGA, _ONE),
}


def rho_matrix_poly(w: str) -> MatPoly:
    M = MatPoly(_ONE, _ZERO, _ZERO, _ONE)
    for ch in w:
        M = M @ _GEN[ch]
    return M


@lru_cache(maxsize=256)
def trace_poly(w: str) -> IntPoly:
    return rho_matrix_poly(w).trace()


# ---------------------------------------------------------------------------
# numerical matrices and traces

def rho_matrix(w: str, omega):
    """``rho_omega(w)`` as an mpmath matrix (call inside a suitable precision)."""
    om = mpmath.mpmathify(omega)
    g = {
        "a": mpmath.matrix([[1, 1], [0, 1]]),
        "A": mpmath.matrix([[1, -1], [0, 1]]),
        "b": mpmath.matrix([[1, 0], [om, 1]]),
        "B": mpmath.matrix([[1, 0], [-om, 1]]),
    }
    M = mpmath.eye(2)
    for ch in w:
        M = M * g[ch]
    return M


def _x_int(k: int, x0, x1):
    # x_{k+1} = -x_{k-1} along the integers, since x_inf = 0
    if k % 2 == 0:
        return -x0 if (k // 2) % 2 else x0
    return -x1 if ((k - 1) // 2) % 2 else x1


def fricke_coordinate(t, omega):
    """Trace ``x_t`` of the once-punctured-torus loop of slope ``t``.

    Normalized by ``x_inf = 0``, ``x_0^2 = -omega``, ``x_1^2 = omega`` and
    propagated by ``x_{s+t} = x_s x_t - x_{s-t}`` over Farey triangles.
    Only ``x_t**2`` is meaningful; the sign depends on the square-root lift.
    """
    t = Slope.of(t)
    if t.is_inf:
        return mpmath.mpf(0)
    om = mpmath.mpmathify(omega)
    x0, x1 = mpmath.sqrt(-om), mpmath.sqrt(om)
    n, d = t.num, t.den
    k = n // d
    xl = _x_int(k, x0, x1)
    if d == 1:
        return xl
    L, R = (k, 1), (k + 1, 1)
    xr, xo = _x_int(k + 1, x0, x1), mpmath.mpf(0)
    while True:
        M = (L[0] + R[0], L[1] + R[1])
        xm = xl * xr - xo
        if M == (n, d):
            return xm
        if n * M[1] < M[0] * d:
            R, xo, xr = M, xr, xm
        else:
            L, xo, xl = M, xl, xm


def u_trace(t, omega):
    """``tr rho_omega(u_t) = 2 - x_t**2``; agrees with the word trace on (0, 1)."""
    x = fricke_coordinate(t, omega)
    return 2 - x * x


# ---------------------------------------------------------------------------
# Heckoid roots

def trace_target(m: int):
    return 2 * mpmath.cos(2 * mpmath.pi / m)


def heckoid_polynomial(r, m: int, sign: int) -> tuple[IntPoly, object]:
    """``(tr u_r, tau)``: the roots of ``tr u_r - sign * tau`` are wanted."""
    return trace_poly(u_word(r)), sign * trace_target(m)


def _polish(poly: IntPoly, shift, z0, iters: int = 200):
    dpoly = poly.derivative()
    z = mpmath.mpc(z0)
    for _ in range(iters):
        f = poly(z) - shift
        df = dpoly(z)
        if df == 0:
            break
        step = f / df
        z -= step
        if abs(step) < mpmath.mpf(10) ** (-(mpmath.mp.dps - 5)) * max(1, abs(z)):
            break
    return z, abs(poly(z) - shift)


def _roots_hp(r, m: int) -> list[tuple[int, object, float]]:
    """``(sign, omega, residual)`` for all roots, polished at ``DPS`` digits."""
    out: list[tuple[int, object, float]] = []
    with mpmath.workdps(DPS):
        for sign in (1, -1):
            poly, shift = heckoid_polynomial(r, m, sign)
            coeffs = [float(c) for c in poly.coeffs]
            coeffs[0] -= float(shift)
            for z0 in np.roots(coeffs[::-1]):
                z, res = _polish(poly, shift, complex(z0))
                if res > FAIL_TOL:
                    raise RootFindingFailed(
                        f"root near {complex(z0):.6g} of tr(u_{r}) - ({sign})tau polishes only to {float(res):.3g}")
                if any(abs(z - w) < 1e-20 * max(1, abs(z)) for _, w, _ in out):
                    continue
                out.append((sign, z, float(res)))
    return out


def heckoid_roots(r, m: int) -> list[complex]:
    """All roots of ``tr(u_r) -+ 2cos(2 pi/m)``, polished and deduplicated."""
    r = Slope.of(r)
    if r.is_inf or not 0 < r.num < r.den:
        raise ValueError(f"r = {r} must lie in (0, 1)")
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    return [complex(z) for _, z, _ in _roots_hp(r, m)]


# ---------------------------------------------------------------------------
# representation points and geometric-root selection

@dataclass
class RepresentationPoint:
    r: Slope
    m: int
    omega: complex
    sign: int
    residual: float
    provenance: list = field(default_factory=list)
    omega_hp: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.omega_hp is None:
            self.omega_hp = mpmath.mpc(self.omega)

    def trace(self, s):
        with mpmath.workdps(DPS):
            return u_trace(s, self.omega_hp)

    def matrix(self, w: str):
        with mpmath.workdps(DPS):
            return rho_matrix(w, self.omega_hp)

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "m": self.m,
            "omega": [self.omega.real, self.omega.imag],
            "sign": self.sign,
            "residual": self.residual,
            "provenance": self.provenance,
        }


def _point_from(r: Slope, m: int, z0, provenance=None) -> RepresentationPoint:
    # pick the sign whose polynomial is smaller at z0, then polish once;
    # polishing both would let the wrong sign wander off to another root
    with mpmath.workdps(DPS):
        start = mpmath.mpc(z0)
        tau = trace_target(m)
        if abs(tau) < 1e-30:  # m = 4: both signs give the same polynomial
            sign = 1
        else:
            sign = min((1, -1), key=lambda sg: abs(trace_poly(u_word(r))(start) - sg * tau))
        poly, shift = heckoid_polynomial(r, m, sign)
        z, res = _polish(poly, shift, z0)
    if res > FAIL_TOL:
        raise RootFindingFailed(f"omega = {complex(z0)} is not near a Heckoid root (residual {float(res):.3g})")
    return RepresentationPoint(r, m, complex(z), sign, float(res), list(provenance or []), z)


def representation_point(r, m: int, omega) -> RepresentationPoint:
    """A point at a user-supplied ``omega``, polished onto the nearest root."""
    return _point_from(Slope.of(r), m, complex(omega), [{"filter": "override", "omega": _pair(omega)}])


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _sample_interior(dom: FundamentalDomain, max_den: int) -> list[Slope]:
    out = []
    for lo, hi in dom.intervals:
        out += [s for s in enumerate_slopes(lo, hi, max_den) if s != lo and s != hi]
    return out


def select_geometric_root(r, m: int, candidates: Sequence[complex] | None = None,
                          elliptic_den: int = 15, mcshane_den: int = 20) -> RepresentationPoint:
    """Heuristic pick of the discrete, geometric root among the Heckoid roots.

    Filters: closed quadrant ``Re <= 0, Im >= 0`` (with the generator
    convention used here the geometric roots sit there; it is the mirror of
    the first quadrant under ``omega -> -conj(omega)``); then no slope in the
    interior of the fundamental interval up to ``elliptic_den`` may have a
    real trace in (-2, 2); then the smallest ``|S + 1|`` of the McShane sum
    at ``mcshane_den`` wins.
    """
    r = Slope.of(r)
    if candidates is None:
        candidates = heckoid_roots(r, m)
    if not candidates:
        raise ValueError("no candidates supplied")
    dom = fundamental_domain(r, m)
    sample = _sample_interior(dom, elliptic_den)
    diags: list[dict] = []
    survivors = []
    for z in candidates:
        z = complex(z)
        tol = 1e-9 * max(1.0, abs(z))
        entry = {"omega": _pair(z)}
        if z.real > tol or z.imag < -tol:
            diags.append(entry | {"filter": "quadrant", "passed": False})
            continue
        try:
            pt = _point_from(r, m, z)
        except RootFindingFailed as exc:
            diags.append(entry | {"filter": "polish", "passed": False, "detail": str(exc)})
            continue
        bad = None
        with mpmath.workdps(DPS):
            for s in sample:
                t = u_trace(s, pt.omega_hp)
                if abs(mpmath.im(t)) < 1e-9 and -2 < mpmath.re(t) < 2:
                    bad = (s, complex(t))
                    break
        if bad is not None:
            diags.append(entry | {"filter": "elliptic", "passed": False,
                                  "detail": f"tr u_{bad[0]} = {bad[1].real:.6g} is elliptic"})
            continue
        rep = _mcshane(pt, dom, mcshane_den)
        resid = abs(rep.final + 1)
        diags.append(entry | {"filter": "mcshane", "passed": True, "residual": resid})
        survivors.append((resid, len(survivors), pt))
    if not survivors:
        raise NoGeometricCandidate(f"every candidate for r = {r}, m = {m} was filtered out", diags)
    survivors.sort(key=lambda t: (t[0], t[1]))
    chosen = survivors[0][2]
    chosen.provenance = diags + [{"filter": "selected", "omega": _pair(chosen.omega)}]
    return chosen


def elliptic_residual(rp: RepresentationPoint) -> float:
    """``min over signs of ||rho(u_r)^k -+ I||`` with ``k = m/2`` (``m`` even)."""
    if rp.m % 2:
        raise OddIndexUnsupported("the power check needs an integer index")
    k = rp.m // 2
    with mpmath.workdps(DPS):
        M = rho_matrix(u_word(rp.r) * k, rp.omega_hp)
        I = mpmath.eye(2)
        return float(min(mpmath.mnorm(M - I, 1), mpmath.mnorm(M + I, 1)))


def identity_residual(rp: RepresentationPoint, s) -> float:
    """``min ||rho(u_s) -+ I||``; zero when ``u_s`` dies in the Heckoid group."""
    with mpmath.workdps(DPS):
        M = rho_matrix(u_word(s), rp.omega_hp)
        I = mpmath.eye(2)
        return float(min(mpmath.mnorm(M - I, 1), mpmath.mnorm(M + I, 1)))


# ---------------------------------------------------------------------------
# complex lengths and the McShane sum

def complex_length(trace_alpha) -> complex:
    """``l`` with ``cosh l = trace_alpha / 2``, ``Re l >= 0``.

    On ``Re l = 0`` the imaginary part is taken in ``[0, 2 pi)``.
    """
    with mpmath.workdps(DPS):
        l = mpmath.acosh(mpmath.mpmathify(trace_alpha) / 2)
        if mpmath.re(l) < 0:
            l = -l
        if abs(mpmath.re(l)) < mpmath.mpf(10) ** (-(DPS - 10)):
            im = mpmath.im(l) % (2 * mpmath.pi)
            l = mpmath.mpc(0, im)
        return complex(l)


def _summand(t):
    # 1/(1 + e^l) with cosh l = -tr(u_s)/2, at working precision
    ta = -t
    l = mpmath.acosh(ta / 2)
    if mpmath.re(l) < 0:
        l = -l
    el = mpmath.exp(l)
    return 1 / (1 + el), abs(1 + el)


@dataclass
class McShaneReport:
    r: Slope
    m: int
    omega: complex
    sign: int
    partial_sums: list  # [(max_den, complex)]
    final: complex
    boundary_terms: dict  # slope string -> complex
    interior_count: int
    warnings: list = field(default_factory=list)
    target: int = -1

    @property
    def residual(self) -> float:
        return abs(self.final - self.target)

    def at(self, max_den: int) -> complex:
        for d, v in reversed(self.partial_sums):
            if d <= max_den:
                return v
        raise KeyError(max_den)

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "m": self.m,
            "omega": [self.omega.real, self.omega.imag],
            "sign": self.sign,
            "partial_sums": [[d, v.real, v.imag] for d, v in self.partial_sums],
            "final": [self.final.real, self.final.imag],
            "target": self.target,
            "boundary_terms": {k: [v.real, v.imag] for k, v in self.boundary_terms.items()},
            "interior_count": self.interior_count,
            "warnings": self.warnings,
        }


def _mcshane(rp: RepresentationPoint, dom: FundamentalDomain, max_den: int) -> McShaneReport:
    warnings = []
    with mpmath.workdps(DPS):
        om = rp.omega_hp
        boundary = {}
        base = mpmath.mpc(0)
        for s in dom.boundary:
            v, gap = _summand(u_trace(s, om))
            if gap < 1e-30:
                warnings.append(f"boundary slope {s} has a pole; skipped")
                continue
            boundary[str(s)] = complex(v)
            base += v
        by_den: dict[int, object] = {}
        interior = _sample_interior(dom, max_den)
        for s in interior:
            v, gap = _summand(u_trace(s, om))
            if gap < 1e-30:
                warnings.append(f"slope {s} has trace 2 (pole); skipped")
                continue
            by_den[s.den] = by_den.get(s.den, 0) + 2 * v
        partial = []
        acc = base
        for d in range(1, max_den + 1):
            acc += by_den.get(d, 0)
            partial.append((d, complex(acc)))
    return McShaneReport(rp.r, rp.m, rp.omega, rp.sign, partial, partial[-1][1] if partial else complex(base),
                         boundary, len(interior), warnings)


def mcshane_sum(rp: RepresentationPoint, max_den: int) -> McShaneReport:
    """Weighted sum of ``1/(1 + e^{l(beta_s)})`` over the fundamental interval.

    Interior slopes (by denominator) carry weight 2, the four boundary points
    weight 1; ``cosh l(beta_s) = -tr rho(u_s) / 2``.  Converges to ``-1``.
    """
    if rp.m % 2:
        raise OddIndexUnsupported(f"m = {rp.m} is odd; the identity needs an integer index")
    return _mcshane(rp, fundamental_domain(rp.r, rp.m), max_den)


# ---------------------------------------------------------------------------
# orbit traces and limit-set samples

def _orbit_points(s: Slope, dom: FundamentalDomain, depth: int) -> dict:
    P = dom.p_gen
    seed = (s.num, s.den)
    return bfs_orbit(seed, (P.a, P.b, P.c, P.d), depth, 0)


def orbit_trace_deviation(rp: RepresentationPoint, sample_slopes: Iterable, depth: int) -> float:
    """Largest ``| |tr u_{g s}| - |tr u_s| |`` over words ``g`` of length ``<= depth``."""
    dom = fundamental_domain(rp.r, rp.m)
    worst = 0.0
    with mpmath.workdps(DPS):
        for s in sample_slopes:
            s = Slope.of(s)
            ref = abs(u_trace(s, rp.omega_hp))
            for (n, e) in _orbit_points(s, dom, depth):
                dev = abs(abs(u_trace(Slope(n, e), rp.omega_hp)) - ref)
                worst = max(worst, float(dev))
    return worst


def orbit_trace_check(rp: RepresentationPoint, sample_slopes: Iterable, depth: int,
                      tol: float = 1e-6) -> bool:
    return orbit_trace_deviation(rp, sample_slopes, depth) <= tol


@dataclass(frozen=True)
class LimitPoint:
    slope: Slope
    value: float
    seed: Slope
    word_length: int


def limit_set_sample(r, m: int, depth: int) -> list[LimitPoint]:
    """Images of ``{r, r1, r2, 0, 1}`` under all words of length ``<= depth``.

    Each point is tagged with the seed reaching it by the shortest word
    (ties go to the earlier seed); sorted by value, infinity last.
    """
    r = Slope.of(r)
    dom = fundamental_domain(r, m)
    seeds = [r, dom.r1, dom.r2, Slope(0, 1), Slope(1, 1)]
    best: dict[tuple[int, int], tuple[int, int]] = {}
    for i, sd in enumerate(seeds):
        for pt, k in _orbit_points(sd, dom, depth).items():
            if pt not in best or (k, i) < best[pt]:
                best[pt] = (k, i)
    out = [LimitPoint(Slope(*pt), float(Slope(*pt)), seeds[i], k) for pt, (k, i) in best.items()]
    out.sort(key=lambda p: (p.slope, p.word_length))
    return out
