"""Relator words of 2-bridge links and small cancellation for ``<a, b | u_r^n>``.

Words are plain strings over ``a, A, b, B`` where the capital letter is the
inverse generator.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .errors import NotDecomposable
from .farey import Slope

LETTERS = "aAbB"
_INV = {"a": "A", "A": "a", "b": "B", "B": "b"}


@dataclass(frozen=True)
class Letter:
    gen: str
    exp: int

    def __str__(self):
        return self.gen if self.exp > 0 else self.gen.upper()

    @classmethod
    def parse(cls, ch: str) -> "Letter":
        if ch not in _INV:
            raise ValueError(f"unknown letter {ch!r}")
        return cls(ch.lower(), 1 if ch.islower() else -1)


def _check(w: str) -> str:
    bad = set(w) - set(LETTERS)
    if bad:
        raise ValueError(f"letters {sorted(bad)} are not in {{a, A, b, B}}")
    return w


def inverse(w: str) -> str:
    return "".join(_INV[c] for c in reversed(w))


def free_reduce(w: str) -> str:
    out: list[str] = []
    for c in _check(w):
        if out and out[-1] == _INV[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def is_freely_reduced(w: str) -> bool:
    return all(w[i + 1] != _INV[w[i]] for i in range(len(w) - 1))


def is_cyclically_reduced(w: str) -> bool:
    return is_freely_reduced(w) and (len(w) < 2 or w[0] != _INV[w[-1]])


def cyclic_reduce(w: str) -> str:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == _INV[w[-1]]:
        w = w[1:-1]
    return w


def rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))] if w else [""]


def exponent_sum(w: str, gen: str) -> int:
    return w.count(gen.lower()) - w.count(gen.upper())


def pretty(w: str) -> str:
    """``aBA`` -> ``a b⁻¹ a⁻¹``."""
    return " ".join(c if c.islower() else c.lower() + "⁻¹" for c in w)


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation; stored as its least rotation."""

    letters: str

    def __post_init__(self):
        w = _check(self.letters)
        if not is_cyclically_reduced(w):
            raise ValueError(f"{w} is not cyclically reduced")
        object.__setattr__(self, "letters", min(rotations(w)) if w else w)

    def __len__(self):
        return len(self.letters)

    def contains(self, sub: str) -> bool:
        """Whether ``sub`` reads off the cycle (length at most one full turn)."""
        n = len(self.letters)
        if not sub or n == 0 or len(sub) > n:
            return not sub
        return sub in self.letters + self.letters[: len(sub) - 1]


# ---------------------------------------------------------------------------

def epsilon_sequence(q: int, p: int) -> list[int]:
    """``eps_i = (-1)**floor(i q / p)`` for ``i = 1 .. p - 1``."""
    if gcd(q, p) != 1:
        raise ValueError(f"q = {q} and p = {p} must be coprime")
    if not 0 < q < p:
        raise ValueError("need 0 < q < p")
    return [-1 if (i * q // p) % 2 else 1 for i in range(1, p)]


def _power(gen: str, e: int) -> str:
    return gen if e > 0 else gen.upper()


def u_hat(r) -> str:
    r = Slope.of(r)
    eps = epsilon_sequence(r.num, r.den)
    return "".join(_power("b" if i % 2 == 0 else "a", e) for i, e in enumerate(eps))


def u_word(r) -> str:
    """Relator ``u_r`` of the 2-bridge link group, length ``2p`` for ``r = q/p``."""
    r = Slope.of(r)
    if r.is_inf or not 0 < r.num < r.den:
        raise ValueError(f"r = {r} must lie in (0, 1)")
    q, p = r.num, r.den
    h = u_hat(r)
    if p % 2:
        mid = "b" if q % 2 == 0 else "B"
    else:
        mid = "A"
    return "a" + h + mid + inverse(h)


def relator_presentation(r, n: int) -> tuple[tuple[str, str], str]:
    if n < 2:
        raise ValueError(f"index n must be >= 2, got {n}")
    return ("a", "b"), u_word(r) * n


# ---------------------------------------------------------------------------
# symmetrized sets and pieces

@dataclass(frozen=True)
class SymmetrizedSet:
    words: frozenset

    def __post_init__(self):
        ws = frozenset(self.words)
        lengths = {len(w) for w in ws}
        if len(lengths) > 1:
            raise ValueError("elements of a symmetrized set share one length")
        for w in ws:
            if not is_cyclically_reduced(w):
                raise ValueError(f"{w} is not cyclically reduced")
        object.__setattr__(self, "words", ws)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words))

    def __contains__(self, w):
        return w in self.words

    def is_closed(self) -> bool:
        return all(inverse(w) in self.words and w[1:] + w[:1] in self.words for w in self.words)


def symmetrized_set(w: str) -> SymmetrizedSet:
    if not is_cyclically_reduced(_check(w)):
        raise ValueError(f"{w} is not cyclically reduced")
    return SymmetrizedSet(frozenset(rotations(w)) | frozenset(rotations(inverse(w))))


def _lcp(x: str, y: str) -> int:
    k = 0
    for a, b in zip(x, y):
        if a != b:
            break
        k += 1
    return k


def _piece_reach(R: SymmetrizedSet) -> dict[str, int]:
    # for each element, the longest prefix it shares with another element;
    # in sorted order the best partner is always an adjacent one
    ws = sorted(R.words)
    reach = {}
    for i, w in enumerate(ws):
        best = 0
        if i > 0:
            best = _lcp(w, ws[i - 1])
        if i + 1 < len(ws):
            best = max(best, _lcp(w, ws[i + 1]))
        reach[w] = best
    return reach


def pieces(R: SymmetrizedSet) -> frozenset:
    """Nonempty common prefixes of pairs of distinct elements of ``R``."""
    if len(R) < 2:
        raise ValueError("pieces need at least two relator words")
    out = set()
    for w, k in _piece_reach(R).items():
        out.update(w[:i] for i in range(1, k + 1))
    return frozenset(out)


def min_piece_count(w: str, P) -> int:
    """Fewest pieces from ``P`` whose concatenation is ``w`` (dynamic programming)."""
    n = len(w)
    if n == 0:
        return 0
    maxlen = max((len(x) for x in P), default=0)
    INF = n + 1
    best = [INF] * (n + 1)
    best[0] = 0
    for i in range(n):
        if best[i] == INF:
            continue
        for k in range(1, min(maxlen, n - i) + 1):
            if w[i:i + k] in P and best[i] + 1 < best[i + k]:
                best[i + k] = best[i] + 1
    if best[n] == INF:
        raise NotDecomposable(f"{w} is not a product of pieces")
    return best[n]


def _prefix_counts(w: str, P) -> list[int]:
    # piece count of every prefix of w, via the same DP run once
    n = len(w)
    maxlen = max((len(x) for x in P), default=0)
    INF = n + 1
    best = [INF] * (n + 1)
    best[0] = 0
    for i in range(n):
        if best[i] == INF:
            continue
        for k in range(1, min(maxlen, n - i) + 1):
            if w[i:i + k] in P and best[i] + 1 < best[i + k]:
                best[i + k] = best[i] + 1
    return best


@dataclass
class SmallCancellationReport:
    r: Slope
    n: int
    c_holds: bool
    t4_holds: bool
    relator_length: int
    set_size: int
    min_pieces: int
    piece_count: int
    max_piece_len: int
    histogram: dict[int, int] = field(default_factory=dict)
    t4_witness: tuple[str, str, str] | None = None

    def to_dict(self) -> dict:
        return {
            "r": str(self.r),
            "n": self.n,
            "C": "holds" if self.c_holds else "fails",
            "T4": "holds" if self.t4_holds else "fails",
            "relator_length": self.relator_length,
            "set_size": self.set_size,
            "min_pieces": self.min_pieces,
            "piece_count": self.piece_count,
            "max_piece_len": self.max_piece_len,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def t4_violation(R: SymmetrizedSet):
    """A triple with cancellation at all three junctions, or None."""
    by_first: dict[str, list[str]] = {}
    for w in R.words:
        by_first.setdefault(w[0], []).append(w)
    for w1 in sorted(R.words):
        i1 = inverse(w1)
        for w2 in by_first.get(_INV[w1[-1]], ()):
            if w2 == i1:
                continue
            i2 = inverse(w2)
            for w3 in by_first.get(_INV[w2[-1]], ()):
                if w3 == i2 or w1 == inverse(w3):
                    continue
                if w3[-1] == _INV[w1[0]]:
                    return w1, w2, w3
    return None


def check_small_cancellation(r, n: int) -> SmallCancellationReport:
    """C(4n) and T(4) for the symmetrized closure of ``u_r^n``."""
    r = Slope.of(r)
    _, rel = relator_presentation(r, n)
    R = symmetrized_set(rel)
    P = pieces(R)
    counts = [min_piece_count(w, P) for w in R]
    hist = Counter(len(x) for x in P)
    witness = t4_violation(R)
    return SmallCancellationReport(
        r=r,
        n=n,
        c_holds=min(counts) >= 4 * n,
        t4_holds=witness is None,
        relator_length=len(rel),
        set_size=len(R),
        min_pieces=min(counts),
        piece_count=len(P),
        max_piece_len=max(hist),
        histogram=dict(hist),
        t4_witness=witness,
    )


def critical_subwords(r, n: int) -> set[str]:
    """Shortest subwords of the cyclic words ``(u_r^{+-n})`` that need exactly
    ``4n - 1`` pieces, one per starting point.

    Every subword needing exactly ``4n - 1`` pieces begins with one of these,
    since prefix piece counts grow by at most one per letter.
    """
    _, rel = relator_presentation(r, n)
    R = symmetrized_set(rel)
    P = pieces(R)
    target = 4 * n - 1
    out = set()
    for w in R:
        counts = _prefix_counts(w, P)
        for k in range(1, len(w) + 1):
            if counts[k] == target:
                out.add(w[:k])
                break
    return out


def required_subword_check(s, r, n: int, _critical: set[str] | None = None) -> bool:
    """Necessary condition for ``u_s = 1`` in ``<a, b | u_r^n>``.

    True iff the cyclic word ``(u_s)`` contains a subword of ``(u_r^{+-n})``
    that is a product of ``4n - 1`` pieces and of no fewer.
    """
    crit = _critical if _critical is not None else critical_subwords(r, n)
    cyc = CyclicWord(u_word(s))
    return any(cyc.contains(w) for w in crit)
