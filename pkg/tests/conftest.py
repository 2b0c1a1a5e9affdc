from math import gcd

import hypothesis.strategies as st
import pytest

from heckoid.farey import Slope


@st.composite
def unit_slopes(draw, max_den=60):
    """Slopes strictly inside (0, 1)."""
    p = draw(st.integers(2, max_den))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)


@st.composite
def slopes(draw, max_den=60, span=4):
    p = draw(st.integers(1, max_den))
    q = draw(st.integers(-span * p, span * p).filter(lambda q: gcd(q, p) == 1))
    return Slope(q, p)


# (r, m) pairs used throughout, with frozen fundamental-domain data
DOMAINS = {
    ("2/9", 4): ("1/5", "7/31"),
    ("3/10", 4): ("2/7", "10/33"),
    ("2/5", 6): ("1/3", "11/27"),
    ("2/3", 3): ("1/2", "5/7"),
}


@pytest.fixture(params=sorted(DOMAINS), ids=lambda k: f"{k[0]}-m{k[1]}")
def rm(request):
    return request.param


# acceptance criteria: number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(n: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
