import cmath

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from heckoid.errors import NoGeometricCandidate, OddIndexUnsupported, RootFindingFailed
from heckoid.farey import Slope
from heckoid.orbits import fundamental_domain, orbit_bfs_oracle
from heckoid.representation import (IntPoly, complex_length, elliptic_residual, fricke_coordinate,
                                    heckoid_roots, identity_residual, limit_set_sample, mcshane_sum,
                                    orbit_trace_check, orbit_trace_deviation, representation_point,
                                    rho_matrix, rho_matrix_poly, select_geometric_root, trace_poly,
                                    u_trace)
from heckoid.words import inverse, u_word

from conftest import unit_slopes

SELECTED = {
    ("3/10", 4): (-1.6288973302620393 + 0.9752277918006738j, 1),
    ("2/9", 4): (-2.471094065055248 + 0.4915325386695012j, 1),
    ("2/5", 6): (-0.7502756555221087 + 1.4098168786262364j, -1),
}


@pytest.fixture(scope="module")
def points():
    return {key: select_geometric_root(*key) for key in SELECTED}


def test_intpoly():
    p = IntPoly((2, 0, 1))
    assert str(p) == "w^2 + 2" and p.degree == 2 and p(1j) == 1
    assert str(p.derivative()) == "2*w"
    assert (p * p - p * p).degree <= 0


def test_trace_poly_examples():
    assert str(trace_poly("abAB")) == "w^2 + 2"
    assert str(trace_poly("abaBAB")) == "-w^3 - 2*w^2 - w + 2"
    rows = [[c.coeffs for c in row] for row in rho_matrix_poly("abAB").rows()]
    assert rows == [[(1, 1, 1), (0, -1)], [(0, 0, 1), (1, -1)]]


words = st.text(alphabet="aAbB", min_size=0, max_size=14)


@given(words)
def test_det_one(w):
    assert rho_matrix_poly(w).det().coeffs in ((1,), (1, 0))  # identically 1


@given(words, words)
def test_trace_invariances(v, w):
    assert trace_poly(v + w).coeffs == trace_poly(w + v).coeffs
    assert trace_poly(inverse(w)).coeffs == trace_poly(w).coeffs


@settings(max_examples=40)
@given(unit_slopes(max_den=25), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_fricke_matches_word_trace(t, om):
    with mpmath.workdps(40):
        wt = trace_poly(u_word(t))(mpmath.mpc(om))
        assert abs(u_trace(t, om) - wt) <= 1e-20 * max(1, abs(wt))


def test_fricke_normalization():
    with mpmath.workdps(30):
        om = mpmath.mpc(0.3, 1.1)
        assert fricke_coordinate("1/0", om) == 0
        assert abs(fricke_coordinate("0", om) ** 2 + om) < 1e-25
        assert abs(fricke_coordinate("1", om) ** 2 - om) < 1e-25


def test_roots_one_half():
    roots = sorted(heckoid_roots("1/2", 4), key=lambda z: z.imag)
    assert len(roots) == 2
    assert abs(roots[1] - 1j * 2 ** 0.5) < 1e-12 and abs(roots[0] + 1j * 2 ** 0.5) < 1e-12


def test_root_count_degree():
    # tr u_r has degree p in omega; two signs unless m = 4
    assert trace_poly(u_word("2/5")).degree == 5
    assert len(heckoid_roots("2/5", 6)) == 10
    assert len(heckoid_roots("3/10", 4)) == 10


def test_complex_length():
    assert complex_length(2) == 0
    assert abs(complex_length(-2) - 1j * cmath.pi) < 1e-12
    assert abs(complex_length(10) - 2.2924316695611777) < 1e-12
    z = complex_length(3 + 4j)
    assert z.real >= 0 and abs(cmath.cosh(z) - (1.5 + 2j)) < 1e-12


@pytest.mark.parametrize("key", list(SELECTED))
def test_selected_roots_frozen(points, key):
    omega, sign = SELECTED[key]
    rp = points[key]
    assert abs(rp.omega - omega) < 1e-12 and rp.sign == sign
    assert rp.omega.real <= 0 <= rp.omega.imag
    filters = [d["filter"] for d in rp.provenance]
    assert filters[-1] == "selected" and "quadrant" in filters
    assert rp.residual < 1e-40


@pytest.mark.parametrize("key", list(SELECTED))
def test_elliptic_and_identity(points, key):
    rp = points[key]
    assert elliptic_residual(rp) < 1e-30
    dom = fundamental_domain(*key)
    assert identity_residual(rp, dom.r) > 1e-3  # u_r itself is only of finite order
    with mpmath.workdps(60):
        tr = rp.trace(dom.r)
        assert abs(abs(tr) - abs(2 * mpmath.cos(2 * mpmath.pi / key[1]))) < 1e-40


def test_identity_on_orbit_of_infinity(points):
    rp = points[("2/9", 4)]
    for s in ("71/324", "73/324"):
        assert identity_residual(rp, s) < 1e-40
    assert identity_residual(rp, "1/5") > 1e-3


def test_elliptic_needs_even(points):
    rp = representation_point("2/3", 3, heckoid_roots("2/3", 3)[0])
    with pytest.raises(OddIndexUnsupported):
        elliptic_residual(rp)
    with pytest.raises(OddIndexUnsupported):
        mcshane_sum(rp, 10)


def test_override_and_failure():
    rp = representation_point("3/10", 4, -1.63 + 0.98j)
    assert abs(rp.omega - SELECTED[("3/10", 4)][0]) < 1e-12
    assert rp.provenance[0]["filter"] == "override"
    with pytest.raises(RootFindingFailed):
        representation_point("1/2", 4, 0)  # critical point of w^2 + 2: Newton cannot start


def test_no_candidate_diagnostics():
    with pytest.raises(NoGeometricCandidate) as exc:
        select_geometric_root("3/10", 4, candidates=[1 + 1j, 2 - 1j])
    assert [d["filter"] for d in exc.value.diagnostics] == ["quadrant", "quadrant"]


def test_orbit_traces(points):
    rp = points[("3/10", 4)]
    samples = ["1/3", "2/7", "1/0", "5/16"]
    assert orbit_trace_deviation(rp, samples, 4) < 1e-30
    assert orbit_trace_check(rp, samples, 4)


def test_mcshane_one_half():
    rp = select_geometric_root("1/2", 4)
    rep = mcshane_sum(rp, 40)
    assert rep.residual < 1e-6 and not rep.warnings
    assert abs(rep.at(20) + 1) > rep.residual  # partial sums approach -1
    assert rep.at(40) == rep.final


def test_mcshane_report_shape(points):
    rp = points[("3/10", 4)]
    rep = mcshane_sum(rp, 20)
    dom = fundamental_domain("3/10", 4)
    assert set(rep.boundary_terms) == {str(s) for s in dom.boundary}
    d = rep.to_dict()
    assert d["target"] == -1 and len(d["partial_sums"]) == 20
    assert rep.at(1000) == rep.final
    with pytest.raises(KeyError):
        rep.at(0)


def test_mcshane_tail_shrinks(points):
    rp = points[("3/10", 4)]
    rep = mcshane_sum(rp, 40)
    assert abs(rep.at(40) - rep.at(30)) < abs(rep.at(20) - rep.at(10))


def test_limit_set_depth0():
    pts = limit_set_sample("2/9", 4, 0)
    assert [str(p.slope) for p in pts] == ["0/1", "1/5", "2/9", "7/31", "1/1"]
    assert all(p.word_length == 0 and p.seed == p.slope for p in pts)


def test_limit_set_closure():
    pts = limit_set_sample("3/10", 4, 3)
    vals = {p.slope for p in pts}
    deeper = {p.slope for p in limit_set_sample("3/10", 4, 4)}
    assert vals <= deeper
    orb = orbit_bfs_oracle("0", "3/10", 4, 3, 10 ** 9)
    zero_pts = {p.slope for p in pts if p.seed == Slope(0, 1)}
    assert zero_pts <= orb
    assert [p.value for p in pts if not p.slope.is_inf] == sorted(p.value for p in pts if not p.slope.is_inf)
