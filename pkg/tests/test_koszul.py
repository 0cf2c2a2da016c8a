from math import comb

import pytest
from hypothesis import given, strategies as st

from stiffres.complexes import is_exact_at
from stiffres.koszul import SOP, cec_probe, is_sop, koszul, koszul_grade, lift_chain_map
from stiffres.modules import resolution_of_k
from stiffres.quotient import QuotientRing, grade


@pytest.mark.parametrize("n", [1, 2, 3])
def test_koszul_shape(n):
    A = QuotientRing.build("Q", "xyz"[:n], [])
    K = koszul(A.gens())
    assert K.ranks == [comb(n, i) for i in range(n + 1)]
    assert [list(K.degrees(i)) for i in range(n + 1)] == [[i] * comb(n, i) for i in range(n + 1)]


def test_koszul_signs(poly2):
    K = koszul(poly2.gens())
    assert K.d(1).to_strings() == [["x", "y"]]
    assert K.d(2).to_strings() == [["-y"], ["x"]]


def test_koszul_rejects_bad_elements(poly2):
    with pytest.raises(ValueError):
        koszul([poly2.zero()])
    with pytest.raises(ValueError):
        koszul([poly2(poly2.S("x + x^2"))])


@given(st.lists(st.sampled_from(["x", "y", "x^2", "x*y", "y^2", "x+y"]), min_size=1, max_size=3))
def test_koszul_grade_equals_ext_grade(gens):
    A = QuotientRing.build("Q", "xy", ["x*y"])
    c = A.ideal(gens)
    if c.is_zero():
        return
    assert koszul_grade(c) == grade(c)


def test_regular_sequence_koszul_is_exact(poly3):
    K = koszul([poly3(poly3.S(s)) for s in ("x^2", "y", "z")])
    assert all(is_exact_at(K, i) for i in range(1, 4))


@pytest.mark.parametrize("ring,sop,ok", [
    ([], ["x", "y"], True), ([], ["x"], False), ([], ["x", "x"], False),
    (["x*y"], ["x+y"], True), (["x*y"], ["x"], False), (["x^2", "y^2"], [], True),
])
def test_is_sop(ring, sop, ok):
    A = QuotientRing.build("Q", "xy", ring)
    assert is_sop([A(A.S(s)) for s in sop], A) is ok
    if not ok:
        with pytest.raises(ValueError):
            SOP(A, tuple(A(A.S(s)) for s in sop))


def test_lift_commutes_and_matches_known_map(xy_ring):
    A = xy_ring
    K = koszul([A(A.S("x+y"))])
    F = resolution_of_k(A, 2)
    phi = lift_chain_map(K, F)
    assert phi.commutes()
    assert [str(a) for a in phi.top().column(0)] == ["1", "1"]


@pytest.mark.parametrize("ring,sop", [
    ([], ["x^2", "y^2"]), ([], ["x", "y"]), (["x*y"], ["x^2+y^2"]), (["x^2"], ["y^2"]),
])
def test_cec_nonvanishing(ring, sop):
    A = QuotientRing.build("GF(101)", "xy", ring)
    rep = cec_probe(A, [A(A.S(s)) for s in sop], seeds=(0, 1, 2))
    assert rep.nonvanishing


def test_linear_sop_over_polynomial_ring_lifts_to_isomorphism(poly3):
    rep = cec_probe(poly3, poly3.gens(), seeds=(0, 1))
    assert all(o.nonzero_mod_m for o in rep.outcomes)
    # an SOP inside m^2 maps K_d into m F_d
    sq = [g ** 2 for g in poly3.gens()]
    rep = cec_probe(poly3, sq, seeds=(0,))
    assert rep.nonvanishing and not rep.outcomes[0].nonzero_mod_m


def test_seeded_lifts_differ_for_higher_degree_sop(poly2):
    A = poly2
    rep = cec_probe(A, [A(A.S("x^2")), A(A.S("y^2"))], seeds=(0, 1, 2, 3))
    assert len({tuple(map(str, o.column)) for o in rep.outcomes}) > 1
    assert rep.nonvanishing


def test_cec_on_non_cohen_macaulay_ring(plane_line):
    A = plane_line
    rep = cec_probe(A, [A(A.S("x+z")), A(A.S("y+z"))])
    assert rep.d == 2 and rep.nonvanishing


def test_cec_rejects_non_sop(poly2):
    with pytest.raises(ValueError):
        cec_probe(poly2, [poly2.gens()[0]])
