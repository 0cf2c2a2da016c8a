import pytest
from hypothesis import given, strategies as st

from stiffres.delta import (NotGorensteinError, delta, direct_sum, is_cohen_macaulay,
                            is_gorenstein, non_minimal_surjections, theorem9_audit)
from stiffres.modules import PresentedModule, is_surjective
from stiffres.quotient import QuotientRing


@pytest.mark.parametrize("vars_,ring,cm,gor", [
    ("xy", [], True, True), ("xy", ["x*y"], True, True), ("xy", ["x^2"], True, True),
    ("xyz", ["x*z", "y*z"], False, False), ("xy", ["x^2", "y^2"], True, True),
    ("xy", ["x^2", "x*y", "y^2"], True, False), ("xy", ["x^2", "x*y"], False, False),
])
def test_cm_and_gorenstein_flags(vars_, ring, cm, gor):
    A = QuotientRing.build("Q", vars_, ring)
    assert is_cohen_macaulay(A) is cm
    assert is_gorenstein(A) is gor


def cyc(A, gens):
    return PresentedModule.cyclic(A.ideal(gens))


@pytest.mark.parametrize("ring,regular", [([], True), (["x*y"], False), (["x^2"], False),
                                          (["x^2", "y^2"], False)])
def test_delta_of_free_and_residue_field(ring, regular):
    A = QuotientRing.build("Q", "xy", ring)
    assert delta(PresentedModule.free(A, 1)).delta == 1
    assert delta(PresentedModule.free(A, 2)).delta == 2
    # delta(k) = 1 exactly for regular rings
    assert delta(cyc(A, ["x", "y"])).delta == (1 if regular else 0)


@given(st.lists(st.sampled_from(["x", "y", "x^2", "x*y", "y^3", "x+y"]), min_size=1, max_size=3))
def test_delta_over_polynomial_ring_is_generator_count(gens):
    # over a regular ring the only MCM modules are free, so delta(M) = mu(M)
    A = QuotientRing.build("GF(101)", "xy", [])
    M = cyc(A, gens)
    rep = delta(M, extra=2, seed=len(gens))
    assert rep.delta == M.minimal_generator_count() == 1
    assert rep.consistent


def test_delta_is_additive(xy_ring):
    A = xy_ring
    R = PresentedModule.free(A, 1)
    Mx = cyc(A, ["x"])
    assert delta(Mx).delta == 0
    assert delta(direct_sum(R, Mx)).delta == 1
    assert delta(direct_sum(Mx, cyc(A, ["y"]))).delta == 0


def test_non_minimal_surjections_are_surjective(xy_ring):
    M = cyc(xy_ring, ["x"])
    for p in non_minimal_surjections(M, 4, seed=3):
        assert p.ncols == M.ngens + 1
        assert is_surjective(p, M)


def test_delta_needs_gorenstein(plane_line):
    with pytest.raises(NotGorensteinError):
        delta(PresentedModule.free(plane_line, 1))


@pytest.mark.parametrize("gens,instance,reason", [
    (["x"], True, None), (["y"], True, None),
    (["x+y"], False, "not an ideal of zerodivisors"), ([], False, "ideal is zero"),
    (["1"], False, "ideal is not proper"),
])
def test_theorem9_audit_on_xy(xy_ring, gens, instance, reason):
    rep = theorem9_audit(xy_ring, xy_ring.ideal(gens))
    assert rep.instance is instance
    if instance:
        assert rep.ok and rep.delta.consistent
    else:
        assert rep.reason.startswith(reason)


def test_theorem9_rejects_non_unmixed():
    A = QuotientRing.build("Q", "xyz", ["x*y"])
    # Ann(xz) = (y) and Ann(y) = (x), which is larger than (xz)
    rep = theorem9_audit(A, A.ideal(["x*z"]))
    assert not rep.instance and rep.reason.startswith("not unmixed")


def test_theorem9_on_artinian_gorenstein():
    A = QuotientRing.build("Q", "xy", ["x^2", "y^2"])
    for gens in (["x"], ["y"], ["x*y"], ["x", "y"]):
        rep = theorem9_audit(A, A.ideal(gens), extra=3, seed=1)
        assert rep.instance and rep.ok and rep.delta.consistent
