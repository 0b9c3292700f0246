import pytest

from algmmp.cohomology import (CohomologyTable, StabilizationBudgetExceeded, euler_characteristic,
                               global_hom_bigraded, global_sections_mono, hom_threshold,
                               sheaf_cohomology_dim)
from algmmp.ideal import Ideal
from algmmp.modules import GradedModule
from algmmp.poly import PolyRing


def graph_of_identity():
    S = PolyRing(["y0", "y1", "x0", "x1"], [(1, 0), (1, 0), (0, 1), (0, 1)])
    return S, GradedModule.quotient_ring(S, Ideal(S, ["y0*x1 - y1*x0"]))


def ring_mod(names, gens=(), weights=None):
    R = PolyRing(names, weights)
    return GradedModule.quotient_ring(R, Ideal(R, list(gens)))


def test_threshold_examples():
    S, R = graph_of_identity()
    th = hom_threshold(R, R)
    assert th.r == (0, 0)
    assert th.terms["a_d"] == (1, 1)
    F = GradedModule.quotient_ring(S, Ideal(S, []))
    assert hom_threshold(F, F).r == (0, 0)


def test_graph_of_identity_sections():
    _, R = graph_of_identity()
    G = global_hom_bigraded(R, R)
    assert [[G.dim((u, v)) for v in range(4)] for u in range(4)] == \
        [[u + v + 1 for v in range(4)] for u in range(4)]
    for r in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        H = global_hom_bigraded(R, R, r)
        assert [[H.dim((u, v)) for v in range(4)] for u in range(4)] == \
            [[u + v + 1 for v in range(4)] for u in range(4)]


def test_full_product_kunneth():
    S, _ = graph_of_identity()
    F = GradedModule.quotient_ring(S, Ideal(S, []))
    G = global_hom_bigraded(F, F)
    assert [[G.dim((u, v)) for v in range(3)] for u in range(3)] == \
        [[(u + 1) * (v + 1) for v in range(3)] for u in range(3)]


def test_bigraded_twist_shift():
    _, R = graph_of_identity()
    G = global_hom_bigraded(R, R.twist((-1, 0)))
    for u in range(1, 4):
        for v in range(3):
            assert G.dim((u, v)) == u - 1 + v + 1


def test_sections_on_a_line():
    M = ring_mod(["s", "t"])
    assert [global_sections_mono(M).dim(v) for v in range(5)] == [1, 2, 3, 4, 5]
    P = M.ring
    assert [global_sections_mono(M.twist(-2), Ideal(P, [])).dim(v) for v in range(5)] == [0, 0, 1, 2, 3]
    k = GradedModule.quotient_ring(P, Ideal(P, ["s", "t"]))
    assert all(global_sections_mono(k, Ideal(P, [])).dim(v) == 0 for v in range(4))


def test_cohomology_of_line_bundles_on_p1():
    T = CohomologyTable(ring_mod(["s", "t"]))
    assert T.h(1, -2) == 1
    assert [T.h(0, v) for v in range(-3, 3)] == [0, 0, 0, 1, 2, 3]
    assert [T.h(1, v) for v in range(-4, 1)] == [3, 2, 1, 0, 0]
    assert T.h(2, -5) == 0


def test_plane_vanishing():
    M = ring_mod(["x", "y", "z"])
    T = CohomologyTable(M)
    for d in range(4):
        assert T.h(1, d) == 0 and T.h(2, d) == 0
    assert T.h(2, -3) == 1 and T.h(2, -4) == 3
    assert sheaf_cohomology_dim(M, 0, 3, dim=2) == 0


def test_euler_characteristic():
    M = ring_mod(["s", "t"])
    T = CohomologyTable(M)
    for v in range(-4, 4):
        assert euler_characteristic(M, v) == v + 1
        assert T.h(0, v) - T.h(1, v) == euler_characteristic(M, v)
    assert euler_characteristic(ring_mod(["x", "y", "z"]), 0) == 1
    E = ring_mod(["x", "y", "z"], ["y^2*z - x^3 - x*z^2"])
    TE = CohomologyTable(E)
    assert euler_characteristic(E, 0) == 0
    assert TE.h(0, 0) == 1 and TE.h(1, 0) == 1


def test_weighted_plane():
    M = ring_mod(["x", "y", "z"], weights=[1, 1, 2])
    T = CohomologyTable(M)
    assert [T.h(0, v) for v in range(5)] == [1, 2, 4, 6, 9]
    assert T.h(2, -4) == 1


def test_bigraded_higher_cohomology_refused():
    _, R = graph_of_identity()
    with pytest.raises(StabilizationBudgetExceeded):
        sheaf_cohomology_dim(R, (0, 0), 1)
    assert sheaf_cohomology_dim(R, (1, 1), 0) == 3
