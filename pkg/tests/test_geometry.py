import pytest

from algmmp.geometry import (BiVariety, ContainsIrrelevant, DomainNotEverywhereDefined,
                             MonoVariety, NotHomogeneous, NotPrime, b2m_projection, b2m_to_graph,
                             compose, exceptional_locus, homogeneous_to_graph, identity_morphism,
                             image_ideal, irreducible_components, is_isomorphism, is_normal,
                             make_mono_variety, product_variety, projective_space,
                             restrict_to_segre, segre_hilbert_basis, segre_product)
from algmmp.ideal import Ideal
from algmmp.modules import GradedModule
from algmmp.poly import PolyRing


def test_make_mono_variety():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    assert make_mono_variety(R, []).dim() == 3
    Q = make_mono_variety(R, ["x0*x3 - x1*x2"])
    assert Q.dim() == 2 and Q.degree() == 2
    with pytest.raises(ContainsIrrelevant):
        make_mono_variety(R, ["x0", "x1", "x2", "x3"])
    with pytest.raises(NotPrime):
        make_mono_variety(R, ["x0*x1"])
    with pytest.raises(NotHomogeneous):
        make_mono_variety(R, ["x0 - x1^2"])


def test_segre_hilbert_basis():
    assert segre_hilbert_basis([1], [1]) == [((1,), (1,))]
    assert sorted(segre_hilbert_basis([1, 1], [1, 1])) == sorted(
        [((1, 0), (1, 0)), ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((0, 1), (0, 1))])
    assert sorted(segre_hilbert_basis([1, 1], [2])) == sorted(
        [((2, 0), (1,)), ((1, 1), (1,)), ((0, 2), (1,))])


def test_segre_of_two_lines():
    seg = segre_product(projective_space(1, "s"), projective_space(1, "t"))
    Z = seg.zring
    assert len(seg.basis) == 4
    assert seg.kernel == Ideal(Z, ["z00*z11 - z01*z10"])
    V = seg.variety()
    T = GradedModule.quotient_ring(Z, V.ideal)
    assert [T.hilbert_function(i) for i in range(6)] == [(i + 1) ** 2 for i in range(6)]


@pytest.mark.parametrize("d,c", [((1, 2), (1, 1)), ((1, 1, 2), (3,)), ((2, 3), (1, 2)),
                                 ((1,), (1, 1, 1)), ((3, 1), (2, 1))])
def test_segre_dimensions_multiply(d, c):
    Y = MonoVariety(PolyRing([f"s{i}" for i in range(len(d))], list(d)), [], certify=False)
    X = MonoVariety(PolyRing([f"t{i}" for i in range(len(c))], list(c)), [], certify=False)
    seg = segre_product(Y, X)
    T = GradedModule.quotient_ring(seg.zring, seg.kernel)
    SY = GradedModule.quotient_ring(Y.ring, Y.ideal)
    SX = GradedModule.quotient_ring(X.ring, X.ideal)
    for i in range(5):
        assert T.hilbert_function(i) == SY.hilbert_function(i) * SX.hilbert_function(i)


def test_segre_with_point_factor():
    pt = projective_space(0, "p")
    C = MonoVariety(PolyRing(["x", "y", "z"]), ["x*z - y^2"], certify=False)
    seg = segre_product(pt, C)
    assert len(seg.basis) == 3
    V = seg.variety()
    assert V.dim() == 1 and V.degree() == 2


def test_restrict_to_segre():
    P1, P1b = projective_space(1, "s"), projective_space(1, "t")
    W = product_variety(P1, P1b)
    V, seg = restrict_to_segre(W)
    assert V.ideal == seg.kernel
    diag = BiVariety(P1, P1b, Ideal(W.ring, ["s0*t1 - s1*t0"]), W.ring)
    D, _ = restrict_to_segre(diag, seg)
    Z = seg.zring
    assert Z("z01 - z10") in D.ideal
    assert D.dim() == 1 and D.degree() == 2


def test_homogeneous_to_graph_examples():
    P1 = projective_space(1, "s")
    P2 = projective_space(2, "z")
    S = P1.ring
    f = homogeneous_to_graph([S("s0^2"), S("s0*s1"), S("s1^2")], P1, P2)
    assert image_ideal(f) == Ideal(P2.ring, ["z1^2 - z0*z2"])
    idf = identity_morphism(P1)
    assert is_isomorphism(idf.graph, 0) and is_isomorphism(idf.graph, 1)
    A = PolyRing(["x0", "x1"])
    with pytest.raises(DomainNotEverywhereDefined):
        homogeneous_to_graph([A("x0")], MonoVariety(A, [], certify=False), projective_space(0, "w"))


def test_squaring_projections():
    P1 = projective_space(1, "s")
    S = P1.ring
    sq = homogeneous_to_graph([S("s0^2"), S("s1^2")], P1, P1)
    p = b2m_projection(sq.graph, 1)
    assert p.strict and p.target.ideal.is_zero()
    assert is_isomorphism(sq.graph, 0)
    assert not is_isomorphism(sq.graph, 1)


def test_compose_examples():
    P1 = projective_space(1, "s")
    S = P1.ring
    sq = homogeneous_to_graph([S("s0^2"), S("s1^2")], P1, P1)
    four = homogeneous_to_graph([S("s0^4"), S("s1^4")], P1, P1)
    assert compose(sq, sq).graph.full_ideal() == four.graph.full_ideal()
    assert compose(sq, identity_morphism(P1)).graph.full_ideal() == sq.graph.full_ideal()
    cube = homogeneous_to_graph([S("s0^3"), S("s1^3")], P1, P1)
    left = compose(compose(sq, cube), sq).graph.full_ideal()
    right = compose(sq, compose(cube, sq)).graph.full_ideal()
    assert left == right


def test_b2m_to_graph_second_projection():
    P1, P1b = projective_space(1, "s"), projective_space(1, "t")
    pr = b2m_to_graph(b2m_projection(product_variety(P1, P1b), 1))
    assert pr.source.dim() == 2 and pr.source.degree() == 2
    assert pr.target.ring.names == P1b.ring.names
    assert pr.graph.dim() == 2


def test_b2m_to_graph_of_diagonal():
    P1, P1b = projective_space(1, "s"), projective_space(1, "t")
    W = product_variety(P1, P1b)
    diag = BiVariety(P1, P1b, Ideal(W.ring, ["s0*t1 - s1*t0"]), W.ring)
    g = b2m_to_graph(b2m_projection(diag, 1))
    assert g.source.dim() == 1 and g.source.degree() == 2
    assert is_isomorphism(g.graph, 0)
    assert is_isomorphism(g.graph, 1)


def test_irreducible_components():
    P1, P1b = projective_space(1, "y"), projective_space(1, "x")
    W = product_variety(P1, P1b)
    comps = irreducible_components(Ideal(W.ring, ["y0*y1"]))
    assert len(comps) == 2
    prime = Ideal(W.ring, ["y0*x1 - y1*x0"])
    assert irreducible_components(prime) == [prime]


def test_exceptional_locus():
    P1 = projective_space(1, "s")
    S = P1.ring
    _, codim = exceptional_locus(identity_morphism(P1), birational=True)
    assert codim == 2
    sq = homogeneous_to_graph([S("s0^2"), S("s1^2")], P1, P1)
    loc, codim = exceptional_locus(sq, birational=False)
    assert codim == 1
    assert loc.contains(S("s0*s1"))


def test_exceptional_locus_of_plane_blowup():
    # Bl_p P2 embedded in P1 x P2, projecting to P2
    P1, P2 = projective_space(1, "y"), projective_space(2, "x")
    W = product_variety(P1, P2)
    G = BiVariety(P1, P2, Ideal(W.ring, ["y0*x1 - y1*x0"]), W.ring)
    # regard it as a morphism from its Segre model
    g = b2m_to_graph(b2m_projection(G, 1))
    loc, codim = exceptional_locus(g, birational=True)
    assert codim == 1


def test_normality():
    assert is_normal(projective_space(2))
    R = PolyRing(["x", "y", "z", "w"])
    assert is_normal(MonoVariety(R, ["x*y - z^2"]))
    T = PolyRing(["x", "y", "z"])
    assert not is_normal(MonoVariety(T, ["z*y^2 - x^3"]))
    # linear equations are substituted away first
    U = PolyRing(["x", "y", "z", "w", "v"])
    assert is_normal(MonoVariety(U, ["x*y - z^2", "v - x - w"]))
    assert not is_normal(MonoVariety(U, ["z*y^2 - x^3", "w - 2*v"]))
