from algmmp.ideal import Ideal
from algmmp.modules import (GradedModule, canonical_module, degree_data, degree_slice, ext_module,
                            free_resolution, hom_module, syzygies, truncate, twist)
from algmmp.poly import PolyRing


def bigraded():
    S = PolyRing(["y0", "y1", "x0", "x1"], [(1, 0), (1, 0), (0, 1), (0, 1)])
    return S, GradedModule.quotient_ring(S, Ideal(S, ["y0*x1 - y1*x0"]))


def test_syzygies_koszul_row():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    src, ker = syzygies(R, [(0,)], [{(0, 1, 0): x.terms[(1, 0)]}, {(0, 0, 1): y.terms[(0, 1)]}])
    assert src == [(1,), (1,)]
    assert len(ker) == 1
    assert sorted(ker[0].items()) == sorted({(0, 0, 1): 1, (1, 1, 0): -1}.items()) or \
        sorted(ker[0].items()) == sorted({(0, 0, 1): -1, (1, 1, 0): 1}.items())


def test_syzygies_identity_has_no_kernel():
    R = PolyRing(["x"])
    one = R.field.one
    _, ker = syzygies(R, [(0,), (0,)], [{(0, 0): one}, {(1, 0): one}])
    assert ker == []


def test_resolution_of_free_module():
    R = PolyRing(["x", "y"])
    F = free_resolution(GradedModule.free(R, [(2,)]))
    assert F.betti() == [1]
    assert F.degrees[0] == [(2,)]


def test_koszul_resolution():
    R = PolyRing(["x", "y"])
    k = GradedModule.quotient_ring(R, Ideal(R, ["x", "y"]))
    F = free_resolution(k)
    assert F.betti() == [1, 2, 1]
    assert F.degrees == [[(0,)], [(1,), (1,)], [(2,)]]
    assert F.composes_to_zero()
    assert not F.has_unit_entries()
    dd = degree_data(F)
    assert [dd.max_vec(i) for i in range(3)] == [(0,), (1,), (2,)]


def test_twisted_cubic_betti():
    R = PolyRing(["x", "y", "z", "w"])
    I = Ideal(R, ["x*z - y^2", "y*w - z^2", "x*w - y*z"])
    F = free_resolution(GradedModule.quotient_ring(R, I))
    assert F.betti() == [1, 3, 2]
    assert F.degrees[1] == [(2,)] * 3 and F.degrees[2] == [(3,)] * 2
    assert F.composes_to_zero()


def test_hypersurface_resolution_bigraded():
    S, M = bigraded()
    F = free_resolution(M)
    assert F.degrees == [[(0, 0)], [(1, 1)]]
    dd = degree_data(F)
    assert dd.max_vec(0) == (0, 0)
    assert dd.max_vec(1) == (1, 1)
    assert dd.max_vec(2) == (None, None)


def test_hom_examples():
    R = PolyRing(["x", "y"])
    M = GradedModule.quotient_ring(R, Ideal(R, ["x^2"]))
    H = hom_module(GradedModule.free(R, [(0,)]), M)
    assert [H.hilbert_function(v) for v in range(5)] == [M.hilbert_function(v) for v in range(5)]
    H2 = hom_module(GradedModule.free(R, [(3,)]), M)
    assert [H2.hilbert_function(v) for v in range(-3, 3)] == [M.hilbert_function(v) for v in range(6)]
    A = PolyRing(["x"])
    kx = GradedModule.quotient_ring(A, Ideal(A, ["x"]))
    assert hom_module(kx, GradedModule.free(A, [(0,)])).is_zero()


def test_hom_bigraded_endomorphisms():
    S, M = bigraded()
    H = hom_module(M, M)
    assert [H.hilbert_function((u, v)) for u in range(3) for v in range(3)] == \
        [M.hilbert_function((u, v)) for u in range(3) for v in range(3)]


def test_ext_examples():
    R = PolyRing(["x", "y"])
    S = GradedModule.free(R, [(0,)])
    E0 = ext_module(S, 0)
    assert [E0.hilbert_function(v) for v in range(4)] == [1, 2, 3, 4]
    A = PolyRing(["x"])
    kx = GradedModule.quotient_ring(A, Ideal(A, ["x"]))
    E1 = ext_module(kx, 1)
    assert E1.gdeg == [(-1,)]
    assert [E1.hilbert_function(v) for v in range(-2, 2)] == [0, 1, 0, 0]
    k = GradedModule.quotient_ring(R, Ideal(R, ["x", "y"]))
    E2 = ext_module(k, 2)
    assert E2.gdeg == [(-2,)]
    assert [E2.hilbert_function(v) for v in range(-3, 1)] == [0, 1, 0, 0]
    assert ext_module(k, 1).is_zero() and ext_module(k, 0).is_zero()


def test_truncate_examples():
    A = PolyRing(["x"])
    T = truncate(GradedModule.free(A, [(0,)]), 2)
    assert [T.hilbert_function(v) for v in range(5)] == [0, 0, 1, 1, 1]
    S, _ = bigraded()
    T = truncate(GradedModule.free(S, [(0, 0)]), (1, 1))
    assert T.gdeg == [(1, 1)] * 4
    R = PolyRing(["x", "y"])
    F = GradedModule.free(R, [(0,)])
    T0 = truncate(F, 0)
    assert [T0.hilbert_function(v) for v in range(4)] == [F.hilbert_function(v) for v in range(4)]


def test_twist_and_slice():
    S, M = bigraded()
    back = twist(twist(M, (2, -1)), (-2, 1))
    assert back.gdeg == M.gdeg
    sl = degree_slice(M)
    assert [sl.hilbert_function(v) for v in range(5)] == [1, 2, 3, 4, 5]
    assert list(sl.ring.names) == ["x0", "x1"]
    F = GradedModule.free(S, [(0, 0)])
    assert [degree_slice(F).hilbert_function(v) for v in range(4)] == [1, 2, 3, 4]


def test_canonical_modules():
    R = PolyRing(["x0", "x1", "x2"])
    assert canonical_module(Ideal(R, [])).gdeg == [(3,)]
    W = PolyRing(["x0", "x1", "x2"], [1, 1, 2])
    w = canonical_module(Ideal(W, []))
    assert w.gdeg == [(4,)] and not w.rels
    Q = PolyRing([f"x{i}" for i in range(5)])
    wq = canonical_module(Ideal(Q, ["x0^5 + x1^5 + x2^5 + x3^5 + x4^5"]))
    assert wq.gdeg == [(0,)]
