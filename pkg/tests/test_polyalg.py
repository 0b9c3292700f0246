import random

import pytest

from algmmp.field import NumberField
from algmmp.ideal import (Ideal, eliminate, factor, groebner_basis, ideal_arith, ideal_quotient,
                          minimal_primes, normal_form)
from algmmp.geometry import dimension_degree, ring_map_kernel
from algmmp.modules import GradedModule
from algmmp.poly import ParseError, PolyRing, RingError, parse_poly


def strs(polys):
    return sorted(str(p) for p in polys)


def test_parse_print_round_trip():
    R = PolyRing(["x", "y", "z"])
    for text in ["x^2*y - 3/2*z^3 + 7", "x - y", "-x*y*z", "0", "1/3"]:
        f = parse_poly(R, text)
        assert parse_poly(R, str(f)) == f


def test_parse_rejects_unknown_variable():
    R = PolyRing(["x", "y"])
    with pytest.raises(ParseError):
        parse_poly(R, "x + w")


def test_groebner_examples():
    R = PolyRing(["x", "y"])
    assert groebner_basis(Ideal(R, []), "lex") == []
    S = PolyRing(["x", "y", "z"])
    assert strs(groebner_basis(Ideal(S, ["x - y", "y - z"]), "lex")) == ["x - z", "y - z"]
    gb = groebner_basis(Ideal(S, ["x^2 - y", "x^3 - z"]), "lex")
    L = gb[0].ring
    assert strs(gb) == strs([parse_poly(L, t) for t in ["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]])


def test_groebner_is_canonical():
    R = PolyRing(["x", "y", "z"])
    a = Ideal(R, ["x^2 - y*z", "x*y - z^2", "y^3 - x*z^2"]).gb()
    b = Ideal(R, ["x*y - z^2", "y^3 - x*z^2", "x^2 - y*z", "x^2 - y*z + x*y - z^2"]).gb()
    assert [str(g) for g in a] == [str(g) for g in b]


def test_normal_form_examples():
    R = PolyRing(["x", "y", "z"])
    X = Ideal(R, ["x"])
    assert not normal_form(R("x"), X)
    assert normal_form(R("x^2 + y"), X) == R("y")
    L = PolyRing(["x", "y", "z"], order="lex")
    assert normal_form(L("y^3"), Ideal(L, ["x^2 - y", "x^3 - z"])) == L("z^2")
    with pytest.raises(RingError):
        normal_form(PolyRing(["u"])("u"), X)


def test_ideal_arith_and_quotients():
    R = PolyRing(["x", "y"])
    x, y = Ideal(R, ["x"]), Ideal(R, ["y"])
    assert ideal_arith(x, y, "intersection") == Ideal(R, ["x*y"])
    assert ideal_arith(x, y, "sum") == Ideal(R, ["x", "y"])
    m = Ideal(R, ["x", "y"])
    assert ideal_arith(m, m, "product") == Ideal(R, ["x^2", "x*y", "y^2"])
    assert ideal_quotient(Ideal(R, ["x*y"]), x) == y
    assert ideal_quotient(Ideal(R, ["x^2", "x*y"]), y, saturate=True) == x
    assert ideal_quotient(x, y) == x


def test_saturation_idempotent():
    R = PolyRing(["x", "y", "z"])
    I = Ideal(R, ["x^2*y", "x*y^2*z", "z^3*x"])
    J = Ideal(R, ["x", "y", "z"])
    s = I.saturate(J)
    assert s.saturate(J) == s


def test_eliminate_and_kernel():
    R = PolyRing(["z", "x", "y"])
    assert eliminate(Ideal(R, ["z - x*y"]), ["z"]).is_zero()
    T = PolyRing(["x", "z", "w"])
    assert eliminate(Ideal(T, ["z - x^2", "w - x^3"]), ["x"]) == Ideal(T, ["z^3 - w^2"])
    S = PolyRing(["s", "t"])
    Z = PolyRing(["z0", "z1", "z2"])
    K = ring_map_kernel([S("s^2"), S("s*t"), S("t^2")], Z, Ideal(S, []))
    assert K == Ideal(Z, ["z0*z2 - z1^2"])
    Z2 = PolyRing(["z0", "z1"])
    P = PolyRing(["x"])
    assert ring_map_kernel([P("x"), P("x")], Z2, Ideal(P, [])) == Ideal(Z2, ["z0 - z1"])


def test_minimal_primes_examples():
    R = PolyRing(["x", "y"])
    assert strs(p.gens[0] for p in minimal_primes(Ideal(R, ["x*y"]))) == ["x", "y"]
    ps = minimal_primes(Ideal(R, ["x^2*y", "x*y^2"]))
    assert strs(p.gens[0] for p in ps) == ["x", "y"]
    P = Ideal(R, ["x^2 - y^3"])
    assert minimal_primes(P) == [P]


def test_is_prime_depends_on_field():
    R = PolyRing(["x", "y"])
    assert Ideal(R, ["x"]).is_prime()
    assert not Ideal(R, ["x*y"]).is_prime()
    assert Ideal(R, ["x^2 + y^2"]).is_prime()
    Ri = PolyRing(["x", "y"], field=NumberField([1, 0, 1], "i"))
    assert not Ideal(Ri, ["x^2 + y^2"]).is_prime()
    assert len(minimal_primes(Ideal(Ri, ["x^2 + y^2"]))) == 2


def test_minimal_primes_properties():
    R = PolyRing(["x", "y", "z"])
    I = Ideal(R, ["x*y*z", "x^2*z - y^2*z"])
    ps = minimal_primes(I)
    assert all(p.is_prime() for p in ps)
    for p in ps:
        assert not any(q is not p and q.is_subset(p) for q in ps)
    meet = ps[0]
    for p in ps[1:]:
        meet = meet.intersect(p)
    rng = random.Random(3)
    mons = [R("x"), R("y"), R("z"), R("x*y"), R("y*z"), R("x*z"), R("x^2 - y^2"), R("x+y+z")]
    for _ in range(12):
        f = sum((rng.randint(-2, 2) * m for m in rng.sample(mons, 3)), R.zero())
        assert meet.contains(f) == I.radical_contains(f)


def test_dimension_degree_examples():
    R = PolyRing(["x0", "x1", "x2", "x3"])
    assert dimension_degree(Ideal(R, [])) == (4, 1)
    assert dimension_degree(Ideal(R, ["x0*x3 - x1*x2"])) == (3, 2)
    assert dimension_degree(Ideal(R, ["x0", "x1", "x2", "x3"]))[0] == 0


def test_hilbert_function_examples():
    R = PolyRing(["x0", "x1"])
    assert GradedModule.quotient_ring(R, Ideal(R, [])).hilbert_function(3) == 4
    W = PolyRing(["x0", "x1"], [1, 2])
    assert GradedModule.quotient_ring(W, Ideal(W, [])).hilbert_function(4) == 3
    S = PolyRing(["x", "y"])
    assert GradedModule.quotient_ring(S, Ideal(S, ["x^2"])).hilbert_function(3) == 2


def test_hilbert_function_matches_initial_ideal_count():
    from math import comb
    R = PolyRing(["x", "y", "z"])
    I = Ideal(R, ["x^2 - y*z", "x*y*z - z^3"])
    M = GradedModule.quotient_ring(R, I)
    leads = I.leading_monomials()
    for d in range(7):
        total = comb(d + 2, 2)
        inside = 0
        for a in range(d + 1):
            for b in range(d + 1 - a):
                m = (a, b, d - a - b)
                if any(all(m[i] >= l[i] for i in range(3)) for l in leads):
                    inside += 1
        assert M.hilbert_function(d) == total - inside


def test_factor_examples():
    R = PolyRing(["x"])
    assert strs(g for g, _ in factor(R("x^2 - 1"))) == ["x + 1", "x - 1"]
    assert [(str(g), e) for g, e in factor(R("x^2 + 1"))] == [("x^2 + 1", 1)]
    assert [(str(g), e) for g, e in factor(R("x^3 - 2"))] == [("x^3 - 2", 1)]
    assert factor(R("x^2*(x + 1)^3")) == [(R("x"), 2), (R("x + 1"), 3)] or \
        sorted((str(g), e) for g, e in factor(R("x^2*(x + 1)^3"))) == [("x", 2), ("x + 1", 3)]


def test_factor_over_number_field():
    K = NumberField([-2, 0, 0, 1], "c")
    R = PolyRing(["x", "y"], field=K)
    f = R("x^3 - 2*y^3")
    fs = factor(f)
    assert sorted(g.total_degree() for g, _ in fs) == [1, 2]
    prod = fs[0][0] * fs[1][0]
    assert prod == f


def test_reducible_minpoly_rejected():
    from algmmp.field import FieldError
    with pytest.raises(FieldError):
        NumberField([-1, 0, 1])


def test_random_membership_small():
    # fast smoke version of the acceptance sweep
    rng = random.Random(11)
    R = PolyRing(["x", "y"])
    for _ in range(3):
        gens = [R(f"{rng.randint(1, 3)}*x^2 - {rng.randint(1, 3)}*y^2"), R(f"x*y - {rng.randint(1, 3)}*y^2")]
        I = Ideal(R, gens)
        assert I.contains(gens[0] * R("x") + gens[1] * R("y^2"))
        assert not I.contains(R("x"))
