"""Weil divisors on monograded varieties and the sheaves they define.

A divisor module is stored as a homogeneous ideal ``J`` of ``R = S/I_X``
together with a shift ``e``: the sheaf is ``J~(e)``.
"""

import random
from functools import reduce
from itertools import combinations
from math import lcm

from .groebner import BudgetExceeded
from .hilbert import monomials_of_degree
from .ideal import Ideal, minimal_primes
from .modules import GradedModule
from .geometry import (MonoVariety, _det, hilbert_series_of, homogeneous_to_graph,
                       irrelevant_ideal, projective_space, ring_map_kernel)
from .poly import PolyRing


class SaturatorNotFound(RuntimeError):
    pass


class NotBasePointFree(ValueError):
    pass


class RestrictionDegenerate(RuntimeError):
    pass


# ---------------------------------------------------------------- helpers

def _sat(J):
    R = J.ring
    return J.saturate(irrelevant_ideal(R)) if not J.is_unit() else J


def _trim(J):
    return Ideal(J.ring, J.minimal_generators()) if J.gens else J


def _first_nonmember(cands, p, avoid=None):
    for f in cands:
        if f and not p.contains(f) and (avoid is None or not avoid.contains(f)):
            return f
    return None


def _jacobian_minors(gens, ring, c, limit=400):
    # c x c minors of the Jacobian in a fixed order (lazy)
    rows = [[g.diff(i) for i in range(ring.ngens)] for g in gens]
    count = 0
    for rs in combinations(range(len(rows)), c):
        for cs in combinations(range(ring.ngens), c):
            m = _det([[rows[r][k] for k in cs] for r in rs])
            count += 1
            if m:
                yield m
            if count > limit:
                return


def _witness(p, X):
    """Element outside ``p`` vanishing on the singular loci of ``X`` and ``V(p)``."""
    S = X.ring
    cX = S.ngens - X.ideal.dimension()
    s = S.one()
    if cX > 0:
        gX = X.ideal.minimal_generators()
        j = _first_nonmember(_jacobian_minors(gX, S, cX), p)
        if j is None:
            raise SaturatorNotFound("no Jacobian minor of X outside the prime")
        s = s * j
    cp = S.ngens - p.dimension()
    gp = p.minimal_generators()
    j = _first_nonmember(_jacobian_minors(gp, S, cp), p)
    if j is None:
        raise SaturatorNotFound("no Jacobian minor of the prime outside it")
    s = s * j
    # make sure the irrelevant ideal is also cleared
    v = _first_nonmember(S.gens(), p)
    return s * v


def symbolic_power(p, m, X=None):
    """``p^(m)``: the p-primary component of ``p^m`` (height one prime on ``X``)."""
    S = p.ring
    if X is None:
        X = MonoVariety(S, Ideal(S, []), certify=False)
    if m <= 0:
        return Ideal(S, [S.one()])
    if m == 1:
        return p
    pm = Ideal(S, [g for g in p.power(m).gens] + X.ideal.gens)
    s = _witness(p, X)
    return _trim(pm.saturate(s))


def reflexive_hull(J, I_X):
    """Double dual ``(h) : ((h) : J)`` inside ``S/I_X``."""
    S = J.ring
    h = next(g for g in J.gens if not I_X.contains(g))
    hI = Ideal(S, [h] + I_X.gens)
    return _trim(hI.quotient(hI.quotient(Ideal(S, J.gens + I_X.gens))))


# ---------------------------------------------------------------- divisors

class WeilDivisor:
    """Formal sum of height-one primes on a monograded variety."""

    def __init__(self, X, terms=()):
        self.X = X
        acc = []
        for p, n in terms:
            if not isinstance(p, Ideal):
                p = Ideal(X.ring, p)
            for k, (q, m) in enumerate(acc):
                if q == p:
                    acc[k] = (q, m + n)
                    break
            else:
                acc.append((p, n))
        self.terms = [(p, n) for p, n in acc if n]

    def __add__(self, other):
        return WeilDivisor(self.X, self.terms + other.terms)

    def __neg__(self):
        return WeilDivisor(self.X, [(p, -n) for p, n in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return WeilDivisor(self.X, [(p, k * n) for p, n in self.terms])

    def is_zero(self):
        return not self.terms

    def positive(self):
        return WeilDivisor(self.X, [(p, n) for p, n in self.terms if n > 0])

    def negative(self):
        return WeilDivisor(self.X, [(p, -n) for p, n in self.terms if n < 0])

    def ideal(self):
        """``J_D = ∩ p_i^(n_i)`` for effective ``D``."""
        X = self.X
        S = X.ring
        if any(n < 0 for _, n in self.terms):
            raise ValueError("effective divisor expected")
        if not self.terms:
            return Ideal(S, [S.one()])
        parts = [Ideal(S, symbolic_power(p, n, X).gens + X.ideal.gens) for p, n in self.terms]
        return _trim(reduce(lambda a, b: a.intersect(b), parts))

    def check(self):
        X = self.X
        for p, _ in self.terms:
            if not p.is_homogeneous() or not X.ideal.is_subset(p):
                raise ValueError("components must be homogeneous primes containing the ideal of X")
            if p.dimension() != X.ideal.dimension() - 1:
                raise ValueError("components must have codimension one")
            if not p.is_prime():
                raise ValueError("components must be prime")
        return True

    def __repr__(self):
        return " + ".join(f"{n}*V({', '.join(str(g) for g in p.gens)})" for p, n in self.terms) or "0"


class DivisorModule:
    """``O_X(D) ≅ J~(shift)`` for a homogeneous ideal ``J ⊇ I_X``."""

    def __init__(self, X, ideal, shift, divisor=None):
        self.X = X
        self.ideal = ideal
        self.shift = shift
        self.divisor = divisor

    def module(self):
        """Graded module over ``S/I_X`` with ``M_v = J_{v+shift}``."""
        S = self.X.ring
        J = self.ideal
        gens = [g for g in J.minimal_generators() if not self.X.ideal.contains(g)]
        if not gens:
            return GradedModule(S, [], [], self.X.ideal)
        from .modules import submodule
        vecs = [{(0,) + m: c for m, c in g.terms.items()} for g in gens]
        rels = [{(0,) + m: c for m, c in g.terms.items()} for g in self.X.ideal.gens]
        M = submodule(S, self.X.ideal, [(0,)], vecs, rels)
        return M.twist((self.shift,))

    def sections(self, v=0):
        """Basis of ``J_{v+shift}`` modulo ``I_X`` (global sections; ``J`` is reflexive)."""
        d = v + self.shift
        S = self.X.ring
        if d < 0:
            return []
        J = Ideal(S, self.ideal.gens + self.X.ideal.gens)
        out = []
        lead_X = Ideal(S, self.X.ideal.gens)
        # piece of J modulo I_X: echelon form of normal forms of generator multiples
        cands = []
        for g in J.minimal_generators():
            dg = g.degree()
            if dg > d:
                continue
            for m in monomials_of_degree(S.degs, d - dg):
                cands.append(g * S.monomial(m))
        basis = {}
        for f in cands:
            r = lead_X.reduce(f)
            # Gaussian elimination on normal forms
            for lt, (b, piv) in sorted(basis.items(), key=lambda kv: S.order.key(kv[0]), reverse=True):
                c = r.terms.get(lt)
                if c:
                    r = r - b.scale(c / piv)
            if r:
                lt = max(r.terms, key=S.order.key)
                basis[lt] = (r, r.terms[lt])
                out.append(r)
        return out

    def power(self, m):
        """Reflexive ``m``-th power."""
        S = self.X.ring
        Jm = Ideal(S, self.ideal.power(m).gens + self.X.ideal.gens)
        D = None if self.divisor is None else m * self.divisor
        return DivisorModule(self.X, reflexive_hull(Jm, self.X.ideal), m * self.shift, D)

    def __repr__(self):
        return f"DivisorModule(shift={self.shift}, {len(self.ideal.gens)} generators)"


def divisor_module(D, h=None):
    """``O_X(D)`` as ``((h J_N) : J_P)~(deg h)`` where ``D = P - N`` and ``h ∈ J_P``."""
    X = D.X
    S = X.ring
    P, N = D.positive(), D.negative()
    JN = N.ideal()
    if P.is_zero():
        return DivisorModule(X, JN, 0, D)
    JP = P.ideal()
    if h is None:
        h = next(g for g in JP.minimal_generators() if not X.ideal.contains(g))
    hJ = Ideal(S, [h * g for g in JN.gens] + X.ideal.gens)
    J = _trim(hJ.quotient(JP))
    return DivisorModule(X, J, h.degree(), D)


def principal_divisor(X, f):
    """``div(f)`` for a homogeneous ``f`` not vanishing on ``X``."""
    S = X.ring
    f = S(f)
    Jf = Ideal(S, [f] + X.ideal.gens)
    terms = []
    for p in minimal_primes(Jf):
        if p.saturate(irrelevant_ideal(S)).is_unit():
            continue
        terms.append((p, valuation(Jf, p, X)))
    terms.sort(key=lambda t: [str(g) for g in t[0].gb()])
    return WeilDivisor(X, terms)


def valuation(J, p, X, cap=64):
    """Largest ``m`` with ``J ⊆ p^(m)``."""
    m = 0
    while m < cap:
        if not J.is_subset(Ideal(J.ring, symbolic_power(p, m + 1, X).gens + X.ideal.gens)):
            return m
        m += 1
    raise BudgetExceeded("valuation too large")


def divisor_of_ideal(J, X):
    """Divisor ``D`` with ``J = J_D`` for an unmixed height-one ideal."""
    S = X.ring
    terms = []
    for p in minimal_primes(J):
        if p.saturate(irrelevant_ideal(S)).is_unit():
            continue
        terms.append((p, valuation(J, p, X)))
    terms.sort(key=lambda t: [str(g) for g in t[0].gb()])
    return WeilDivisor(X, terms)


# ---------------------------------------------------------------- canonical divisor

def _complete_intersection(I, c, seed=0, tries=40, subsets=200):
    """``c`` homogeneous elements of ``I`` forming a complete intersection linked to ``I``.

    Subsets of the minimal generators are tried first (sparse input keeps
    the Gröbner bases small), then seeded random combinations.
    """
    S = I.ring
    gens = sorted(I.minimal_generators(), key=lambda g: (g.degree(), str(g)))
    if c == 0:
        return []
    if len(gens) == c:
        return gens
    for k, sub in zip(range(subsets), combinations(gens, c)):
        J = Ideal(S, list(sub))
        if S.ngens - J.dimension() == c and not J.quotient(I).is_subset(I):
            return list(sub)
    rng = random.Random(seed)
    for attempt in range(tries):
        chosen = []
        for k in range(c):
            found = None
            for d in sorted({g.degree() for g in gens}):
                same = [g for g in gens if g.degree() == d]
                coeffs = [rng.randint(-3, 3) for _ in same]
                f = reduce(lambda a, b: a + b, (g.scale(a) for g, a in zip(same, coeffs) if a),
                           S.zero())
                if f and S.ngens - Ideal(S, chosen + [f]).dimension() == k + 1:
                    found = f
                    break
            if found is None:
                break
            chosen.append(found)
        if len(chosen) == c and not Ideal(S, chosen).quotient(I).is_subset(I):
            return chosen
    raise BudgetExceeded("no linked complete intersection found")


class CanonicalData:
    def __init__(self, X, module, ci):
        self.X = X
        self.module = module
        self.ci = ci
        self._divisor = None

    @property
    def divisor(self):
        if self._divisor is None:
            self._divisor = _canonical_weil(self)
            self.module.divisor = self._divisor
        return self._divisor


def _canonical_weil(cd):
    X = cd.X
    S = X.ring
    L = cd.module.ideal
    delta = cd.module.shift
    full = Ideal(S, L.gens + X.ideal.gens)
    DL = WeilDivisor(X) if full.is_unit() else divisor_of_ideal(full, X)
    if delta == 0:
        return -DL
    g = _form_of_degree(X, abs(delta))
    H = principal_divisor(X, g)
    return (H - DL) if delta > 0 else (-H - DL)


def _form_of_degree(X, d):
    S = X.ring
    for m in sorted(monomials_of_degree(S.degs, d), reverse=True):
        f = S.monomial(m)
        if not X.ideal.contains(f):
            return f
    raise ValueError(f"no form of degree {d} is nonzero on X")


def canonical_divisor(X, seed=0):
    """Canonical data of a normal ``X``: ``ω ≅ (((J : I) + I)/I)(δ)`` for a linked complete intersection ``J``."""
    S = X.ring
    I = X.ideal
    cw = sum(w[0] for w in S.degs)
    if I.is_zero():
        mod = DivisorModule(X, Ideal(S, [S.one()]), -cw)
        return CanonicalData(X, mod, [])
    c = S.ngens - I.dimension()
    ci = _complete_intersection(I, c, seed)
    J = Ideal(S, ci)
    delta = sum(f.degree() for f in ci) - cw
    if len(ci) == len(I.minimal_generators()) and J == I:
        L = Ideal(S, [S.one()])
    else:
        L = _trim(Ideal(S, J.quotient(I).gens + I.gens))
    return CanonicalData(X, DivisorModule(X, L, delta), ci)


# ---------------------------------------------------------------- Cartier and base points

def _trace_ideal(X, J):
    """Ideal generated by ``φ(m)`` with ``m ∈ J``, ``φ ∈ Hom(J, R)`` of degrees in ``L·Z``."""
    S = X.ring
    L = reduce(lcm, (w[0] for w in S.degs), 1)
    g = next(a for a in J.minimal_generators() if not X.ideal.contains(a))
    gI = Ideal(S, [g] + X.ideal.gens)
    Jfull = Ideal(S, J.gens + X.ideal.gens)
    dual = gI.quotient(Jfull)
    if L == 1:
        T = Ideal(S, [a * m for a in dual.minimal_generators() for m in J.minimal_generators()]
                  + X.ideal.gens)
        return T.quotient(g)
    # weighted: multiply generators into degrees ≡ 0 (mod L) on each side separately
    def lift(elems, off):
        out = []
        for a in elems:
            need = (-(a.degree() + off)) % L
            for k in range(S.ngens + 1):
                for mono in monomials_of_degree(S.degs, need + k * L):
                    out.append(a * S.monomial(mono))
        return out
    ms = lift(J.minimal_generators(), 0)
    phis = lift(dual.minimal_generators(), -g.degree())
    T = Ideal(S, [a * m for a in phis for m in ms] + X.ideal.gens)
    return T.quotient(g)


def is_cartier(D, X=None):
    """Whether ``O_X(D)`` is invertible (trace ideal away from the irrelevant locus)."""
    Dm = D if isinstance(D, DivisorModule) else divisor_module(D)
    X = Dm.X
    T = _trace_ideal(X, Dm.ideal)
    return _sat(T).is_unit()


def cartier_index(K, budget=6):
    """Smallest ``m <= budget`` with ``m K`` Cartier (``None`` if none)."""
    Dm = K if isinstance(K, DivisorModule) else divisor_module(K)
    for m in range(1, budget + 1):
        if is_cartier(Dm.power(m) if m > 1 else Dm):
            return m
    return None


def is_basepoint_free(Dm):
    """Global sections generate ``O_X(D)`` away from the irrelevant locus."""
    secs = Dm.sections(0)
    if not secs:
        return False
    S = Dm.X.ring
    N = Ideal(S, secs + Dm.X.ideal.gens)
    Jfull = Ideal(S, Dm.ideal.gens + Dm.X.ideal.gens)
    return _sat(N.quotient(Jfull)).is_unit()


def linear_system_morphism(Dm, check=True):
    """Graph of ``X -> P^{h0-1}`` given by a basis of global sections."""
    if check and not is_basepoint_free(Dm):
        raise NotBasePointFree("the linear system has base points")
    secs = Dm.sections(0)
    n = len(secs) - 1
    T = projective_space(n, "w")
    return homogeneous_to_graph(secs, Dm.X, T, check_domain=False)


# ---------------------------------------------------------------- intersection numbers

def _curve_ring(C):
    return Ideal(C.ring, C.gens)


def intersection_number(D, C, seed=0, tries=30):
    """``D·C`` for Cartier ``D`` and a curve ``C`` (prime ideal of projective dimension one).

    ``O_C(D) = J''O_C(e'')`` for an ideal representative ``J''`` not
    vanishing along ``C``, so ``D·C = P_C(e'') - P_C(0) - length(R_C/J''R_C)``.
    """
    Dm = D if isinstance(D, DivisorModule) else divisor_module(D)
    X = Dm.X
    S = X.ring
    pC = Ideal(S, C.gens if isinstance(C, Ideal) else C)
    if Ideal(S, pC.gens).dimension() != 2:
        raise ValueError("C must be a curve")
    HC = hilbert_series_of(pC)
    J, e = Dm.ideal, Dm.shift
    Jfull = Ideal(S, J.gens + X.ideal.gens)
    if Jfull.is_subset(pC):
        J, e = _move_off(X, Jfull, e, pC, seed, tries)
        Jfull = Ideal(S, J.gens + X.ideal.gens)
    Q = Ideal(S, Jfull.gens + pC.gens)
    length = hilbert_series_of(Q).quasi_polynomial(0) if not Q.is_unit() else 0
    return HC.quasi_polynomial(e) - HC.quasi_polynomial(0) - length


def _move_off(X, J, e, pC, seed, tries):
    """Isomorphic ideal ``(b J) : a`` not contained in ``pC``."""
    S = X.ring
    rng = random.Random(seed)
    gens = [g for g in J.minimal_generators() if not X.ideal.contains(g)]
    for t in range(tries):
        if t < len(gens):
            a = gens[t]
        else:
            same = [g for g in gens if g.degree() == gens[0].degree()]
            a = reduce(lambda x, y: x + y, (g.scale(rng.randint(1, 5)) for g in same))
        aI = Ideal(S, [a] + X.ideal.gens)
        dual = aI.quotient(J)
        bs = [b for b in dual.minimal_generators() if not pC.contains(b)]
        if not bs:
            continue
        b = bs[0]
        Jn = _trim(Ideal(S, [b * g for g in J.gens] + X.ideal.gens).quotient(a))
        if not Jn.is_subset(pC):
            return Jn, e + b.degree() - a.degree()
    raise RestrictionDegenerate("could not move the divisor off the curve")


# ---------------------------------------------------------------- Rees algebras

class ReesAlgebra:
    """``R[u]/ker`` with ``deg x = (w, 0)``, ``deg u = (0, 1)``."""

    def __init__(self, ring, ideal, gens, degree, nx):
        self.ring = ring
        self.ideal = ideal
        self.gens = gens
        self.degree = degree
        self.nx = nx


def rees_algebra(I, I_X=None, uname="u"):
    """Rees algebra of an ideal generated in a single degree (truncated otherwise)."""
    S = I.ring
    I_X = I_X if I_X is not None else Ideal(S, [])
    gens = [g for g in I.minimal_generators() if not I_X.contains(g)]
    ds = {g.degree() for g in gens}
    if len(ds) > 1:
        D = max(ds)
        gens2 = []
        for g in gens:
            for m in monomials_of_degree(S.degs, D - g.degree()):
                gens2.append(g * S.monomial(m))
        full = Ideal(S, gens2 + I_X.gens)
        gens = [g for g in full.minimal_generators() if not I_X.contains(g)]
    d = gens[0].degree()
    r = len(gens)
    from .geometry import _fresh_names, embed
    un = _fresh_names(S.names, [f"{uname}{i}" for i in range(r)])
    P = PolyRing(list(S.names) + un, [(w[0], 0) for w in S.degs] + [(0, 1)] * r, S.field)
    T = PolyRing(list(S.names) + ["_t"], [(w[0], 0) for w in S.degs] + [(-d, 1)], S.field)
    t = T.var("_t")
    images = [T.var(i) for i in range(S.ngens)] + [embed(g, T, 0) * t for g in gens]
    tI = Ideal(T, [embed(g, T, 0) for g in I_X.gens])
    K = ring_map_kernel(images, P, tI,
                        src_weights=[(w[0], 0) for w in S.degs] + [(0, 1)] * r)
    return ReesAlgebra(P, K, gens, d, S.ngens)


# ---------------------------------------------------------------- enumeration

def _linear_forms(S):
    """Deterministic stream of linear forms: coordinates, then sums and differences."""
    n = S.ngens
    lin = [i for i in range(n) if S.degs[i][0] == 1]
    for i in lin:
        yield S.var(i)
    for i, j in combinations(lin, 2):
        yield S.var(i) + S.var(j)
        yield S.var(i) - S.var(j)
    for i, j in combinations(lin, 2):
        yield S.var(i) + S.var(j).scale(2)
        yield S.var(i) - S.var(j).scale(2)


def enumerate_curves(X, hints=(), budget=50):
    """Deterministic stream of curves on ``X``: hints first, then linear sections."""
    S = X.ring
    seen = []
    emitted = 0
    for h in hints:
        p = h if isinstance(h, Ideal) else Ideal(S, h)
        yield p
        seen.append(p)
        emitted += 1
    k = X.dim() - 1
    if k < 0:
        return
    if k == 0:
        yield X.ideal
        return
    forms = list(_linear_forms(S))
    for combo in combinations(range(len(forms)), k):
        if emitted >= budget:
            return
        J = Ideal(S, X.ideal.gens + [forms[i] for i in combo])
        if J.dimension() != 2:
            continue
        for p in minimal_primes(J):
            if p.dimension() != 2 or p.saturate(irrelevant_ideal(S)).is_unit():
                continue
            q = Ideal(S, p.gb())
            if any(q == s for s in seen):
                continue
            seen.append(q)
            emitted += 1
            yield q
            if emitted >= budget:
                return


def enumerate_prime_divisors(X, hints=(), budget=50):
    S = X.ring
    seen = []
    emitted = 0
    for h in hints:
        p = h if isinstance(h, Ideal) else Ideal(S, h)
        seen.append(p)
        emitted += 1
        yield p
    for f in _linear_forms(S):
        if emitted >= budget:
            return
        J = Ideal(S, X.ideal.gens + [f])
        for p in minimal_primes(J):
            if p.dimension() != X.ideal.dimension() - 1:
                continue
            q = Ideal(S, p.gb())
            if any(q == s for s in seen):
                continue
            seen.append(q)
            emitted += 1
            yield q


def enumerate_bpf_cartier(X, hints=(), budget=20):
    """Base-point-free Cartier divisors: hints, the zero divisor, then prime divisors and their sums."""
    emitted = 0
    for h in hints:
        yield h
        emitted += 1
    if emitted >= budget:
        return
    zero = WeilDivisor(X)
    yield zero
    emitted += 1
    primes = []
    for p in enumerate_prime_divisors(X, budget=budget):
        primes.append(p)
        for k in range(len(primes)):
            for combo in combinations(primes, k + 1):
                if emitted >= budget:
                    return
                if primes[-1] not in combo:
                    continue
                D = WeilDivisor(X, [(q, 1) for q in combo])
                Dm = divisor_module(D)
                if is_cartier(Dm) and is_basepoint_free(Dm):
                    emitted += 1
                    yield D


def enumerate_stream(X, kind, budget=20, hints=()):
    if kind == "curves":
        return enumerate_curves(X, hints, budget)
    if kind == "prime_divisors":
        return enumerate_prime_divisors(X, hints, budget)
    if kind == "bpf_cartier_divisors":
        return enumerate_bpf_cartier(X, hints, budget)
    raise ValueError(f"unknown enumeration kind {kind!r}")


# ---------------------------------------------------------------- nefness

class Nef:
    def __init__(self, power, index):
        self.power = power
        self.index = index

    def __repr__(self):
        return f"Nef(power={self.power})"


class NotNef:
    def __init__(self, curve, value):
        self.curve = curve
        self.value = value

    def __repr__(self):
        return f"NotNef(value={self.value})"


def is_nef_canonical(X, budget=20, hints=(), canonical=None, index_budget=6):
    """Dovetail global generation of ``ω^[i r]`` against ``K·C`` over enumerated curves."""
    cd = canonical or canonical_divisor(X)
    K = cd.module
    r = cartier_index(K, index_budget)
    if r is None:
        raise BudgetExceeded("Cartier index not found within budget")
    Kr = K.power(r) if r > 1 else K
    curves = enumerate_curves(X, hints, budget)
    done_curves = False
    for i in range(1, budget + 1):
        P = Kr.power(i) if i > 1 else Kr
        if is_basepoint_free(P):
            return Nef(i * r, r)
        if not done_curves:
            try:
                C = next(curves)
            except StopIteration:
                done_curves = True
                continue
            val = intersection_number(Kr, C)
            if val < 0:
                from fractions import Fraction
                v = Fraction(val, r)
                return NotNef(C, int(v) if v.denominator == 1 else v)
    raise BudgetExceeded("nefness undecided within budget")
