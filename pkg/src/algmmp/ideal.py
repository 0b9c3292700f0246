"""Ideals in graded polynomial rings."""

import random
from functools import reduce
from fractions import Fraction

from gmpy2 import mpq

from .field import QQ
from .groebner import (BudgetExceeded, ModuleOrder, groebner_vecs, lead_term, poly_to_vec,
                       syzygy_vecs, vec_to_poly, vec_to_polys)
from .poly import Poly, PolyRing, RingError


class Ideal:
    """An ideal given by generators; Gröbner bases are cached per order."""

    def __init__(self, ring, gens):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g)
            if g:
                gs.append(g)
        self.gens = gs
        self._gb = {}
        self._mingens = None
        self._facts = {}

    # -- Gröbner bases
    def groebner(self, order=None, budget=None):
        order = order or ModuleOrder(self.ring)
        key = (order.ro, order.mode, order.blocks)
        res = self._gb.get(key)
        if res is None:
            res = groebner_vecs([poly_to_vec(g) for g in self.gens], order, budget=budget)
            self._gb[key] = res
        return res

    def gb(self):
        return [vec_to_poly(self.ring, v) for v in self.groebner().vecs]

    def leading_monomials(self):
        return [t[1:] for t in self.groebner().leads]

    def reduce(self, f):
        f = self.ring(f)
        r = self.groebner().reduce(poly_to_vec(f))
        return vec_to_poly(self.ring, r)

    def contains(self, f):
        return not self.reduce(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_subset(self, other):
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.is_subset(other) and other.is_subset(self)

    def __hash__(self):
        return id(self)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(not any(t[1:]) for t in self.groebner().leads)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    # -- operations
    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + [self.ring(g) for g in other])

    def __mul__(self, other):
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, k):
        if k == 0:
            return Ideal(self.ring, [self.ring.one()])
        out = self
        for _ in range(k - 1):
            out = Ideal(out.ring, (out * self).minimal_generators())
        return out

    def minimal_generators(self):
        """A minimal homogeneous generating set (or a reduced GB when inhomogeneous)."""
        if self._mingens is None:
            if not self.is_homogeneous():
                self._mingens = self.gb()
            else:
                res = groebner_vecs([poly_to_vec(g) for g in self.gens], ModuleOrder(self.ring),
                                    minimal=True)
                self._mingens = [self.gens[i] for i in res.mingens]
                self._gb.setdefault((res.order.ro, res.order.mode, res.order.blocks), res)
        return list(self._mingens)

    def intersect(self, other):
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        a = len(self.gens)
        vecs = [poly_to_vec(g) for g in self.gens] + [poly_to_vec(-g) for g in other.gens]
        syz, _ = syzygy_vecs(vecs, self.ring, 1)
        out = []
        for v in syz:
            parts = vec_to_polys(self.ring, v, len(vecs))
            out.append(reduce(lambda p, q: p + q,
                              (parts[i] * self.gens[i] for i in range(a)), self.ring.zero()))
        return Ideal(self.ring, out)._trimmed()

    def _trimmed(self):
        if self.is_homogeneous():
            return Ideal(self.ring, self.minimal_generators())
        return Ideal(self.ring, self.gb())

    def quotient(self, other):
        """``I : J`` for an ideal or a single polynomial ``J``."""
        if isinstance(other, Ideal):
            if other.is_zero():
                return Ideal(self.ring, [self.ring.one()])
            return reduce(lambda a, b: a.intersect(b), (self.quotient(g) for g in other.gens))
        f = self.ring(other)
        if not f:
            return Ideal(self.ring, [self.ring.one()])
        if self.is_zero():
            return Ideal(self.ring, [])
        vecs = [poly_to_vec(f)] + [poly_to_vec(g) for g in self.gens]
        syz, _ = syzygy_vecs(vecs, self.ring, 1)
        out = []
        for v in syz:
            comp0 = {t[1:]: c for t, c in v.items() if t[0] == 0}
            if comp0:
                out.append(Poly(self.ring, comp0))
        return Ideal(self.ring, out)._trimmed()

    def saturate(self, other):
        """``I : J^oo``."""
        if isinstance(other, Ideal):
            if other.is_zero():
                return Ideal(self.ring, [self.ring.one()])
            fast = self._saturate_variables(other)
            if fast is not None:
                return fast
            return reduce(lambda a, b: a.intersect(b), (self.saturate(g) for g in other.gens))
        f = self.ring(other)
        if self._order_homogeneous() and len(f.terms) == 1 and sum(next(iter(f.terms))) == 1:
            i = next(iter(f.terms)).index(1)
            return self._saturate_linear({i: self.ring.field.one})
        cur = self
        while True:
            nxt = cur.quotient(f)
            if nxt.is_subset(cur):
                return cur
            cur = nxt

    def _order_homogeneous(self):
        w = self.ring.order_weights
        for g in self.gens:
            if len({sum(a * b for a, b in zip(w, m)) for m in g.terms}) > 1:
                return False
        return True

    def _saturate_linear(self, coeffs):
        """``I : ell^oo`` for a linear form ``ell = sum coeffs[i] x_i`` of equal order weights.

        Changes coordinates so that ``ell`` is the last variable of a
        reverse lexicographic order; then the saturation divides each
        Gröbner basis element by its largest power of that variable.
        """
        R = self.ring
        if self.is_zero():
            return Ideal(R, [])
        piv = max(coeffs)
        rest = [i for i in range(R.ngens) if i != piv]
        ow = R.order_weights
        names = [R.names[i] for i in rest] + ["_sat"]
        S = PolyRing(names, [ow[i] for i in rest] + [ow[piv]], R.field)
        y = S.var(S.ngens - 1)
        cp = coeffs[piv]
        images = [None] * R.ngens
        for k, i in enumerate(rest):
            images[i] = S.var(k)
        sub = y
        for i, c in coeffs.items():
            if i != piv:
                sub = sub - S.var(rest.index(i)).scale(c)
        images[piv] = sub.scale(1 / cp if not hasattr(cp, "inverse") else cp.inverse())
        gens = [g.subs(images, S) for g in self.gens]
        res = groebner_vecs([poly_to_vec(g) for g in gens if g], ModuleOrder(S))
        back = [R.var(i) for i in rest]
        ell = R.zero()
        for i, c in coeffs.items():
            ell = ell + R.var(i).scale(c)
        back.append(ell)
        out = []
        last = S.ngens
        for v in res.vecs:
            k = min(t[last] for t in v)
            g = Poly(S, {t[1:last] + (t[last] - k,): c for t, c in v.items()})
            out.append(g.subs(back, R))
        return Ideal(R, out)._trimmed()

    def _saturate_variables(self, other):
        # I : m^oo for m generated by variables of one order weight, through a
        # generic linear form; the result is checked against every variable
        R = self.ring
        if not self._order_homogeneous():
            return None
        idx = []
        for g in other.gens:
            if len(g.terms) != 1:
                return None
            m, c = next(iter(g.terms.items()))
            if sum(m) != 1:
                return None
            idx.append(m.index(1))
        if len({R.order_weights[i] for i in idx}) != 1:
            return None
        if len(idx) == 1:
            return self._saturate_linear({idx[0]: R.field.one})
        rng = random.Random(7919 + len(idx))
        coeffs = {i: R.field(rng.randint(1, 97)) for i in idx}
        J = self._saturate_linear(coeffs)
        for g in J.gens:
            if self.contains(g):
                continue
            for i in idx:
                h = g
                for _ in range(64):
                    h = self.reduce(h * R.var(i))
                    if not h:
                        break
                if h:
                    return None
        return J

    def eliminate(self, names):
        """Intersection with the subring generated by the other variables."""
        R = self.ring
        elim = [R.index[n] if isinstance(n, str) else n for n in names]
        keep = [i for i in range(R.ngens) if i not in elim]
        perm = elim + keep
        S = PolyRing([R.names[i] for i in perm], [R.weights()[i] for i in perm], R.field,
                     order=("block", (len(elim), len(keep))) if keep and elim else "grevlex")
        gens = [S.from_other(g) for g in self.gens]
        res = groebner_vecs([poly_to_vec(g) for g in gens], ModuleOrder(S))
        k = len(elim)
        out = []
        for v in res.vecs:
            if all(not any(t[1:k + 1]) for t in v):
                out.append(R.from_other(vec_to_poly(S, v)))
        return Ideal(R, out)

    # -- dimension theory
    def dimension(self):
        """Krull dimension of ``R/I`` (affine cone when homogeneous); -1 for the unit ideal."""
        if self.is_unit():
            return -1
        return len(max_independent_set(self.leading_monomials(), self.ring.ngens))

    def codim(self):
        d = self.dimension()
        return self.ring.ngens - d if d >= 0 else float("inf")

    def radical_contains(self, f):
        f = self.ring(f)
        cur = f
        for _ in range(4):
            if self.contains(cur):
                return True
            cur = cur * cur
            if len(cur.terms) > 400:
                break
        # Rabinowitsch
        R = self.ring
        S = PolyRing(R.names + ("_rab",), R.weights() + ([1] if R.rank == 1 else [(1, 0)]), R.field)
        t = S.var("_rab")
        J = Ideal(S, [S.from_other(g) for g in self.gens] + [t * S.from_other(f) - 1])
        return J.is_unit()

    # -- primes
    def is_prime(self):
        ps = minimal_primes(self)
        if len(ps) != 1:
            return False
        return ps[0].is_subset(self)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def ideal(ring, gens):
    return Ideal(ring, gens)


def groebner_basis(I, order=None):
    """Reduced Gröbner basis of ``I``; ``order`` is a descriptor such as ``"lex"``.

    With an explicit order the basis lives in a copy of the ring carrying that order.
    """
    if order is None:
        return I.gb()
    R = I.ring.with_order(order)
    return Ideal(R, [R.from_other(g) for g in I.gens]).gb()


def normal_form(f, I):
    if f.ring != I.ring:
        raise RingError("polynomial and ideal live in different rings")
    return I.reduce(f)


def ideal_arith(I, J, op):
    if I.ring != J.ring:
        raise RingError("ideals live in different rings")
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    if op == "intersection":
        return I.intersect(J)
    raise ValueError(f"unknown ideal operation {op!r}")


def ideal_quotient(I, J, saturate=False):
    if I.ring != J.ring:
        raise RingError("ideals live in different rings")
    return I.saturate(J) if saturate else I.quotient(J)


def eliminate(I, names):
    return I.eliminate(names)


def max_independent_set(leads, n):
    """Largest variable set containing the support of no leading monomial."""
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in leads]
    supports = [s for s in supports if not any(t < s for t in supports)]
    best = []

    def ok(S):
        return not any(s <= S for s in supports)

    # depth first with pruning by size
    def dfs(start, cur):
        nonlocal best
        if len(cur) + (n - start) <= len(best):
            return
        if len(cur) > len(best):
            best = list(cur)
        for i in range(start, n):
            cur.append(i)
            if ok(frozenset(cur)):
                dfs(i + 1, cur)
            cur.pop()

    if any(len(s) == 0 for s in supports):
        return []
    dfs(0, [])
    return best


# ---------------------------------------------------------------- factoring

_ALG = {}


def _sympy_domain(K):
    import sympy

    if K == QQ:
        return sympy.QQ
    key = K.minpoly
    if key not in _ALG:
        t = sympy.Symbol("t")
        mp = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t**i
                 for i, c in enumerate(K.minpoly))
        _ALG[key] = sympy.QQ.algebraic_field(sympy.CRootOf(mp, 0))
    return _ALG[key]


def _coeff_to_sympy(dom, K, c):
    import sympy

    if K == QQ:
        return sympy.Rational(int(c.numerator), int(c.denominator))
    # ANP coefficients are listed highest power first
    return dom.new([dom.dom.convert(sympy.Rational(int(q.numerator), int(q.denominator)))
                          for q in reversed(c.c)])


def _coeff_from_sympy(dom, K, c):
    if K == QQ:
        return mpq(int(c.numerator), int(c.denominator))
    return K([Fraction(int(q.numerator), int(q.denominator)) for q in reversed(c.to_list())])


def _to_sympy(f):
    import sympy

    dom = _sympy_domain(f.ring.field)
    gens = sympy.symbols(" ".join(f.ring.names) + " _dummy")[:f.ring.ngens]
    d = {m: _coeff_to_sympy(dom, f.ring.field, c) for m, c in f.terms.items()}
    return (sympy.Poly.from_dict(d, *gens, domain=dom) if d else None), gens, dom


def _from_sympy(ring, p, dom):
    out = {}
    for m, c in p.as_dict(native=True).items():
        out[tuple(m)] = _coeff_from_sympy(dom, ring.field, c)
    return Poly(ring, out)


def factor(f):
    """Irreducible factors of ``f`` over the coefficient field, with multiplicities.

    The constant factor is dropped and every factor is monic.
    """
    if len(f.terms) <= 1:
        out = []
        for m in f.terms:
            for i, a in enumerate(m):
                if a:
                    out.append((f.ring.var(i), a))
        return out
    p, gens, dom = _to_sympy(f)
    _, facs = p.factor_list()
    res = []
    for q, e in facs:
        g = _from_sympy(f.ring, q.as_poly(*gens, domain=dom), dom).monic()
        if g.total_degree() > 0:
            res.append((g, e))
    return res


def squarefree_part(f):
    fs = factor(f)
    if not fs:
        return f.ring.one()
    return reduce(lambda a, b: a * b, (g for g, _ in fs))


# ---------------------------------------------------------------- minimal primes

def _remove_redundant(ideals):
    out = []
    for I in ideals:
        if I.is_unit():
            continue
        if any(J.is_subset(I) for J in out):
            continue
        out = [J for J in out if not I.is_subset(J)]
        out.append(I)
    return out


def _monomial_primes(I):
    # minimal primes of a monomial ideal: minimal vertex covers of supports
    supports = []
    for g in I.gb():
        if len(g.terms) != 1:
            return None
        m = next(iter(g.terms))
        supports.append(frozenset(i for i, a in enumerate(m) if a))
    covers = [frozenset()]
    for s in supports:
        new = []
        for c in covers:
            if c & s:
                new.append(c)
            else:
                new.extend(c | {i} for i in s)
        new = list(set(new))
        covers = [c for c in new if not any(d < c for d in new)]
    R = I.ring
    return [Ideal(R, [R.var(i) for i in sorted(c)]) for c in covers]


def minimal_primes(I, budget=None, _depth=0):
    """Minimal associated primes of ``I`` over QQ.

    Splits along reducible Gröbner basis elements, then certifies each
    remaining piece prime by a generic primitive element over the field of
    fractions of an independent set of variables.
    """
    if _depth > 60:
        raise BudgetExceeded("decomposition depth exceeded")
    if I.is_unit():
        return []
    if I.is_zero():
        return [I]
    mono = _monomial_primes(I)
    if mono is not None:
        return mono
    gb = I.gb()
    for g in sorted(gb, key=lambda p: (p.total_degree(), len(p.terms))):
        fs = factor(g)
        if len(fs) > 1 or (fs and fs[0][1] > 1):
            parts = []
            for h, _ in fs:
                parts.extend(minimal_primes(I + [h], budget, _depth + 1))
            return _remove_redundant(parts)
    # no factoring shortcut: reduce to the equidimensional part via an independent set
    R = I.ring
    U = max_independent_set(I.leading_monomials(), R.ngens)
    X = [i for i in range(R.ngens) if i not in U]
    if not U:
        return _zero_dim_primes(I, budget, _depth)
    h, dim_x, Sgb, S = _lead_coefficient_product(I, U, X)
    parts = []
    J = I.saturate(h) if h.total_degree() > 0 else I
    parts.extend(_equidim_primes(J, U, X, dim_x, budget, _depth))
    if h.total_degree() > 0:
        for hf, _ in factor(h):
            parts.extend(minimal_primes(I + [hf], budget, _depth + 1))
    return _remove_redundant(parts)


def _lead_coefficient_product(I, U, X):
    R = I.ring
    perm = X + U
    S = PolyRing([R.names[i] for i in perm], [R.weights()[i] for i in perm], R.field,
                 order=("block", (len(X), len(U))))
    res = groebner_vecs([poly_to_vec(S.from_other(g)) for g in I.gens], ModuleOrder(S))
    k = len(X)
    h = R.one()
    hf = []
    xleads = []
    for v in res.vecs:
        lt = lead_term(v, res.order)
        xpart = lt[1:k + 1]
        xleads.append(xpart)
        coeff = {}
        for t, c in v.items():
            if t[1:k + 1] == xpart:
                coeff[(0,) * k + t[k + 1:]] = c
        lc = R.from_other(Poly(S, coeff))
        if lc.total_degree() > 0:
            for f, _ in factor(lc):
                if f not in hf:
                    hf.append(f)
                    h = h * f
    dim_x = _count_standard(xleads, k)
    return h, dim_x, res, S


def _count_standard(leads, k, cap=100000):
    leads = [m for m in leads]
    count = 0
    frontier = [(0,) * k]
    seen = set(frontier)
    while frontier:
        m = frontier.pop()
        if any(all(a <= b for a, b in zip(l, m)) for l in leads):
            continue
        count += 1
        if count > cap:
            raise BudgetExceeded("standard monomial count too large")
        for i in range(k):
            e = list(m)
            e[i] += 1
            e = tuple(e)
            if e not in seen:
                seen.add(e)
                frontier.append(e)
    return count


def _primitive_poly(J, U, X, seed):
    # eliminant of a random linear form in the X variables over k[U]
    R = J.ring
    rng = random.Random(seed)
    coeffs = [rng.randint(1, 7 + seed) for _ in X]
    coeffs[0] = 1
    S = PolyRing(R.names + ("_t",), R.weights() + ([1] if R.rank == 1 else [(1, 0)]), R.field)
    t = S.var("_t")
    ell = reduce(lambda a, b: a + b, (S.var(R.names[i]).scale(c) for i, c in zip(X, coeffs)))
    K = Ideal(S, [S.from_other(g) for g in J.gens] + [t - ell])
    E = K.eliminate([R.names[i] for i in X])
    gs = sorted(E.gens, key=lambda p: (p.total_degree(), len(p.terms)))
    tidx = S.index["_t"]
    cands = [g for g in gs if any(m[tidx] for m in g.terms)]
    g = min(cands, key=lambda p: (max(m[tidx] for m in p.terms), len(p.terms)))
    return g, max(m[tidx] for m in g.terms), ell, S


def _equidim_primes(J, U, X, dim_x, budget, depth):
    if J.is_unit():
        return []
    for seed in range(4):
        g, tdeg, ell, S = _primitive_poly(J, U, X, seed)
        fs = factor(g)
        tidx = S.index["_t"]
        tf = [(f, e) for f, e in fs if any(m[tidx] for m in f.terms)]
        if len(tf) == 1 and tf[0][1] == 1 and tdeg == dim_x:
            return [J]
        if len(tf) > 1 or (tf and tf[0][1] > 1):
            R = J.ring
            parts = []
            for f, _ in tf:
                sub = f.subs([S.var(nm) for nm in R.names] + [ell], S)
                fr = R.from_other(sub)
                parts.extend(minimal_primes(J + [fr], budget, depth + 1))
            return _remove_redundant(parts)
    raise BudgetExceeded("could not certify primality")


def _zero_dim_primes(I, budget, depth):
    # zero-dimensional affine ideal (for homogeneous input only the irrelevant ideal)
    R = I.ring
    if I.is_homogeneous() and R.is_positively_graded():
        return [Ideal(R, R.gens())]
    dim_x = _count_standard(I.leading_monomials(), R.ngens)
    return _equidim_primes(I, [], list(range(R.ngens)), dim_x, budget, depth)
