"""Hilbert series, functions and quasi-polynomials of graded modules.

Everything is computed from leading terms: a cokernel ``F / M`` has the same
Hilbert series as ``F / in(M)``, and the latter is a sum of cyclic monomial
quotients ``R/J_c (-shift_c)``.
"""

from fractions import Fraction
from functools import reduce
from math import factorial, lcm


# ---------------------------------------------------------------- numerators

def _minimize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _padd(p, q, shift=None):
    out = dict(p)
    for d, c in q.items():
        if shift is not None:
            d = tuple(a + b for a, b in zip(d, shift))
        v = out.get(d, 0) + c
        if v:
            out[d] = v
        else:
            out.pop(d, None)
    return out


def _pmul(p, q):
    out = {}
    for d1, c1 in p.items():
        for d2, c2 in q.items():
            d = tuple(a + b for a, b in zip(d1, d2))
            out[d] = out.get(d, 0) + c1 * c2
    return {d: c for d, c in out.items() if c}


def _mdeg(m, degs):
    r = len(degs[0])
    return tuple(sum(a * d[k] for a, d in zip(m, degs)) for k in range(r))


def monomial_numerator(gens, degs):
    """Numerator ``K(t)`` with ``HS(R/J) = K(t) / prod(1 - t^deg x_i)``."""
    r = len(degs[0])
    zero = (0,) * r
    gens = _minimize(gens)
    cache = {}

    def rec(gs):
        key = tuple(sorted(gs))
        if key in cache:
            return cache[key]
        if not gs:
            res = {zero: 1}
        elif any(sum(g) == 0 for g in gs):
            res = {}
        else:
            # split off generators coprime to everything else
            supp = [frozenset(i for i, a in enumerate(g) if a) for g in gs]
            lone = [k for k in range(len(gs))
                    if all(not (supp[k] & supp[j]) for j in range(len(gs)) if j != k)]
            if lone:
                res = {zero: 1}
                for k in lone:
                    res = _pmul(res, {zero: 1, _mdeg(gs[k], degs): -1})
                rest = [gs[k] for k in range(len(gs)) if k not in lone]
                if rest:
                    res = _pmul(res, rec(rest))
            else:
                counts = {}
                for g in gs:
                    for i, a in enumerate(g):
                        if a:
                            counts[i] = counts.get(i, 0) + 1
                v = max(counts, key=lambda i: (counts[i], -i))
                exps = sorted(g[v] for g in gs if g[v])
                e = exps[(len(exps) - 1) // 2]
                p = tuple(e if i == v else 0 for i in range(len(gs[0])))
                plus = _minimize([g for g in gs if g[v] < e] + [p])
                colon = _minimize([tuple(max(a - b, 0) for a, b in zip(g, p)) for g in gs])
                res = _padd(rec(plus), rec(colon), _mdeg(p, degs))
        cache[key] = res
        return res

    return rec(gens)


class HilbertSeries:
    """``numerator / prod(1 - t^{deg x_i})`` with an exact integer numerator."""

    def __init__(self, numerator, degs):
        self.numerator = {d: c for d, c in numerator.items() if c}
        self.degs = tuple(tuple(d) for d in degs)
        self.rank = len(self.degs[0]) if self.degs else 1

    @classmethod
    def from_leads(cls, leads_by_comp, shifts, degs):
        """Series of ``F/in(M)``: ``leads_by_comp[c]`` lists lead monomials in component c."""
        num = {}
        for c, shift in enumerate(shifts):
            k = monomial_numerator(leads_by_comp.get(c, []), degs)
            sh = shift if isinstance(shift, tuple) else (shift,)
            num = _padd(num, k, sh)
        return cls(num, degs)

    def __add__(self, other):
        return HilbertSeries(_padd(self.numerator, other.numerator), self.degs)

    def __sub__(self, other):
        return HilbertSeries(_padd(self.numerator, {d: -c for d, c in other.numerator.items()}),
                             self.degs)

    def shift(self, d):
        d = d if isinstance(d, tuple) else (d,)
        return HilbertSeries({tuple(a + b for a, b in zip(k, d)): c for k, c in self.numerator.items()},
                             self.degs)

    def is_zero(self):
        return not self.numerator

    # -- coefficients
    def coefficients(self, upto):
        """Hilbert function on degrees ``<= upto`` (rank 1: dict int->int)."""
        if self.rank != 1:
            raise ValueError("use bigraded_coefficients for rank 2")
        lo = min((d[0] for d in self.numerator), default=0)
        if upto < lo:
            return {}
        size = upto - lo + 1
        arr = [0] * size
        for d, c in self.numerator.items():
            if d[0] <= upto:
                arr[d[0] - lo] += c
        for w in self.degs:
            w = w[0]
            for i in range(w, size):
                arr[i] += arr[i - w]
        return {lo + i: arr[i] for i in range(size)}

    def __call__(self, d):
        if self.rank == 1:
            d = d[0] if isinstance(d, tuple) else d
            return self.coefficients(d).get(d, 0)
        return self.bigraded_coefficients(d).get(tuple(d), 0)

    def bigraded_coefficients(self, upto):
        """Values on the box of bidegrees ``<= upto`` (weights on one side each)."""
        u0, u1 = upto
        lo0 = min((d[0] for d in self.numerator), default=0)
        lo1 = min((d[1] for d in self.numerator), default=0)
        n0, n1 = u0 - lo0 + 1, u1 - lo1 + 1
        if n0 <= 0 or n1 <= 0:
            return {}
        arr = [[0] * n1 for _ in range(n0)]
        for d, c in self.numerator.items():
            if d[0] <= u0 and d[1] <= u1:
                arr[d[0] - lo0][d[1] - lo1] += c
        for w in self.degs:
            a, b = w
            if a > 0 and b == 0:
                for i in range(a, n0):
                    row, prev = arr[i], arr[i - a]
                    for j in range(n1):
                        row[j] += prev[j]
            elif b > 0 and a == 0:
                for i in range(n0):
                    row = arr[i]
                    for j in range(b, n1):
                        row[j] += row[j - b]
            else:
                raise ValueError("bigraded weights must be supported on one side")
        return {(lo0 + i, lo1 + j): arr[i][j] for i in range(n0) for j in range(n1)}

    # -- asymptotics (rank 1)
    def _coarse(self):
        # total degree coarsening
        num = {}
        for d, c in self.numerator.items():
            s = sum(d)
            num[s] = num.get(s, 0) + c
        return num, [sum(w) for w in self.degs]

    def regularity_bound(self):
        """Hilbert function agrees with the quasi-polynomial for degrees above this."""
        num, ws = self._coarse() if self.rank != 1 else ({d[0]: c for d, c in self.numerator.items()},
                                                          [w[0] for w in self.degs])
        if not num:
            return 0
        return max(num) - sum(ws)

    def period(self):
        return reduce(lcm, (w[0] for w in self.degs), 1) if self.rank == 1 else 1

    def quasi_polynomial(self, n):
        """Value at ``n`` of the Hilbert quasi-polynomial (rank 1 grading)."""
        if self.rank != 1:
            raise ValueError("rank 1 grading required")
        if not self.numerator:
            return 0
        L = self.period()
        npts = len(self.degs) + 1
        start = self.regularity_bound() + 1
        n0 = start + ((n - start) % L)
        xs = [n0 + k * L for k in range(npts)]
        vals = self.coefficients(xs[-1])
        ys = [vals.get(x, 0) for x in xs]
        if n in xs:
            return ys[xs.index(n)]
        total = Fraction(0)
        for i, xi in enumerate(xs):
            term = Fraction(ys[i])
            for j, xj in enumerate(xs):
                if j != i:
                    term *= Fraction(n - xj, xi - xj)
            total += term
        assert total.denominator == 1
        return int(total)

    def dimension(self):
        """Krull dimension: order of the pole at t = 1."""
        num, ws = self._coarse()
        if not num:
            return -1
        k = _vanishing_order(num)
        return len(ws) - k

    def multiplicity(self):
        """Normalized leading coefficient ``e`` with ``HF(n) ~ e n^(d-1)/(d-1)!``."""
        num, ws = self._coarse()
        if not num:
            return Fraction(0)
        k = _vanishing_order(num)
        # Q(1) = (-1)^k K^(k)(1) / k!
        q1 = Fraction((-1) ** k * sum(c * _falling(d, k) for d, c in num.items()), factorial(k))
        return Fraction(q1, reduce(lambda a, b: a * b, ws, 1))

    def __repr__(self):
        return f"HilbertSeries({self.numerator})"


def _falling(d, k):
    out = 1
    for i in range(k):
        out *= d - i
    return out


def _vanishing_order(num):
    # order of vanishing at t = 1 of a Laurent polynomial
    k = 0
    while True:
        if sum(c * _falling(d, k) for d, c in num.items()) != 0:
            return k
        k += 1
        if k > 200:
            raise ValueError("zero numerator")


def monomials_of_degree(degs, d, nvars=None):
    """All exponent vectors of (multi)degree ``d``."""
    d = d if isinstance(d, tuple) else (d,)
    n = len(degs)
    r = len(d)
    out = []

    def rec(i, rem, cur):
        if i == n:
            if all(x == 0 for x in rem):
                out.append(tuple(cur))
            return
        w = degs[i]
        if all(x == 0 for x in w):
            raise ValueError("degree zero variable")
        k = 0
        while all(rem[j] - k * w[j] >= 0 for j in range(r)):
            cur.append(k)
            rec(i + 1, tuple(rem[j] - k * w[j] for j in range(r)), cur)
            cur.pop()
            k += 1

    if any(x < 0 for x in d):
        return []
    rec(0, d, [])
    return out
