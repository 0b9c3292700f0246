"""Graded polynomial rings, monomial orders and the canonical text syntax.

Polynomials are immutable wrappers around ``{exponent tuple: coefficient}``
dicts.  Gradings have rank 1 (weights are positive integers) or rank 2
(each weight is a pair supported on one coordinate).
"""

import re
from functools import reduce
from math import lcm

from .field import QQ, NFElement, field_from_descriptor


class RingError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}: {text!r}")
        self.line, self.column = line, col


# ---------------------------------------------------------------- orders

class MonomialOrder:
    """A monomial order given by a key function on exponent tuples.

    ``kind`` is one of ``grevlex``, ``lex``, ``deglex`` or ``block``; block
    orders compare weighted grevlex keys block by block (an elimination
    order for the first block).
    """

    def __init__(self, kind, weights, blocks=None):
        self.kind = kind
        self.weights = tuple(weights)
        n = len(self.weights)
        self.blocks = tuple(blocks) if blocks else (n,)
        if sum(self.blocks) != n:
            raise RingError("block sizes must add up to the number of variables")
        self._cache = {}
        if kind == "grevlex":
            self._raw = self._grevlex
        elif kind == "lex":
            self._raw = lambda m: m
        elif kind == "deglex":
            w = self.weights
            self._raw = lambda m: (sum(a * b for a, b in zip(w, m)),) + m
        elif kind == "block":
            self._raw = self._block
        else:
            raise RingError(f"unsupported monomial order {kind!r}")

    def _grevlex(self, m, lo=0, hi=None):
        hi = len(m) if hi is None else hi
        w = self.weights
        d = 0
        for i in range(lo, hi):
            d += w[i] * m[i]
        # lex on partial weighted sums == weighted reverse lex on exponents
        out = [d]
        s = d
        for i in range(hi - 1, lo, -1):
            s -= w[i] * m[i]
            out.append(s)
        return tuple(out)

    def _block(self, m):
        key = ()
        lo = 0
        for b in self.blocks:
            key += self._grevlex(m, lo, lo + b)
            lo += b
        return key

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            k = self._raw(m)
            self._cache[m] = k
        return k

    def descriptor(self):
        if self.kind == "block":
            return ("block", self.blocks)
        return self.kind

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind
                and self.weights == other.weights and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.kind, self.weights, self.blocks))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, blocks={self.blocks})"


# ---------------------------------------------------------------- rings

class PolyRing:
    """Polynomial ring over an exact field with a rank 1 or rank 2 grading.

    >>> R = PolyRing(["x", "y"], [1, 2])
    >>> R("x^2 + y").degree()
    2
    """

    def __init__(self, names, weights=None, field=QQ, order="grevlex"):
        names = list(names)
        if len(set(names)) != len(names):
            raise RingError("duplicate variable names")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise RingError(f"bad variable name {nm!r}")
            if field is not QQ and nm == field.gen_name:
                raise RingError(f"variable {nm!r} clashes with the field generator")
        n = len(names)
        if weights is None:
            weights = [1] * n
        weights = list(weights)
        if len(weights) != n:
            raise RingError("one weight per variable is required")
        if all(isinstance(w, int) for w in weights):
            rank = 1
            degs = tuple((w,) for w in weights)
        else:
            degs = tuple(tuple(int(a) for a in w) for w in weights)
            rank = len(degs[0]) if degs else 1
            if any(len(d) != rank for d in degs):
                raise RingError("inconsistent grading rank")
        if rank not in (1, 2):
            raise RingError("grading rank must be 1 or 2")
        self.names = tuple(names)
        self.ngens = n
        self.rank = rank
        self.degs = degs
        self.field = field
        self.index = {nm: i for i, nm in enumerate(names)}
        self.zero_mono = (0,) * n
        # order weights: positive total degrees (1 for non-positive ones)
        self.order_weights = tuple(max(sum(d), 1) for d in degs)
        self.order = self.make_order(order)

    # construction helpers
    def make_order(self, spec):
        if isinstance(spec, MonomialOrder):
            return spec
        if isinstance(spec, tuple) and spec[0] == "block":
            return MonomialOrder("block", self.order_weights, spec[1])
        return MonomialOrder(spec, self.order_weights)

    def is_positively_graded(self):
        """True when every variable has a nonzero, non-negative degree."""
        return all(min(d) >= 0 and max(d) > 0 for d in self.degs)

    def check_weights(self):
        if self.rank == 1:
            if not all(d[0] > 0 for d in self.degs):
                raise RingError("weights must be positive")
        else:
            for d in self.degs:
                if sorted(d) != [0, max(d)] or max(d) <= 0:
                    raise RingError("bigraded weights must be positive on exactly one side")

    def gens(self):
        return [self.var(i) for i in range(self.ngens)]

    def var(self, i):
        if isinstance(i, str):
            i = self.index[i]
        m = [0] * self.ngens
        m[i] = 1
        return Poly(self, {tuple(m): self.field.one})

    def __getattr__(self, name):
        idx = self.__dict__.get("index")
        if idx is not None and name in idx:
            return self.var(name)
        raise AttributeError(name)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self.zero_mono: self.field.one})

    def const(self, c):
        c = self.field(c)
        return Poly(self, {self.zero_mono: c} if c else {})

    def monomial(self, m, c=None):
        c = self.field.one if c is None else self.field(c)
        return Poly(self, {tuple(m): c})

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            return self.from_other(x)
        if isinstance(x, str):
            return parse_poly(self, x)
        return self.const(x)

    def from_other(self, f):
        """Map a polynomial of another ring by variable name."""
        pos = []
        for nm in f.ring.names:
            if nm not in self.index:
                if any(m[f.ring.index[nm]] for m in f.terms):
                    raise RingError(f"variable {nm} not in target ring")
                pos.append(None)
            else:
                pos.append(self.index[nm])
        out = {}
        for m, c in f.terms.items():
            e = [0] * self.ngens
            for i, a in enumerate(m):
                if a:
                    e[pos[i]] += a
            out[tuple(e)] = self.field(c) if not self.field.is_element(c) else c
        return Poly(self, out)

    def mono_degree(self, m):
        if self.rank == 1:
            return (sum(a * d[0] for a, d in zip(m, self.degs)),)
        return tuple(sum(a * d[k] for a, d in zip(m, self.degs)) for k in range(self.rank))

    def deg_value(self, d):
        return d[0] if self.rank == 1 else tuple(d)

    def lcm_weight(self):
        return reduce(lcm, (max(d) for d in self.degs), 1)

    def with_order(self, order):
        R = PolyRing(self.names, self._weights_spec(), self.field, order)
        return R

    def _weights_spec(self):
        return [d[0] for d in self.degs] if self.rank == 1 else [tuple(d) for d in self.degs]

    def weights(self):
        return self._weights_spec()

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.degs == other.degs and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.degs, self.field))

    def same_ring(self, other):
        return self == other

    def descriptor(self):
        return {"field": self.field.descriptor(), "grading_rank": self.rank,
                "variables": [{"name": nm, "weight": (d[0] if self.rank == 1 else list(d))}
                              for nm, d in zip(self.names, self.degs)]}

    @classmethod
    def from_descriptor(cls, desc):
        field = field_from_descriptor(desc.get("field"))
        names = [v["name"] for v in desc["variables"]]
        ws = [v.get("weight", 1) for v in desc["variables"]]
        ws = [tuple(w) if isinstance(w, list) else int(w) for w in ws]
        return cls(names, ws, field)

    def __repr__(self):
        ws = ",".join(str(d[0]) if self.rank == 1 else str(d) for d in self.degs)
        return f"{self.field}[{','.join(self.names)}; weights {ws}]"


# ---------------------------------------------------------------- polynomials

def _madd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable polynomial.  Arithmetic is exact."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # arithmetic
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _madd(m1, m2)
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly(self.ring, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono, c=None):
        t = {_madd(m, mono): v for m, v in self.terms.items()}
        p = Poly(self.ring, t)
        return p if c is None else p.scale(c)

    # inspection
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except Exception:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def monomials(self):
        return list(self.terms)

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None):
        if not self.terms:
            return self
        return self.scale(self.ring.field.one / self.leading_coefficient(order))

    def multidegrees(self):
        return {self.ring.mono_degree(m) for m in self.terms}

    def is_homogeneous(self):
        return len(self.multidegrees()) <= 1

    def degree(self):
        """Degree of a homogeneous polynomial (int for rank 1, tuple for rank 2)."""
        ds = self.multidegrees()
        if not ds:
            return None
        if len(ds) > 1:
            if self.ring.rank == 1:
                return max(d[0] for d in ds)
            raise RingError("degree of a non-bihomogeneous polynomial")
        return self.ring.deg_value(next(iter(ds)))

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self):
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return sorted(used)

    def homogeneous_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ring.mono_degree(m), {})[m] = c
        return {d: Poly(self.ring, t) for d, t in parts.items()}

    def diff(self, i):
        if isinstance(i, str):
            i = self.ring.index[i]
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                t[tuple(e)] = c * m[i]
        return Poly(self.ring, t)

    def subs(self, images, target=None):
        """Substitute polynomials (in ``target``) for the variables."""
        target = target or images[0].ring
        result = target.zero()
        cache = {}
        for m, c in self.terms.items():
            term = target.const(c) if self.ring.field == target.field else target.const(c)
            for i, a in enumerate(m):
                if a:
                    key = (i, a)
                    if key not in cache:
                        cache[key] = images[i] ** a
                    term = term * cache[key]
            result = result + term
        return result

    def to_str(self):
        return poly_to_str(self)

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return poly_to_str(self)


# ---------------------------------------------------------------- text syntax

def _mono_str(ring, m):
    parts = []
    for nm, a in zip(ring.names, m):
        if a == 1:
            parts.append(nm)
        elif a > 1:
            parts.append(f"{nm}^{a}")
    return "*".join(parts)


def poly_to_str(f):
    if not f.terms:
        return "0"
    field = f.ring.field
    out = []
    for m, c in f.sorted_terms():
        ms = _mono_str(f.ring, m)
        neg = False
        if field.is_rational(c):
            q = c if not isinstance(c, NFElement) else (c.c[0] if c.c else 0)
            if q < 0:
                neg = True
                q = -q
            cs = field.to_str(field(q)) if isinstance(c, NFElement) else field.to_str(q)
        else:
            cs = field.to_str(c)
        if ms:
            body = ms if cs == "1" else f"{cs}*{ms}"
        else:
            body = cs
        out.append(("-" if neg else "+", body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_poly(ring, text):
    """Parse the canonical syntax: rationals, variables, ``+ - * / ^`` and parentheses."""
    tokens = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            break
        if mt.group(0).strip() == "":
            break
        start = mt.start(mt.lastindex)
        if mt.group(1):
            tokens.append(("num", int(mt.group(1)), start))
        elif mt.group(2):
            tokens.append(("name", mt.group(2), start))
        else:
            tokens.append(("op", mt.group(3), start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    field = ring.field
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        val = term()
        if sign < 0:
            val = -val
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            val = val + t if op == "+" else val - t
        return val

    def term():
        val = power()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            rhs = power()
            if op == "*":
                val = val * rhs
            else:
                if len(rhs.terms) != 1 or rhs.ring.zero_mono not in rhs.terms:
                    raise ParseError("division only by constants", text, tokens[i - 1][2])
                val = val.scale(field.one / rhs.terms[ring.zero_mono])
        return val

    def power():
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            t = take()
            if t[0] != "num":
                raise ParseError("expected integer exponent", text, t[2])
            base = base ** t[1]
        return base

    def atom():
        t = take()
        if t[0] == "num":
            return ring.const(t[1])
        if t[0] == "name":
            if t[1] in ring.index:
                return ring.var(t[1])
            if field is not QQ and t[1] == field.gen_name:
                return ring.const(field.gen())
            raise ParseError(f"unknown variable {t[1]!r}", text, t[2])
        if t[:2] == ("op", "("):
            v = expr()
            c = take()
            if c[:2] != ("op", ")"):
                raise ParseError("expected ')'", text, c[2])
            return v
        if t[:2] == ("op", "-"):
            return -atom()
        raise ParseError("unexpected token", text, t[2])

    result = expr()
    if peek()[0] != "end":
        raise ParseError("trailing input", text, peek()[2])
    return result
