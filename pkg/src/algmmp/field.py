"""Exact ground fields: the rationals and explicitly presented number fields."""

from fractions import Fraction

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    # dense coefficient lists, lowest degree first, b nonzero
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        _poly_trim(a)
    return _poly_trim(q), a


class RationalField:
    """The field of rational numbers; elements are gmpy2 ``mpq``."""

    name = "QQ"
    minpoly = None
    gen_name = None

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return mpq(x)
        return mpq(x)

    def gen(self):
        raise FieldError("QQ has no generator")

    def is_element(self, x):
        return type(x) is type(self.zero)

    def to_str(self, c):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def is_rational(self, c):
        return True

    def descriptor(self):
        return {"name": "QQ"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class NumberField:
    """``QQ(a)`` for a monic irreducible minimal polynomial of ``a``.

    ``minpoly`` is given by its rational coefficients, lowest degree first.
    """

    def __init__(self, minpoly, gen_name="a"):
        coeffs = [mpq(Fraction(c)) if not isinstance(c, type(mpq(0))) else c for c in minpoly]
        _poly_trim(coeffs)
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.gen_name = gen_name
        self._check_irreducible()
        self.name = f"QQ({gen_name})"
        self.zero = NFElement(self, ())
        self.one = NFElement(self, (mpq(1),))

    def _check_irreducible(self):
        import sympy

        t = sympy.Symbol("t")
        p = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t**i
                for i, c in enumerate(self.minpoly))
        if not sympy.Poly(p, t, domain="QQ").is_irreducible:
            raise FieldError(f"{p} is not irreducible over QQ")

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.K != self:
                raise FieldError("element of a different field")
            return x
        if isinstance(x, (list, tuple)):
            return NFElement(self, self._reduce([mpq(Fraction(c)) for c in x]))
        return NFElement(self, self._reduce([QQ(x)]))

    def gen(self):
        return NFElement(self, self._reduce([mpq(0), mpq(1)]))

    def _reduce(self, c):
        c = _poly_trim(list(c))
        if len(c) > self.degree:
            _, c = _poly_divmod(c, list(self.minpoly))
        return tuple(c)

    def is_element(self, x):
        return isinstance(x, NFElement) and x.K == self

    def is_rational(self, c):
        return len(c.c) <= 1

    def to_str(self, c):
        if not c.c:
            return "0"
        parts = []
        for i, q in enumerate(c.c):
            if q == 0:
                continue
            qs = QQ.to_str(q)
            if i == 0:
                parts.append(qs)
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                parts.append(mono if q == 1 else f"{qs}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s if len(parts) == 1 else f"({s})"

    def descriptor(self):
        return {"name": self.name, "generator": self.gen_name,
                "minpoly": [QQ.to_str(c) for c in self.minpoly]}

    def __eq__(self, other):
        return (isinstance(other, NumberField) and other.minpoly == self.minpoly
                and other.gen_name == self.gen_name)

    def __hash__(self):
        return hash((self.minpoly, self.gen_name))

    def __repr__(self):
        return self.name


class NFElement:
    __slots__ = ("K", "c")

    def __init__(self, K, c):
        self.K = K
        self.c = c

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.K is not self.K and other.K != self.K:
                raise FieldError("mixing elements of different number fields")
            return other.c
        return self.K(other).c

    def __add__(self, other):
        b = self._coerce(other)
        a = self.c
        n = max(len(a), len(b))
        r = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        return NFElement(self.K, tuple(_poly_trim(r)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.K, tuple(-x for x in self.c))

    def __sub__(self, other):
        return self + (-NFElement(self.K, self._coerce(other)))

    def __rsub__(self, other):
        return NFElement(self.K, self._coerce(other)) - self

    def __mul__(self, other):
        b = self._coerce(other)
        a = self.c
        if not a or not b:
            return self.K.zero
        r = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                r[i + j] += x * y
        return NFElement(self.K, self.K._reduce(r))

    __rmul__ = __mul__

    def inverse(self):
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in QQ[t]
        r0, r1 = list(self.K.minpoly), list(self.c)
        s0, s1 = [], [mpq(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            prod = [mpq(0)] * (len(q) + len(s1))
            for i, x in enumerate(q):
                for j, y in enumerate(s1):
                    prod[i + j] += x * y
            n = max(len(s0), len(prod))
            s2 = [(s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s2)
        # r0 is a nonzero constant
        g = r0[0]
        return NFElement(self.K, self.K._reduce([x / g for x in s0]))

    def __truediv__(self, other):
        if not isinstance(other, NFElement):
            other = self.K(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.K(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.c == other.c
        if other == 0 and not self.c:
            return True
        try:
            return self.c == self.K(other).c
        except Exception:
            return False

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return bool(self.c)

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return self.K.to_str(self)


def field_from_descriptor(desc):
    if desc is None or desc == "QQ" or desc.get("name", "QQ") == "QQ":
        return QQ
    return NumberField([Fraction(c) for c in desc["minpoly"]], desc.get("generator", "a"))


def is_mpq(x):
    return type(x) is type(mpq(0))


__all__ = ["QQ", "NumberField", "NFElement", "FieldError", "field_from_descriptor", "gmpy2"]
