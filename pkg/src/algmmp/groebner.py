"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a vector is a dict ``{term: coeff}`` where a term is the flat
tuple ``(component, e_0, ..., e_{n-1})``.  Ideals are the rank one case.
"""

import heapq

from .poly import Poly


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its allotted work."""


class ModuleOrder:
    """Term order on a free module ``R^r``.

    ``mode`` is ``top`` (degree, then ring order, then component) or ``pot``
    (component first).  ``blocks`` assigns a block index to each
    component; a term in a lower block always beats one in a higher block.
    """

    def __init__(self, ring, ncomp=1, shifts=None, mode="top", blocks=None, order=None):
        self.ring = ring
        self.ro = order or ring.order
        self.w = ring.order_weights
        self.ncomp = ncomp
        self.shifts = tuple(shifts) if shifts else (0,) * ncomp
        if len(self.shifts) != ncomp:
            raise ValueError("one shift per component is required")
        self.mode = mode
        self.blocks = tuple(blocks) if blocks else None
        self._cache = {}
        self.plain = ncomp == 1 and blocks is None

    def sugar(self, t):
        w = self.w
        s = self.shifts[t[0]]
        for i in range(1, len(t)):
            if t[i]:
                s += w[i - 1] * t[i]
        return s

    def key(self, t):
        k = self._cache.get(t)
        if k is not None:
            return k
        rk = self.ro.key(t[1:])
        if self.plain:
            k = rk
        else:
            c = t[0]
            if self.mode == "pot":
                k = (-c,) + rk
            else:
                k = (self.sugar(t),) + rk + (-c,)
            if self.blocks is not None:
                k = (-self.blocks[c],) + k
        self._cache[t] = k
        return k


# ---------------------------------------------------------------- conversions

def poly_to_vec(f, comp=0):
    return {(comp,) + m: c for m, c in f.terms.items()}


def vec_to_poly(ring, v):
    return Poly(ring, {t[1:]: c for t, c in v.items()})


def polys_to_vec(fs):
    v = {}
    for i, f in enumerate(fs):
        for m, c in f.terms.items():
            v[(i,) + m] = c
    return v


def vec_to_polys(ring, v, ncomp):
    parts = [dict() for _ in range(ncomp)]
    for t, c in v.items():
        parts[t[0]][t[1:]] = c
    return [Poly(ring, p) for p in parts]


# ---------------------------------------------------------------- term helpers

def _divides(a, b):
    if a[0] != b[0]:
        return False
    for i in range(1, len(a)):
        if a[i] > b[i]:
            return False
    return True


def _quot(b, a):
    # b / a as a padded multiplier (component slot 0)
    return (0,) + tuple(b[i] - a[i] for i in range(1, len(a)))


def _lcm(a, b):
    return (a[0],) + tuple(x if x > y else y for x, y in zip(a[1:], b[1:]))


def _coprime(a, b):
    for i in range(1, len(a)):
        if a[i] and b[i]:
            return False
    return True


def _shift(t, m):
    return tuple(x + y for x, y in zip(t, m))


def lead_term(v, order):
    return max(v, key=order.key)


# ---------------------------------------------------------------- reduction

class _Basis:
    def __init__(self, order):
        self.order = order
        self.vecs = []
        self.leads = []
        self.sugars = []
        self.active = {}   # component -> list of indices usable as reducers

    def add(self, v, sugar):
        lt = lead_term(v, self.order)
        inv = 1 / v[lt] if not hasattr(v[lt], "inverse") else v[lt].inverse()
        if v[lt] != 1:
            v = {t: c * inv for t, c in v.items()}
        self.vecs.append(v)
        self.leads.append(lt)
        self.sugars.append(sugar)
        idx = len(self.vecs) - 1
        return idx

    def find_reducer(self, t):
        for i in self.active.get(t[0], ()):
            if _divides(self.leads[i], t):
                return i
        return None


def _reduce(p, basis, full=True, counter=None):
    """Normal form of ``p`` (dict, consumed) modulo the active basis."""
    key = basis.order.key
    rem = {}
    while p:
        t = max(p, key=key)
        i = basis.find_reducer(t)
        if i is None:
            if not full:
                rem.update(p)
                return rem
            rem[t] = p.pop(t)
            continue
        c = p[t]
        lt = basis.leads[i]
        m = _quot(t, lt)
        for s, d in basis.vecs[i].items():
            u = _shift(s, m)
            e = p.get(u)
            if e is None:
                p[u] = -c * d
            else:
                e = e - c * d
                if e:
                    p[u] = e
                else:
                    del p[u]
        if counter is not None:
            counter[0] += 1
            if counter[1] is not None and counter[0] > counter[1]:
                raise BudgetExceeded("reduction budget exhausted")
    return rem


def normal_form_vec(v, gb_vecs, order):
    basis = _Basis(order)
    for g in gb_vecs:
        i = basis.add(dict(g), 0)
        basis.active.setdefault(basis.leads[i][0], []).append(i)
    return _reduce(dict(v), basis)


# ---------------------------------------------------------------- Buchberger

def _spoly(basis, i, j):
    a, b = basis.leads[i], basis.leads[j]
    l = _lcm(a, b)
    mi, mj = _quot(l, a), _quot(l, b)
    p = {}
    for s, c in basis.vecs[i].items():
        p[_shift(s, mi)] = c
    for s, c in basis.vecs[j].items():
        u = _shift(s, mj)
        e = p.get(u)
        if e is None:
            p[u] = -c
        else:
            e = e - c
            if e:
                p[u] = e
            else:
                del p[u]
    return p


class GBResult:
    """Reduced Gröbner basis plus bookkeeping from the run."""

    def __init__(self, vecs, order, mingens=None):
        self.vecs = vecs
        self.order = order
        self.mingens = mingens
        self.leads = [lead_term(v, order) for v in vecs]

    def reduce(self, v):
        return normal_form_vec(v, self.vecs, self.order)


def groebner_vecs(vecs, order, minimal=False, budget=None, degree_bound=None):
    """Reduced Gröbner basis of the submodule spanned by ``vecs``.

    With ``minimal=True`` (homogeneous input expected) the indices of a
    minimal generating subset of ``vecs`` are reported in ``mingens``.
    ``degree_bound`` truncates the computation at that sugar degree.
    """
    basis = _Basis(order)
    counter = [0, budget]
    inputs = []
    for k, v in enumerate(vecs):
        v = {t: c for t, c in v.items() if c}
        if v:
            inputs.append((max(order.sugar(t) for t in v), k, v))
    inputs.sort(key=lambda x: (x[0], x[1]))
    pairs = []   # heap of (sugar, lcm key placeholder, i, j)
    pair_set = {}
    active_all = []
    mingens = []
    seq = [0]

    def push_pair(i, j):
        l = _lcm(basis.leads[i], basis.leads[j])
        s = max(basis.sugars[i] + order.sugar(l) - order.sugar(basis.leads[i]),
                basis.sugars[j] + order.sugar(l) - order.sugar(basis.leads[j]))
        seq[0] += 1
        entry = [s, seq[0], i, j, l, True]
        pair_set[(i, j)] = entry
        heapq.heappush(pairs, entry)

    plain = order.ncomp == 1

    def update(h):
        lh = basis.leads[h]
        comp = lh[0]
        cands = [g for g in basis.active.get(comp, ())]
        lcms = {g: _lcm(basis.leads[g], lh) for g in cands}
        # Gebauer-Moller: drop (g,h) when another lcm(g',h) properly divides it
        keep = []
        for idx, g in enumerate(cands):
            lg = lcms[g]
            if plain and _coprime(basis.leads[g], lh):
                keep.append((g, True))
                continue
            dominated = False
            for g2 in cands:
                if g2 == g:
                    continue
                l2 = lcms[g2]
                if _divides(l2, lg) and (l2 != lg or g2 < g):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, False))
        # kill old pairs whose lcm is divisible by lh strictly
        for key_, entry in list(pair_set.items()):
            if not entry[5]:
                continue
            i, j = key_
            if basis.leads[i][0] != comp:
                continue
            l = entry[4]
            if _divides(lh, l) and _lcm(basis.leads[i], lh) != l and _lcm(basis.leads[j], lh) != l:
                entry[5] = False
                del pair_set[key_]
        for g, cop in keep:
            if not cop:
                push_pair(g, h)
        # lh may make older reducers redundant
        lst = basis.active.setdefault(comp, [])
        basis.active[comp] = [g for g in lst if not _divides(lh, basis.leads[g])] + [h]

    ip = 0
    while ip < len(inputs) or pairs:
        while pairs and not pairs[0][5]:
            heapq.heappop(pairs)
        next_pair = pairs[0][0] if pairs else None
        next_in = inputs[ip][0] if ip < len(inputs) else None
        if next_pair is None and next_in is None:
            break
        cur = min(x for x in (next_pair, next_in) if x is not None)
        if degree_bound is not None and cur > degree_bound:
            break
        if next_pair is not None and next_pair == cur:
            entry = heapq.heappop(pairs)
            if not entry[5]:
                continue
            entry[5] = False
            pair_set.pop((entry[2], entry[3]), None)
            p = _spoly(basis, entry[2], entry[3])
            sug = entry[0]
            tag = None
        else:
            sug, tag, v = inputs[ip]
            ip += 1
            p = dict(v)
        h = _reduce(p, basis, full=False, counter=counter)
        if h:
            # full tail reduction keeps the basis small in practice
            lt = max(h, key=order.key)
            c = h.pop(lt)
            h = _reduce(h, basis, full=True, counter=counter)
            h[lt] = c
            idx = basis.add(h, sug)
            update(idx)
            if tag is not None:
                mingens.append(tag)
    # reduced basis
    final = []
    for lst in basis.active.values():
        final.extend(lst)
    red = _Basis(order)
    for i in final:
        j = red.add(dict(basis.vecs[i]), basis.sugars[i])
        red.active.setdefault(red.leads[j][0], []).append(j)
    out = []
    for j in range(len(red.vecs)):
        v = dict(red.vecs[j])
        lt = red.leads[j]
        c = v.pop(lt)
        comp = lt[0]
        saved = red.active[comp]
        red.active[comp] = [k for k in saved if k != j]
        v = _reduce(v, red, full=True, counter=counter)
        red.active[comp] = saved
        v[lt] = c
        out.append(v)
    out.sort(key=lambda v: order.key(lead_term(v, order)))
    return GBResult(out, order, sorted(mingens) if minimal else None)


# ---------------------------------------------------------------- syzygies

def syzygy_vecs(vecs, ring, ncomp, shifts=None, budget=None):
    """Generators of the syzygy module of ``vecs`` (vectors in ``R^ncomp``).

    Uses the augmented module ``R^ncomp + R^k`` with a block order so that
    the elements living purely in the second block are the syzygies.
    Returns vectors in ``R^k`` (homogeneous when the input is).
    """
    k = len(vecs)
    shifts = list(shifts) if shifts else [0] * ncomp
    aug_shifts = list(shifts)
    for v in vecs:
        if v:
            t = next(iter(v))
            aug_shifts.append(ModuleOrder(ring, ncomp, shifts).sugar(t))
        else:
            aug_shifts.append(0)
    order = ModuleOrder(ring, ncomp + k, aug_shifts, blocks=[0] * ncomp + [1] * k)
    aug = []
    zero = ring.zero_mono
    one = ring.field.one
    for i, v in enumerate(vecs):
        a = dict(v)
        a[(ncomp + i,) + zero] = one
        aug.append(a)
    gb = groebner_vecs(aug, order, budget=budget)
    syz = []
    for v in gb.vecs:
        if lead_term(v, order)[0] >= ncomp:
            syz.append({(t[0] - ncomp,) + t[1:]: c for t, c in v.items()})
    return syz, aug_shifts[ncomp:]
