"""Finitely presented graded modules over quotients of polynomial rings.

A module is ``F / (relations + I F)`` where ``F`` is free on generators of
given (multi)degrees and ``I`` is the ideal of the base ring.  Vectors are
term dicts as in :mod:`algmmp.groebner`.
"""

from itertools import product

from .groebner import ModuleOrder, groebner_vecs, syzygy_vecs, vec_to_polys
from .hilbert import HilbertSeries, monomials_of_degree
from .ideal import Ideal
from .poly import Poly


def _dadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _as_deg(ring, d):
    if isinstance(d, int):
        d = (d,)
    d = tuple(d)
    if len(d) != ring.rank:
        raise ValueError(f"degree {d} has the wrong rank")
    return d


def vec_degree(ring, v, gdeg):
    """Degree of a homogeneous vector (None for the zero vector)."""
    degs = {_dadd(ring.mono_degree(t[1:]), gdeg[t[0]]) for t in v}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("inhomogeneous vector")
    return degs.pop()


def _mul_vec(f, v):
    # polynomial times vector
    out = {}
    for m, c in f.terms.items():
        pm = (0,) + m
        for t, d in v.items():
            u = tuple(a + b for a, b in zip(t, pm))
            e = out.get(u)
            s = c * d if e is None else e + c * d
            if s:
                out[u] = s
            else:
                out.pop(u, None)
    return out


def _add_vec(a, b, scale=None):
    out = dict(a)
    for t, c in b.items():
        if scale is not None:
            c = c * scale
        e = out.get(t)
        s = c if e is None else e + c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _order_for(ring, gdeg):
    return ModuleOrder(ring, len(gdeg), [sum(d) for d in gdeg])


class GradedModule:
    """Cokernel presentation ``F/(relations + I F)`` over ``ring/ideal``."""

    def __init__(self, ring, gdeg, rels=(), ideal=None):
        self.ring = ring
        self.ideal = ideal if ideal is not None else Ideal(ring, [])
        self.gdeg = [_as_deg(ring, d) for d in gdeg]
        self.rels = [dict(r) for r in rels if r]
        for r in self.rels:
            if any(t[0] >= len(self.gdeg) for t in r):
                raise ValueError("relation refers to a missing generator")
            vec_degree(ring, r, self.gdeg)
        self._gb = None

    # -- constructors
    @classmethod
    def free(cls, ring, degs, ideal=None):
        """``R(-a_1) + ... + R(-a_k)`` given the generator degrees ``a_j``."""
        return cls(ring, degs, [], ideal)

    @classmethod
    def quotient_ring(cls, ring, ideal):
        return cls(ring, [(0,) * ring.rank], [], ideal)

    @classmethod
    def from_ideal(cls, I):
        """The ideal ``I`` as a submodule of ``R`` (generated by its generators)."""
        R = I.ring
        zero = (0,) * R.rank
        return submodule(R, Ideal(R, []), [zero], [{(0,) + m: c for m, c in g.terms.items()}
                                                  for g in I.gens], [])

    @property
    def ngens(self):
        return len(self.gdeg)

    def rel_degrees(self):
        return [vec_degree(self.ring, r, self.gdeg) for r in self.rels]

    def all_relations(self):
        """Relations including ``I F``; ideal multiples come first."""
        out = []
        zero = self.ring.zero_mono
        for g in self.ideal.gens:
            for i in range(self.ngens):
                out.append({(i,) + m: c for m, c in g.terms.items()})
        return out + [dict(r) for r in self.rels]

    def order(self):
        return _order_for(self.ring, self.gdeg)

    def gb(self):
        if self._gb is None:
            self._gb = groebner_vecs(self.all_relations(), self.order())
        return self._gb

    def reduce(self, v):
        return self.gb().reduce(v)

    def is_zero_element(self, v):
        return not self.reduce(v)

    def is_zero(self):
        return all(not any(t[1:]) for t in self.gb().leads) and \
            len({t[0] for t in self.gb().leads if not any(t[1:])}) == self.ngens

    def hilbert_series(self):
        leads = {}
        for t in self.gb().leads:
            leads.setdefault(t[0], []).append(t[1:])
        return HilbertSeries.from_leads(leads, self.gdeg, self.ring.degs)

    def hilbert_function(self, v):
        v = _as_deg(self.ring, v)
        return len(self.basis(v))

    def basis(self, v):
        """Standard terms of degree ``v`` (a k-basis of the piece ``M_v``)."""
        v = _as_deg(self.ring, v)
        leads = self.gb().leads
        out = []
        for c, g in enumerate(self.gdeg):
            for m in monomials_of_degree(self.ring.degs, _dsub(v, g)):
                t = (c,) + m
                if not any(l[0] == c and all(a <= b for a, b in zip(l[1:], m)) for l in leads):
                    out.append(t)
        return out

    def twist(self, v):
        """``M(v)``: generator degrees decrease by ``v``."""
        v = _as_deg(self.ring, v)
        return GradedModule(self.ring, [_dsub(g, v) for g in self.gdeg], self.rels, self.ideal)

    def prune(self):
        """Isomorphic presentation with minimal generators and relations."""
        gdeg = list(self.gdeg)
        kept = list(range(len(gdeg)))
        rels = [dict(r) for r in self.rels]
        zero = self.ring.zero_mono
        changed = True
        while changed:
            changed = False
            for k, r in enumerate(rels):
                unit = None
                for t, c in r.items():
                    if t[1:] == zero:
                        unit = (t[0], c)
                        break
                if unit is None:
                    continue
                j, c = unit
                # express e_j through the other generators and substitute
                others = []
                for s in rels[:k] + rels[k + 1:]:
                    coeff = {t[1:]: d for t, d in s.items() if t[0] == j}
                    if coeff:
                        p = Poly(self.ring, coeff)
                        s = _add_vec(s, _mul_vec(p, r), scale=-1 / c if not hasattr(c, "inverse") else -c.inverse())
                    others.append(s)
                gdeg = gdeg[:j] + gdeg[j + 1:]
                kept = kept[:j] + kept[j + 1:]
                rels = [{(t[0] - (t[0] > j),) + t[1:]: d for t, d in s.items()} for s in others if s]
                changed = True
                break
        M = GradedModule(self.ring, gdeg, rels, self.ideal)
        M.kept = kept
        if not M.rels:
            return M
        allr = M.all_relations()
        nI = len(allr) - len(M.rels)
        res = groebner_vecs(allr, M.order(), minimal=True)
        keep = [allr[i] for i in res.mingens if i >= nI]
        out = GradedModule(self.ring, gdeg, keep, self.ideal)
        out._gb = res
        out.kept = kept
        return out

    def matrix(self):
        """Presentation matrix as rows of polynomials (one column per relation)."""
        cols = [vec_to_polys(self.ring, r, self.ngens) for r in self.rels]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.ngens)]

    def __repr__(self):
        return f"GradedModule(gens={self.gdeg}, {len(self.rels)} relations)"


# ---------------------------------------------------------------- submodules

def submodule(ring, ideal, fdeg, gens, rels):
    """Presentation of the submodule generated by ``gens`` inside ``F/rels``.

    ``fdeg`` are the degrees of the ambient free module; ``rels`` should
    already contain any ideal multiples that are needed.
    """
    gens = [g for g in gens if g]
    if not gens:
        return GradedModule(ring, [], [], ideal)
    gdeg = [vec_degree(ring, g, fdeg) for g in gens]
    k = len(gens)
    syz, _ = syzygy_vecs(gens + [r for r in rels if r], ring, len(fdeg), [sum(d) for d in fdeg])
    new = []
    for v in syz:
        w = {t: c for t, c in v.items() if t[0] < k}
        if w:
            new.append(w)
    return GradedModule(ring, gdeg, new, ideal)


def syzygies(ring, fdeg, cols):
    """Kernel of the map ``R^k -> F`` sending basis vectors to ``cols``.

    Returns ``(degrees of the source basis, kernel generators)``.
    """
    src = [vec_degree(ring, c, fdeg) for c in cols]
    nz = [i for i, c in enumerate(cols) if c]
    syz, _ = syzygy_vecs([cols[i] for i in nz], ring, len(fdeg), [sum(d) for d in fdeg])
    out = [{(nz[t[0]],) + t[1:]: c for t, c in v.items()} for v in syz]
    # zero columns are syzygies themselves
    for i, c in enumerate(cols):
        if not c:
            out.append({(i,) + ring.zero_mono: ring.field.one})
    return src, out


def minimal_subset(ring, fdeg, vecs):
    """Indices of a minimal generating subset of homogeneous ``vecs``."""
    if not vecs:
        return []
    res = groebner_vecs(vecs, _order_for(ring, fdeg), minimal=True)
    return res.mingens


# ---------------------------------------------------------------- resolutions

class FreeResolution:
    """``... -> F_2 -> F_1 -> F_0``; ``maps[i]`` lists the columns of ``F_{i+1} -> F_i``."""

    def __init__(self, ring, degrees, maps, minimal=True):
        self.ring = ring
        self.degrees = degrees
        self.maps = maps
        self.minimal = minimal

    def betti(self):
        return [len(d) for d in self.degrees]

    def length(self):
        return len(self.degrees) - 1

    def composes_to_zero(self):
        for i in range(1, len(self.maps)):
            for col in self.maps[i]:
                acc = {}
                for t, c in col.items():
                    src = self.maps[i - 1][t[0]]
                    acc = _add_vec(acc, _mul_vec(Poly(self.ring, {t[1:]: c}), src))
                if acc:
                    return False
        return True

    def has_unit_entries(self):
        z = self.ring.zero_mono
        return any(t[1:] == z for m in self.maps for col in m for t in col)

    def __repr__(self):
        return f"FreeResolution(betti={self.betti()})"


def free_resolution(M, length=None):
    """Minimal free resolution of ``M`` regarded as a module over the polynomial ring."""
    R = M.ring
    length = R.ngens + 1 if length is None else length
    M = M.prune()
    degrees = [list(M.gdeg)]
    maps = []
    allr = M.all_relations()
    idx = minimal_subset(R, M.gdeg, allr)
    cur = [allr[i] for i in idx]
    cur_src = M.gdeg
    i = 0
    while cur and i < length:
        maps.append(cur)
        degrees.append([vec_degree(R, c, cur_src) for c in cur])
        i += 1
        if i >= length:
            break
        src, syz = syzygies(R, cur_src, cur)
        cur_src = src
        if not syz:
            break
        keep = minimal_subset(R, src, syz)
        cur = [syz[j] for j in keep]
    return FreeResolution(R, degrees, maps, True)


class DegreeData:
    """Max/min generator degrees per side and homological index (absent = None)."""

    def __init__(self, res):
        if not res.minimal:
            raise ValueError("degree data needs a minimal resolution")
        self.rank = res.ring.rank
        self.amax = {}
        self.amin = {}
        for i, ds in enumerate(res.degrees):
            if ds:
                self.amax[i] = tuple(max(d[s] for d in ds) for s in range(self.rank))
                self.amin[i] = tuple(min(d[s] for d in ds) for s in range(self.rank))

    def max_side(self, s, i):
        v = self.amax.get(i)
        return None if v is None else v[s]

    def min_side(self, s, i):
        v = self.amin.get(i)
        return None if v is None else v[s]

    def max_vec(self, idx):
        """``(max a_{1,i_1}, max a_{2,i_2})`` with None marking absent entries."""
        if isinstance(idx, int):
            idx = (idx,) * self.rank
        return tuple(self.max_side(s, idx[s]) for s in range(self.rank))

    def min_vec(self, idx):
        if isinstance(idx, int):
            idx = (idx,) * self.rank
        return tuple(self.min_side(s, idx[s]) for s in range(self.rank))


def degree_data(res):
    return DegreeData(res)


# ---------------------------------------------------------------- Hom and Ext

def hom_module(M, N):
    """``Hom_R(M, N)`` as the kernel of ``N^{b_0} -> N^{b_1}``."""
    R = M.ring
    M = M.prune()
    nN = N.ngens
    b0 = M.ngens
    if b0 == 0 or nN == 0:
        return GradedModule(R, [], [], N.ideal)
    # P = sum over generators i of M of N twisted so that hom degrees are right
    pdeg = [_dsub(N.gdeg[j], M.gdeg[i]) for i in range(b0) for j in range(nN)]
    Nrels = N.all_relations()
    Prels = [{(i * nN + t[0],) + t[1:]: c for t, c in r.items()} for i in range(b0) for r in Nrels]
    if not M.rels and M.ideal.is_subset(N.ideal):
        gens = [{(c,) + R.zero_mono: R.field.one} for c in range(len(pdeg))]
        return _with_ambient(submodule(R, N.ideal, pdeg, gens, Prels).prune(), gens, pdeg)
    mrels = M.rels if M.ideal.is_subset(N.ideal) else M.all_relations()
    M = GradedModule(R, M.gdeg, mrels, M.ideal)
    b1 = len(M.rels)
    rdeg = M.rel_degrees()
    qdeg = [_dsub(N.gdeg[j], rdeg[k]) for k in range(b1) for j in range(nN)]
    cols = []
    for i in range(b0):
        for j in range(nN):
            col = {}
            for k, r in enumerate(M.rels):
                for t, c in r.items():
                    if t[0] == i:
                        col[(k * nN + j,) + t[1:]] = c
            cols.append(col)
    Qrels = [{(k * nN + t[0],) + t[1:]: c for t, c in r.items()} for k in range(b1) for r in Nrels]
    npc = len(cols)
    # kernel of P -> Q / Qrels
    allc = cols + Qrels
    nz = [i for i, c in enumerate(allc) if c]
    syz, _ = syzygy_vecs([allc[i] for i in nz], R, len(qdeg), [sum(d) for d in qdeg])
    gens = []
    for v in syz:
        w = {}
        for t, c in v.items():
            orig = nz[t[0]]
            if orig < npc:
                w[(orig,) + t[1:]] = c
        if w:
            gens.append(w)
    for i, c in enumerate(cols):
        if not c:
            gens.append({(i,) + R.zero_mono: R.field.one})
    # a few generators may be inhomogeneous mixtures of zero pieces; split by degree
    hgens = []
    for g in gens:
        parts = {}
        for t, c in g.items():
            d = _dadd(R.mono_degree(t[1:]), pdeg[t[0]])
            parts.setdefault(d, {})[t] = c
        hgens.extend(parts.values())
    return _with_ambient(submodule(R, N.ideal, pdeg, hgens, Prels).prune(), hgens, pdeg)


def _with_ambient(H, gens, pdeg):
    # remember each generator of Hom as a tuple of images in N
    gens = [g for g in gens if g]
    H.ambient = [gens[i] for i in H.kept]
    H.ambient_degrees = pdeg
    return H


def dual_complex_ext(res, i, shift=None):
    """``Ext^i_S(M, S(shift))`` from a free resolution of ``M``."""
    R = res.ring
    shift = (0,) * R.rank if shift is None else _as_deg(R, shift)
    degs = res.degrees
    if i >= len(degs):
        return GradedModule(R, [], [])
    # dual of F_i has generators of degree -(a_ij) - shift
    ddeg = lambda k: [_dsub(_dsub((0,) * R.rank, a), shift) for a in degs[k]]
    Fi = ddeg(i)
    # d_{i+1}^T : F_i^* -> F_{i+1}^*
    if i + 1 < len(degs):
        cols = _transpose(res.maps[i], len(degs[i]))
        _, ker = syzygies(R, ddeg(i + 1), cols)
    else:
        ker = [{(j,) + R.zero_mono: R.field.one} for j in range(len(Fi))]
    if i >= 1:
        im = _transpose(res.maps[i - 1], len(degs[i - 1]))
    else:
        im = []
    return submodule(R, Ideal(R, []), Fi, ker, im).prune()


def _transpose(cols, nrows):
    # columns of F_{i+1} -> F_i become columns of F_i^* -> F_{i+1}^*
    out = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for t, c in col.items():
            out[t[0]][(j,) + t[1:]] = c
    return out


def ext_module(M, i, shift=None, res=None):
    """``Ext^i_S(M, S(shift))`` over the ambient polynomial ring."""
    if res is None:
        res = free_resolution(M, i + 2)
    return dual_complex_ext(res, i, shift)


# ---------------------------------------------------------------- truncation and slices

def _side_monomials(ring, side, lo, span):
    """Monomials supported on one side with side-degree in ``[lo, lo+span)``."""
    idx = [i for i, d in enumerate(ring.degs) if d[side] > 0]
    ws = [ring.degs[i][side] for i in idx]
    out = []
    for d in range(max(lo, 0), max(lo, 0) + span):
        for e in monomials_of_degree([(w,) for w in ws], d):
            m = [0] * ring.ngens
            for i, a in zip(idx, e):
                m[i] = a
            out.append(tuple(m))
    return out


def truncation_multipliers(ring, gdeg, e):
    """Monomials ``m`` per generator with ``deg m + g >= e`` spanning ``M_{>=e}``."""
    e = _as_deg(ring, e)
    out = []
    for g in gdeg:
        per_side = []
        for s in range(ring.rank):
            need = e[s] - g[s]
            if need <= 0:
                per_side.append([ring.zero_mono])
            else:
                L = 1
                for d in ring.degs:
                    if d[s] > 0:
                        L = max(L, d[s])
                per_side.append(_side_monomials(ring, s, need, L) if ring.rank == 2
                                else _side_monomials_rank1(ring, need, L))
        ms = set()
        for combo in product(*per_side):
            ms.add(tuple(sum(x) for x in zip(*combo)))
        # keep minimal multipliers only
        ms = sorted(ms, key=sum)
        mins = []
        for m in ms:
            if not any(all(a <= b for a, b in zip(n, m)) for n in mins):
                mins.append(m)
        out.append(mins)
    return out


def _side_monomials_rank1(ring, need, L):
    out = []
    for d in range(need, need + L):
        out.extend(monomials_of_degree(ring.degs, d))
    return out


def truncate(M, e):
    """Presentation of ``M_{>=e}`` as a submodule of ``M``."""
    R = M.ring
    mults = truncation_multipliers(R, M.gdeg, e)
    gens = []
    for c, ms in enumerate(mults):
        for m in ms:
            v = M.reduce({(c,) + m: R.field.one})
            if v:
                gens.append(v)
    return submodule(R, M.ideal, M.gdeg, gens, M.all_relations()).prune()


def twist(M, v):
    return M.twist(v)


def slice_ring(ring, side=1):
    """Subring of elements of degree ``(0, *)`` (side 1) or ``(*, 0)`` (side 0)."""
    from .poly import PolyRing

    other = 1 - side
    idx = [i for i, d in enumerate(ring.degs) if d[other] == 0]
    A = PolyRing([ring.names[i] for i in idx], [ring.degs[i][side] for i in idx], ring.field)
    return A, idx


def degree_slice(M, side=1, upto=None):
    """``M_{(0,*)}`` (side 1) as a graded module over the slice ring.

    Generators are the ``m e_i`` with ``m`` running through monomials in the
    other side's variables of complementary degree; relations come from the
    same construction applied to the syzygy module.
    """
    R = M.ring
    other = 1 - side
    A, idx = slice_ring(R, side)
    if any(R.degs[i][other] == 0 and R.degs[i][side] == 0 for i in range(R.ngens)):
        raise ValueError("degree zero variable")
    gens = _slice_generators(R, M.gdeg, [{(c,) + R.zero_mono: R.field.one} for c in range(M.ngens)],
                             side, M)
    gens = [g for g in gens if g]
    if not gens:
        return GradedModule(A, [], [])
    gdeg = [vec_degree(R, g, M.gdeg) for g in gens]
    # A-relations: slice of the syzygy module of the generators
    src, syz = syzygies(R, M.gdeg, gens + M.all_relations())
    k = len(gens)
    syz = [v for v in syz]
    rel_src = gdeg + [vec_degree(R, r, M.gdeg) for r in M.all_relations()]
    rel_vecs = _slice_generators(R, rel_src, syz, side, None)
    Ideal0 = Ideal(A, [])
    rels = []
    for v in rel_vecs:
        w = {}
        for t, c in v.items():
            if t[0] < k:
                w[(t[0],) + tuple(t[1 + i] for i in idx)] = c
        if w:
            rels.append(w)
    out = GradedModule(A, [(d[side],) for d in gdeg], rels, Ideal0)
    return out.prune()


def _slice_generators(R, fdeg, vecs, side, M):
    other = 1 - side
    out = []
    for v in vecs:
        if not v:
            continue
        d = vec_degree(R, v, fdeg)
        need = -d[other]
        if need < 0:
            continue
        mo = _side_monomials(R, other, need, 1)
        lift = max(0, -d[side])
        ms = _side_monomials(R, side, lift, max(1, max(w[side] for w in R.degs))) if lift else [R.zero_mono]
        for a in mo:
            for b in ms:
                m = tuple(x + y for x, y in zip(a, b))
                w = {tuple(x + y for x, y in zip(t, (0,) + m)): c for t, c in v.items()}
                if M is not None:
                    w = M.reduce(w)
                out.append(w)
    return out


def canonical_module(R_ideal):
    """``Ext^t_S(S/I, S(-c))`` with ``t`` the codimension and ``c`` the weight sum."""
    S = R_ideal.ring
    c = tuple(sum(d[s] for d in S.degs) for s in range(S.rank))
    t = R_ideal.codim() if not R_ideal.is_zero() else 0
    M = GradedModule.quotient_ring(S, R_ideal)
    res = free_resolution(GradedModule(S, [(0,) * S.rank], M.all_relations()), t + 2)
    neg = tuple(-x for x in c)
    return dual_complex_ext(res, t, neg)
