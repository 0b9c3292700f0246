"""Degree thresholds for global Hom modules and sheaf cohomology on
monograded and bigraded varieties.
"""

from .groebner import BudgetExceeded
from .modules import (GradedModule, degree_data, dual_complex_ext, free_resolution,
                      hom_module, truncate)


class StabilizationBudgetExceeded(BudgetExceeded):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class HomThreshold:
    """Output of :func:`hom_threshold`."""

    def __init__(self, e0, r, terms, c, d):
        self.e0 = e0
        self.r = r
        self.terms = terms
        self.c = c
        self.d = d

    def __repr__(self):
        return f"HomThreshold(e0={self.e0}, r={self.r})"


def _as_S_module(N):
    """``N`` viewed as a module over the ambient polynomial ring."""
    return GradedModule(N.ring, N.gdeg, N.all_relations())


def _cmax(vecs, rank):
    # componentwise max ignoring absent (None) entries
    out = []
    for s in range(rank):
        vals = [v[s] for v in vecs if v is not None and v[s] is not None]
        out.append(max(vals) if vals else None)
    return tuple(out)


def side_counts(ring):
    """``d_s`` = number of variables on side ``s`` minus one."""
    if ring.rank == 1:
        return (ring.ngens - 1,)
    return tuple(sum(1 for w in ring.degs if w[s] > 0) - 1 for s in range(2))


def weight_sums(ring):
    return tuple(sum(w[s] for w in ring.degs) for s in range(ring.rank))


def hom_threshold(M, N, res=None):
    """Thresholds ``e0`` and ``r`` past which truncated Hom computes global Hom.

    Rank 2 follows the bigraded bound built from the resolution of ``N``
    over the polynomial ring; rank 1 uses ``max(a_d, a_{d+1}) - c + 1``.
    Absent homological degrees are ignored and ``r`` is clamped at zero.
    """
    S = N.ring
    rank = S.rank
    d = side_counts(S)
    c = weight_sums(S)
    if res is None:
        length = (sum(d) + 3) if rank == 2 else d[0] + 3
        res = free_resolution(_as_S_module(N), length)
    dd = degree_data(res)
    if rank == 2:
        D = sum(d)
        terms = {
            "a_d+1": dd.max_vec((d[0] + 1, d[1] + 1)),
            "a_d": dd.max_vec((d[0], d[1])),
            "a_|d|+1": dd.max_vec(D + 1),
            "a_|d|": dd.max_vec(D),
        }
    else:
        terms = {"a_d+1": dd.max_vec(d[0] + 1), "a_d": dd.max_vec(d[0])}
    top = _cmax(list(terms.values()), rank)
    Mp = M.prune()
    amin0 = tuple(min(g[s] for g in Mp.gdeg) for s in range(rank)) if Mp.gdeg else (0,) * rank
    e0 = tuple(None if t is None else t - a - cs + 1 for t, a, cs in zip(top, amin0, c))
    r = tuple(0 if t is None else max(t - cs + 1, 0) for t, cs in zip(top, c))
    return HomThreshold(e0, r, terms, c, d)


class GlobalHom:
    """``Hom(M_{>=r}, N)`` with piece dimensions read off in non-negative degrees."""

    def __init__(self, module, r):
        self.module = module
        self.r = r

    def dim(self, v):
        v = (v,) if isinstance(v, int) else tuple(v)
        if min(v) < 0:
            return 0
        return self.module.hilbert_function(v)

    def __repr__(self):
        return f"GlobalHom(r={self.r}, {self.module})"


def global_hom(M, N, r=None):
    """``Hom_R(M_{>=r}, N)_{>=0}``, which computes ``Hom(M~, N~(v))`` for ``v >= 0``."""
    if r is None:
        r = hom_threshold(M, N).r
    T = truncate(M, r) if any(x > 0 for x in r) or any(min(g) < 0 for g in M.gdeg) else M
    return GlobalHom(hom_module(T, N), tuple(r))


def global_hom_bigraded(M, N, r=None):
    if N.ring.rank != 2:
        raise ValueError("bigraded ring expected")
    return global_hom(M, N, r)


def global_sections_mono(M, ideal=None, r=None):
    """``sum_{v>=0} H^0(X, M~(v))`` as ``Hom_R(R_{>=r}, M)_{>=0}``."""
    S = M.ring
    if S.rank != 1:
        raise ValueError("rank 1 grading expected")
    I = ideal if ideal is not None else M.ideal
    Rm = GradedModule.quotient_ring(S, I)
    if r is None:
        r = hom_threshold(Rm, M).r
    T = truncate(Rm, r) if r[0] > 0 else Rm
    return GlobalHom(hom_module(T, M), tuple(r))


def _ext_dims(M, degrees_needed=None):
    S = M.ring
    n = S.ngens
    res = free_resolution(_as_S_module(M), n + 1)
    c = weight_sums(S)
    neg = tuple(-x for x in c)
    return {j: dual_complex_ext(res, j, neg) for j in range(n + 1)}


class CohomologyTable:
    """Sheaf cohomology of ``M~(v)`` on a monograded variety via local duality.

    ``H^i(M~(v)) = H^{i+1}_m(M)_v`` for ``i >= 1`` and the dual of
    ``Ext^{n-j}_S(M, S(-c))_{-v}`` computes ``H^j_m(M)_v``.
    """

    def __init__(self, M):
        if M.ring.rank != 1:
            raise ValueError("rank 1 grading expected")
        self.M = M
        self.n = M.ring.ngens
        self.ext = _ext_dims(M)
        self._hs = {}

    def local(self, j, v):
        k = self.n - j
        E = self.ext.get(k)
        if E is None or E.ngens == 0:
            return 0
        return E.hilbert_function((-v,))

    def h(self, i, v):
        if i < 0:
            return 0
        if i == 0:
            return self.M.hilbert_function((v,)) - self.local(0, v) + self.local(1, v)
        return self.local(i + 1, v)


def sheaf_cohomology_dim(M, v, i, dim=None, table=None):
    """``dim_k H^i(X, M~(v))`` where ``M`` is a graded module over ``S/I_X``.

    Rank 2 is supported for ``i = 0`` through the global Hom module.
    """
    if i < 0:
        raise ValueError("negative index")
    if dim is not None and i > dim:
        return 0
    if M.ring.rank == 2:
        if i == 0:
            Rm = GradedModule.quotient_ring(M.ring, M.ideal)
            return global_hom(Rm, M).dim(v)
        raise StabilizationBudgetExceeded("higher cohomology of bigraded sheaves is not available")
    v = v[0] if isinstance(v, tuple) else v
    t = table or CohomologyTable(M)
    return t.h(i, v)


def euler_characteristic(M, v, table=None, dim=None):
    """``chi(M~(v))``: the value of the Hilbert quasi-polynomial at ``v``."""
    if M.ring.rank != 1:
        raise ValueError("rank 1 grading expected")
    v = v[0] if isinstance(v, tuple) else v
    if table is not None:
        top = dim if dim is not None else M.ring.ngens
        return sum((-1) ** i * table.h(i, v) for i in range(top + 1))
    return M.hilbert_series().quasi_polynomial(v)
