"""Projective varieties given by graded rings, products, Segre embeddings and
morphisms represented by their graphs.
"""

import random
from functools import reduce

from .groebner import BudgetExceeded
from .hilbert import HilbertSeries, monomials_of_degree
from .ideal import Ideal, minimal_primes
from .poly import Poly, PolyRing, RingError


class GeometryError(ValueError):
    pass


class NotPrime(GeometryError):
    pass


class ContainsIrrelevant(GeometryError):
    pass


class NotHomogeneous(GeometryError):
    pass


class DomainNotEverywhereDefined(GeometryError):
    pass


# ---------------------------------------------------------------- helpers

def irrelevant_ideal(ring, side=None):
    """``<x_0..x_n>`` (rank 1) or one side's variables (rank 2)."""
    if side is None:
        return Ideal(ring, ring.gens())
    return Ideal(ring, [ring.var(i) for i, d in enumerate(ring.degs) if d[side] > 0])


def side_indices(ring, side):
    return [i for i, d in enumerate(ring.degs) if d[side] > 0]


def hilbert_series_of(I):
    leads = {0: I.leading_monomials()}
    return HilbertSeries.from_leads(leads, [(0,) * I.ring.rank], I.ring.degs)


def dimension_degree(I):
    """(affine cone dimension, degree) of ``R/I``; degree is the normalized multiplicity."""
    if I.is_unit():
        return (-1, None)
    d = I.dimension()
    if d == 0:
        return (0, None)
    H = hilbert_series_of(I)
    e = H.multiplicity()
    return (d, int(e) if e.denominator == 1 else e)


def proj_dim(I):
    """Dimension of Proj/biProj: cone dimension minus the grading rank (-1 if empty)."""
    R = I.ring
    if R.rank == 1:
        J = I.saturate(irrelevant_ideal(R)) if not I.is_unit() else I
        d = J.dimension()
        return d - 1 if d > 0 else -1
    J = I
    for s in (0, 1):
        if not J.is_unit():
            J = J.saturate(irrelevant_ideal(R, s))
    d = J.dimension()
    return d - 2 if d >= 2 else -1


def _fresh_names(taken, names):
    out = []
    taken = set(taken)
    for n in names:
        m = n
        k = 1
        while m in taken:
            m = f"{n}_{k}"
            k += 1
        taken.add(m)
        out.append(m)
    return out


def product_ring(R1, R2):
    """Bigraded ring ``k[y, x]`` with the y's on side 0; clashing names get a suffix."""
    if R1.field != R2.field:
        raise RingError("factor rings over different fields")
    n2 = _fresh_names(R1.names, R2.names)
    ws = [(d[0], 0) for d in R1.degs] + [(0, d[0]) for d in R2.degs]
    return PolyRing(list(R1.names) + n2, ws, R1.field)


def embed(f, P, offset):
    """Map a polynomial of a factor ring into ``P`` by variable position."""
    out = {}
    n = P.ngens
    for m, c in f.terms.items():
        e = [0] * n
        e[offset:offset + len(m)] = m
        out[tuple(e)] = c
    return Poly(P, out)


def restrict(f, R, offset):
    """Inverse of :func:`embed` (the polynomial must only involve that block)."""
    out = {}
    k = R.ngens
    for m, c in f.terms.items():
        if any(m[:offset]) or any(m[offset + k:]):
            raise RingError("polynomial involves other variables")
        out[tuple(m[offset:offset + k])] = c
    return Poly(R, out)


def ring_map_kernel(images, source, target_ideal, src_weights=None, check=None):
    """Kernel of ``source -> target/target_ideal`` sending variable i to ``images[i]``.

    The kernel is computed by eliminating the target variables from the
    graph ideal ``<z_i - images_i> + target_ideal``.  ``check`` optionally
    lists source relations that must map to zero.
    """
    T = target_ideal.ring
    if len(images) != source.ngens:
        raise GeometryError("one image per source variable is required")
    znames = _fresh_names(T.names, [f"_z{i}" for i in range(source.ngens)])
    if src_weights is None:
        src_weights = []
        for im in images:
            ds = im.multidegrees() if im else set()
            if len(ds) == 1:
                d = next(iter(ds))
                src_weights.append(d if sum(d) > 0 else tuple(1 if k == 0 else 0 for k in range(T.rank)))
            else:
                src_weights.append(tuple(1 if k == 0 else 0 for k in range(T.rank)))
    ws = list(T.degs) + [tuple(w) for w in src_weights]
    ws = [w[0] for w in ws] if T.rank == 1 else ws
    C = PolyRing(list(T.names) + znames, ws, T.field)
    gens = [embed(g, C, 0) for g in target_ideal.gens]
    for i, im in enumerate(images):
        gens.append(C.var(T.ngens + i) - embed(T(im), C, 0))
    K = Ideal(C, gens).eliminate(list(T.names))
    out = Ideal(source, [restrict(g, source, T.ngens) for g in K.gens])
    if out.is_homogeneous():
        out = Ideal(source, out.minimal_generators())
    if check is not None:
        for g in check:
            if not out.contains(g):
                raise GeometryError(f"map is not well defined: {g} is not sent to zero")
    return out


# ---------------------------------------------------------------- varieties

class MonoVariety:
    """``Proj k[x]/p`` inside a weighted projective space."""

    def __init__(self, ring, ideal, label=None, certify=True, prime=None):
        self.ring = ring
        if not isinstance(ideal, Ideal):
            ideal = Ideal(ring, ideal)
        self.ideal = ideal
        self.label = label
        if ring.rank != 1:
            raise GeometryError("a monograded variety needs a rank 1 grading")
        ring.check_weights()
        if not ideal.is_homogeneous():
            raise NotHomogeneous("defining polynomials must be homogeneous")
        if certify:
            if irrelevant_ideal(ring).is_subset(Ideal(ring, ideal.gb())) or ideal.is_unit():
                raise ContainsIrrelevant("the ideal contains the irrelevant ideal")
            if ideal.saturate(irrelevant_ideal(ring)).is_unit():
                raise ContainsIrrelevant("the ideal contains a power of the irrelevant ideal")
            if prime is None:
                prime = ideal.is_zero() or ideal.is_prime()
            if not prime:
                raise NotPrime("the defining ideal is not prime")
        self._dim = None
        self._cache = {}

    @property
    def ngens(self):
        return self.ring.ngens

    def dim(self):
        if self._dim is None:
            self._dim = self.ideal.dimension() - 1
        return self._dim

    def degree(self):
        return dimension_degree(self.ideal)[1]

    def hilbert_series(self):
        return hilbert_series_of(self.ideal)

    def is_ambient(self):
        return self.ideal.is_zero()

    def __repr__(self):
        return f"MonoVariety({self.label or ''} in {self.ring}, {len(self.ideal.gens)} equations)"


def make_mono_variety(ring, generators, label=None):
    return MonoVariety(ring, Ideal(ring, generators), label)


def projective_space(n, name="x", weights=None, field=None, label=None):
    from .field import QQ

    R = PolyRing([f"{name}{i}" for i in range(n + 1)], weights, field or QQ)
    return MonoVariety(R, Ideal(R, []), label or (f"P{n}" if weights is None else None), certify=False)


class BiVariety:
    """Closed subvariety of ``Y x X`` given by a bihomogeneous ideal.

    The first ``Y.ngens`` variables of ``ring`` belong to ``Y``.
    """

    def __init__(self, Y, X, ideal, ring=None, certify=False, label=None):
        self.Y = Y
        self.X = X
        self.ring = ring or product_ring(Y.ring, X.ring)
        if not isinstance(ideal, Ideal):
            ideal = Ideal(self.ring, ideal)
        self.ideal = ideal
        self.label = label
        if not ideal.is_homogeneous():
            raise NotHomogeneous("defining polynomials must be bihomogeneous")
        if certify:
            if not ideal.is_prime():
                raise NotPrime("the defining ideal is not prime")
            for s in (0, 1):
                if ideal.saturate(irrelevant_ideal(self.ring, s)).is_unit():
                    raise ContainsIrrelevant("the ideal contains the irrelevant locus")

    @property
    def ny(self):
        return self.Y.ngens

    def y_vars(self):
        return [self.ring.names[i] for i in range(self.ny)]

    def x_vars(self):
        return [self.ring.names[i] for i in range(self.ny, self.ring.ngens)]

    def dim(self):
        return proj_dim(self.ideal)

    def full_ideal(self):
        """Own ideal plus both factor ideals."""
        P = self.ring
        gens = list(self.ideal.gens)
        gens += [embed(g, P, 0) for g in self.Y.ideal.gens]
        gens += [embed(g, P, self.ny) for g in self.X.ideal.gens]
        return Ideal(P, gens)

    def __repr__(self):
        return f"BiVariety({len(self.ideal.gens)} equations in {self.ring})"


def product_variety(Y, X):
    P = product_ring(Y.ring, X.ring)
    gens = [embed(g, P, 0) for g in Y.ideal.gens] + [embed(g, P, Y.ngens) for g in X.ideal.gens]
    return BiVariety(Y, X, Ideal(P, gens), P)


# ---------------------------------------------------------------- Segre

def segre_hilbert_basis(d, c):
    """Minimal generators of ``{(b, a) : sum d_j b_j = sum c_i a_i}``."""
    d, c = list(d), list(c)
    if min(d + c) <= 0:
        raise GeometryError("weights must be positive")
    bound = max(d) * max(c)
    cands = []
    for D in range(1, bound + 1):
        for b in monomials_of_degree([(w,) for w in d], D):
            for a in monomials_of_degree([(w,) for w in c], D):
                cands.append((D, b + a))
    basis = []
    cands.sort(key=lambda x: (x[0], [-a for a in x[1]]))
    for D, v in cands:
        if not any(all(x <= y for x, y in zip(u, v)) for _, u in basis):
            basis.append((D, v))
    nd = len(d)
    return [(v[:nd], v[nd:]) for _, v in basis]


class SegrePresentation:
    """``S # R`` as ``k[Z]/kernel`` together with its monomial embedding."""

    def __init__(self, basis, zring, kernel, monomials, product):
        self.basis = basis
        self.zring = zring
        self.kernel = kernel
        self.monomials = monomials
        self.product = product

    def variety(self, label=None):
        return MonoVariety(self.zring, self.kernel, label, certify=False)


def segre_product(Y, X, zname="z"):
    """Segre presentation of ``Y x X``."""
    P = product_ring(Y.ring, X.ring)
    d = [w[0] for w in Y.ring.degs]
    c = [w[0] for w in X.ring.degs]
    basis = segre_hilbert_basis(d, c)
    mons = []
    zw = []
    for b, a in basis:
        mons.append(P.monomial(tuple(b) + tuple(a)))
        zw.append(sum(x * y for x, y in zip(b, d)))
    if all(sum(b) == 1 and sum(a) == 1 for b, a in basis):
        names = [f"{zname}{b.index(1)}{a.index(1)}" if len(d) <= 10 and len(c) <= 10 else f"{zname}_{k}"
                 for k, (b, a) in enumerate(basis)]
    else:
        names = [f"{zname}{k}" for k in range(len(basis))]
    Z = PolyRing(names, zw, Y.ring.field)
    W = product_variety(Y, X)
    ker = ring_map_kernel(mons, Z, W.full_ideal(), src_weights=[(w, w) for w in zw])
    return SegrePresentation(basis, Z, ker, mons, W)


def restrict_to_segre(W, seg=None):
    """Monograded ideal of a bigraded variety inside the Segre product."""
    seg = seg or segre_product(W.Y, W.X)
    P = W.ring
    mons = [P.from_other(m) if m.ring != P else m for m in seg.monomials]
    ker = ring_map_kernel(mons, seg.zring, W.full_ideal(),
                          src_weights=[(w[0], w[0]) for w in seg.zring.degs])
    return MonoVariety(seg.zring, ker, certify=False), seg


# ---------------------------------------------------------------- morphisms

class B2MProjection:
    def __init__(self, W, side, target, strict):
        self.W = W
        self.side = side
        self.target = target
        self.strict = strict


def _projective_image(I, keep_side):
    """Ideal of the image of ``V(I)`` under projection onto one side."""
    P = I.ring
    other = 1 - keep_side
    J = I.saturate(irrelevant_ideal(P, other))
    elim = [P.names[i] for i in side_indices(P, other)]
    return J.eliminate(elim)


def b2m_projection(W, side=1):
    """Projection of ``W`` onto ``X`` (side 1) or ``Y`` (side 0)."""
    F = W.X if side == 1 else W.Y
    off = W.ny if side == 1 else 0
    img = _projective_image(W.full_ideal(), side)
    gens = [restrict(g, F.ring, off) for g in img.gens]
    I = Ideal(F.ring, gens)
    if I.is_homogeneous() and gens:
        I = Ideal(F.ring, I.minimal_generators())
    strict = I.is_subset(F.ideal) or not gens
    target = F if strict else MonoVariety(F.ring, I, certify=False)
    return B2MProjection(W, side, target, strict)


class GraphMorphism:
    """Morphism ``Y -> X`` represented by its graph in ``Y x X``."""

    def __init__(self, Y, X, graph, certify=False):
        self.source = Y
        self.target = X
        if not isinstance(graph, BiVariety):
            graph = BiVariety(Y, X, graph)
        self.graph = graph
        if certify and not is_isomorphism(graph, side=0):
            raise GeometryError("graph does not project isomorphically onto the source")

    @property
    def ring(self):
        return self.graph.ring

    def graph_ideal(self):
        return self.graph.full_ideal()

    def __repr__(self):
        return f"GraphMorphism({self.source.label} -> {self.target.label})"


def homogeneous_to_graph(images, Y, X, check_domain=True):
    """Graph of the morphism induced by ``x_i -> images[i]`` (homogeneous of degree e*c_i)."""
    S = Y.ring
    images = [S(f) for f in images]
    cs = [w[0] for w in X.ring.degs]
    es = set()
    for f, ci in zip(images, cs):
        if f:
            d = f.degree()
            if not f.is_homogeneous() or d % ci:
                raise NotHomogeneous("images must be homogeneous of degree proportional to the weights")
            es.add(d // ci)
    if len(es) > 1:
        raise NotHomogeneous("images must be homogeneous of one scaled degree")
    e = es.pop() if es else 1
    if check_domain:
        J = Ideal(S, [f for f in images if f] + Y.ideal.gens)
        if not J.saturate(irrelevant_ideal(S)).is_unit():
            raise DomainNotEverywhereDefined("the images have common zeros on the source")
    P = product_ring(S, X.ring)
    # x_i -> lam^{c_i} phi_i with deg lam = (-e, 1) is bihomogeneous
    T = PolyRing(list(S.names) + ["_lam"], [(w[0], 0) for w in S.degs] + [(-e, 1)], S.field)
    lam = T.var("_lam")
    tim = [embed(g, T, 0) for g in images]
    tim_y = [T.var(i) for i in range(S.ngens)]
    tI = Ideal(T, [embed(g, T, 0) for g in Y.ideal.gens])
    src_w = [(w[0], 0) for w in S.degs] + [(0, ci) for ci in cs]
    allim = tim_y + [lam ** ci * f for ci, f in zip(cs, tim)]
    K = ring_map_kernel(allim, P, tI, src_weights=src_w,
                        check=[embed(g, P, S.ngens) for g in X.ideal.gens])
    return GraphMorphism(Y, X, BiVariety(Y, X, K, P))


def identity_morphism(X):
    return homogeneous_to_graph(X.ring.gens(), X, X, check_domain=False)


def b2m_to_graph(p, seg=None):
    """Graph of a strict B2M projection ``W -> V`` as a morphism ``W^m -> V``."""
    if not p.strict:
        raise GeometryError("B2M projection must be strict")
    W = p.W
    if p.side != 1:
        raise GeometryError("only projections onto the second factor are supported")
    Wm, seg = restrict_to_segre(W, seg)
    Z = seg.zring
    V = W.X
    Pg = product_ring(Z, V.ring)
    # xi: Z_i (x) x'_j -> y^b x^a * x_j inside (S (x) R)/p
    P = W.ring
    images = [P.from_other(m) if m.ring != P else m for m in seg.monomials]
    images += [P.var(W.ny + j) for j in range(V.ngens)]
    src_w = [(w[0], 0) for w in Z.degs] + [(0, w[0]) for w in V.ring.degs]
    # q(m, n) = (m, m + n) makes xi homogeneous; build the kernel in that grading
    K = _kernel_regraded(images, Pg, W.full_ideal(), src_w)
    K = Ideal(Pg, [g for g in K.gens])
    src = MonoVariety(Z, Wm.ideal, certify=False)
    return GraphMorphism(src, V, BiVariety(src, V, K, Pg))


def _kernel_regraded(images, src, target_ideal, src_w):
    # images are bihomogeneous of degree q(src degree); pass q-degrees for the order
    qw = [(a, a + b) for a, b in src_w]
    K = ring_map_kernel(images, src, target_ideal, src_weights=qw)
    return Ideal(src, K.gens)


def compose(f, g):
    """``g o f`` for ``f: Y -> X`` and ``g: X -> W``."""
    Y, X, W = f.source, f.target, g.target
    if X.ring.ngens != g.source.ring.ngens:
        raise GeometryError("middle varieties do not match")
    ny, nx, nw = Y.ngens, X.ngens, W.ngens
    names = list(Y.ring.names)
    xn = _fresh_names(names, X.ring.names)
    wn = _fresh_names(names + xn, W.ring.names)
    # triple ring graded by (y, w) with x carried on an auxiliary first side weight
    T = PolyRing(names + xn + wn,
                 [(d[0], 0) for d in Y.ring.degs] + [(d[0], 0) for d in X.ring.degs]
                 + [(0, d[0]) for d in W.ring.degs], Y.ring.field)
    gens = []
    for h in f.graph_ideal().gens:
        gens.append(_shift_poly(h, T, list(range(ny + nx))))
    for h in g.graph_ideal().gens:
        gens.append(_shift_poly(h, T, list(range(ny, ny + nx)) + list(range(ny + nx, ny + nx + nw))))
    J = Ideal(T, gens)
    J = J.saturate(Ideal(T, [T.var(ny + i) for i in range(nx)]))
    E = J.eliminate(xn)
    P = product_ring(Y.ring, W.ring)
    out = []
    for h in E.gens:
        terms = {}
        for m, c in h.terms.items():
            terms[m[:ny] + m[ny + nx:]] = c
        out.append(Poly(P, terms))
    I = Ideal(P, out)
    if I.is_homogeneous():
        I = Ideal(P, I.minimal_generators())
    return GraphMorphism(Y, W, BiVariety(Y, W, I, P))


def _shift_poly(h, T, positions):
    out = {}
    n = T.ngens
    for m, c in h.terms.items():
        e = [0] * n
        for a, pos in zip(m, positions):
            e[pos] += a
        out[tuple(e)] = c
    return Poly(T, out)


def image(f):
    """Closed image of ``f`` in its target."""
    p = b2m_projection(f.graph, 1)
    if p.strict:
        return f.target
    t = p.target
    return MonoVariety(t.ring, t.ideal, certify=False)


def image_ideal(f):
    return b2m_projection(f.graph, 1).target.ideal


# ---------------------------------------------------------------- fibers and isomorphisms

def positive_fiber_locus(I, base_side, seed=0, depth=0):
    """Ideal (in the full ring) of points of the base over which fibers of ``V(I)`` have positive dimension.

    ``I`` is bihomogeneous; the base is side ``base_side``.  Returns an
    ideal involving only base-side variables (unit ideal when empty).
    """
    P = I.ring
    fib = 1 - base_side
    fvars = side_indices(P, fib)
    Isat = I.saturate(irrelevant_ideal(P, fib))
    if Isat.is_unit():
        return Ideal(P, [P.one()])
    # a fiber of positive dimension meets every hyperplane of the fiber space
    cands = [P.var(i) for i in fvars]
    loci = [_projective_image(Isat + [v], base_side) for v in cands]
    E = reduce(lambda a, b: a + b, loci)
    E = Ideal(P, E.gb())
    if E.saturate(irrelevant_ideal(P, base_side)).is_unit():
        return Ideal(P, [P.one()])
    out = []
    comps = minimal_primes(E)
    base = Ideal(P, Isat.gens)
    for Q in comps:
        if Q.saturate(irrelevant_ideal(P, base_side)).is_unit():
            continue
        over = base + Q
        dq = proj_dim_side(Q, base_side)
        dtot = proj_dim(over)
        if dtot > dq:
            out.append(Q)
            continue
        # generically finite over Q: look deeper, with generic hyperplanes if the
        # coordinate ones do not cut the locus down
        if depth > 6:
            raise BudgetExceeded("fiber locus recursion too deep")
        sub = _positive_fiber_generic(over, base_side, Q, seed, depth)
        if sub is not None:
            out.append(sub)
    if not out:
        return Ideal(P, [P.one()])
    return reduce(lambda a, b: a.intersect(b), out)


def proj_dim_side(Q, side):
    # Q only involves side variables: dimension of its zero set in that factor
    P = Q.ring
    d = Q.dimension() - len(side_indices(P, 1 - side))
    return d - 1 if d > 0 else -1


def _positive_fiber_generic(over, base_side, Q, seed, depth):
    P = over.ring
    fib = 1 - base_side
    fvars = side_indices(P, fib)
    rng = random.Random(1000 * seed + depth)
    dq = proj_dim_side(Q, base_side)
    loci = []
    for _ in range(max(dq, 0) + 2):
        coeffs = [rng.randint(1, 9) for _ in fvars]
        wts = {P.degs[i][fib] for i in fvars}
        if len(wts) != 1:
            raise BudgetExceeded("generic hyperplanes need equal fiber weights")
        ell = reduce(lambda a, b: a + b, (P.var(i).scale(c) for i, c in zip(fvars, coeffs)))
        loci.append(_projective_image(over + [ell], base_side))
    E = reduce(lambda a, b: a + b, loci)
    if E.saturate(irrelevant_ideal(P, base_side)).is_unit():
        return None
    if Ideal(P, E.gb()) == Ideal(P, Q.gb()):
        # every fiber over Q met every generic hyperplane: fibers are positive dimensional
        return Q
    sub = positive_fiber_locus(over + E.gens, base_side, seed, depth + 1)
    return None if sub.is_unit() else sub


def fiber_degree(f):
    """Degree of a generically finite morphism onto its image, by leading coefficients."""
    G = f.graph
    return map_degree(G.full_ideal(), G.ny, f.source, _image_full(f))


def _image_full(f):
    return b2m_projection(f.graph, 1).target


def map_degree(graph_ideal, ny, Y, V):
    """deg(Γ → V) = e(Γ restricted to Y-degree) ... computed by slicing and counting."""
    P = graph_ideal.ring
    I = graph_ideal
    dimY = proj_dim(I)
    dimV = V.dim()
    if dimY != dimV:
        return 0
    if dimV == 0:
        return _zero_dim_length(I, side=1)
    rng = random.Random(7)
    xs = side_indices(P, 1)
    wts = {P.degs[i][1] for i in xs}
    cuts = []
    Vcuts = []
    if len(wts) == 1:
        for _ in range(dimV):
            coeffs = [rng.randint(1, 9) for _ in xs]
            ell = reduce(lambda a, b: a + b, (P.var(i).scale(c) for i, c in zip(xs, coeffs)))
            cuts.append(ell)
        top = I + cuts
        nt = _zero_dim_length(top, side=None)
        Vi = Ideal(P, [embed(g, P, ny) for g in V.ideal.gens] + cuts)
        nb = _zero_dim_length(Vi, side=1)
        if nb == 0 or nt % nb:
            raise BudgetExceeded("degenerate generic slice")
        return nt // nb
    raise BudgetExceeded("map degree needs equal target weights")


def _zero_dim_length(J, side=None):
    """Length of a zero-dimensional (bi)projective scheme (reduced count for general slices)."""
    P = J.ring
    for s in (0, 1):
        if side is None or s == side:
            if not J.is_unit():
                J = J.saturate(irrelevant_ideal(P, s))
    if J.is_unit():
        return 0
    if side is None:
        # fix the y-side to points by dehomogenizing through Segre-style Hilbert function:
        # for a finite set in a product, HF(a, b) is constant for a, b large
        H = hilbert_series_of(J)
        a = 1
        prev = None
        while a < 40:
            v = H.bigraded_coefficients((a + 4, a + 4))
            vals = [v[(a + i, a + j)] for i in range(0, 5, 2) for j in range(0, 5, 2)]
            if len(set(vals)) == 1 and vals[0] == prev:
                return vals[0]
            prev = vals[0] if len(set(vals)) == 1 else None
            a += 2
        raise BudgetExceeded("bigraded Hilbert function did not stabilize")
    # points on one side only: other side variables unconstrained? restrict to that side
    other = 1 - side
    ovars = side_indices(P, other)
    K = J.eliminate([P.names[i] for i in ovars])
    R1 = PolyRing([P.names[i] for i in side_indices(P, side)],
                  [P.degs[i][side] for i in side_indices(P, side)], P.field)
    off = min(side_indices(P, side))
    KI = Ideal(R1, [restrict(g, R1, off) for g in K.gens])
    H = hilbert_series_of(KI)
    return H.quasi_polynomial(H.regularity_bound() + H.period() * 2)


def is_isomorphism(W, side=0, target_normal=True):
    """Whether ``W -> (factor on side)`` is an isomorphism onto that factor.

    Uses: surjective, birational (general fiber is one reduced point) and
    no positive-dimensional fibers, which suffices for a normal target.
    """
    P = W.ring
    I = W.full_ideal()
    F = W.Y if side == 0 else W.X
    off = 0 if side == 0 else W.ny
    img = _projective_image(I, side)
    gens = [restrict(g, F.ring, off) for g in img.gens]
    if not Ideal(F.ring, gens).is_subset(F.ideal):
        return False
    if proj_dim(I) != F.dim():
        return False
    loc = positive_fiber_locus(I, side)
    if not loc.saturate(irrelevant_ideal(P, side)).is_unit():
        return False
    deg = _degree_over(I, side, F)
    return deg == 1


def _degree_over(I, side, F):
    P = I.ring
    if side == 1:
        return map_degree(I, min(side_indices(P, 1)), None, F)
    # swap sides so the base is side 1
    n0 = side_indices(P, 0)
    n1 = side_indices(P, 1)
    Q = PolyRing([P.names[i] for i in n1] + [P.names[i] for i in n0],
                 [(0, P.degs[i][1]) if False else (P.degs[i][1], 0) for i in n1]
                 + [(0, P.degs[i][0]) for i in n0], P.field)
    perm = n1 + n0
    J = Ideal(Q, [_shift_poly(g, Q, [perm.index(i) for i in range(P.ngens)]) for g in I.gens])
    return map_degree(J, len(n1), None, F)


def irreducible_components(I, drop_irrelevant=True):
    """Minimal primes of a bihomogeneous ideal, dropping those inside the irrelevant locus."""
    P = I.ring
    comps = minimal_primes(I)
    out = []
    for Q in comps:
        if drop_irrelevant:
            bad = False
            sides = (0, 1) if P.rank == 2 else (None,)
            for s in sides:
                if Q.saturate(irrelevant_ideal(P, s)).is_unit():
                    bad = True
            if bad:
                continue
        out.append(Ideal(P, Q.gb()))
    out.sort(key=lambda J: [str(g) for g in J.gens])
    return out


def exceptional_locus(f, birational=True):
    """Locus in the source where ``f`` is not a local isomorphism, with its codimension.

    Birational case: union of positive dimensional fibers.  Otherwise the
    ramification locus from the Jacobian of the graph in the source variables.
    Returns ``(ideal in the source ring, codimension)``; the codimension of an
    empty locus is ``dim Y + 1``.
    """
    G = f.graph
    P = G.ring
    I = G.full_ideal()
    Y = f.source
    if birational:
        # fibers live in the source: positive-dimensional fibers of Γ -> X, pushed to Y
        loc_x = positive_fiber_locus(I, 1)
        if loc_x.saturate(irrelevant_ideal(P, 1)).is_unit():
            return Ideal(Y.ring, [Y.ring.one()]), Y.dim() + 1
        pre = _projective_image(I + loc_x.gens, 0)
    else:
        pre = _ramification(G)
        if pre.saturate(irrelevant_ideal(P, 0)).is_unit():
            return Ideal(Y.ring, [Y.ring.one()]), Y.dim() + 1
    gens = [restrict(g, Y.ring, 0) for g in pre.gens]
    E = Ideal(Y.ring, gens + Y.ideal.gens)
    E = Ideal(Y.ring, E.saturate(irrelevant_ideal(Y.ring)).gb())
    if E.is_unit():
        return E, Y.dim() + 1
    return E, Y.dim() - (E.dimension() - 1)


def _ramification(G):
    """Points of the graph where ``Γ -> X`` is ramified, projected to ``Y``."""
    from itertools import combinations

    P = G.ring
    I = G.full_ideal()
    I = Ideal(P, I.minimal_generators())
    yv = side_indices(P, 0)
    n = len(yv) - 1
    rows = [[g.diff(i) for i in yv] for g in I.gens]
    minors = []
    for rs in combinations(range(len(rows)), n):
        for cs in combinations(range(len(yv)), n):
            minors.append(_det([[rows[r][c] for c in cs] for r in rs]))
    J = I + [m for m in minors if m]
    return _projective_image(J, 0)


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        t = M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
        if j % 2:
            t = -t
        total = t if total is None else total + t
    return total if total is not None else M[0][0] * 0


def singular_locus(X):
    """Ideal of the singular locus of the affine cone (the Jacobian ideal)."""
    return _jacobian_ideal(X.ring, X.ideal)


def _jacobian_minors(R, I):
    from itertools import combinations

    gens = I.minimal_generators()
    c = R.ngens - I.dimension()
    rows = [[g.diff(i) for i in range(R.ngens)] for g in gens]
    for rs in combinations(range(len(rows)), c):
        for cs in combinations(range(R.ngens), c):
            m = _det([[rows[r][k] for k in cs] for r in rs])
            if m:
                yield m


def _jacobian_ideal(R, I):
    if I.is_zero():
        return Ideal(R, [R.one()])
    return Ideal(R, I.minimal_generators() + list(_jacobian_minors(R, I)))


def _drop_linear(R, I):
    """Eliminate variables occurring as a bare linear term of some generator.

    Returns an isomorphic presentation ``(R', I')`` with fewer variables.
    """
    while True:
        gens = [g for g in I.minimal_generators() if g]
        hit = None
        for g in gens:
            for i in range(R.ngens):
                e = tuple(int(k == i) for k in range(R.ngens))
                if e in g.terms and all(m == e or m[i] == 0 for m in g.terms):
                    hit = (g, i, e)
                    break
            if hit:
                break
        if hit is None:
            return R, I
        g, i, e = hit
        keep = [k for k in range(R.ngens) if k != i]
        w = R._weights_spec()
        S = PolyRing([R.names[k] for k in keep], [w[k] for k in keep], R.field)
        images = [S.var(keep.index(k)) if k != i else S.zero() for k in range(R.ngens)]
        rest = Poly(R, {m: v for m, v in g.terms.items() if m != e})
        images[i] = rest.subs(images, S).scale(R.field(-1) / g.terms[e])
        I = Ideal(S, [h.subs(images, S) for h in gens if h is not g])
        R = S


def _r1_random(R, I, gens, dim, samples=512, seed=0):
    """Sampled Jacobian minors; True once they cut out codim >= 2 on the cone."""
    rng = random.Random(seed)
    c = R.ngens - dim
    if c == 0:
        return True
    rows = [[g.diff(i) for i in range(R.ngens)] for g in gens]
    if len(rows) < c:
        return False
    seen = set()
    minors = []
    for _ in range(samples):
        key = (tuple(sorted(rng.sample(range(len(rows)), c))),
               tuple(sorted(rng.sample(range(R.ngens), c))))
        if key in seen:
            continue
        seen.add(key)
        m = _det([[rows[r][k] for k in key[1]] for r in key[0]])
        if m:
            minors.append(m)
            if len(minors) % 16 == 0 and Ideal(R, gens + minors).dimension() <= dim - 2:
                return True
    return False


def is_normal(X):
    """Serre's criterion: R1 from the singular locus, S2 from Ext codimensions."""
    R, I = _drop_linear(X.ring, X.ideal)
    if I.is_zero() and all(w[0] == 1 for w in R.degs):
        return True
    dim = I.dimension()
    # R1 on the cone: singular locus of codim >= 2.  Minors of random
    # combinations of the Jacobian lie in the Jacobian ideal, so a few of them
    # already bound the singular locus from above; scan all minors otherwise.
    gens = I.minimal_generators()
    if not _r1_random(R, I, gens, dim):
        batch = []
        r1 = False
        for m in _jacobian_minors(R, I):
            batch.append(m)
            if len(batch) % 64 == 0 and Ideal(R, gens + batch).dimension() <= dim - 2:
                r1 = True
                break
        if not r1 and Ideal(R, gens + batch).dimension() > dim - 2:
            return False
    return satisfies_s2(I)


def satisfies_s2(I):
    """S2 for ``S/I`` via ``codim Ext^i(S/I, S) >= i + 2`` for ``i > codim``."""
    from .modules import GradedModule, free_resolution, dual_complex_ext

    S = I.ring
    n = S.ngens
    c = n - I.dimension()
    M = GradedModule(S, [(0,) * S.rank], [{(0,) + m: v for m, v in g.terms.items()} for g in I.gens])
    res = free_resolution(M)
    for i in range(c + 1, len(res.degrees)):
        E = dual_complex_ext(res, i)
        if E.ngens == 0:
            continue
        ann_dim = E.hilbert_series().dimension()
        if ann_dim < 0:
            continue
        if n - ann_dim < i + 2:
            return False
    return True
