"""Stein factorization, extremal contractions, flips and the MMP loop."""

import hashlib
import json
from fractions import Fraction
from math import factorial

from .cohomology import CohomologyTable, hom_threshold
from .divisors import (DivisorModule, canonical_divisor, cartier_index, divisor_module,
                       enumerate_bpf_cartier, enumerate_curves, intersection_number,
                       is_basepoint_free, is_cartier, is_nef_canonical, linear_system_morphism, Nef,
                       rees_algebra, reflexive_hull)
from .geometry import (BiVariety, GeometryError, GraphMorphism, MonoVariety, _fresh_names,
                       _projective_image, _shift_poly, b2m_projection, b2m_to_graph, embed,
                       exceptional_locus, hilbert_series_of, homogeneous_to_graph,
                       irreducible_components, irrelevant_ideal, is_isomorphism, is_normal,
                       map_degree, positive_fiber_locus, product_ring, proj_dim,
                       projective_space, restrict, ring_map_kernel, side_indices,
                       singular_locus)
from .groebner import BudgetExceeded
from .hilbert import monomials_of_degree
from .ideal import Ideal
from .modules import GradedModule, degree_slice, hom_module, submodule
from .poly import Poly, PolyRing


class NoGraphComponent(RuntimeError):
    pass


class OracleMissing(KeyError):
    pass


# ---------------------------------------------------------------- labels

def variety_hash(X):
    """Content hash of a variety: weights plus its reduced Gröbner basis."""
    R = X.ring
    gb = sorted(str(g) for g in X.ideal.gb()) if X.ideal.gens else []
    data = {"weights": [w[0] for w in R.degs], "names": list(R.names), "gb": gb}
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]


def infer_label(X):
    if X.label:
        return X.label
    R = X.ring
    if X.ideal.is_zero() and all(w[0] == 1 for w in R.degs):
        return f"P{R.ngens - 1}"
    return None


# ---------------------------------------------------------------- Stein factorization

class SteinResult:
    def __init__(self, Z, g, h, gamma=None, algebra=None, path="general", components=None):
        self.Z = Z
        self.g = g
        self.h = h
        self.gamma = gamma
        self.algebra = algebra
        self.path = path
        self.components = components

    def degree_g(self):
        return morphism_degree(self.g)

    def __repr__(self):
        return f"SteinResult(path={self.path}, Z={self.Z})"


class SteinAlgebra:
    """``C = ⊕ H^0(X, (f_*O_Y)(v))`` presented as ``A[u]/ker``."""

    def __init__(self, ring, kernel, generators, slice_module, r):
        self.ring = ring
        self.kernel = kernel
        self.generators = generators
        self.slice_module = slice_module
        self.r = r

    def dim(self, v):
        return self.slice_module.hilbert_function((v,))


def morphism_degree(f):
    """Degree of ``f`` onto its image (0 when the image has smaller dimension)."""
    G = f.graph
    I = G.full_ideal()
    V = b2m_projection(G, 1).target
    if V.dim() != f.source.dim():
        return 0
    return map_degree(I, G.ny, f.source, V)


def _graph_ring_module(f):
    G = f.graph
    P = G.ring
    I = G.full_ideal()
    return P, I, GradedModule.quotient_ring(P, I)


def _standard_monomials(I, d):
    """Monomials of (multi)degree ``d`` outside the initial ideal of ``I``."""
    P = I.ring
    leads = I.leading_monomials()
    out = []
    for m in monomials_of_degree(P.degs, d):
        if not any(all(a <= b for a, b in zip(l, m)) for l in leads):
            out.append(m)
    return out


def _slice_lifts(H, P):
    """Hom elements of degree ``(0, v)`` spanning the slice as a module over ``A``."""
    from .modules import _slice_generators, vec_degree
    vecs = _slice_generators(P, H.gdeg, [{(c,) + P.zero_mono: P.field.one} for c in range(H.ngens)],
                             1, H)
    out = []
    for v in vecs:
        if v:
            out.append((vec_degree(P, v, H.gdeg), v))
    return out


def stein_factorization(f, surjective=True, fast=True, budget=None):
    """Stein factorization ``Y --h--> Z --g--> X`` of a graph morphism."""
    Y, X = f.source, f.target
    if not surjective:
        from .geometry import image
        X = image(f)
    if fast:
        if X.ring.ngens == 1:
            # target is a point and Y is irreducible: fibres are connected
            return SteinResult(X, identity_graph(X), f, path="point")
        if morphism_degree(f) == 1 and is_normal(X):
            return SteinResult(X, identity_graph(X), f, path="birational")
    return _stein_general(f)


def identity_graph(X):
    from .geometry import identity_morphism
    return identity_morphism(X)


def _stein_general(f):
    Y, X = f.source, f.target
    G = f.graph
    P = G.ring
    I = G.full_ideal()
    R = GradedModule.quotient_ring(P, I)
    th = hom_threshold(R, R)
    r = th.r
    mons = sorted(_standard_monomials(I, r))
    if not mons:
        raise GeometryError("empty graded piece at the threshold")
    one = P.field.one
    Mr = submodule(P, I, [(0, 0)], [{(0,) + m: one} for m in mons], R.all_relations())
    if Mr.ngens != len(mons):
        raise GeometryError("degree-r basis is not minimal")
    H = hom_module(Mr, R)
    gamma = P.monomial(mons[0])
    Cmod = degree_slice(H, side=1)
    # elements ψ of degree (0, v): their value on γ is the component of generator 0
    lifts = _slice_lifts(H, P)
    elems = []
    for deg, v in lifts:
        if deg[0] != 0:
            continue
        psi = _evaluate_hom(H, v, P, Mr)
        if not psi:
            continue
        val = psi[0]
        elems.append((deg[1], val))
    # drop degree zero (the constants) and duplicates up to scalars
    A = X.ring
    nx = A.ngens
    ny = G.ny
    chosen = []
    basis_check = Ideal(P, I.gens)
    for d, val in sorted(elems, key=lambda t: (t[0], str(t[1]))):
        if d == 0:
            continue
        chosen.append((d, val))
    chosen = _independent_over_A(chosen, P, I, ny, gamma)
    # C = A[u_j] -> R[1/γ]: x -> x, u_j -> ψ_j(γ) / γ
    uname = _fresh_names(A.names, [f"u{j}" for j in range(len(chosen))])
    Cring = PolyRing(list(A.names) + uname, [w[0] for w in A.degs] + [d for d, _ in chosen], A.field)
    wname = _fresh_names(P.names, ["_w"])[0]
    gd = gamma.degree()
    T = PolyRing(list(P.names) + [wname], list(P.degs) + [(-gd[0], -gd[1])], P.field)
    w = T.var(wname)
    tI = Ideal(T, [embed(g, T, 0) for g in I.gens] + [w * embed(gamma, T, 0) - 1])
    images = [T.var(ny + i) for i in range(nx)] + [embed(val, T, 0) * w for _, val in chosen]
    src_w = [(0, wt[0]) for wt in A.degs] + [(0, d) for d, _ in chosen]
    K = ring_map_kernel(images, Cring, tI, src_weights=src_w)
    Z = MonoVariety(Cring, K, certify=False)
    g = homogeneous_to_graph(Cring.gens()[:nx], Z, X, check_domain=False)
    # Γ~ = Γ_f ×_X Γ_g inside Y × Z
    comps = _fibre_product_components(f, g)
    for Gi in comps:
        W = BiVariety(Y, Z, Gi)
        if is_isomorphism(W, side=0):
            h = GraphMorphism(Y, Z, W)
            alg = SteinAlgebra(Cring, K, chosen, Cmod, r)
            return SteinResult(Z, g, h, gamma, alg, "general", comps)
    raise NoGraphComponent("no component of the fibre product is a graph")


def _independent_over_A(chosen, P, I, ny, gamma):
    """Drop generators that lie in the A-span of the others (same degree, up to scalars)."""
    out = []
    seen = []
    for d, val in chosen:
        nf = Ideal(P, I.gens).reduce(val)
        key = (d, str(nf.monic()) if nf else "0")
        if nf and key not in seen:
            seen.append(key)
            out.append((d, nf))
    return out


def _evaluate_hom(H, v, P, Mr):
    """Images ``ψ(m_i)`` of the truncation generators for an element of ``H``."""
    # H is presented as a submodule of ⊕_i R (one copy per generator of Mr); the
    # generators of H are stored through their ambient vectors
    amb = getattr(H, "ambient", None)
    if amb is None:
        raise GeometryError("Hom module lost its ambient embedding")
    acc = {}
    for t, c in v.items():
        m = (0,) + t[1:]
        for s, d in amb[t[0]].items():
            u = tuple(a + b for a, b in zip(s, m))
            e = acc.get(u)
            val = c * d if e is None else e + c * d
            if val:
                acc[u] = val
            else:
                acc.pop(u, None)
    parts = {}
    for t, c in acc.items():
        parts.setdefault(t[0], {})[t[1:]] = c
    return {i: Poly(P, p) for i, p in parts.items()}


def _fibre_product_components(f, g):
    """Irreducible components of ``Γ_f ×_X Γ_g ⊂ Y × Z``."""
    Y, X, Z = f.source, f.target, g.source
    ny, nx, nz = Y.ngens, X.ngens, Z.ngens
    names = list(Y.ring.names)
    xn = _fresh_names(names, X.ring.names)
    zn = _fresh_names(names + xn, Z.ring.names)
    T = PolyRing(names + xn + zn,
                 [(d[0], 0) for d in Y.ring.degs] + [(d[0], 0) for d in X.ring.degs]
                 + [(0, d[0]) for d in Z.ring.degs], Y.ring.field)
    gens = [_shift_poly(h, T, list(range(ny + nx))) for h in f.graph_ideal().gens]
    # Γ_g lives in Z × X
    pos = list(range(ny + nx, ny + nx + nz)) + list(range(ny, ny + nx))
    gens += [_shift_poly(h, T, pos) for h in g.graph_ideal().gens]
    J = Ideal(T, gens).saturate(Ideal(T, [T.var(ny + i) for i in range(nx)]))
    E = J.eliminate(xn)
    Pyz = product_ring(Y.ring, Z.ring)
    out = []
    for h in E.gens:
        out.append(Poly(Pyz, {m[:ny] + m[ny + nx:]: c for m, c in h.terms.items()}))
    return irreducible_components(Ideal(Pyz, out))


def connected_fibres_certificate(h):
    """``h_* O_Y = O_Z``: the Stein algebra of ``h`` has the Hilbert function of ``Z``."""
    if h.target.ring.ngens == 1:
        return True
    st = stein_factorization(h, fast=False)
    A = hilbert_series_of(h.target.ideal)
    return all(st.algebra.dim(v) == A(v) for v in range(0, 6)) and morphism_degree(st.g) == 1


# ---------------------------------------------------------------- higher direct images

def higher_direct_images_vanish(f, pullback=None, window=3):
    """``{i: R^i f_* O_Y == 0}`` for ``1 <= i <= dim Y``.

    Isomorphisms and birational maps onto smooth targets vanish outright;
    for a point target the groups are ``H^i(Y, O_Y)``; otherwise a Leray
    window compares ``H^i(Y, f^*O(v))`` for large ``v`` using ``pullback``.
    """
    Y, X = f.source, f.target
    n = Y.dim()
    if X.ring.ngens == 1:
        M = GradedModule.quotient_ring(Y.ring, Y.ideal)
        T = CohomologyTable(M)
        return {i: T.h(i, 0) == 0 for i in range(1, n + 1)}
    if morphism_degree(f) == 1 and _is_smooth(X):
        return {i: True for i in range(1, n + 1)}
    if pullback is None:
        raise BudgetExceeded("no pulled back polarization for the Leray window")
    out = {}
    for i in range(1, n + 1):
        vals = []
        for v in range(window, 2 * window):
            Dm = pullback.power(v)
            T = CohomologyTable(Dm.module())
            vals.append(T.h(i, 0))
        out[i] = all(x == 0 for x in vals)
    return out


def _is_smooth(X):
    R = X.ring
    if X.ideal.is_zero():
        return all(w[0] == 1 for w in R.degs)
    sing = singular_locus(X)
    return sing.saturate(irrelevant_ideal(R)).is_unit()


# ---------------------------------------------------------------- Betti oracle

class BettiOracle:
    """``b_2`` values keyed by label or content hash."""

    def __init__(self, entries, policy="fail"):
        self.entries = dict(entries)
        if policy not in ("fail", "assume", "skip-condition-2"):
            raise ValueError(f"unknown oracle policy {policy!r}")
        self.policy = "assume" if policy == "skip-condition-2" else policy
        for k, v in self.entries.items():
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"b2 for {k} must be a non-negative integer")

    @classmethod
    def from_json(cls, data, policy=None):
        if "entries" in data:
            ent = {e.get("label") or e.get("hash"): e["b2"] for e in data["entries"]}
            pol = policy or data.get("policy", "fail")
        else:
            ent = data
            pol = policy or "fail"
        return cls(ent, pol)

    def b2(self, X):
        for key in (infer_label(X), variety_hash(X)):
            if key is not None and key in self.entries:
                return self.entries[key]
        if self.policy == "assume":
            return None
        raise OracleMissing(f"no b2 entry for {infer_label(X) or variety_hash(X)}")


# ---------------------------------------------------------------- contractions

def _jnum(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


class ContractionCertificate:
    def __init__(self, kind, vanishing, b2, curve, value, exc_codim):
        self.kind = kind
        self.vanishing = vanishing
        self.b2 = b2
        self.curve = curve
        self.value = value
        self.exc_codim = exc_codim

    def to_json(self):
        return {
            "kind": self.kind,
            "higher_direct_images_vanish": {str(k): v for k, v in sorted(self.vanishing.items())},
            "b2": self.b2,
            "witness_curve": [str(g) for g in self.curve.gens] if self.curve is not None else None,
            "K_dot_C": _jnum(self.value),
            "exceptional_codim": self.exc_codim,
        }

    def __repr__(self):
        return f"ContractionCertificate({self.kind}, K.C={self.value})"


class NotContraction:
    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"NotContraction({self.reason})"


def _curves_in(E, Y, budget=10):
    """Curves contained in the closed subset ``V(E)`` of ``Y``."""
    from .ideal import minimal_primes
    S = Y.ring
    comps = [p for p in minimal_primes(Ideal(S, E.gens + Y.ideal.gens))
             if not p.saturate(irrelevant_ideal(S)).is_unit()]
    for p in sorted(comps, key=lambda q: [str(g) for g in q.gb()]):
        W = MonoVariety(S, p, certify=False, prime=True)
        for C in enumerate_curves(W, budget=budget):
            yield C


def is_extremal_contraction(f, oracle, canonical=None, pullback=None, curve_budget=10, window=3):
    """Check the contraction conditions in the order (2), (3'), (1) and classify."""
    Y, X = f.source, f.target
    b2Y, b2X = oracle.b2(Y), oracle.b2(X)
    if b2Y is not None and b2X is not None:
        if b2Y - b2X != 1:
            return NotContraction(f"b2 difference is {b2Y - b2X}")
        b2 = {"source": b2Y, "target": b2X}
    else:
        b2 = "ASSUMED"
    cd = canonical or canonical_divisor(Y)
    K = cd.module
    r = cartier_index(K)
    if r is None:
        return NotContraction("K is not Q-Cartier within the index budget")
    Kr = K.power(r) if r > 1 else K
    dimY, dimX = Y.dim(), X.dim()
    if dimX < dimY:
        loc = Ideal(Y.ring, Y.ideal.gens)
        codim = 0
        curves = enumerate_curves(Y, budget=curve_budget)
    else:
        loc, codim = exceptional_locus(f, birational=True)
        if loc.is_unit():
            return NotContraction("no contracted curve")
        curves = _curves_in(loc, Y, curve_budget)
    witness, value = None, None
    for C in curves:
        if not _contracted(f, C):
            continue
        val = Fraction(intersection_number(Kr, C), r)
        witness, value = C, val
        break
    if witness is None:
        return NotContraction("no contracted curve found")
    if value >= 0:
        return NotContraction(f"K.C = {value} is not negative")
    van = higher_direct_images_vanish(f, pullback, window)
    if not all(van.values()):
        return NotContraction("higher direct images do not vanish")
    if dimX < dimY:
        kind = "MoriFiber"
        codim = None
    elif codim == 1:
        kind = "Divisorial"
    else:
        kind = "Flipping"
    value = int(value) if value.denominator == 1 else value
    return ContractionCertificate(kind, van, b2, witness, value, codim)


def _contracted(f, C):
    """Whether the curve ``C ⊂ Y`` maps to a point."""
    G = f.graph
    P = G.ring
    if f.target.ring.ngens == 1:
        return True
    J = G.full_ideal() + [embed(g, P, 0) for g in C.gens]
    img = _projective_image(J, 1)
    A = f.target.ring
    gens = [restrict(g, A, G.ny) for g in img.gens]
    return proj_dim(Ideal(A, gens)) == 0


def find_contraction(X, oracle, budget=10, hints=(), canonical=None, window=3):
    """First extremal contraction in the base-point-free Cartier stream."""
    if budget <= 0:
        raise BudgetExceeded("divisor budget is zero")
    cd = canonical or canonical_divisor(X)
    tried = 0
    for D in enumerate_bpf_cartier(X, hints, budget):
        tried += 1
        Dm = D if isinstance(D, DivisorModule) else divisor_module(D)
        if not (is_cartier(Dm) and is_basepoint_free(Dm)):
            continue
        f = linear_system_morphism(Dm, check=False)
        st = stein_factorization(f)
        h = st.h
        cert = is_extremal_contraction(h, oracle, canonical=cd, pullback=Dm, window=window)
        if isinstance(cert, ContractionCertificate):
            return h, cert, D
        if tried >= budget:
            break
    raise BudgetExceeded("no contraction found within the divisor budget")


# ---------------------------------------------------------------- flips

class FlipResult:
    def __init__(self, Z, morphism, m, rees, exc_codim, curve=None, value=None, W=None):
        self.Z = Z
        self.morphism = morphism
        self.m = m
        self.rees = rees
        self.exc_codim = exc_codim
        self.curve = curve
        self.value = value
        self.W = W
        self._graph = None

    def graph_morphism(self):
        """``Z -> X`` with ``Z`` in its Segre embedding."""
        if self._graph is None:
            self._graph = b2m_to_graph(b2m_projection(self.morphism, 1))
        return self._graph

    def __repr__(self):
        return f"FlipResult(m={self.m}, codim={self.exc_codim}, K.C={self.value})"


def _choose_s(K):
    """Least monomial (then generator) inside the ideal of the positive part of ``K``."""
    X = K.X
    S = X.ring
    P = K.positive()
    JP = P.ideal()
    if P.is_zero():
        return S.one()
    for d in range(1, 8):
        for m in sorted(monomials_of_degree(S.degs, d), reverse=True):
            f = S.monomial(m)
            if JP.contains(f) and not X.ideal.contains(f):
                return f
    return next(g for g in JP.minimal_generators() if not X.ideal.contains(g))


def flip(f, e_max=5, canonical=None, certify_input=False):
    """Flip of a flipping contraction ``f: Y -> X`` (or of its target ``X``).

    Candidates ``Proj ⊕ O_X(m K_X)`` for ``m = e!`` are accepted once the
    biProj is normal, the map to ``X`` has exceptional locus of codimension
    at least two and is not an isomorphism.
    """
    X = f.target if isinstance(f, GraphMorphism) else f
    S = X.ring
    cd = canonical or canonical_divisor(X)
    K = cd.divisor
    s = _choose_s(K)
    Km = divisor_module(K, h=s) if not K.positive().is_zero() else divisor_module(K)
    I = Km.ideal
    for e in range(1, e_max + 1):
        m = factorial(e)
        Im = reflexive_hull(Ideal(S, I.power(m).gens + X.ideal.gens), X.ideal) if m > 1 else I
        rees = rees_algebra(Im, X.ideal, uname="t")
        if len(rees.gens) == 1:
            continue  # principal: the Proj is X itself
        P = rees.ring
        nx = S.ngens
        un = P.names[nx:]
        T = projective_space(len(un) - 1, "t")
        W = BiVariety(X, T, Ideal(P, rees.ideal.gens), P)
        # swap so that the flip side is the first factor and X the second
        if not _normal_bigraded(W):
            continue
        Wt = _swap(W)
        if is_isomorphism(Wt, side=1):
            continue
        loc = positive_fiber_locus(Wt.full_ideal(), 1)
        if loc.saturate(irrelevant_ideal(Wt.ring, 1)).is_unit():
            codim = Wt.dim() + 1
        else:
            codim = Wt.dim() - proj_dim(Wt.full_ideal() + loc.gens)
        if codim < 2:
            continue
        curve, value = _flipped_curve(Wt, loc, m)
        return FlipResult(Wt.Y, Wt, m, rees, codim, curve, value, W)
    raise BudgetExceeded("no flip found within the factorial ceiling")


def _swap(W):
    """``Y x X`` -> ``X x Y`` as a BiVariety."""
    P = W.ring
    n0 = side_indices(P, 0)
    n1 = side_indices(P, 1)
    Q = product_ring(W.X.ring, W.Y.ring)
    perm = n1 + n0
    pos = [perm.index(i) for i in range(P.ngens)]
    J = Ideal(Q, [_shift_poly(g, Q, pos) for g in W.ideal.gens])
    return BiVariety(W.X, W.Y, J, Q)


def _normal_bigraded(W):
    """Serre's R1 + S2 on the bigraded cone away from the irrelevant locus."""
    from .geometry import satisfies_s2
    from .divisors import _jacobian_minors
    P = W.ring
    I = W.full_ideal()
    gens = I.minimal_generators()
    c = P.ngens - I.dimension()
    minors = list(_jacobian_minors(gens, P, c, limit=20000))
    J = Ideal(P, gens + minors)
    for s in (0, 1):
        if not J.is_unit():
            J = J.saturate(irrelevant_ideal(P, s))
    if not J.is_unit() and J.dimension() > I.dimension() - 2:
        return False
    return satisfies_s2(I)


def _flipped_curve(Wt, loc, m):
    """A curve in the exceptional locus of ``Z -> X`` and ``K_Z·C = deg O(0,1)|_C / m``."""
    from .ideal import minimal_primes
    P = Wt.ring
    if loc.is_unit():
        return None, None
    J = Wt.full_ideal() + loc.gens
    for Q in minimal_primes(J):
        if Q.saturate(irrelevant_ideal(P, 0)).is_unit() or Q.saturate(irrelevant_ideal(P, 1)).is_unit():
            continue
        if proj_dim(Q) != 1:
            continue
        # C lies over a point of X, so O(K_Z)|_C = O(0,1)|_C ^ (1/m): its degree in P^{r-1}
        u = side_indices(P, 0)
        x = side_indices(P, 1)
        img = Q.eliminate([P.names[i] for i in x])
        Ru = PolyRing([P.names[i] for i in u], [P.degs[i][0] for i in u], P.field)
        Iu = Ideal(Ru, [restrict(g, Ru, 0) for g in img.gens])
        H = hilbert_series_of(Iu)
        deg = H.multiplicity()
        return Q, Fraction(deg) / m
    return None, None


# ---------------------------------------------------------------- MMP driver

class MMPStep:
    def __init__(self, kind, source, target, graph, certificate=None, flip=None, snapshot=None):
        self.kind = kind
        self.source = source
        self.target = target
        self.graph = graph
        self.certificate = certificate
        self.flip = flip
        self.snapshot = snapshot

    def to_json(self):
        d = {
            "kind": self.kind,
            "source": self.source,
            "target": self.target,
            "graph": [str(g) for g in self.graph.ideal.gens] if self.graph is not None else [],
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_json()
        if self.snapshot is not None:
            d["target_variety"] = self.snapshot
        return d


class MMPSequence:
    def __init__(self, steps, status, final, nef=None, complete=True):
        self.steps = steps
        self.status = status
        self.final = final
        self.nef = nef
        self.complete = complete

    def kinds(self):
        return [s.kind for s in self.steps]

    def to_json(self):
        return {
            "steps": [s.to_json() for s in self.steps],
            "terminal": self.status,
            "nef": None if self.nef is None else {"power": self.nef.power, "index": self.nef.index},
            "final": infer_label(self.final) or variety_hash(self.final),
            "complete": self.complete,
        }

    def __repr__(self):
        return f"MMPSequence({self.kinds()}, {self.status})"


def _snapshot(X):
    return {"ring": X.ring.descriptor(), "ideal": [str(g) for g in X.ideal.gens]}


def _label_of(X):
    return infer_label(X) or variety_hash(X)


def run_mmp(X, oracle, hints=None, divisor_budget=10, curve_budget=20, e_max=5, max_steps=10,
            window=3):
    """Algorithm loop: nef test, contraction search, classification, recursion."""
    hints = hints or {}
    if X.dim() > 3:
        raise ValueError("only dimension at most three is supported")
    steps = []
    cur = X
    for _ in range(max_steps):
        label = _label_of(cur)
        hs = hints(cur) if callable(hints) else hints.get(label, {})
        cd = canonical_divisor(cur)
        try:
            res = is_nef_canonical(cur, budget=curve_budget, hints=hs.get("curves", ()), canonical=cd)
        except BudgetExceeded as exc:
            raise PartialTrace(str(exc), MMPSequence(steps, "Incomplete", cur, complete=False))
        if isinstance(res, Nef):
            return MMPSequence(steps, "MinimalModel", cur, res)
        try:
            h, cert, D = find_contraction(cur, oracle, divisor_budget, hs.get("divisors", ()), cd,
                                          window)
        except BudgetExceeded as exc:
            raise PartialTrace(str(exc), MMPSequence(steps, "Incomplete", cur, complete=False))
        tgt = h.target
        if cert.kind == "MoriFiber":
            steps.append(MMPStep("mori-fiber", label, _label_of(tgt), h.graph, cert,
                                 snapshot=_snapshot(tgt)))
            return MMPSequence(steps, "MoriFiberSpace", cur)
        if cert.kind == "Divisorial":
            steps.append(MMPStep("divisorial", label, _label_of(tgt), h.graph, cert,
                                 snapshot=_snapshot(tgt)))
            cur = MonoVariety(tgt.ring, tgt.ideal, _label_of(tgt), certify=False)
            continue
        steps.append(MMPStep("flipping-contraction", label, _label_of(tgt), h.graph, cert,
                             snapshot=_snapshot(tgt)))
        try:
            fl = flip(h, e_max)
        except BudgetExceeded as exc:
            raise PartialTrace(str(exc), MMPSequence(steps, "Incomplete", cur, complete=False))
        g = fl.graph_morphism()
        Zm = g.source
        steps.append(MMPStep("flip", _label_of(Zm), _label_of(tgt), g.graph, snapshot=_snapshot(Zm)))
        cur = Zm
    raise PartialTrace("step budget exhausted", MMPSequence(steps, "Incomplete", cur, complete=False))


class PartialTrace(BudgetExceeded):
    def __init__(self, msg, trace):
        super().__init__(msg)
        self.trace = trace
