"""Stein factorization of a map with disconnected fibres.

f : P1 x P1 -> P1 sends ([s0:s1], [t0:t1]) to [t0^2 : t1^2].  Each fibre is
two disjoint lines, so f factors through a double cover of the line.
"""

from algmmp.geometry import (b2m_projection, b2m_to_graph, compose, homogeneous_to_graph,
                             product_variety, projective_space)
from algmmp.mmp import stein_factorization

P1, P1b = projective_space(1, "s"), projective_space(1, "t")
pr = b2m_to_graph(b2m_projection(product_variety(P1, P1b), 1))
T = P1b.ring
square = homogeneous_to_graph([T("t0^2"), T("t1^2")], P1b, projective_space(1, "x"))
f = compose(pr, square)
print("source (Segre quadric):", f.source.ideal)

st = stein_factorization(f, fast=False)
print("Z =", st.Z.ring, st.Z.ideal)
print("degree of g:", st.degree_g())
print("components of the fibre product:", len(st.components))
print("h then g gives back f:", compose(st.h, st.g).graph.full_ideal() == f.graph.full_ideal())

# pieces of the algebra C = sum_v H^0(X, f_* O(v))
print("dim C_v, v = 0..4:", [st.algebra.dim(v) for v in range(5)])
