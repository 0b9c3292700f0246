"""A flip over the cone on a cubic scroll.

X is the projective cone (vertex w) over the scroll S(1,2) in P4.  Its
canonical class is not Cartier along the vertex line; the Rees algebra of
O(K) already gives the flip at m = 1.
"""

from algmmp.geometry import MonoVariety, _zero_dim_length
from algmmp.ideal import Ideal
from algmmp.mmp import flip
from algmmp.poly import PolyRing

S = PolyRing(["u1", "u2", "u3", "u4", "u5", "w"])
X = MonoVariety(S, ["u1*u4 - u2*u3", "u1*u5 - u3*u4", "u2*u5 - u4^2"], label="flip_cone")

fr = flip(X)
print("m =", fr.m, " exceptional codim =", fr.exc_codim)
print("flipped curve:", fr.curve.gens)
print("K.C on the flipped side:", fr.value)

# cross-check with strict transforms: F = (u1,u2,u4) is a plane, D = (u1,u3)
W = fr.morphism
P, ny = W.ring, W.ny
vertex = Ideal(P, [P.var(ny + i) for i in range(5)])
F = (W.full_ideal() + [P.var(ny), P.var(ny + 1), P.var(ny + 3)]).saturate(vertex)
FC = _zero_dim_length(F + fr.curve.gens)
print("F.C =", FC, "so K.C = -3(0 - F.C) - 2 F.C =", 3 * FC - 2 * FC)
