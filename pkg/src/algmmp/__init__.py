"""Exact graded commutative algebra and minimal model program steps for
projective varieties given by explicit equations."""

from .field import QQ, NumberField
from .poly import PolyRing, Poly, parse_poly
from .ideal import Ideal, minimal_primes
from .groebner import BudgetExceeded
from .modules import GradedModule, free_resolution, hom_module, ext_module
from .geometry import (MonoVariety, BiVariety, GraphMorphism, projective_space, product_variety,
                       segre_product, b2m_projection, b2m_to_graph, homogeneous_to_graph,
                       compose, is_isomorphism, exceptional_locus, is_normal)
from .cohomology import hom_threshold, global_hom, CohomologyTable, sheaf_cohomology_dim
from .divisors import (WeilDivisor, DivisorModule, divisor_module, canonical_divisor,
                       symbolic_power, is_cartier, cartier_index, is_basepoint_free,
                       intersection_number, is_nef_canonical, Nef, NotNef)
from .mmp import (stein_factorization, higher_direct_images_vanish, BettiOracle,
                  is_extremal_contraction, find_contraction, flip, run_mmp, MMPSequence)

__version__ = "0.1.0"
