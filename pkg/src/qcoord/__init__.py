"""Exact crystal and canonical-basis combinatorics for symmetrizable Kac-Moody algebras.

Submodules
----------
cartan      root data, weights, dominance, Freudenthal and Weyl dimension oracles
qlaurent    exact Laurent polynomials in q
crystal     Littelmann paths, dual and tensor crystals, graph exploration
filtration  the total order on B(-mu) and the highest-weight filtration census
cells       multiplicity and cell (bi-weight) censuses
sl2         the modified quantum sl2 with its canonical basis and coproduct data
cli         command line front end
"""

from .cartan import RootDatum, Weight, preset, validate
from .qlaurent import LaurentPoly, q_binomial, q_int

__all__ = ["RootDatum", "Weight", "preset", "validate", "LaurentPoly", "q_int", "q_binomial"]
