"""Exact algebra of q-difference operators, its affine relatives and their modules.

Scalars are Laurent polynomials in a formal ``q`` (:mod:`qdiffops.qcoeff`);
Lie algebras are sparse bracket rules on basis keys (:mod:`qdiffops.liealg`);
:mod:`qdiffops.central` holds cocycles and isomorphisms, :mod:`qdiffops.fdist`
the generating-function identities and :mod:`qdiffops.pbwmod` the induced
modules.
"""

from .liealg import LieElem, basis, bracket, get_algebra
from .parsing import parse_element, parse_scalar, parse_state
from .qcoeff import QLaurent, q_pow

__all__ = [
    "QLaurent", "q_pow", "LieElem", "basis", "bracket", "get_algebra",
    "parse_element", "parse_scalar", "parse_state",
]

__version__ = "0.1.0"
