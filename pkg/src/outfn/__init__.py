"""Exact-arithmetic verification toolkit for outer automorphism groups
of free groups: Nielsen automorphism algebra and presentation checks,
eigenspace decompositions for signed permutation subgroups, graph
homology under finite actions, and induced representations that do not
factor through the integral linear quotient.
"""

from . import actions, cover, graphs, induced, linalg, symreps, words

__all__ = ["actions", "cover", "graphs", "induced", "linalg", "symreps", "words"]
__version__ = "0.1.0"
