"""Exact-arithmetic lab for the twisted inhomogeneous nineteen-vertex model.

Everything runs over the exact extension ring Q(s, i) with s**2 = [q][q^2];
no floating point anywhere.  Submodules:

- field:     rationals, the quadratic+Gaussian extension, half-power and
             Laurent polynomials, exact interpolation
- rmatrix:   the R-matrices of the six-, mixed and nineteen-vertex models
             and their structural identities
- aba:       monodromy matrix, Bethe vectors, transfer matrices and the
             exchange/cyclic/recurrence relations of the eigenvector
- detform:   Slavnov and Izergin-Korepin determinants, partition-function
             sum rules, closed-form simple components
- asm:       alternating-sign-matrix generation and the six-vertex
             domain-wall partition function oracle
- spinchain: the twisted spin-one XXZ Hamiltonian, twisted translation,
             and the homogeneous-limit singlet state
- cli:       batch verification front end
"""

from bethelab.field import RAT, Scalar, HalfPowerPoly, LaurentPoly, bracket, brk

__all__ = ["RAT", "Scalar", "HalfPowerPoly", "LaurentPoly", "bracket", "brk"]
__version__ = "0.1.0"
