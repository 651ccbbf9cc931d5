"""Exact-arithmetic workbench for cluster algebras of geometric type.

Subpackage layout, roughly bottom-up:

    laurent    integer Laurent polynomials and tropical monomial arithmetic
    lattice    integer linear algebra (Hermite form, kernels, solving)
    seeds      extended exchange matrices, seeds, mutation, hatted variables
    orbits     rescaling action and seed-orbit equivalence
    quasihom   monomial maps between patterns, verification, construction
    patterns   exchange-pattern exploration, nerves, quasi-automorphism search
    surfaces   annulus triangulation fixture and lamination/shear checks
    grassmann  Pluecker and band-matrix fixtures and the flat-to-band map
    cli        command line entry points

All arithmetic is exact: integers and integer exponent vectors throughout,
`fractions.Fraction` where a rational quotient is unavoidable in tests.
"""

__version__ = "0.1.0"
