"""tracelab: an exact-arithmetic laboratory for trace-formula identities
over small finite fields.

Subpackage map:

- fields:   finite fields F_{p^k} and exact polynomial arithmetic
- curves:   curve models, places, divisors, Riemann-Roch spaces
- covers:   etale double covers of elliptic curves and divisor functoriality
- ring:     the exact group-ring coefficient ring with a half-twist unit
- zeta:     zeta functions from point counts
- systems:  graded rank-1 systems, L-series (both routes), symmetric powers
- picard:   Picard groups and their finite-order characters
- hecke:    translation Hecke kernels, eigenvalue and trace identities
- hitchin:  the rank-2 Hitchin-like base, discriminants and stratification
- kernels:  compiled/pure enumeration kernels (selected at import)
- cli:      the `tracelab` command line front end
"""

__version__ = "1.0.0"
