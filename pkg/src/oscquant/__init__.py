"""Exact symbolic toolkit for the quantum harmonic oscillator algebra.

Subpackages build on each other roughly in this order:

- ``coeffs``     exact rational-function scalars with a series-order marker
- ``algebra``    the oscillator Lie algebra, PBW monomials, tensor powers,
                 and rewrite engines for deformed enveloping algebras
- ``bialgebra``  classical r-matrices, Schouten brackets, cocommutators,
                 and the classification of coboundary Lie bialgebra families
- ``poisson``    the oscillator group, invariant vector fields, and the
                 Poisson-Lie brackets induced by each r-matrix family
- ``lm``         exponential-coproduct construction of the quantized
                 coalgebras and their closed forms
- ``hopf``       the deformed Hopf algebra presentations (relations,
                 coproducts, counits, antipodes, deformed Casimirs)
- ``funalg``     the dual quantum function algebras on the oscillator group
- ``rmatrix``    universal R-matrices, quantum Yang-Baxter checks, a 3x3
                 matrix representation, FRT reconstruction, and semiclassical
                 limit checks
- ``cli``        the ``oscquant`` command line tool (tables / classify / verify)
"""

__version__ = "0.1.0"
