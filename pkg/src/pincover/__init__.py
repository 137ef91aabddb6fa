"""Exact computational algebra for permutation covers in Pin+(n).

Subpackages:

- scalars: the field Q(sqrt2), integer helpers
- clifford: multivectors, twisted adjoint, orthogonal matrices
- perm: permutations of {1..n}
- pin: the double cover of the symmetric group, enumeration, analyses
- presentation: finite presentations and coset enumeration
- nilgroup: free nilpotency-class-2 groups and tensor squares
- quadratic: square groups, quadratic pair modules, validators, tracks
- actions: crossed modules, monoid-groupoids, sign groups and their actions
- cli: command line front end with JSON/CSV/figure reports
"""

__version__ = "0.1.0"
