"""
Rank polynomials of fences
==========================

The fence F(alpha) zigzags up and down according to the parts of alpha.
Its order ideals form a distributive lattice, and counting ideals by size
gives the rank polynomial r(q; alpha).
"""

from fences import build_fence, build_lattice, rank_sequence
from fences.polynomial import rank_poly_explicit, rank_poly_recursive, shape_classify

# F(2,1,1): up two steps, down one, up one.  Five elements in total.
F = build_fence((2, 1, 1))
print(F.to_dot())

# %%
# Brute force: list every ideal and count by size.
L = build_lattice(F)
print(len(L), "ideals, ranks", rank_sequence(L))

# %%
# The recursion toggles on the last element and never builds the lattice,
# so it handles much larger fences.
print(rank_poly_recursive((2, 1, 1)))
print(rank_poly_recursive((6, 5, 4, 3, 2)))

# %%
# With an odd number of parts there is also a closed formula.
print(rank_poly_explicit((2, 1, 1)) == rank_poly_recursive((2, 1, 1)))

# %%
# Shape flags.  (1,2,3,2,2,1) reads 1 <= 1 <= 2 <= 2 <= 2 <= 3 from the
# outside in, starting at the top end, so it is bottom interlacing.
shape = shape_classify(rank_poly_recursive((2, 1, 1)))
print(shape.classify(), shape)
