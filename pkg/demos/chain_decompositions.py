"""
Centered chain decompositions
=============================

A chain decomposition splits the ideal lattice into saturated chains.  When
every chain is centered at the middle rank (or half a step above or below it)
the rank sequence is forced to be symmetric or interlacing.
"""

from fences import build_lattice, cd_d_divided, cd_three_segment, cd_two_segment, validate_cd
from fences.constructions import core_three_segment, lift_ncd

# Two segments: the lattice is a grid with one extra element on top.
cd = cd_two_segment(2, 2)
print(cd.classification, cd.intervals())

# %%
# Three segments use a bracket-matching core.  Ideals with the same core
# form one chain; free letters are switched on from left to right.
print(core_three_segment(2, 3, 1, [1, 4, 5]))
cd = cd_three_segment(2, 3, 1)
report = validate_cd(build_lattice(cd.poset), cd)
print(cd.classification, "valid:", report.valid, "chains:", len(cd.chains))

# %%
# Reversing a composition with a < c flips bottom to top.
print(cd_three_segment(1, 3, 2).classification)

# %%
# d-divided posets always get a top-centered decomposition.
for n, d in [(6, 2), (10, 4)]:
    print((n, d), cd_d_divided(n, d).classification)

# %%
# A long segment can be stretched one element at a time while keeping the
# decomposition nested.
cd, alpha = cd_two_segment(1, 2), (1, 2)
for _ in range(3):
    cd = lift_ncd(alpha, 2, cd)
    alpha = (1, alpha[1] + 1)
    print(alpha, cd.classification, len(cd.chains), "chains")
