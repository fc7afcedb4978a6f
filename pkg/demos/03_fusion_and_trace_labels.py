"""Color fusion and the trace-form labeling of the large scheme.

Merging the colors of the 496-point scheme along the Frobenius-induced
color action reproduces the orbitals of the Frobenius-extended group;
merging the one-parameter subgroup scheme of the affine family along
the signed-permutation action reproduces the full monomial scheme.
The colors of the large scheme carry labels by trace-zero field
elements under which c_{s_x s_y}^{s_z} = 1 exactly when Tr(xz) = 0 and
x + y + z = 0 (away from the reflexive target).
"""

from cohcfg import algebraic_fusion, induced_color_action, trace_label_check
from cohcfg.schemes import (AffinePlanePoints, ExteriorPairPoints,
                            hollmann_large, passman_scheme)

cfg, _ = hollmann_large(32)
frob = ExteriorPairPoints(32).frobenius_permutation()
phi = induced_color_action(cfg, frob)
fused, fmap = algebraic_fusion(cfg, [phi])
print(f"496-point scheme: rank {cfg.rank} --[fuse by order-{fmap.order} "
      f"Frobenius action]--> rank {fused.rank}")

q = 5
full, _, sub = passman_scheme(q)
gens = [induced_color_action(sub, g)
        for g in AffinePlanePoints(q).signed_swap_generators()]
fused2, fmap2 = algebraic_fusion(sub, gens)
print(f"25-point subgroup scheme: rank {sub.rank} --[fuse by order-"
      f"{fmap2.order} signed-permutation action]--> rank {fused2.rank}")
print("fused scheme equals the full-group orbitals:",
      fused2.same_partition(full))

print()
for q in (8, 16, 32):
    rep = trace_label_check(q)
    print(f"q={q}: trace labeling found = {rep.passed}; "
          f"bijection {rep.witnesses.get('bijection')}")
