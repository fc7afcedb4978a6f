"""Coherent closure by example: cycles, point extensions, 2-extension.

The closure of a partition is the coarsest refinement with constant
triple counts.  A 5-cycle's edge partition is already coherent (it is
the dihedral orbital scheme); a 6-cycle's is not, and the closure
splits the non-edges by distance.
"""

import numpy as np

from cohcfg import CoherentConfiguration, coherent_closure, extend_points, two_extension
from cohcfg.perm import PermGroup
from cohcfg.schemes import hollmann_large


def cycle_partition(n):
    M = np.full((n, n), 2)
    np.fill_diagonal(M, 0)
    for i in range(n):
        M[i, (i + 1) % n] = 1
        M[(i + 1) % n, i] = 1
    return M


for n in (5, 6):
    raw = CoherentConfiguration(cycle_partition(n))
    closed = coherent_closure(cycle_partition(n))
    print(f"{n}-cycle partition: coherent as given = "
          f"{raw.validate('full').passed}, closure rank = {closed.rank}")

print()
cfg, G = hollmann_large(8)
xa = extend_points(cfg, [0])
print("one-point extension of the 28-point scheme:")
print("  fiber sizes:", sorted(len(f) for f in xa.fibers()))
print("  rank:", xa.rank)
xab = extend_points(cfg, [0, 1])
print("two-point extension: partly regular =", xab.is_partly_regular()[0],
      ", rank =", xab.rank)

print()
thin = PermGroup(4, [(1, 2, 3, 0)]).orbitals()
te = two_extension(thin)
off = [i for i in range(16) if i // 4 != i % 4]
print("2-extension of the order-4 cyclic scheme:",
      f"degree {te.degree}, rank {te.rank},",
      "off-diagonal part semiregular =", te.restriction(off).is_semiregular())
