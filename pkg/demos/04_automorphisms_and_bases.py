"""Automorphism groups, schurity, separability, base numbers.

The generic engine is an individualization-refinement search over a
doubled structure; partly regular configurations take a linear-time
fast path instead.
"""

from cohcfg import (automorphism_group, base_number, extend_points,
                    is_schurian, is_separable_small)
from cohcfg.schemes import hollmann_large, passman_scheme

cfg, G = hollmann_large(8)
aut = automorphism_group(cfg)
print(f"28-point scheme: |aut| = {aut.order} via {aut.method}")

xa = extend_points(cfg, [0])
aut_a = automorphism_group(xa)
print(f"one-point extension: |aut| = {aut_a.order} "
      f"(the point stabilizer, dihedral)")
print("extension schurian:", is_schurian(xa).passed)

delta = [f for f in xa.fibers() if len(f) > 1][0]
Y = xa.restriction(delta.tolist())
print(f"restriction to a 9-point fiber: |aut| = "
      f"{automorphism_group(Y).order}, separable =",
      is_separable_small(Y).passed)

print()
p5, _, _ = passman_scheme(5)
ext = extend_points(p5, [0, 6])
aut_ext = automorphism_group(ext)
print(f"two-point extension of the 25-point scheme: partly regular, "
      f"|aut| = {aut_ext.order} via {aut_ext.method}")

print()
for name, scheme in [("28-point scheme", cfg),
                     ("9-point affine scheme", passman_scheme(3)[0]),
                     ("25-point affine scheme", p5)]:
    print(f"{name}: greedy base {base_number(scheme, 'greedy')}, "
          f"exact base {base_number(scheme, 'exact')}")
