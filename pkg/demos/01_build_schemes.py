"""Build the three scheme families and print their parameter table.

Each scheme is the orbital configuration of an explicit permutation
group: the fractional-linear group on exterior conjugate pairs over
GF(q^2) (q = 2^d), its extension by the field Frobenius, and the
monomial affine group on GF(q)^2 for odd q.
"""

from cohcfg import hollmann_large, hollmann_small, passman_scheme

print("family            q   degree  rank  valency  |G|      |G_0|")
print("-" * 62)

for q in (8, 16, 32):
    cfg, G = hollmann_large(q)
    k = int(cfg.valencies()[1])
    print(f"exterior-pairs   {q:3d}   {cfg.degree:5d} {cfg.rank:5d} "
          f"{k:8d}  {G.order():<8d} {G.point_stabilizer(0).order()}")

for q in (8, 32):
    cfg, G = hollmann_small(q)
    k = int(cfg.valencies()[1]) if cfg.rank > 1 else 0
    print(f"frobenius-fused  {q:3d}   {cfg.degree:5d} {cfg.rank:5d} "
          f"{k:8d}  {G.order():<8d} {G.point_stabilizer(0).order()}")

for q in (3, 5, 7, 9, 11, 13):
    cfg, G, _ = passman_scheme(q)
    k = int(cfg.valencies()[1])
    print(f"monomial-affine  {q:3d}   {cfg.degree:5d} {cfg.rank:5d} "
          f"{k:8d}  {G.order():<8d} {G.point_stabilizer(0).order()}")

print()
print("every scheme above is pseudocyclic: all irreflexive valencies agree")
print("and each indistinguishing number c(s) equals valency - 1")
