"""Homology of the shadow and local complexes.

The two chain complexes are built independently; the point of the comparison
is that their homology groups come out the same.
"""
from tknots import ChainTheory, corresponding_tribracket, dihedral, homology

for n in (3, 5):
    sb = dihedral(n)
    S = ChainTheory.shadow(sb)
    L = ChainTheory.local(corresponding_tribracket(sb))
    for k in (1, 2, 3):
        for coeff in (None, n):
            a, b = homology(S, k, coeff), homology(L, k, coeff)
            label = "Z" if coeff is None else f"Z_{coeff}"
            print(f"dihedral({n}) H_{k}({label}): SB rank {a.free_rank} torsion {a.torsion}"
                  f" | LB rank {b.free_rank} torsion {b.torsion} | same: {a.same_group(b)}")
