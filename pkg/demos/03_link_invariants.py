"""Cocycle invariants of the trefoil and figure-eight knots.

Colorings are enumerated twice, once with the shadow biquandle and once with
its tribracket.  The map T matches them up and the two invariants agree.
"""
from tknots import (
    T,
    corresponding_tribracket,
    dihedral,
    enumerate_lb_colorings,
    enumerate_sb_colorings,
    invariants,
    mochizuki_2cocycle,
    transport_mu,
)
from tknots.verify import load_builtin

for name, n in (("trefoil", 3), ("figure8", 3), ("figure8", 5)):
    ds, sb = load_builtin(name), dihedral(n)
    t = corresponding_tribracket(sb)
    S, L = enumerate_sb_colorings(ds, sb), enumerate_lb_colorings(ds, t)
    print(f"{name} / dihedral({n}): {len(S)} shadow colorings, {len(L)} local colorings")
    print("  T is a bijection:", sorted(T(sb, c, ds) for c in S) == sorted(L))
    theta = mochizuki_2cocycle(n)
    a = invariants(ds, sb, theta)
    b = invariants(ds, t, transport_mu(theta, sb))
    print("  Phi (shadow):", a.phi)
    print("  Phi (local): ", b.phi)
    print("  homology classes:", a.H)

# Reidemeister moves leave the invariant unchanged
for name in ("trefoil", "trefoil-r1a", "trefoil-r2a"):
    r = invariants(load_builtin(name), dihedral(3), mochizuki_2cocycle(3), with_homology=False)
    print(f"{name:12s} crossings={load_builtin(name).n_crossings} Phi={r.phi}")
