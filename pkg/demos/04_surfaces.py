"""Surface diagrams: a sphere and a code with two triple points.

The second code comes from four axis-parallel planes placed at different
heights.  It is not a closed surface, so only the chain-level statements are
checked there; homology is skipped.
"""
from tknots import corresponding_tribracket, dihedral, mochizuki_3cocycle
from tknots.surfaces import plane_arrangement, sphere_code, two_triple_point_code
from tknots.verify import compare_pipelines

code = two_triple_point_code()
print(f"sheets={code.sheets} regions={code.regions} double curves={len(code.double_curves)}")
print("triple points (sign, source region, bottom, middle, top):", code.triple_points)

for label, sc in (("sphere", sphere_code()), ("two triple points", code)):
    report = compare_pipelines(sc, dihedral(3), mochizuki_3cocycle(3))
    print(label, {k: report[k] for k in ("colorings_sb", "colorings_lb", "T_bijective",
                                         "W_correspondence", "phi_equal")})
    print("  Phi:", report["phi_sb"])

single = plane_arrangement([(0, 0.0, 1, 0.0), (1, 0.0, 1, 1.0), (2, 0.0, 1, 2.0)])
print("three coordinate planes:", single.triple_points)
print("tribracket used on the local side:", corresponding_tribracket(dihedral(3)).name)
