"""Shadow biquandles and the tribrackets they induce.

A dihedral quandle acting on itself is the simplest strongly connected
example.  Its induced tribracket is x - y + z; an Alexander quandle gives a
different linear formula, and a non-quandle biquandle still works.
"""
import numpy as np

from tknots import alexander, alexander_biquandle, corresponding_tribracket, dihedral
from tknots.algebra import check_biquandle, searrow_identity_violations

d3 = dihedral(3)
print("dihedral(3) under table (a *_ b):")
print(d3.biquandle.under)
print("strongly connected:", d3.strongly_connected)

t = corresponding_tribracket(d3)
x, y, z = np.meshgrid(*(np.arange(3),) * 3, indexing="ij")
print("tribracket equals x - y + z:", np.array_equal(t.table, (x - y + z) % 3))

a5 = alexander(5, [-2, 1])  # Z_5[t]/(t - 2)
x, y, z = np.meshgrid(*(np.arange(5),) * 3, indexing="ij")
print("alexander(5, t-2) gives -2x + 2y + z:",
      np.array_equal(corresponding_tribracket(a5).table, (-2 * x + 2 * y + z) % 5))

bq = alexander_biquandle(7, 2)
print(bq.name, "is a quandle:", bq.biquandle.is_quandle)
print("searrow identities hold:", searrow_identity_violations(bq).passed)

# changing a single entry breaks bijectivity
bad = d3.biquandle.under.copy()
bad[0, 1] = 0
report = check_biquandle(bad, d3.biquandle.over)
print("mutated table rejected:", not report.passed, report.violations[0][0])
