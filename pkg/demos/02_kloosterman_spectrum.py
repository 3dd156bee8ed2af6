"""
Kloosterman sums, exactly
=========================

Character sums over GF(q) are computed as count vectors in Z[zeta_p]; the
float value is only a view on the exact result.
"""

import math

from involtrace.finite_field import make_field
from involtrace.kloosterman import char_counts, kloosterman_exact, spectrum

F = make_field(3, 5, [1, 1, 2, 2, 0, 1])
eta = F.root
u = 2 * eta**3 + eta

# How often each trace value occurs in a*alpha + b/alpha over nonzero alpha
print("counts for K(1, u):", char_counts(F, F.one, u).tolist())

sp = spectrum(F, u)
for t in sp.exact:
    print(f"K(1, {t}u) = {sp.exact[t]}  ~ {sp.real[t]:+.3f}")
print("Weil bound 2 sqrt(q) =", round(2 * math.sqrt(F.q), 3), "respected:", sp.within_weil())

# The sum only depends on the product a*b
a, b = eta**7, eta**11 + 1
print("K(a, b) == K(1, ab):", kloosterman_exact(F, a, b) == kloosterman_exact(F, F.one, a * b))
