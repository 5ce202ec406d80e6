"""Why 64 trapezoid nodes are enough.

phi^+ integrates alpha(s) e^s / (1 - e^s zeta q) over |s| = pi |v|.  The only
singularity inside the circle is the essential one of alpha at s = 0 and the
nearest pole of the denominator sits at distance 2 pi |v|, so the trapezoid
rule converges geometrically once it resolves the e^{x^2/s} growth.  The
table shows the pre-asymptotic plateau at a handful of nodes and then the
error dropping by orders of magnitude per doubling until rounding.
"""

import math

from maass_poincare import HalfPlanePoint, phi_plus
from maass_poincare.continuation import ContourSpec

for tau in (0.2 + 1.3j, 0.2 - 1.3j):
    p = HalfPlanePoint.from_complex(tau)
    r = math.pi * abs(p.v)
    ref = phi_plus(1, 0, -2, 1, p, ContourSpec(r, 512))
    print(f"tau = {tau}")
    for nodes in (4, 8, 16, 32, 64, 128):
        err = abs(phi_plus(1, 0, -2, 1, p, ContourSpec(r, nodes)) - ref) / abs(ref)
        print(f"  {nodes:>4} nodes: rel err {err:.1e}")
    print()
