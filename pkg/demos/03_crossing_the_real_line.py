"""One expression, two half-planes.

H = H^+ + H^- is built from contour integrals whose integrands are rational
in e^s q, so it can be evaluated at Im tau < 0 without changing a line of
code.  Above the real line it reproduces F_{-m}; below it, it reproduces a
combination of Eichler integrals of weight-(2-k) Poincare series evaluated at
-tau.  k = -10 is used because weight 12 has a cusp form, so both Eichler
integrals are nonzero and each half of H can be compared separately.

The polylogarithm inside phi^- has order 1 - k = 11, i.e. a pole of order 12
just outside the contour, which inflates the trapezoid aliasing error.  The
default 64 nodes leave a plateau near 1e-7 here, so this script uses 128.
"""

from maass_poincare import H_minus, H_plus, HalfPlanePoint, Truncation, eval_maass, maass_expansion
from maass_poincare.forms import theorem_rhs_parts

k, m = -10, 1
ref = Truncation(c_max=300, n_max=40)
exp = maass_expansion(k, m, trunc=ref)

for tau in (0.3 + 1.0j, 0.3 - 1.0j):
    p = HalfPlanePoint.from_complex(tau)
    print(f"tau = {tau}  ({p.plane} half-plane)")
    for c_max in (2, 4, 8, 16, 30):
        t = Truncation(c_max=c_max, contour_nodes=128)
        hp, hm = H_plus(k, m, 1, p, t), H_minus(k, m, 1, p, t)
        if p.plane == "upper":
            target = eval_maass(exp, p)
            err = abs(hp + hm - target) / (1 + abs(target))
            print(f"  c_max {c_max:>2}: |H - F| / (1 + |F|) = {err:.2e}")
        else:
            hol, star = theorem_rhs_parts(k, m, 1, p, 40, ref)
            print(f"  c_max {c_max:>2}: H^+ vs holomorphic Eichler {abs(hp - hol) / abs(hol):.2e}, "
                  f"H^- vs non-holomorphic Eichler {abs(hm - star) / abs(star):.2e}")
    print()
