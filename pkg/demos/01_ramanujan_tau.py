"""Holomorphic Poincare series as a source of cusp forms.

Weight 12 is the first weight with a nonzero cusp form, so the Poincare
series P_{12,1} must be a multiple of Delta.  Dividing its coefficients by the
first one should therefore give Ramanujan's tau(n).  In weights 4..10 and 14
there are no cusp forms at all, and the same construction has to return zero.
"""

from maass_poincare import Truncation, b_coeffs
from maass_poincare.coeffs import b_tail

trunc = Truncation(c_max=300)

b = b_coeffs(12, 1, range(1, 8), trunc=trunc)
print("n   b_{12,1}(n)/b_{12,1}(1)     tail bound")
for n, bn in enumerate(b, start=1):
    print(f"{n}   {bn / b[0]:>22.9f}   {b_tail(12, 1, n, c_max=300):.1e}")

# the Kloosterman-Bessel sum cancels the Kronecker delta exactly when there is
# nothing for the series to converge to
print()
print("kappa   b_{kappa,1}(1) at c_max = 500")
for kappa in (4, 6, 8, 10, 12, 14):
    value = b_coeffs(kappa, 1, [1], trunc=Truncation(c_max=500))[0]
    print(f"{kappa:>5}   {value: .3e}")
