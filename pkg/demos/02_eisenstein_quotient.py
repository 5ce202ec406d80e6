"""A harmonic Maass form that happens to be weakly holomorphic.

Weight 4 has no cusp forms, so the Maass-Poincare series F_{-2,-1} has no
non-holomorphic part left over: its a^- coefficients collapse to the single
value that cancels the incomplete-gamma piece of q^{-1}.  What remains is a
weakly holomorphic form of weight -2 with principal part q^{-1}, and there is
only one: E4 E6 / Delta.
"""

import cmath

from maass_poincare import Truncation, eval_maass, maass_expansion

exp = maass_expansion(-2, 1, n_max=40, trunc=Truncation(c_max=300, n_max=40))

# E4 E6 / Delta = q^-1 - 240 - 141444 q - 8529280 q^2 - 238758390 q^3 - ...
expected = {0: -240, 1: -141444, 2: -8529280, 3: -238758390}
print("n    a^+(n)                  E4E6/Delta     a^-(n)")
for n, target in expected.items():
    minus = exp.nonholo.get(n, float("nan"))
    print(f"{n}  {exp.holo[n]:>22.6f}  {target:>12}   {minus: .2e}")

# E6 vanishes at i, hence so does F_{-2,-1}; S-modularity gives the same
# conclusion from (i)^(-2) = -1
print()
print("F(i)        =", eval_maass(exp, 1j))
tau = 0.2 + 1.3j
lhs = eval_maass(exp, -1 / tau)
print("F(-1/tau) / (tau^-2 F(tau)) =", lhs / (tau ** -2 * eval_maass(exp, tau)))
print("|q| at tau  =", abs(cmath.exp(2j * cmath.pi * tau)))
