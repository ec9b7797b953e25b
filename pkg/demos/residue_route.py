"""
When the zeta function has a pole at 0
=======================================

For the geometric sequence a^n the associated zeta function is
1/(1 - a^-s), which has a simple pole at s = 0.  The regularized product is
then read off the s^1 coefficient of the Laurent expansion.
"""

from zetareg import ApproxReal, PrecisionContext
from zetareg.regprod import LaurentSeries, residue_regprod

ctx = PrecisionContext(bits=256)
mp = ctx.mp
a = 2
L = ApproxReal(mp.log(a), ctx.ulp(mp.log(a)))

# 1 - exp(-L s) = L s - (L s)^2/2 + ... ; divide out s, invert, shift back
order = 4
one = LaurentSeries.constant(ApproxReal.exact(1, ctx), order)
denom = one - LaurentSeries.exp_linear(-L, order + 1)
reduced = LaurentSeries(0, denom.coefficients[1:], denom.truncation_order - 1)
zeta = reduced.inverse().shifted(-1)

for k in range(-1, 3):
    print(f"coefficient of s^{k:>2}: {mp.nstr(zeta.coefficient(k).value, 30)}")

r = residue_regprod(zeta, ctx)
print("regularized product:", mp.nstr(r.value.value, 30))
print("a^(-1/12)          :", mp.nstr(mp.mpf(a) ** (-mp.one / 12), 30))
