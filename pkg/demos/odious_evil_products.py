"""
Regularized products of the odious and evil numbers
====================================================

The odious numbers (1, 2, 4, 7, 8, ...) have an odd number of ones in
binary, the evil numbers (3, 5, 6, 9, ...) an even number.  Together they
are the positive integers, so their regularized products must multiply to
sqrt(2 pi).
"""

from zetareg import PrecisionContext, regprod_evil, regprod_odious, to_decimal
from zetareg.sequences import ParityClass, nth_member

ctx = PrecisionContext(bits=256)
mp = ctx.mp

# the first few members of each class
print("odious:", [nth_member(ParityClass.ODIOUS, k) for k in range(1, 18)])
print("evil:  ", [nth_member(ParityClass.EVIL, k) for k in range(1, 18)])

odious = regprod_odious(ctx)
evil = regprod_evil(ctx)
print("prod over odious =", to_decimal(odious.value, 40), "via", odious.route.value)
print("prod over evil   =", to_decimal(evil.value, 40))

# the product of the two is the product over all positive integers
both = odious.value * evil.value
print("product          =", to_decimal(both, 40))
print("sqrt(2 pi)       =", mp.nstr(mp.sqrt(2 * mp.pi), 40))

# radius of the computed ball, in decimal digits
print("certified digits of the odious value:", int(-mp.log10(odious.value.error_radius)))
