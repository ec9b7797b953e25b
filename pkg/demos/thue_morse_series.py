"""
The Thue-Morse Dirichlet series g(s)
=====================================

g(s) = sum eps_n n^-s with eps_n = (-1)^(binary digit sum of n).  Far to the
right the series is summed directly (pairing 2n with 2n+1); elsewhere the
functional equation pulls values in from the right.
"""

from zetareg import PrecisionContext, g, f, Method
from zetareg.tmdirichlet import default_sigma0

ctx = PrecisionContext(bits=256)
mp = ctx.mp
print("direct region starts at Re s =", default_sigma0(ctx))

# a walk along the real axis: the value at 0 is exactly -1
for s in (20, 5, 2, 1, 0.5, 0, -1, -3.5):
    ev = g(mp.mpf(s), ctx)
    print(f"g({s:>5}) = {mp.nstr(ev.value.re.value, 25):>30}  [{ev.method.value}]")

# the shifted series f(s) = sum_{n>=0} eps_n (n+1)^-s vanishes at 0
print("f(0) =", f(0, ctx).value.re.value)

# both routes at the same point, as a consistency check
s = mp.mpc(17, 3)
direct = g(s, ctx, method=Method.DIRECT_PAIRED).value.value
feq = g(s, ctx, method=Method.FUNCTIONAL_EQUATION).value.value
print("g(17+3i) direct   =", mp.nstr(direct, 30))
print("g(17+3i) func.eq. =", mp.nstr(feq, 30))
print("difference        =", mp.nstr(abs(direct - feq), 3))
