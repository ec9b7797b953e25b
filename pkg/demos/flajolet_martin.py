"""
Q and the Flajolet-Martin constant
===================================

Q = prod ((2n)/(2n+1))^eps_n converges very slowly.  Here it is computed
from g'(0) (fast, certified) and compared with the paired partial product
(slow, heuristic) at growing N.
"""

import time

from zetareg import PrecisionContext, fm_phi, q_constant, to_decimal
from zetareg.oracles import phi_product_oracle, q_product_oracle

ctx = PrecisionContext(bits=256)

t0 = time.perf_counter()
q = q_constant(ctx)
phi = fm_phi(ctx)
print(f"Q   = {to_decimal(q, 50)}   ({time.perf_counter() - t0:.2f} s)")
print(f"phi = {to_decimal(phi, 50)}")

# the partial products creep towards these values
for n in (10**3, 10**4, 10**5, 10**6, 10**7):
    est = q_product_oracle(n, ctx)
    gap = abs(float(est.value.value - q.value))
    print(f"N = {n:>8}: Q ~ {float(est.value.value):.12f}  gap {gap:.1e}  estimate {est.error_estimate:.1e}")

est = phi_product_oracle(10**7, ctx)
print("phi from the defining product, N = 10^7:", f"{float(est.value.value):.10f}")
