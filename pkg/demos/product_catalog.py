"""
A catalog of regularized products
==================================

Each supported sequence is evaluated by its computational routes and checked
against its closed form.  The printed agreement is the worst pairwise
agreement between routes, in decimal digits.
"""

from zetareg import Kind, PrecisionContext, SequenceSpec, regprod_eval, to_decimal

ctx = PrecisionContext(bits=256)

specs = [
    SequenceSpec(Kind.INTEGERS),
    SequenceSpec(Kind.EVEN),
    SequenceSpec(Kind.ODD),
    SequenceSpec(Kind.N2_PLUS_1),
    SequenceSpec(Kind.N2_MINUS_N_PLUS_1),
    SequenceSpec(Kind.N4_PLUS_1),
    SequenceSpec.geometric(2),
    SequenceSpec.geometric("1.5"),
    SequenceSpec(Kind.SELF_POWER),
    SequenceSpec(Kind.SQUAREFREE),
    SequenceSpec(Kind.SHIFTED_ODIOUS),
    SequenceSpec(Kind.SHIFTED_EVIL),
    SequenceSpec.lerch("0.25"),
    SequenceSpec.quadratic("0.5", "2"),
]

for spec in specs:
    r = regprod_eval(spec, ctx)
    print(f"{spec.name:<26} {to_decimal(r.value, 25):>32}  {r.route.value:<15} {r.agreement_digits:5.1f}")
