"""Walk the one-parameter family l1 through check and sweep.

For p = 1 the structure is LCSKT but not SKT, and the closed 1-form alpha
solving dH = alpha ^ H is a multiple of f6. A sweep then shows that SKT holds
only at p = 0 and p = -1/2.
"""
from fractions import Fraction

from skt_lab.liealg import canonical_j
from skt_lab.linalg import identity
from skt_lab.notation import emit_report, parse_notation
from skt_lab.verdicts import verdict

L1 = "(f16,p*f26,p*f36,p*f46,p*f56,0)"
J, G = canonical_j(6), identity(6)

g = parse_notation(L1, {"p": 1})
vd = verdict(g, J, G)
print("p = 1")
print(emit_report(vd, "markdown", name="l1", notation=L1))
print("alpha space:", vd.alpha_space)

print("\nSKT along p in [-1, 1] with step 1/8:")
hits = []
for k in range(-8, 9):
    p = Fraction(k, 8)
    if verdict(parse_notation(L1, {"p": p}), J, G).skt:
        hits.append(str(p))
print("SKT at p =", ", ".join(hits))
