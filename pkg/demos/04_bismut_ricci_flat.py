"""Where Bismut-Ricci-flat metrics appear along a family.

For (f16, r*f26-f36, f26+r*f36, f16, 0, 0) a flat Bismut-Ricci metric
exists exactly when r >= 1. Existence does not mean every twisted SKT metric
is flat: at r = 1 the normalizing witness metric still has a nonzero
Bismut-Ricci form.
"""
from fractions import Fraction

from skt_lab.liealg import canonical_j
from skt_lab.notation import parse_notation
from skt_lab.spectral import classify
from skt_lab.verdicts import verdict

FAM = "(f16,r*f26-f36,f26+r*f36,f16,0,0)"
J = canonical_j(6)
for k in range(0, 9):
    r = Fraction(k, 4)
    rep = classify(parse_notation(FAM, {"r": r}), J, with_witness=False)
    print(f"r = {str(r):4s} BRF exists: {rep.bismut_ricci_flat}")

g = parse_notation(FAM, {"r": 1})
rep = classify(g, J)
vd = verdict(g, J, rep.witness_metric)
print("\nr = 1, witness metric: BRF =", vd.bismut_ricci_flat, " rho^B =", vd.ricci)
