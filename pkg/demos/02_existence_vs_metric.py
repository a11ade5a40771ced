"""Metric-free existence and the witness metric.

A is a normal shape conjugated by a random complex change of basis, so it is no longer
normal for the identity metric. The identity metric then fails to be twisted
SKT. classify still decides existence from the spectrum of A and hands back a
witness metric, and a direct check confirms it.
"""
import random

from skt_lab.catalog import random_admissible
from skt_lab.liealg import build_from_data, canonical_j
from skt_lab.linalg import identity
from skt_lab.spectral import classify
from skt_lab.verdicts import verdict

J = canonical_j(6)
a, v, A, shape, params = random_admissible(random.Random(3))
print("shape", shape.name, "with", {k: str(x) for k, x in params.items()})
g = build_from_data(a, v, A)

print("identity metric:", verdict(g, J, identity(6)).flags())
rep = classify(g, J)
print("existence:      ", rep.flags())
print("witness metric:")
for row in rep.witness_metric:
    print("  ", " ".join(f"{str(x):>8s}" for x in row))
print("witness verdict:", verdict(g, J, rep.witness_metric).flags())
