"""
Picard descent to a weak Ekeland point
======================================

S(x) collects the points above x in the preorder whose objective drop pays for
the distance travelled back to x.  Picard iteration hops inside S(x) until phi
is minimal on it.
"""

from qmprinciples import Instance, Phi, picard_iterate, total_preorder, validate_space, weak_ekeland
from qmprinciples.lab import oracle_wek

s = validate_space([[0, 1, 2], [0, 0, 1], [1, 2, 0]], "abc")
inst = Instance(s, total_preorder(3), Phi.of([3, 1, 0]))
print(inst.audits)

for x in inst.points:
    print(inst.label(x), sorted(inst.label(y) for y in inst.S(x)), "J =", inst.J(x))

# from a the half-gap is (3 + 0) / 2, only c lies below it
run = picard_iterate(inst, 0)
print([inst.label(x) for x in run.points], run.termination)

# the certificate re-checks its clauses exactly before it is returned
cert = weak_ekeland(inst)
print(inst.label(cert.z), cert.ok)

# brute force lists every point that would do
print(sorted(inst.label(z) for z in oracle_wek(inst)))

# the random selection rule lands in the same set from every start
for x in inst.points:
    z = picard_iterate(inst, x, "random", seed=x).z
    print(inst.label(x), "->", inst.label(z))
