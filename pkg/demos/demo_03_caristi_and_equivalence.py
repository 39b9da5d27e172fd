"""
Caristi maps and the equivalence harness
========================================

A map with Tx in S(x) always has a point z where T does not move phi and Tz
stays in the closure of z.  When no weak Ekeland point exists the harness
builds a map that moves every point strictly downhill.
"""

from qmprinciples import Instance, Phi, caristi_multi, caristi_single, total_preorder, validate_space
from qmprinciples.generate import corpus
from qmprinciples.lab import build_witness, check_equivalences

s = validate_space([[0, 1, 2], [0, 0, 1], [1, 2, 0]], "abc")
inst = Instance(s, total_preorder(3), Phi.of([3, 1, 0]))

res = caristi_single(inst, [1, 1, 2])
print(inst.label(res.z), res.phi_equal, res.in_closure)
res = caristi_multi(inst, [{1, 2}, {1}, {2}])
print(inst.label(res.z))

rep = check_equivalences(inst)
print(rep.wEk_holds, rep.tak_negation, rep.maps_checked)

# a generated corpus: every instance agrees with itself
print(sum(check_equivalences(i).wEk_holds for i in corpus(50, seed=1)), "of 50")

# on a truncated witness (ignoring its artificial last point) the principle fails
w = build_witness(6)
rep = check_equivalences(w.instance, checked=w.checked)
print(rep.wEk_holds, rep.tak_negation, rep.adversarial_T)
