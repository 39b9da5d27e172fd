"""
Perturbed minimizers and the Takahashi condition
================================================

The full form trades epsilon of suboptimality at the start for a point within
distance lambda that is strictly best for the perturbation (epsilon / lambda) d.
"""

from qmprinciples import HypothesisViolated, Instance, Phi, full_ekeland, takahashi, total_preorder, validate_space

s = validate_space([[0, 1, 2], [0, 0, 1], [1, 2, 0]], "abc")
inst = Instance(s, total_preorder(3), Phi.of([3, 1, 0]))

cert = full_ekeland(inst, 3, 1, 0)
print(inst.label(cert.z), cert.gamma, cert.clauses)

# phi(a) = 3 is more than 2 above the minimum, so epsilon = 2 is refused
try:
    full_ekeland(inst, 2, 1, 0)
except HypothesisViolated as exc:
    print(exc)

# b has nothing strictly better in S(b), so the hypothesis fails there
rep = takahashi(inst)
print(rep.hypothesis_ok, inst.label(rep.violation), sorted(inst.label(x) for x in rep.oracle_minimizers))

# lowering phi(b) to the minimum removes the obstruction
rep = takahashi(Instance(s, total_preorder(3), Phi.of([3, 0, 0])))
print(rep.hypothesis_ok, inst.label(rep.minimizer))
