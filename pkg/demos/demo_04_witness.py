"""
A Cauchy sequence with no limit
===============================

x_1, x_2, ... with d(x_m, x_n) = 2^-(n+1) - 2^-(m+1) for m > n and distance 1
going forward.  Backward steps shrink geometrically, yet no point is a limit.
Only a finite prefix is built; the statement about the whole sequence is
cited in the report, not computed.
"""

from fractions import Fraction

from qmprinciples.lab import build_witness, witness_modulus, witness_noncompleteness_report

w = build_witness(32)
inst = w.instance
print(inst.space.d[1][0], inst.space.d[2][1], inst.phi[0], inst.phi[5])

# least index after which all backward distances are below eps
for k in (1, 4, 10):
    eps = Fraction(1, 2 ** k)
    print(eps, witness_modulus(w, eps))

# S(x_k) is the tail of the sequence, so each point has a strictly better successor
print([len(inst.S(k)) for k in range(5)])

rep = witness_noncompleteness_report(w)
print(rep.ok, rep.picard_termination)
print(rep.conclusion)
