"""
Asymmetric distances on three points
====================================

A quasi-metric drops symmetry, so d(x, y) and d(y, x) may differ and one of
them may even be zero.
"""

from qmprinciples import SeqSample, classify_cauchy, closure_of_point, conjugate, is_t1, symmetrize, validate_space

# rows are "from", columns are "to"; everything stays an exact rational
s = validate_space([[0, 1, 2], [0, 0, 1], [1, 2, 0]], "abc")
print(s.d[1][0], s.d[0][1])

# d(b, a) = 0, so b sits in the closure of a and the space is not T1
print(sorted(s.labels[y] for y in closure_of_point(s, 0)), is_t1(s))

# the conjugate swaps directions; the max of the two is a genuine metric
print(conjugate(s).d[0][1], is_t1(symmetrize(s)))

# bad matrices are rejected with the axiom that fails and a witness
try:
    validate_space([[0, 0], [0, 0]])
except ValueError as exc:
    print(exc)

# a constant sequence converges to every point at distance 0 from its term
rep = classify_cauchy(s, SeqSample((0, 0, 0, 0)))
print(rep.right_K, sorted(s.labels[x] for x in rep.converges_to))
