"""
Separated spaces and the symmetric case
=======================================

Without zero distances the closure of a point is the point itself, so the
certificates sharpen: S(z) = {z} and Caristi points become fixed points.  With a
symmetric distance and the full preorder S(x) needs no preorder at all.
"""

from qmprinciples import Instance, caristi_single, t1_strengthen, total_preorder, weak_ekeland
from qmprinciples.generate import GenParams, corpus, gen_phi, gen_space
from qmprinciples.lab import feasible_maps, metric_specialization_suite, r_set
from qmprinciples.qspace import symmetrize

for inst in corpus(5, seed=3, t1=True):
    cert = t1_strengthen(inst, weak_ekeland(inst))
    T = feasible_maps(inst, 1, seed=0)[-1]
    res = caristi_single(inst, T)
    print(inst.n, cert.checks, T[res.z] == res.z)

p = GenParams(6, seed=5)
s = symmetrize(gen_space(p))
inst = Instance(s, total_preorder(6), gen_phi(s, p))
print(all(r_set(inst, x) == inst.S(x) for x in inst.points))
print(metric_specialization_suite(inst))
