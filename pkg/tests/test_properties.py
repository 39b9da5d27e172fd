from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from qmprinciples.fileformat import dumps, loads
from qmprinciples.generate import PREORDER_KINDS, GenParams, gen_instance
from qmprinciples.lab import check_equivalences, oracle_wek
from qmprinciples.picard import RULES, endpoint_violations, picard_iterate, trace_violations
from qmprinciples.preorder import audit_phi_order, audit_s_properties
from qmprinciples.qspace import conjugate

from conftest import broken_axioms

params = st.builds(
    GenParams,
    n=st.integers(1, 7),
    seed=st.integers(0, 2 ** 32),
    zero_edge_prob=st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(2, 3), Fraction(1)]),
    inf_phi_prob=st.sampled_from([Fraction(0), Fraction(1, 2)]),
    preorder_kind=st.sampled_from(PREORDER_KINDS),
)


@settings(max_examples=150, deadline=None)
@given(params)
def test_generated_instances_are_valid(p):
    inst = gen_instance(p)
    assert broken_axioms(inst.space.d) == set()
    assert broken_axioms(conjugate(inst.space).d) == set()
    assert inst.audits.ok
    assert audit_phi_order(inst).ok
    assert audit_s_properties(inst).ok


@settings(max_examples=150, deadline=None)
@given(params, st.sampled_from(RULES), st.integers(0, 1000))
def test_picard_lands_in_oracle(p, rule, seed):
    inst = gen_instance(p)
    x0 = sorted(inst.dom)[seed % len(inst.dom)]
    run = picard_iterate(inst, x0, rule, seed)
    assert run.m <= len(inst.dom)
    assert trace_violations(inst, run) == []
    assert endpoint_violations(inst, run.z) == []
    assert run.z in oracle_wek(inst)


@settings(max_examples=100, deadline=None)
@given(params)
def test_equivalence_holds(p):
    rep = check_equivalences(gen_instance(p))
    assert rep.wEk_holds and not rep.tak_negation


@settings(max_examples=150, deadline=None)
@given(params)
def test_file_roundtrip(p):
    inst = gen_instance(p)
    text = dumps(inst)
    assert loads(text) == inst
    assert dumps(loads(text)) == text
