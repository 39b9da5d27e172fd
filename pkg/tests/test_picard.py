from fractions import Fraction

import pytest

from qmprinciples.errors import (
    AuditMissing,
    HypothesisViolated,
    InfeasibleMap,
    NotT1,
    StartOutsideDomain,
)
from qmprinciples.lab import oracle_wek
from qmprinciples.picard import (
    CASE1,
    RULES,
    caristi_multi,
    caristi_single,
    endpoint_violations,
    ekeland_subspace,
    full_ekeland,
    picard_iterate,
    t1_strengthen,
    takahashi,
    takahashi_violation,
    trace_violations,
    weak_ekeland,
)
from qmprinciples.preorder import Instance, Phi, discrete_preorder, total_preorder
from qmprinciples.qspace import INF, symmetrize

from conftest import A, B, C


def test_w3_picard_from_a(w3_inst):
    run = picard_iterate(w3_inst, A)
    assert run.points == [A, C]
    assert run.termination == CASE1
    assert trace_violations(w3_inst, run) == []
    assert endpoint_violations(w3_inst, C) == []


def test_w3_picard_already_stationary(w3_inst):
    for x in (B, C):
        run = picard_iterate(w3_inst, x)
        assert run.points == [x] and run.m == 0


def test_w3_weak_ekeland(w3_inst):
    cert = weak_ekeland(w3_inst)
    assert cert.z == C and cert.ok
    assert oracle_wek(w3_inst) == {B, C}


@pytest.mark.parametrize("rule", RULES)
def test_every_rule_every_start(w3_inst, rule):
    for x in w3_inst.dom:
        run = picard_iterate(w3_inst, x, rule, seed=1)
        assert run.m <= len(w3_inst.dom)
        assert run.z in oracle_wek(w3_inst)


def test_unknown_rule(w3_inst):
    with pytest.raises(ValueError):
        picard_iterate(w3_inst, A, "best")


def test_start_outside_domain(w3):
    inst = Instance(w3, total_preorder(3), Phi.of([INF, 1, 0]))
    with pytest.raises(StartOutsideDomain):
        picard_iterate(inst, A)
    assert weak_ekeland(inst).z in {B, C}


def test_audits_gate_solvers(w3):
    inst = Instance(w3, discrete_preorder(3), Phi.of([3, 1, 0]))
    with pytest.raises(AuditMissing):
        weak_ekeland(inst)
    with pytest.raises(AuditMissing):
        picard_iterate(inst, A)


@pytest.mark.parametrize("lam", [3, 1])
def test_w3_full_ekeland(w3_inst, lam):
    cert = full_ekeland(w3_inst, 3, lam, A)
    assert cert.z == C
    assert cert.clauses == (True, True, True, True)
    assert cert.gamma == Fraction(3, lam)


def test_full_ekeland_subspace(w3_inst):
    # gamma = 1: phi(x) <= 3 + d(a, x) holds everywhere
    assert ekeland_subspace(w3_inst, A, Fraction(1)) == {A, B, C}


def test_full_ekeland_gate(w3_inst):
    with pytest.raises(HypothesisViolated) as exc:
        full_ekeland(w3_inst, 2, 1, A)
    assert exc.value.bound == 2
    with pytest.raises(ValueError):
        full_ekeland(w3_inst, 0, 1, A)


def test_w3_takahashi_violated(w3_inst):
    # S(b) = {b} but phi(b) = 1 > 0
    assert takahashi_violation(w3_inst) == B
    rep = takahashi(w3_inst)
    assert not rep.hypothesis_ok and rep.violation == B
    assert rep.min_attained and rep.oracle_minimizers == {C}
    assert rep.minimizer is None


def test_w3_takahashi_holds(w3):
    inst = Instance(w3, total_preorder(3), Phi.of([3, 0, 0]))
    rep = takahashi(inst)
    assert rep.hypothesis_ok and rep.minimizer == B
    assert takahashi(inst, "closure").hypothesis_ok


def test_w3_caristi(w3_inst):
    res = caristi_single(w3_inst, [B, B, C])
    assert res.z == C and res.phi_equal and res.in_closure
    res = caristi_multi(w3_inst, [{B, C}, {B}, {C}])
    assert res.z == C


def test_caristi_infeasible(w3_inst):
    with pytest.raises(InfeasibleMap) as exc:
        caristi_single(w3_inst, [A, C, C])
    assert exc.value.witness == B
    with pytest.raises(InfeasibleMap):
        caristi_multi(w3_inst, [{A}, {A}, {C}])


def test_t1_requires_t1(w3_inst):
    with pytest.raises(NotT1):
        t1_strengthen(w3_inst, weak_ekeland(w3_inst))


def test_t1_forms_on_symmetrized_w3(w3):
    inst = Instance(symmetrize(w3), total_preorder(3), Phi.of([3, 1, 0]))
    cert = weak_ekeland(inst)
    t1 = t1_strengthen(inst, cert)
    assert t1.ok and inst.S(t1.z) == {t1.z}
    res = caristi_single(inst, [min(inst.S(x), key=lambda y: (inst.phi[y], y)) for x in range(3)])
    assert t1_strengthen(inst, res).checks == {"fixed_point": True}
    tak = takahashi(inst)
    assert t1_strengthen(inst, tak).ok


def test_corpus_certificates(small_corpus):
    for inst in small_corpus:
        oracle = oracle_wek(inst)
        for x in sorted(inst.dom):
            for rule in RULES:
                run = picard_iterate(inst, x, rule, seed=x)
                assert run.m <= len(inst.dom)
                assert trace_violations(inst, run) == []
                assert run.z in oracle
