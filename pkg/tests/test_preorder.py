from itertools import product

import pytest

from qmprinciples.errors import NotReflexive, NotTransitive
from qmprinciples.preorder import (
    Instance,
    Phi,
    audit_phi_order,
    audit_s_properties,
    check_d_ord,
    closure_of_pairs,
    conjugate_specialization_preorder,
    discrete_preorder,
    is_increasingly_closed,
    is_increasingly_lsc,
    repair_phi,
    repair_preorder,
    specialization_preorder,
    total_preorder,
    validate_preorder,
)
from qmprinciples.qspace import INF, validate_space

from conftest import A, B, C, brute_s


def test_w3_s_sets(w3_inst):
    assert w3_inst.S(A) == {A, B, C}
    assert w3_inst.S(B) == {B}
    assert w3_inst.S(C) == {C}
    assert [w3_inst.J(x) for x in range(3)] == [0, 1, 0]


def test_w3_s_sets_match_brute_force(w3_inst):
    d, rel, phi = w3_inst.space.d, w3_inst.order.rel, w3_inst.phi.values
    for x in range(3):
        assert w3_inst.S(x) == brute_s(d, rel, phi, x)


def test_w3_discrete_order(w3, w3_discrete):
    # d(b, a) = 0 forces a <= b; the discrete order lacks it
    ok, witness = check_d_ord(w3, w3_discrete)
    assert not ok and witness == (B, A)
    inst = Instance(w3, w3_discrete, Phi.of([3, 1, 0]))
    assert not inst.audits.d_ord


def test_total_and_conjugate_satisfy_d_ord(w3):
    assert check_d_ord(w3, total_preorder(3))[0]
    assert check_d_ord(w3, conjugate_specialization_preorder(w3))[0]
    # the plain specialization preorder points the wrong way
    assert not check_d_ord(w3, specialization_preorder(w3))[0]


def test_repair_preorder_is_smallest(w3, w3_discrete):
    fixed = repair_preorder(w3, w3_discrete.rel)
    assert check_d_ord(w3, fixed)[0]
    assert fixed == conjugate_specialization_preorder(w3)
    assert fixed.pairs() == [(A, B)]


def test_validate_preorder_errors():
    with pytest.raises(NotReflexive):
        validate_preorder([[False]])
    with pytest.raises(NotTransitive):
        validate_preorder([[1, 1, 0], [0, 1, 1], [0, 0, 1]])


def test_closure_of_pairs():
    p = closure_of_pairs(3, [(0, 1), (1, 2)])
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert validate_preorder(p.rel) == p


def test_increasing_lsc(w3):
    # d(b, a) = 0 demands phi(b) <= phi(a)
    assert is_increasingly_lsc(w3, Phi.of([3, 1, 0]))[0]
    ok, witness = is_increasingly_lsc(w3, Phi.of([0, 1, 0]))
    assert not ok and witness == (B, A)
    assert repair_phi(w3, Phi.of([0, 1, 0])) == Phi.of([0, 0, 0])


def test_phi_domain():
    phi = Phi.of([1, "inf", 0])
    assert phi.dom == {0, 2}
    assert phi.is_proper()
    assert not Phi.of([INF]).is_proper()


def test_phi_order_audit(w3_inst):
    assert audit_phi_order(w3_inst).ok


def test_s_properties_on_w3(w3_inst):
    assert audit_s_properties(w3_inst).ok


def test_increasingly_closed(w3):
    assert is_increasingly_closed(w3, frozenset({A, B}))[0]
    assert is_increasingly_closed(w3, frozenset({B}))[0]
    # d(b, a) = 0, so any set holding a must hold b
    ok, witness = is_increasingly_closed(w3, frozenset({A}))
    assert not ok and witness == (B, A)


def test_infinite_phi_points(w3):
    inst = Instance(w3, total_preorder(3), Phi.of([INF, 1, 0]))
    assert inst.S(A) == {A, B, C}
    assert inst.dom == {B, C}
    assert audit_s_properties(inst).ok


def test_s_sets_match_brute_force_corpus(small_corpus):
    for inst in small_corpus:
        d, rel, phi = inst.space.d, inst.order.rel, inst.phi.values
        for x in inst.points:
            assert inst.S(x) == brute_s(d, rel, phi, x)


def test_audit_catches_broken_s_property(w3):
    # discrete order violates (d-ord), which shows up as an S-set that is not
    # increasingly closed
    inst = Instance(w3, discrete_preorder(3), Phi.of([0, 0, 0]))
    rep = audit_s_properties(inst)
    assert not rep.ok
    assert "v" in rep.failures


def test_relation_exhaustive_on_two_points():
    s = validate_space([[0, 1], [0, 0]])
    for bits in product([False, True], repeat=2):
        rel = [[True, bits[0]], [bits[1], True]]
        p = validate_preorder(rel)
        assert check_d_ord(s, p)[0] == p.leq(0, 1)


def test_total_means_full_relation():
    assert total_preorder(3).is_total()
    chain = closure_of_pairs(3, [(0, 1), (1, 2)])
    assert not chain.is_total()
