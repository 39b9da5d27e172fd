from fractions import Fraction
from itertools import product

import pytest

from qmprinciples.errors import (
    AxiomViolation,
    EmptySequence,
    NegativeEntryError,
    NonSquareError,
    NotRightKCauchy,
)
from qmprinciples.generate import corpus
from qmprinciples.qspace import (
    INF,
    SeqSample,
    as_ext,
    as_rat,
    classify_cauchy,
    closure_of_point,
    conjugate,
    is_t1,
    subsequence_limit_check,
    symmetrize,
    validate_space,
)
from qmprinciples.lab import build_witness

from conftest import A, B, C, W3_MATRIX, broken_axioms


def test_w3_is_valid_by_exhaustive_triangle_scan(w3):
    assert broken_axioms(W3_MATRIX) == set()
    assert w3.n == 3
    assert w3.d[B][A] == 0


def test_zero_pair_fails_qm3():
    with pytest.raises(AxiomViolation) as exc:
        validate_space([[0, 0], [0, 0]])
    assert exc.value.axiom == "QM3"
    assert exc.value.witness == (0, 1)


def test_singleton_is_valid():
    s = validate_space([[0]])
    assert s.n == 1 and is_t1(s)


def test_non_square_rejected():
    with pytest.raises(NonSquareError):
        validate_space([[0, 1], [1]])


def test_negative_entry_rejected_as_qm1():
    with pytest.raises(NegativeEntryError) as exc:
        validate_space([[0, -1], [1, 0]])
    assert exc.value.axiom == "QM1"


@pytest.mark.parametrize("matrix, axiom", [
    ([[1, 1], [1, 0]], "QM1"),
    ([[0, 5, 1], [1, 0, 1], [1, 1, 0]], "QM2"),
])
def test_named_axiom(matrix, axiom):
    assert broken_axioms(matrix) == {axiom}
    with pytest.raises(AxiomViolation) as exc:
        validate_space(matrix)
    assert exc.value.axiom == axiom


def test_floats_rejected():
    with pytest.raises(TypeError):
        validate_space([[0, 0.5], [1, 0]])
    with pytest.raises(TypeError):
        as_rat(0.5)
    assert as_ext("inf") == INF
    assert as_rat("6/4") == Fraction(3, 2)


def test_conjugate(w3):
    cj = conjugate(w3)
    assert cj.d[A][B] == 0
    assert conjugate(cj) == w3
    sym = symmetrize(w3)
    assert conjugate(sym) == sym


def test_symmetrize(w3):
    sym = symmetrize(w3)
    assert sym.d[A][B] == 1
    assert symmetrize(sym) == sym
    assert all(sym.d[i][j] > 0 for i, j in product(range(3), repeat=2) if i != j)
    assert broken_axioms(sym.d) == set()


def test_closures(w3):
    assert closure_of_point(w3, A) == {A, B}
    assert closure_of_point(w3, B) == {B}
    assert closure_of_point(w3, C) == {C}
    sym = symmetrize(w3)
    assert all(closure_of_point(sym, x) == {x} for x in range(3))


def test_t1(w3):
    assert not is_t1(w3)
    assert is_t1(symmetrize(w3))


def test_cauchy_constant_sequence(w3):
    rep = classify_cauchy(w3, SeqSample((A, A, A, A)))
    assert rep.left_K and rep.right_K
    assert A in rep.converges_to
    assert rep.converges_to == {A, B}


def test_cauchy_alternating_fails(w3):
    rep = classify_cauchy(w3, SeqSample((A, B) * 4), [Fraction(1, 2)])
    assert not rep.right_K
    assert rep.right_modulus[Fraction(1, 2)] is None


def test_cauchy_witness_prefix():
    w = build_witness(8)
    # independent check of the least index: scan pairs directly
    d = w.instance.space.d
    eps = Fraction(1, 4)
    least = min(n for n in range(1, 9)
                if all(d[m - 1][k - 1] < eps for k in range(n, 9) for m in range(k + 1, 9)))
    rep = classify_cauchy(w.instance.space, w.sequence(), [eps])
    assert rep.right_K
    assert rep.right_modulus[eps] == least == 1
    assert rep.converges_to == frozenset()


def test_periodic_tail_is_exact(w3):
    # a, then b forever: backward distances d(b, a) = d(b, b) = 0 from the start,
    # forward d(a, b) = 1 is only cleared once the prefix is passed
    seq = SeqSample((A, B, B), period=1)
    rep = classify_cauchy(w3, seq)
    assert rep.right_K and rep.left_K
    assert rep.right_modulus[Fraction(1)] == 1
    assert rep.left_modulus[Fraction(1)] == 2
    assert rep.converges_to == {B}
    assert not rep.on_prefix
    # alternating tail is never Cauchy at any scale below 1
    alt = SeqSample((A, B), period=2)
    assert not classify_cauchy(w3, alt).right_K


def test_empty_sequence():
    with pytest.raises(EmptySequence):
        SeqSample(())


def test_subsequence_limit_check(w3):
    assert subsequence_limit_check(w3, SeqSample((A, A, A)))
    w = build_witness(8)
    assert subsequence_limit_check(w.instance.space, w.sequence(), [Fraction(1, 4)])
    with pytest.raises(NotRightKCauchy):
        subsequence_limit_check(w3, SeqSample((A, B) * 3))


def test_subsequence_limit_check_exhaustive():
    for inst in corpus(40, seed=3, n_max=4):
        s = inst.space
        for L in range(1, 5):
            for terms in product(range(s.n), repeat=L):
                seq = SeqSample(terms)
                if classify_cauchy(s, seq).right_K:
                    assert subsequence_limit_check(s, seq)


def test_left_iff_right_in_conjugate(small_corpus):
    for inst in small_corpus[:60]:
        s, cj = inst.space, conjugate(inst.space)
        for terms in product(range(s.n), repeat=min(3, s.n)):
            seq = SeqSample(terms)
            assert classify_cauchy(s, seq).left_K == classify_cauchy(cj, seq).right_K
