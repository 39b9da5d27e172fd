"""Seeded random instances that pass every validator by construction.

Spaces are min-plus closures of random complete digraphs.  Zero-weight edges
only run "downhill" in a random ranking of the points, so no zero-weight cycle
exists and the closure satisfies QM3 without repair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .preorder import (
    Instance,
    Phi,
    Preorder,
    closure_of_pairs,
    conjugate_specialization_preorder,
    repair_phi,
    repair_preorder,
    total_preorder,
)
from .qspace import INF, QSpace, as_rat, default_labels, validate_space

PREORDER_KINDS = ("total", "pairs", "reachability", "specialization-conjugate")


@dataclass(frozen=True)
class GenParams:
    n: int
    seed: int
    zero_edge_prob: Fraction = Fraction(1, 4)
    inf_phi_prob: Fraction = Fraction(0)
    preorder_kind: str = "total"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        object.__setattr__(self, "zero_edge_prob", as_rat(self.zero_edge_prob))
        object.__setattr__(self, "inf_phi_prob", as_rat(self.inf_phi_prob))
        if not 0 <= self.zero_edge_prob <= 1:
            raise ValueError("zero_edge_prob must lie in [0, 1]")
        if not 0 <= self.inf_phi_prob < 1:
            raise ValueError("inf_phi_prob must lie in [0, 1)")
        if self.preorder_kind not in PREORDER_KINDS:
            raise ValueError(f"preorder_kind must be one of {PREORDER_KINDS}")


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    ss = np.random.SeedSequence(seed % 2 ** 64)
    return tuple(np.random.default_rng(c) for c in ss.spawn(3))


def _bernoulli(rng: np.random.Generator, p: Fraction) -> bool:
    # exact comparison: draw u in [0, q) and accept when u < p*q
    return int(rng.integers(p.denominator)) < p.numerator


def _random_rat(rng: np.random.Generator, lo: int, hi: int) -> Fraction:
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, 5)))


def min_plus_closure(w: list[list[Fraction]]) -> list[list[Fraction]]:
    """All-pairs shortest paths of a complete weight matrix (Floyd-Warshall)."""
    n = len(w)
    d = [row[:] for row in w]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def gen_space(p: GenParams, rng: np.random.Generator | None = None) -> QSpace:
    if rng is None:
        rng = _streams(p.seed)[0]
    n = p.n
    rank = rng.permutation(n)
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if rank[i] > rank[j] and _bernoulli(rng, p.zero_edge_prob):
                w[i][j] = Fraction(0)
            else:
                w[i][j] = _random_rat(rng, 1, 12)
    return validate_space(min_plus_closure(w), default_labels(n))


def gen_preorder(s: QSpace, p: GenParams, rng: np.random.Generator | None = None) -> Preorder:
    """Base relation of the requested kind, closed so that (d-ord) holds."""
    if rng is None:
        rng = _streams(p.seed)[1]
    n = s.n
    kind = p.preorder_kind
    if kind == "total":
        return total_preorder(n)
    if kind == "specialization-conjugate":
        return conjugate_specialization_preorder(s)
    if kind == "pairs":
        rel = [[i == j or _bernoulli(rng, Fraction(1, 4)) for j in range(n)] for i in range(n)]
        return repair_preorder(s, rel)
    # reachability: random DAG in a random topological order
    rank = rng.permutation(n)
    edges = [(i, j) for i in range(n) for j in range(n)
             if rank[i] < rank[j] and _bernoulli(rng, Fraction(1, 3))]
    base = closure_of_pairs(n, edges)
    return repair_preorder(s, base.rel)


def gen_phi(s: QSpace, p: GenParams, rng: np.random.Generator | None = None) -> Phi:
    """Proper objective, repaired to be increasingly lsc."""
    if rng is None:
        rng = _streams(p.seed)[2]
    while True:
        raw = [INF if _bernoulli(rng, p.inf_phi_prob) else _random_rat(rng, 0, 20) for _ in range(s.n)]
        phi = Phi(tuple(raw))
        if phi.is_proper():
            return repair_phi(s, phi)


def gen_instance(p: GenParams) -> Instance:
    r_space, r_order, r_phi = _streams(p.seed)
    s = gen_space(p, r_space)
    return Instance(s, gen_preorder(s, p, r_order), gen_phi(s, p, r_phi))


def corpus_params(count: int, seed: int = 0, n_max: int = 8, t1: bool = False) -> list[GenParams]:
    """Deterministic spread of parameters; each entry gets its own derived seed."""
    children = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    zero_probs = [Fraction(0)] if t1 else [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    inf_probs = [Fraction(0), Fraction(1, 4)]
    out = []
    for i in range(count):
        out.append(GenParams(
            n=1 + i % n_max,
            seed=int(children[i]),
            zero_edge_prob=zero_probs[i % len(zero_probs)],
            inf_phi_prob=inf_probs[(i // 3) % len(inf_probs)],
            preorder_kind=PREORDER_KINDS[(i // 2) % len(PREORDER_KINDS)],
        ))
    return out


def corpus(count: int, seed: int = 0, n_max: int = 8, t1: bool = False) -> list[Instance]:
    return [gen_instance(p) for p in corpus_params(count, seed, n_max, t1)]
