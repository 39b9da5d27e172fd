"""Brute-force oracles, the equivalence harness and the witness space.

The oracles here recompute S-sets from the raw matrix on purpose; they must not
share code paths with the solvers they check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ConsistencyViolation, PreconditionNotMet
from .picard import (
    PREFIX_EXHAUSTED,
    caristi_single,
    picard_iterate,
    t1_strengthen,
    takahashi,
    takahashi_violation,
    weak_ekeland,
)
from .preorder import Instance, Phi, validate_preorder
from .qspace import SeqSample, as_rat, limits, subsequential_limits, validate_space


def oracle_s(inst: Instance, x: int) -> frozenset[int]:
    d, phi, rel = inst.space.d, inst.phi.values, inst.order.rel
    return frozenset(y for y in range(inst.n) if rel[x][y] and phi[y] + d[y][x] <= phi[x])


def oracle_wek(inst: Instance, checked=None) -> frozenset[int]:
    """Every ``z`` (in ``checked``, default ``dom phi``) with ``phi`` constant on ``S(z)``."""
    phi = inst.phi.values
    pts = inst.dom if checked is None else checked
    return frozenset(z for z in pts if all(phi[y] == phi[z] for y in oracle_s(inst, z)))


def caristi_points(inst: Instance, T, checked=None) -> frozenset[int]:
    """All ``z`` with ``phi(Tz) = phi(z)`` and ``d(Tz, z) = 0``."""
    phi, d = inst.phi.values, inst.space.d
    pts = inst.dom if checked is None else checked
    return frozenset(z for z in pts if phi[T[z]] == phi[z] and d[T[z]][z] == 0)


def adversarial_map(inst: Instance, checked=None) -> tuple[int, ...]:
    """``Tx = y_x``: the lowest-index minimizer of ``phi`` over the strictly
    better points of ``S(x)``.  Points without one (or outside ``checked``)
    map to themselves.  Only meaningful when weak Ekeland fails on ``checked``."""
    phi = inst.phi.values
    pts = inst.dom if checked is None else checked
    T = list(range(inst.n))
    for x in pts:
        better = [y for y in sorted(oracle_s(inst, x)) if phi[y] < phi[x]]
        if better:
            T[x] = min(better, key=lambda y: (phi[y], y))
    return tuple(T)


def feasible_maps(inst: Instance, count: int = 3, seed: int = 0) -> list[tuple[int, ...]]:
    """A small family of maps with ``Tx in S(x)``: identity, argmin over
    ``S(x)``, and ``count`` seeded random selections."""
    phi = inst.phi.values
    rng = np.random.default_rng(seed)
    sets = [sorted(oracle_s(inst, x)) for x in range(inst.n)]
    maps = [tuple(range(inst.n)), tuple(min(S, key=lambda y: (phi[y], y)) for S in sets)]
    for _ in range(count):
        maps.append(tuple(S[int(rng.integers(len(S)))] for S in sets))
    return maps


@dataclass
class EquivalenceReport:
    wEk_holds: bool
    wEk_points: frozenset[int]
    tak_negation: bool
    adversarial_T: tuple[int, ...] | None
    caristi_consistent: bool
    checked: frozenset[int]
    maps_checked: int = 0


def check_equivalences(inst: Instance, checked=None, maps: int = 3, seed: int = 0) -> EquivalenceReport:
    """Evaluate weak Ekeland, the negated Takahashi statement and Caristi on one
    instance and insist that they agree.

    ``checked`` restricts every quantifier over ``dom phi`` (used for truncated
    witnesses, whose last point is an artificial minimum).
    """
    phi = inst.phi.values
    pts = frozenset(inst.dom if checked is None else checked)
    wek_points = oracle_wek(inst, pts)
    wek_holds = bool(wek_points)
    tak_negation = bool(pts) and all(any(phi[y] < phi[x] for y in oracle_s(inst, x)) for x in pts)
    if wek_holds == tak_negation:
        raise ConsistencyViolation(f"wEk={wek_holds} but not-Tak={tak_negation}")

    adversarial = None
    n_maps = 0
    if not wek_holds:
        adversarial = adversarial_map(inst, pts)
        for x in pts:
            if adversarial[x] not in oracle_s(inst, x) or not phi[adversarial[x]] < phi[x]:
                raise ConsistencyViolation(f"adversarial map invalid at {x}")
        consistent = not caristi_points(inst, adversarial, pts)
        n_maps = 1
    else:
        consistent = True
        for T in feasible_maps(inst, maps, seed):
            n_maps += 1
            if not caristi_points(inst, T, pts):
                consistent = False
            if checked is None and inst.audits.ok:
                res = caristi_single(inst, T)
                if res.z not in caristi_points(inst, T):
                    consistent = False
    if not consistent:
        raise ConsistencyViolation("Caristi statement disagrees with weak Ekeland")
    return EquivalenceReport(wek_holds, wek_points, tak_negation, adversarial, consistent, pts, n_maps)


# -- the witness of non-completeness ------------------------------------------

@dataclass(frozen=True)
class WitnessSpace:
    """First ``N`` terms of an increasing right K-Cauchy sequence without limit.

    Points are ``x_1 .. x_N`` (indices ``0 .. N-1``) with
    ``d(x_m, x_n) = 2^-(n+1) - 2^-(m+1)`` for ``m > n``, ``d(x_n, x_m) = 1`` for
    ``n < m``, ``phi(x_n) = 2^-(n-1)`` and ``x_m <= x_n`` iff ``m <= n``.
    """

    N: int
    instance: Instance

    @property
    def points(self) -> range:
        return range(self.N)

    @property
    def last(self) -> int:
        return self.N - 1

    @property
    def checked(self) -> frozenset[int]:
        """All points but the truncation endpoint."""
        return frozenset(range(self.N - 1))

    def sequence(self) -> SeqSample:
        return SeqSample(tuple(range(self.N)))


def witness_distance(m: int, n: int) -> Fraction:
    """``d(x_m, x_n)`` for 1-based indices."""
    if m == n:
        return Fraction(0)
    if m > n:
        return Fraction(1, 2 ** (n + 1)) - Fraction(1, 2 ** (m + 1))
    return Fraction(1)


def build_witness(N: int) -> WitnessSpace:
    if N < 2:
        raise ValueError("witness needs N >= 2")
    labels = [f"x{k}" for k in range(1, N + 1)]
    space = validate_space([[witness_distance(m, n) for n in range(1, N + 1)] for m in range(1, N + 1)], labels)
    order = validate_preorder([[i <= j for j in range(N)] for i in range(N)])
    phi = Phi(tuple(Fraction(1, 2 ** (n - 1)) for n in range(1, N + 1)))
    inst = Instance(space, order, phi)
    inst.require_audits()
    return WitnessSpace(N, inst)


def log2_ceil(eps: Fraction) -> int:
    """``ceil(log2(1/eps))`` computed exactly."""
    k = 0
    while Fraction(1, 2 ** k) > eps:
        k += 1
    return k


@dataclass
class WitnessReport:
    N: int
    modulus: dict
    modulus_bounds: dict
    modulus_ok: bool
    step_bound_ok: bool
    limit_candidates: frozenset[int]
    subsequential_candidates: frozenset[int]
    strict_successors: dict
    s_tails_ok: bool
    phi_decreasing: bool
    sublevels_ok: bool
    telescoping_ok: bool
    picard_termination: str
    conclusion: str = field(default="")

    @property
    def ok(self) -> bool:
        return (
            self.modulus_ok and self.step_bound_ok and not self.limit_candidates
            and not self.subsequential_candidates and self.s_tails_ok and self.phi_decreasing
            and self.sublevels_ok and self.telescoping_ok
            and all(self.strict_successors.values())
            and self.picard_termination == PREFIX_EXHAUSTED
        )


CITED = (
    "computed on prefix: every checked point has a strictly better point in its S-set; "
    "cited, not computed: weak Ekeland fails on the full sequence space"
)


def sublevel(w: WitnessSpace, b: Fraction) -> frozenset[int]:
    phi = w.instance.phi
    return frozenset(x for x in w.points if phi[x] <= b)


def witness_modulus(w: WitnessSpace, eps) -> int | None:
    """Least 1-based ``n_eps`` with ``d(x_m, x_n) < eps`` for ``n_eps <= n < m``.

    The prefix scan is exact for the whole sequence only when the closed-form
    tail bound ``sup_m d(x_m, x_n) = 2^-(n+1) <= eps`` also holds at ``n_eps``;
    otherwise, or when no pair is left to check, ``None`` is returned.
    """
    eps = as_rat(eps)
    last_bad = 0
    for n in range(w.N):
        if any(w.instance.space.d[m][n] >= eps for m in range(n + 1, w.N)):
            last_bad = n + 1
    n_eps = last_bad + 1
    if n_eps > w.N - 1 or Fraction(1, 2 ** (n_eps + 1)) > eps:
        return None
    return n_eps


def witness_noncompleteness_report(w: WitnessSpace, thresholds=None) -> WitnessReport:
    inst = w.instance
    d, phi = inst.space.d, inst.phi
    if thresholds is None:
        thresholds = [Fraction(1, 2 ** k) for k in range(1, min(10, w.N) + 1)]
    seq = w.sequence()
    modulus = {e: witness_modulus(w, e) for e in thresholds}
    bounds = {e: log2_ceil(e) for e in thresholds}
    modulus_ok = all(modulus[e] is not None and modulus[e] <= bounds[e] for e in thresholds)
    step_bound_ok = all(d[n + 1][n] < Fraction(1, 2 ** (n + 2)) for n in range(w.N - 1))
    successors = {}
    for x in w.checked:
        Sx = inst.S(x)
        successors[x] = (x + 1) in Sx and phi[x + 1] < phi[x]
    s_tails_ok = all(inst.S(k) == frozenset(range(k, w.N)) for k in w.points)
    phi_decreasing = all(phi[k + 1] < phi[k] for k in range(w.N - 1))
    # 2^-k <= b < 2^-(k-1) (1-based k) must cut out exactly x_{k+1}, ..., x_N
    sublevels_ok = True
    for k in range(1, w.N):
        for b in (Fraction(1, 2 ** k), (Fraction(1, 2 ** k) + Fraction(1, 2 ** (k - 1))) / 2):
            sublevels_ok &= sublevel(w, b) == frozenset(range(k, w.N))
    telescoping_ok = all(
        d[m][n] + d[k][m] == d[k][n]
        for n in w.points for m in range(n + 1, w.N) for k in range(m + 1, w.N)
    )
    run = picard_iterate(inst, 0, "first", boundary=frozenset({w.last}))
    return WitnessReport(
        N=w.N,
        modulus=modulus,
        modulus_bounds=bounds,
        modulus_ok=modulus_ok,
        step_bound_ok=step_bound_ok,
        limit_candidates=limits(inst.space, seq),
        subsequential_candidates=subsequential_limits(inst.space, seq),
        strict_successors=successors,
        s_tails_ok=s_tails_ok,
        phi_decreasing=phi_decreasing,
        sublevels_ok=sublevels_ok,
        telescoping_ok=telescoping_ok,
        picard_termination=run.termination,
        conclusion=CITED,
    )


# -- metric specialization ----------------------------------------------------

def r_set(inst: Instance, x: int) -> frozenset[int]:
    """``R(x) = {y : phi(y) + d(y, x) <= phi(x)}`` (no preorder involved)."""
    d, phi = inst.space.d, inst.phi.values
    return frozenset(y for y in range(inst.n) if phi[y] + d[y][x] <= phi[x])


@dataclass
class MetricReport:
    r_equals_s: bool
    wek_R_singleton: bool
    takahashi_forms_agree: bool
    caristi_fixed_points: bool
    maps_checked: int

    @property
    def ok(self) -> bool:
        return self.r_equals_s and self.wek_R_singleton and self.takahashi_forms_agree and self.caristi_fixed_points


def metric_specialization_suite(inst: Instance, maps: int = 3, seed: int = 0) -> MetricReport:
    """Compare the metric-space forms (built on ``R(x)``) with the general solvers
    on an instance with symmetric distance and total preorder."""
    if not inst.space.is_symmetric() or not inst.order.is_total():
        raise PreconditionNotMet("needs a symmetric distance and a total preorder")
    inst.require_audits()
    r_equals_s = all(r_set(inst, x) == inst.S(x) for x in inst.points)

    cert = weak_ekeland(inst)
    wek_R_singleton = r_set(inst, cert.z) == {cert.z} and t1_strengthen(inst, cert).ok

    low = inst.phi.minimum()
    r_hyp = all(bool(r_set(inst, x) - {x}) for x in inst.dom if inst.phi[x] > low)
    tak = takahashi(inst, "strict")
    tak_ok = r_hyp == tak.hypothesis_ok == (takahashi_violation(inst, "t1") is None)
    if tak.hypothesis_ok:
        tak_ok &= inst.phi[tak.minimizer] == low

    fixed_ok = True
    n_maps = 0
    for T in feasible_maps(inst, maps, seed):
        if not all(T[x] in r_set(inst, x) for x in inst.dom):
            continue
        n_maps += 1
        res = caristi_single(inst, T)
        fixed_ok &= t1_strengthen(inst, res).ok and T[res.z] == res.z
    return MetricReport(r_equals_s, wek_R_singleton, tak_ok, fixed_ok, n_maps)
