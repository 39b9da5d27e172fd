"""Picard iteration over the S-sets and the solvers built on it.

Every solver returns a certificate whose clauses are re-checked exactly before
it is handed out.  A failed re-check raises ``CertificateCheckFailed``; on a
valid instance this never happens, so it always indicates a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    CertificateCheckFailed,
    HypothesisViolated,
    InfeasibleMap,
    NotT1,
    StartOutsideDomain,
)
from .preorder import Instance, SSet, s_set
from .qspace import ExtValue, as_rat, is_t1

RULES = ("argmin", "first", "random")

CASE1 = "case1"
PREFIX_EXHAUSTED = "prefix-exhausted"


@dataclass(frozen=True)
class PicardStep:
    point: int
    s_set: frozenset[int]
    j_value: ExtValue
    phi_value: ExtValue


@dataclass(frozen=True)
class PicardRun:
    """Trace ``x_0, ..., x_m`` of one Picard iteration.

    ``termination`` is ``"case1"`` when ``phi(x_m) = J(x_m)``.  On a truncated
    instance (see ``boundary`` in :func:`picard_iterate`) reaching an artificial
    endpoint gives ``"prefix-exhausted"`` instead; such a run certifies nothing
    about the untruncated space.
    """

    start: int
    steps: tuple[PicardStep, ...]
    termination: str
    z: int

    @property
    def points(self) -> list[int]:
        return [st.point for st in self.steps]

    @property
    def m(self) -> int:
        return len(self.steps) - 1


def eligible_successors(inst: Instance, x: int) -> list[int]:
    """Points ``y`` in ``S(x)`` below the half-gap ``(phi(x) + J(x)) / 2``."""
    half_gap = (inst.phi[x] + inst.J(x)) / 2
    return sorted(y for y in inst.S(x) if inst.phi[y] < half_gap)


def _select(inst: Instance, candidates: list[int], rule: str, rng) -> int:
    if rule == "argmin":
        return min(candidates, key=lambda y: (inst.phi[y], y))
    if rule == "first":
        return candidates[0]
    if rule == "random":
        return candidates[int(rng.integers(len(candidates)))]
    raise ValueError(f"unknown selection rule {rule!r}; expected one of {RULES}")


def picard_iterate(
    inst: Instance,
    x0: int,
    rule: str = "argmin",
    seed: int | None = None,
    boundary: frozenset[int] = frozenset(),
) -> PicardRun:
    """Iterate ``x_{k+1} in S(x_k)`` with ``phi(x_{k+1}) < (phi(x_k) + J(x_k)) / 2``
    until ``phi(x_k) = J(x_k)``.

    ``phi`` strictly decreases along the run, so it stops within ``|dom phi|``
    steps.  ``boundary`` marks artificial endpoints of a truncated instance.
    """
    inst.require_audits()
    if x0 not in inst.dom:
        raise StartOutsideDomain(f"start point {x0} has phi = inf")
    if rule not in RULES:
        raise ValueError(f"unknown selection rule {rule!r}; expected one of {RULES}")
    rng = np.random.default_rng(seed)
    steps = []
    x = x0
    while True:
        st = s_set(inst, x)
        steps.append(PicardStep(x, st.members, st.j_value, inst.phi[x]))
        if x in boundary:
            return PicardRun(x0, tuple(steps), PREFIX_EXHAUSTED, x)
        if inst.phi[x] == st.j_value:
            return PicardRun(x0, tuple(steps), CASE1, x)
        x = _select(inst, eligible_successors(inst, x), rule, rng)


def endpoint_violations(inst: Instance, z: int) -> list[tuple[int, str]]:
    """Failures of ``phi(y) = phi(z) = J(z)`` and ``S(y) <= cl{y}`` over ``y in S(z)``."""
    bad = []
    if inst.phi[z] != inst.J(z):
        bad.append((z, "phi(z) != J(z)"))
    for y in sorted(inst.S(z)):
        if inst.phi[y] != inst.phi[z]:
            bad.append((y, "phi(y) != phi(z)"))
        if not inst.S(y) <= inst.closure(y):
            bad.append((y, "S(y) not inside cl{y}"))
    return bad


def trace_violations(inst: Instance, run: PicardRun) -> list[tuple[int, str]]:
    """Re-check the step invariants of a run: membership, half-gap bound, strict
    decrease, nestedness ``S(x_{k+1}) <= S(x_k)``, ``x_k <= x_{k+1}`` and the
    telescoping bound ``d(x_{n+k}, x_n) <= phi(x_n) - phi(x_{n+k})``."""
    bad = []
    pts = run.points
    for k in range(len(pts) - 1):
        a, b = pts[k], pts[k + 1]
        if b not in inst.S(a):
            bad.append((k, "x_{k+1} not in S(x_k)"))
        if not inst.phi[b] < (inst.phi[a] + inst.J(a)) / 2:
            bad.append((k, "half-gap bound"))
        if not inst.phi[b] < inst.phi[a]:
            bad.append((k, "phi not strictly decreasing"))
        if not inst.S(b) <= inst.S(a):
            bad.append((k, "S not nested"))
        if not inst.order.rel[a][b]:
            bad.append((k, "not increasing"))
    for n in range(len(pts)):
        for k in range(n + 1, len(pts)):
            if inst.space.d[pts[k]][pts[n]] > inst.phi[pts[n]] - inst.phi[pts[k]]:
                bad.append((n, f"telescoping bound to step {k}"))
    return bad


# -- weak Ekeland --------------------------------------------------------------

@dataclass(frozen=True)
class EkelandCertificate:
    z: int
    s_of_z: SSet
    phi_constant_on_Sz: bool
    Sy_in_closure_y: dict
    strict_outside: bool
    run: PicardRun | None = None

    @property
    def ok(self) -> bool:
        return self.phi_constant_on_Sz and all(self.Sy_in_closure_y.values()) and self.strict_outside


def strict_outside_holds(inst: Instance, y: int) -> bool:
    """``phi(y) < phi(x) + d(x, y)`` for all ``x`` in ``dom phi \\ S(y)`` with
    ``y <= x``, and for all ``x`` outside ``dom phi``."""
    dom = inst.dom
    Sy = inst.S(y)
    for x in inst.points:
        if x in dom and (x in Sy or not inst.order.rel[y][x]):
            continue
        if not inst.phi[y] < inst.phi[x] + inst.space.d[x][y]:
            return False
    return True


def certify_wek(inst: Instance, z: int, run: PicardRun | None = None) -> EkelandCertificate:
    Sz = s_set(inst, z)
    return EkelandCertificate(
        z=z,
        s_of_z=Sz,
        phi_constant_on_Sz=all(inst.phi[y] == inst.phi[z] for y in Sz.members),
        Sy_in_closure_y={y: inst.S(y) <= inst.closure(y) for y in sorted(Sz.members)},
        strict_outside=all(strict_outside_holds(inst, y) for y in Sz.members),
        run=run,
    )


def weak_ekeland(inst: Instance, x0: int | None = None, rule: str = "argmin", seed: int | None = None) -> EkelandCertificate:
    """A point ``z`` with ``phi`` constant on ``S(z)``, reached by Picard
    iteration from ``x0`` (default: the lowest-index point of ``dom phi``)."""
    inst.require_audits()
    if x0 is None:
        x0 = min(inst.dom)
    run = picard_iterate(inst, x0, rule, seed)
    cert = certify_wek(inst, run.z, run)
    if not cert.ok or endpoint_violations(inst, run.z):
        raise CertificateCheckFailed(f"weak Ekeland certificate failed at z={run.z}")
    return cert


# -- full Ekeland --------------------------------------------------------------

@dataclass(frozen=True)
class FullEkelandCertificate:
    z: int
    epsilon: Fraction
    lam: Fraction
    gamma: Fraction
    x0: int
    x0_subspace: frozenset[int]
    s_gamma_of_z: frozenset[int]
    clauses: tuple[bool, bool, bool, bool]
    run: PicardRun

    @property
    def ok(self) -> bool:
        return all(self.clauses)


def ekeland_subspace(inst: Instance, x0: int, gamma: Fraction) -> frozenset[int]:
    """``{x : x0 <= x and phi(x) <= phi(x0) + gamma d(x0, x)}``."""
    return frozenset(
        x for x in inst.points
        if inst.order.rel[x0][x] and inst.phi[x] <= inst.phi[x0] + gamma * inst.space.d[x0][x]
    )


def full_ekeland(inst: Instance, epsilon, lam, x0: int, rule: str = "argmin", seed: int | None = None) -> FullEkelandCertificate:
    """Ekeland point for the perturbation ``(epsilon / lam) d`` around ``x0``.

    Requires ``phi(x0) <= epsilon + min phi``.  The iteration runs on the
    subspace ``X0`` with the rescaled distance ``d_gamma = gamma d``.
    """
    inst.require_audits()
    epsilon, lam = as_rat(epsilon), as_rat(lam)
    if epsilon <= 0 or lam <= 0:
        raise ValueError("epsilon and lambda must be positive")
    bound = epsilon + inst.phi.minimum()
    if not inst.phi[x0] <= bound:
        raise HypothesisViolated(inst.phi[x0], bound)
    gamma = epsilon / lam
    scaled = inst.with_space(inst.space.scaled(gamma))
    X0 = ekeland_subspace(inst, x0, gamma)
    pts = sorted(X0)
    sub = scaled.restrict(pts)
    run_local = picard_iterate(sub, pts.index(x0), rule, seed)
    run = PicardRun(
        start=x0,
        steps=tuple(PicardStep(pts[st.point], frozenset(pts[y] for y in st.s_set), st.j_value, st.phi_value)
                    for st in run_local.steps),
        termination=run_local.termination,
        z=pts[run_local.z],
    )
    z = run.z
    d, phi = inst.space.d, inst.phi
    Sz = scaled.S(z)
    clauses = (
        phi[z] + gamma * d[z][x0] <= phi[x0],
        d[z][x0] <= lam,
        all(phi[y] == phi[z] for y in Sz),
        all(
            phi[z] < phi[x] + gamma * d[x][z]
            for x in inst.points
            if x not in inst.dom or (x not in Sz and inst.order.rel[z][x])
        ),
    )
    cert = FullEkelandCertificate(z, epsilon, lam, gamma, x0, X0, Sz, clauses, run)
    if not cert.ok or not Sz <= X0:
        raise CertificateCheckFailed(f"full Ekeland certificate failed at z={z}: {clauses}")
    return cert


# -- Takahashi -----------------------------------------------------------------

@dataclass(frozen=True)
class TakahashiReport:
    variant: str
    hypothesis_ok: bool
    violation: int | None
    minimizer: int | None
    min_attained: bool
    oracle_minimizers: frozenset[int]


def takahashi_violation(inst: Instance, variant: str = "strict") -> int | None:
    """First ``x`` in ``dom phi`` with ``phi(x) > min phi`` that has no strictly
    better point in ``S(x)`` (``strict``), no point of ``S(x)`` outside
    ``cl{x}`` (``closure``), or no point of ``S(x)`` other than ``x`` (``t1``)."""
    low = inst.phi.minimum()
    for x in sorted(inst.dom):
        if not inst.phi[x] > low:
            continue
        Sx = inst.S(x)
        if variant == "strict":
            holds = any(inst.phi[y] < inst.phi[x] for y in Sx)
        elif variant == "closure":
            holds = bool(Sx - inst.closure(x))
        elif variant == "t1":
            holds = bool(Sx - {x})
        else:
            raise ValueError(f"unknown Takahashi variant {variant!r}")
        if not holds:
            return x
    return None


def takahashi(inst: Instance, variant: str = "strict", rule: str = "argmin") -> TakahashiReport:
    """Check the Takahashi hypothesis; when it holds, exhibit a minimizer by
    Picard iteration from the lowest-index domain point."""
    inst.require_audits()
    low = inst.phi.minimum()
    minimizers = frozenset(x for x in inst.dom if inst.phi[x] == low)
    violation = takahashi_violation(inst, variant)
    minimizer = None
    if violation is None:
        minimizer = picard_iterate(inst, min(inst.dom), rule).z
        if inst.phi[minimizer] != low:
            raise CertificateCheckFailed(f"Picard endpoint {minimizer} is not a minimizer")
    return TakahashiReport(variant, violation is None, violation, minimizer, bool(minimizers), minimizers)


# -- Caristi -------------------------------------------------------------------

@dataclass(frozen=True)
class CaristiResult:
    map_kind: str
    T: tuple
    feasible: bool
    z: int
    phi_equal: bool
    in_closure: bool


def _as_map(inst: Instance, T, multi: bool) -> tuple:
    if isinstance(T, Mapping):
        T = [T[x] for x in inst.points]
    T = list(T)
    if len(T) != inst.n:
        raise ValueError("map must assign an image to every point")
    if multi:
        return tuple(frozenset(v) for v in T)
    return tuple(int(v) for v in T)


def caristi_single(inst: Instance, T: Sequence[int] | Mapping[int, int]) -> CaristiResult:
    """``z`` with ``phi(Tz) = phi(z)`` and ``Tz in cl{z}`` for a map with
    ``Tx in S(x)`` on ``dom phi``; any weak Ekeland point works."""
    inst.require_audits()
    T = _as_map(inst, T, multi=False)
    for x in sorted(inst.dom):
        if T[x] not in inst.S(x):
            raise InfeasibleMap(x)
    z = weak_ekeland(inst).z
    res = CaristiResult("single", T, True, z, inst.phi[T[z]] == inst.phi[z], T[z] in inst.closure(z))
    if not (res.phi_equal and res.in_closure):
        raise CertificateCheckFailed(f"Caristi point check failed at z={z}")
    return res


def caristi_multi(inst: Instance, T) -> CaristiResult:
    """Set-valued version: ``S(x) & T(x)`` non-empty on ``dom phi`` gives ``z``
    with ``phi(z) in phi(Tz)`` and ``Tz & cl{z}`` non-empty."""
    inst.require_audits()
    T = _as_map(inst, T, multi=True)
    for x in sorted(inst.dom):
        if not inst.S(x) & T[x]:
            raise InfeasibleMap(x)
    z = weak_ekeland(inst).z
    res = CaristiResult(
        "multi", T, True, z,
        inst.phi[z] in {inst.phi[y] for y in T[z]},
        bool(T[z] & inst.closure(z)),
    )
    if not (res.phi_equal and res.in_closure):
        raise CertificateCheckFailed(f"set-valued Caristi check failed at z={z}")
    return res


# -- T1 forms ------------------------------------------------------------------

@dataclass(frozen=True)
class T1Certificate:
    kind: str
    z: int | None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def t1_strengthen(inst: Instance, cert) -> T1Certificate:
    """Upgrade a certificate to its T1 form and re-verify it exactly.

    * weak Ekeland: ``S(z) = {z}`` and ``phi(z) < phi(x) + d(x, z)`` for every
      ``x != z`` in ``dom phi`` with ``z <= x``;
    * Takahashi: hypothesis in the form ``S(x) \\ {x}`` non-empty;
    * Caristi: ``Tz = z`` (single-valued) or ``z in Tz`` (set-valued).
    """
    if not is_t1(inst.space):
        raise NotT1("space has two distinct points at distance 0")
    if isinstance(cert, EkelandCertificate):
        z = cert.z
        checks = {
            "S(z)={z}": inst.S(z) == {z},
            "strict": all(
                inst.phi[z] < inst.phi[x] + inst.space.d[x][z]
                for x in inst.dom if x != z and inst.order.rel[z][x]
            ),
        }
        out = T1Certificate("wek", z, checks)
    elif isinstance(cert, TakahashiReport):
        t1_violation = takahashi_violation(inst, "t1")
        checks = {"hypothesis_agrees": (t1_violation is None) == cert.hypothesis_ok}
        if cert.hypothesis_ok:
            checks["minimizer"] = inst.phi[cert.minimizer] == inst.phi.minimum()
        out = T1Certificate("takahashi", cert.minimizer, checks)
    elif isinstance(cert, CaristiResult):
        z = cert.z
        if cert.map_kind == "single":
            checks = {"fixed_point": cert.T[z] == z}
        else:
            checks = {"fixed_point": z in cert.T[z]}
        out = T1Certificate("caristi-" + cert.map_kind, z, checks)
    else:
        raise TypeError(f"cannot strengthen {type(cert).__name__}")
    if not out.ok:
        raise CertificateCheckFailed(f"T1 strengthening failed: {out.checks}")
    return out
