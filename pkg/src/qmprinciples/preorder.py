"""Preorders on a quasi-metric space, the phi-order and the sets S(x).

For a preorder ``<=`` (``rel[x][y]`` means ``x <= y``) and an objective ``phi``
with values in the rationals plus ``INF``::

    x <=_phi y   iff   phi(y) + d(y, x) <= phi(x)
    S(x)         =     {y : x <= y and x <=_phi y}
    J(x)         =     min phi(S(x))

Infinite-sequence conditions reduce to pair scans on a finite space because a
sequence converges to ``x`` exactly when ``d(x, x_n)`` is eventually ``0``:

* (d-ord):             ``d(x, y) = 0  =>  y <= x``
* increasingly lsc:    ``d(x, y) = 0  =>  phi(x) <= phi(y)``
* increasingly closed: ``y in Y and d(x, y) = 0  =>  x in Y``

Constant sequences give necessity; eventually-zero tails give sufficiency.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import networkx as nx

from .errors import AuditMissing, NotReflexive, NotTransitive, ValidationError
from .qspace import ExtValue, QSpace, as_ext, closure_of_point, format_ext, is_finite

Relation = tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class Preorder:
    rel: Relation

    @property
    def n(self) -> int:
        return len(self.rel)

    def leq(self, x: int, y: int) -> bool:
        return self.rel[x][y]

    def up(self, x: int) -> frozenset[int]:
        return frozenset(y for y in range(self.n) if self.rel[x][y])

    def is_total(self) -> bool:
        """Every pair related, so the order clause of ``S(x)`` is vacuous."""
        return all(all(row) for row in self.rel)

    def transpose(self) -> "Preorder":
        return Preorder(tuple(zip(*self.rel)))

    def restrict(self, points: Sequence[int]) -> "Preorder":
        pts = list(points)
        return Preorder(tuple(tuple(self.rel[i][j] for j in pts) for i in pts))

    def pairs(self) -> list[tuple[int, int]]:
        """Non-diagonal related pairs in row-major order."""
        return [(x, y) for x in range(self.n) for y in range(self.n) if x != y and self.rel[x][y]]


def validate_preorder(rel) -> Preorder:
    rows = tuple(tuple(bool(v) for v in r) for r in rel)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValidationError("relation matrix must be square")
    for x in range(n):
        if not rows[x][x]:
            raise NotReflexive(x)
    for x in range(n):
        for y in range(n):
            if rows[x][y]:
                for z in range(n):
                    if rows[y][z] and not rows[x][z]:
                        raise NotTransitive(x, y, z)
    return Preorder(rows)


def total_preorder(n: int) -> Preorder:
    return Preorder(tuple(tuple(True for _ in range(n)) for _ in range(n)))


def discrete_preorder(n: int) -> Preorder:
    return Preorder(tuple(tuple(i == j for j in range(n)) for i in range(n)))


def closure_of_pairs(n: int, pairs) -> Preorder:
    """Reflexive-transitive closure of a set of generating pairs."""
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(pairs)
    tc = nx.transitive_closure(g, reflexive=True)
    return Preorder(tuple(tuple(tc.has_edge(i, j) for j in range(n)) for i in range(n)))


def specialization_preorder(s: QSpace) -> Preorder:
    """``x <=_d y  iff  d(x, y) = 0``.

    This orientation generally fails (d-ord); see
    :func:`conjugate_specialization_preorder`.
    """
    return Preorder(tuple(tuple(s.d[x][y] == 0 for y in s.points) for x in s.points))


def conjugate_specialization_preorder(s: QSpace) -> Preorder:
    """``x <= y  iff  d(y, x) = 0``, the smallest preorder satisfying (d-ord)."""
    return specialization_preorder(s).transpose()


def repair_preorder(s: QSpace, rel) -> Preorder:
    """Smallest preorder containing ``rel`` that satisfies (d-ord)."""
    pairs = [(x, y) for x in s.points for y in s.points if rel[x][y]]
    pairs += [(y, x) for x in s.points for y in s.points if s.d[x][y] == 0]
    return closure_of_pairs(s.n, pairs)


def check_d_ord(s: QSpace, p: Preorder) -> tuple[bool, tuple[int, int] | None]:
    """(d-ord) on a finite space.

    On failure the witness ``(x, y)`` has ``d(x, y) = 0`` but not ``y <= x``: the
    constant sequence ``y, y, ...`` is increasing, converges to ``x`` and does
    not sit below its limit.
    """
    for x in s.points:
        for y in s.points:
            if s.d[x][y] == 0 and not p.rel[y][x]:
                return False, (x, y)
    return True, None


# -- objective ---------------------------------------------------------------

@dataclass(frozen=True)
class Phi:
    values: tuple[ExtValue, ...]

    @classmethod
    def of(cls, values) -> "Phi":
        return cls(tuple(as_ext(v) for v in values))

    def __getitem__(self, x: int) -> ExtValue:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def dom(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.values) if is_finite(v))

    def is_proper(self) -> bool:
        return any(is_finite(v) for v in self.values)

    def minimum(self) -> ExtValue:
        return min(self.values)

    def restrict(self, points: Sequence[int]) -> "Phi":
        return Phi(tuple(self.values[i] for i in points))

    def __str__(self) -> str:
        return "(" + ", ".join(format_ext(v) for v in self.values) + ")"


def is_increasingly_lsc(s: QSpace, phi: Phi) -> tuple[bool, tuple[int, int] | None]:
    for x in s.points:
        for y in s.points:
            if s.d[x][y] == 0 and phi[x] > phi[y]:
                return False, (x, y)
    return True, None


def repair_phi(s: QSpace, phi: Phi) -> Phi:
    """Replace ``phi(x)`` by the minimum of ``phi`` over ``{y : d(x, y) = 0}``."""
    return Phi(tuple(min(phi[y] for y in s.points if s.d[x][y] == 0) for x in s.points))


# -- instances ---------------------------------------------------------------

@dataclass(frozen=True)
class Audits:
    d_ord: bool
    inc_lsc: bool
    proper: bool

    @property
    def ok(self) -> bool:
        return self.d_ord and self.inc_lsc and self.proper


@dataclass(frozen=True)
class SSet:
    base: int
    members: frozenset[int]
    j_value: ExtValue


@dataclass(frozen=True)
class Instance:
    """A preordered quasi-metric space with an objective.

    The standing audits are evaluated on construction.  S-sets are computed once
    on first use and cached; the cache is never mutated afterwards.
    """

    space: QSpace
    order: Preorder
    phi: Phi
    audits: Audits = field(init=False, compare=False)

    def __post_init__(self):
        if self.order.n != self.space.n or len(self.phi) != self.space.n:
            raise ValidationError("space, preorder and phi sizes differ")
        audits = Audits(
            d_ord=check_d_ord(self.space, self.order)[0],
            inc_lsc=is_increasingly_lsc(self.space, self.phi)[0],
            proper=self.phi.is_proper(),
        )
        object.__setattr__(self, "audits", audits)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def points(self) -> range:
        return self.space.points

    @property
    def dom(self) -> frozenset[int]:
        return self.phi.dom

    def label(self, x: int) -> str:
        return self.space.labels[x]

    def require_audits(self) -> None:
        if not self.audits.ok:
            failed = [k for k in ("d_ord", "inc_lsc", "proper") if not getattr(self.audits, k)]
            raise AuditMissing(f"instance fails standing audits: {', '.join(failed)}")

    @cached_property
    def _s_sets(self) -> tuple[SSet, ...]:
        out = []
        for x in self.points:
            members = frozenset(y for y in self.points if self.order.rel[x][y] and phi_leq(self, x, y))
            out.append(SSet(x, members, min(self.phi[y] for y in members)))
        return tuple(out)

    def S(self, x: int) -> frozenset[int]:
        return self._s_sets[x].members

    def J(self, x: int) -> ExtValue:
        return self._s_sets[x].j_value

    def closure(self, x: int) -> frozenset[int]:
        return closure_of_point(self.space, x)

    def restrict(self, points: Sequence[int]) -> "Instance":
        return Instance(self.space.restrict(points), self.order.restrict(points), self.phi.restrict(points))

    def with_space(self, space: QSpace) -> "Instance":
        return Instance(space, self.order, self.phi)


def phi_leq(inst: Instance, x: int, y: int) -> bool:
    """``x <=_phi y``.  Always true when ``phi(x)`` is infinite."""
    return inst.phi[y] + inst.space.d[y][x] <= inst.phi[x]


def s_set(inst: Instance, x: int) -> SSet:
    return inst._s_sets[x]


@dataclass
class AuditReport:
    """Outcome of a family of named checks; ``failures`` maps a check name to its
    first counterexample."""

    checks: list[str]
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, name: str, witness) -> None:
        self.failures.setdefault(name, witness)


def audit_phi_order(inst: Instance) -> AuditReport:
    rep = AuditReport(["reflexive", "transitive", "antisymmetric_on_dom"])
    pts = inst.points
    leq = [[phi_leq(inst, x, y) for y in pts] for x in pts]
    for x in pts:
        if not leq[x][x]:
            rep.fail("reflexive", (x,))
    for x in pts:
        for y in pts:
            if not leq[x][y]:
                continue
            for z in pts:
                if leq[y][z] and not leq[x][z]:
                    rep.fail("transitive", (x, y, z))
    dom = inst.dom
    for x in dom:
        for y in dom:
            if x != y and leq[x][y] and leq[y][x]:
                rep.fail("antisymmetric_on_dom", (x, y))
    return rep


def is_increasingly_closed(s: QSpace, members: frozenset[int]) -> tuple[bool, tuple[int, int] | None]:
    for y in members:
        for x in s.points:
            if s.d[x][y] == 0 and x not in members:
                return False, (x, y)
    return True, None


def audit_s_properties(inst: Instance) -> AuditReport:
    """Check the five structural properties of the S-sets on every ``x`` in
    ``dom phi``.  Any failure means an invalid instance or a bug."""
    rep = AuditReport(["i", "ii", "iii", "iv", "v"])
    dom = inst.dom
    for x in sorted(dom):
        Sx = inst.S(x)
        cl = inst.closure(x)
        if x not in Sx or not Sx <= dom:
            rep.fail("i", (x,))
        for y in Sx:
            if not (inst.phi[y] <= inst.phi[x] and inst.S(y) <= Sx):
                rep.fail("ii", (x, y))
            if y not in cl and not inst.phi[y] < inst.phi[x]:
                rep.fail("iii", (x, y))
            if inst.phi[y] == inst.phi[x] and y not in cl:
                rep.fail("iii", (x, y))
        if Sx - cl and not inst.phi[x] > inst.J(x):
            rep.fail("iv", (x,))
        closed, witness = is_increasingly_closed(inst.space, Sx)
        if not closed:
            rep.fail("v", (x,) + witness)
    return rep


def standing_report(inst: Instance) -> dict:
    d_ok, d_w = check_d_ord(inst.space, inst.order)
    l_ok, l_w = is_increasingly_lsc(inst.space, inst.phi)
    return {
        "d_ord": d_ok,
        "d_ord_witness": d_w,
        "inc_lsc": l_ok,
        "inc_lsc_witness": l_w,
        "proper": inst.phi.is_proper(),
    }
