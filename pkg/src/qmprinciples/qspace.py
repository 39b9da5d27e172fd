"""Finite quasi-metric spaces over exact rationals.

A space is an ``n x n`` matrix ``d`` with ``d[i][j]`` the distance *from* ``i``
*to* ``j``.  Convergence ``x_n -> x`` means ``d(x, x_n) -> 0`` and the closure
of a point is ``cl{x} = {y : d(y, x) = 0}``.

Finite values are ``fractions.Fraction``; ``INF`` (``math.inf``) is the only
non-rational value allowed anywhere and only stands for ``+infinity`` in
objective values.  ``Fraction`` already absorbs ``INF`` under ``+`` and compares
totally against it, so no wrapper type is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    AxiomViolation,
    EmptySequence,
    NegativeEntryError,
    NonSquareError,
    NotRightKCauchy,
    ValidationError,
)

INF = math.inf
ExtValue = Union[Fraction, float]
Rat = Fraction


def as_rat(value) -> Fraction:
    """Coerce ``int``, ``Fraction`` or a ``"p/q"`` string to ``Fraction``.

    Floats are rejected: a binary float silently turns an exact certificate
    into an approximate one.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def as_ext(value) -> ExtValue:
    """Like :func:`as_rat` but also accepts ``INF`` / ``"inf"``."""
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TypeError(f"only +inf is allowed as a float, got {value!r}")
    if isinstance(value, str) and value.strip() == "inf":
        return INF
    return as_rat(value)


def is_finite(value: ExtValue) -> bool:
    return value != INF


def format_ext(value: ExtValue) -> str:
    return "inf" if value == INF else str(value)


@dataclass(frozen=True)
class QSpace:
    """Validated finite quasi-metric space.

    Build with :func:`validate_space`; the constructor itself does not check the
    axioms.  Instances are immutable.
    """

    d: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def points(self) -> range:
        return range(len(self.d))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def dist(self, i: int, j: int) -> Fraction:
        return self.d[i][j]

    def is_symmetric(self) -> bool:
        return all(self.d[i][j] == self.d[j][i] for i in self.points for j in range(i))

    def min_positive(self) -> Fraction:
        """Smallest strictly positive distance (1 if there is none)."""
        positive = [v for row in self.d for v in row if v > 0]
        return min(positive) if positive else Fraction(1)

    def scaled(self, gamma: Fraction) -> "QSpace":
        gamma = as_rat(gamma)
        if gamma <= 0:
            raise ValueError("scale factor must be positive")
        return QSpace(tuple(tuple(gamma * v for v in row) for row in self.d), self.labels)

    def restrict(self, points: Sequence[int]) -> "QSpace":
        """Subspace on ``points`` (in the given order)."""
        pts = list(points)
        return QSpace(
            tuple(tuple(self.d[i][j] for j in pts) for i in pts),
            tuple(self.labels[i] for i in pts),
        )


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i}" for i in range(n))


def validate_space(matrix, labels: Sequence[str] | None = None) -> QSpace:
    """Check QM1-QM3 exactly and return a :class:`QSpace`.

    Axioms are checked in order QM1, QM2, QM3 and the first failure is raised
    with a witness pair or triple.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquareError(f"expected a square matrix, got row lengths {[len(r) for r in rows]}")
    d = tuple(tuple(as_rat(v) for v in r) for r in rows)
    if labels is None:
        labels = default_labels(n)
    labels = tuple(labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ValidationError("labels must be unique and match the matrix size")

    for i in range(n):
        for j in range(n):
            if d[i][j] < 0:
                raise NegativeEntryError((i, j))
    for i in range(n):
        if d[i][i] != 0:
            raise AxiomViolation("QM1", (i, i), f"QM1 violated: d({i},{i}) = {d[i][i]} != 0")
    # integer copy over a common denominator: exact, and much cheaper to add
    scale = math.lcm(*(v.denominator for r in d for v in r)) if n else 1
    w = [[v.numerator * (scale // v.denominator) for v in r] for r in d]
    for i in range(n):
        wi = w[i]
        for j in range(n):
            wij, wj = wi[j], w[j]
            for k in range(n):
                if wi[k] > wij + wj[k]:
                    raise AxiomViolation(
                        "QM2", (i, j, k),
                        f"QM2 violated: d({i},{k}) > d({i},{j}) + d({j},{k})",
                    )
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] == 0 and d[j][i] == 0:
                raise AxiomViolation("QM3", (i, j), f"QM3 violated: points {i} and {j} at mutual distance 0")
    return QSpace(d, labels)


def conjugate(s: QSpace) -> QSpace:
    """The conjugate quasi-metric ``(x, y) -> d(y, x)``."""
    return QSpace(tuple(zip(*s.d)), s.labels)


def symmetrize(s: QSpace) -> QSpace:
    """The metric ``max(d(x, y), d(y, x))``."""
    return QSpace(
        tuple(tuple(max(s.d[i][j], s.d[j][i]) for j in s.points) for i in s.points),
        s.labels,
    )


def closure_of_point(s: QSpace, x: int) -> frozenset[int]:
    return frozenset(y for y in s.points if s.d[y][x] == 0)


def is_t1(s: QSpace) -> bool:
    return all(s.d[i][j] > 0 for i in s.points for j in s.points if i != j)


# -- sequences ----------------------------------------------------------------

@dataclass(frozen=True)
class SeqSample:
    """A finite prefix ``x_1, ..., x_L`` of a sequence of point indices.

    ``period`` is the optional tail rule: when set, the last ``period`` terms
    repeat forever and verdicts are exact.  Without it every verdict is a
    statement about the prefix only, judged on the window made of its second
    half (indices ``ceil(L/2) .. L``, 1-based).
    """

    terms: tuple[int, ...]
    period: int | None = None

    def __post_init__(self):
        if not self.terms:
            raise EmptySequence("a sequence sample needs at least one term")
        if self.period is not None and not 1 <= self.period <= len(self.terms):
            raise ValueError("period must lie in 1..len(terms)")

    @property
    def window_start(self) -> int:
        """First 1-based index of the window in which tails are judged."""
        L = len(self.terms)
        if self.period is not None:
            return L - self.period + 1
        return (L + 1) // 2

    def _extended(self) -> list[int]:
        if self.period is None:
            return list(self.terms)
        cycle = list(self.terms[-self.period:])
        return list(self.terms) + cycle + cycle

    def _cycle(self) -> list[int]:
        return list(self.terms[-self.period:]) if self.period else []


@dataclass(frozen=True)
class CauchyReport:
    """``*_modulus`` maps each threshold to its least 1-based ``n_eps`` (``None``
    when no admissible index exists on the prefix)."""

    left_K: bool
    right_K: bool
    left_modulus: dict
    right_modulus: dict
    converges_to: frozenset[int]
    on_prefix: bool


def _least_index(s: QSpace, seq: list[int], eps: Fraction, right: bool) -> int:
    last_bad = 0
    for n in range(len(seq)):
        for m in range(n + 1, len(seq)):
            v = s.d[seq[m]][seq[n]] if right else s.d[seq[n]][seq[m]]
            if v >= eps:
                last_bad = n + 1
                break
    return last_bad + 1


def cauchy_modulus(s: QSpace, seq: SeqSample, eps, right: bool = True) -> int | None:
    """Least ``n_eps`` with ``d(x_m, x_n) < eps`` (right) or ``d(x_n, x_m) < eps``
    (left) for all ``n_eps <= n < m``, or ``None`` if it falls outside the window."""
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("thresholds must be positive")
    n_eps = _least_index(s, seq._extended(), eps, right)
    bound = len(seq.terms) if seq.period is not None else seq.window_start
    return n_eps if n_eps <= bound else None


def limits(s: QSpace, seq: SeqSample) -> frozenset[int]:
    """Points ``x`` with ``d(x, x_n) = 0`` throughout the tail."""
    tail = seq._cycle() or list(seq.terms[seq.window_start - 1:])
    return frozenset(x for x in s.points if all(s.d[x][t] == 0 for t in tail))


def subsequential_limits(s: QSpace, seq: SeqSample) -> frozenset[int]:
    """Limits of subsequences that are cofinal in the sample.

    With a tail rule these are the points at distance 0 to some cycle term.
    Without one a subsequence must end at the last term and have at least two
    terms inside the window.
    """
    if seq.period is not None:
        cycle = seq._cycle()
        return frozenset(x for x in s.points if any(s.d[x][c] == 0 for c in cycle))
    terms = seq.terms
    w = seq.window_start - 1
    inner = terms[w:-1]
    return frozenset(
        x for x in s.points
        if s.d[x][terms[-1]] == 0 and any(s.d[x][t] == 0 for t in inner)
    )


def classify_cauchy(s: QSpace, seq: SeqSample, thresholds: Iterable = ()) -> CauchyReport:
    """Left/right K-Cauchy verdicts for each threshold.

    With no thresholds the smallest positive distance of the space is used,
    which decides the property for every ``eps > 0`` at once.
    """
    eps_list = [as_rat(e) for e in thresholds] or [s.min_positive()]
    left = {e: cauchy_modulus(s, seq, e, right=False) for e in eps_list}
    right = {e: cauchy_modulus(s, seq, e, right=True) for e in eps_list}
    return CauchyReport(
        left_K=all(v is not None for v in left.values()),
        right_K=all(v is not None for v in right.values()),
        left_modulus=left,
        right_modulus=right,
        converges_to=limits(s, seq),
        on_prefix=seq.period is None,
    )


def subsequence_limit_check(s: QSpace, seq: SeqSample, thresholds: Iterable = ()) -> bool:
    """For a right K-Cauchy sample: every subsequential limit is a limit of the
    whole sequence."""
    if not classify_cauchy(s, seq, thresholds).right_K:
        raise NotRightKCauchy("sequence is not right K-Cauchy on the sample")
    return subsequential_limits(s, seq) <= limits(s, seq)
