"""Canonical text format for instances and maps.

::

    qmprinciples-instance 1
    points: a b c
    metric: matrix
      0 1 2
      0 0 1
      1 2 0
    preorder: total
    phi: 3 1 0

``metric`` is ``matrix`` (n rows of n rationals) or ``digraph`` (lines
``src dst weight``; the metric is the shortest-path closure).  ``preorder`` is
``total``, ``specialization-conjugate`` (no payload), ``pairs`` (lines ``x y``
listing every non-diagonal ``x <= y``; must already be a preorder) or
``reachability`` (lines ``x y`` whose reflexive-transitive closure is taken).
An optional ``witness: N`` line marks a truncated witness space.  Rationals are
written in lowest terms as ``p`` or ``p/q``; ``inf`` is allowed in ``phi`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError, VersionUnsupported
from .generate import min_plus_closure
from .preorder import (
    Instance,
    Phi,
    closure_of_pairs,
    conjugate_specialization_preorder,
    total_preorder,
    validate_preorder,
)
from .qspace import ExtValue, INF, format_ext, validate_space

MAGIC = "qmprinciples-instance"
MAP_MAGIC = "qmprinciples-map"
VERSION = 1
METRIC_KINDS = ("matrix", "digraph")
PREORDER_KINDS = ("total", "pairs", "reachability", "specialization-conjugate")
FIELDS = ("points", "metric", "preorder", "phi", "witness")


@dataclass(frozen=True)
class InstanceFile:
    points: tuple[str, ...]
    metric_kind: str
    metric_payload: tuple
    preorder_kind: str
    preorder_payload: tuple[tuple[str, str], ...]
    phi: tuple[ExtValue, ...]
    witness: int | None = None
    version: int = VERSION


def _rat(tok: str, line: int, allow_inf: bool = False) -> ExtValue:
    if allow_inf and tok == "inf":
        return INF
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(line, f"malformed rational {tok!r}") from None
    if "." in tok or "e" in tok.lower():
        raise ParseError(line, f"rationals must be written as p or p/q, got {tok!r}")
    return v


def parse(text: str) -> InstanceFile:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise ParseError(1, f"expected header '{MAGIC} <version>'")
    if head[1] != str(VERSION):
        raise VersionUnsupported(1, head[1])

    blocks: dict[str, tuple[int, str, list[tuple[int, str]]]] = {}
    current = None
    for no, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        if raw.startswith(" "):
            if current is None:
                raise ParseError(no, "payload line outside a field")
            blocks[current][2].append((no, raw.strip()))
            continue
        key, sep, value = raw.partition(":")
        if not sep:
            raise ParseError(no, f"expected 'name: value', got {raw!r}")
        key = key.strip()
        if key not in FIELDS:
            raise ParseError(no, f"unknown field {key!r}")
        if key in blocks:
            raise ParseError(no, f"duplicate field {key!r}")
        blocks[key] = (no, value.strip(), [])
        current = key
    for key in ("points", "metric", "preorder", "phi"):
        if key not in blocks:
            raise ParseError(len(lines), f"missing field {key!r}")

    no, value, payload = blocks["points"]
    points = tuple(value.split())
    if not points or len(set(points)) != len(points):
        raise ParseError(no, "points must be non-empty and unique")
    if payload:
        raise ParseError(payload[0][0], "points takes no payload")
    index = {p: i for i, p in enumerate(points)}
    n = len(points)

    def label(tok: str, line: int) -> str:
        if tok not in index:
            raise ParseError(line, f"unknown point {tok!r}")
        return tok

    no, kind, payload = blocks["metric"]
    if kind == "matrix":
        if len(payload) != n:
            raise ParseError(no, f"matrix needs {n} rows, got {len(payload)}")
        rows = []
        for ln, row in payload:
            toks = row.split()
            if len(toks) != n:
                raise ParseError(ln, f"matrix row needs {n} entries")
            rows.append(tuple(_rat(t, ln) for t in toks))
        metric_payload = tuple(rows)
    elif kind == "digraph":
        edges = []
        for ln, row in payload:
            toks = row.split()
            if len(toks) != 3:
                raise ParseError(ln, "digraph lines are 'src dst weight'")
            edges.append((label(toks[0], ln), label(toks[1], ln), _rat(toks[2], ln)))
        metric_payload = tuple(edges)
    else:
        raise ParseError(no, f"metric kind must be one of {METRIC_KINDS}")

    no, kind, payload = blocks["preorder"]
    if kind not in PREORDER_KINDS:
        raise ParseError(no, f"preorder kind must be one of {PREORDER_KINDS}")
    pairs = []
    for ln, row in payload:
        toks = row.split()
        if len(toks) != 2:
            raise ParseError(ln, "preorder lines are 'x y'")
        pairs.append((label(toks[0], ln), label(toks[1], ln)))
    if pairs and kind in ("total", "specialization-conjugate"):
        raise ParseError(payload[0][0], f"preorder kind {kind!r} takes no payload")

    no, value, payload = blocks["phi"]
    if payload:
        raise ParseError(payload[0][0], "phi takes no payload")
    phi = tuple(_rat(t, no, allow_inf=True) for t in value.split())
    if len(phi) != n:
        raise ParseError(no, f"phi needs {n} values, got {len(phi)}")

    witness = None
    if "witness" in blocks:
        no, value, payload = blocks["witness"]
        if not value.isdigit() or payload:
            raise ParseError(no, "witness takes a single positive integer")
        witness = int(value)

    return InstanceFile(points, blocks["metric"][1], metric_payload, kind, tuple(pairs), phi, witness)


def serialize(f: InstanceFile) -> str:
    out = [f"{MAGIC} {f.version}", "points: " + " ".join(f.points), f"metric: {f.metric_kind}"]
    if f.metric_kind == "matrix":
        out += ["  " + " ".join(str(v) for v in row) for row in f.metric_payload]
    else:
        out += [f"  {a} {b} {w}" for a, b, w in f.metric_payload]
    out.append(f"preorder: {f.preorder_kind}")
    out += [f"  {a} {b}" for a, b in f.preorder_payload]
    out.append("phi: " + " ".join(format_ext(v) for v in f.phi))
    if f.witness is not None:
        out.append(f"witness: {f.witness}")
    return "\n".join(out) + "\n"


def to_instance(f: InstanceFile) -> Instance:
    n = len(f.points)
    index = {p: i for i, p in enumerate(f.points)}
    if f.metric_kind == "matrix":
        matrix = f.metric_payload
    else:
        w = [[Fraction(0) if i == j else INF for j in range(n)] for i in range(n)]
        for a, b, weight in f.metric_payload:
            i, j = index[a], index[b]
            if i != j:
                w[i][j] = min(w[i][j], weight)
        matrix = min_plus_closure(w)
        if any(v == INF for row in matrix for v in row):
            raise ValidationError("digraph is not strongly connected; distances must be finite")
    space = validate_space(matrix, f.points)

    pairs = [(index[a], index[b]) for a, b in f.preorder_payload]
    if f.preorder_kind == "total":
        order = total_preorder(n)
    elif f.preorder_kind == "specialization-conjugate":
        order = conjugate_specialization_preorder(space)
    elif f.preorder_kind == "reachability":
        order = closure_of_pairs(n, pairs)
    else:
        rel = [[i == j for j in range(n)] for i in range(n)]
        for i, j in pairs:
            rel[i][j] = True
        order = validate_preorder(rel)
    return Instance(space, order, Phi(f.phi))


def from_instance(inst: Instance, witness: int | None = None) -> InstanceFile:
    order = inst.order
    if order.is_total():
        kind, payload = "total", ()
    else:
        labels = inst.space.labels
        kind, payload = "pairs", tuple((labels[x], labels[y]) for x, y in order.pairs())
    return InstanceFile(inst.space.labels, "matrix", inst.space.d, kind, payload, inst.phi.values, witness)


def dumps(inst: Instance, witness: int | None = None) -> str:
    return serialize(from_instance(inst, witness))


def loads(text: str) -> Instance:
    return to_instance(parse(text))


# -- maps --------------------------------------------------------------------

def parse_map(text: str, points: tuple[str, ...]) -> tuple[str, tuple]:
    """Parse a map file into ``(kind, images)`` with images indexed by point."""
    lines = text.splitlines()
    if not lines or lines[0].split() != [MAP_MAGIC, str(VERSION)]:
        raise ParseError(1, f"expected header '{MAP_MAGIC} {VERSION}'")
    if len(lines) < 2 or not lines[1].startswith("kind:"):
        raise ParseError(2, "expected 'kind: single' or 'kind: multi'")
    kind = lines[1].partition(":")[2].strip()
    if kind not in ("single", "multi"):
        raise ParseError(2, f"unknown map kind {kind!r}")
    index = {p: i for i, p in enumerate(points)}
    images: dict[int, object] = {}
    for no, raw in enumerate(lines[2:], start=3):
        toks = raw.split()
        if not toks:
            continue
        if any(t not in index for t in toks):
            raise ParseError(no, "unknown point in map")
        if toks[0] in (points[i] for i in images):
            raise ParseError(no, f"duplicate source {toks[0]!r}")
        if kind == "single":
            if len(toks) != 2:
                raise ParseError(no, "single-valued map lines are 'x Tx'")
            images[index[toks[0]]] = index[toks[1]]
        else:
            if len(toks) < 2:
                raise ParseError(no, "set-valued map lines are 'x y1 y2 ...'")
            images[index[toks[0]]] = frozenset(index[t] for t in toks[1:])
    missing = [points[i] for i in range(len(points)) if i not in images]
    if missing:
        raise ParseError(len(lines), f"map has no image for {missing}")
    return kind, tuple(images[i] for i in range(len(points)))


def serialize_map(kind: str, images, points: tuple[str, ...]) -> str:
    out = [f"{MAP_MAGIC} {VERSION}", f"kind: {kind}"]
    for i, img in enumerate(images):
        if kind == "single":
            out.append(f"  {points[i]} {points[img]}")
        else:
            out.append("  " + " ".join([points[i]] + [points[j] for j in sorted(img)]))
    return "\n".join(out) + "\n"
