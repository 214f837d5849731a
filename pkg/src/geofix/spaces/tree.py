"""
Finite ℝ-trees: weighted trees whose points sit on vertices or inside edges.

A position is a `TreePoint`. Vertex positions are stored as `(v, v, 0)`; interior
positions as `(tail, head, offset)` where `(tail, head)` is the stored orientation of
the edge and `0 < offset < length` is measured from the tail.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise
from logging import Logger, getLogger
from typing import Any, Sequence

import networkx as nx
import numpy as np

from geofix.convexity import ConvexStructure, check_lambda, segment_points
from geofix.metric import FiniteSample, four_point_delta
from geofix.types import Scalar, as_scalar, ratio
from geofix.utilities.exception import DomainError, ExactModeError, InvalidTree

logger: Logger = getLogger(__name__)

RESERVED_CHARACTERS = ("-", ":")


@dataclass(frozen=True)
class TreePoint:
    tail: str
    head: str
    offset: Scalar = 0

    @classmethod
    def at_vertex(cls, vertex: str) -> "TreePoint":
        return cls(vertex, vertex, 0)

    @property
    def is_vertex(self) -> bool:
        return self.tail == self.head

    def __str__(self) -> str:
        if self.is_vertex:
            return f"v:{self.tail}"
        return f"e:{self.tail}-{self.head}:{self.offset}"


Leg = tuple[str, str, Scalar, Scalar]


class RealTree:
    """
    A finite ℝ-tree with its path metric and geodesic convex combinations.

    With `exact=True` every length, offset and parameter is a `Fraction` and floating
    inputs are rejected.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        edges: Sequence[tuple[str, str, Any]],
        exact: bool = False,
        label: str = "tree",
    ) -> None:
        if not vertices:
            raise InvalidTree("A tree needs at least one vertex")
        for vertex in vertices:
            if any(c in vertex for c in RESERVED_CHARACTERS) or not vertex:
                raise InvalidTree(
                    f"Vertex label {vertex!r} must be non-empty and avoid '-' and ':'"
                )

        self.exact = exact
        self.label = label
        self.vertices = list(vertices)
        self.graph = nx.Graph()
        self.graph.add_nodes_from(self.vertices)
        self._orientation: dict[frozenset[str], tuple[str, str]] = {}
        self._paths: dict[tuple[str, str], list[str]] = {}
        self._distances: dict[tuple[str, str], Scalar] = {}

        for u, v, raw_length in edges:
            if u not in self.graph or v not in self.graph:
                raise InvalidTree(f"Edge {u}-{v} references an unknown vertex")
            if u == v or self.graph.has_edge(u, v):
                raise InvalidTree(f"Edge {u}-{v} is a loop or a duplicate")
            length = as_scalar(raw_length, exact)
            if not length > 0:
                raise InvalidTree(f"Edge {u}-{v} has non-positive length {raw_length}")
            self.graph.add_edge(u, v, length=length)
            self._orientation[frozenset((u, v))] = (u, v)

        if not nx.is_tree(self.graph):
            raise InvalidTree("Edges must form a connected acyclic graph")

        self.edges: list[tuple[str, str]] = [
            self._orientation[frozenset((u, v))] for u, v, _ in edges
        ]

    def __repr__(self) -> str:
        return f"RealTree({self.label!r}, vertices={len(self.vertices)}, exact={self.exact})"

    def edge_length(self, u: str, v: str) -> Scalar:
        return self.graph.edges[u, v]["length"]

    def oriented(self, u: str, v: str) -> tuple[str, str]:
        try:
            return self._orientation[frozenset((u, v))]
        except KeyError:
            raise DomainError(f"No edge between {u} and {v}") from None

    def vertex_path(self, u: str, v: str) -> list[str]:
        key = (u, v)
        if key not in self._paths:
            self._paths[key] = nx.shortest_path(self.graph, u, v)
        return self._paths[key]

    def vertex_distance(self, u: str, v: str) -> Scalar:
        key = (u, v)
        if key not in self._distances:
            total = as_scalar(0, self.exact)
            for a, b in pairwise(self.vertex_path(u, v)):
                total += self.edge_length(a, b)
            self._distances[key] = total
        return self._distances[key]

    def point_on_edge(self, u: str, v: str, from_u: Scalar) -> TreePoint:
        """The position at distance `from_u` from `u` on the edge joining u and v."""
        tail, head = self.oriented(u, v)
        length = self.edge_length(tail, head)
        offset = from_u if tail == u else length - from_u
        return self.canonical(TreePoint(tail, head, offset))

    def canonical(self, p: TreePoint) -> TreePoint:
        """Validate a position and bring it to its unique representation."""
        if p.is_vertex:
            if p.tail not in self.graph:
                raise DomainError(f"Unknown vertex {p.tail!r}")
            return TreePoint.at_vertex(p.tail)

        self._check_arithmetic(p.offset)
        tail, head = self.oriented(p.tail, p.head)
        length = self.edge_length(tail, head)
        offset = p.offset if tail == p.tail else length - p.offset
        if offset < 0 or offset > length:
            raise DomainError(f"Offset {p.offset} is not on edge {tail}-{head}")
        if offset == 0:
            return TreePoint.at_vertex(tail)
        if offset == length:
            return TreePoint.at_vertex(head)
        return TreePoint(tail, head, offset)

    def _check_arithmetic(self, value: Scalar) -> None:
        if self.exact and isinstance(value, float):
            raise ExactModeError(f"Floating value {value!r} on an exact tree")
        if not self.exact and isinstance(value, Fraction):
            raise ExactModeError(f"Rational value {value} on a floating tree")

    def _anchors(self, p: TreePoint) -> list[tuple[str, Scalar]]:
        if p.is_vertex:
            return [(p.tail, as_scalar(0, self.exact))]
        length = self.edge_length(p.tail, p.head)
        return [(p.tail, p.offset), (p.head, length - p.offset)]

    def _exits(self, p: TreePoint, q: TreePoint) -> tuple[str, str, Scalar]:
        """Vertices through which the geodesic from p to q leaves p's edge and enters q's."""
        best: tuple[str, str, Scalar] | None = None
        for x, to_x in self._anchors(p):
            for y, to_y in self._anchors(q):
                total = to_x + self.vertex_distance(x, y) + to_y
                if best is None or total < best[2]:
                    best = (x, y, total)
        assert best is not None
        return best

    def _same_edge(self, p: TreePoint, q: TreePoint) -> bool:
        return (
            not p.is_vertex
            and not q.is_vertex
            and (p.tail, p.head) == (q.tail, q.head)
        )

    def distance(self, p: TreePoint, q: TreePoint) -> Scalar:
        p, q = self.canonical(p), self.canonical(q)
        if self._same_edge(p, q):
            return abs(p.offset - q.offset)
        return self._exits(p, q)[2]

    def legs(self, p: TreePoint, q: TreePoint) -> list[Leg]:
        """
        The geodesic from p to q as edge pieces `(tail, head, start, end)`, with start
        and end measured from the tail of each edge.
        """
        p, q = self.canonical(p), self.canonical(q)
        if p == q:
            return []
        if self._same_edge(p, q):
            return [(p.tail, p.head, p.offset, q.offset)]

        x, y, _ = self._exits(p, q)
        zero = as_scalar(0, self.exact)
        legs: list[Leg] = []
        if not p.is_vertex:
            length = self.edge_length(p.tail, p.head)
            legs.append((p.tail, p.head, p.offset, zero if x == p.tail else length))
        for u, v in pairwise(self.vertex_path(x, y)):
            tail, head = self.oriented(u, v)
            length = self.edge_length(tail, head)
            legs.append((tail, head, zero, length) if tail == u else (tail, head, length, zero))
        if not q.is_vertex:
            length = self.edge_length(q.tail, q.head)
            legs.append((q.tail, q.head, zero if y == q.tail else length, q.offset))
        return legs

    def combine(self, p: TreePoint, q: TreePoint, lam: Scalar) -> TreePoint:
        check_lambda(lam, self.exact)
        p, q = self.canonical(p), self.canonical(q)
        if lam == 0:
            return p
        if lam == 1:
            return q

        legs = self.legs(p, q)
        remaining = lam * sum((abs(end - start) for _, _, start, end in legs), start=as_scalar(0, self.exact))
        for tail, head, start, end in legs:
            length = abs(end - start)
            if remaining <= length:
                offset = start + remaining if end >= start else start - remaining
                return self.canonical(TreePoint(tail, head, offset))
            remaining -= length
        return q

    def ray(self, p: TreePoint, q: TreePoint, t: float) -> TreePoint:
        """
        The point at distance `t` from p on a geodesic through q, continued past q to
        the farthest vertex beyond it and stopped there if the tree ends first.
        """
        p, q = self.canonical(p), self.canonical(q)
        span = self.distance(p, q)
        slack = 0 if self.exact else 1e-9 * (1.0 + float(span))
        vertices = [TreePoint.at_vertex(v) for v in self.vertices]
        beyond = [
            v for v in vertices if abs(self.distance(p, v) - span - self.distance(q, v)) <= slack
        ]
        end = max(beyond, key=lambda v: self.distance(p, v))
        length = self.distance(p, end)
        if length == 0:
            return p
        lam: Scalar = min(t / float(length), 1.0)
        if self.exact:
            lam = Fraction(lam).limit_denominator(1 << 20)
        return self.combine(p, end, lam)

    def origin(self) -> TreePoint:
        return TreePoint.at_vertex(self.vertices[0])

    def random_point(self, rng: np.random.Generator) -> TreePoint:
        if not self.edges or rng.random() < 0.2:
            return TreePoint.at_vertex(self.vertices[int(rng.integers(len(self.vertices)))])
        tail, head = self.edges[int(rng.integers(len(self.edges)))]
        length = self.edge_length(tail, head)
        if self.exact:
            offset = ratio(int(rng.integers(0, 65)), 64, exact=True) * length
        else:
            offset = float(rng.uniform(0.0, float(length)))
        return self.canonical(TreePoint(tail, head, offset))

    def parse_point(self, raw: Any) -> TreePoint:
        """Read a position written as `v:label` or `e:u-v:offset`."""
        if isinstance(raw, TreePoint):
            return self.canonical(raw)
        if not isinstance(raw, str):
            raise DomainError(f"Tree positions are strings, got {raw!r}")

        kind, _, rest = raw.partition(":")
        if kind == "v":
            return self.canonical(TreePoint.at_vertex(rest))
        if kind == "e":
            edge, _, offset_text = rest.rpartition(":")
            u, sep, v = edge.partition("-")
            if not sep or not offset_text:
                raise DomainError(f"Malformed edge position {raw!r}")
            try:
                offset = Fraction(offset_text)
            except ValueError:
                raise DomainError(f"Malformed offset in {raw!r}") from None
            value = offset if self.exact else float(offset)
            return self.point_on_edge(u, v, value)
        raise DomainError(f"Tree positions start with 'v:' or 'e:', got {raw!r}")

    def dump_point(self, p: TreePoint) -> str:
        return str(self.canonical(p))


def tree_segment_glue_check(
    t: RealTree,
    y: TreePoint,
    x: TreePoint,
    z: TreePoint,
    k: int,
    tol: float = 1e-9,
) -> bool:
    """
    If the sampled segments [y,x] and [x,z] meet only at x, check that their union
    is the geodesic [y,z], i.e. d(y,z) = d(y,x) + d(x,z).

    A shared piece shorter than the sampling step can go unseen; it shortens
    d(y,z) by at most twice the shorter step, so that much slack is allowed.
    """
    if k < 2:
        raise DomainError(f"Sampling resolution must be at least 2, got {k}")

    cs = ConvexStructure(t)
    d_yx, d_xz, d_yz = t.distance(y, x), t.distance(x, z), t.distance(y, z)

    on_xz = any(
        t.distance(x, a) > tol and t.distance(x, a) + t.distance(a, z) <= d_xz + tol
        for a in segment_points(cs, x, y, k)
    )
    on_yx = any(
        t.distance(x, b) > tol and t.distance(y, b) + t.distance(b, x) <= d_yx + tol
        for b in segment_points(cs, x, z, k)
    )
    if on_xz or on_yx:
        logger.debug("Segments through %s share more than their endpoint", x)
        return True

    slack = 2 * min(d_yx, d_xz) / k
    return d_yx + d_xz - d_yz <= slack + tol


def tree_four_point_exact(t: RealTree, positions: Sequence[TreePoint]) -> Fraction:
    """Exact four-point δ over tree positions; zero for every tree."""
    if not t.exact:
        raise ExactModeError("Exact four-point evaluation needs a tree built with exact=True")

    sample = FiniteSample.from_space(t, [t.canonical(p) for p in positions], tol=0)
    delta, _ = four_point_delta(sample)
    return Fraction(delta)
