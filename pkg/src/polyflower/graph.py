"""Labeled multigraphs for polygon chains and polygon flowers.

A chain ``ChainSpec((k_1, ..., k_n))`` is built by starting from a single
edge ``e_0`` and stacking polygons one after another: polygon ``i`` is glued
along ``e_{i-1}`` and contributes the shared edge ``e_i`` (for ``i = n`` a
designated free edge of the last polygon) plus ``k_i - 2`` interior edges.

Every edge is stored with a direction ``tail -> head``.  The builders pick
these directions so that, in every polygon, the edges other than ``e_i``
form a directed path from ``tail(e_i)`` to ``head(e_i)``; with this
orientation the edge expressions of chain algebra hold with their exact
signs.  Bounded faces are kept as signed edge vectors, which is all the
cycle/cut presentation of the sandpile group needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    InvalidCenter,
    InvalidSideCount,
    UnknownEdge,
)

__all__ = [
    "ChainSpec",
    "FlowerSpec",
    "EdgeLabel",
    "Edge",
    "Multigraph",
    "center",
    "boundary",
    "interior",
    "build_chain",
    "build_flower",
    "delete_edge",
    "contract_edge",
    "laplacian",
    "reduced_laplacian",
]


@dataclass(frozen=True)
class ChainSpec:
    """Side counts ``(k_1, ..., k_n)`` of a polygon chain; ``()`` is a single edge."""

    ks: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ks = tuple(self.ks)
        for k in ks:
            if isinstance(k, bool) or not isinstance(k, int):
                raise InvalidSideCount(f"side count must be an integer, got {k!r}")
            if k < 2:
                raise InvalidSideCount(f"side count must be >= 2, got {k}")
        object.__setattr__(self, "ks", ks)

    @property
    def n(self) -> int:
        return len(self.ks)

    @property
    def trivial(self) -> bool:
        return not self.ks

    def reversed(self) -> ChainSpec:
        return ChainSpec(self.ks[::-1])

    def __str__(self) -> str:
        return "G(" + ",".join(map(str, self.ks)) + ")"


def _as_chain(p) -> ChainSpec:
    return p if isinstance(p, ChainSpec) else ChainSpec(tuple(p))


@dataclass(frozen=True)
class FlowerSpec:
    """Center cycle length ``t`` and one chain per center edge."""

    t: int
    petals: tuple[ChainSpec, ...]

    def __post_init__(self) -> None:
        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 2:
            raise InvalidCenter(f"center length must be an integer >= 2, got {self.t!r}")
        petals = tuple(_as_chain(p) for p in self.petals)
        if len(petals) != self.t:
            raise InvalidCenter(f"expected {self.t} petals, got {len(petals)}")
        object.__setattr__(self, "petals", petals)

    @classmethod
    def of(cls, *petals: Sequence[int]) -> FlowerSpec:
        """Shorthand: ``FlowerSpec.of([3], [], [3])`` has center length 3."""
        return cls(len(petals), tuple(ChainSpec(tuple(p)) for p in petals))

    @property
    def s(self) -> int:
        """Number of non-trivial petals."""
        return sum(1 for p in self.petals if not p.trivial)

    def permuted(self, order: Sequence[int]) -> FlowerSpec:
        return FlowerSpec(self.t, tuple(self.petals[i] for i in order))

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.ks for p in self.petals)

    def __str__(self) -> str:
        return f"F(C_{self.t}; " + ", ".join(str(p) for p in self.petals) + ")"


_KINDS = ("center", "boundary", "interior")


@dataclass(frozen=True)
class EdgeLabel:
    """Name of an edge.

    ``center``: center edge ``e_i`` of a flower (1-based ``index``).
    ``boundary``: shared/free edge ``e_index`` of a chain, ``0 <= index <= n``.
    ``interior``: edge ``position`` (1-based) of polygon ``index`` that is
    neither ``e_{index-1}`` nor ``e_index``.
    ``petal`` is 0 for a bare chain, otherwise the 1-based petal number.
    """

    kind: str
    index: int
    position: int = 0
    petal: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown edge kind {self.kind!r}")

    def canonical(self) -> EdgeLabel:
        # e_0 of petal p is the center edge e_p
        if self.kind == "boundary" and self.index == 0 and self.petal:
            return EdgeLabel("center", self.petal)
        return self

    def sort_key(self) -> tuple[int, int, int, int]:
        petal = self.index if self.kind == "center" else self.petal
        order = {"center": 0, "boundary": 1, "interior": 1}[self.kind]
        # interior edges of polygon i sort between e_{i-1} and e_i
        if self.kind == "interior":
            return (petal, order, 2 * self.index - 1, self.position)
        if self.kind == "boundary":
            return (petal, order, 2 * self.index, 0)
        return (petal, order, 0, 0)

    def __str__(self) -> str:
        if self.kind == "center":
            return f"c_{self.index}"
        prefix = f"P{self.petal}." if self.petal else ""
        if self.kind == "boundary":
            return f"{prefix}e_{self.index}"
        return f"{prefix}f_{self.index},{self.position}"


def center(i: int) -> EdgeLabel:
    return EdgeLabel("center", i)


def boundary(j: int, petal: int = 0) -> EdgeLabel:
    return EdgeLabel("boundary", j, 0, petal).canonical()


def interior(polygon: int, position: int, petal: int = 0) -> EdgeLabel:
    return EdgeLabel("interior", polygon, position, petal)


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    label: EdgeLabel


Face = tuple[tuple[EdgeLabel, int], ...]


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph on vertices ``0..n-1``.

    ``faces`` holds the bounded faces as signed edge vectors relative to the
    stored edge directions, or ``None`` when they are unknown.
    """

    n: int
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...] | None = field(default=None)

    @property
    def m(self) -> int:
        return len(self.edges)

    def labels(self) -> list[EdgeLabel]:
        return [e.label for e in self.edges]

    def index_of(self, label: EdgeLabel) -> int:
        label = label.canonical()
        for i, e in enumerate(self.edges):
            if e.label == label:
                return i
        raise UnknownEdge(str(label))

    def edge(self, label: EdgeLabel) -> Edge:
        return self.edges[self.index_of(label)]

    def has_edge(self, label: EdgeLabel) -> bool:
        try:
            self.index_of(label)
        except UnknownEdge:
            return False
        return True

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def reoriented(self, labels: Iterable[EdgeLabel]) -> Multigraph:
        """Reverse the stored direction of the given edges (faces follow)."""
        flip = {lab.canonical() for lab in labels}
        for lab in flip:
            self.index_of(lab)
        edges = tuple(
            Edge(e.head, e.tail, e.label) if e.label in flip else e for e in self.edges
        )
        faces = None
        if self.faces is not None:
            faces = tuple(
                tuple((lab, -s if lab in flip else s) for lab, s in face)
                for face in self.faces
            )
        return Multigraph(self.n, edges, faces)

    def relabeled_vertices(self, perm: Sequence[int]) -> Multigraph:
        """Rename vertex ``v`` to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the vertices")
        edges = tuple(Edge(perm[e.tail], perm[e.head], e.label) for e in self.edges)
        return Multigraph(self.n, edges, self.faces)


def _stack(ks: Sequence[int], a: int, b: int, first: EdgeLabel, petal: int,
           next_vertex: int, edges: list[Edge], faces: list[Face]) -> int:
    """Stack polygons ``ks`` onto the existing edge ``first = (a -> b)``."""
    prev = first
    for i, k in enumerate(ks, start=1):
        path = [a] + list(range(next_vertex, next_vertex + k - 2))
        next_vertex += k - 2
        face: list[tuple[EdgeLabel, int]] = [(prev, 1)]
        for j in range(1, k - 1):
            lab = interior(i, j, petal)
            edges.append(Edge(path[j], path[j - 1], lab))
            face.append((lab, 1))
        cur = boundary(i, petal)
        edges.append(Edge(path[-1], b, cur))
        face.append((cur, -1))
        faces.append(tuple(face))
        a, prev = path[-1], cur
    return next_vertex


def build_chain(spec: ChainSpec | Sequence[int]) -> Multigraph:
    """Canonical graph of a polygon chain, edges labeled ``e_0..e_n`` and ``f_{i,j}``."""
    spec = _as_chain(spec)
    edges = [Edge(0, 1, boundary(0))]
    faces: list[Face] = []
    n = _stack(spec.ks, 0, 1, boundary(0), 0, 2, edges, faces)
    return Multigraph(n, tuple(edges), tuple(faces))


def build_flower(spec: FlowerSpec) -> Multigraph:
    """Center cycle ``v_1 e_1 ... v_t e_t v_1`` with petal ``i`` glued along ``e_i``."""
    t = spec.t
    edges = [Edge(i, (i + 1) % t, center(i + 1)) for i in range(t)]
    faces: list[Face] = [tuple((center(i + 1), 1) for i in range(t))]
    nv = t
    for i, petal in enumerate(spec.petals, start=1):
        e = edges[i - 1]
        nv = _stack(petal.ks, e.tail, e.head, e.label, i, nv, edges, faces)
    return Multigraph(nv, tuple(edges), tuple(faces))


def delete_edge(g: Multigraph, e: EdgeLabel) -> Multigraph:
    """Remove an edge; the two faces on either side merge."""
    idx = g.index_of(e)
    lab = g.edges[idx].label
    edges = g.edges[:idx] + g.edges[idx + 1:]
    faces = None
    if g.faces is not None:
        touching = [f for f in g.faces if any(x == lab for x, _ in f)]
        rest = [f for f in g.faces if not any(x == lab for x, _ in f)]
        if len(touching) == 2:
            f1, f2 = touching
            s1 = dict(f1)[lab]
            s2 = dict(f2)[lab]
            merged: dict[EdgeLabel, int] = {}
            for x, s in f1:
                merged[x] = merged.get(x, 0) + s2 * s
            for x, s in f2:
                merged[x] = merged.get(x, 0) - s1 * s
            rest.append(tuple((x, s) for x, s in merged.items() if s))
        faces = tuple(rest)
    return Multigraph(g.n, edges, faces)


def contract_edge(g: Multigraph, e: EdgeLabel) -> Multigraph:
    """Merge the endpoints of an edge; loops created this way are dropped."""
    idx = g.index_of(e)
    keep, gone = sorted((g.edges[idx].tail, g.edges[idx].head))

    def mv(v: int) -> int:
        if v == gone:
            v = keep
        return v - 1 if v > gone else v

    edges = []
    dropped = set()
    for i, x in enumerate(g.edges):
        if i == idx:
            dropped.add(x.label)
            continue
        u, v = mv(x.tail), mv(x.head)
        if u == v:
            dropped.add(x.label)
            continue
        edges.append(Edge(u, v, x.label))
    faces = None
    if g.faces is not None:
        faces = tuple(
            f2 for f2 in (tuple((x, s) for x, s in f if x not in dropped) for f in g.faces)
            if f2
        )
    n = g.n - 1 if keep != gone else g.n
    return Multigraph(n, tuple(edges), faces)


def laplacian(g: Multigraph) -> list[list[int]]:
    """``L = D - A`` counting parallel edges with multiplicity."""
    L = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        u, v = e.tail, e.head
        if u == v:
            continue
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return L


def reduced_laplacian(g: Multigraph, sink: int = 0) -> list[list[int]]:
    if not 0 <= sink < g.n:
        raise IndexError(f"sink {sink} out of range for {g.n} vertices")
    L = laplacian(g)
    return [[x for j, x in enumerate(row) if j != sink] for i, row in enumerate(L) if i != sink]


def require_connected(g: Multigraph) -> None:
    if not g.is_connected():
        raise Disconnected(f"graph on {g.n} vertices is not connected")
