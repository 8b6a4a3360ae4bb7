"""Mixed graphs: representation, distances, status and degree checks.

A mixed graph on vertices ``0..n-1`` holds undirected edges (stored as
``(u, v)`` with ``u < v``) and arcs (ordered ``(u, v)``).  Walks may use an
edge in either direction and an arc only forwards.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import ConflictingPair, InvalidGraph, ParseError, SelfLoop, UnreachablePair


@dataclass(frozen=True)
class MixedGraph:
    n: int
    edges: frozenset
    arcs: frozenset

    def __init__(self, n: int, edges: Iterable = (), arcs: Iterable = ()):
        if n < 0:
            raise InvalidGraph(f"negative vertex count {n}")
        norm_edges = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"edge loop at vertex {u}")
            norm_edges.add((min(u, v), max(u, v)))
        norm_arcs = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoop(f"arc loop at vertex {u}")
            norm_arcs.add((u, v))
        for u, v in norm_edges | norm_arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f"link ({u}, {v}) outside 0..{n - 1}")
        for u, v in norm_arcs:
            if (min(u, v), max(u, v)) in norm_edges:
                raise ConflictingPair(f"pair {{{u}, {v}}} holds both an edge and an arc")
            if (v, u) in norm_arcs:
                raise ConflictingPair(f"pair {{{u}, {v}}} holds arcs in both directions")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm_edges))
        object.__setattr__(self, "arcs", frozenset(norm_arcs))

    @cached_property
    def out_neighbors(self) -> tuple:
        """Per-vertex sorted tuple of vertices reachable in one step."""
        out = [set() for _ in range(self.n)]
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        for u, v in self.arcs:
            out[u].add(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def out_masks(self) -> tuple:
        """Out-neighbourhoods as integer bitmasks (bit ``v`` set for vertex ``v``)."""
        return tuple(sum(1 << v for v in nbrs) for nbrs in self.out_neighbors)

    def has_link(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs or (min(u, v), max(u, v)) in self.edges

    def as_digraph(self) -> "MixedGraph":
        """The same reachability structure with every edge replaced by two arcs.

        The result is not a valid mixed graph in the one-link-per-pair sense,
        so it is returned as a plain arc list wrapped in a graph whose
        validation is bypassed.
        """
        arcs = set(self.arcs)
        for u, v in self.edges:
            arcs.add((u, v))
            arcs.add((v, u))
        g = object.__new__(MixedGraph)
        object.__setattr__(g, "n", self.n)
        object.__setattr__(g, "edges", frozenset())
        object.__setattr__(g, "arcs", frozenset(arcs))
        return g


class DistanceMatrix:
    """All-pairs distances; unreachable pairs hold ``inf`` (equal to ``n``)."""

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        self.inf = self.n

    def __getitem__(self, uv):
        u, v = uv
        return self.rows[u][v]

    def __eq__(self, other):
        return isinstance(other, DistanceMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"DistanceMatrix({list(map(list, self.rows))})"

    def is_finite(self, u: int, v: int) -> bool:
        return self.rows[u][v] < self.inf


class StatusVector(NamedTuple):
    per_vertex: tuple
    total: int


class EccentricityProfile(NamedTuple):
    eccentricities: tuple
    radius: float
    diameter: float
    central: tuple


@dataclass(frozen=True)
class DegreeProfile:
    undirected: tuple
    out: tuple
    inn: tuple

    def is_totally_regular(self, r: int, z: int) -> bool:
        return (all(d == r for d in self.undirected)
                and all(d == z for d in self.out)
                and all(d == z for d in self.inn))


def distances(g: MixedGraph) -> DistanceMatrix:
    """One BFS per source over the out-neighbourhood relation."""
    n = g.n
    out = g.out_neighbors
    rows = []
    for s in range(n):
        dist = [n] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in out[u]:
                if dist[w] == n:
                    dist[w] = du
                    queue.append(w)
        rows.append(dist)
    return DistanceMatrix(rows)


def status_vector(g: MixedGraph, dm: DistanceMatrix | None = None) -> StatusVector:
    dm = dm if dm is not None else distances(g)
    per_vertex = []
    for u, row in enumerate(dm.rows):
        for v, d in enumerate(row):
            if d >= dm.inf:
                raise UnreachablePair(u, v)
        per_vertex.append(sum(row))
    return StatusVector(tuple(per_vertex), sum(per_vertex))


def eccentricity_profile(g: MixedGraph, dm: DistanceMatrix | None = None) -> EccentricityProfile:
    dm = dm if dm is not None else distances(g)
    if g.n == 0:
        return EccentricityProfile((), 0, 0, ())
    ecc = tuple(math.inf if max(row) >= dm.inf else max(row) for row in dm.rows)
    radius = min(ecc)
    central = tuple(v for v, e in enumerate(ecc) if e == radius)
    return EccentricityProfile(ecc, radius, max(ecc), central)


def degree_profile(g: MixedGraph) -> DegreeProfile:
    und = [0] * g.n
    out = [0] * g.n
    inn = [0] * g.n
    for u, v in g.edges:
        und[u] += 1
        und[v] += 1
    for u, v in g.arcs:
        out[u] += 1
        inn[v] += 1
    return DegreeProfile(tuple(und), tuple(out), tuple(inn))


def format_graph(g: MixedGraph, r: int, z: int, comments: Iterable[str] = ()) -> str:
    """Canonical text form: header, sorted edges, then sorted arcs."""
    lines = [f"p mrg {g.n} {r} {z}"]
    lines += [f"# {c}" for c in comments]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    lines += [f"a {u} {v}" for u, v in sorted(g.arcs)]
    return "\n".join(lines) + "\n"


def parse_graph(text: str):
    """Parse the graph text format; returns ``(graph, r, z)``."""
    header = None
    edges, arcs = [], []
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p":
                if header is not None or len(parts) != 5 or parts[1] != "mrg":
                    raise ParseError(f"line {lineno}: bad header {line!r}")
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] in ("e", "a") and len(parts) == 3:
                if header is None:
                    raise ParseError(f"line {lineno}: link before header")
                u, v = int(parts[1]), int(parts[2])
                if parts[0] == "e":
                    if u >= v:
                        raise ParseError(f"line {lineno}: edge must be written with u < v")
                    edges.append((u, v))
                else:
                    arcs.append((u, v))
            else:
                raise ParseError(f"line {lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if header is None:
        raise ParseError("missing 'p mrg' header")
    n, r, z = header
    if len(set(edges)) != len(edges) or len(set(arcs)) != len(arcs):
        raise ParseError("duplicate link lines")
    return MixedGraph(n, edges, arcs), r, z


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path, g: MixedGraph, r: int, z: int) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g, r, z))
