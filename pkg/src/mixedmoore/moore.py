"""Quantities of a hypothetical mixed Moore graph and the radius-2 Moore tree."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams, OrderMismatch
from .graph import MixedGraph, status_vector


@dataclass(frozen=True)
class MooreProfile:
    r: int
    z: int
    k: int
    layer_counts: tuple
    M: int
    s_per_vertex: int

    @property
    def s_total(self) -> int:
        return self.M * self.s_per_vertex


def _check(r, z, k):
    for name, val in (("r", r), ("z", z), ("k", k)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InvalidParams(f"{name} must be an integer, got {val!r}")
    if r < 0 or z < 0 or k < 1 or r + z < 1:
        raise InvalidParams(f"need r, z >= 0, r + z >= 1 and k >= 1 (got r={r}, z={z}, k={k})")


def moore_profile(r: int, z: int, k: int = 2) -> MooreProfile:
    """Layer sizes of the Moore tree of depth ``k``.

    A vertex reached through an edge branches into ``r - 1`` edges and ``z``
    arcs; one reached through an arc branches into ``r`` edges and ``z`` arcs.
    """
    _check(r, z, k)
    layers = [1]
    u, d = r, z
    for _ in range(k):
        layers.append(u + d)
        u, d = (r - 1) * u + r * d, z * (u + d)
    s = sum(i * c for i, c in enumerate(layers))
    return MooreProfile(r, z, k, tuple(layers), sum(layers), s)


def moore_bound(r: int, z: int, k: int = 2) -> int:
    return moore_profile(r, z, k).M


def moore_status(r: int, z: int, k: int = 2):
    """``(s_per_vertex, s_total)`` for a hypothetical mixed Moore graph."""
    p = moore_profile(r, z, k)
    return p.s_per_vertex, p.s_total


@dataclass(frozen=True)
class MooreTree:
    r: int
    z: int
    graph: MixedGraph
    parent: tuple
    via_edge: tuple
    level: tuple

    @property
    def n(self) -> int:
        return self.graph.n


def moore_tree(r: int, z: int) -> MooreTree:
    """Canonically labelled radius-2 Moore tree rooted at vertex 0.

    Level-1 vertices are ``1..r`` (edge children) then ``r+1..r+z`` (arc
    children).  Level-2 vertices follow grouped by parent, edge children
    before arc children.  Arcs point away from the root.
    """
    _check(r, z, 2)
    edges, arcs = [], []
    parent, via_edge, level = [None], [None], [0]
    nxt = 1
    level1 = []
    for t in range(r + z):
        is_edge = t < r
        v = nxt
        nxt += 1
        (edges if is_edge else arcs).append((0, v))
        parent.append(0)
        via_edge.append(is_edge)
        level.append(1)
        level1.append((v, is_edge))
    for p, p_edge in level1:
        n_edge = r - 1 if p_edge else r
        for t in range(n_edge + z):
            is_edge = t < n_edge
            v = nxt
            nxt += 1
            (edges if is_edge else arcs).append((p, v))
            parent.append(p)
            via_edge.append(is_edge)
            level.append(2)
    assert nxt == moore_bound(r, z, 2)
    return MooreTree(r, z, MixedGraph(nxt, edges, arcs), tuple(parent), tuple(via_edge), tuple(level))


def status_norm1(g: MixedGraph, r: int, z: int, k: int = 2) -> int:
    """l1 distance between the status vector of ``g`` and the Moore status."""
    prof = moore_profile(r, z, k)
    if g.n != prof.M:
        raise OrderMismatch(f"graph has {g.n} vertices, M({r},{z},{k}) = {prof.M}")
    sv = status_vector(g)
    return sum(abs(s - prof.s_per_vertex) for s in sv.per_vertex)
