"""Binary IP model for a minimum-status radial Moore graph of radius 2.

Variables (all binary, 0-based indices):

* ``x_i_j``    edge between i and j
* ``y_i_j``    arc from i to j
* ``d_i_j``    d(i, j) == 2
* ``c_i_j_k``  i -> j -> k is a walk and (i, k) is not a link
* ``p_i_j_k_l`` i -> j -> k -> l is a walk

Rows are produced lazily by :meth:`IpModel.constraints` in a fixed order, so a
model costs almost nothing to hold and serialises identically every time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, NamedTuple

from .errors import AsymmetricEdge, ConflictingPair, InvalidParams, ModelTooLarge, SelfLoop
from .graph import MixedGraph
from .moore import MooreTree, moore_bound, moore_tree

DEFAULT_MAX_ORDER = 64

FAMILIES = "abcdefg"
OPTIONAL_FAMILIES = "h"
FAMILY_NAMES = {
    "a": "well-formedness",
    "b": "moore-tree fixings",
    "c": "total regularity",
    "d": "c-linearization",
    "e": "p-linearization",
    "f": "d-linearization",
    "g": "diameter cover",
    "h": "some pair at distance 3",
}


def x(i, j):
    return f"x_{i}_{j}"


def y(i, j):
    return f"y_{i}_{j}"


def d(i, j):
    return f"d_{i}_{j}"


def c(i, j, k):
    return f"c_{i}_{j}_{k}"


def p(i, j, k, l):
    return f"p_{i}_{j}_{k}_{l}"


_ARITY = {"x": 2, "y": 2, "d": 2, "c": 3, "p": 4}


def parse_var(name: str):
    """Split ``'c_1_2_3'`` into ``('c', (1, 2, 3))``; None if not a model name."""
    parts = name.split("_")
    kind = parts[0]
    if kind not in _ARITY or len(parts) != _ARITY[kind] + 1:
        return None
    try:
        idx = tuple(int(t) for t in parts[1:])
    except ValueError:
        return None
    if any(str(v) != t for v, t in zip(idx, parts[1:])):
        return None
    return kind, idx


class Constraint(NamedTuple):
    family: str
    terms: tuple  # ((name, coef), ...) sorted by name, no zero coefficients
    sense: str  # "<=", "=", ">="
    rhs: int

    def holds(self, assignment) -> bool:
        lhs = sum(coef * assignment[name] for name, coef in self.terms)
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


def _row(family, coefs, sense, rhs):
    merged = {}
    for name, coef in coefs:
        merged[name] = merged.get(name, 0) + coef
    terms = tuple(sorted((k, v) for k, v in merged.items() if v != 0))
    return Constraint(family, terms, sense, rhs)


def _link(i, j, coef=1):
    return [(x(i, j), coef), (y(i, j), coef)]


class Objective(NamedTuple):
    sense: str
    terms: tuple
    constant: int


@dataclass(frozen=True)
class IpModel:
    r: int
    z: int
    tree: MooreTree
    fixings: dict = field(compare=False)
    radial_only: bool = False

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def status_constant(self) -> int:
        """Status of a regular diameter-<=3 graph with no pair at distance 2."""
        n = self.n
        return n * (3 * (n - 1) - 2 * (self.r + self.z))

    @property
    def objective(self) -> Objective:
        n = self.n
        terms = tuple(sorted((d(i, j), -1) for i in range(n) for j in range(n) if i != j))
        return Objective("minimize", terms, self.status_constant)

    def variables(self) -> Iterator[str]:
        rng = range(self.n)
        for kind in "xyd":
            for i, j in product(rng, rng):
                yield f"{kind}_{i}_{j}"
        for i, j, k in product(rng, rng, rng):
            yield c(i, j, k)
        for i, j, k, l in product(rng, rng, rng, rng):
            yield p(i, j, k, l)

    def is_variable(self, name: str) -> bool:
        parsed = parse_var(name)
        return parsed is not None and all(0 <= v < self.n for v in parsed[1])

    def constraints(self) -> Iterator[Constraint]:
        n, r, z = self.n, self.r, self.z
        rng = range(self.n)
        pairs = [(i, j) for i in rng for j in rng if i != j]

        # (a) ordered pairs i != j; the symmetry rows repeat each pair twice
        for i, j in pairs:
            yield _row("a", [(x(i, j), 1), (y(i, j), 1), (y(j, i), 1)], "<=", 1)
        for i, j in pairs:
            yield _row("a", [(x(i, j), 1), (x(j, i), -1)], "=", 0)

        # (b) is expressed entirely through fixings

        # (c) every vertex i; the sums skip j == i (fixed to 0 anyway)
        for i in rng:
            yield _row("c", [(x(i, j), 1) for j in rng if j != i], "=", r)
            yield _row("c", [(y(i, j), 1) for j in rng if j != i], "=", z)
            yield _row("c", [(y(j, i), 1) for j in rng if j != i], "=", z)

        # (d) all (i, j, k) with i != k
        for i, j, k in product(rng, rng, rng):
            if i == k:
                continue
            cv = c(i, j, k)
            yield _row("d", [(cv, 1)] + _link(i, j, -1), "<=", 0)
            yield _row("d", [(cv, 1)] + _link(j, k, -1), "<=", 0)
            yield _row("d", [(cv, 1)] + _link(i, k), "<=", 1)
            yield _row("d", [(cv, 1)] + _link(i, j, -1) + _link(j, k, -1) + _link(i, k), ">=", -1)

        # (e) all (i, j, k, l), repeated indices included
        for i, j, k, l in product(rng, rng, rng, rng):
            pv = p(i, j, k, l)
            yield _row("e", [(pv, 1)] + _link(i, j, -1), "<=", 0)
            yield _row("e", [(pv, 1)] + _link(j, k, -1), "<=", 0)
            yield _row("e", [(pv, 1)] + _link(k, l, -1), "<=", 0)
            yield _row("e", [(pv, 1)] + _link(i, j, -1) + _link(j, k, -1) + _link(k, l, -1), ">=", -2)

        # (f) upper rows for all (i, j); one lower row per (i, l, j)
        for i, j in product(rng, rng):
            yield _row("f", [(d(i, j), 1)] + [(c(i, k, j), -1) for k in rng], "<=", 0)
        for i, l, j in product(rng, rng, rng):
            yield _row("f", [(d(i, j), 1), (c(i, l, j), -1)], ">=", 0)

        # (g) ordered pairs i != j
        for i, j in pairs:
            coefs = _link(i, j)
            coefs += [(c(i, k, j), 1) for k in rng]
            coefs += [(p(i, k, l, j), 1) for k in rng for l in rng]
            yield _row("g", coefs, ">=", 1)

        # (h) optional: fewer than n(n-1) ordered pairs within distance 2,
        # which rules out diameter-2 (true Moore) graphs
        if self.radial_only:
            coefs = []
            for i, j in pairs:
                coefs += _link(i, j) + [(d(i, j), 1)]
            yield _row("h", coefs, "<=", n * (n - 1) - 1)

    def objective_value(self, assignment) -> int:
        obj = self.objective
        return obj.constant + sum(coef * assignment[name] for name, coef in obj.terms)

    def violated(self, assignment) -> list:
        """Rows and fixings that ``assignment`` breaks (empty when feasible)."""
        bad = [(name, val) for name, val in self.fixings.items() if assignment[name] != val]
        bad += [row for row in self.constraints() if not row.holds(assignment)]
        return bad


def _check_params(r, z):
    for name, val in (("r", r), ("z", z)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InvalidParams(f"{name} must be an integer, got {val!r}")
    if r < 0 or z < 0 or r + z < 1:
        raise InvalidParams(f"need r, z >= 0 and r + z >= 1 (got r={r}, z={z})")


def build_model(r: int, z: int, max_order: int = DEFAULT_MAX_ORDER,
                radial_only: bool = False) -> IpModel:
    """The full model for RM(r, z, 2); rows are enumerated on demand.

    ``radial_only`` appends one extra row excluding diameter-2 solutions.
    """
    _check_params(r, z)
    n = moore_bound(r, z, 2)
    if n > max_order:
        raise ModelTooLarge(f"M({r},{z},2) = {n} exceeds the model cap {max_order}")
    tree = moore_tree(r, z)
    fix = {}
    for i in range(n):
        fix[x(i, i)] = 0
        fix[y(i, i)] = 0
        # c_i_k_i has no linearization rows (they require i != k); pin it so
        # d_i_i and the objective cannot profit from it.
        for k in range(n):
            fix[c(i, k, i)] = 0
    for u, v in tree.graph.edges:
        fix[x(u, v)] = 1
        fix[x(v, u)] = 1
    for u, v in tree.graph.arcs:
        fix[y(u, v)] = 1
    return IpModel(r, z, tree, dict(sorted(fix.items())), radial_only)


def model_stats(model: IpModel):
    """``(var_count, {family: row_count})`` obtained by enumeration."""
    var_count = sum(1 for _ in model.variables())
    counts = dict.fromkeys(FAMILIES + (OPTIONAL_FAMILIES if model.radial_only else ""), 0)
    for row in model.constraints():
        counts[row.family] += 1
    return var_count, counts


def graph_to_assignment(model: IpModel, g: MixedGraph) -> dict:
    """Indicator assignment of every model variable for graph ``g``."""
    n = model.n
    if g.n != n:
        raise InvalidParams(f"graph has {g.n} vertices, model has {n}")
    rng = range(n)
    link = [[0] * n for _ in rng]
    for u, v in g.edges:
        link[u][v] = link[v][u] = 1
    for u, v in g.arcs:
        link[u][v] = 1
    a = {}
    for i, j in product(rng, rng):
        a[x(i, j)] = 1 if (min(i, j), max(i, j)) in g.edges else 0
        a[y(i, j)] = 1 if (i, j) in g.arcs else 0
    cval = {}
    for i, j, k in product(rng, rng, rng):
        cval[i, j, k] = int(i != k and link[i][j] and link[j][k] and not link[i][k])
        a[c(i, j, k)] = cval[i, j, k]
    for i, j in product(rng, rng):
        a[d(i, j)] = int(any(cval[i, k, j] for k in rng))
    for i, j, k, l in product(rng, rng, rng, rng):
        a[p(i, j, k, l)] = link[i][j] & link[j][k] & link[k][l]
    return a


def assignment_to_graph(model: IpModel, assignment) -> MixedGraph:
    n = model.n
    edges, arcs = [], []
    for i in range(n):
        if assignment[x(i, i)] or assignment[y(i, i)]:
            raise SelfLoop(f"loop at vertex {i}")
        for j in range(n):
            if i == j:
                continue
            if assignment[x(i, j)] != assignment[x(j, i)]:
                raise AsymmetricEdge(f"x_{i}_{j} != x_{j}_{i}")
            if assignment[x(i, j)] + assignment[y(i, j)] + assignment[y(j, i)] > 1:
                raise ConflictingPair(f"pair ({i}, {j}) carries more than one link")
            if i < j and assignment[x(i, j)]:
                edges.append((i, j))
            if assignment[y(i, j)]:
                arcs.append((i, j))
    return MixedGraph(n, edges, arcs)
