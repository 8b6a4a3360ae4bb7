"""Depth-first branch-and-bound for minimum-status radial Moore graphs.

Every unordered vertex pair ("slot") takes one relation: edge, arc i->j,
arc j->i or nothing.  Slots are decided in lexicographic order starting from
the fixed Moore tree.  The bound uses the fact that in a totally regular
graph every vertex starts exactly ``layer_2`` non-backtracking 2-step walks;
each walk that ends on the vertex's own out-neighbourhood or on an endpoint
already hit by another walk loses one unit of distance-2 coverage, and such
losses can never be undone by later decisions.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import time
from dataclasses import dataclass, field

from ._bits import bits, layer_counts
from .errors import Infeasible, InvalidParams
from .graph import MixedGraph, format_graph
from .moore import MooreTree, moore_profile, moore_tree

UNDECIDED, EDGE, ARC_FWD, ARC_BWD, NONE = -1, 0, 1, 2, 3
BRANCH_ORDER = (EDGE, ARC_FWD, ARC_BWD, NONE)
_FLIP = {UNDECIDED: UNDECIDED, EDGE: EDGE, ARC_FWD: ARC_BWD, ARC_BWD: ARC_FWD, NONE: NONE}

DEFAULT_MAX_ORDER = 20
_CHECK_EVERY = 512


@dataclass
class SearchReport:
    r: int
    z: int
    method: str
    best_graph: MixedGraph | None
    best_status: int | None
    lower_bound: int | None
    proved_optimal: bool
    nodes_explored: int
    wall_time: float
    seed: int
    history: list = field(default_factory=list, repr=False)

    @property
    def n(self) -> int:
        return moore_profile(self.r, self.z, 2).M

    @property
    def norm1(self):
        if self.best_status is None:
            return None
        return self.best_status - moore_profile(self.r, self.z, 2).s_total

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "z": self.z,
            "k": 2,
            "n": self.n,
            "method": self.method,
            "best_status": self.best_status,
            "norm1": self.norm1,
            "lower_bound": self.lower_bound,
            "proved_optimal": self.proved_optimal,
            "nodes_explored": self.nodes_explored,
            "wall_time_s": round(self.wall_time, 3),
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def graph_text(self) -> str | None:
        if self.best_graph is None:
            return None
        return format_graph(self.best_graph, self.r, self.z)


def symmetry_orbits(tree: MooreTree) -> list:
    """Vertex orbits of the automorphism group of the canonical Moore tree.

    The root is fixed; level-1 vertices split by link type; level-2 vertices
    split by (parent's link type, own link type).
    """
    n = tree.n
    if n == 2:
        # the tree is a single edge, whose two ends swap
        return [frozenset({0, 1})]
    classes = {}
    for v in range(n):
        if tree.level[v] == 0:
            key = (0,)
        elif tree.level[v] == 1:
            key = (1, tree.via_edge[v])
        else:
            key = (2, tree.via_edge[tree.parent[v]], tree.via_edge[v])
        classes.setdefault(key, set()).add(v)
    return sorted((frozenset(s) for s in classes.values()), key=min)


def symmetry_generators(tree: MooreTree) -> list:
    """Permutations (as tuples) generating the tree's automorphism group.

    Adjacent same-type siblings are transposed; adjacent same-type level-1
    vertices are exchanged together with their subtrees.
    """
    n = tree.n
    children = {v: [] for v in range(n)}
    for v in range(1, n):
        children[tree.parent[v]].append(v)
    gens = []
    for par in range(n):
        kids = children[par]
        for a, b in zip(kids, kids[1:]):
            if tree.via_edge[a] != tree.via_edge[b]:
                continue
            perm = list(range(n))
            perm[a], perm[b] = b, a
            for ca, cb in zip(children[a], children[b]):
                perm[ca], perm[cb] = cb, ca
            gens.append(tuple(perm))
    return gens


class _Search:
    def __init__(self, r: int, z: int, deadline: float, use_symmetry: bool = True,
                 allow_moore: bool = False):
        self.r, self.z = r, z
        self.allow_moore = allow_moore
        self.tree = tree = moore_tree(r, z)
        prof = moore_profile(r, z, 2)
        self.n = n = tree.n
        self.moore_total = prof.s_total
        self.deadline = deadline
        self.rel = [UNDECIDED] * (n * n)
        self.out = [0] * n
        self.inm = [0] * n
        self.emask = [0] * n
        self.rem_r = [r] * n
        self.rem_o = [z] * n
        self.rem_i = [z] * n
        self.und = [n - 1] * n
        self.loss = [0] * n
        self.total_loss = 0
        for u, v in sorted(tree.graph.edges):
            self._apply(u, v, EDGE)
        for u, v in sorted(tree.graph.arcs):
            self._apply(min(u, v), max(u, v), ARC_FWD if u < v else ARC_BWD)
        self.slots = [(i, j) for i in range(n) for j in range(i + 1, n) if self.rel[i * n + j] == UNDECIDED]
        self.lex = self._lex_tables(symmetry_generators(tree)) if use_symmetry else []
        self.best_status = None
        self.best_rel = None
        self.nodes = 0
        self.timed_out = False
        self.open_bound = None
        self.history = []
        self.shared = None

    def _lex_tables(self, gens):
        n = self.n
        tables = []
        for perm in gens:
            inv = [0] * n
            for a, b in enumerate(perm):
                inv[b] = a
            table = []
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = inv[i], inv[j]
                    flip = a > b
                    if flip:
                        a, b = b, a
                    if (a, b) == (i, j) and not flip:
                        continue
                    table.append((i * n + j, a * n + b, flip))
            tables.append(table)
        return tables

    def _lex_ok(self) -> bool:
        rel = self.rel
        for table in self.lex:
            for s, t, flip in table:
                a = rel[s]
                b = rel[t]
                if a < 0 or b < 0:
                    break
                if flip:
                    b = _FLIP[b]
                if a < b:
                    break
                if a > b:
                    return False
        return True

    def _loss_of(self, v: int) -> int:
        out = self.out
        walks = 0
        ends = 0
        m = out[v]
        while m:
            low = m & -m
            oa = out[low.bit_length() - 1]
            walks += oa.bit_count()
            ends |= oa
            m ^= low
        walks -= self.emask[v].bit_count()
        ends &= ~(out[v] | (1 << v))
        return walks - ends.bit_count()

    def _refresh_loss(self, affected: int, saved: list) -> None:
        loss = self.loss
        while affected:
            low = affected & -affected
            v = low.bit_length() - 1
            affected ^= low
            new = self._loss_of(v)
            if new != loss[v]:
                saved.append((v, loss[v]))
                self.total_loss += new - loss[v]
                loss[v] = new

    def _apply(self, i: int, j: int, val: int) -> list:
        n = self.n
        self.rel[i * n + j] = val
        self.und[i] -= 1
        self.und[j] -= 1
        saved = []
        if val == NONE:
            return saved
        bi, bj = 1 << i, 1 << j
        if val == EDGE:
            self.rem_r[i] -= 1
            self.rem_r[j] -= 1
            self.out[i] |= bj
            self.out[j] |= bi
            self.inm[i] |= bj
            self.inm[j] |= bi
            self.emask[i] |= bj
            self.emask[j] |= bi
            affected = bi | bj | self.inm[i] | self.inm[j]
        else:
            if val == ARC_BWD:
                i, j = j, i
                bi, bj = bj, bi
            self.rem_o[i] -= 1
            self.rem_i[j] -= 1
            self.out[i] |= bj
            self.inm[j] |= bi
            affected = bi | self.inm[i]
        self._refresh_loss(affected, saved)
        return saved

    def _undo(self, i: int, j: int, val: int, saved: list) -> None:
        n = self.n
        self.rel[i * n + j] = UNDECIDED
        self.und[i] += 1
        self.und[j] += 1
        for v, old in reversed(saved):
            self.total_loss += old - self.loss[v]
            self.loss[v] = old
        if val == NONE:
            return
        bi, bj = 1 << i, 1 << j
        if val == EDGE:
            self.rem_r[i] += 1
            self.rem_r[j] += 1
            self.out[i] &= ~bj
            self.out[j] &= ~bi
            self.inm[i] &= ~bj
            self.inm[j] &= ~bi
            self.emask[i] &= ~bj
            self.emask[j] &= ~bi
        else:
            if val == ARC_BWD:
                i, j = j, i
                bi, bj = bj, bi
            self.rem_o[i] += 1
            self.rem_i[j] += 1
            self.out[i] &= ~bj
            self.inm[j] &= ~bi

    def _allowed(self, i: int, j: int, val: int) -> bool:
        if val == EDGE:
            return self.rem_r[i] > 0 and self.rem_r[j] > 0
        if val == ARC_FWD:
            return self.rem_o[i] > 0 and self.rem_i[j] > 0
        if val == ARC_BWD:
            return self.rem_o[j] > 0 and self.rem_i[i] > 0
        return True

    def _budget_ok(self, v: int) -> bool:
        need = self.rem_r[v] + self.rem_o[v] + self.rem_i[v]
        return need <= self.und[v]

    def bound(self) -> int:
        return self.moore_total + self.total_loss

    def _incumbent(self):
        if self.shared is not None:
            val = self.shared.value
            if val >= 0 and (self.best_status is None or val < self.best_status):
                return val
        return self.best_status

    def _leaf(self) -> None:
        counts = layer_counts(self.out, self.n)
        if any(far for _, _, _, far in counts):
            return
        # radius must be exactly 2: no vertex may reach everything in one step
        if any(c2 == 0 and c3 == 0 for _, c2, c3, _ in counts):
            return
        if not self.allow_moore and not any(c3 for _, _, c3, _ in counts):
            return
        status = sum(c1 + 2 * c2 + 3 * c3 for c1, c2, c3, _ in counts)
        best = self._incumbent()
        if best is None or status < best:
            self.best_status = status
            self.best_rel = list(self.rel)
            self.history.append((self.nodes, status))
            if self.shared is not None:
                with self.shared.get_lock():
                    if self.shared.value < 0 or status < self.shared.value:
                        self.shared.value = status

    def _note_open(self, bound: int) -> None:
        if self.open_bound is None or bound < self.open_bound:
            self.open_bound = bound

    def dfs(self, pos: int) -> None:
        self.nodes += 1
        if self.nodes % _CHECK_EVERY == 0 and time.time() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            self._note_open(self.bound())
            return
        if pos == len(self.slots):
            self._leaf()
            return
        i, j = self.slots[pos]
        for val in BRANCH_ORDER:
            if not self._allowed(i, j, val):
                continue
            saved = self._apply(i, j, val)
            best = self._incumbent()
            if (self._budget_ok(i) and self._budget_ok(j)
                    and (best is None or self.bound() < best)
                    and self._lex_ok()):
                self.dfs(pos + 1)
            self._undo(i, j, val, saved)
            if self.timed_out:
                self._note_open(self.bound())
                return

    def replay(self, prefix) -> bool:
        for pos, val in enumerate(prefix):
            i, j = self.slots[pos]
            if not self._allowed(i, j, val):
                return False
            self._apply(i, j, val)
        return True

    def frontier(self, depth: int) -> list:
        """Decision prefixes of all surviving nodes at ``depth`` (no bound pruning)."""
        found = []
        prefix = []

        def walk(pos):
            if pos == depth or pos == len(self.slots):
                found.append(tuple(prefix))
                return
            i, j = self.slots[pos]
            for val in BRANCH_ORDER:
                if not self._allowed(i, j, val):
                    continue
                saved = self._apply(i, j, val)
                if self._budget_ok(i) and self._budget_ok(j) and self._lex_ok():
                    prefix.append(val)
                    walk(pos + 1)
                    prefix.pop()
                self._undo(i, j, val, saved)

        walk(0)
        return found

    def graph_from_rel(self, rel) -> MixedGraph:
        n = self.n
        edges, arcs = [], []
        for i in range(n):
            for j in range(i + 1, n):
                val = rel[i * n + j]
                if val == EDGE:
                    edges.append((i, j))
                elif val == ARC_FWD:
                    arcs.append((i, j))
                elif val == ARC_BWD:
                    arcs.append((j, i))
        return MixedGraph(n, edges, arcs)


_worker_shared = None


def _init_worker(shared):
    global _worker_shared
    _worker_shared = shared


def _run_subtree(args):
    r, z, deadline, use_symmetry, allow_moore, prefix = args
    s = _Search(r, z, deadline, use_symmetry, allow_moore)
    s.shared = _worker_shared
    if s.replay(prefix):
        start_bound = s.bound()
        best = s._incumbent()
        if best is None or start_bound < best:
            s.dfs(len(prefix))
    return s.best_status, s.best_rel, s.nodes, s.timed_out, s.open_bound


def _check_params(r, z, time_limit, thread_budget, max_order):
    for name, val in (("r", r), ("z", z), ("thread_budget", thread_budget)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InvalidParams(f"{name} must be an integer, got {val!r}")
    if r < 0 or z < 0 or r + z < 1:
        raise InvalidParams(f"need r, z >= 0 and r + z >= 1 (got r={r}, z={z})")
    if not time_limit > 0:
        raise InvalidParams("time_limit must be positive")
    if thread_budget < 1:
        raise InvalidParams("thread_budget must be >= 1")
    n = moore_profile(r, z, 2).M
    if n > max_order:
        raise InvalidParams(f"M({r},{z},2) = {n} exceeds the exact-search cap {max_order}")


def solve_exact(r: int, z: int, time_limit: float = 300.0, thread_budget: int = 1,
                seed: int = 0, max_order: int = DEFAULT_MAX_ORDER,
                use_symmetry: bool = True, allow_moore: bool = False) -> SearchReport:
    """Minimum-status RM(r, z, 2) graph by exhaustive branch-and-bound.

    Returns the incumbent with ``proved_optimal=False`` when ``time_limit``
    (seconds) runs out.  Raises :class:`Infeasible` when the search space is
    exhausted without a single radial Moore graph.

    Only diameter-3 graphs qualify unless ``allow_moore`` is set, in which
    case a diameter-2 completion (a genuine mixed Moore graph) may win.
    """
    _check_params(r, z, time_limit, thread_budget, max_order)
    start = time.time()
    deadline = start + time_limit
    search = _Search(r, z, deadline, use_symmetry, allow_moore)
    if thread_budget == 1:
        search.dfs(0)
        best_status, best_rel = search.best_status, search.best_rel
        nodes, timed_out, open_bound = search.nodes, search.timed_out, search.open_bound
        history = search.history
    else:
        depth = min(len(search.slots), 12)
        prefixes = search.frontier(depth)
        shared = mp.Value("q", -1)
        with mp.get_context("fork").Pool(thread_budget, initializer=_init_worker,
                                          initargs=(shared,)) as pool:
            results = pool.map(_run_subtree, [(r, z, deadline, use_symmetry, allow_moore, pf) for pf in prefixes], chunksize=1)
        best_status, best_rel = None, None
        nodes, timed_out, open_bound = 0, False, None
        for status, rel, cnt, tout, ob in results:
            nodes += cnt
            timed_out |= tout
            if ob is not None and (open_bound is None or ob < open_bound):
                open_bound = ob
            if status is not None and (best_status is None or status < best_status):
                best_status, best_rel = status, rel
        history = [(nodes, best_status)] if best_status is not None else []
    wall = time.time() - start

    if not timed_out and best_status is None:
        raise Infeasible(f"no RM({r},{z},2) graph exists (search exhausted after {nodes} nodes)")
    if timed_out:
        candidates = [b for b in (best_status, open_bound) if b is not None]
        lower = min(candidates) if candidates else search.moore_total
    else:
        lower = best_status
    graph = search.graph_from_rel(best_rel) if best_rel is not None else None
    return SearchReport(r, z, "exact", graph, best_status, lower,
                        not timed_out, nodes, wall, seed, history)
