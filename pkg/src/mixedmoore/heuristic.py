"""Degree-preserving swap search for low-status radial Moore graphs.

Starts from the Moore tree completed by random stub matching and climbs
``F(g) = W * violations(g) + capped_status(g)`` with 2-swaps of edges or arcs
that never touch the tree.  Moves with ``dF <= 0`` are accepted; the reverse
of recent moves is tabu so plateaus do not cycle.  A restart draws a fresh
completion once ``patience`` iterations pass without improving the restart's
best value.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, replace
from typing import NamedTuple

from ._bits import layer_counts
from .errors import DegreeParity, InvalidParams, StubFailure
from .exact import SearchReport
from .graph import MixedGraph
from .moore import moore_profile, moore_tree

log = logging.getLogger(__name__)

EDGE_2SWAP, ARC_2SWAP = "edge", "arc"


@dataclass(frozen=True)
class HeuristicConfig:
    seed: int = 0
    restarts: int = 50
    max_iters: int = 20000
    tabu_len: int = 16
    weight: int | None = None  # infeasibility weight; None means 10 * n**2
    patience: int = 400
    allow_moore: bool = False
    debug: bool = False  # re-check invariants after every accepted move

    def resolved(self, n: int) -> "HeuristicConfig":
        w = 10 * n * n if self.weight is None else self.weight
        if w <= 3 * n * n:
            raise InvalidParams(f"infeasibility weight {w} must exceed 3 * n^2 = {3 * n * n}")
        return replace(self, weight=w)


class SwapMove(NamedTuple):
    kind: str
    removed: tuple
    added: tuple


def _check(r, z):
    for name, val in (("r", r), ("z", z)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InvalidParams(f"{name} must be an integer, got {val!r}")
    if r < 0 or z < 0 or r + z < 1:
        raise InvalidParams(f"need r, z >= 0 and r + z >= 1 (got r={r}, z={z})")
    n = moore_profile(r, z, 2).M
    if (n * r) % 2:
        raise DegreeParity(f"n*r = {n}*{r} is odd: no totally ({r},{z})-regular graph on {n} vertices")
    return n


def _pair(u, v):
    return (u, v) if u < v else (v, u)


def random_regular_completion(r: int, z: int, seed: int = 0, attempts: int = 2000) -> MixedGraph:
    """Moore tree plus random edges and arcs until totally (r, z)-regular."""
    n = _check(r, z)
    tree = moore_tree(r, z).graph
    rng = random.Random(f"completion:{seed}")
    deg = [0] * n
    outd = [0] * n
    ind = [0] * n
    for u, v in tree.edges:
        deg[u] += 1
        deg[v] += 1
    for u, v in tree.arcs:
        outd[u] += 1
        ind[v] += 1
    for _ in range(attempts):
        taken = {_pair(u, v) for u, v in tree.edges | tree.arcs}
        edges = set(tree.edges)
        arcs = set(tree.arcs)
        stubs = [v for v in range(n) for _ in range(r - deg[v])]
        ok = True
        while stubs and ok:
            u = stubs.pop(rng.randrange(len(stubs)))
            options = [k for k, v in enumerate(stubs) if v != u and _pair(u, v) not in taken]
            if not options:
                ok = False
                break
            v = stubs.pop(rng.choice(options))
            edges.add(_pair(u, v))
            taken.add(_pair(u, v))
        if not ok:
            continue
        outs = [v for v in range(n) for _ in range(z - outd[v])]
        ins = [v for v in range(n) for _ in range(z - ind[v])]
        rng.shuffle(outs)
        for u in outs:
            options = [k for k, v in enumerate(ins) if v != u and _pair(u, v) not in taken]
            if not options:
                ok = False
                break
            v = ins.pop(rng.choice(options))
            arcs.add((u, v))
            taken.add(_pair(u, v))
        if ok:
            return MixedGraph(n, edges, arcs)
    raise StubFailure(f"no regular completion of the ({r},{z}) Moore tree after {attempts} attempts")


def _masks(n, edges, arcs):
    out = [0] * n
    for u, v in edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    for u, v in arcs:
        out[u] |= 1 << v
    return out


def evaluate(out, n: int, weight: int, allow_moore: bool = False):
    """``(F, violations, capped_status)`` for out-neighbour masks.

    Violations count ordered pairs farther than 3 apart, plus one if no
    vertex has eccentricity <= 2, plus one if the diameter is below 3 (unless
    ``allow_moore``).
    """
    counts = layer_counts(out, n)
    far = sum(c[3] for c in counts)
    no_center = 0 if any(c[2] == 0 and c[3] == 0 for c in counts) else 1
    capped = sum(c1 + 2 * c2 + 3 * (c3 + c4) for c1, c2, c3, c4 in counts)
    viol = far + no_center
    if not allow_moore and far == 0 and not any(c[2] for c in counts):
        viol += 1
    return weight * viol + capped, viol, capped


def apply_move(out, move: SwapMove) -> list:
    """Out-masks after ``move`` (the input list is left untouched)."""
    new = list(out)
    if move.kind == EDGE_2SWAP:
        for u, v in move.removed:
            new[u] &= ~(1 << v)
            new[v] &= ~(1 << u)
        for u, v in move.added:
            new[u] |= 1 << v
            new[v] |= 1 << u
    else:
        for u, v in move.removed:
            new[u] &= ~(1 << v)
        for u, v in move.added:
            new[u] |= 1 << v
    return new


def neighbourhood(edges, arcs, frozen_edges, frozen_arcs, rng) -> list:
    """All legal 2-swaps of free links, shuffled."""
    taken = {_pair(u, v) for u, v in edges} | {_pair(u, v) for u, v in arcs}
    moves = []
    free_e = sorted(edges - frozen_edges)
    for k, (a, b) in enumerate(free_e):
        for c, d in free_e[k + 1:]:
            for cc, dd in ((c, d), (d, c)):
                if len({a, b, cc, dd}) < 4:
                    continue
                e1, e2 = _pair(a, cc), _pair(b, dd)
                if e1 in taken or e2 in taken:
                    continue
                moves.append(SwapMove(EDGE_2SWAP, ((a, b), (c, d)), (e1, e2)))
    free_a = sorted(arcs - frozen_arcs)
    for k, (a, b) in enumerate(free_a):
        for c, d in free_a[k + 1:]:
            if a == c or b == d or a == d or c == b:
                continue
            if _pair(a, d) in taken or _pair(c, b) in taken:
                continue
            moves.append(SwapMove(ARC_2SWAP, ((a, b), (c, d)), ((a, d), (c, b))))
    rng.shuffle(moves)
    return moves


def _degrees(n, edges, arcs):
    und, out, inn = [0] * n, [0] * n, [0] * n
    for u, v in edges:
        und[u] += 1
        und[v] += 1
    for u, v in arcs:
        out[u] += 1
        inn[v] += 1
    return und, out, inn


def _check_state(n, edges, arcs, tree, degrees, f, prev_f):
    if _degrees(n, edges, arcs) != degrees:
        raise AssertionError("swap changed a degree")
    if not (tree.edges <= edges and tree.arcs <= arcs):
        raise AssertionError("swap removed a Moore-tree link")
    if f > prev_f:
        raise AssertionError(f"objective rose from {prev_f} to {f}")


def _one_restart(r, z, cfg: HeuristicConfig, index: int, deadline: float):
    n = moore_profile(r, z, 2).M
    tree = moore_tree(r, z).graph
    rng = random.Random(f"restart:{cfg.seed}:{index}")
    g = random_regular_completion(r, z, seed=rng.getrandbits(63))
    edges, arcs = set(g.edges), set(g.arcs)
    out = _masks(n, edges, arcs)
    f, viol, capped = evaluate(out, n, cfg.weight, cfg.allow_moore)
    best = (f, viol, capped, frozenset(edges), frozenset(arcs)) if viol == 0 else None
    local_best = f
    degrees = _degrees(n, edges, arcs) if cfg.debug else None
    since = 0
    tabu = []
    iters = 0
    while iters < cfg.max_iters and since < cfg.patience and time.time() < deadline:
        iters += 1
        chosen = None
        sideways = None
        for mv in neighbourhood(edges, arcs, tree.edges, tree.arcs, rng):
            if any(set(link) in tabu for link in mv.added):
                continue
            new = apply_move(out, mv)
            nf, nviol, ncap = evaluate(new, n, cfg.weight, cfg.allow_moore)
            if nf < f:
                chosen = (mv, new, nf, nviol, ncap)
                break
            if nf == f and sideways is None:
                sideways = (mv, new, nf, nviol, ncap)
        if chosen is None:
            chosen = sideways
        if chosen is None:
            break
        prev_f = f
        mv, out, f, viol, capped = chosen
        if mv.kind == EDGE_2SWAP:
            edges.difference_update(mv.removed)
            edges.update(mv.added)
        else:
            arcs.difference_update(mv.removed)
            arcs.update(mv.added)
        if cfg.debug:
            _check_state(n, edges, arcs, tree, degrees, f, prev_f)
        tabu.extend(set(link) for link in mv.removed)
        del tabu[:-cfg.tabu_len or None]
        if f < local_best:
            local_best = f
            since = 0
        else:
            since += 1
        if viol == 0 and (best is None or f < best[0]):
            best = (f, viol, capped, frozenset(edges), frozenset(arcs))
    return best, iters


def _restart_task(args):
    return _one_restart(*args)


def solve_heuristic(r: int, z: int, config: HeuristicConfig | None = None,
                    time_limit: float = 300.0, threads: int = 1) -> SearchReport:
    """Best feasible graph over independent restarts; never claims optimality."""
    n = _check(r, z)
    if not time_limit > 0:
        raise InvalidParams("time_limit must be positive")
    cfg = (config or HeuristicConfig()).resolved(n)
    start = time.time()
    deadline = start + time_limit
    tasks = [(r, z, cfg, i, deadline) for i in range(cfg.restarts)]
    if threads > 1:
        import multiprocessing as mp
        with mp.get_context("fork").Pool(threads) as pool:
            results = pool.map(_restart_task, tasks, chunksize=1)
    else:
        results = []
        for t in tasks:
            if time.time() >= deadline:
                break
            results.append(_restart_task(t))
    best = None
    iters = 0
    history = []
    for i, (res, it) in enumerate(results):
        iters += it
        if res is not None and (best is None or res[0] < best[0]):
            best = res
            history.append((i, res[2]))
            log.info("restart %d: status %d", i, res[2])
    graph = MixedGraph(n, best[3], best[4]) if best else None
    status = best[2] if best else None
    lower = moore_profile(r, z, 2).s_total
    return SearchReport(r, z, "heuristic", graph, status, lower, False, iters,
                        time.time() - start, cfg.seed, history)
