"""Shared test helpers: random instance generation and independent reference
implementations (brute-force schedule search, iterative deepening, restricted
BFS, minimum vertex cover, the budget-indexed recursion). These deliberately
do not reuse the solver code paths they are checking."""

from __future__ import annotations

import itertools
import math
from collections import deque
from random import Random

from swaproute.core import (
    Gate,
    Graph,
    Instance,
    Poset,
    SwapSequence,
    TokenPlacement,
)
from swaproute.reductions import SimpleGraphInput

INF = math.inf


def tokens_for(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def random_path_instance(
    rng: Random,
    n_max: int = 5,
    k_max: int = 3,
    poset_kind: str = "mixed",
    disjoint: bool = False,
    n_min: int = 2,
) -> Instance:
    n = rng.randint(n_min, n_max)
    toks = tokens_for(n)
    init = toks[:]
    rng.shuffle(init)
    k_cap = min(k_max, n // 2) if disjoint else k_max
    k = rng.randint(0, k_cap)
    gates: list[Gate] = []
    if disjoint:
        pool = toks[:]
        rng.shuffle(pool)
        for i in range(k):
            gates.append(Gate.of(f"g{i}", pool.pop(), pool.pop()))
    else:
        for i in range(k):
            a, b = rng.sample(toks, 2)
            gates.append(Gate.of(f"g{i}", a, b))
    ids = [g.id for g in gates]
    if poset_kind == "chain":
        order = ids[:]
        rng.shuffle(order)
        covers = frozenset(zip(order, order[1:]))
    elif poset_kind == "antichain":
        covers = frozenset()
    else:
        covers = frozenset(
            (ids[i], ids[j])
            for i in range(len(ids))
            for j in range(i + 1, len(ids))
            if rng.random() < 0.4
        )
    return Instance(
        graph=Graph.path(n),
        tokens=frozenset(toks),
        gates=tuple(gates),
        poset=Poset(tuple(ids), covers),
        initial=TokenPlacement(tuple(init), 1),
    )


def random_swaps(rng: Random, graph: Graph, length: int) -> list[tuple[int, int]]:
    edges = sorted(graph.edges)
    return [rng.choice(edges) for _ in range(length)]


def closure_of(poset: Poset) -> dict[str, set[str]]:
    """Transitive closure: element -> strict successors."""
    succ = poset.successors()
    out: dict[str, set[str]] = {}
    for e in poset.elements:
        seen: set[str] = set()
        stack = list(succ[e])
        while stack:
            s = stack.pop()
            if s not in seen:
                seen.add(s)
                stack.extend(succ[s])
        out[e] = seen
    return out


def walk_placements(instance: Instance, swaps) -> list[tuple[str, ...]]:
    first = instance.graph.first_vertex
    arr = list(instance.initial.tokens)
    out = [tuple(arr)]
    for u, v in swaps:
        i, j = u - first, v - first
        arr[i], arr[j] = arr[j], arr[i]
        out.append(tuple(arr))
    return out


def brute_monotone_exists(instance: Instance, swaps) -> bool:
    """Does ANY monotone schedule realize every gate? Enumerates, per gate, the
    steps at which its pair is adjacent, then searches the product."""
    graph = instance.graph
    first = graph.first_vertex
    placements = walk_placements(instance, swaps)
    candidates: list[list[int]] = []
    for g in instance.gates:
        a, b = g.pair_sorted()
        steps = []
        for step, arr in enumerate(placements):
            pa, pb = arr.index(a) + first, arr.index(b) + first
            if graph.has_edge(pa, pb):
                steps.append(step)
        if not steps:
            return False
        candidates.append(steps)
    after = closure_of(instance.poset)
    ids = [g.id for g in instance.gates]
    index = {gid: i for i, gid in enumerate(ids)}
    for choice in itertools.product(*candidates):
        ok = True
        for gid, later in after.items():
            for other in later:
                if choice[index[gid]] > choice[index[other]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def iddfs_optimum(instance: Instance, cap: int = 12) -> int | None:
    """Minimum feasible length by iterative deepening over raw swap sequences,
    carrying a greedily realized downset along each prefix."""
    graph = instance.graph
    first = graph.first_vertex
    edges = sorted(graph.edges)
    gates = instance.gates
    preds = instance.poset.predecessors()
    all_ids = frozenset(g.id for g in gates)

    def close(arr: tuple[str, ...], realized: frozenset[str]) -> frozenset[str]:
        done = set(realized)
        changed = True
        while changed:
            changed = False
            for g in gates:
                if g.id in done or not preds[g.id] <= done:
                    continue
                a, b = g.pair_sorted()
                if graph.has_edge(arr.index(a) + first, arr.index(b) + first):
                    done.add(g.id)
                    changed = True
        return frozenset(done)

    start = tuple(instance.initial.tokens)

    def dfs(arr: tuple[str, ...], realized: frozenset[str], depth: int) -> bool:
        if realized == all_ids:
            return True
        if depth == 0:
            return False
        for u, v in edges:
            lst = list(arr)
            i, j = u - first, v - first
            lst[i], lst[j] = lst[j], lst[i]
            nxt = tuple(lst)
            if dfs(nxt, close(nxt, realized), depth - 1):
                return True
        return False

    realized0 = close(start, frozenset())
    for limit in range(cap + 1):
        if dfs(start, realized0, limit):
            return limit
    return None


def zero_one_bfs_optimum(instance: Instance) -> int | None:
    """Minimum feasible length WITHOUT state canonicalization: realizing an
    available gate is an explicit zero-cost move, so non-closed downsets are
    first-class states."""
    graph = instance.graph
    first = graph.first_vertex
    edges = sorted(graph.edges)
    gates = instance.gates
    preds = instance.poset.predecessors()
    all_ids = frozenset(g.id for g in gates)

    start = (tuple(instance.initial.tokens), frozenset())
    dist = {start: 0}
    dq = deque([start])
    while dq:
        state = dq.popleft()
        arr, realized = state
        d = dist[state]
        if realized == all_ids:
            return d
        for g in gates:
            if g.id in realized or not preds[g.id] <= realized:
                continue
            a, b = g.pair_sorted()
            if graph.has_edge(arr.index(a) + first, arr.index(b) + first):
                nxt = (arr, realized | {g.id})
                if nxt not in dist:
                    dist[nxt] = d
                    dq.appendleft(nxt)
        for u, v in edges:
            lst = list(arr)
            i, j = u - first, v - first
            lst[i], lst[j] = lst[j], lst[i]
            nxt = (tuple(lst), realized)
            if nxt not in dist:
                dist[nxt] = d + 1
                dq.append(nxt)
    return None


def gap_vectors(kt: int, n: int) -> list[tuple[int, ...]]:
    """All gap vectors of dimension kt whose positions fit on 1..n."""
    out = []
    for combo in itertools.combinations(range(1, n + 1), kt):
        prev = 0
        vec = []
        for v in combo:
            vec.append(v - prev)
            prev = v
        out.append(tuple(vec))
    return out


def restricted_bfs_distance(x: tuple[int, ...], y: tuple[int, ...], n: int) -> int:
    """Shortest swap count from a placement with gap vector x to any placement
    with gap vector y and the same special order, never swapping two specials."""
    kt = len(x)
    specials = [f"S{i}" for i in range(kt)]
    fillers = [f"f{i}" for i in range(n - kt)]
    arr: list[str | None] = [None] * n
    acc = 0
    for i, g in enumerate(x):
        acc += g
        arr[acc - 1] = specials[i]
    it = iter(fillers)
    for i in range(n):
        if arr[i] is None:
            arr[i] = next(it)
    targets = []
    acc = 0
    for g in y:
        acc += g
        targets.append(acc)

    def special_positions(state: tuple[str, ...]) -> list[int]:
        return [p + 1 for p, t in enumerate(state) if t.startswith("S")]

    start = tuple(arr)
    if special_positions(start) == targets:
        return 0
    dist = {start: 0}
    dq = deque([start])
    while dq:
        state = dq.popleft()
        for i in range(n - 1):
            if state[i].startswith("S") and state[i + 1].startswith("S"):
                continue
            lst = list(state)
            lst[i], lst[i + 1] = lst[i + 1], lst[i]
            nxt = tuple(lst)
            if nxt in dist:
                continue
            dist[nxt] = dist[state] + 1
            if special_positions(nxt) == targets:
                return dist[nxt]
            dq.append(nxt)
    raise AssertionError("target signature unreachable")


def min_vertex_cover(h: SimpleGraphInput) -> int:
    verts = list(h.vertices)
    for size in range(len(verts) + 1):
        for combo in itertools.combinations(verts, size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in h.edges):
                return size
    raise AssertionError("unreachable")


def all_simple_graphs(max_n: int):
    for n in range(1, max_n + 1):
        verts = tuple(str(i) for i in range(1, n + 1))
        pairs = list(itertools.combinations(verts, 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
            yield SimpleGraphInput(verts, edges)


def budgeted_recursion_value(instance: Instance, order, budget: int) -> float:
    """Direct evaluation of the budget-indexed recursion restricted to the two
    one-token gap closings; the budget caps the number of moves."""
    by_id = instance.gates_by_id()
    chain = [by_id[gid].pair for gid in order]
    k = len(chain)
    if k == 0:
        return 0
    specials = sorted(set().union(*chain))
    placed = sorted(
        (i + 1, t) for i, t in enumerate(instance.initial.tokens) if t in specials
    )
    x0, sigma0, prev = [], [], 0
    for vertex, token in placed:
        x0.append(vertex - prev)
        sigma0.append(token)
        prev = vertex
    kt = len(x0)

    def endpoints(x: tuple[int, ...], p: int):
        gap = x[p + 1]
        left = list(x)
        left[p + 1] = 1
        if p + 2 < kt:
            left[p + 2] += gap - 1
        right = list(x)
        right[p + 1] = 1
        right[p] += gap - 1
        cands = {tuple(left), tuple(right)}
        return cands

    memo: dict[tuple, float] = {}

    def g(x: tuple[int, ...], sigma: tuple[str, ...], suffix: int, budget: int) -> float:
        if suffix == k:
            return 0
        if budget == 0:
            return INF
        key = (x, sigma, suffix, budget)
        if key in memo:
            return memo[key]
        best = INF
        for p in range(kt - 1):
            swapped = list(sigma)
            swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
            for y in endpoints(x, p):
                best = min(best, g(y, tuple(swapped), suffix, budget - 1) + x[p + 1])
        pair = chain[suffix]
        for p in range(kt - 1):
            if {sigma[p], sigma[p + 1]} == pair:
                for y in endpoints(x, p):
                    best = min(best, g(y, sigma, suffix + 1, budget - 1) + x[p + 1] - 1)
                break
        memo[key] = best
        return best

    return g(tuple(x0), tuple(sigma0), 0, budget)


def sequence_feasible_brute(instance: Instance, swaps) -> bool:
    return brute_monotone_exists(instance, swaps)


def schedule_is_valid(instance: Instance, swaps, schedule: dict[str, int]) -> bool:
    """Check the two schedule invariants directly: monotone on the closure and
    realized at the scheduled step."""
    graph = instance.graph
    first = graph.first_vertex
    placements = walk_placements(instance, swaps)
    after = closure_of(instance.poset)
    for gid, later in after.items():
        for other in later:
            if schedule[gid] > schedule[other]:
                return False
    for g in instance.gates:
        arr = placements[schedule[g.id]]
        a, b = g.pair_sorted()
        if not graph.has_edge(arr.index(a) + first, arr.index(b) + first):
            return False
    return True


def make_instance(
    n: int,
    initial: list[str],
    gates: dict[str, tuple[str, str]],
    covers=(),
    chain=None,
    kind: str = "path",
) -> Instance:
    if kind == "path":
        graph = Graph.path(n)
    elif kind == "star":
        graph = Graph.star(n)
    else:
        raise ValueError(kind)
    gs = tuple(Gate.of(gid, a, b) for gid, (a, b) in gates.items())
    ids = tuple(gates.keys())
    if chain is not None:
        poset = Poset(ids, frozenset(zip(chain, chain[1:])))
    else:
        poset = Poset(ids, frozenset(covers))
    return Instance(
        graph=graph,
        tokens=frozenset(initial),
        gates=gs,
        poset=poset,
        initial=TokenPlacement(tuple(initial), graph.first_vertex),
    )
