"""Exact minimum-length solver: breadth-first search over canonical states.

A state is a token placement plus the set of gates realized so far; states are
canonicalized by realizing gates greedily (realizing is free and can only
help), which keeps the realized component a downset closed under realization.
BFS by swap count guarantees minimality. Deliberately favors obvious
correctness over speed; this is the ground truth the other solvers are
validated against.
"""

from __future__ import annotations

from collections import deque

from .core import (
    BudgetExceededError,
    Instance,
    Schedule,
    SwapSequence,
    verify,
)

DEFAULT_STATE_BUDGET = 10_000_000


def solve_exact(
    instance: Instance, state_budget: int = DEFAULT_STATE_BUDGET
) -> tuple[SwapSequence, Schedule] | None:
    """Shortest feasible swap sequence, or None when no sequence exists.

    The search is exhaustive over reachable canonical states, so None is only
    possible on disconnected graphs. Raises BudgetExceededError when more than
    `state_budget` states are visited.
    """
    if instance.is_chain_like():
        swaps = _search_chain(instance, state_budget)
    else:
        swaps = _search_poset(instance, state_budget)
    if swaps is None:
        return None
    seq = SwapSequence.of(swaps)
    schedule = verify(instance, seq)
    assert schedule is not None
    return seq, schedule


def _search_chain(instance: Instance, state_budget: int) -> list[tuple[int, int]] | None:
    """BFS for chain-like instances; the realized downset is a prefix length."""
    total = instance.gate_count
    if total > state_budget:
        raise BudgetExceededError(
            f"chain of {total} gates exceeds the state budget {state_budget}"
        )
    pairs = [tuple(sorted(p)) for p in instance.chain_pairs()]
    graph = instance.graph
    edges = graph.sorted_edges()
    first = graph.first_vertex

    def advance(arr: tuple[str, ...], k: int) -> int:
        pos = {t: i + first for i, t in enumerate(arr)}
        while k < total and graph.has_edge(pos[pairs[k][0]], pos[pairs[k][1]]):
            k += 1
        return k

    start_arr = instance.initial.tokens
    start = (start_arr, advance(start_arr, 0))
    if start[1] == total:
        return []
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        arr, k = state = queue.popleft()
        for u, v in edges:
            i, j = u - first, v - first
            nxt = list(arr)
            nxt[i], nxt[j] = nxt[j], nxt[i]
            narr = tuple(nxt)
            nk = advance(narr, k)
            nstate = (narr, nk)
            if nstate in parent:
                continue
            parent[nstate] = (state, (u, v))
            if len(parent) > state_budget:
                raise BudgetExceededError(f"state budget {state_budget} exceeded")
            if nk == total:
                return _reconstruct(parent, nstate)
            queue.append(nstate)
    return None


def _search_poset(instance: Instance, state_budget: int) -> list[tuple[int, int]] | None:
    gates = instance.gates
    preds = instance.poset.predecessors()
    graph = instance.graph
    edges = graph.sorted_edges()
    first = graph.first_vertex
    all_ids = frozenset(g.id for g in gates)

    def close(arr: tuple[str, ...], realized: frozenset[str]) -> frozenset[str]:
        pos = {t: i + first for i, t in enumerate(arr)}
        done = set(realized)
        changed = True
        while changed:
            changed = False
            for g in gates:
                if g.id in done or not preds[g.id] <= done:
                    continue
                a, b = g.pair_sorted()
                if graph.has_edge(pos[a], pos[b]):
                    done.add(g.id)
                    changed = True
        return frozenset(done)

    start_arr = instance.initial.tokens
    start = (start_arr, close(start_arr, frozenset()))
    if start[1] == all_ids:
        return []
    parent: dict[tuple, tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        arr, realized = state = queue.popleft()
        for u, v in edges:
            i, j = u - first, v - first
            nxt = list(arr)
            nxt[i], nxt[j] = nxt[j], nxt[i]
            narr = tuple(nxt)
            nrealized = close(narr, realized)
            nstate = (narr, nrealized)
            if nstate in parent:
                continue
            parent[nstate] = (state, (u, v))
            if len(parent) > state_budget:
                raise BudgetExceededError(f"state budget {state_budget} exceeded")
            if nrealized == all_ids:
                return _reconstruct(parent, nstate)
            queue.append(nstate)
    return None


def _reconstruct(parent: dict, state: tuple) -> list[tuple[int, int]]:
    swaps: list[tuple[int, int]] = []
    entry = parent[state]
    while entry is not None:
        prev, edge = entry
        swaps.append(edge)
        entry = parent[prev]
    swaps.reverse()
    return swaps
