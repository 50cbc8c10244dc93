"""Fixed-parameter solver for path instances, parameterized by the gate count.

A placement is compressed to a signature (x, sigma): sigma lists the special
tokens (those appearing in some gate) left to right, and x[i] is the distance
from the previous special token (x[0] measures from the virtual position 0).
The minimum number of swaps between two placements sharing sigma is the sum of
componentwise position differences, achievable without ever exchanging two
special tokens.

For a chain of gates the optimum is the shortest-path distance over states
(signature, number of leading gates realized), where each move either swaps
two sigma-adjacent specials (changing sigma) or realizes the next gate; in
both cases it suffices to close the relevant gap by moving only one of its two
endpoints, giving two candidate successors per gap. General posets are handled
by taking the minimum over all linear extensions. This solver is an exactness
reference for small gate counts, not a production router.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .core import (
    BudgetExceededError,
    Gate,
    Instance,
    Schedule,
    SwapSequence,
    TokenPlacement,
    linear_extensions,
    verify,
)

DEFAULT_STATE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Signature:
    """Gap vector plus left-to-right order of the special tokens."""

    x: tuple[int, ...]
    sigma: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.x) != len(self.sigma):
            raise ValueError("gap vector and token order must have equal length")
        if any(g < 1 for g in self.x):
            raise ValueError("every gap must be >= 1")


@dataclass(frozen=True)
class SigState:
    """Search node: signature plus the count of leading chain gates realized."""

    sig: Signature
    suffix: int


def signature_of(placement: TokenPlacement, specials) -> Signature:
    """Signature of a placement with respect to the given special-token set."""
    specials = set(specials)
    if not specials:
        raise ValueError("special token set must be nonempty")
    placed = [
        (i + placement.first_vertex, t)
        for i, t in enumerate(placement.tokens)
        if t in specials
    ]
    if len(placed) != len(specials):
        missing = specials - {t for _, t in placed}
        raise ValueError(f"special tokens not placed: {sorted(missing)}")
    gaps: list[int] = []
    sigma: list[str] = []
    prev = 0
    for vertex, token in placed:
        gaps.append(vertex - prev)
        sigma.append(token)
        prev = vertex
    return Signature(tuple(gaps), tuple(sigma))


def placement_from_signature(sig: Signature, filler, n: int) -> TokenPlacement:
    """A placement with the given signature; fillers occupy the remaining
    vertices left to right. Inverse of signature_of up to filler order."""
    filler = list(filler)
    kt = len(sig.x)
    if len(filler) != n - kt:
        raise ValueError(f"need {n - kt} filler tokens, got {len(filler)}")
    positions = _prefix_positions(sig.x)
    if positions[-1] > n:
        raise ValueError(f"signature spans {positions[-1]} vertices but n = {n}")
    arr: list[str | None] = [None] * n
    for vertex, token in zip(positions, sig.sigma):
        arr[vertex - 1] = token
    it = iter(filler)
    for i in range(n):
        if arr[i] is None:
            arr[i] = next(it)
    return TokenPlacement(tuple(arr), 1)


def _prefix_positions(x: tuple[int, ...]) -> list[int]:
    out: list[int] = []
    acc = 0
    for g in x:
        acc += g
        out.append(acc)
    return out


def sig_distance(x, y) -> int:
    """Minimum swaps between two placements sharing sigma: sum of the
    componentwise differences of the special-token positions."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise ValueError(f"gap vectors have different dimensions {len(x)} and {len(y)}")
    if any(g < 1 for g in x) or any(g < 1 for g in y):
        raise ValueError("every gap must be >= 1")
    return sum(abs(v - w) for v, w in zip(_prefix_positions(x), _prefix_positions(y)))


def _close_gap_endpoints(x: tuple[int, ...], p: int) -> tuple[tuple[int, ...], ...]:
    """The two ways to make specials p and p+1 adjacent by moving one of them.

    Moving p+1 left spills the displaced fillers right (into the trailing
    region when p+1 is the last gap index); moving p right spills them left.
    Returns the pair (move-right-token-left, move-left-token-right), deduped.
    """
    kt = len(x)
    gap = x[p + 1]
    left = list(x)
    left[p + 1] = 1
    if p + 2 < kt:
        left[p + 2] += gap - 1
    right = list(x)
    right[p + 1] = 1
    right[p] += gap - 1
    if left == right:
        return (tuple(left),)
    return (tuple(left), tuple(right))


def neighbors(state: SigState, chain: list[Gate]) -> list[tuple[SigState, int]]:
    """Successor states with costs.

    For every sigma-adjacent pair of specials: the two gap-closing signatures
    with the pair transposed, at cost gap (gap-1 swaps to become adjacent plus
    the transposition itself). When the next unrealized gate's tokens are
    sigma-adjacent: the two gap-closing signatures with suffix advanced, at
    cost gap-1.
    """
    x, sigma = state.sig.x, state.sig.sigma
    kt = len(x)
    out: dict[SigState, int] = {}
    for p in range(kt - 1):
        cost = x[p + 1]
        swapped = list(sigma)
        swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
        new_sigma = tuple(swapped)
        for y in _close_gap_endpoints(x, p):
            nxt = SigState(Signature(y, new_sigma), state.suffix)
            if nxt not in out or cost < out[nxt]:
                out[nxt] = cost
    if state.suffix < len(chain):
        pair = chain[state.suffix].pair
        for p in range(kt - 1):
            if {sigma[p], sigma[p + 1]} == pair:
                cost = x[p + 1] - 1
                for y in _close_gap_endpoints(x, p):
                    nxt = SigState(Signature(y, sigma), state.suffix + 1)
                    if nxt not in out or cost < out[nxt]:
                        out[nxt] = cost
                break
    return list(out.items())


def l_max(k: int) -> int:
    """((2k)! + 1) * k: bound on the number of moves an optimal solution needs."""
    if k < 0:
        raise ValueError("gate count must be >= 0")
    return (math.factorial(2 * k) + 1) * k


def solve_chain(
    instance: Instance,
    order: tuple[str, ...] | None = None,
    *,
    bound: int | None = None,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> tuple[SwapSequence, Schedule] | None:
    """Optimal routing for a chain (or a supplied linear order of the gates).

    Dijkstra over (signature, realized-prefix) states; the swap sequence is
    rebuilt by expanding each move into unit swaps on the full placement.
    Returns None only when `bound` is given and no solution shorter than it
    exists. Raises BudgetExceededError past `state_budget` settled states.
    """
    if instance.graph.kind != "path":
        raise ValueError("the fixed-parameter solver requires a path graph")
    if instance.repeat is not None:
        raise ValueError("expand the compressed chain or use the exact solver")
    by_id = instance.gates_by_id()
    if order is None:
        order = instance.poset.chain_order()
    chain = [by_id[gid] for gid in order]
    k = len(chain)
    if k == 0:
        seq = SwapSequence(())
        schedule = verify(instance, seq)
        assert isinstance(schedule, dict)
        return seq, schedule

    specials: set[str] = set()
    for g in chain:
        specials |= g.pair
    sig0 = signature_of(instance.initial, specials)
    kt = len(sig0.x)

    # Any reachable gap is 1 + a sum of consecutive initial filler blocks.
    blocks = [g - 1 for g in sig0.x]
    achievable = {0}
    for a in range(kt):
        acc = 0
        for b in range(a, kt):
            acc += blocks[b]
            achievable.add(acc)

    start = SigState(sig0, 0)
    dist: dict[SigState, int] = {start: 0}
    parent: dict[SigState, SigState] = {}
    heap: list[tuple[int, int, SigState]] = [(0, 0, start)]
    tie = 0
    settled: set[SigState] = set()
    goal: SigState | None = None
    while heap:
        d, _, st = heapq.heappop(heap)
        if st in settled:
            continue
        if bound is not None and d >= bound:
            return None
        settled.add(st)
        if len(settled) > state_budget:
            raise BudgetExceededError(f"state budget {state_budget} exceeded")
        if st.suffix == k:
            goal = st
            break
        for nxt, cost in neighbors(st, chain):
            assert all(g - 1 in achievable for g in nxt.sig.x), (
                "reached a gap that is not a consecutive-block sum"
            )
            nd = d + cost
            if nxt not in dist or nd < dist[nxt]:
                dist[nxt] = nd
                parent[nxt] = st
                tie += 1
                heapq.heappush(heap, (nd, tie, nxt))
    if goal is None:
        return None

    moves: list[tuple[SigState, SigState]] = []
    cur = goal
    while cur != start:
        prev = parent[cur]
        moves.append((prev, cur))
        cur = prev
    moves.reverse()

    seq = SwapSequence.of(_expand_moves(instance, chain, moves))
    assert len(seq) == dist[goal]
    schedule = verify(instance, seq)
    assert isinstance(schedule, dict)
    return seq, schedule


def _expand_moves(
    instance: Instance,
    chain: list[Gate],
    moves: list[tuple[SigState, SigState]],
) -> list[tuple[int, int]]:
    """Expand signature moves into concrete unit swaps on the full placement."""
    arr = list(instance.initial.tokens)
    pos = {t: i + 1 for i, t in enumerate(arr)}
    edges: list[tuple[int, int]] = []

    def shift(token: str, target: int) -> None:
        # One edge swap at a time; never crosses another special token.
        while pos[token] > target:
            _swap_vertices(arr, pos, pos[token] - 1, pos[token], edges)
        while pos[token] < target:
            _swap_vertices(arr, pos, pos[token], pos[token] + 1, edges)

    for prev, cur in moves:
        sigma = prev.sig.sigma
        targets = _prefix_positions(cur.sig.x)
        before = len(edges)
        expected = sig_distance(prev.sig.x, cur.sig.x)
        # Left-movers first (left to right), then right-movers (right to left):
        # order keeps every corridor free of other specials.
        for p in range(len(sigma)):
            if targets[p] < pos[sigma[p]]:
                shift(sigma[p], targets[p])
        for p in reversed(range(len(sigma))):
            if targets[p] > pos[sigma[p]]:
                shift(sigma[p], targets[p])
        assert len(edges) - before == expected
        assert [pos[t] for t in sigma] == targets  # specials never crossed
        if cur.suffix == prev.suffix:
            p = _changed_index(sigma, cur.sig.sigma)
            _swap_vertices(arr, pos, targets[p], targets[p] + 1, edges)
    return edges


def _swap_vertices(
    arr: list[str], pos: dict[str, int], u: int, v: int, edges: list[tuple[int, int]]
) -> None:
    a, b = arr[u - 1], arr[v - 1]
    arr[u - 1], arr[v - 1] = b, a
    pos[a], pos[b] = v, u
    edges.append((u, v))


def _changed_index(old: tuple[str, ...], new: tuple[str, ...]) -> int:
    for i, (a, b) in enumerate(zip(old, new)):
        if a != b:
            return i
    raise AssertionError("sigma change without a transposition")


def solve_fpt(
    instance: Instance, *, state_budget: int = DEFAULT_STATE_BUDGET
) -> tuple[SwapSequence, Schedule]:
    """Optimal routing for any poset on a path: minimum of solve_chain over all
    linear extensions, ties broken by the first extension found."""
    if instance.graph.kind != "path":
        raise ValueError("the fixed-parameter solver requires a path graph")
    if instance.repeat is not None:
        raise ValueError("expand the compressed chain or use the exact solver")
    if not instance.gates:
        seq = SwapSequence(())
        schedule = verify(instance, seq)
        assert isinstance(schedule, dict)
        return seq, schedule
    best: tuple[SwapSequence, Schedule] | None = None
    for order in linear_extensions(instance.poset):
        bound = len(best[0]) if best is not None else None
        result = solve_chain(instance, order, bound=bound, state_budget=state_budget)
        if result is not None:
            best = result
    assert best is not None
    return best
