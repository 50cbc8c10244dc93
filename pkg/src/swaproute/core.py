"""Problem model for swap minimization: graphs, token placements, gate posets,
swap sequences, and the greedy feasibility verifier.

Vertices are 1..n for paths and explicit graphs, and 0..n-1 for stars (0 is the
center). A token placement is a bijection from vertices to tokens; a swap
exchanges the tokens on the two endpoints of an edge. A swap sequence is
feasible when some monotone schedule realizes every gate's token pair on an
edge of the graph.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass


class RoutingError(Exception):
    """Base class for routing errors."""


class InvalidEdgeError(RoutingError):
    """A swap named a vertex pair that is not an edge of the graph."""


class UnknownTokenError(RoutingError):
    """A token was looked up that is not placed on any vertex."""


class BudgetExceededError(RoutingError):
    """A solver or generator ran past its configured resource budget."""


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    """Return the unordered pair (u, v) as a sorted tuple."""
    if u == v:
        raise ValueError(f"self-loop edge ({u}, {v})")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Architecture graph. `kind` is one of "path", "star", "explicit"."""

    n: int
    kind: str
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if self.kind == "path":
            expected = frozenset((i, i + 1) for i in range(1, self.n))
            if self.edges != expected:
                raise ValueError("path graph must have edges {i, i+1} for i in 1..n-1")
        elif self.kind == "star":
            expected = frozenset((0, i) for i in range(1, self.n))
            if self.edges != expected:
                raise ValueError("star graph must have edges {0, i} for i in 1..n-1")
        elif self.kind == "explicit":
            lo, hi = self.first_vertex, self.first_vertex + self.n - 1
            for u, v in self.edges:
                if u == v:
                    raise ValueError(f"self-loop edge ({u}, {v})")
                if not (lo <= u <= hi and lo <= v <= hi):
                    raise ValueError(f"edge ({u}, {v}) out of vertex range {lo}..{hi}")
        else:
            raise ValueError(f"unknown graph kind {self.kind!r}")

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, "path", frozenset((i, i + 1) for i in range(1, n)))

    @classmethod
    def star(cls, n: int) -> Graph:
        return cls(n, "star", frozenset((0, i) for i in range(1, n)))

    @classmethod
    def explicit(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, "explicit", frozenset(normalize_edge(u, v) for u, v in edges))

    @property
    def first_vertex(self) -> int:
        return 0 if self.kind == "star" else 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(range(self.first_vertex, self.first_vertex + self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {self.first_vertex}
        stack = [self.first_vertex]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class TokenPlacement:
    """Bijection from vertices to tokens.

    tokens[i] is the token on vertex first_vertex + i, so the tuple follows the
    graph's vertex order.
    """

    tokens: tuple[str, ...]
    first_vertex: int = 1

    def __post_init__(self) -> None:
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("token placement is not a bijection (duplicate token)")

    def token_at(self, vertex: int) -> str:
        return self.tokens[vertex - self.first_vertex]

    def vertex_of(self, token: str) -> int:
        try:
            return self.tokens.index(token) + self.first_vertex
        except ValueError:
            raise UnknownTokenError(f"token {token!r} is not placed") from None

    def positions(self) -> dict[str, int]:
        """Token -> vertex map (fresh dict; callers may mutate their copy)."""
        return {t: i + self.first_vertex for i, t in enumerate(self.tokens)}

    def swapped(self, u: int, v: int) -> TokenPlacement:
        """Placement with the tokens on vertices u and v exchanged (unchecked)."""
        arr = list(self.tokens)
        i, j = u - self.first_vertex, v - self.first_vertex
        arr[i], arr[j] = arr[j], arr[i]
        return TokenPlacement(tuple(arr), self.first_vertex)


@dataclass(frozen=True)
class Gate:
    """A two-token operation. Distinct gates may share the same pair."""

    id: str
    pair: frozenset[str]

    def __post_init__(self) -> None:
        if len(self.pair) != 2:
            raise ValueError(f"gate {self.id!r} needs two distinct tokens")

    @classmethod
    def of(cls, gate_id: str, a: str, b: str) -> Gate:
        return cls(gate_id, frozenset((a, b)))

    def pair_sorted(self) -> tuple[str, str]:
        a, b = sorted(self.pair)
        return (a, b)


@dataclass(frozen=True)
class Poset:
    """Precedence over gate ids, stored as a cover DAG; the order is its
    transitive closure."""

    elements: tuple[str, ...]
    covers: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        for a, b in self.covers:
            if a not in elems or b not in elems:
                raise ValueError(f"cover ({a!r}, {b!r}) references unknown element")
            if a == b:
                raise ValueError(f"reflexive cover on {a!r}")
        # Kahn's algorithm just to reject cycles.
        order = list(self._topological())
        if len(order) != len(self.elements):
            raise ValueError("precedence covers contain a cycle")

    @classmethod
    def chain(cls, ids: Iterable[str]) -> Poset:
        ids = tuple(ids)
        return cls(ids, frozenset(zip(ids, ids[1:])))

    @classmethod
    def antichain(cls, ids: Iterable[str]) -> Poset:
        return cls(tuple(ids), frozenset())

    def predecessors(self) -> dict[str, set[str]]:
        """Direct predecessors (cover parents) of each element."""
        preds: dict[str, set[str]] = {e: set() for e in self.elements}
        for a, b in self.covers:
            preds[b].add(a)
        return preds

    def successors(self) -> dict[str, set[str]]:
        succs: dict[str, set[str]] = {e: set() for e in self.elements}
        for a, b in self.covers:
            succs[a].add(b)
        return succs

    def _topological(self) -> Iterator[str]:
        indeg = {e: 0 for e in self.elements}
        for _, b in self.covers:
            indeg[b] += 1
        succs = self.successors()
        ready = [e for e in self.elements if indeg[e] == 0]
        while ready:
            e = ready.pop()
            yield e
            for s in succs[e]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)

    def is_chain(self) -> bool:
        """True iff the transitive closure is a total order."""
        try:
            self.chain_order()
        except ValueError:
            return False
        return True

    def chain_order(self) -> tuple[str, ...]:
        """The unique linear order when the poset is a chain, else ValueError."""
        indeg = {e: 0 for e in self.elements}
        for _, b in self.covers:
            indeg[b] += 1
        succs = self.successors()
        ready = [e for e in self.elements if indeg[e] == 0]
        out: list[str] = []
        while ready:
            if len(ready) != 1:
                raise ValueError("poset is not a chain")
            e = ready.pop()
            out.append(e)
            for s in succs[e]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
        if len(out) != len(self.elements):
            raise ValueError("precedence covers contain a cycle")
        return tuple(out)


@dataclass(frozen=True)
class CompressedChain:
    """Chain poset given as repeated blocks of gate ids (the i-th chain element
    is the i-th id in the expansion). Avoids materializing the huge chains the
    hardness reduction produces."""

    blocks: tuple[tuple[int, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        for count, block in self.blocks:
            if count < 1:
                raise ValueError("repeat count must be >= 1")
            if not block:
                raise ValueError("repeat block must be nonempty")

    def total_gates(self) -> int:
        return sum(count * len(block) for count, block in self.blocks)

    def gate_ids(self) -> Iterator[str]:
        """Stream the expanded chain of gate ids."""
        for count, block in self.blocks:
            for _ in range(count):
                yield from block


@dataclass(frozen=True)
class Instance:
    """A routing instance: graph, token set, gates, precedence, and the initial
    placement. `repeat`, when present, replaces the poset by a compressed chain
    over the declared gates (which then act as pair prototypes)."""

    graph: Graph
    tokens: frozenset[str]
    gates: tuple[Gate, ...]
    poset: Poset
    initial: TokenPlacement
    repeat: CompressedChain | None = None

    def __post_init__(self) -> None:
        if len(self.tokens) != self.graph.n:
            raise ValueError(
                f"{len(self.tokens)} tokens for {self.graph.n} vertices; "
                "pad with dummy tokens to make the placement a bijection"
            )
        if self.initial.first_vertex != self.graph.first_vertex:
            raise ValueError("initial placement does not match the graph's vertex base")
        if set(self.initial.tokens) != self.tokens:
            raise ValueError("initial placement must place exactly the declared tokens")
        ids = [g.id for g in self.gates]
        if len(set(ids)) != len(ids):
            raise ValueError("gate ids must be unique")
        for g in self.gates:
            for t in g.pair:
                if t not in self.tokens:
                    raise ValueError(f"gate {g.id!r} uses undeclared token {t!r}")
        if self.repeat is None:
            if set(self.poset.elements) != set(ids):
                raise ValueError("poset elements must be exactly the gate ids")
        else:
            if self.poset.elements:
                raise ValueError("compressed-chain instances take an empty poset")
            known = set(ids)
            for _, block in self.repeat.blocks:
                for gid in block:
                    if gid not in known:
                        raise ValueError(f"repeat block references unknown gate {gid!r}")

    @property
    def gate_count(self) -> int:
        return self.repeat.total_gates() if self.repeat is not None else len(self.gates)

    def gates_by_id(self) -> dict[str, Gate]:
        return {g.id: g for g in self.gates}

    def is_chain_like(self) -> bool:
        """Chain poset or compressed chain: realization order is a prefix."""
        return self.repeat is not None or self.poset.is_chain()

    def chain_pairs(self) -> Iterator[frozenset[str]]:
        """Stream the token pairs of a chain-like instance in chain order."""
        by_id = self.gates_by_id()
        if self.repeat is not None:
            for gid in self.repeat.gate_ids():
                yield by_id[gid].pair
        else:
            for gid in self.poset.chain_order():
                yield by_id[gid].pair


@dataclass(frozen=True)
class SwapSequence:
    """Ordered swaps, each an unordered edge stored as a sorted vertex pair."""

    swaps: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> SwapSequence:
        return cls(tuple(normalize_edge(u, v) for u, v in pairs))

    def __len__(self) -> int:
        return len(self.swaps)


# A schedule maps gate id -> index of the placement where the gate is realized.
Schedule = dict[str, int]


@dataclass(frozen=True)
class ChainSchedule:
    """Compact schedule for chain-like instances: realized_after[i] is the
    number of leading chain gates realized by placement f_i."""

    realized_after: tuple[int, ...]
    total_gates: int

    def step_counts(self) -> list[tuple[int, int]]:
        """(step, cumulative realized) at each step where progress was made."""
        out: list[tuple[int, int]] = []
        prev = 0
        for step, cum in enumerate(self.realized_after):
            if cum > prev or (step == 0 and cum > 0):
                out.append((step, cum))
                prev = cum
        return out


def expand_compressed(instance: Instance, cap: int = 100_000) -> Instance:
    """Materialize a compressed-chain instance: one gate per chain occurrence
    (ids suffixed #1, #2, ...) under an explicit chain poset. Only sensible for
    small chains; raises BudgetExceededError past `cap` occurrences."""
    if instance.repeat is None:
        return instance
    total = instance.repeat.total_gates()
    if total > cap:
        raise BudgetExceededError(f"expanding {total} chain occurrences exceeds cap {cap}")
    by_id = instance.gates_by_id()
    occurrences = tuple(
        Gate(f"{gid}#{idx}", by_id[gid].pair)
        for idx, gid in enumerate(instance.repeat.gate_ids(), start=1)
    )
    return Instance(
        graph=instance.graph,
        tokens=instance.tokens,
        gates=occurrences,
        poset=Poset.chain(g.id for g in occurrences),
        initial=instance.initial,
    )


def apply_swap(placement: TokenPlacement, edge: tuple[int, int], graph: Graph) -> TokenPlacement:
    """Exchange the tokens on the endpoints of `edge`; other vertices unchanged."""
    u, v = edge
    if not graph.has_edge(u, v):
        raise InvalidEdgeError(f"({u}, {v}) is not an edge of the {graph.kind} graph")
    return placement.swapped(u, v)


def is_realized(placement: TokenPlacement, pair: Iterable[str], graph: Graph) -> bool:
    """True iff the vertices holding the two tokens are adjacent."""
    a, b = tuple(pair)
    return graph.has_edge(placement.vertex_of(a), placement.vertex_of(b))


def trivial_length_bound(instance: Instance) -> int:
    """|V| * |S|: an upper bound on the optimal length for connected graphs."""
    return instance.graph.n * instance.gate_count


def linear_extensions(poset: Poset) -> Iterator[tuple[str, ...]]:
    """Yield every total order consistent with the poset, each exactly once.

    Backtracks over minimal elements in sorted order, so the stream is
    deterministic. At most |S|! extensions.
    """
    elements = sorted(poset.elements)
    indeg = {e: 0 for e in elements}
    for _, b in poset.covers:
        indeg[b] += 1
    succs = poset.successors()
    prefix: list[str] = []

    def emit() -> Iterator[tuple[str, ...]]:
        if len(prefix) == len(elements):
            yield tuple(prefix)
            return
        for e in elements:
            if indeg[e] == 0 and e not in taken:
                taken.add(e)
                prefix.append(e)
                for s in succs[e]:
                    indeg[s] -= 1
                yield from emit()
                for s in succs[e]:
                    indeg[s] += 1
                prefix.pop()
                taken.discard(e)

    taken: set[str] = set()
    yield from emit()


def _checked_swaps(swaps: SwapSequence | Iterable[tuple[int, int]], graph: Graph) -> list[tuple[int, int]]:
    pairs = swaps.swaps if isinstance(swaps, SwapSequence) else tuple(swaps)
    out = []
    for u, v in pairs:
        if not graph.has_edge(u, v):
            raise InvalidEdgeError(f"swap ({u}, {v}) is not an edge of the graph")
        out.append(normalize_edge(u, v))
    return out


def verify(
    instance: Instance, swaps: SwapSequence | Iterable[tuple[int, int]]
) -> Schedule | ChainSchedule | None:
    """Greedy earliest-realization feasibility check.

    Walks f_0..f_l and at each placement realizes, to a fixpoint, every
    unrealized gate whose predecessors are all realized and whose token pair is
    adjacent (several gates may share a step index). Returns the resulting
    schedule if every gate is realized, else None. Compressed-chain instances
    are verified by streaming and yield a ChainSchedule.

    Raises InvalidEdgeError for a swap that is not an edge (distinct from an
    infeasible sequence).
    """
    edges = _checked_swaps(swaps, instance.graph)
    if instance.repeat is not None:
        return _verify_chain(instance, edges)
    return _verify_poset(instance, edges)


def _verify_chain(instance: Instance, edges: list[tuple[int, int]]) -> ChainSchedule | None:
    graph = instance.graph
    pos = instance.initial.positions()
    vertex_token = {p: t for t, p in pos.items()}
    total = instance.gate_count
    pairs = instance.chain_pairs()
    current = next(pairs, None)
    realized = 0
    realized_after: list[int] = []

    def advance() -> None:
        nonlocal current, realized
        while current is not None:
            a, b = tuple(current)
            if not graph.has_edge(pos[a], pos[b]):
                return
            realized += 1
            current = next(pairs, None)

    advance()
    realized_after.append(realized)
    for u, v in edges:
        tu, tv = vertex_token[u], vertex_token[v]
        vertex_token[u], vertex_token[v] = tv, tu
        pos[tu], pos[tv] = v, u
        advance()
        realized_after.append(realized)
    if realized != total:
        return None
    return ChainSchedule(tuple(realized_after), total)


def _verify_poset(instance: Instance, edges: list[tuple[int, int]]) -> Schedule | None:
    gates = instance.gates
    preds = instance.poset.predecessors()
    succs = instance.poset.successors()
    by_id = instance.gates_by_id()
    pos = instance.initial.positions()
    vertex_token = {p: t for t, p in pos.items()}

    indeg = {gid: len(ps) for gid, ps in preds.items()}
    schedule: Schedule = {}

    def adjacent(gid: str) -> bool:
        a, b = by_id[gid].pair_sorted()
        return instance.graph.has_edge(pos[a], pos[b])

    def close(candidates: list[str], step: int) -> None:
        stack = list(candidates)
        while stack:
            gid = stack.pop()
            if gid in schedule or indeg[gid] != 0 or not adjacent(gid):
                continue
            schedule[gid] = step
            for s in succs[gid]:
                indeg[s] -= 1
                if indeg[s] == 0:
                    stack.append(s)

    close([g.id for g in gates if indeg[g.id] == 0], 0)
    for step, (u, v) in enumerate(edges, start=1):
        tu, tv = vertex_token[u], vertex_token[v]
        vertex_token[u], vertex_token[v] = tv, tu
        pos[tu], pos[tv] = v, u
        touched = [
            g.id for g in gates
            if g.id not in schedule and indeg[g.id] == 0 and (tu in g.pair or tv in g.pair)
        ]
        close(touched, step)
    if len(schedule) != len(gates):
        return None
    return schedule
