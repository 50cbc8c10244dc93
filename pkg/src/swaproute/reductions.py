"""Hardness-reduction instance generators.

gen_ola turns an Optimal Linear Arrangement question (graph H, target k) into
a path instance whose chain demands, over and over, that every token group
stay contiguous and that designated middle tokens of adjacent groups meet.
The chain is kept in compressed (repeated-block) form: expanding it is
quadratic in the construction parameters even for a single edge. ola_witness
builds the matching upper-bound sequence for a given arrangement.

gen_vc turns a Vertex Cover question into a star instance with an antichain:
one gate per edge of H, center token 0; sequences of length k correspond to
vertex covers of size k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    BudgetExceededError,
    CompressedChain,
    Gate,
    Graph,
    Instance,
    Poset,
    SwapSequence,
    TokenPlacement,
)

DEFAULT_CHAIN_CAP = 10_000_000


@dataclass(frozen=True)
class SimpleGraphInput:
    """An undirected simple graph: the source problem's input."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        known = set(self.vertices)
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in known or v not in known:
                raise ValueError(f"edge ({u!r}, {v!r}) references an undeclared vertex")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u!r}, {v!r})")
            seen.add(key)

    @classmethod
    def from_edges(cls, edges) -> SimpleGraphInput:
        vertices = sorted({v for e in edges for v in e}, key=_natural_key)
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))


def _natural_key(label: str):
    return (0, int(label)) if label.isdigit() else (1, label)


@dataclass(frozen=True)
class OlaParams:
    """Sizes and padding constants of the arrangement reduction."""

    n: int
    m: int
    k: int
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self) -> None:
        if self.alpha % 2 != 1:
            raise ValueError("alpha must be odd")
        if not 1 <= self.k < self.n * self.m:
            raise ValueError(f"need 1 <= k < n*m = {self.n * self.m}, got k = {self.k}")

    @classmethod
    def for_graph(cls, h: SimpleGraphInput, k: int) -> OlaParams:
        n, m = len(h.vertices), len(h.edges)
        alpha = 2 * n * m + 1
        return cls(n=n, m=m, k=k, alpha=alpha, beta=n * n * alpha, gamma=4 * k * alpha)


def _token(v: str, i: int) -> str:
    return f"t:{v}:{i}"


def gen_ola(
    h: SimpleGraphInput,
    k: int,
    initial: TokenPlacement | None = None,
    chain_cap: int = DEFAULT_CHAIN_CAP,
) -> tuple[Instance, OlaParams]:
    """Arrangement-to-routing reduction instance, with its parameters.

    Tokens t:v:i for v in V(H), i in 1..alpha, on a path of n*alpha vertices.
    The chain is (Q^gamma psi(e_1) Q^gamma ... psi(e_m) Q^gamma)^beta where Q
    walks every group's consecutive pairs and psi(e) meets the two middle
    tokens of the edge's groups. Default initial placement is the block-aligned
    layout for the identity arrangement; pass `initial` to scramble it.
    """
    if len(h.edges) < 1:
        raise ValueError("H needs at least one edge")
    for v in h.vertices:
        if ":" in v:
            raise ValueError(f"vertex label {v!r} may not contain ':'")
    params = OlaParams.for_graph(h, k)
    n, m, alpha = params.n, params.m, params.alpha
    mid = n * m + 1

    gates: list[Gate] = []
    q_block: list[str] = []
    for v in h.vertices:
        for i in range(1, alpha):
            gid = f"q:{v}:{i}"
            gates.append(Gate.of(gid, _token(v, i), _token(v, i + 1)))
            q_block.append(gid)
    psi_ids: list[str] = []
    for u, v in h.edges:
        gid = f"psi:{u}:{v}"
        gates.append(Gate.of(gid, _token(u, mid), _token(v, mid)))
        psi_ids.append(gid)

    r_blocks: list[tuple[int, tuple[str, ...]]] = [(params.gamma, tuple(q_block))]
    for gid in psi_ids:
        r_blocks.append((1, (gid,)))
        r_blocks.append((params.gamma, tuple(q_block)))
    repeat = CompressedChain(tuple(r_blocks * params.beta))

    total = repeat.total_gates()
    if total > chain_cap:
        raise BudgetExceededError(
            f"chain has {total} gates (beta={params.beta}, |R|={total // params.beta}), "
            f"over the cap {chain_cap}"
        )

    if initial is None:
        initial = block_aligned_placement(h, params, identity_arrangement(h))
    instance = Instance(
        graph=Graph.path(n * alpha),
        tokens=frozenset(_token(v, i) for v in h.vertices for i in range(1, alpha + 1)),
        gates=tuple(gates),
        poset=Poset((), frozenset()),
        initial=initial,
        repeat=repeat,
    )
    return instance, params


def identity_arrangement(h: SimpleGraphInput) -> dict[str, int]:
    return {v: i + 1 for i, v in enumerate(h.vertices)}


def block_aligned_placement(
    h: SimpleGraphInput, params: OlaParams, g: dict[str, int]
) -> TokenPlacement:
    """Placement with token t:v:i on vertex (g(v)-1)*alpha + i."""
    _check_arrangement(h, g)
    arr: list[str | None] = [None] * (params.n * params.alpha)
    for v in h.vertices:
        base = (g[v] - 1) * params.alpha
        for i in range(1, params.alpha + 1):
            arr[base + i - 1] = _token(v, i)
    return TokenPlacement(tuple(arr), 1)


def _check_arrangement(h: SimpleGraphInput, g: dict[str, int]) -> None:
    n = len(h.vertices)
    if set(g.keys()) != set(h.vertices) or sorted(g.values()) != list(range(1, n + 1)):
        raise ValueError("g must be a bijection from V(H) onto 1..n")


def ola_witness(
    h: SimpleGraphInput,
    k: int,
    g: dict[str, int],
    initial: TokenPlacement | None = None,
) -> SwapSequence:
    """Upper-bound sequence for gen_ola's instance under the arrangement g.

    First sorts the initial placement into the block-aligned layout for g
    (bubbling the correct token to each vertex from left to right), then for
    each of beta rounds walks every edge's excursion: shift one middle token
    next to the other and back, 2*|g(u)-g(v)|*alpha - 2 swaps per edge.
    Feasible whenever the arrangement has cost at most k.
    """
    _check_arrangement(h, g)
    params = OlaParams.for_graph(h, k)
    alpha, mid = params.alpha, params.n * params.m + 1
    target = block_aligned_placement(h, params, g)
    if initial is None:
        initial = block_aligned_placement(h, params, identity_arrangement(h))

    swaps: list[tuple[int, int]] = []
    arr = list(initial.tokens)
    pos = {t: i + 1 for i, t in enumerate(arr)}

    def swap_at(u: int) -> None:
        a, b = arr[u - 1], arr[u]
        arr[u - 1], arr[u] = b, a
        pos[a], pos[b] = u + 1, u
        swaps.append((u, u + 1))

    # Sorting prefix: settle each vertex left to right.
    for vertex in range(1, len(arr) + 1):
        want = target.tokens[vertex - 1]
        for p in range(pos[want] - 1, vertex - 1, -1):
            swap_at(p)
    assert tuple(arr) == target.tokens

    # Excursions: per round, per edge, shift t:u:mid next to t:v:mid and back.
    for _ in range(params.beta):
        for u, v in h.edges:
            tu, tv = _token(u, mid), _token(v, mid)
            pu, pv = pos[tu], pos[tv]
            if pu < pv:
                forward = list(range(pu, pv - 1))
            else:
                forward = list(range(pu - 1, pv, -1))
            for p in forward:
                swap_at(p)
            for p in reversed(forward):
                swap_at(p)
            assert pos[tu] == pu and pos[tv] == pv
    return SwapSequence.of(swaps)


def gen_vc(h: SimpleGraphInput, f0_leaf_order=None) -> Instance:
    """Vertex-cover-to-routing reduction: a star with one gate per edge of H.

    Token 0 starts on the center; H's vertices are the leaf tokens, placed in
    declaration order unless `f0_leaf_order` overrides it. The poset is an
    antichain. The cover budget k is a property of the decision question, not
    of the instance.
    """
    if not h.vertices:
        raise ValueError("H needs at least one vertex")
    if "0" in h.vertices:
        raise ValueError("vertex label '0' is reserved for the star center token")
    leaves = tuple(f0_leaf_order) if f0_leaf_order is not None else h.vertices
    if sorted(leaves) != sorted(h.vertices):
        raise ValueError("f0_leaf_order must permute the vertices of H")
    gates = tuple(
        Gate.of(f"e:{u}:{v}", u, v) for u, v in (tuple(sorted(e)) for e in h.edges)
    )
    return Instance(
        graph=Graph.star(len(h.vertices) + 1),
        tokens=frozenset(h.vertices) | {"0"},
        gates=gates,
        poset=Poset.antichain(g.id for g in gates),
        initial=TokenPlacement(("0",) + leaves, 0),
    )
