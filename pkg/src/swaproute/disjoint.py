"""Polynomial-time solver for path instances whose gate pairs are pairwise
token-disjoint, plus the gap/cross/value potentials it is built on.

For such instances the optimum equals value(f_0) = gap(f_0) - cross(f_0):
gap sums, over gates, the number of vertices strictly between the two tokens;
cross counts interleaving gate pairs (nesting does not count). One greedy swap
at the rightmost gapped position decreases value by exactly one, and no swap
can decrease it by more, so value(f_0) swaps suffice and are necessary. The
final placement realizes every gate simultaneously, making the sequence
feasible for any poset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Gate,
    Instance,
    Schedule,
    SwapSequence,
    TokenPlacement,
    UnknownTokenError,
    verify,
)


@dataclass(frozen=True)
class PotentialReport:
    gap: int
    cross: int
    value: int


def _endpoints(positions: dict[str, int], pair) -> tuple[int, int]:
    a, b = tuple(pair)
    try:
        pa, pb = positions[a], positions[b]
    except KeyError as exc:
        raise UnknownTokenError(f"token {exc.args[0]!r} is not placed") from None
    return (pa, pb) if pa < pb else (pb, pa)


def gap_of(placement: TokenPlacement, pair) -> int:
    """Vertices strictly between the pair's tokens on a path: a lower bound on
    the swaps needed to realize the pair."""
    lo, hi = _endpoints(placement.positions(), pair)
    return hi - lo - 1


def check_disjoint(gates) -> None:
    """Raise ValueError naming a shared token if two gates overlap."""
    seen: dict[str, str] = {}
    for g in gates:
        for t in g.pair:
            if t in seen:
                raise ValueError(
                    f"gates {seen[t]!r} and {g.id!r} share token {t!r}; "
                    "the disjoint-pairs solver requires pairwise-disjoint gates"
                )
            seen[t] = g.id


def cross_count(placement: TokenPlacement, gates: list[Gate]) -> int:
    """Number of interleaving gate pairs (a1 < b1 < a2 < b2 up to renaming)."""
    check_disjoint(gates)
    positions = placement.positions()
    spans = [_endpoints(positions, g.pair) for g in gates]
    count = 0
    for i in range(len(spans)):
        a1, a2 = spans[i]
        for j in range(i + 1, len(spans)):
            b1, b2 = spans[j]
            if a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2:
                count += 1
    return count


def value_of(placement: TokenPlacement, gates: list[Gate]) -> PotentialReport:
    check_disjoint(gates)
    positions = placement.positions()
    gap = sum(hi - lo - 1 for lo, hi in (_endpoints(positions, g.pair) for g in gates))
    cross = cross_count(placement, gates)
    return PotentialReport(gap=gap, cross=cross, value=gap - cross)


def solve_disjoint(instance: Instance) -> tuple[SwapSequence, Schedule]:
    """Sequence of length exactly value(f_0) realizing every gate simultaneously.

    While some gate has a gap, swap at i* = the largest left endpoint of a
    gapped gate; each such swap decreases value by exactly one. Requires a path
    graph and pairwise-disjoint gate pairs (ValueError otherwise).
    """
    if instance.graph.kind != "path":
        raise ValueError("the disjoint-pairs solver requires a path graph")
    if instance.repeat is not None:
        raise ValueError("the disjoint-pairs solver takes explicit instances")
    gates = list(instance.gates)
    check_disjoint(gates)

    positions = instance.initial.positions()
    vertex_token = {p: t for t, p in positions.items()}
    swaps: list[tuple[int, int]] = []
    while True:
        gapped = [
            lo for lo, hi in (_endpoints(positions, g.pair) for g in gates) if hi >= lo + 2
        ]
        if not gapped:
            break
        i_star = max(gapped)
        u, v = i_star, i_star + 1
        tu, tv = vertex_token[u], vertex_token[v]
        vertex_token[u], vertex_token[v] = tv, tu
        positions[tu], positions[tv] = v, u
        swaps.append((u, v))

    seq = SwapSequence.of(swaps)
    schedule = verify(instance, seq)
    assert isinstance(schedule, dict)
    return seq, schedule
