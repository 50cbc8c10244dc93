"""Reading and writing instance and solution documents.

Shape validation is delegated to the pydantic models; this module adds the
semantic checks (declared tokens, bijectivity, id references, exclusivity of
the precedence forms), converts to and from the core types, and anchors error
messages to a line of the source text when the offending literal can be found.
"""

from __future__ import annotations

import json

from pydantic import BaseModel, ValidationError

from .core import (
    CompressedChain,
    Gate,
    Graph,
    Instance,
    Poset,
    TokenPlacement,
)
from .models import (
    GateModel,
    GraphModel,
    InstanceModel,
    RepeatBlockModel,
    SolutionModel,
)


class InstanceFormatError(ValueError):
    """A document that does not describe a valid instance or solution."""

    def __init__(self, message: str, fragment: str | None = None):
        super().__init__(message)
        self.fragment = fragment


def _line_of(text: str, fragment: str | None) -> int | None:
    if not fragment:
        return None
    needle = json.dumps(fragment)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line or fragment in line:
            return lineno
    return None


def _anchored(text: str, err: InstanceFormatError) -> InstanceFormatError:
    line = _line_of(text, err.fragment)
    if line is None:
        return err
    return InstanceFormatError(f"line {line}: {err}", err.fragment)


def parse_instance_text(text: str) -> Instance:
    return instance_from_model(parse_instance_model(text))


def parse_instance_model(text: str) -> InstanceModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    try:
        model = InstanceModel.model_validate(doc)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        err = InstanceFormatError(f"{loc}: {first['msg']}", fragment=loc.split(".")[0])
        raise _anchored(text, err) from None
    # Re-raise semantic errors with a line anchor where possible.
    try:
        instance_from_model(model)
    except InstanceFormatError as exc:
        raise _anchored(text, exc) from None
    return model


def instance_from_model(model: InstanceModel) -> Instance:
    graph = _graph_from_model(model.graph)

    if len(set(model.tokens)) != len(model.tokens):
        dup = next(t for t in model.tokens if model.tokens.count(t) > 1)
        raise InstanceFormatError(f"duplicate token {dup!r}", fragment=dup)
    tokens = set(model.tokens)

    if len(model.initial) != graph.n:
        raise InstanceFormatError(
            f"initial placement lists {len(model.initial)} tokens for {graph.n} vertices"
        )
    for t in model.initial:
        if t not in tokens:
            raise InstanceFormatError(f"initial placement uses undeclared token {t!r}", fragment=t)

    gates: list[Gate] = []
    seen_ids: set[str] = set()
    for gm in model.gates:
        if gm.id in seen_ids:
            raise InstanceFormatError(f"duplicate gate id {gm.id!r}", fragment=gm.id)
        seen_ids.add(gm.id)
        a, b = gm.pair
        if a == b:
            raise InstanceFormatError(f"gate {gm.id!r} pairs token {a!r} with itself", fragment=gm.id)
        for t in (a, b):
            if t not in tokens:
                raise InstanceFormatError(f"gate {gm.id!r} uses undeclared token {t!r}", fragment=t)
        gates.append(Gate.of(gm.id, a, b))
    gate_ids = [g.id for g in gates]

    forms = [name for name, val in
             (("precedence", model.precedence), ("chain", model.chain), ("repeat", model.repeat))
             if val is not None]
    if len(forms) > 1:
        raise InstanceFormatError(f"{' and '.join(forms)} are mutually exclusive")

    repeat: CompressedChain | None = None
    if model.repeat is not None:
        poset = Poset((), frozenset())
        for block in model.repeat:
            for gid in block.block:
                if gid not in seen_ids:
                    raise InstanceFormatError(
                        f"repeat block references unknown gate {gid!r}", fragment=gid
                    )
        repeat = CompressedChain(tuple((b.count, tuple(b.block)) for b in model.repeat))
    elif model.chain is not None:
        if sorted(model.chain) != sorted(gate_ids):
            raise InstanceFormatError("chain must list every gate id exactly once")
        poset = Poset(tuple(gate_ids), frozenset(zip(model.chain, model.chain[1:])))
    else:
        covers = []
        for a, b in model.precedence or []:
            for gid in (a, b):
                if gid not in seen_ids:
                    raise InstanceFormatError(
                        f"precedence references unknown gate {gid!r}", fragment=gid
                    )
            covers.append((a, b))
        try:
            poset = Poset(tuple(gate_ids), frozenset(covers))
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from None

    try:
        return Instance(
            graph=graph,
            tokens=frozenset(tokens),
            gates=tuple(gates),
            poset=poset,
            initial=TokenPlacement(tuple(model.initial), graph.first_vertex),
            repeat=repeat,
        )
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def _graph_from_model(gm: GraphModel) -> Graph:
    if gm.type == "edges":
        if gm.edges is None:
            raise InstanceFormatError("graph type 'edges' requires an edge list")
        try:
            return Graph.explicit(gm.n, gm.edges)
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from None
    if gm.edges is not None:
        raise InstanceFormatError(f"graph type {gm.type!r} does not take an edge list")
    return Graph.path(gm.n) if gm.type == "path" else Graph.star(gm.n)


def instance_to_model(instance: Instance) -> InstanceModel:
    kind = instance.graph.kind
    graph = GraphModel(
        type="edges" if kind == "explicit" else kind,
        n=instance.graph.n,
        edges=list(instance.graph.sorted_edges()) if kind == "explicit" else None,
    )
    model = InstanceModel(
        graph=graph,
        tokens=sorted(instance.tokens),
        initial=list(instance.initial.tokens),
        gates=[GateModel(id=g.id, pair=g.pair_sorted()) for g in instance.gates],
        precedence=None if instance.repeat is not None else sorted(instance.poset.covers),
        repeat=None
        if instance.repeat is None
        else [RepeatBlockModel(count=c, block=list(b)) for c, b in instance.repeat.blocks],
    )
    return model


def parse_solution_text(text: str) -> SolutionModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    try:
        model = SolutionModel.model_validate(doc)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        raise InstanceFormatError(f"{loc}: {first['msg']}") from None
    if model.length != len(model.swaps):
        raise InstanceFormatError(
            f"length is {model.length} but {len(model.swaps)} swaps are listed"
        )
    return model


def dumps_canonical(model: BaseModel) -> str:
    """Stable text form: sorted keys, two-space indent, trailing newline."""
    doc = model.model_dump(exclude_none=True)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
