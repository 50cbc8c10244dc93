"""Pydantic models for the on-disk JSON formats and the service wire format.

The instance and solution documents are the single interchange format: the CLI
reads and writes them as files, and the service accepts and returns them as
request/response bodies.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class GraphModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["path", "star", "edges"]
    n: int = Field(ge=1)
    edges: list[tuple[int, int]] | None = None


class GateModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    pair: tuple[str, str]


class RepeatBlockModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    count: int = Field(ge=1)
    block: list[str] = Field(min_length=1)


class InstanceModel(BaseModel):
    """The instance document. `initial[i]` is the token on vertex i+1 for path
    and edges graphs, and on vertex i for stars. Exactly one of `precedence`
    (cover pairs), `chain` (a total order of the gate ids), or `repeat`
    (compressed chain of gate-id blocks) may be present; none means an
    antichain."""

    model_config = ConfigDict(extra="forbid")

    graph: GraphModel
    tokens: list[str]
    initial: list[str]
    gates: list[GateModel]
    precedence: list[tuple[str, str]] | None = None
    chain: list[str] | None = None
    repeat: list[RepeatBlockModel] | None = None


class SolutionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    length: int
    swaps: list[tuple[int, int]]
    schedule: dict[str, int]
    algorithm: str
    elapsed_ms: float


AlgoName = Literal["exact", "fpt", "disjoint", "auto"]


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    algo: AlgoName = "auto"
    budget: int | None = Field(default=None, ge=1)


class SolveResponse(BaseModel):
    status: Literal["ok", "infeasible", "budget_exceeded"]
    solution: SolutionModel | None = None
    detail: str | None = None


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    swaps: list[tuple[int, int]]


class VerifyResponse(BaseModel):
    status: Literal["feasible", "infeasible"]
    # Explicit instances: gate id -> step. Compressed chains: cumulative
    # realized counts at each step where progress was made.
    schedule: dict[str, int] | None = None
    chain_progress: list[tuple[int, int]] | None = None
    total_gates: int | None = None


class OlaParamsModel(BaseModel):
    n: int
    m: int
    k: int
    alpha: int
    beta: int
    gamma: int
    chain_length: int


class GenerateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["ola", "vc"]
    edges: list[tuple[str, str]] = Field(min_length=1)
    k: int | None = None
    seed: int | None = None
    expand: bool = False


class GenerateResponse(BaseModel):
    instance: InstanceModel
    params: OlaParamsModel | None = None
