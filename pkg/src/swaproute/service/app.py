"""HTTP service wrapping the solvers, the verifier, and the reduction
generators. The CLI is a thin client of this app; run it standalone with
`swaproute serve` or any ASGI server.

Solver outcomes (ok / infeasible / budget_exceeded) are reported in the
response body with status 200; malformed or mismatched inputs are 400/422.
"""

from __future__ import annotations

import random
import time

from fastapi import FastAPI, HTTPException

from .. import core, disjoint, fpt, oracle, reductions
from ..core import (
    BudgetExceededError,
    ChainSchedule,
    Instance,
    InvalidEdgeError,
)
from ..fileio import InstanceFormatError, instance_from_model, instance_to_model
from ..models import (
    GenerateRequest,
    GenerateResponse,
    InstanceModel,
    OlaParamsModel,
    SolutionModel,
    SolveRequest,
    SolveResponse,
    VerifyRequest,
    VerifyResponse,
)

EXPAND_CAP = 100_000


def _instance_or_400(model: InstanceModel) -> Instance:
    try:
        return instance_from_model(model)
    except InstanceFormatError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def pick_algorithm(instance: Instance, requested: str) -> str:
    """auto -> disjoint for disjoint-pair path instances, else fpt for paths
    with at most 4 gates, else exact."""
    if requested != "auto":
        return requested
    if instance.repeat is None and instance.graph.kind == "path":
        try:
            disjoint.check_disjoint(instance.gates)
            return "disjoint"
        except ValueError:
            pass
        if instance.gate_count <= 4:
            return "fpt"
    return "exact"


def _chain_schedule_map(instance: Instance, cs: ChainSchedule) -> dict[str, int]:
    steps: dict[str, int] = {}
    j = 0
    for gid_idx, gid in enumerate(instance.repeat.gate_ids(), start=1):
        while cs.realized_after[j] < gid_idx:
            j += 1
        steps[f"{gid}#{gid_idx}"] = j
    return steps


def create_app() -> FastAPI:
    app = FastAPI(title="swaproute", description="swap minimization solver service")

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/solve", response_model=SolveResponse, response_model_exclude_none=True)
    def solve(req: SolveRequest) -> SolveResponse:
        instance = _instance_or_400(req.instance)
        algo = pick_algorithm(instance, req.algo)
        started = time.perf_counter()
        try:
            if algo == "disjoint":
                result = disjoint.solve_disjoint(instance)
            elif algo == "fpt":
                result = fpt.solve_fpt(
                    instance, state_budget=req.budget or fpt.DEFAULT_STATE_BUDGET
                )
            elif algo == "exact":
                result = oracle.solve_exact(
                    instance, state_budget=req.budget or oracle.DEFAULT_STATE_BUDGET
                )
            else:
                raise HTTPException(status_code=400, detail=f"unknown algorithm {algo!r}")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        except BudgetExceededError as exc:
            return SolveResponse(status="budget_exceeded", detail=str(exc))
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        if result is None:
            return SolveResponse(status="infeasible", detail="no feasible swap sequence exists")
        seq, schedule = result
        if isinstance(schedule, ChainSchedule):
            schedule = _chain_schedule_map(instance, schedule)
        solution = SolutionModel(
            length=len(seq),
            swaps=list(seq.swaps),
            schedule=schedule,
            algorithm=algo,
            elapsed_ms=round(elapsed_ms, 3),
        )
        return SolveResponse(status="ok", solution=solution)

    @app.post("/verify", response_model=VerifyResponse, response_model_exclude_none=True)
    def verify(req: VerifyRequest) -> VerifyResponse:
        instance = _instance_or_400(req.instance)
        try:
            result = core.verify(instance, req.swaps)
        except InvalidEdgeError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        if result is None:
            return VerifyResponse(status="infeasible")
        if isinstance(result, ChainSchedule):
            return VerifyResponse(
                status="feasible",
                chain_progress=result.step_counts(),
                total_gates=result.total_gates,
            )
        return VerifyResponse(status="feasible", schedule=result)

    @app.post("/generate", response_model=GenerateResponse, response_model_exclude_none=True)
    def generate(req: GenerateRequest) -> GenerateResponse:
        try:
            h = reductions.SimpleGraphInput.from_edges(req.edges)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        rng = random.Random(req.seed) if req.seed is not None else None
        try:
            if req.kind == "vc":
                order = rng.sample(h.vertices, len(h.vertices)) if rng else None
                instance = reductions.gen_vc(h, f0_leaf_order=order)
                return GenerateResponse(instance=instance_to_model(instance))
            if req.k is None:
                raise HTTPException(status_code=400, detail="ola generation requires k")
            instance, params = reductions.gen_ola(h, req.k)
            if rng is not None:
                scrambled = core.TokenPlacement(
                    tuple(rng.sample(instance.initial.tokens, instance.graph.n)), 1
                )
                instance, params = reductions.gen_ola(h, req.k, initial=scrambled)
            if req.expand:
                instance = core.expand_compressed(instance, cap=EXPAND_CAP)
            params_model = OlaParamsModel(
                n=params.n,
                m=params.m,
                k=params.k,
                alpha=params.alpha,
                beta=params.beta,
                gamma=params.gamma,
                chain_length=instance.gate_count,
            )
            return GenerateResponse(instance=instance_to_model(instance), params=params_model)
        except BudgetExceededError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    return app


app = create_app()
