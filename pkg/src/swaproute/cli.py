"""Command-line client for the solver service.

By default every command runs the service in-process over an ASGI transport,
so no server is needed; pass --server (or set SWAPROUTE_SERVER) to talk to a
running instance instead. Exit codes: 0 success, 1 input error, 2 infeasible,
3 budget/resource exhausted.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys

import httpx

from .fileio import InstanceFormatError, dumps_canonical, parse_solution_text
from .models import InstanceModel, SolutionModel

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_RESOURCE = 3


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server:
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
        return resp.status_code, resp.json()

    async def call() -> httpx.Response:
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://swaproute") as client:
            return await client.post(path, json=payload, timeout=None)

    resp = asyncio.run(call())
    return resp.status_code, resp.json()


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _detail(body: dict) -> str:
    detail = body.get("detail", body)
    if isinstance(detail, list):  # FastAPI validation errors
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []))
            parts.append(f"{loc}: {item.get('msg', '')}")
        return "; ".join(parts)
    return str(detail)


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceFormatError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None


def _write_text(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        instance_doc = _read_json(args.input)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    payload = {"instance": instance_doc, "algo": args.algo}
    if args.budget is not None:
        payload["budget"] = args.budget
    status, body = _post(args.server, "/solve", payload)
    if status != 200:
        return _fail(_detail(body))
    if body["status"] == "infeasible":
        print("infeasible: no feasible swap sequence exists", file=sys.stderr)
        return EXIT_INFEASIBLE
    if body["status"] == "budget_exceeded":
        print(f"budget exceeded: {body.get('detail', '')}", file=sys.stderr)
        return EXIT_RESOURCE
    solution = SolutionModel.model_validate(body["solution"])
    _write_text(dumps_canonical(solution), args.output)
    if args.output:
        print(f"{args.output}: length {solution.length} ({solution.algorithm})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        instance_doc = _read_json(args.instance)
        with open(args.solution, encoding="utf-8") as fh:
            solution = parse_solution_text(fh.read())
    except (InstanceFormatError, OSError) as exc:
        return _fail(str(exc))
    status, body = _post(
        args.server, "/verify", {"instance": instance_doc, "swaps": solution.swaps}
    )
    if status != 200:
        return _fail(_detail(body))
    if body["status"] == "infeasible":
        print("infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    if body.get("schedule") is not None:
        print("feasible")
        for gid, step in sorted(body["schedule"].items(), key=lambda kv: (kv[1], kv[0])):
            print(f"  {gid} -> step {step}")
    else:
        total = body.get("total_gates")
        print(f"feasible ({total} chain gates)")
        for step, cum in body.get("chain_progress") or []:
            print(f"  step {step}: {cum}/{total} realized")
    return EXIT_OK


def _parse_edges(text: str) -> list[tuple[str, str]]:
    edges = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split("-")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise InstanceFormatError(f"bad edge {item!r}; expected 'u-v'")
        edges.append((parts[0], parts[1]))
    if not edges:
        raise InstanceFormatError("no edges given")
    return edges


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        edges = _parse_edges(args.edges)
    except InstanceFormatError as exc:
        return _fail(str(exc))
    payload: dict = {"kind": args.kind, "edges": edges}
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.kind == "ola":
        payload["k"] = args.k
        payload["expand"] = args.expand
    status, body = _post(args.server, "/generate", payload)
    if status != 200:
        return _fail(_detail(body))
    instance = InstanceModel.model_validate(body["instance"])
    _write_text(dumps_canonical(instance), args.output)
    if body.get("params"):
        p = body["params"]
        line = (
            f"n={p['n']} m={p['m']} k={p['k']} "
            f"alpha={p['alpha']} beta={p['beta']} gamma={p['gamma']} "
            f"chain_length={p['chain_length']}"
        )
        print(line, file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swaproute",
        description="Swap-minimization (qubit routing) solver for path and star graphs.",
    )
    default_server = os.environ.get("SWAPROUTE_SERVER")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("input", help="instance JSON file")
    p_solve.add_argument(
        "--algo", choices=["exact", "fpt", "disjoint", "auto"], default="auto"
    )
    p_solve.add_argument("--budget", type=int, default=None, help="solver state budget")
    p_solve.add_argument("-o", "--output", default=None, help="solution file (default stdout)")
    p_solve.add_argument("--server", default=default_server, help="remote service URL")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a solution against an instance")
    p_verify.add_argument("instance", help="instance JSON file")
    p_verify.add_argument("solution", help="solution JSON file")
    p_verify.add_argument("--server", default=default_server)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a hardness-reduction instance")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True)

    p_ola = gen_sub.add_parser("ola", help="linear-arrangement reduction (path + chain)")
    p_ola.add_argument("--edges", required=True, help='edge list, e.g. "1-2,2-3"')
    p_ola.add_argument("--k", type=int, required=True, help="arrangement cost target")
    p_ola.add_argument("--seed", type=int, default=None, help="scramble the initial placement")
    p_ola.add_argument("--expand", action="store_true", help="materialize the chain")
    p_ola.add_argument("-o", "--output", default=None)
    p_ola.add_argument("--server", default=default_server)
    p_ola.set_defaults(func=cmd_gen)

    p_vc = gen_sub.add_parser("vc", help="vertex-cover reduction (star + antichain)")
    p_vc.add_argument("--edges", required=True, help='edge list, e.g. "1-2,2-3,1-3"')
    p_vc.add_argument("--seed", type=int, default=None, help="shuffle the leaf placement")
    p_vc.add_argument("-o", "--output", default=None)
    p_vc.add_argument("--server", default=default_server)
    p_vc.set_defaults(func=cmd_gen)

    p_serve = sub.add_parser("serve", help="run the solver service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
