"""Command line front end.

The CLI is a thin client of the HTTP service: every subcommand builds one
request, sends it (in-process against the ASGI app by default, or to
``--server URL``), and prints the response records as JSON lines.  Shorthand
function specs (``const:c``, ``chi:WORD@m``, ``series:a,s``) expand to the
canonical JSON before dispatch; ``--f spec.json`` style arguments may also
name a JSON file.

Exit codes: 0 success, 1 domain errors (including incompatible Neumann data
and failed verification), 2 usage or malformed-spec errors.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import os
import sys

import httpx

from .errors import FunctionSpecError
from .specs import expand_shorthand


def _post(path: str, payload: dict, server: str | None):
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    from .service.app import create_app

    async def _go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://shiftlap", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(_go())


def _emit(record: dict):
    sys.stdout.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _load_spec(text: str, n: int) -> dict:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as handle:
            try:
                spec = json.load(handle)
            except json.JSONDecodeError as exc:
                raise FunctionSpecError(f"{text}: not valid JSON: {exc}") from exc
        if not isinstance(spec, dict):
            raise FunctionSpecError(f"{text}: a function spec must be a JSON object")
        return spec
    return expand_shorthand(text, n)


def _load_points(text: str) -> list[str]:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as handle:
            return [line.strip() for line in handle if line.strip()]
    return [piece.strip() for piece in text.split(",") if piece.strip()]


def _parse_boundary_argument(text: str):
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FunctionSpecError(f"bad boundary data JSON: {text!r}") from exc
    return stripped  # "a,b,..." shorthand, parsed server-side


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlap",
        description="Exact Laplacian calculus on one-sided full shift spaces.",
    )
    parser.add_argument("--config", help="JSON file with defaults for the flags below")
    parser.add_argument("--server", help="base URL of a running service (default: in-process)")

    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True):
        p.add_argument("--N", type=int, help="alphabet size (at least 2)")
        if mode:
            p.add_argument("--mode", choices=["rational", "float64"], default=None)

    p = sub.add_parser("green-kernel", help="evaluate the Green's function at two points")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("green-apply", help="apply the Green's operator to a load")
    common(p)
    p.add_argument("--f", required=True, help="function spec (shorthand, JSON, or file)")
    p.add_argument("--points", required=True, help="comma-separated words or a file")
    p.add_argument("--resolution", type=int, default=None)

    p = sub.add_parser("evaluate", help="evaluate a function spec at points")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--points", required=True)

    p = sub.add_parser("dirichlet-form", help="bilinear form of two functions at a level")
    common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument(
        "--algorithm",
        choices=["operator-form", "difference-form", "both"],
        default="both",
    )

    p = sub.add_parser("energy", help="level energies of a sampled function")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("laplacian", help="renormalized residual table for a Laplacian claim")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--M", type=int, required=True, help="boundary level")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("weak-residual", help="worst weak-form pairing defect at one level")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("neumann-derivative", help="boundary derivative of a function")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--p", required=True, help="boundary point literal")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--mmax", type=int, default=None, help="sequence cutoff for sampled inputs")

    p = sub.add_parser("solve-dirichlet", help="solve with prescribed boundary values")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--zeta", required=True, help='values on the constant sequences, e.g. "3,5"')
    p.add_argument("--points", default=None, help="optionally evaluate the solution here")

    p = sub.add_parser("solve-neumann", help="solve with prescribed boundary derivatives")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--xi", required=True, help='derivatives at the constant sequences, e.g. "1/2,1/2"')
    p.add_argument("--points", default=None)

    p = sub.add_parser("gauss-green", help="check the boundary identity for two functions")
    common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--M", type=int, required=True)

    p = sub.add_parser("verify", help="run the exact identity suite")
    common(p, mode=False)
    p.add_argument("--mmax", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--checks", default=None, help="comma-separated check names (default: all)")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _apply_config_file(args: argparse.Namespace):
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as handle:
        defaults = json.load(handle)
    if not isinstance(defaults, dict):
        raise FunctionSpecError("--config must hold a JSON object of flag defaults")
    for key, value in defaults.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def _require_n(args) -> int:
    if args.N is None:
        raise FunctionSpecError("--N is required (or provide it via --config)")
    return args.N


def _mode(args) -> str:
    return args.mode or "rational"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        _apply_config_file(args)
        return _dispatch(args)
    except FunctionSpecError as exc:
        _emit_error({"error": exc.code, "detail": str(exc)})
        return 2
    except httpx.HTTPError as exc:
        _emit_error({"error": "transport", "detail": str(exc)})
        return 1


def _emit_error(record: dict):
    sys.stderr.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _render_records(body) -> int:
    for record in body["records"]:
        _emit(record)
    return 0


def _finish(response, on_success) -> int:
    if response.status_code >= 400:
        try:
            body = response.json()
        except json.JSONDecodeError:
            body = {"error": "http", "detail": response.text}
        _emit_error(body)
        return 2 if response.status_code == 422 else 1
    return on_success(response.json())


def _dispatch(args) -> int:
    server = args.server
    command = args.command

    if command == "serve":
        import uvicorn

        uvicorn.run("shiftlap.service.app:app", host=args.host, port=args.port)
        return 0

    if command == "verify":
        n = _require_n(args)
        payload = {"N": n, "mmax": args.mmax if args.mmax is not None else 5,
                   "seed": args.seed if args.seed is not None else 0}
        if args.checks:
            payload["checks"] = [c.strip() for c in args.checks.split(",") if c.strip()]
        response = _post("/verify", payload, server)

        def render(body):
            for record in body["records"]:
                _emit(record)
            _emit({"passed": body["passed"], "seed": body["config"]["seed"], "N": body["config"]["N"]})
            return 0 if body["passed"] else 1

        return _finish(response, render)

    n = _require_n(args)
    mode = _mode(args)

    if command == "green-kernel":
        response = _post("/green/kernel", {"N": n, "mode": mode, "x": args.x, "y": args.y}, server)
        return _finish(response, lambda body: (_emit({"value": body["value"]}), 0)[1])

    if command == "green-apply":
        payload = {
            "N": n,
            "mode": mode,
            "f": _load_spec(args.f, n),
            "points": _load_points(args.points),
        }
        if args.resolution is not None:
            payload["resolution"] = args.resolution
        response = _post("/green/apply", payload, server)
        return _finish(response, _render_records)

    if command == "evaluate":
        payload = {"N": n, "mode": mode, "u": _load_spec(args.u, n),
                   "points": _load_points(args.points)}
        response = _post("/functions/evaluate", payload, server)
        return _finish(response, _render_records)

    if command == "dirichlet-form":
        payload = {
            "N": n,
            "mode": mode,
            "m": args.m,
            "u": _load_spec(args.u, n),
            "v": _load_spec(args.v, n),
            "algorithm": args.algorithm,
        }
        response = _post("/forms/dirichlet", payload, server)
        return _finish(response, _render_records)

    if command == "energy":
        payload = {"N": n, "mode": mode, "f": _load_spec(args.f, n), "mmax": args.mmax}
        response = _post("/forms/energy", payload, server)

        def render(body):
            if args.csv:
                writer = csv.writer(sys.stdout)
                writer.writerow(["m", "value", "algorithm"])
                for record in body["records"]:
                    writer.writerow([record["m"], record["value"], record["algorithm"]])
            else:
                for record in body["records"]:
                    _emit(record)
                _emit({
                    "monotone": body["monotone"],
                    "limit_lower_bound": body["limit_lower_bound"],
                })
            return 0

        return _finish(response, render)

    if command == "laplacian":
        payload = {
            "N": n,
            "mode": mode,
            "u": _load_spec(args.u, n),
            "f": _load_spec(args.f, n),
            "M": args.M,
            "mmax": args.mmax,
        }
        response = _post("/boundary/laplacian", payload, server)

        def render(body):
            if args.csv:
                writer = csv.writer(sys.stdout)
                writer.writerow(["m", "residual", "bound"])
                for record in body["records"]:
                    writer.writerow([record["m"], record["residual"], record["bound"] or ""])
            else:
                for record in body["records"]:
                    _emit(record)
                _emit({"all_zero": body["all_zero"], "nonincreasing": body["nonincreasing"]})
            return 0

        return _finish(response, render)

    if command == "weak-residual":
        payload = {
            "N": n,
            "mode": mode,
            "u": _load_spec(args.u, n),
            "f": _load_spec(args.f, n),
            "M": args.M,
            "m": args.m,
        }
        response = _post("/boundary/weak-residual", payload, server)
        return _finish(response, lambda body: (_emit({"value": body["value"]}), 0)[1])

    if command == "neumann-derivative":
        payload = {
            "N": n,
            "mode": mode,
            "u": _load_spec(args.u, n),
            "p": args.p,
            "M": args.M,
        }
        if args.mmax is not None:
            payload["mmax"] = args.mmax
        response = _post("/boundary/neumann-derivative", payload, server)

        def render(body):
            for key in ("config",):
                body.pop(key, None)
            _emit({k: v for k, v in body.items() if v is not None})
            return 0

        return _finish(response, render)

    if command in ("solve-dirichlet", "solve-neumann"):
        data_flag = args.zeta if command == "solve-dirichlet" else args.xi
        key = "zeta" if command == "solve-dirichlet" else "xi"
        payload = {"N": n, "mode": mode, "f": _load_spec(args.f, n),
                   key: _parse_boundary_argument(data_flag)}
        if args.points:
            payload["points"] = _load_points(args.points)
        response = _post(f"/boundary/{command}", payload, server)

        def render(body):
            record = {"solution": body["solution"], "boundary_values": body["boundary_values"]}
            _emit(record)
            for evaluation in body.get("evaluations") or []:
                _emit(evaluation)
            return 0

        return _finish(response, render)

    if command == "gauss-green":
        payload = {
            "N": n,
            "mode": mode,
            "u": _load_spec(args.u, n),
            "v": _load_spec(args.v, n),
            "M": args.M,
        }
        response = _post("/boundary/gauss-green", payload, server)

        def render(body):
            body.pop("config", None)
            _emit(body)
            return 0

        return _finish(response, render)

    raise AssertionError(f"unhandled command {command}")


if __name__ == "__main__":
    sys.exit(main())
