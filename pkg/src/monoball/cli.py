"""Command-line front end.

The CLI is a thin client of the HTTP service: every command builds a request
model, dispatches it (in-process by default, over HTTP with --server), and
renders the JSON response.  Exit codes: 0 ok, 1 verification/certification
failure, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from pydantic import ValidationError

from . import __version__

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_CONFIG = 2
EXIT_IO = 3


@dataclass
class RunConfig:
    command: str
    max_degree: int = 6
    seed: int = 2024
    trials: int = 50
    r_grid: list[float] = field(default_factory=list)
    tol: float = 1e-12
    out: str | None = None
    fmt: str = "json"
    quadrature: tuple[int, int] | None = None
    input_path: str | None = None
    server: str | None = None


class ConfigError(ValueError):
    pass


def parse_r_grid(spec: str) -> list[float]:
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"bad --r-grid {spec!r}; expected start:stop:step") from exc
    if start == stop:
        return [start]
    if step <= 0:
        raise ConfigError("--r-grid step must be positive")
    grid = []
    v = start
    while v <= stop + 1e-12:
        grid.append(round(v, 12))
        v += step
    return grid


def parse_quadrature(spec: str) -> tuple[int, int]:
    try:
        n_theta, n_phi = (int(x) for x in spec.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad --quadrature {spec!r}; expected n_theta,n_phi") from exc
    if n_theta < 1 or n_phi < 1:
        raise ConfigError("--quadrature counts must be positive")
    return n_theta, n_phi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoball",
                                description="monogenic basis construction and bound certification")
    p.add_argument("--server", help="base URL of a running service; default runs in-process")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, degree_default=6):
        sp.add_argument("--max-degree", type=int, default=degree_default)
        sp.add_argument("--out", help="write the report to this path")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    sp = sub.add_parser("basis", help="emit basis polynomials with exact norms")
    common(sp)
    sp = sub.add_parser("norms", help="tabulate exact norms against closed forms")
    common(sp)
    sp = sub.add_parser("verify", help="run the exact identity suite")
    common(sp)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--trials", type=int, default=50)
    sp = sub.add_parser("decompose", help="Fourier coefficients from boundary samples")
    common(sp)
    sp.add_argument("--input", dest="input_path", required=True,
                    help="JSON file with {rule, re_f, re_fe1, [f0_e2]}")
    sp = sub.add_parser("bound", help="certify the growth bound on random monogenics")
    common(sp)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--r-grid", default="0.05:0.45:0.05")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--quadrature", help="n_theta,n_phi (default sized to the degree)")
    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, server=args.server)
    for name in ("max_degree", "seed", "trials", "tol", "out", "fmt", "input_path"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "r_grid", None):
        cfg.r_grid = parse_r_grid(args.r_grid)
    if getattr(args, "quadrature", None):
        cfg.quadrature = parse_quadrature(args.quadrature)
    if cfg.max_degree < 0:
        raise ConfigError("--max-degree must be >= 0")
    if cfg.tol <= 0:
        raise ConfigError("--tol must be positive")
    return cfg


# ---------------------------------------------------------------------------
# Transport: the in-process dispatch and the HTTP client share payload shapes.

def call_service(cfg: RunConfig, path: str, payload: dict) -> dict:
    if cfg.server:
        import httpx

        resp = httpx.post(cfg.server.rstrip("/") + path, json=payload, timeout=600.0)
        if resp.status_code in (400, 422):
            raise ConfigError(resp.text)
        resp.raise_for_status()
        return resp.json()

    from .service import schemas as s
    from .service.app import basis, bound, decompose, norms, run_verify

    handlers = {
        "/basis": (basis, s.BasisRequest),
        "/norms": (norms, s.NormsRequest),
        "/verify": (run_verify, s.VerifyRequest),
        "/decompose": (decompose, s.DecomposeRequest),
        "/bound": (bound, s.BoundRequest),
    }
    handler, model = handlers[path]
    try:
        request = model(**payload)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        return handler(request).model_dump()
    except Exception as exc:  # mirror the HTTP error mapping
        from fastapi import HTTPException

        if isinstance(exc, HTTPException):
            raise ConfigError(exc.detail) from exc
        raise


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# CSV views (lossy; JSON is canonical).

def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: row.get(c, "") for c in columns})
    return buf.getvalue()


def basis_csv(doc: dict) -> str:
    rows = []
    for el in doc["elements"]:
        for t in el["terms"]:
            rows.append({"n": el["n"], "m": el["m"], "kind": el["kind"],
                         "norm_sq_num": el["norm_sq"]["num"],
                         "norm_sq_den": el["norm_sq"]["den"],
                         "pi_power": el["norm_sq"]["pi_power"],
                         "component": t["component"],
                         "i": t["exps"][0], "j": t["exps"][1], "k": t["exps"][2],
                         "num": t["num"], "den": t["den"]})
    return _csv(rows, ["n", "m", "kind", "norm_sq_num", "norm_sq_den", "pi_power",
                       "component", "i", "j", "k", "num", "den"])


def norms_csv(doc: dict) -> str:
    rows = []
    for r in doc["rows"]:
        rows.append({"n": r["n"], "m": r["m"], "kind": r["kind"], "quantity": r["quantity"],
                     "computed_num": r["computed"]["num"], "computed_den": r["computed"]["den"],
                     "formula_num": r["formula"]["num"] if r["formula"] else "",
                     "formula_den": r["formula"]["den"] if r["formula"] else "",
                     "pi_power": r["computed"]["pi_power"],
                     "match": r["match"], "note": r["note"]})
    return _csv(rows, ["n", "m", "kind", "quantity", "computed_num", "computed_den",
                       "formula_num", "formula_den", "pi_power", "match", "note"])


def bound_csv(doc: dict) -> str:
    cols = ["trial", "r", "max_f", "f0_abs", "re_norm", "re_e1_norm", "rhs_series",
            "rhs_closed", "a1", "a2", "pass_series", "pass_closed",
            "f1_closed_over_series", "schwarz_hypothesis", "schwarz_ok"]
    return _csv(doc["reports"], cols)


def decompose_csv(doc: dict) -> str:
    rows = [{"n": 0, "m": 0, "kind": f"f0_{label}", "value": v}
            for label, v in zip(("s", "e1", "e2"), doc["f0"])]
    rows.extend(doc["coeffs"])
    return _csv(rows, ["n", "m", "kind", "value"])


def verify_table(doc: dict) -> str:
    lines = [f"monoball verify (degree {doc['max_degree']}, seed {doc['seed']})"]
    width = max(len(c["name"]) for c in doc["checks"])
    for c in doc["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append(f"  [{mark}] {c['name']:<{width}}  {c['detail']}")
    lines.append("result: " + ("all checks passed" if doc["ok"] else "FAILURES PRESENT"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------

def run(cfg: RunConfig) -> int:
    if cfg.command == "serve":
        raise AssertionError("serve is handled in main()")

    if cfg.command == "basis":
        doc = call_service(cfg, "/basis", {"max_degree": cfg.max_degree})
        emit(cfg, basis_csv(doc) if cfg.fmt == "csv" else dump_json(doc))
        return EXIT_OK

    if cfg.command == "norms":
        doc = call_service(cfg, "/norms", {"max_degree": cfg.max_degree})
        emit(cfg, norms_csv(doc) if cfg.fmt == "csv" else dump_json(doc))
        return EXIT_OK if doc["all_match"] else EXIT_VERIFY_FAIL

    if cfg.command == "verify":
        doc = call_service(cfg, "/verify", {"max_degree": cfg.max_degree,
                                            "seed": cfg.seed, "trials": cfg.trials})
        if cfg.out:
            emit(cfg, dump_json(doc))
        sys.stdout.write(verify_table(doc))
        return EXIT_OK if doc["ok"] else EXIT_VERIFY_FAIL

    if cfg.command == "decompose":
        try:
            with open(cfg.input_path) as fh:
                samples = json.load(fh)
        except OSError as exc:
            raise IOError(f"cannot read {cfg.input_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad input JSON: {exc}") from exc
        payload = {"max_degree": cfg.max_degree, "rule": samples.get("rule"),
                   "re_f": samples.get("re_f"), "re_fe1": samples.get("re_fe1"),
                   "f0_e2": samples.get("f0_e2", 0.0)}
        doc = call_service(cfg, "/decompose", payload)
        emit(cfg, decompose_csv(doc) if cfg.fmt == "csv" else dump_json(doc))
        return EXIT_OK

    if cfg.command == "bound":
        payload = {"max_degree": cfg.max_degree, "seed": cfg.seed, "trials": cfg.trials,
                   "r_grid": cfg.r_grid or [0.0], "tol": cfg.tol}
        if cfg.quadrature:
            payload["quadrature"] = {"n_theta": cfg.quadrature[0], "n_phi": cfg.quadrature[1]}
        doc = call_service(cfg, "/bound", payload)
        emit(cfg, bound_csv(doc) if cfg.fmt == "csv" else dump_json(doc))
        ok = doc["all_pass_series"] and doc["schwarz_counterexamples"] == 0
        return EXIT_OK if ok else EXIT_VERIFY_FAIL

    raise ConfigError(f"unknown command {cfg.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_CONFIG if exc.code not in (0,) else 0

    if args.command == "serve":
        import uvicorn

        uvicorn.run("monoball.service:app", host=args.host, port=args.port)
        return EXIT_OK

    try:
        cfg = config_from_args(args)
        return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IOError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # httpx transport errors and the like
        name = type(exc).__name__
        if "httpx" in type(exc).__module__:
            print(f"i/o error ({name}): {exc}", file=sys.stderr)
            return EXIT_IO
        raise


if __name__ == "__main__":
    sys.exit(main())
