"""Command-line front end.

Each command reads one instance file, writes one JSON object to standard
output (or ``--output``) and returns an exit code: 0 solved, 2 infeasible,
1 malformed input or internal failure. Log lines go to standard error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .bargain import normalize, solve, verify_solution
from .errors import BargainError, BargainInternalError, InfeasibleGameError
from .games import (
    build_dg2,
    equilibrium_violations,
    extract_flows,
    solve_adnb2,
    solve_circle,
)
from .io import (
    adnb2_from_dict,
    dg2_from_dict,
    equilibrium_to_dict,
    face_to_dict,
    game_from_dict,
    load_json,
    solution_from_dict,
    solution_to_dict,
)
from .oracle import adnb2_via_lnb2, brute_force_faces, numeric_maximize
from .rational import format_rational, format_vector

log = logging.getLogger("nashbargain")

COMMANDS = ("solve", "dg2", "adnb2", "circle", "verify", "oracle")
EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    tol: float = 1e-12
    verify_flag: bool = False
    grid: int = 256
    solution_path: Optional[str] = None
    cross_check: bool = False
    c1: float = 0.0
    c2: float = 0.0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.command != "circle" and not self.input_path:
            raise ValueError(f"{self.command} needs an input file")
        if self.command == "verify" and not self.solution_path:
            raise ValueError("verify needs a solution file")


def _report_dict(rep) -> dict:
    return {
        "ok": rep.ok,
        "checks": dict(rep.checks),
        "z": None if rep.z is None else format_rational(rep.z),
    }


def _oracle_dict(game, sol, tol: float) -> dict:
    res = numeric_maximize(normalize(game), tol=max(tol, 1e-9))
    diff = max(abs(res.point[0] - float(sol.y1)), abs(res.point[1] - float(sol.y2)))
    return {"point": list(res.point), "objective": res.objective, "method": res.method, "max_abs_diff": diff}


def _solve_game(game, cfg: RunConfig) -> dict:
    sol = solve(game)
    out = solution_to_dict(sol)
    if cfg.verify_flag:
        rep = verify_solution(game, sol)
        if not rep.ok:
            raise BargainInternalError(f"solution fails {', '.join(rep.failures())}")
        out["verification"] = _report_dict(rep)
        out["oracle"] = _oracle_dict(game, sol, cfg.tol)
    return out


def _cmd_solve(cfg: RunConfig) -> dict:
    return _solve_game(game_from_dict(load_json(cfg.input_path)), cfg)


def _cmd_dg2(cfg: RunConfig) -> dict:
    inst = dg2_from_dict(load_json(cfg.input_path))
    game = build_dg2(inst)
    out = _solve_game(game, cfg)
    flows = extract_flows(inst, solution_from_dict(out))
    out["flows"] = [
        {"from": u, "to": v, "f": format_vector(f)}
        for (u, v, _), f in zip(inst.edges, flows.edge_flows)
    ]
    return out


def _cmd_adnb2(cfg: RunConfig) -> dict:
    inst = adnb2_from_dict(load_json(cfg.input_path))
    eq = solve_adnb2(inst)
    out = equilibrium_to_dict(eq)
    if cfg.verify_flag:
        bad = equilibrium_violations(eq)
        out["verification"] = {"ok": not bad, "violations": bad}
    if cfg.cross_check:
        other = adnb2_via_lnb2(inst)
        out["cross_check"] = {"v": format_vector(other.v), "agree": other.v == (eq.v1, eq.v2)}
        if not out["cross_check"]["agree"]:
            raise BargainInternalError("market solver and generic solver disagree")
    return out


def _cmd_circle(cfg: RunConfig) -> dict:
    p = solve_circle(cfg.c1, cfg.c2, tol=cfg.tol)
    tangency = abs((p.y - cfg.c2) / (p.x - cfg.c1) - p.x / p.y)
    return {"status": "solved", "x": p.x, "y": p.y, "residual": p.residual, "tangency_gap": tangency}


def _cmd_verify(cfg: RunConfig) -> dict:
    game = game_from_dict(load_json(cfg.input_path))
    sol = solution_from_dict(load_json(cfg.solution_path))
    return {"status": "verified", **_report_dict(verify_solution(game, sol))}


def _cmd_oracle(cfg: RunConfig) -> dict:
    game = game_from_dict(load_json(cfg.input_path))
    ng = normalize(game)
    res = numeric_maximize(ng, tol=max(cfg.tol, 1e-9))
    faces = brute_force_faces(ng, grid=cfg.grid)
    return {
        "status": "solved",
        "point": list(res.point),
        "v": [res.point[0] + float(game.c1), res.point[1] + float(game.c2)],
        "objective": res.objective,
        "faces": [face_to_dict(f) for f in faces],
    }


_HANDLERS = {
    "solve": _cmd_solve,
    "dg2": _cmd_dg2,
    "adnb2": _cmd_adnb2,
    "circle": _cmd_circle,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def _infeasible_dict(exc: InfeasibleGameError) -> dict:
    out = {"status": "infeasible", "message": str(exc)}
    for key, val in exc.diagnostic.items():
        if val is None or isinstance(val, (bool, float)):
            out[key] = val
        elif isinstance(val, int) and key in ("k1", "k2"):
            out[key] = val
        else:
            out[key] = format_rational(val)
    return out


def _emit(obj: dict, path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(cfg: RunConfig) -> int:
    try:
        result = _HANDLERS[cfg.command](cfg)
        code = EXIT_OK
        if cfg.command == "verify" and not result["ok"]:
            log.error("solution fails: %s", ", ".join(k for k, v in result["checks"].items() if not v))
            code = EXIT_ERROR
    except InfeasibleGameError as exc:
        log.warning("infeasible: %s", exc)
        result, code = _infeasible_dict(exc), EXIT_INFEASIBLE
    except BargainError as exc:
        log.error("%s", exc)
        result, code = {"status": "error", "message": str(exc)}, EXIT_ERROR
    try:
        _emit(result, cfg.output_path)
    except OSError as exc:
        log.error("cannot write %s: %s", cfg.output_path, exc.strerror)
        return EXIT_ERROR
    return code


def _finite(text: str) -> float:
    val = float(text)
    if not math.isfinite(val):
        raise argparse.ArgumentTypeError(f"not a finite number: {text}")
    return val


class _Parser(argparse.ArgumentParser):
    # usage errors are malformed input (exit 1); argparse's own 2 means infeasible here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nashbargain", description="Exact 2-player bargaining solvers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--output", help="write the result here instead of stdout")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("solve", help="solve a linear bargaining game")
    p.add_argument("--game", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=_finite, default=1e-9, help="oracle tolerance for --verify")
    common(p)

    p = sub.add_parser("dg2", help="two-commodity flow bargaining")
    p.add_argument("--graph", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=_finite, default=1e-9)
    common(p)

    p = sub.add_parser("adnb2", help="bargaining over divisible goods")
    p.add_argument("--market", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--cross-check", action="store_true", help="also solve through the generic solver")
    common(p)

    p = sub.add_parser("circle", help="bargaining on the quarter disk")
    p.add_argument("--c1", type=_finite, required=True)
    p.add_argument("--c2", type=_finite, required=True)
    p.add_argument("--tol", type=_finite, default=1e-12)
    common(p)

    p = sub.add_parser("verify", help="check a solution file against a game")
    p.add_argument("--game", required=True)
    p.add_argument("--solution", required=True)
    common(p)

    p = sub.add_parser("oracle", help="numeric optimum and face sweep")
    p.add_argument("--game", required=True)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--tol", type=_finite, default=1e-9)
    common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    path = getattr(args, "game", None) or getattr(args, "graph", None) or getattr(args, "market", None)
    return RunConfig(
        command=args.command,
        input_path=path,
        output_path=args.output,
        tol=getattr(args, "tol", 1e-12),
        verify_flag=getattr(args, "verify", False),
        grid=getattr(args, "grid", 256),
        solution_path=getattr(args, "solution", None),
        cross_check=getattr(args, "cross_check", False),
        c1=getattr(args, "c1", 0.0),
        c2=getattr(args, "c2", 0.0),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "grid", 256) < 2:
        log.error("--grid must be at least 2")
        return EXIT_ERROR
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
