"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 infeasible by a known lower
bound, 3 not certified or construction failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import graphs as gr
from .blocksolver import (ROUTES, clique_path_blocks,
                          feasibility_check_clique_path, feasible_multiplicity, multiplicity_list,
                          realize, realize_barbell, realize_lollipop, spectral_bound)
from .errors import BlockIEPError, InfeasibleError, SearchBudgetExhausted
from .linalg import (Tolerances, adjacency_matrix, eigvalsh, matrix_from_dict, matrix_to_dict,
                     multiset_distance, pattern_of)
from .ssp import has_ssp, verify_witness

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_UNCERTIFIED = 0, 1, 2, 3


class InputError(ValueError):
    """Malformed command-line input; the message names the field."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parsing

def _ints(text: str, field: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{field}: expected comma-separated integers, got {text!r}") from None


NAMED_GRAPHS: dict[str, Callable[[], gr.Graph]] = {
    "g94": lambda: gr.corona_complete(3),
    "g117": lambda: gr.blowup(gr.star(4), (1, 2, 2, 1)).graph,
    "g130": lambda: gr.barbell(3, 0, 3),
    "g150": lambda: gr.blowup(gr.path(4), (2, 1, 2, 1)).graph,
}

FAMILIES: dict[str, tuple[Callable, int | None]] = {
    "complete": (gr.complete, 1),
    "path": (gr.path, 1),
    "star": (gr.star, 1),
    "empty": (gr.empty, 1),
    "lollipop": (gr.lollipop, 2),
    "barbell": (gr.barbell, 3),
    "clique_path": (gr.clique_path, None),
    "clique_star": (gr.clique_star, None),
    "corona": (gr.corona_complete, 1),
}


def parse_graph(text: str, field: str = "--graph") -> tuple[gr.Graph, tuple]:
    """Graph plus a ``(family, args)`` tag used to pick family solvers.

    Accepted forms: ``family:a,b,...``, ``blowup:<graph>@m1,m2,...``,
    ``file:path.json``, ``edges:n;i-j,...`` and the named graphs
    ``g94``, ``g117``, ``g130``, ``g150``.
    """
    text = text.strip()
    if text in NAMED_GRAPHS:
        return NAMED_GRAPHS[text](), (text, ())
    head, sep, rest = text.partition(":")
    if not sep:
        raise InputError(f"{field}: expected family:args, file:path or a named graph, got {text!r}")
    try:
        if head == "file":
            return gr.Graph.from_json(Path(rest).read_text()), ("file", ())
        if head == "edges":
            return gr.parse_graph_text(rest), ("edges", ())
        if head == "blowup":
            base_text, at, mults = rest.rpartition("@")
            if not at:
                raise InputError(f"{field}: blowup needs <graph>@m1,m2,...")
            base, _ = parse_graph(base_text, field)
            return gr.blowup(base, _ints(mults, field)).graph, ("blowup", ())
        if head not in FAMILIES:
            raise InputError(f"{field}: unknown family {head!r}; known: {', '.join(sorted(FAMILIES))}")
        fn, arity = FAMILIES[head]
        args = _ints(rest, field)
        if arity is not None and len(args) != arity:
            raise InputError(f"{field}: {head} takes {arity} integer argument(s), got {len(args)}")
        return fn(*args), (head, tuple(args))
    except (OSError, gr.GraphError, json.JSONDecodeError, TypeError) as exc:
        raise InputError(f"{field}: {exc}") from None


def parse_spectrum(text: str, field: str = "--spectrum") -> list[float]:
    """Comma-separated reals, ``x^m`` for ``m`` copies, or ``file:path`` with a
    JSON list."""
    text = text.strip()
    try:
        if text.startswith("file:"):
            data = json.loads(Path(text[5:]).read_text())
            if not isinstance(data, list):
                raise InputError(f"{field}: file must hold a JSON list")
            vals = [float(x) for x in data]
        else:
            vals = []
            for tok in text.split(","):
                tok = tok.strip()
                if not tok:
                    raise InputError(f"{field}: empty entry in {text!r}")
                val, caret, mult = tok.partition("^")
                count = int(mult) if caret else 1
                if count < 1:
                    raise InputError(f"{field}: multiplicity must be positive in {tok!r}")
                vals += [float(val)] * count
    except (OSError, ValueError, TypeError, json.JSONDecodeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{field}: {exc}") from None
    if not vals or not all(np.isfinite(vals)):
        raise InputError(f"{field}: need at least one finite value")
    return vals


def parse_matrix(text: str, g: gr.Graph, field: str = "--matrix") -> np.ndarray:
    text = text.strip()
    try:
        if text == "adjacency":
            return adjacency_matrix(g)
        if text.startswith("file:"):
            data = json.loads(Path(text[5:]).read_text())
        else:
            data = json.loads(text)
        if isinstance(data, dict) and "matrix" in data and "rows" not in data:
            data = data["matrix"]
        if isinstance(data, list):
            data = {"n": len(data), "rows": data}
        A = matrix_from_dict(data)
    except (OSError, ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"{field}: {exc}") from None
    if A.shape != (g.n, g.n):
        raise InputError(f"{field}: matrix is {A.shape[0]}x{A.shape[1]}, graph has {g.n} vertices")
    return A


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances().with_(eig_tol=args.tol_eig, zero_tol=args.tol_zero,
                                  group_tol=args.tol_group)
    except ValueError as exc:
        raise InputError(f"tolerances: {exc}") from None


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    sys.stdout.write(text + "\n")


class _TraceWriter:
    def __init__(self, path: str | None):
        self._fh = open(path, "w") if path else None

    def __call__(self, record: dict) -> None:
        self._fh.write(json.dumps(record, sort_keys=True) + "\n")

    @property
    def callback(self):
        return self if self._fh else None

    def close(self):
        if self._fh:
            self._fh.close()


# ---------------------------------------------------------------- commands

def _realize_tagged(g, tag, sigma, seed, tol, trace, route):
    family, fargs = tag
    if route == "auto" and family == "lollipop":
        return realize_lollipop(*fargs, sigma, seed=seed, tol=tol, trace=trace)
    if route == "auto" and family == "barbell":
        return realize_barbell(*fargs, sigma, seed=seed, tol=tol, trace=trace)
    return realize(g, sigma, seed=seed, tol=tol, trace=trace, route=route)


def _failure(g, sigma, status, message) -> dict:
    return {"graph": g.to_dict(), "target_spectrum": sorted(sigma), "status": status,
            "message": message}


def cmd_realize(args) -> int:
    g, tag = parse_graph(args.graph)
    sigma = parse_spectrum(args.spectrum)
    if len(sigma) != g.n:
        raise InputError(f"--spectrum: graph has {g.n} vertices, got {len(sigma)} values")
    tol = _tolerances(args)
    tracer = _TraceWriter(args.trace)
    try:
        _, cert = _realize_tagged(g, tag, sigma, args.seed, tol, tracer.callback, args.route)
    except InfeasibleError as exc:
        _emit(_failure(g, sigma, "infeasible", str(exc)), args)
        return EXIT_INFEASIBLE
    except BlockIEPError as exc:
        _emit(_failure(g, sigma, "not certified", str(exc)), args)
        return EXIT_UNCERTIFIED
    finally:
        tracer.close()
    payload = cert.to_dict()
    payload["status"] = "realized"
    _emit(payload, args)
    return EXIT_OK


def cmd_ssp(args) -> int:
    g, _ = parse_graph(args.graph)
    A = parse_matrix(args.matrix, g)
    h = g if args.wrt is None else parse_graph(args.wrt, "--wrt")[0]
    if h.n != g.n:
        raise InputError("--wrt: graph order differs from --graph")
    tol = _tolerances(args)
    verdict = has_ssp(A, h, tol)
    payload = verdict.to_dict()
    if verdict.witness is not None:
        payload["witness_verified"] = verify_witness(A, h, verdict.witness)
    _emit(payload, args)
    return EXIT_OK


def cmd_feasible(args) -> int:
    g, _ = parse_graph(args.graph)
    tol = _tolerances(args)
    sigma = None
    if args.spectrum is not None:
        sigma = parse_spectrum(args.spectrum)
        if len(sigma) != g.n:
            raise InputError(f"--spectrum: graph has {g.n} vertices, got {len(sigma)} values")
        mults = multiplicity_list(sigma, tol)
    elif args.mults is not None:
        mults = _ints(args.mults, "--mults")
        if sum(mults) != g.n or any(m < 1 for m in mults):
            raise InputError(f"--mults: need positive integers summing to {g.n}")
    else:
        raise InputError("--mults or --spectrum: one of them is required")
    payload = {"graph": g.to_dict(), "multiplicities": sorted(mults, reverse=True)}
    kp = clique_path_blocks(g)
    if kp is not None and len(mults) <= len(kp):
        payload.update(verdict="infeasible", witness=None,
                       message=f"a clique-path with {len(kp)} blocks needs at least "
                               f"{len(kp) + 1} distinct eigenvalues")
        if sigma is not None:
            payload["clique_path_check"] = feasibility_check_clique_path(kp, sigma, tol)
        _emit(payload, args)
        return EXIT_INFEASIBLE
    if kp is not None and sigma is not None:
        payload["clique_path_check"] = feasibility_check_clique_path(kp, sigma, tol)
    try:
        if not gr.is_block_graph(g) or not gr.is_connected(g):
            raise InputError("--graph: feasibility search needs a connected block graph")
        w = feasible_multiplicity(g, mults)
    except SearchBudgetExhausted as exc:
        payload.update(verdict="unknown (budget)", witness=None, message=str(exc))
        _emit(payload, args)
        return EXIT_UNCERTIFIED
    if w is None:
        payload.update(verdict="not certified", witness=None,
                       message="no covered refinement; this does not mean infeasible")
        _emit(payload, args)
        return EXIT_UNCERTIFIED
    payload.update(verdict="certified", witness=w.to_dict())
    _emit(payload, args)
    return EXIT_OK


def verify_certificate(data: dict, tol: Tolerances) -> dict:
    """Re-run every check recorded in a realization certificate."""
    g = gr.Graph.from_dict(data["graph"])
    A = matrix_from_dict(data["matrix"])
    sigma = [float(x) for x in data["target_spectrum"]]
    checks = {}
    checks["shape"] = A.shape == (g.n, g.n) and len(sigma) == g.n
    if not checks["shape"]:
        return {"valid": False, "checks": checks}
    dev = multiset_distance(eigvalsh(A), sigma)
    checks["spectrum"] = bool(dev <= spectral_bound(sigma))
    checks["pattern"] = pattern_of(A, tol.zero_tol) == g
    minimal = data.get("minimal_stage")
    if minimal:
        g0 = gr.Graph.from_dict(minimal["graph"])
        A0 = matrix_from_dict(minimal["matrix"])
        checks["minimal_pattern"] = pattern_of(A0, tol.zero_tol) == g0
        checks["minimal_ssp"] = has_ssp(A0, g0, tol).has_ssp
        vm = minimal.get("vertex_map")
        if vm is not None:
            checks["blowup_map"] = gr.BlowupSpec(g0, tuple(np.bincount(vm, minlength=g0.n)),
                                                 tuple(vm)).graph == g
    return {"valid": all(checks.values()), "checks": checks, "spectral_deviation": dev}


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    if args.certificate is not None:
        try:
            data = json.loads(Path(args.certificate).read_text())
            report = verify_certificate(data, tol)
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"--certificate: {exc}") from None
    else:
        if not (args.graph and args.matrix and args.spectrum):
            raise InputError("--certificate or all of --graph, --matrix, --spectrum are required")
        g, _ = parse_graph(args.graph)
        A = parse_matrix(args.matrix, g)
        sigma = parse_spectrum(args.spectrum)
        if len(sigma) != g.n:
            raise InputError(f"--spectrum: graph has {g.n} vertices, got {len(sigma)} values")
        report = verify_certificate({"graph": g.to_dict(), "matrix": matrix_to_dict(A),
                                     "target_spectrum": sigma}, tol)
        report["ssp"] = has_ssp(A, g, tol).to_dict()
    _emit(report, args)
    return EXIT_OK if report["valid"] else EXIT_UNCERTIFIED


# ---------------------------------------------------------------- demos

def star_ssp_example(n: int = 5) -> dict:
    """All-ones star matrix on ``K_{1,n}``: not SSP as a star, SSP with
    respect to ``K_{n+1}`` minus the path through the leaves."""
    g = gr.star(n + 1)
    A = adjacency_matrix(g)
    leaf_path = {(i, i + 1) for i in range(1, n)}
    h = gr.Graph(n + 1, [e for e in gr.complete(n + 1).edges if e not in leaf_path])
    star_v = has_ssp(A, g)
    sup_v = has_ssp(A, h)
    # explicit obstruction: leaves 1,2 against leaves n-1,n with a +/- pattern
    X = np.zeros((n + 1, n + 1))
    X0 = np.array([[1.0, -1.0], [-1.0, 1.0]])
    X[np.ix_([1, 2], [n - 1, n])] = X0
    X[np.ix_([n - 1, n], [1, 2])] = X0
    return {
        "graph": g.to_dict(), "supergraph": h.to_dict(),
        "star": star_v.to_dict(), "supergraph_verdict": sup_v.to_dict(),
        "computed_witness_verified": bool(star_v.witness is not None
                                          and verify_witness(A, g, star_v.witness)),
        "explicit_witness_verified": bool(verify_witness(A, g, X)),
    }


DEMOS: dict[str, tuple[str, list[float], str]] = {
    "g94": ("g94", [1, 2, 3, 4, 5, 5], "auto"),
    "g117": ("g117", [-1, -1, -1, 0, 1, 2], "blowup"),
    "g130": ("g130", [-1, -1, -1, 0, 1, 2], "auto"),
    "g150": ("g150", [-1, -1, -1, 0, 1, 2], "blowup"),
    "lollipop63": ("lollipop:6,3", [1, 2, 3, 4, 5, 5, 5, 5, 5], "auto"),
    "barbell623": ("barbell:6,2,3", [1, 2, 3, 4, 5, 6, 6, 6, 6, 6, 6], "auto"),
}
DEMO_NAMES = tuple(sorted([*DEMOS, "star-ssp"]))


def run_demo(name: str, seed: int, tol: Tolerances) -> tuple[dict, int]:
    if name == "star-ssp":
        out = star_ssp_example(5)
        ok = (not out["star"]["has_ssp"] and out["supergraph_verdict"]["has_ssp"]
              and out["computed_witness_verified"] and out["explicit_witness_verified"])
        return out, EXIT_OK if ok else EXIT_UNCERTIFIED
    gtext, sigma, route = DEMOS[name]
    g, tag = parse_graph(gtext)
    try:
        _, cert = _realize_tagged(g, tag, sigma, seed, tol, None, route)
    except InfeasibleError as exc:
        return _failure(g, sigma, "infeasible", str(exc)), EXIT_INFEASIBLE
    except BlockIEPError as exc:
        return _failure(g, sigma, "not certified", str(exc)), EXIT_UNCERTIFIED
    payload = cert.to_dict()
    payload["status"] = "realized"
    return payload, EXIT_OK


def cmd_demo(args) -> int:
    tol = _tolerances(args)
    names = list(DEMO_NAMES) if args.all else [args.name]
    if not args.all and args.name is None:
        raise InputError("demo: give a name or --all")
    for n in names:
        if n not in DEMO_NAMES:
            raise InputError(f"demo: unknown demo {n!r}; known: {', '.join(DEMO_NAMES)}")
    results, code = {}, EXIT_OK
    for n in names:
        results[n], c = run_demo(n, args.seed, tol)
        code = max(code, c)
    _emit(results if args.all else results[names[0]], args)
    return code


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-eig", type=float, default=Tolerances.eig_tol)
    common.add_argument("--tol-zero", type=float, default=Tolerances.zero_tol)
    common.add_argument("--tol-group", type=float, default=Tolerances.group_tol)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="also write the JSON result to this file")

    p = _Parser(prog="blockiep", description="Spectral realizations on graph patterns.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("realize", parents=[common], help="realize a spectrum on a graph")
    r.add_argument("--graph", required=True)
    r.add_argument("--spectrum", required=True)
    r.add_argument("--route", choices=ROUTES, default="auto")
    r.add_argument("--trace", help="write continuation residuals as JSON lines")
    r.set_defaults(func=cmd_realize)

    s = sub.add_parser("ssp", parents=[common], help="check the strong spectral property")
    s.add_argument("--graph", required=True)
    s.add_argument("--matrix", required=True, help="'adjacency', inline JSON or file:path")
    s.add_argument("--wrt", help="supergraph to check against (default: the graph)")
    s.set_defaults(func=cmd_ssp)

    f = sub.add_parser("feasible", parents=[common], help="search for a covered refinement")
    f.add_argument("--graph", required=True)
    f.add_argument("--mults")
    f.add_argument("--spectrum")
    f.set_defaults(func=cmd_feasible)

    v = sub.add_parser("verify", parents=[common], help="re-check a certificate")
    v.add_argument("--certificate")
    v.add_argument("--graph")
    v.add_argument("--matrix")
    v.add_argument("--spectrum")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", parents=[common], help="run a worked example")
    d.add_argument("name", nargs="?")
    d.add_argument("--all", action="store_true")
    d.set_defaults(func=cmd_demo)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
