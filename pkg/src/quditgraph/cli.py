"""Command-line entry point: ``quditgraph <subcommand> ...``.

Exit status: 0 success, 1 negative verification verdict, 2 precondition or
input error, 3 search budget exhausted (the partial result is still written).
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .cloning import builtin_group, entanglement_gap, gamma_min_bound, parse_family, read_group, simulate_clone_protocol
from .codes import (
    CLIQUE_BUDGET,
    code_from_report,
    dual_back,
    search_additive,
    search_code_clique,
    stabilizer_dual,
    verify_code,
)
from .encode import coding_group_of, graph_gates, normalize_coding_group
from .entangle import majorization_report, p_max
from .equibases import default_grid, family_sweep, sweep_csv
from .graph import label_string, read_graph
from .infoloc import InfoLocator
from .pauli import ResourceError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.15g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}: {e.msg}") from None


def _load_code(path: str):
    rep = _load_json(path)
    try:
        return code_from_report(rep)
    except (KeyError, TypeError) as e:
        raise InputError(f"{path}: missing or malformed field {e}") from None


def read_spectrum(path: str) -> list[float]:
    """Numbers separated by commas, whitespace or newlines; '#' starts a comment."""
    vals = []
    for i, ln in enumerate(Path(path).read_text().splitlines(), 1):
        ln = ln.split("#")[0].replace(",", " ").strip()
        for tok in ln.split():
            try:
                vals.append(float(tok))
            except ValueError:
                raise InputError(f"{path}: line {i}: not a number: {tok!r}") from None
    if not vals:
        raise InputError(f"{path}: empty spectrum")
    return vals


def parse_subset(text: str, n: int) -> tuple[int, ...]:
    """1-based carrier labels such as '1,3' to 0-based indices."""
    try:
        B = sorted({int(t) for t in text.replace(" ", "").split(",") if t})
    except ValueError:
        raise InputError(f"bad subset {text!r}; expected e.g. 1,3") from None
    if not B or B[0] < 1 or B[-1] > n:
        raise InputError(f"subset entries must lie in 1..{n}")
    return tuple(b - 1 for b in B)


# --- subcommands -------------------------------------------------------------

def cmd_code_search(args) -> int:
    G = read_graph(args.graph)
    if args.additive:
        code = search_additive(G, args.delta, node_budget=args.budget or 10**6)
    else:
        code = search_code_clique(G, args.delta, node_budget=args.budget or CLIQUE_BUDGET)
    rep = code.report()
    rep["nodes"] = code.nodes
    _emit(dumps(rep), args.out)
    return EXIT_OK if code.search_complete else EXIT_BUDGET


def cmd_code_verify(args) -> int:
    code = _load_code(args.code)
    rep = verify_code(code, dense=args.dense)
    _emit(dumps(rep.to_dict()), args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_stab_dual(args) -> int:
    code = _load_code(args.code)
    S = stabilizer_dual(code)
    back = {tuple(r) for r in dual_back(S, code.D).tolist()}
    words = {tuple(r) for r in np.asarray(code.codewords).tolist()}
    out = {
        "D": code.D,
        "n": code.n,
        "stabilizer_generators": [label_string(s) for s in S],
        "double_dual_matches": back == words,
    }
    _emit(dumps(out), args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = _load_code(args.code)
    norm = normalize_coding_group(coding_group_of(code))
    gates = list(norm.W) + graph_gates(code.graph)
    out = {
        "n": code.n,
        "D": code.D,
        "K": norm.K,
        "m": list(norm.m),
        "d": list(norm.d),
        "smith_diagonal": norm.smith.diagonal(),
        "gates": [g.to_dict() for g in gates],
        "order": "time",
    }
    _emit(dumps(out), args.out)
    return EXIT_OK


def cmd_infoloc(args) -> int:
    code = _load_code(args.code)
    loc = InfoLocator(code)
    if args.subset:
        subsets = [parse_subset(s, code.n) for s in args.subset]
    else:
        subsets = [S for r in range(1, code.n + 1) for S in itertools.combinations(range(code.n), r)]
    reports = []
    for B in subsets:
        d = loc.report(B).to_dict()
        d["B"] = [b + 1 for b in d["B"]]
        reports.append(d)
    out = {"n": code.n, "D": code.D, "K": loc.K, "m": [int(v) for v in loc.m], "subsets": reports}
    _emit(dumps(out), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    psi, phi = read_spectrum(args.psi), read_spectrum(args.phi)
    rep = majorization_report(psi, phi)
    rep["p_max"] = p_max(psi, phi)
    rep["deterministic"] = rep["majorizes"]
    _emit(dumps(rep), args.out)
    return EXIT_OK


def _group(spec: str):
    if Path(spec).exists():
        return read_group(spec)
    name, _, order = spec.partition(":")
    return builtin_group(name, int(order) if order else None)


def cmd_clone_sim(args) -> int:
    group = _group(args.group)
    fam = parse_family(Path(args.family).read_text(), group)
    rep = simulate_clone_protocol(fam, measure=not args.no_measure).to_dict()
    rep["gamma_min_bound"] = gamma_min_bound(fam)
    try:
        rep["entanglement_gap"] = {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in entanglement_gap(fam).items()}
    except ValueError:
        rep["entanglement_gap"] = None
    _emit(dumps(rep), args.out)
    return EXIT_OK


def cmd_bases_sweep(args) -> int:
    grid = default_grid(args.grid)
    if args.threads > 1:
        chunks = np.array_split(grid, args.threads)
        with ThreadPoolExecutor(args.threads) as ex:
            rows = [r for part in ex.map(lambda g: family_sweep(args.family, args.D, g), chunks) for r in part]
    else:
        rows = family_sweep(args.family, args.D, grid)
    _emit(sweep_csv(rows), args.out)
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quditgraph", description="Qudit graph codes and entanglement tools.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=0, help="reserved; no command is randomized")
    p.add_argument("--threads", type=int, default=1, help="worker threads where a command can use them")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("-o", "--out", help="write output here instead of stdout")
        s.set_defaults(func=func)
        return s

    s = add("code-search", cmd_code_search, "largest graph code for a graph file")
    s.add_argument("graph")
    s.add_argument("--delta", type=int, required=True)
    s.add_argument("--additive", action="store_true", help="search additive codes only")
    s.add_argument("--budget", type=int, default=None, help="node budget")

    s = add("code-verify", cmd_code_verify, "check a code report")
    s.add_argument("code")
    s.add_argument("--dense", action="store_true", default=None, help="also run the dense Knill-Laflamme check")

    s = add("stab-dual", cmd_stab_dual, "X-type stabilizer dual of an additive code")
    s.add_argument("code")

    s = add("encode", cmd_encode, "encoding circuit as a gate list")
    s.add_argument("code")

    s = add("infoloc", cmd_infoloc, "information location on carrier subsets")
    s.add_argument("code")
    s.add_argument("--subset", action="append", help="1-based carriers, e.g. 1,3; repeatable; default all")

    s = add("transform", cmd_transform, "majorization and p_max between two Schmidt spectra")
    s.add_argument("psi")
    s.add_argument("phi")

    s = add("clone-sim", cmd_clone_sim, "local cloning of a group-shifted family")
    s.add_argument("group", help="Cayley table file, 's3' or 'cyclic:D'")
    s.add_argument("family", help="lines 'g lambda_g'")
    s.add_argument("--no-measure", action="store_true", help="skip the measurement step")

    s = add("bases-sweep", cmd_bases_sweep, "Schmidt spectra of an equientangled family versus t")
    s.add_argument("--family", choices=("gauss", "graph"), required=True)
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--grid", type=int, default=101, help="number of uniform t points")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (ValueError, ResourceError, OSError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
