"""Graph codes: clique and additive searches, verification, constructions
and the X-type stabilizer dual."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import modring
from .graph import (
    QuditGraph,
    all_labels,
    diagonal_distance,
    graph_basis_vector,
    label_string,
    label_to_index,
    pauli_distance,
    pauli_distance_table,
    star_graph,
)
from .pauli import DENSE_CAP, PauliProduct, apply_pauli

CLIQUE_BUDGET = 10**7


class CodeError(ValueError):
    """Precondition failures: degenerate regime, inapplicable constructions."""


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class GraphCode:
    graph: QuditGraph
    codewords: np.ndarray
    delta: int
    additive: bool = False
    search_complete: bool = True
    generators: np.ndarray | None = None
    nodes: int = 0

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def D(self) -> int:
        return self.graph.D

    @property
    def K(self) -> int:
        return int(self.codewords.shape[0])

    def report(self) -> dict:
        out = {
            "n": self.n,
            "D": self.D,
            "delta": self.delta,
            "K": self.K,
            "additive": bool(self.additive),
            "qs_saturated": self.K == qs_bound(self.n, self.D, self.delta),
            "search_complete": bool(self.search_complete),
            "codewords": [label_string(c) for c in self.codewords],
            "graph": self.graph.to_dict(),
        }
        if self.generators is not None:
            out["generators"] = [label_string(g) for g in self.generators]
        return out


def code_from_report(rep: dict) -> GraphCode:
    g = rep["graph"]
    G = QuditGraph.from_edges(int(g["n"]), int(g["D"]), g.get("edges", []))
    words = np.array([_parse_label(s, G.D) for s in rep["codewords"]], dtype=np.int64).reshape(-1, G.n)
    gens = rep.get("generators")
    gens = np.array([_parse_label(s, G.D) for s in gens], dtype=np.int64).reshape(-1, G.n) if gens else None
    return GraphCode(G, words, int(rep["delta"]), bool(rep.get("additive", False)), bool(rep.get("search_complete", True)), gens)


def _parse_label(s: str, D: int) -> list[int]:
    out, i = [], 0
    while i < len(s):
        if s[i] == "(":
            j = s.index(")", i)
            out.append(int(s[i + 1:j]))
            i = j + 1
        else:
            out.append(int(s[i]))
            i += 1
    if any(not 0 <= v < D for v in out):
        raise ValueError(f"label {s!r} has digits outside Z_{D}")
    return out


def qs_bound(n: int, D: int, delta: int) -> int:
    if delta < 1:
        raise ValueError("delta must be at least 1")
    e = n - 2 * (delta - 1)
    return D**e if e >= 0 else 0


# --- groups of labels ------------------------------------------------------

def span(gens, n: int, D: int) -> np.ndarray:
    """All Z_D-combinations of the generator rows, sorted by label index."""
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    elems = np.zeros((1, n), dtype=np.int64)
    for g in np.asarray(gens, dtype=np.int64).reshape(-1, n):
        mult = np.mod(np.arange(D)[:, None] * g[None, :], D)
        elems = np.mod((elems[:, None, :] + mult[None, :, :]).reshape(-1, n), D)
        elems = np.unique(elems, axis=0)
    return elems[np.argsort(elems @ weights, kind="stable")]


def is_additive(words: np.ndarray, D: int) -> bool:
    words = np.asarray(words, dtype=np.int64)
    n = words.shape[1]
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    idx = set((words @ weights).tolist())
    if 0 not in idx:
        return False
    sums = np.mod(words[:, None, :] + words[None, :, :], D).reshape(-1, n) @ weights
    return set(sums.tolist()) <= idx


# --- candidate structure ---------------------------------------------------

class _Distances:
    """Delta(0, a) >= delta oracle backed by a table or per-pair queries."""

    def __init__(self, G: QuditGraph, delta: int):
        self.G = G
        self.delta = delta
        self.table = pauli_distance_table(G, limit=delta - 1)
        self.cache: dict[int, bool] = {}

    def far(self, a) -> bool:
        if self.table is not None:
            return self.table[a] >= self.delta
        key = label_to_index(a, self.G.D)
        if key not in self.cache:
            self.cache[key] = pauli_distance(self.G, a, limit=self.delta - 1) >= self.delta
        return self.cache[key]

    def allowed_mask(self) -> np.ndarray:
        """Boolean over all labels: zero or at distance >= delta."""
        if self.table is not None:
            mask = self.table.values >= self.delta
        else:
            L = all_labels(self.G.n, self.G.D)
            mask = np.array([self.far(a) for a in L])
        mask[0] = True
        return mask


def _check_regime(G: QuditGraph, delta: int) -> int:
    dp = diagonal_distance(G)
    if delta > dp:
        raise CodeError(f"degenerate regime: delta={delta} exceeds diagonal distance {dp}")
    return dp


# --- maximum clique --------------------------------------------------------

class _TargetReached(Exception):
    pass


def max_clique(adj: list[int], budget: int = CLIQUE_BUDGET, initial: list[int] | None = None, target: int | None = None):
    """Branch and bound with greedy-colouring bounds on bitset adjacency.

    Returns (clique, complete, nodes). Vertices are ordered by degree
    (descending, ties by index) before colouring. Reaching ``target`` (a
    known upper bound) ends the search as complete.
    """
    nv = len(adj)
    order = sorted(range(nv), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * nv
    for v in range(nv):
        bits = 0
        a = adj[v]
        while a:
            low = a & -a
            bits |= 1 << pos[low.bit_length() - 1]
            a ^= low
        radj[pos[v]] = bits
    best = [pos[v] for v in (initial or [])]
    nodes = 0
    complete = True

    def colour(P):
        out = []
        U = P
        c = 0
        while U:
            c += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~radj[v] & ~low
                U &= ~low
                out.append((v, c))
        return out

    def expand(R, P):
        nonlocal best, nodes, complete
        nodes += 1
        if nodes > budget:
            complete = False
            raise BudgetExhausted
        for v, c in reversed(colour(P)):
            if len(R) + c <= len(best):
                return
            NP = P & radj[v]
            R.append(v)
            if NP:
                expand(R, NP)
            elif len(R) > len(best):
                best = list(R)
                if target is not None and len(best) >= target:
                    raise _TargetReached
            R.pop()
            P &= ~(1 << v)

    if target is not None and len(best) >= target:
        return sorted(order[v] for v in best), True, nodes
    try:
        expand([], (1 << nv) - 1 if nv else 0)
    except BudgetExhausted:
        pass
    except _TargetReached:
        complete = True
    return sorted(order[v] for v in best), complete, nodes


def _candidates(G: QuditGraph, dist: _Distances) -> np.ndarray:
    L = all_labels(G.n, G.D)
    mask = dist.allowed_mask()
    mask[0] = False
    return L[mask]


def _compat_bitsets(cands: np.ndarray, mask: np.ndarray, D: int) -> list[int]:
    n = cands.shape[1]
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    adj = []
    for i in range(cands.shape[0]):
        diff = np.mod(cands - cands[i], D) @ weights
        ok = mask[diff]
        ok[i] = False
        bits = 0
        for j in np.flatnonzero(ok):
            bits |= 1 << int(j)
        adj.append(bits)
    return adj


def search_code_clique(G: QuditGraph, delta: int, node_budget: int = CLIQUE_BUDGET, seed_words=None,
                       seed_additive: bool = True) -> GraphCode:
    """Largest code containing |0> with pairwise distance >= delta.

    The incumbent is seeded with the best additive code (when requested),
    which settles every instance where that code meets the Singleton bound.
    """
    _check_regime(G, delta)
    dist = _Distances(G, delta)
    if dist.table is None:
        raise CodeError("clique search needs a distance table; D^n exceeds the table budget")
    if seed_words is None and seed_additive:
        seed_words = search_additive(G, delta, node_budget=min(node_budget, 10**5)).codewords
    mask = dist.allowed_mask()
    cands = _candidates(G, dist)
    adj = _compat_bitsets(cands, mask, G.D)
    initial = None
    if seed_words is not None:
        index = {tuple(c): i for i, c in enumerate(cands.tolist())}
        initial = [index[tuple(w)] for w in np.asarray(seed_words).tolist() if any(w)]
    target = qs_bound(G.n, G.D, delta) - 1
    clique, complete, nodes = max_clique(adj, node_budget, initial, target)
    words = np.vstack([np.zeros((1, G.n), dtype=np.int64), cands[clique]]) if clique else np.zeros((1, G.n), dtype=np.int64)
    K = words.shape[0]
    if K == qs_bound(G.n, G.D, delta):
        complete = True
    return GraphCode(G, words, delta, is_additive(words, G.D), complete, None, nodes)


# --- additive search -------------------------------------------------------

def search_additive(G: QuditGraph, delta: int, node_budget: int = 10**6) -> GraphCode:
    """Best additive code by depth-first generator extension.

    Each step adds a label whose span with the current group stays inside
    the allowed set; compatible labels are filtered as the group grows.
    """
    _check_regime(G, delta)
    n, D = G.n, G.D
    dist = _Distances(G, delta)
    mask = dist.allowed_mask()
    L = all_labels(n, D)
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    target = qs_bound(n, D, delta)

    def closure(group_idx, c):
        g = L[group_idx]
        mult = np.mod(np.arange(D)[:, None] * L[c][None, :], D)
        new = np.mod((g[:, None, :] + mult[None, :, :]).reshape(-1, n), D) @ weights
        return np.unique(new)

    # labels whose own cyclic group is allowed
    start = [c for c in range(1, D**n) if mask[c] and all(mask[(k * L[c] % D) @ weights] for k in range(1, D))]
    best = {"group": np.array([0]), "gens": []}
    seen: set[bytes] = set()
    nodes = 0
    complete = True

    def dfs(group, gens, cands):
        nonlocal nodes, complete
        nodes += 1
        if nodes > node_budget:
            complete = False
            raise BudgetExhausted
        if group.size > best["group"].size:
            best["group"], best["gens"] = group, list(gens)
        if best["group"].size >= target:
            raise StopIteration
        members = set(group.tolist())
        for i, c in enumerate(cands):
            if c in members:
                continue
            ng = closure(group, c)
            if not mask[ng].all():
                continue
            key = ng.tobytes()
            if key in seen:
                continue
            seen.add(key)
            rest = [d for d in cands[i + 1:] if d not in ng]
            dfs(ng, gens + [c], rest)

    try:
        dfs(np.array([0]), [], start)
    except StopIteration:
        complete = True
    except BudgetExhausted:
        pass
    group = best["group"]
    words = L[np.sort(group)]
    gens = L[best["gens"]] if best["gens"] else np.zeros((0, n), dtype=np.int64)
    if words.shape[0] >= target:
        complete = True
    return GraphCode(G, words, delta, True, complete, gens, nodes)


# --- verification ----------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "failures": self.failures}


def verify_code(code: GraphCode, dense: bool | None = None, cap: int = DENSE_CAP) -> VerifyReport:
    G, delta = code.graph, code.delta
    n, D = G.n, G.D
    words = np.mod(np.asarray(code.codewords, dtype=np.int64), D)
    rep = VerifyReport(ok=True)
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    idx = words @ weights
    if len(set(idx.tolist())) != len(idx):
        rep.failures.append({"check": "distinct", "detail": "repeated codeword"})

    dp = diagonal_distance(G)
    rep.checks["diagonal_distance"] = dp
    if delta > dp:
        rep.failures.append({"check": "nondegenerate", "detail": f"delta {delta} > diagonal distance {dp}"})

    additive = is_additive(words, D)
    rep.checks["additive"] = additive
    if code.additive and not additive:
        rep.failures.append({"check": "additive", "detail": "codeword set is not closed under addition"})

    qs = qs_bound(n, D, delta)
    rep.checks["qs_bound"] = qs
    if words.shape[0] > qs:
        rep.failures.append({"check": "qs_bound", "detail": f"K={words.shape[0]} exceeds {qs}"})

    dist = _Distances(G, delta)
    if additive:
        # differences of a group are the group itself
        bad = [w for w in words if any(w) and not dist.far(w)]
        if bad:
            rep.failures.append({"check": "distance", "pair": [label_string(np.zeros(n, int)), label_string(bad[0])]})
    else:
        for i, j in itertools.combinations(range(words.shape[0]), 2):
            if not dist.far(np.mod(words[j] - words[i], D)):
                rep.failures.append({"check": "distance", "pair": [label_string(words[i]), label_string(words[j])]})
                break
    rep.checks["distance"] = not any(f["check"] == "distance" for f in rep.failures)

    if dense is None:
        dense = D**n <= cap and words.shape[0] * D**n <= 2**20
    if dense:
        witness = _dense_kl(G, words, delta, cap)
        rep.checks["dense_kl"] = witness is None
        if witness is not None:
            rep.failures.append({"check": "dense_kl", "operator": witness})
    rep.ok = not rep.failures
    return rep


def _dense_kl(G: QuditGraph, words: np.ndarray, delta: int, cap: int):
    """Check <c_q|Q|c_r> = f(Q) delta_qr for every Pauli product of size < delta."""
    n, D = G.n, G.D
    B = np.column_stack([graph_basis_vector(G, w, cap) for w in words])
    for s in range(1, delta):
        pairs = [(m, v) for m in range(D) for v in range(D) if m or v]
        for S in itertools.combinations(range(n), s):
            for choice in itertools.product(pairs, repeat=s):
                x = [0] * n
                z = [0] * n
                for q, (m, v) in zip(S, choice):
                    x[q], z[q] = m, v
                P = PauliProduct(D, 0, tuple(x), tuple(z))
                M = B.conj().T @ apply_pauli(P, B, cap)
                f = M[0, 0]
                if np.abs(M - f * np.eye(M.shape[0])).max() > 1e-9:
                    return P.text()
    return None


# --- constructions ---------------------------------------------------------

def additive_code(G: QuditGraph, gens, delta: int = 1) -> GraphCode:
    """Code spanned by the coding-group generators ``gens`` on graph G (not verified)."""
    gens = np.mod(np.asarray(gens, dtype=np.int64).reshape(-1, G.n), G.D)
    return GraphCode(G, span(gens, G.n, G.D), delta, True, True, gens)


def partition_code(G: QuditGraph, V1, V2) -> GraphCode:
    n, D = G.n, G.D
    V1, V2 = sorted(set(V1)), sorted(set(V2))
    if not V1 or not V2 or set(V1) & set(V2) or set(V1) | set(V2) != set(range(n)):
        raise CodeError("partition inapplicable: V1, V2 must be nonempty and partition the vertices")
    from math import gcd

    for block, other in ((V1, V2), (V2, V1)):
        for v in block:
            m = int(G.gamma[v, other].sum()) % D
            if m == 0 or gcd(m, D) != 1:
                raise CodeError(f"partition inapplicable: vertex {v} has {int(G.gamma[v, other].sum())} edges to the other block")
    c1 = np.zeros(n, dtype=np.int64)
    c1[V1] = 1
    c2 = np.zeros(n, dtype=np.int64)
    c2[V2] = 1
    S = np.vstack([c1, c2])
    gens = stabilizer_dual_generators(S, D)
    words = span(gens, n, D)
    code = GraphCode(G, words, 2, True, True, gens)
    rep = verify_code(code, dense=False)
    if not rep.ok:
        raise CodeError(f"partition code failed verification: {rep.failures}")  # pragma: no cover
    return code


def star_code(n: int) -> GraphCode:
    if n < 3 or n % 2 == 0:
        raise CodeError("star codes need odd n >= 3")
    words = []
    for r in star_code_R(n):
        for S in itertools.combinations(range(1, n), r):
            w = np.zeros(n, dtype=np.int64)
            w[list(S)] = 1
            words.append(w)
    words = np.array(words, dtype=np.int64)
    code = GraphCode(star_graph(n, 2), words, 2, is_additive(words, 2), True)
    return code


def star_code_size(n: int) -> int:
    return 2 ** (n - 2) - comb(n - 1, (n - 1) // 2) // 2


def star_code_R(n: int) -> list[int]:
    """Greedy weight set: no two adjacent weights, no complementary pair r, n-1-r."""
    p = n - 1
    R: list[int] = []
    for r in range(p + 1):
        if r - 1 in R or r + 1 in R or p - r in R or p - r == r:
            continue
        R.append(r)
    return R


# --- duality ---------------------------------------------------------------

def stabilizer_dual_generators(C_gens, D: int) -> np.ndarray:
    """Generators of {s : c.s = 0 mod D for every row c}."""
    C = np.mod(np.asarray(C_gens, dtype=np.int64), D)
    n = C.shape[1]
    if C.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    sol = modring.solve_mod(C.T, np.zeros(C.shape[0], dtype=np.int64), D)
    return sol.nullspace


def stabilizer_dual(code: GraphCode) -> np.ndarray:
    if not is_additive(code.codewords, code.D):
        raise CodeError("stabilizer dual needs an additive code")
    gens = code.generators if code.generators is not None and len(code.generators) else code.codewords
    return stabilizer_dual_generators(gens, code.D)


def dual_back(S_gens, D: int) -> np.ndarray:
    S_gens = np.asarray(S_gens, dtype=np.int64)
    return span(stabilizer_dual_generators(S_gens, D), S_gens.shape[1], D)
