"""Qudit graphs, graph states and Pauli distances.

Everything distance-related is integer arithmetic on labels: by the X-Z
rule, ``X^mu Z^nu |G>`` is proportional to the graph basis state
``|nu + Gamma mu>``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .pauli import check_dense

TABLE_BUDGET = 2**16


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class QuditGraph:
    D: int
    gamma: np.ndarray

    def __post_init__(self):
        g = np.mod(np.array(self.gamma, dtype=np.int64), self.D)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(g, g.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(g)):
            raise ValueError("self loops are not allowed")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    def __eq__(self, other):
        return isinstance(other, QuditGraph) and self.D == other.D and np.array_equal(self.gamma, other.gamma)

    def __hash__(self):
        return hash((self.D, self.gamma.tobytes()))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(a, b, int(self.gamma[a, b])) for a in range(self.n) for b in range(a + 1, self.n) if self.gamma[a, b]]

    def neighbor_counts(self) -> np.ndarray:
        return np.count_nonzero(self.gamma, axis=1)

    @classmethod
    def from_edges(cls, n: int, D: int, edges) -> "QuditGraph":
        g = np.zeros((n, n), dtype=np.int64)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = int(e[2]) if len(e) > 2 else 1
            if u == v:
                raise ValueError(f"self loop on vertex {u}")
            g[u, v] += w
            g[v, u] += w
        return cls(D, g)

    def to_dict(self) -> dict:
        return {"n": self.n, "D": self.D, "edges": [list(e) for e in self.edges()]}


def empty_graph(n: int, D: int) -> QuditGraph:
    return QuditGraph(D, np.zeros((n, n), dtype=np.int64))


def cycle_graph(n: int, D: int, double_edge: bool = False) -> QuditGraph:
    """Cycle on n vertices; optionally the edge (n-1, 0) has multiplicity 2."""
    edges = [(i, (i + 1) % n, 1) for i in range(n)]
    if double_edge:
        edges[-1] = (n - 1, 0, 2)
    return QuditGraph.from_edges(n, D, edges)


def complete_graph(n: int, D: int) -> QuditGraph:
    return QuditGraph.from_edges(n, D, itertools.combinations(range(n), 2))


def star_graph(n: int, D: int) -> QuditGraph:
    """Vertex 0 is the center."""
    return QuditGraph.from_edges(n, D, [(0, i) for i in range(1, n)])


def bar_graph(n: int, D: int) -> QuditGraph:
    """Bars (0,1), (2,3), ...; for odd n the extra vertex n-1 hangs off vertex n-3."""
    edges = [(i, i + 1) for i in range(0, n - 1, 2)]
    if n % 2:
        edges.append((n - 3, n - 1))
    return QuditGraph.from_edges(n, D, edges)


def bar_partition(n: int) -> tuple[list[int], list[int]]:
    """Blocks of the bar graph: even vertices, then odd vertices plus the extra one."""
    v1 = list(range(0, n - 1, 2)) if n % 2 else list(range(0, n, 2))
    v2 = [v for v in range(n) if v not in v1]
    return v1, v2


def hypercube_graph(dim: int, D: int) -> QuditGraph:
    n = 2**dim
    edges = [(v, v ^ (1 << k)) for v in range(n) for k in range(dim) if v < v ^ (1 << k)]
    return QuditGraph.from_edges(n, D, edges)


# --- file format -----------------------------------------------------------

def parse_graph(text: str) -> QuditGraph:
    lines = [(i + 1, ln.split("#")[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise GraphFormatError("line 1: empty graph file")
    lineno, head = lines[0]
    try:
        n, D = (int(t) for t in head.split())
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected header 'n D'") from None
    if n < 1 or D < 2:
        raise GraphFormatError(f"line {lineno}: need n >= 1 and D >= 2")
    g = np.zeros((n, n), dtype=np.int64)
    for lineno, ln in lines[1:]:
        parts = ln.split()
        try:
            u, v, w = (int(t) for t in parts)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected 'u v w'") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self loop on vertex {u}")
        if not 1 <= w < D:
            raise GraphFormatError(f"line {lineno}: weight must satisfy 1 <= w < D")
        g[u, v] += w
        g[v, u] += w
    return QuditGraph(D, g)


def read_graph(path) -> QuditGraph:
    return parse_graph(Path(path).read_text())


def format_graph(G: QuditGraph) -> str:
    out = [f"{G.n} {G.D}"]
    out += [f"{u} {v} {w}" for u, v, w in G.edges()]
    return "\n".join(out) + "\n"


# --- labels ----------------------------------------------------------------

def label_to_index(a, D: int) -> int:
    idx = 0
    for v in a:
        idx = idx * D + int(v) % D
    return idx


def index_to_label(idx: int, n: int, D: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, D)
        out.append(r)
    return tuple(reversed(out))


def all_labels(n: int, D: int) -> np.ndarray:
    """Every label in Z_D^n as rows, ordered by ``label_to_index``."""
    return np.array(list(itertools.product(range(D), repeat=n)), dtype=np.int64).reshape(-1, n)


def label_string(a) -> str:
    return "".join(str(int(v)) if v < 10 else f"({int(v)})" for v in a)


def pauli_image_index(G: QuditGraph, mu, nu) -> tuple[int, ...]:
    mu = np.asarray(mu, dtype=np.int64)
    nu = np.asarray(nu, dtype=np.int64)
    if mu.shape != (G.n,) or nu.shape != (G.n,):
        raise ValueError(f"exponent tuples must have length {G.n}")
    return tuple(int(v) for v in np.mod(nu + G.gamma @ mu, G.D))


# --- states ----------------------------------------------------------------

def graph_state_vector(G: QuditGraph, cap: int | None = None) -> np.ndarray:
    return graph_basis_vector(G, (0,) * G.n, cap)


def graph_basis_vector(G: QuditGraph, a, cap: int | None = None) -> np.ndarray:
    """Amplitudes of Z^a |G> in the computational basis (first qudit most significant)."""
    dim = check_dense(G.D, G.n, cap)
    j = all_labels(G.n, G.D)
    upper = np.triu(G.gamma, 1)
    phase = np.einsum("ka,ab,kb->k", j, upper, j) + j @ np.asarray(a, dtype=np.int64)
    return np.exp(2j * np.pi * np.mod(phase, G.D) / G.D) / np.sqrt(dim)


# --- distances -------------------------------------------------------------

def _site_patterns(D: int, s: int) -> tuple[np.ndarray, np.ndarray]:
    """All (mu, nu) on s sites with every site nontrivial."""
    pairs = [(m, v) for m in range(D) for v in range(D) if m or v]
    combos = np.array(list(itertools.product(range(len(pairs)), repeat=s)), dtype=np.int64).reshape(-1, s)
    pairs = np.array(pairs, dtype=np.int64)
    return pairs[combos, 0], pairs[combos, 1]


@dataclass(frozen=True)
class DistanceTable:
    """Delta(0, a) for every label a, exact up to ``limit``.

    Entries equal to ``limit + 1`` mean "at least limit + 1". With
    ``limit == n`` the table is exact everywhere.
    """

    D: int
    n: int
    values: np.ndarray
    limit: int

    def __getitem__(self, a) -> int:
        return int(self.values[label_to_index(a, self.D)])

    def at_least(self, a, delta: int) -> bool:
        return self[a] >= delta


def pauli_distance_table(G: QuditGraph, limit: int | None = None, budget: int = TABLE_BUDGET) -> DistanceTable | None:
    """Minimum Pauli-product size connecting |0> to each |a>.

    Returns ``None`` when D^n exceeds ``budget``; callers then fall back to
    :func:`pauli_distance`.
    """
    n, D = G.n, G.D
    if D**n > budget:
        return None
    limit = n if limit is None else min(limit, n)
    size = D**n
    table = np.full(size, limit + 1, dtype=np.int64)
    table[0] = 0
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    remaining = size - 1
    for s in range(1, limit + 1):
        mus, nus = _site_patterns(D, s)
        for S in itertools.combinations(range(n), s):
            S = list(S)
            a = np.mod(mus @ G.gamma[S, :], D)
            a[:, S] = np.mod(a[:, S] + nus, D)
            idx = a @ weights
            fresh = table[idx] > s
            if fresh.any():
                hit = np.unique(idx[fresh])
                remaining -= int(np.count_nonzero(table[hit] > s))
                table[hit] = s
        if remaining == 0:
            break
    return DistanceTable(D, n, table, limit)


def pauli_distance(G: QuditGraph, a, b=None, limit: int | None = None) -> int:
    """Delta(a, b) by direct minimization over mu (no table).

    With ``limit`` set, the search stops once it can certify the value is
    larger than ``limit`` and returns ``limit + 1``.
    """
    n, D = G.n, G.D
    target = np.mod(np.asarray(a, dtype=np.int64) if b is None else np.asarray(b) - np.asarray(a), D)
    best = int(np.count_nonzero(target))
    cap = best if limit is None else min(best, limit + 1)
    for s in range(1, n + 1):
        if s >= cap:
            break
        nz = np.array(list(itertools.product(range(1, D), repeat=s)), dtype=np.int64)
        for S in itertools.combinations(range(n), s):
            S = list(S)
            rest = np.ones(n, dtype=bool)
            rest[S] = False
            img = np.mod(nz @ G.gamma[S, :], D)
            cost = s + np.count_nonzero(img[:, rest] != target[rest], axis=1)
            cap = min(cap, int(cost.min()))
    return cap if limit is None or cap <= limit else limit + 1


def diagonal_distance(G: QuditGraph) -> int:
    """min over mu != 0 of |supp(mu) U supp(Gamma mu)|."""
    n, D = G.n, G.D
    best = n
    for s in range(1, n + 1):
        if s >= best:
            break
        nz = np.array(list(itertools.product(range(1, D), repeat=s)), dtype=np.int64)
        for S in itertools.combinations(range(n), s):
            S = list(S)
            rest = np.ones(n, dtype=bool)
            rest[S] = False
            img = np.mod(nz @ G.gamma[S, :], D)
            cost = s + np.count_nonzero(img[:, rest], axis=1)
            best = min(best, int(cost.min()))
    return best


def export_table_csv(table: DistanceTable) -> str:
    rows = ["a_base_D,delta"]
    for idx in range(table.values.shape[0]):
        rows.append(f"{label_string(index_to_label(idx, table.n, table.D))},{int(table.values[idx])}")
    return "\n".join(rows) + "\n"
