"""Where quantum information sits in an additive graph code.

The code is the image of the trivial code (codewords ``Z^{sum zeta_j m_j e_j}
|+>^n``, stabilizer ``<X_j^{d_j}>``) under the encoding circuit. An
information-group coset is labelled by ``(xi, zeta)`` with ``x0 = xi`` and
``z0_j = zeta_j m_j`` on the input qudits. It survives the partial trace to a
subset B iff some stabilizer element cancels it on the complement of B, a
linear condition over Z_D.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import modring
from .encode import Normalization, circuit_matrix, coding_group_of, conjugate_by_circuit, graph_gates, normalize_coding_group
from .graph import all_labels
from .modring import matmul_mod
from .pauli import PauliProduct, check_dense, to_dense

PRESENT = "all-present"
ABSENT = "all-absent"
PARTIAL = "partial"


@dataclass(frozen=True, order=True)
class InfoCoset:
    xi: tuple[int, ...]
    zeta: tuple[int, ...]

    @classmethod
    def identity(cls, k: int) -> "InfoCoset":
        return cls((0,) * k, (0,) * k)

    def canonical(self, d) -> "InfoCoset":
        return InfoCoset(tuple(int(a) % dj for a, dj in zip(self.xi, d)), tuple(int(b) % dj for b, dj in zip(self.zeta, d)))

    def compose(self, other: "InfoCoset", d) -> "InfoCoset":
        return InfoCoset(tuple(a + b for a, b in zip(self.xi, other.xi)),
                         tuple(a + b for a, b in zip(self.zeta, other.zeta))).canonical(d)

    def power(self, k: int, d) -> "InfoCoset":
        return InfoCoset(tuple(k * a for a in self.xi), tuple(k * b for b in self.zeta)).canonical(d)

    def is_identity(self) -> bool:
        return not any(self.xi) and not any(self.zeta)

    def name(self, m, logical) -> str:
        """Referred-back form, e.g. ``X01 Z01^2``; exponents on Z are zeta_j m_j."""
        parts = []
        for pos, j in enumerate(logical):
            if self.xi[j]:
                parts.append(f"X0{pos + 1}" + (f"^{self.xi[j]}" if self.xi[j] != 1 else ""))
            e = self.zeta[j] * m[j]
            if e:
                parts.append(f"Z0{pos + 1}" + (f"^{e}" if e != 1 else ""))
        return " ".join(parts) if parts else "I"


@dataclass
class SubsetInfoReport:
    B: tuple[int, ...]
    members: frozenset
    N: Fraction
    rank_PB: int
    classification: str
    generators: list
    names: list

    def to_dict(self) -> dict:
        return {
            "B": list(self.B),
            "classification": self.classification,
            "N": str(self.N),
            "rank_PB": self.rank_PB,
            "members": len(self.members),
            "generators": self.names,
        }


class InfoLocator:
    """Membership oracle for one code; the stabilizer and circuit are built once."""

    def __init__(self, code):
        self.code = code
        self.n, self.D = code.n, code.D
        self.norm: Normalization = normalize_coding_group(coding_group_of(code))
        self.m = np.array(self.norm.m, dtype=np.int64)
        self.d = tuple(self.norm.d)
        self.gates = list(self.norm.W) + graph_gates(code.graph)
        self.Q = conjugate_by_circuit(self.gates, self.n, self.D).data
        self.logical = [j for j in range(self.n) if self.d[j] > 1]
        self.K = int(np.prod(self.d))
        self._cache: dict = {}
        self._dense: dict = {}
        self._Qinv = None

    def _system(self, B):
        B = tuple(sorted(set(int(b) for b in B)))
        if any(b < 0 or b >= self.n for b in B):
            raise ValueError(f"subset entries must lie in 0..{self.n - 1}")
        if B not in self._cache:
            n, D = self.n, self.D
            comp = [j for j in range(n) if j not in B]
            J = np.zeros((2 * n, 2 * n), dtype=np.int64)
            for j in comp:
                J[j, j] = 1
                J[n + j, n + j] = 1
            QJ = matmul_mod(self.Q, J, D)
            T = np.concatenate([QJ[:n], np.diag(self.m)], axis=1)
            sd = modring.smith_normal_form(T, D)
            self._cache[B] = (comp, QJ, T, sd)
        return B, self._cache[B]

    def all_cosets(self):
        ranges = [range(dj) for dj in self.d]
        for xi in itertools.product(*ranges):
            for zeta in itertools.product(*ranges):
                yield InfoCoset(xi, zeta)

    def coset_vector(self, g: InfoCoset) -> np.ndarray:
        return np.concatenate([np.asarray(g.xi, dtype=np.int64), np.asarray(g.zeta, dtype=np.int64) * self.m]) % self.D

    def coset_of_pauli(self, x, z) -> InfoCoset:
        """Coset containing the physical product X^x Z^z; it must preserve the code."""
        n, D = self.n, self.D
        if self._Qinv is None:
            self._Qinv = modring.inverse_mod(self.Q, D).data
        y = matmul_mod(np.concatenate([np.asarray(x), np.asarray(z)]).astype(np.int64)[None, :] % D, self._Qinv, D)[0]
        yx, yz = y[:n], y[n:]
        if np.any(yz % self.m):
            raise ValueError("operator does not preserve the code space")
        return InfoCoset(tuple(int(v) for v in yx), tuple(int(v) for v in yz // self.m)).canonical(self.d)

    def is_member(self, B, g: InfoCoset) -> bool:
        _, (comp, QJ, T, sd) = self._system(B)
        u = matmul_mod(self.coset_vector(g)[None, :], QJ, self.D)[0]
        rhs = np.concatenate([(-u) % self.D, np.zeros(self.n, dtype=np.int64)])
        return modring.solve_mod(T, rhs, self.D, smith=sd).solvable

    def normalization(self, B) -> Fraction:
        B, (comp, QJ, T, sd) = self._system(B)
        s_B = modring.nullspace_size(T, self.D, smith=sd)
        size_S = int(np.prod(self.m))
        return Fraction(s_B * self.D ** len(comp), size_S)

    def classify(self, B, g: InfoCoset):
        """('present', []) / ('absent', []) / ('partial', [k with g^k present])."""
        g = g.canonical(self.d)
        if self.is_member(B, g):
            return "present", []
        powers = [k for k in range(1, self.D) if self.is_member(B, g.power(k, self.d))]
        if not powers:
            return "absent", []
        return "partial", powers

    def report(self, B) -> SubsetInfoReport:
        Bt, _ = self._system(B)
        members = frozenset(g for g in self.all_cosets() if self.is_member(Bt, g))
        N = self.normalization(Bt)
        rank = Fraction(self.K) / N
        if rank.denominator != 1:
            raise ArithmeticError(f"non-integral rank {rank}")
        if len(members) == self.K**2:
            cls = PRESENT
        elif len(members) == 1:
            cls = ABSENT
        else:
            cls = PARTIAL
        gens = generators_of(members, self.d, self.norm.m)
        names = [g.name(self.norm.m, self.logical) for g in gens]
        return SubsetInfoReport(Bt, members, N, int(rank), cls, gens, names)

    # --- dense oracle -------------------------------------------------------

    def encoded_operator(self, g: InfoCoset, cap: int | None = None) -> np.ndarray:
        """V E(x0, z0) P0 V^dag, i.e. the coset element times the code projector."""
        n, D = self.n, self.D
        check_dense(D, n, cap)
        if "V" not in self._dense:
            self._dense["V"] = circuit_matrix(self.gates, n, D, cap)
            self._dense["P0"] = trivial_projector(self.norm.m, n, D)
        V, P0 = self._dense["V"], self._dense["P0"]
        vec = self.coset_vector(g)
        E = to_dense(PauliProduct(D, 0, tuple(vec[:n]), tuple(vec[n:])), cap)
        return V @ E @ P0 @ V.conj().T

    def partial_trace_oracle(self, B, g: InfoCoset, cap: int | None = None) -> np.ndarray:
        Bt, _ = self._system(B)
        return partial_trace(self.encoded_operator(g, cap), Bt, self.n, self.D)


def trivial_projector(m, n: int, D: int) -> np.ndarray:
    """Projector on span{Z^{sum zeta_j m_j e_j}|+>^n}."""
    m = np.asarray(m, dtype=np.int64)
    d = D // m
    L = all_labels(n, D)
    cols = []
    for zeta in itertools.product(*[range(dj) for dj in d]):
        z = np.mod(np.asarray(zeta, dtype=np.int64) * m, D)
        cols.append(np.exp(2j * np.pi * np.mod(L @ z, D) / D) / np.sqrt(D**n))
    A = np.column_stack(cols)
    return A @ A.conj().T


def partial_trace(op: np.ndarray, keep, n: int, D: int) -> np.ndarray:
    keep = sorted(keep)
    drop = [j for j in range(n) if j not in keep]
    t = op.reshape((D,) * (2 * n))
    # trace pairs (j, n + j) for dropped qudits, highest first so axes stay valid
    for j in sorted(drop, reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=j, axis2=j + cur)
    k = len(keep)
    return t.reshape(D**k, D**k)


def _presentation_key(g: InfoCoset, m):
    factors = sum(1 for a in g.xi if a) + sum(1 for b in g.zeta if b)
    size = sum(g.xi) + sum(b * mj for b, mj in zip(g.zeta, m))
    return factors, size, tuple(-a for a in g.xi), g.zeta


def _generated(gens, d) -> set:
    group = {InfoCoset.identity(len(d))}
    frontier = list(group)
    while frontier:
        new = []
        for h in frontier:
            for s in gens:
                c = h.compose(s, d)
                if c not in group:
                    group.add(c)
                    new.append(c)
        frontier = new
    return group


def generators_of(members, d, m=None) -> list[InfoCoset]:
    """Greedy generating set, trying elements with fewest factors and smallest exponents first,
    then dropping any generator the others already produce."""
    m = (1,) * len(d) if m is None else m
    members = sorted(members, key=lambda g: _presentation_key(g, m))
    group = {InfoCoset.identity(len(d))}
    gens: list[InfoCoset] = []
    for g in members:
        if g not in group:
            gens.append(g)
            group = _generated(gens, d)
    for g in list(reversed(gens)):
        rest = [h for h in gens if h != g]
        if len(_generated(rest, d)) == len(group):
            gens = rest
    return gens


def subset_info_group(code, B) -> SubsetInfoReport:
    return InfoLocator(code).report(B)


def classify_type(code, B, g: InfoCoset):
    return InfoLocator(code).classify(B, g)


def locate_all(code, subsets=None) -> list[SubsetInfoReport]:
    loc = InfoLocator(code)
    if subsets is None:
        subsets = [S for r in range(1, code.n + 1) for S in itertools.combinations(range(code.n), r)]
    return [loc.report(B) for B in subsets]


def partial_trace_oracle(code, B, g: InfoCoset, cap: int | None = None) -> np.ndarray:
    return InfoLocator(code).partial_trace_oracle(B, g, cap)
