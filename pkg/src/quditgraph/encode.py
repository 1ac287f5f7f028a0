"""Encoding circuits for additive graph codes.

The coding group is brought to the trivial form <Z_j^{m_j}> by a Smith
decomposition; column operations become SWAP, S_q and CNOT gates (W), and
the graph is then built with controlled-phase gates (U).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import modring
from .graph import QuditGraph
from .modring import ModMatrix, inverse_unit, matmul_mod
from .pauli import check_dense

GATE_NAMES = ("F", "S", "CNOT", "SWAP", "CP")


@dataclass(frozen=True)
class Gate:
    """One Clifford gate. ``power`` is the exponent (CNOT, CP, F) or q for S."""

    name: str
    qudits: tuple[int, ...]
    power: int = 1

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name}")
        arity = 1 if self.name in ("F", "S") else 2
        if len(self.qudits) != arity or len(set(self.qudits)) != arity:
            raise ValueError(f"{self.name} acts on {arity} distinct qudit(s)")

    def to_dict(self) -> dict:
        return {"gate": self.name, "qudits": list(self.qudits), "power": self.power}

    @classmethod
    def from_dict(cls, d: dict) -> "Gate":
        return cls(d["gate"], tuple(int(q) for q in d["qudits"]), int(d.get("power", 1)))


@dataclass(frozen=True)
class CodingGroup:
    n: int
    D: int
    f: np.ndarray  # rows are Z-exponent generators


@dataclass(frozen=True)
class Normalization:
    m: tuple[int, ...]
    d: tuple[int, ...]
    W: tuple[Gate, ...]
    smith: modring.SmithDecomposition

    @property
    def K(self) -> int:
        return int(np.prod(self.d))

    def logical_images(self) -> np.ndarray:
        """Row j is the Z exponent that Z_{0j}^{m_j} becomes after W (zero rows for m_j = D)."""
        D = self.smith.D
        return matmul_mod(self.smith.v.data, self.f, D)

    f: np.ndarray | None = None


def column_op_gate(op: tuple, D: int) -> Gate:
    kind = op[0]
    if kind == "swap":
        return Gate("SWAP", (op[1], op[2]))
    if kind == "scale":
        return Gate("S", (op[1],), inverse_unit(op[2], D))
    _, i, j, m = op
    return Gate("CNOT", (i, j), (-m) % D)


def normalize_coding_group(C: CodingGroup) -> Normalization:
    f = np.mod(np.asarray(C.f, dtype=np.int64).reshape(-1, C.n), C.D)
    if f.shape[0] == 0:
        f = np.zeros((1, C.n), dtype=np.int64)
    sd = modring.smith_normal_form(f, C.D)
    diag = sd.diagonal()
    m = tuple(int(diag[j]) if j < len(diag) and diag[j] else C.D for j in range(C.n))
    d = tuple(C.D // mj for mj in m)
    # W = g_1 ... g_k for w = E_1 ... E_k, so the last column operation acts first
    W = tuple(column_op_gate(op, C.D) for op in reversed(sd.col_ops))
    return Normalization(m, d, W, sd, f)


def coding_group_of(code) -> CodingGroup:
    from .codes import is_additive

    if not is_additive(code.codewords, code.D):
        raise ValueError("encoding needs an additive code")
    gens = code.generators if code.generators is not None and len(code.generators) else minimal_generators(code.codewords, code.D)
    return CodingGroup(code.n, code.D, np.asarray(gens, dtype=np.int64).reshape(-1, code.n))


def minimal_generators(words, D: int) -> np.ndarray:
    from .codes import span

    words = np.asarray(words, dtype=np.int64)
    n = words.shape[1]
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    gens: list[np.ndarray] = []
    have = {0}
    for w in words:
        if int(w @ weights) in have:
            continue
        gens.append(w)
        have = set((span(gens, n, D) @ weights).tolist())
    return np.array(gens, dtype=np.int64).reshape(-1, n)


def graph_gates(G: QuditGraph) -> list[Gate]:
    return [Gate("CP", (a, b), w) for a, b, w in G.edges()]


def encoding_circuit(code) -> list[Gate]:
    """W followed by U, in time order."""
    norm = normalize_coding_group(coding_group_of(code))
    return list(norm.W) + graph_gates(code.graph)


# --- symplectic action -----------------------------------------------------

def gate_symplectic(g: Gate, n: int, D: int) -> np.ndarray:
    """Q with g E^(x|z) g^dag ~ E^((x|z) Q)."""
    Q = np.eye(2 * n, dtype=np.int64)
    if g.name == "F":
        (a,) = g.qudits
        one = np.eye(2 * n, dtype=np.int64)
        one[a, a] = 0
        one[n + a, n + a] = 0
        one[n + a, a] = 1
        one[a, n + a] = D - 1
        for _ in range(g.power % 4):
            Q = matmul_mod(Q, one, D)
    elif g.name == "S":
        (a,) = g.qudits
        Q[a, a] = inverse_unit(g.power, D)
        Q[n + a, n + a] = g.power % D
    elif g.name == "CNOT":
        a, b = g.qudits
        Q[a, b] = (-g.power) % D
        Q[n + b, n + a] = g.power % D
    elif g.name == "SWAP":
        a, b = g.qudits
        perm = list(range(2 * n))
        perm[a], perm[b] = b, a
        perm[n + a], perm[n + b] = n + b, n + a
        Q = Q[:, perm]
    else:
        a, b = g.qudits
        Q[a, n + b] = (-g.power) % D
        Q[b, n + a] = (-g.power) % D
    return np.mod(Q, D)


def conjugate_by_circuit(gates, n: int, D: int) -> ModMatrix:
    Q = np.eye(2 * n, dtype=np.int64)
    for g in gates:
        Q = matmul_mod(Q, gate_symplectic(g, n, D), D)
    return ModMatrix(Q, D)


# --- dense semantics -------------------------------------------------------

def _local(state: np.ndarray, mat: np.ndarray, a: int) -> np.ndarray:
    out = np.tensordot(mat, state, axes=([1], [a]))
    return np.moveaxis(out, 0, a)


def apply_gate(state: np.ndarray, g: Gate, n: int, D: int) -> np.ndarray:
    """Apply one gate to an amplitude array of shape (D,)*n."""
    w = np.exp(2j * np.pi / D)
    j = np.arange(D)
    if g.name == "F":
        F = w ** np.outer(j, j) / np.sqrt(D)
        for _ in range(g.power % 4):
            state = _local(state, F, g.qudits[0])
        return state
    if g.name == "S":
        # S_q |k> = |k qbar>
        S = np.zeros((D, D), dtype=complex)
        S[j, (j * g.power) % D] = 1
        return _local(state, S, g.qudits[0])
    a, b = g.qudits
    if g.name == "SWAP":
        return np.swapaxes(state, a, b)
    if g.name == "CP":
        phase = w ** (g.power * np.outer(j, j) % D)
        shape = [1] * n
        shape[a], shape[b] = D, D
        if a < b:
            return state * phase.reshape(shape)
        return state * phase.T.reshape(shape)
    # CNOT_ab^p |j, k> = |j, k - p j>
    out = np.empty_like(state)
    for jj in range(D):
        src = [slice(None)] * n
        src[a] = jj
        block = state[tuple(src)]
        axis_b = b if b < a else b - 1
        out[tuple(src)] = np.roll(block, -g.power * jj, axis=axis_b)
    return out


def apply_circuit(gates, vec: np.ndarray, n: int, D: int, cap: int | None = None) -> np.ndarray:
    check_dense(D, n, cap)
    state = np.asarray(vec, dtype=complex).reshape((D,) * n)
    for g in gates:
        state = apply_gate(state, g, n, D)
    return state.reshape(-1)


def circuit_matrix(gates, n: int, D: int, cap: int | None = None) -> np.ndarray:
    dim = check_dense(D, n, cap)
    cols = [apply_circuit(gates, e, n, D, cap) for e in np.eye(dim, dtype=complex)]
    return np.column_stack(cols)


def trivial_input_state(labels, m, n: int, D: int) -> np.ndarray:
    """Z^{sum zeta_j m_j e_j} |+>^n for the trivial code."""
    from .graph import all_labels

    j = all_labels(n, D)
    z = np.mod(np.asarray(labels, dtype=np.int64) * np.asarray(m, dtype=np.int64), D)
    return np.exp(2j * np.pi * np.mod(j @ z, D) / D) / np.sqrt(D**n)
