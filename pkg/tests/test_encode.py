import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import basis_state, dense_pauli, shift_and_clock, span_enum
from quditgraph.codes import additive_code
from quditgraph.encode import (
    CodingGroup,
    Gate,
    apply_circuit,
    circuit_matrix,
    coding_group_of,
    conjugate_by_circuit,
    encoding_circuit,
    gate_symplectic,
    normalize_coding_group,
    trivial_input_state,
)
from quditgraph.graph import QuditGraph, cycle_graph, empty_graph
from quditgraph.modring import det_mod, units
from quditgraph.pauli import ResourceError


def proportional(A, B, tol=1e-10):
    k = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if abs(B[k]) < tol:
        return np.allclose(A, 0, atol=tol)
    c = A[k] / B[k]
    return abs(abs(c) - 1) < tol and np.allclose(A, c * B, atol=tol)


def random_gates(rng, n, D, k):
    out = []
    for _ in range(k):
        name = rng.choice(["F", "S", "CNOT", "SWAP", "CP"])
        if name in ("F", "S"):
            q = (int(rng.integers(n)),)
            power = int(rng.choice(units(D))) if name == "S" else int(rng.integers(1, 4))
        else:
            q = tuple(int(v) for v in rng.choice(n, 2, replace=False))
            power = int(rng.integers(1, D))
        out.append(Gate(name, q, power))
    return out


def test_worked_example_d6():
    norm = normalize_coding_group(CodingGroup(3, 6, np.array([[4, 3, 3], [0, 3, 3]])))
    assert norm.m[:2] == (2, 3) and norm.d[:2] == (3, 2)
    assert norm.K == 6
    assert norm.W == (Gate("CNOT", (2, 1), 1),)


def test_trivial_group_needs_no_gates():
    norm = normalize_coding_group(CodingGroup(1, 4, np.array([[2]])))
    assert norm.m == (2,) and norm.W == ()


def test_edgeless_trivial_code_circuit_is_only_w():
    code = additive_code(empty_graph(2, 3), [[1, 0]])
    assert encoding_circuit(code) == []


def test_worked_example_circuit():
    G = QuditGraph(6, np.array([[0, 1, 1], [1, 0, 2], [1, 2, 0]]))
    code = additive_code(G, [[4, 3, 3], [0, 3, 3]])
    gates = encoding_circuit(code)
    assert gates[0] == Gate("CNOT", (2, 1), 1)
    assert all(g.name == "CP" for g in gates[1:])
    assert {(g.qudits, g.power) for g in gates[1:]} == {((0, 1), 1), ((0, 2), 1), ((1, 2), 2)}


def _w_conjugation_reproduces_group(f, n, D):
    norm = normalize_coding_group(CodingGroup(n, D, f))
    U = circuit_matrix(list(norm.W), n, D)
    target = span_enum(list(f), n, D)
    got = set()
    for zeta in itertools.product(*(range(d) for d in norm.d)):
        z = [zeta[j] * norm.m[j] % D for j in range(n)]
        img = U @ dense_pauli(0, [0] * n, z, D) @ U.conj().T
        # conjugates of Z products are Z products, read exponent off the diagonal
        assert np.allclose(img, np.diag(np.diag(img)))
        diag = np.diag(img)
        ratio = diag / diag[0]
        c = tuple(int(round(np.angle(ratio[D ** (n - 1 - j)]) * D / (2 * np.pi))) % D for j in range(n))
        assert proportional(diag, np.diag(dense_pauli(0, [0] * n, c, D)))
        got.add(c)
    assert got == target


def test_random_coding_groups_d6():
    rng = np.random.default_rng(3)
    for _ in range(12):
        f = rng.integers(0, 6, size=(int(rng.integers(1, 4)), 3))
        _w_conjugation_reproduces_group(f, 3, 6)


def test_random_coding_groups_other_d():
    rng = np.random.default_rng(4)
    for D in (4, 8, 9):
        for _ in range(4):
            f = rng.integers(0, D, size=(2, 2))
            _w_conjugation_reproduces_group(f, 2, D)


def _codeword_fidelity(code):
    n, D = code.n, code.D
    norm = normalize_coding_group(coding_group_of(code))
    gates = encoding_circuit(code)
    words = [tuple(int(v) for v in c) for c in np.asarray(code.codewords)]
    targets = {c: basis_state(code.graph.gamma, D, c) for c in words}
    seen = set()
    for zeta in itertools.product(*(range(d) for d in norm.d)):
        out = apply_circuit(gates, trivial_input_state(zeta, norm.m, n, D), n, D)
        hits = [c for c, v in targets.items() if abs(abs(np.vdot(v, out)) - 1) < 1e-10]
        assert len(hits) == 1
        seen.add(hits[0])
    assert seen == set(words)


@pytest.mark.parametrize(
    "graph,gens",
    [
        (QuditGraph(6, np.array([[0, 1, 1], [1, 0, 2], [1, 2, 0]])), [[4, 3, 3], [0, 3, 3]]),
        (cycle_graph(5, 2), [[1, 1, 1, 1, 1]]),
        (cycle_graph(4, 2), [[1, 1, 0, 0], [0, 0, 1, 1]]),
        (cycle_graph(4, 4), [[1, 1, 0, 0], [0, 0, 2, 2]]),
        (cycle_graph(3, 3, double_edge=True), [[1, 2, 0]]),
        (empty_graph(3, 6), [[2, 0, 3], [0, 3, 3]]),
    ],
)
def test_codeword_fidelity(graph, gens):
    _codeword_fidelity(additive_code(graph, gens))


def test_encoding_rejects_nonadditive():
    from quditgraph.codes import GraphCode

    code = GraphCode(cycle_graph(3, 2), np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]]), 1)
    with pytest.raises(ValueError):
        encoding_circuit(code)


def test_fourier_table():
    n, D = 1, 5
    Q = gate_symplectic(Gate("F", (0,)), n, D)
    # Z -> X and X -> Z^{D-1}
    assert Q[1].tolist() == [1, 0]
    assert Q[0].tolist() == [0, D - 1]
    F = circuit_matrix([Gate("F", (0,))], 1, D)
    X, Z = shift_and_clock(D)
    assert proportional(F @ Z @ F.conj().T, X)
    assert proportional(F @ X @ F.conj().T, np.linalg.matrix_power(Z, D - 1))


def test_empty_circuit_identity():
    assert np.array_equal(conjugate_by_circuit([], 3, 4).data, np.eye(6, dtype=int))


def _check_exponent_action(gates, n, D):
    U = circuit_matrix(gates, n, D)
    Q = conjugate_by_circuit(gates, n, D).data
    assert det_mod(Q, D) in units(D)
    for x in itertools.product(range(D), repeat=n):
        for z in itertools.product(range(D), repeat=n):
            img = np.mod(np.array(x + z) @ Q, D)
            assert proportional(U @ dense_pauli(0, x, z, D) @ U.conj().T, dense_pauli(0, img[:n], img[n:], D))


def test_random_five_gate_list_n2_d3():
    rng = np.random.default_rng(5)
    for _ in range(10):
        _check_exponent_action(random_gates(rng, 2, 3, 5), 2, 3)


@settings(max_examples=25, deadline=None)
@given(D=st.integers(2, 4), seed=st.integers(0, 10**6), k=st.integers(1, 6))
def test_exponent_action_property(D, seed, k):
    rng = np.random.default_rng(seed)
    _check_exponent_action(random_gates(rng, 2, D, k), 2, D)


@pytest.mark.parametrize("D", [2, 3, 4, 5])
def test_gate_definitions(D):
    w = np.exp(2j * np.pi / D)
    for j, k in itertools.product(range(D), repeat=2):
        e = np.zeros(D * D, dtype=complex)
        e[j * D + k] = 1
        swap = apply_circuit([Gate("SWAP", (0, 1))], e, 2, D)
        assert swap[k * D + j] == 1
        cnot = apply_circuit([Gate("CNOT", (0, 1))], e, 2, D)
        assert cnot[j * D + (k - j) % D] == 1
        cp = apply_circuit([Gate("CP", (0, 1))], e, 2, D)
        assert np.isclose(cp[j * D + k], w ** (j * k))


@pytest.mark.parametrize("D", [3, 4, 6])
def test_swap_decomposition(D):
    # right-to-left product: F_a^2 first, then CNOT_ab, CNOT_ba^dag, CNOT_ab
    gates = [Gate("F", (0,), 2), Gate("CNOT", (0, 1)), Gate("CNOT", (1, 0), D - 1), Gate("CNOT", (0, 1))]
    assert np.allclose(circuit_matrix(gates, 2, D), circuit_matrix([Gate("SWAP", (0, 1))], 2, D), atol=1e-12)
    dag = [Gate("F", (1,), 2), Gate("CNOT", (1, 0)), Gate("F", (1,), 2)]
    assert np.allclose(circuit_matrix(dag, 2, D), circuit_matrix([Gate("CNOT", (1, 0), D - 1)], 2, D), atol=1e-12)


@pytest.mark.parametrize("D", [2, 3, 5, 6])
def test_cp_cnot_relation(D):
    # CNOT_ab = F_b CP_ab F_b^dag, with F^dag = F^3
    gates = [Gate("F", (1,), 3), Gate("CP", (0, 1)), Gate("F", (1,))]
    assert np.allclose(circuit_matrix(gates, 2, D), circuit_matrix([Gate("CNOT", (0, 1))], 2, D), atol=1e-12)


def test_gate_validation_and_roundtrip():
    with pytest.raises(ValueError):
        Gate("T", (0,))
    with pytest.raises(ValueError):
        Gate("CNOT", (1, 1))
    g = Gate("CP", (0, 2), 3)
    assert Gate.from_dict(g.to_dict()) == g


def test_dense_cap():
    with pytest.raises(ResourceError):
        apply_circuit([], np.zeros(2**20), 20, 2, cap=4096)
