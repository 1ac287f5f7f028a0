"""Independent brute-force oracles.

Everything here works from dense matrices or exhaustive enumeration, never
from the index arithmetic the library uses.
"""
from __future__ import annotations

import itertools

import numpy as np


def shift_and_clock(D):
    X = np.zeros((D, D), dtype=complex)
    for k in range(D):
        X[(k - 1) % D, k] = 1  # X|k> = |k-1>
    Z = np.diag([np.exp(2j * np.pi * k / D) for k in range(D)])
    return X, Z


def dense_pauli(lam, x, z, D):
    X, Z = shift_and_clock(D)
    out = np.eye(1, dtype=complex)
    for a, b in zip(x, z):
        out = np.kron(out, np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
    return np.exp(2j * np.pi * lam / D) * out


def cp_gate(D):
    w = np.exp(2j * np.pi / D)
    return np.diag([w ** (j * k) for j in range(D) for k in range(D)])


def graph_state(gamma, D):
    """Apply CP^{Gamma_ab} gates one by one to |+>^n."""
    n = len(gamma)
    psi = np.ones(D**n, dtype=complex) / np.sqrt(D**n)
    labels = list(itertools.product(range(D), repeat=n))
    w = np.exp(2j * np.pi / D)
    for a in range(n):
        for b in range(a + 1, n):
            if gamma[a][b] % D:
                psi = psi * np.array([w ** (gamma[a][b] * l[a] * l[b]) for l in labels])
    return psi


def basis_state(gamma, D, a):
    n = len(gamma)
    psi = graph_state(gamma, D)
    return dense_pauli(0, [0] * n, list(a), D) @ psi


def dense_distance(gamma, D, a, b=None):
    """min size of a Pauli product with a nonzero <b|Q|a> between graph basis states."""
    n = len(gamma)
    a = list(a)
    b = [0] * n if b is None else list(b)
    va, vb = basis_state(gamma, D, a), basis_state(gamma, D, b)
    best = n + 1
    for x in itertools.product(range(D), repeat=n):
        for z in itertools.product(range(D), repeat=n):
            size = sum(1 for i in range(n) if x[i] or z[i])
            if size >= best:
                continue
            if abs(vb.conj() @ dense_pauli(0, x, z, D) @ va) > 1e-9:
                best = size
    return best


def dense_diagonal_distance(gamma, D):
    n = len(gamma)
    g = graph_state(gamma, D)
    best = n + 1
    for x in itertools.product(range(D), repeat=n):
        if not any(x):
            continue
        for z in itertools.product(range(D), repeat=n):
            size = sum(1 for i in range(n) if x[i] or z[i])
            if size < best and abs(abs(g.conj() @ dense_pauli(0, x, z, D) @ g) - 1) < 1e-9:
                best = size
    return best


def exhaustive_max_code(dist, n, D, delta):
    """Largest set containing 0 with pairwise distance >= delta, by enumerating all subsets."""
    labels = [l for l in itertools.product(range(D), repeat=n) if any(l)]
    far = [l for l in labels if dist[l] >= delta]
    best = 1
    for mask in range(1, 1 << len(far)):
        chosen = [far[i] for i in range(len(far)) if mask >> i & 1]
        if len(chosen) + 1 <= best:
            continue
        ok = all(dist[tuple((q - p) % D for p, q in zip(u, v))] >= delta for u, v in itertools.combinations(chosen, 2))
        if ok:
            best = len(chosen) + 1
    return best


def enumerate_solutions(A, b, D):
    A = np.asarray(A) % D
    rows = A.shape[0]
    return [x for x in itertools.product(range(D), repeat=rows) if np.array_equal(np.asarray(x) @ A % D, np.asarray(b) % D)]


def span_enum(gens, n, D):
    out = set()
    for coeffs in itertools.product(range(D), repeat=len(gens)):
        out.add(tuple(int(v) for v in np.mod(np.asarray(coeffs) @ np.asarray(gens).reshape(-1, n), D)) if len(gens) else (0,) * n)
    return out


def dual_enum(words, n, D):
    return {s for s in itertools.product(range(D), repeat=n) if all(np.dot(c, s) % D == 0 for c in words)}


def codeword_projector(gamma, D, words):
    vecs = np.column_stack([basis_state(gamma, D, c) for c in words])
    return vecs @ vecs.conj().T


def trace_out(op, keep, n, D):
    keep = sorted(keep)
    drop = [j for j in range(n) if j not in keep]
    t = op.reshape([D] * (2 * n))
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows, cols = list(letters[:n]), list(letters[n:2 * n])
    for j in drop:
        cols[j] = rows[j]
    out = "".join(rows[j] for j in keep) + "".join(cols[j] for j in keep)
    r = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    return r.reshape(D ** len(keep), D ** len(keep))


def majorized(a, b, tol=1e-12):
    """a < b via sorted-descending partial sums."""
    a, b = np.sort(a)[::-1], np.sort(b)[::-1]
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + tol))


def random_simplex(rng, D, floor=0.0):
    v = rng.dirichlet(np.ones(D))
    v = v * (1 - D * floor) + floor
    return v / v.sum()


def code_basis(gamma, D, words):
    return np.column_stack([basis_state(gamma, D, c) for c in words])


def xz_on_columns(vecs, x, z, D):
    """X^x Z^z on each column, by relabelling basis indices."""
    n = len(x)
    labels = np.array(list(itertools.product(range(D), repeat=n)))
    phase = np.exp(2j * np.pi * (labels @ np.asarray(z)) / D)
    # X|k> = |k-1>, so component k of the image is component k+x of the input
    src = (labels + np.asarray(x)) % D
    idx = src @ (D ** np.arange(n - 1, -1, -1))
    return (phase[:, None] * vecs)[idx]


def reduced_outer(left, right, keep, n, D):
    """Tr over the complement of keep of sum_k |left_k><right_k|."""
    keep = sorted(keep)
    drop = [j for j in range(n) if j not in keep]
    K = left.shape[1]
    L = left.reshape([D] * n + [K]).transpose(keep + drop + [n]).reshape(D ** len(keep), -1)
    R = right.reshape([D] * n + [K]).transpose(keep + drop + [n]).reshape(D ** len(keep), -1)
    return L @ R.conj().T
