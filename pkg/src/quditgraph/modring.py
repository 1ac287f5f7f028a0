"""Exact linear algebra over the ring Z_D.

Vectors are rows and act on matrices from the left, so a linear system
reads ``x @ A == b (mod D)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np


class ModMatrix:
    """Integer matrix with entries reduced modulo ``D``."""

    __slots__ = ("data", "D")

    def __init__(self, entries, D: int):
        if int(D) < 2:
            raise ValueError("modulus must be at least 2")
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("ModMatrix needs a non-empty 2-d array")
        self.D = int(D)
        self.data = np.mod(arr, self.D)
        self.data.setflags(write=False)

    @classmethod
    def identity(cls, k: int, D: int) -> "ModMatrix":
        return cls(np.eye(k, dtype=np.int64), D)

    @classmethod
    def zeros(cls, rows: int, cols: int, D: int) -> "ModMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), D)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if other.D != self.D:
            raise ValueError("moduli differ")
        return ModMatrix(matmul_mod(self.data, other.data, self.D), self.D)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self.D == other.D and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.D, self.data.tobytes(), self.data.shape))

    def __repr__(self) -> str:
        return f"ModMatrix({self.data.tolist()}, D={self.D})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()


def matmul_mod(a: np.ndarray, b: np.ndarray, D: int) -> np.ndarray:
    """Matrix product mod D without int64 overflow for moderate D."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if D <= 2**20 and a.shape[-1] <= 2**20:
        return np.mod(a @ b, D)
    out = (a.astype(object) @ b.astype(object)) % D
    return out.astype(np.int64)


def _as_array(A, D: int | None) -> tuple[np.ndarray, int]:
    if isinstance(A, ModMatrix):
        return A.data.copy(), A.D
    if D is None:
        raise ValueError("modulus D required for plain arrays")
    return np.mod(np.array(A, dtype=np.int64), D), int(D)


@lru_cache(maxsize=None)
def units(D: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, D) if gcd(u, D) == 1) if D > 1 else ()


def inverse_unit(q: int, D: int) -> int:
    q %= D
    if gcd(q, D) != 1:
        raise ValueError(f"{q} is not a unit mod {D}")
    return pow(q, -1, D)


@lru_cache(maxsize=None)
def gcd_normalizer(a: int, D: int) -> int:
    """Unit u with u*a = gcd(a, D) mod D."""
    a %= D
    g = gcd(a, D)
    for u in units(D) or (1,):
        if (u * a) % D == g % D:
            return u
    raise ArithmeticError("no normalizing unit")  # pragma: no cover


@dataclass(frozen=True)
class SmithDecomposition:
    """``v @ f @ w == s`` with ``s`` diagonal and ``v``, ``w`` invertible."""

    s: ModMatrix
    v: ModMatrix
    w: ModMatrix
    col_ops: tuple = field(default_factory=tuple)

    @property
    def D(self) -> int:
        return self.s.D

    def diagonal(self) -> list[int]:
        k = min(self.s.rows, self.s.cols)
        return [int(self.s.data[i, i]) for i in range(k)]


class _Reducer:
    def __init__(self, a: np.ndarray, D: int):
        self.a = a
        self.D = D
        r, c = a.shape
        self.v = np.eye(r, dtype=np.int64)
        self.w = np.eye(c, dtype=np.int64)
        self.ops: list[tuple] = []

    # row operations touch a and v
    def row_swap(self, i, j):
        if i != j:
            self.a[[i, j]] = self.a[[j, i]]
            self.v[[i, j]] = self.v[[j, i]]

    def row_scale(self, i, u):
        self.a[i] = (self.a[i] * u) % self.D
        self.v[i] = (self.v[i] * u) % self.D

    def row_add(self, i, j, m):
        """row_i += m * row_j"""
        m %= self.D
        if m:
            self.a[i] = (self.a[i] + m * self.a[j]) % self.D
            self.v[i] = (self.v[i] + m * self.v[j]) % self.D

    # column operations touch a and w, and are logged
    def col_swap(self, i, j):
        if i != j:
            self.a[:, [i, j]] = self.a[:, [j, i]]
            self.w[:, [i, j]] = self.w[:, [j, i]]
            self.ops.append(("swap", i, j))

    def col_scale(self, i, u):
        u %= self.D
        if u != 1:
            self.a[:, i] = (self.a[:, i] * u) % self.D
            self.w[:, i] = (self.w[:, i] * u) % self.D
            self.ops.append(("scale", i, u))

    def col_add(self, i, j, m):
        """col_i += m * col_j"""
        m %= self.D
        if m:
            self.a[:, i] = (self.a[:, i] + m * self.a[:, j]) % self.D
            self.w[:, i] = (self.w[:, i] + m * self.w[:, j]) % self.D
            self.ops.append(("add", i, j, m))

    def normalize_row(self, i, col):
        p = int(self.a[i, col])
        if p:
            self.row_scale(i, gcd_normalizer(p, self.D))

    def echelon(self):
        # Row-only pass; no column operations, hence no gates.
        a, D = self.a, self.D
        r, c = a.shape
        t = 0
        for col in range(c):
            if t >= r:
                break
            while True:
                nz = [i for i in range(t, r) if a[i, col]]
                if len(nz) <= 1:
                    break
                piv = min(nz, key=lambda i: (int(a[i, col]), i))
                for i in nz:
                    if i != piv:
                        self.row_add(i, piv, -(int(a[i, col]) // int(a[piv, col])))
            nz = [i for i in range(t, r) if a[i, col]]
            if not nz:
                continue
            self.row_swap(t, nz[0])
            self.normalize_row(t, col)
            g = int(a[t, col])
            for i in range(t):
                if a[i, col]:
                    self.row_add(i, t, -(int(a[i, col]) // g))
            t += 1

    def diagonalize(self):
        a, D = self.a, self.D
        r, c = a.shape
        for t in range(min(r, c)):
            sub = a[t:, t:]
            idx = np.argwhere(sub != 0)
            if idx.size == 0:
                break
            best = min(idx.tolist(), key=lambda ij: (gcd(int(sub[ij[0], ij[1]]), D), ij[0], ij[1]))
            self.row_swap(t, t + best[0])
            self.col_swap(t, t + best[1])
            self.normalize_row(t, t)
            while True:
                g = int(a[t, t])
                restart = False
                for i in range(t + 1, r):
                    e = int(a[i, t])
                    if not e:
                        continue
                    self.row_add(i, t, -(e // g))
                    if a[i, t]:
                        self.row_swap(t, i)
                        self.normalize_row(t, t)
                        restart = True
                        break
                if restart:
                    continue
                for j in range(t + 1, c):
                    e = int(a[t, j])
                    if not e:
                        continue
                    self.col_add(j, t, -(e // g))
                    if a[t, j]:
                        self.col_swap(t, j)
                        self.normalize_row(t, t)
                        restart = True
                        break
                if not restart:
                    break


def smith_normal_form(f: ModMatrix | np.ndarray, D: int | None = None) -> SmithDecomposition:
    """Diagonalize ``f`` by invertible row and column operations mod D.

    Diagonal entries are divisors of D (or zero). No divisibility chain
    between successive entries is imposed.
    """
    a, D = _as_array(f, D)
    red = _Reducer(a, D)
    red.echelon()
    red.diagonalize()
    return SmithDecomposition(
        s=ModMatrix(red.a, D),
        v=ModMatrix(red.v, D),
        w=ModMatrix(red.w, D),
        col_ops=tuple(red.ops),
    )


def replay_col_ops(ops: Sequence[tuple], k: int, D: int) -> np.ndarray:
    """Matrix obtained by applying logged column operations to the identity."""
    w = np.eye(k, dtype=np.int64)
    for op in ops:
        if op[0] == "swap":
            _, i, j = op
            w[:, [i, j]] = w[:, [j, i]]
        elif op[0] == "scale":
            _, i, u = op
            w[:, i] = (w[:, i] * u) % D
        else:
            _, i, j, m = op
            w[:, i] = (w[:, i] + m * w[:, j]) % D
    return w


@dataclass(frozen=True)
class Solution:
    x: np.ndarray | None
    nullspace: np.ndarray

    @property
    def solvable(self) -> bool:
        return self.x is not None


def solve_mod(A, b, D: int | None = None, smith: SmithDecomposition | None = None) -> Solution:
    """Solve ``x @ A == b (mod D)``.

    Returns a particular solution (or ``None``) together with generators of
    the left nullspace ``{y : y @ A == 0}``.
    """
    a, D = _as_array(A, D)
    b = np.mod(np.asarray(b, dtype=np.int64).ravel(), D)
    r, c = a.shape
    if b.shape[0] != c:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {c}")
    sd = smith if smith is not None else smith_normal_form(a, D)
    s, v, w = sd.s.data, sd.v.data, sd.w.data
    rhs = matmul_mod(b[None, :], w, D)[0]
    y = np.zeros(r, dtype=np.int64)
    ok = True
    for i in range(c):
        d = int(s[i, i]) if i < r else 0
        e = int(rhs[i])
        if d == 0:
            if e:
                ok = False
                break
        else:
            if e % d:
                ok = False
                break
            y[i] = e // d
    gens = []
    for i in range(r):
        d = int(s[i, i]) if i < c else 0
        if d == 0:
            e = np.zeros(r, dtype=np.int64)
            e[i] = 1
            gens.append(e)
        elif d != 1:
            e = np.zeros(r, dtype=np.int64)
            e[i] = D // d
            gens.append(e)
    null = matmul_mod(np.array(gens, dtype=np.int64).reshape(-1, r), v, D) if gens else np.zeros((0, r), dtype=np.int64)
    x = matmul_mod(y[None, :], v, D)[0] if ok else None
    return Solution(x=x, nullspace=null)


def nullspace_size(A, D: int | None = None, smith: SmithDecomposition | None = None) -> int:
    """Number of row vectors ``x`` with ``x @ A == 0 (mod D)``."""
    a, D = _as_array(A, D)
    r, c = a.shape
    sd = smith if smith is not None else smith_normal_form(a, D)
    total = 1
    for i in range(r):
        d = int(sd.s.data[i, i]) if i < c else 0
        total *= d if d else D
    return total


def inverse_mod(A, D: int | None = None) -> ModMatrix:
    """Inverse of a square matrix whose determinant is a unit mod D."""
    a, D = _as_array(A, D)
    k = a.shape[0]
    if a.shape != (k, k):
        raise ValueError("square matrix required")
    sd = smith_normal_form(a, D)
    diag = sd.diagonal()
    if any(gcd(d, D) != 1 for d in diag):
        raise ValueError("matrix is not invertible mod D")
    # a = v^-1 s w^-1 with s a unit diagonal, so a^-1 = w s^-1 v
    sinv = np.diag([inverse_unit(d, D) for d in diag]).astype(np.int64)
    return ModMatrix(matmul_mod(matmul_mod(sd.w.data, sinv, D), sd.v.data, D), D)


def det_mod(A, D: int | None = None) -> int:
    """Determinant mod D by fraction-free elimination over the integers."""
    a, D = _as_array(A, D)
    m = [[int(e) for e in row] for row in a]
    k = len(m)
    if any(len(row) != k for row in m):
        raise ValueError("square matrix required")
    sign, prev = 1, 1
    for t in range(k - 1):
        if m[t][t] == 0:
            swap = next((i for i in range(t + 1, k) if m[i][t]), None)
            if swap is None:
                return 0
            m[t], m[swap] = m[swap], m[t]
            sign = -sign
        for i in range(t + 1, k):
            for j in range(t + 1, k):
                m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
        prev = m[t][t]
    return (sign * m[k - 1][k - 1]) % D
