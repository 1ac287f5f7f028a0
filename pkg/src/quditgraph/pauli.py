"""Generalized Pauli products on n qudits.

A product is stored as ``(lam, x, z)`` meaning ``w**lam * X^x Z^z`` with
``w = exp(2 pi i / D)``, ``X = sum_j |j><j+1|`` and ``Z = diag(w**j)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DENSE_CAP = 4096


class ResourceError(RuntimeError):
    """Raised when a dense computation would exceed the configured cap."""


def check_dense(D: int, n: int, cap: int | None = None) -> int:
    dim = D**n
    if dim > (cap or DENSE_CAP):
        raise ResourceError(f"dense dimension {dim} exceeds cap {cap or DENSE_CAP}")
    return dim


@dataclass(frozen=True)
class PauliProduct:
    D: int
    lam: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        if len(self.x) != len(self.z):
            raise ValueError("x and z must have equal length")
        object.__setattr__(self, "lam", int(self.lam) % self.D)
        object.__setattr__(self, "x", tuple(int(v) % self.D for v in self.x))
        object.__setattr__(self, "z", tuple(int(v) % self.D for v in self.z))

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def identity(cls, n: int, D: int) -> "PauliProduct":
        return cls(D, 0, (0,) * n, (0,) * n)

    @classmethod
    def single(cls, n: int, D: int, qudit: int, x: int = 0, z: int = 0) -> "PauliProduct":
        xs = [0] * n
        zs = [0] * n
        xs[qudit] = x
        zs[qudit] = z
        return cls(D, 0, tuple(xs), tuple(zs))

    def __mul__(self, other: "PauliProduct") -> "PauliProduct":
        return multiply(self, other)

    def inverse(self) -> "PauliProduct":
        # (X^x Z^z)^-1 = Z^-z X^-x = w^{-x.z} X^-x Z^-z
        xz = int(np.dot(self.x, self.z))
        return PauliProduct(self.D, -self.lam - xz, tuple(-v for v in self.x), tuple(-v for v in self.z))

    def power(self, k: int) -> "PauliProduct":
        out = PauliProduct.identity(self.n, self.D)
        for _ in range(k % self.D if k >= 0 else 0):
            out = out * self
        if k < 0:
            return self.inverse().power(-k)
        return out

    def same_up_to_phase(self, other: "PauliProduct") -> bool:
        return self.D == other.D and self.x == other.x and self.z == other.z

    def text(self) -> str:
        return f"w^{self.lam} X^{list(self.x)} Z^{list(self.z)}"

    def to_dict(self) -> dict:
        return {"D": self.D, "lambda": self.lam, "x": list(self.x), "z": list(self.z)}


def _check(p: PauliProduct, q: PauliProduct):
    if p.D != q.D or p.n != q.n:
        raise ValueError("Pauli products differ in D or n")


def multiply(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    _check(p, q)
    # Z^a X^b = w^{-ab} X^b Z^a
    lam = p.lam + q.lam - int(np.dot(p.z, q.x))
    return PauliProduct(p.D, lam, tuple(a + b for a, b in zip(p.x, q.x)), tuple(a + b for a, b in zip(p.z, q.z)))


def commutation_phase(p: PauliProduct, q: PauliProduct) -> int:
    """mu with p q = w^mu q p."""
    _check(p, q)
    return (int(np.dot(p.x, q.z)) - int(np.dot(p.z, q.x))) % p.D


def size_and_base(p: PauliProduct) -> tuple[int, frozenset[int]]:
    base = frozenset(i for i in range(p.n) if p.x[i] or p.z[i])
    return len(base), base


def single_qudit_ops(D: int) -> tuple[np.ndarray, np.ndarray]:
    w = np.exp(2j * np.pi / D)
    X = np.roll(np.eye(D, dtype=complex), 1, axis=1)  # X[j, j+1] = 1
    Z = np.diag(w ** np.arange(D))
    return X, Z


def to_dense(p: PauliProduct, cap: int | None = None) -> np.ndarray:
    check_dense(p.D, p.n, cap)
    X, Z = single_qudit_ops(p.D)
    out = np.ones((1, 1), dtype=complex)
    for xl, zl in zip(p.x, p.z):
        local = np.linalg.matrix_power(X, xl) @ np.linalg.matrix_power(Z, zl)
        out = np.kron(out, local)
    return np.exp(2j * np.pi * p.lam / p.D) * out


def apply_pauli(p: PauliProduct, vecs: np.ndarray, cap: int | None = None) -> np.ndarray:
    """X^x Z^z (times the phase) applied to column vectors without forming the matrix."""
    D, n = p.D, p.n
    dim = check_dense(D, n, cap)
    vecs = np.asarray(vecs, dtype=complex)
    flat = vecs.ndim == 1
    t = vecs.reshape((D,) * n + (-1,))
    j = np.arange(D)
    for q in range(n):
        if p.z[q]:
            shape = [1] * (n + 1)
            shape[q] = D
            t = t * np.exp(2j * np.pi * p.z[q] * j / D).reshape(shape)
        if p.x[q]:
            t = np.roll(t, -p.x[q], axis=q)  # (X v)_j = v_{j+1}
    out = np.exp(2j * np.pi * p.lam / D) * t.reshape(dim, -1)
    return out[:, 0] if flat else out
