"""Equientangled bases interpolating between product and maximally entangled.

Gauss family: ``|psi_mn(t)> = sum_k a_k(t) |k+m>|k+m+n>`` with
``a_k(t) = (1/D) sum_j exp(i t theta_j) w^{kj}``, ``theta_j = pi j^2/D``
(D even) or ``2 pi j^2/D`` (D odd).

Graph family: ``|G_mn(t)> = (Z^m x Z^n) C(t) |++>`` where ``C(t)`` has
phases ``w^{jkt}``; its amplitude matrix is ``Omega_jk = w^{jkt}/D``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .entangle import SchmidtVector, entropy, g_concurrence, schmidt_spectrum
from .graph import QuditGraph, all_labels
from .pauli import check_dense

FAMILIES = ("gauss", "graph")


def _check(D: int, t: float):
    if int(D) != D or D < 2:
        raise ValueError("D must be an integer >= 2")
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")


def gauss_phases(D: int) -> np.ndarray:
    j = np.arange(D, dtype=float)
    return (np.pi if D % 2 == 0 else 2 * np.pi) * j**2 / D


def gauss_coefficients(D: int, t: float) -> np.ndarray:
    _check(D, t)
    j = np.arange(D)
    w = np.exp(2j * np.pi * np.outer(j, j) / D)
    return w @ np.exp(1j * t * gauss_phases(D)) / D


def gauss_closed_form(D: int) -> np.ndarray:
    """a_k(1) evaluated through Gauss-sum reciprocity."""
    k = np.arange(D, dtype=float)
    pre = np.exp(1j * np.pi / 4) / np.sqrt(D)
    if D % 2 == 0:
        return pre * np.exp(-1j * np.pi * k**2 / D)
    return pre * np.exp(-1j * np.pi * k**2 / (2 * D)) * (1 - 1j ** (2 * k + D)) / np.sqrt(2)


def gauss_vanishing_points(D: int) -> list[tuple[float, int]]:
    """(t, k) with a_k(t) = 0 for 0 < t < 1; even D only: t = 2r/(D-1), k = D/2 - r."""
    if D % 2:
        return []
    return [(2 * r / (D - 1), D // 2 - r) for r in range(1, D // 2)]


def gauss_state(a: np.ndarray, m: int, n: int) -> np.ndarray:
    """Amplitude matrix of sum_k a_k |k+m>|k+m+n>."""
    D = len(a)
    om = np.zeros((D, D), dtype=complex)
    k = np.arange(D)
    om[(k + m) % D, (k + m + n) % D] = a
    return om


def graph_omega(D: int, t: float) -> np.ndarray:
    _check(D, t)
    j = np.arange(D)
    return np.exp(2j * np.pi * t * np.outer(j, j) / D) / D


def graph_state(omega: np.ndarray, m: int, n: int) -> np.ndarray:
    """Amplitude matrix of (Z^m x Z^n) applied to Omega."""
    D = omega.shape[0]
    z = np.exp(2j * np.pi * np.arange(D) / D)
    return (z**m)[:, None] * omega * (z**n)[None, :]


@dataclass
class BasisFamilyPoint:
    kind: str
    D: int
    t: float
    coefficients: np.ndarray
    states: list

    @property
    def spectrum(self) -> SchmidtVector:
        return schmidt_spectrum(self.states[0])

    @property
    def entropy(self) -> float:
        return entropy(self.spectrum)

    @property
    def g_concurrence(self) -> float:
        return g_concurrence(self.spectrum)

    def gram_deviation(self) -> float:
        M = np.array([s.ravel() for s in self.states])
        return float(np.abs(M.conj() @ M.T - np.eye(len(self.states))).max())

    def spectrum_spread(self) -> float:
        specs = np.array([np.linalg.svd(s, compute_uv=False) ** 2 for s in self.states])
        return float((specs.max(axis=0) - specs.min(axis=0)).max())


def gauss_family(D: int, t: float) -> BasisFamilyPoint:
    a = gauss_coefficients(D, t)
    states = [gauss_state(a, m, n) for m in range(D) for n in range(D)]
    return BasisFamilyPoint("gauss", D, float(t), a, states)


def graph_family(D: int, t: float) -> BasisFamilyPoint:
    om = graph_omega(D, t)
    states = [graph_state(om, m, n) for m in range(D) for n in range(D)]
    return BasisFamilyPoint("graph", D, float(t), om, states)


def family_point(kind: str, D: int, t: float) -> BasisFamilyPoint:
    if kind == "gauss":
        return gauss_family(D, t)
    if kind == "graph":
        return graph_family(D, t)
    raise ValueError(f"unknown family {kind!r}; expected one of {FAMILIES}")


def cg_closed_form(D: int, t: float) -> float:
    _check(D, t)
    r = np.arange(1, D)
    s2 = np.sin(np.pi * r * t / D) ** 2
    return float(2 ** (D - 1) / D * np.prod(s2 ** ((D - r) / D)))


def cg_determinant(D: int, t: float) -> float:
    """D |det Omega(t)|^{2/D}, via the Vandermonde product to avoid underflow."""
    _check(D, t)
    if t == 0:
        return 0.0
    x = np.exp(2j * np.pi * t * np.arange(D) / D)
    logabs = sum(np.log(abs(x[j] - x[k])) for j in range(D) for k in range(j)) - D * np.log(D)
    return float(D * np.exp(2 * logabs / D)) if np.isfinite(logabs) else 0.0


def default_grid(points: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def _spectrum_row(kind: str, D: int, t: float) -> list[float]:
    if kind == "gauss":
        lam = np.abs(gauss_coefficients(D, t)) ** 2
    else:
        lam = np.linalg.svd(graph_omega(D, t), compute_uv=False) ** 2
    lam = np.sort(lam / lam.sum())[::-1]
    return lam.tolist()


def family_sweep(kind: str, D: int, grid=None) -> list[dict]:
    """Per-t Schmidt spectrum (descending), base-D entropy and G-concurrence."""
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; expected one of {FAMILIES}")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    rows = []
    for t in grid:
        _check(D, float(t))
        lam = _spectrum_row(kind, D, float(t))
        sv = SchmidtVector(tuple(lam))
        rows.append({"t": float(t), "lambda": lam, "entropy": entropy(sv), "g_concurrence": g_concurrence(sv)})
    return rows


def sweep_csv(rows: list[dict]) -> str:
    D = len(rows[0]["lambda"]) if rows else 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"lambda_{i + 1}" for i in range(D)] + ["entropy", "g_concurrence"])
    for r in rows:
        w.writerow([f"{v + 0.0:.15g}" for v in [r["t"], *r["lambda"], r["entropy"], r["g_concurrence"]]])
    return buf.getvalue()


def multipartite_family(graph: QuditGraph, t: float, a=None, cap: int | None = None) -> np.ndarray:
    """Z^a prod_{i<j} C_ij(t)^{Gamma_ij} |+>^n as a state vector."""
    _check(graph.D, t)
    n, D = graph.n, graph.D
    dim = check_dense(D, n, cap)
    L = all_labels(n, D).astype(float)
    upper = np.triu(graph.gamma, 1).astype(float)
    phase = t * np.einsum("ka,ab,kb->k", L, upper, L)
    if a is not None:
        phase = phase + L @ np.asarray(a, dtype=float)
    return np.exp(2j * np.pi * phase / D) / np.sqrt(dim)


def bipartition_spectrum(psi: np.ndarray, A, n: int, D: int) -> np.ndarray:
    """Descending Schmidt coefficients of psi across A versus its complement."""
    A = sorted(A)
    rest = [j for j in range(n) if j not in A]
    t = psi.reshape((D,) * n).transpose(A + rest).reshape(D ** len(A), -1)
    return np.linalg.svd(t, compute_uv=False) ** 2
