"""Schmidt spectra, entanglement measures and majorization criteria.

``E_n`` is the sum of the n+1 smallest Schmidt coefficients, n = 0..D-1.
A deterministic separable transformation psi -> phi exists iff
``E_n(phi) <= E_n(psi)`` for every n.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

SUM_TOL = 1e-10
PHASE_TOL = 1e-8
UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class SchmidtVector:
    values: tuple[float, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("Schmidt vector must be a nonempty list")
        if np.any(v < -SUM_TOL):
            raise ValueError("Schmidt coefficients must be nonnegative")
        if abs(v.sum() - 1) > SUM_TOL:
            raise ValueError(f"Schmidt coefficients sum to {v.sum()}, not 1")
        v = np.sort(np.clip(v, 0, None))[::-1]
        object.__setattr__(self, "values", tuple(float(x) for x in v))

    @property
    def D(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.array(self.values)

    def padded(self, D: int) -> "SchmidtVector":
        if D < self.D:
            raise ValueError("cannot pad to a smaller dimension")
        return SchmidtVector(self.values + (0.0,) * (D - self.D))


def as_schmidt(lam) -> SchmidtVector:
    return lam if isinstance(lam, SchmidtVector) else SchmidtVector(tuple(lam))


def _pair(a, b) -> tuple[SchmidtVector, SchmidtVector]:
    a, b = as_schmidt(a), as_schmidt(b)
    D = max(a.D, b.D)
    return a.padded(D), b.padded(D)


def schmidt_spectrum(omega) -> SchmidtVector:
    """Squared singular values of the amplitude matrix, normalized."""
    om = np.asarray(omega, dtype=complex)
    if om.ndim != 2:
        raise ValueError("amplitude matrix must be two-dimensional")
    s = np.linalg.svd(om, compute_uv=False) ** 2
    total = s.sum()
    if total == 0:
        raise ValueError("zero amplitude matrix")
    return SchmidtVector(tuple(s / total))


def entropy(lam, base: int | None = None) -> float:
    lam = as_schmidt(lam)
    v = lam.array()
    v = v[v > 0]
    return float(-(v * np.log(v)).sum() / np.log(base or lam.D)) if lam.D > 1 else 0.0


def g_concurrence(lam) -> float:
    lam = as_schmidt(lam)
    return float(lam.D * np.prod(lam.array()) ** (1 / lam.D))


def measures(lam) -> dict:
    return {"entropy_baseD": entropy(lam), "g_concurrence": g_concurrence(lam)}


def e_n(lam) -> np.ndarray:
    """E_n for n = 0..D-1: partial sums of the ascending coefficients."""
    return np.cumsum(np.sort(as_schmidt(lam).array()))


def majorized_by(a, b, tol: float = 1e-12) -> bool:
    """a < b (a is majorized by b): every E_n(b) <= E_n(a)."""
    a, b = _pair(a, b)
    return bool(np.all(e_n(b) <= e_n(a) + tol))


def majorization_report(psi, phi) -> dict:
    """E_n lists, the majorization flag, and the product of the first r coefficients of each
    (r = Schmidt rank of psi) compared as psi versus phi."""
    psi, phi = _pair(psi, phi)
    r = sum(1 for v in psi.values if v > 0)
    pp, pf = float(np.prod(psi.values[:r])), float(np.prod(phi.values[:r]))
    rel = "equal" if np.isclose(pp, pf, rtol=1e-12, atol=0) else ("greater" if pp > pf else "less")
    return {
        "E_n_psi": e_n(psi).tolist(),
        "E_n_phi": e_n(phi).tolist(),
        "majorizes": majorized_by(psi, phi),
        "product_relation": rel,
    }


def p_max(psi, phi) -> float:
    """Largest success probability for psi -> phi by separable operations."""
    psi, phi = _pair(psi, phi)
    if majorized_by(psi, phi):
        return 1.0  # keeps p_max = 1 exactly when the deterministic test passes
    ep, ef = e_n(psi), e_n(phi)
    best = 1.0
    for a, b in zip(ep, ef):
        if b == 0:
            continue
        best = min(best, a / b)
    return float(min(best, 1.0))


def ensemble_check(psi, ensemble) -> bool:
    """psi -> {p_k, phi_k} is feasible iff sum_k p_k E_n(phi_k) <= E_n(psi) for every n."""
    probs = np.array([p for p, _ in ensemble], dtype=float)
    if np.any(probs < 0) or abs(probs.sum() - 1) > SUM_TOL:
        raise ValueError("ensemble probabilities must form a distribution")
    D = max([as_schmidt(psi).D] + [as_schmidt(f).D for _, f in ensemble])
    target = e_n(as_schmidt(psi).padded(D))
    avg = sum(p * e_n(as_schmidt(f).padded(D)) for p, (_, f) in zip(probs, ensemble))
    return bool(np.all(avg <= target + 1e-12))


# --- random-unitary families -----------------------------------------------

def equal_up_to_phase(A, B, tol: float = PHASE_TOL) -> bool:
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if abs(B[k]) < tol:
        return bool(np.linalg.norm(A) < tol)
    if abs(A[k]) < tol:
        return False
    phase = A[k] / B[k]
    phase /= abs(phase)
    return bool(np.linalg.norm(A - phase * B) < tol)


def _check_unitary(U, name):
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or not np.allclose(U.conj().T @ U, np.eye(U.shape[0]), atol=UNITARY_TOL):
        raise ValueError(f"{name} is not unitary")
    return U


@dataclass
class FamilyReport:
    ok: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


def random_unitary_family_check(U_list, V_list, psi_list) -> FamilyReport:
    """Check U_m^dag U_n psi_j psi_k^dag == psi_j psi_k^dag U_m^dag U_n (up to phase), and the
    dual relation with V^T acting on psi_k^dag psi_j."""
    Us = [_check_unitary(U, f"U[{i}]") for i, U in enumerate(U_list)]
    Vs = [_check_unitary(V, f"V[{i}]") for i, V in enumerate(V_list)]
    psis = [np.asarray(p, dtype=complex) for p in psi_list]
    for (m, Um), (n, Un) in itertools.product(enumerate(Us), repeat=2):
        A = Um.conj().T @ Un
        for (j, pj), (k, pk) in itertools.product(enumerate(psis), repeat=2):
            R = pj @ pk.conj().T
            if not equal_up_to_phase(A @ R, R @ A):
                return FamilyReport(False, {"relation": "U", "m": m, "n": n, "j": j, "k": k})
    for (m, Vm), (n, Vn) in itertools.product(enumerate(Vs), repeat=2):
        A = (Vm.conj().T @ Vn).T
        for (j, pj), (k, pk) in itertools.product(enumerate(psis), repeat=2):
            R = pk.conj().T @ pj
            if not equal_up_to_phase(A @ R, R @ A):
                return FamilyReport(False, {"relation": "V", "m": m, "n": n, "j": j, "k": k})
    return FamilyReport(True)


def example_family(a: float, b: float) -> list[np.ndarray]:
    """a|00> + b|01> +- a|10> -+ b|11> as amplitude matrices (rows: first qubit)."""
    return [np.array([[a, b], [s * a, -s * b]], dtype=complex) for s in (1, -1)]


def example_channel() -> tuple[list[np.ndarray], list[np.ndarray]]:
    I = np.eye(2, dtype=complex)
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1, -1]).astype(complex)
    return [I, X], [I, Z]
